#include "birat/ideal/hilbert.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "birat/algebra/field.hpp"

namespace birat {

namespace {

using Series = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw AlgebraError("Hilbert numerator overflow");
  return r;
}

void add_shifted(Series& acc, const Series& s, std::size_t shift, std::int64_t sign) {
  if (acc.size() < s.size() + shift) acc.resize(s.size() + shift, 0);
  for (std::size_t i = 0; i < s.size(); ++i) acc[i + shift] = checked_add(acc[i + shift], sign * s[i]);
}

Series times_one_minus_t_power(Series s, unsigned d) {
  Series out(s.size() + d, 0);
  add_shifted(out, s, 0, 1);
  add_shifted(out, s, d, -1);
  return out;
}

void trim(Series& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

bool mono_less(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  return a.e < b.e;
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), mono_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out) {
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.push_back(g);
  }
  return out;
}

struct KeyLess {
  bool operator()(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return mono_less(a[i], b[i]);
    }
    return false;
  }
};

class NumeratorSolver {
 public:
  Series solve(std::vector<Monomial> gens) {
    gens = minimalize(std::move(gens));
    if (gens.empty()) return {1};
    if (gens[0].is_one()) return {};
    auto it = memo_.find(gens);
    if (it != memo_.end()) return it->second;
    Series result = compute(gens);
    memo_.emplace(std::move(gens), result);
    return result;
  }

 private:
  Series compute(const std::vector<Monomial>& gens) {
    // A generator coprime to all others factors out.
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool isolated = true;
      for (std::size_t j = 0; j < gens.size() && isolated; ++j) {
        if (j != i && !gens[i].coprime(gens[j])) isolated = false;
      }
      if (isolated) {
        std::vector<Monomial> rest;
        for (std::size_t j = 0; j < gens.size(); ++j) {
          if (j != i) rest.push_back(gens[j]);
        }
        return times_one_minus_t_power(solve(std::move(rest)), gens[i].deg);
      }
    }
    int counts[kMaxVars] = {0};
    for (const auto& g : gens) {
      for (int v = 0; v < kMaxVars; ++v) {
        if (g.e[v]) ++counts[v];
      }
    }
    int v = static_cast<int>(std::max_element(counts, counts + kMaxVars) - counts);
    std::vector<unsigned> exps;
    unsigned pure = 0xFFFF;
    for (const auto& g : gens) {
      if (!g.e[v]) continue;
      exps.push_back(g.e[v]);
      if (g.deg == g.e[v]) pure = std::min<unsigned>(pure, g.e[v]);
    }
    std::sort(exps.begin(), exps.end());
    unsigned e = exps[exps.size() / 2];
    if (e >= pure) e = pure - 1;
    if (e == 0) e = 1;
    Monomial p = Monomial::variable(v, e);

    std::vector<Monomial> sum = gens;
    sum.push_back(p);
    std::vector<Monomial> quotient;
    quotient.reserve(gens.size());
    for (const auto& g : gens) quotient.push_back(g / gcd(g, p));
    Series a = solve(std::move(sum));
    Series b = solve(std::move(quotient));
    Series out = a;
    add_shifted(out, b, e, 1);
    trim(out);
    return out;
  }

  std::map<std::vector<Monomial>, Series, KeyLess> memo_;
};

mpq_class eval_series_at_one(const Series& s) {
  mpq_class v = 0;
  for (auto c : s) v += c;
  return v;
}

}  // namespace

mpz_class binomial(long n, long k) {
  if (k < 0 || n < k || n < 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::vector<std::int64_t> hilbert_numerator(std::vector<Monomial> gens, int nvars) {
  (void)nvars;
  NumeratorSolver solver;
  Series s = solver.solve(std::move(gens));
  trim(s);
  return s;
}

HilbertData hilbert_from_monomials(const std::vector<Monomial>& gens, int nvars) {
  HilbertData h;
  h.nvars = nvars;
  h.numerator = hilbert_numerator(gens, nvars);
  // Divide out (1 - t) while it divides the numerator.
  Series q = h.numerator;
  int k = 0;
  while (!q.empty() && eval_series_at_one(q) == 0) {
    // synthetic division by (1 - t): q = (1 - t) r  =>  r_i = sum_{j<=i} q_j
    Series r(q.size() - 1, 0);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      acc = checked_add(acc, q[i]);
      r[i] = acc;
    }
    q = r;
    trim(q);
    ++k;
  }
  int krull = nvars - k;
  if (q.empty() || krull <= 0) {
    h.dimension = -1;
    h.degree = 0;
    h.polynomial = {};
    return h;
  }
  h.dimension = krull - 1;
  h.degree = eval_series_at_one(q).get_num().get_si();
  // HP(t) = sum_i q_i * binom(t - i + krull - 1, krull - 1)
  int m = krull - 1;
  std::vector<mpq_class> hp(m + 1, 0);
  mpz_class fact = 1;
  for (int j = 2; j <= m; ++j) fact *= j;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    // product_{j=0}^{m-1} (t + (m - i) - j)
    std::vector<mpq_class> poly{1};
    for (int j = 0; j < m; ++j) {
      long c = static_cast<long>(m) - static_cast<long>(i) - j;
      std::vector<mpq_class> next(poly.size() + 1, 0);
      for (std::size_t a = 0; a < poly.size(); ++a) {
        next[a] += poly[a] * c;
        next[a + 1] += poly[a];
      }
      poly = std::move(next);
    }
    for (std::size_t a = 0; a < poly.size(); ++a) {
      hp[a] += poly[a] * mpq_class(static_cast<long>(q[i])) / mpq_class(fact);
    }
  }
  for (auto& c : hp) c.canonicalize();
  h.polynomial = hp;
  return h;
}

std::int64_t HilbertData::polynomial_constant() const {
  if (polynomial.empty()) return 0;
  mpq_class c = polynomial[0];
  if (c.get_den() != 1) throw AlgebraError("non-integral Hilbert polynomial constant");
  return c.get_num().get_si();
}

std::int64_t HilbertData::arithmetic_genus() const { return 1 - polynomial_constant(); }

mpq_class HilbertData::polynomial_at(long t) const {
  mpq_class v = 0, p = 1;
  for (const auto& c : polynomial) {
    v += c * p;
    p *= t;
  }
  return v;
}

mpz_class HilbertData::function_value(long d) const {
  mpz_class v = 0;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    long s = d - static_cast<long>(i);
    if (s < 0) break;
    v += mpz_class(static_cast<long>(numerator[i])) * binomial(s + nvars - 1, nvars - 1);
  }
  return v;
}

std::string HilbertData::polynomial_string() const {
  if (polynomial.empty()) return "0";
  std::string out;
  for (std::size_t i = polynomial.size(); i-- > 0;) {
    const mpq_class& c = polynomial[i];
    if (c == 0) continue;
    std::string coeff = c.get_str();
    std::string piece;
    if (i == 0) {
      piece = coeff;
    } else {
      std::string mono = i == 1 ? "t" : "t^" + std::to_string(i);
      if (c == 1) piece = mono;
      else if (c == -1) piece = "-" + mono;
      else piece = coeff + "*" + mono;
    }
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out.empty() ? "0" : out;
}

}  // namespace birat
