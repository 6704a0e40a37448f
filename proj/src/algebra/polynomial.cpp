#include "birat/algebra/polynomial.hpp"

#include <cctype>
#include <random>
#include <unordered_map>

#include "birat/algebra/geobucket.hpp"

namespace birat {

Monomial Monomial::from_exponents(const std::vector<unsigned>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw AlgebraError("too many exponents");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0xFFFF) throw AlgebraError("exponent overflow");
    m.e[i] = static_cast<std::uint16_t>(exps[i]);
  }
  m.recompute();
  return m;
}

std::string MonomialOrder::describe() const {
  std::string s;
  switch (kind_) {
    case OrderKind::GRevLex: s = "grevlex"; break;
    case OrderKind::Lex: s = "lex"; break;
    case OrderKind::Block: s = "block" + std::to_string(block_); break;
  }
  if (!weights_.empty()) {
    s += "[";
    for (std::size_t i = 0; i < weights_.size(); ++i) s += (i ? "," : "") + std::to_string(weights_[i]);
    s += "]";
  }
  return s;
}

MonomialOrder MonomialOrder::parse(const std::string& text) {
  std::string head = text;
  std::vector<int> weights;
  auto lb = text.find('[');
  if (lb != std::string::npos) {
    auto rb = text.find(']', lb);
    if (rb == std::string::npos) throw AlgebraError("bad order: " + text);
    head = text.substr(0, lb);
    std::string body = text.substr(lb + 1, rb - lb - 1);
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      weights.push_back(std::stoi(body.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  if (head == "grevlex") return grevlex(weights);
  if (head == "lex" && weights.empty()) return lex();
  if (head.rfind("block", 0) == 0 && head.size() > 5) return block(std::stoi(head.substr(5)), weights);
  throw AlgebraError("unknown monomial order: " + text);
}

template <class F>
Polynomial<F> Polynomial<F>::from_terms(const RingPtr<F>& r, std::vector<TermT> terms) {
  const Ring<F>& ring = *r;
  std::sort(terms.begin(), terms.end(),
            [&](const TermT& a, const TermT& b) { return ring.compare(a.m, b.m) > 0; });
  const F& k = ring.field();
  std::vector<TermT> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = k.add(out.back().c, t.c);
    } else {
      if (!out.empty() && k.is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && k.is_zero(out.back().c)) out.pop_back();
  return from_sorted(r, std::move(out));
}

template <class F>
std::optional<int> Polynomial<F>::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_[0].m.deg;
  for (const auto& t : terms_) {
    if (static_cast<int>(t.m.deg) != d) return std::nullopt;
  }
  return d;
}

template <class F>
std::optional<std::vector<int>> Polynomial<F>::multidegree(const std::vector<int>& groups) const {
  if (terms_.empty()) return std::nullopt;
  int ngroups = 0;
  for (int g : groups) ngroups = std::max(ngroups, g + 1);
  auto degs = [&](const Monomial& m) {
    std::vector<int> d(ngroups, 0);
    for (std::size_t i = 0; i < groups.size(); ++i) d[groups[i]] += m.e[i];
    return d;
  };
  auto first = degs(terms_[0].m);
  for (const auto& t : terms_) {
    if (degs(t.m) != first) return std::nullopt;
  }
  return first;
}

template <class F>
bool Polynomial<F>::is_weighted_homogeneous() const {
  if (terms_.empty()) return true;
  long d = ring_->weighted_degree(terms_[0].m);
  for (const auto& t : terms_) {
    if (ring_->weighted_degree(t.m) != d) return false;
  }
  return true;
}

template <class F>
Polynomial<F> Polynomial<F>::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, field().neg(t.c)});
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::operator+(const Polynomial& o) const {
  check_ring(o);
  const F& k = field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ring_->compare(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Elem s = k.add(terms_[i].c, o.terms_[j].c);
      if (!k.is_zero(s)) r.terms_.push_back({terms_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::operator-(const Polynomial& o) const {
  return *this + (-o);
}

template <class F>
Polynomial<F> Polynomial<F>::operator*(const Polynomial& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  const Polynomial& small = size() <= o.size() ? *this : o;
  const Polynomial& big = size() <= o.size() ? o : *this;
  if (small.size() == 1) return big.mul_term(small.terms_[0].m, small.terms_[0].c);
  const F& k = field();
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  acc.reserve(small.size() * big.size() / 2 + 16);
  for (const auto& a : small.terms_) {
    for (const auto& b : big.terms_) {
      Monomial m = a.m * b.m;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, k.mul(a.c, b.c));
      } else {
        it->second = k.add(it->second, k.mul(a.c, b.c));
      }
    }
  }
  std::vector<TermT> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!k.is_zero(c)) terms.push_back({m, std::move(c)});
  }
  const Ring<F>& ring = *ring_;
  std::sort(terms.begin(), terms.end(),
            [&](const TermT& x, const TermT& y) { return ring.compare(x.m, y.m) > 0; });
  return from_sorted(ring_, std::move(terms));
}

template <class F>
Polynomial<F> Polynomial<F>::scale(const Elem& c) const {
  const F& k = field();
  if (k.is_zero(c)) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, k.mul(t.c, c)});
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::mul_term(const Monomial& m, const Elem& c) const {
  const F& k = field();
  if (k.is_zero(c)) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, k.mul(t.c, c)});
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::pow(unsigned e) const {
  Polynomial r = constant(ring_, field().one());
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

template <class F>
bool Polynomial<F>::operator==(const Polynomial& o) const {
  check_ring(o);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].m != o.terms_[i].m || !(terms_[i].c == o.terms_[i].c)) return false;
  }
  return true;
}

template <class F>
Polynomial<F> Polynomial<F>::derivative(int var) const {
  const F& k = field();
  std::vector<TermT> out;
  for (const auto& t : terms_) {
    unsigned e = t.m.e[var];
    if (e == 0) continue;
    Elem c = k.mul(t.c, k.from_int(e));
    if (k.is_zero(c)) continue;
    Monomial m = t.m / Monomial::variable(var);
    out.push_back({m, std::move(c)});
  }
  // Dividing by a variable preserves the relative order of the survivors.
  return from_sorted(ring_, std::move(out));
}

template <class F>
typename F::Element Polynomial<F>::evaluate(const std::vector<Elem>& point) const {
  const F& k = field();
  if (static_cast<int>(point.size()) != ring_->nvars()) throw AlgebraError("evaluation arity mismatch");
  std::vector<std::vector<Elem>> powers(point.size());
  Elem sum = k.zero();
  for (const auto& t : terms_) {
    Elem v = t.c;
    for (int i = 0; i < ring_->nvars(); ++i) {
      unsigned e = t.m.e[i];
      if (!e) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(k.one());
      while (pw.size() <= e) pw.push_back(k.mul(pw.back(), point[i]));
      v = k.mul(v, pw[e]);
    }
    sum = k.add(sum, v);
  }
  return sum;
}

template <class F>
Polynomial<F> Polynomial<F>::in_ring(const RingPtr<F>& target) const {
  if (target->nvars() != ring_->nvars() || target->field() != ring_->field()) {
    throw ContextMismatch("cannot move polynomial between rings of different shape");
  }
  if (ring_->order() == target->order()) return from_sorted(target, terms_);
  return from_terms(target, terms_);
}

template <class F>
std::string Polynomial<F>::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = ring_->names();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (int i = 0; i < ring_->nvars(); ++i) {
      if (!t.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    std::string c = field().to_string(t.c);
    std::string piece;
    if (mono.empty()) {
      piece = c;
    } else if (c == "1") {
      piece = mono;
    } else if (c == "-1") {
      piece = "-" + mono;
    } else {
      piece = c + "*" + mono;
    }
    if (!first && piece[0] != '-') out += "+";
    out += piece;
    first = false;
  }
  return out;
}

namespace {

template <class F>
class Parser {
 public:
  Parser(const RingPtr<F>& ring, const std::string& text) : ring_(ring), s_(text) {}

  Polynomial<F> run() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw AlgebraError("parse error at offset " + std::to_string(pos_) + " (" + why + ") in: " + s_);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Polynomial<F> expr() {
    Polynomial<F> acc(ring_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Polynomial<F> t = term();
    acc = neg ? -t : t;
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  Polynomial<F> term() {
    Polynomial<F> acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }
  Polynomial<F> factor() {
    Polynomial<F> b = base();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }
  Polynomial<F> base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!eat(')')) fail("')' expected");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class num(s_.substr(start, pos_ - start));
      mpz_class den(1);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("denominator expected");
        den = mpz_class(s_.substr(start, pos_ - start));
        if (den == 0) throw DivisionByZero();
      }
      mpq_class q(num, den);
      q.canonicalize();
      return Polynomial<F>::constant(ring_, ring_->field().from_rational(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = s_.substr(start, pos_ - start);
      int idx = ring_->var_index(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Polynomial<F>::variable(ring_, idx);
    }
    fail("unexpected character");
  }

  RingPtr<F> ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, const std::string& text) {
  return Parser<F>(ring, text).run();
}

template <class F>
Polynomial<F> substitute(const Polynomial<F>& f, const std::vector<Polynomial<F>>& images,
                         const RingPtr<F>& target) {
  int n = f.ring()->nvars();
  if (static_cast<int>(images.size()) != n) throw AlgebraError("substitute: one image per variable required");
  for (const auto& img : images) {
    if (img.ring() != target) require_same_ring(*img.ring(), *target);
  }
  using Elem = typename F::Element;
  const F& k = target->field();
  std::vector<std::vector<Polynomial<F>>> powers(n);
  auto power = [&](int i, unsigned e) -> const Polynomial<F>& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Polynomial<F>::constant(target, k.one()));
    while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
    return pw[e];
  };
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    Polynomial<F> prod = Polynomial<F>::constant(target, t.c);
    for (int i = 0; i < n && !prod.is_zero(); ++i) {
      if (t.m.e[i]) prod = prod * power(i, t.m.e[i]);
    }
    for (const auto& s : prod.terms()) {
      auto it = acc.find(s.m);
      if (it == acc.end()) acc.emplace(s.m, s.c);
      else it->second = k.add(it->second, s.c);
    }
  }
  std::vector<Term<F>> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!k.is_zero(c)) terms.push_back({m, std::move(c)});
  }
  return Polynomial<F>::from_terms(target, std::move(terms));
}

template <class F>
std::vector<std::vector<Polynomial<F>>> jacobian(const std::vector<Polynomial<F>>& forms) {
  std::vector<std::vector<Polynomial<F>>> J;
  if (forms.empty()) return J;
  const auto& ring = forms[0].ring();
  for (const auto& f : forms) {
    if (f.ring() != ring) require_same_ring(*f.ring(), *ring);
    std::vector<Polynomial<F>> row;
    for (int j = 0; j < ring->nvars(); ++j) row.push_back(f.derivative(j));
    J.push_back(std::move(row));
  }
  return J;
}

template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divide(const Polynomial<F>& f, const Polynomial<F>& g) {
  if (g.is_zero()) throw DivisionByZero();
  if (f.ring() != g.ring()) require_same_ring(*f.ring(), *g.ring());
  const auto& ring = f.ring();
  const F& k = ring->field();
  auto inv = k.inv(g.lc());
  Geobucket<F> bucket(ring);
  bucket.add(f);
  std::vector<Term<F>> quotient, remainder;
  while (auto t = bucket.pop()) {
    if (g.lm().divides(t->m)) {
      Monomial q = t->m / g.lm();
      auto c = k.mul(t->c, inv);
      bucket.add_scaled(g.terms(), 1, q, k.neg(c));
      quotient.push_back({q, c});
    } else {
      remainder.push_back(std::move(*t));
    }
  }
  return {Polynomial<F>::from_sorted(ring, std::move(quotient)),
          Polynomial<F>::from_sorted(ring, std::move(remainder))};
}

template <class F>
Polynomial<F> divide_exact(const Polynomial<F>& f, const Polynomial<F>& g) {
  auto [q, r] = divide(f, g);
  if (!r.is_zero()) throw AlgebraError("inexact division");
  return q;
}

template <>
PrimeField::Element content(const Polynomial<PrimeField>& f) {
  return f.is_zero() ? 0 : f.lc();
}

template <>
mpq_class content(const Polynomial<RationalField>& f) {
  if (f.is_zero()) return mpq_class(0);
  mpz_class num(0), den(1);
  for (const auto& t : f.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
  }
  mpq_class c(num, den);
  c.canonicalize();
  if (sgn(f.lc()) < 0) c = -c;
  return c;
}

template <class F>
Polynomial<F> primitive_part(const Polynomial<F>& f) {
  if (f.is_zero()) return f;
  return f.scale(f.field().inv(content(f)));
}

namespace {

// f viewed as a polynomial in variable v with coefficients free of v.
template <class F>
std::vector<Polynomial<F>> coefficients_in(const Polynomial<F>& f, int v) {
  int d = f.degree_in(v);
  std::vector<std::vector<Term<F>>> buckets(d + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.m;
    unsigned e = m.e[v];
    if (e) {
      m.e[v] = 0;
      m.deg -= e;
      m.mask &= ~(1u << v);
    }
    buckets[e].push_back({m, t.c});
  }
  std::vector<Polynomial<F>> out;
  out.reserve(d + 1);
  for (auto& b : buckets) out.push_back(Polynomial<F>::from_terms(f.ring(), std::move(b)));
  return out;
}

template <class F>
Polynomial<F> from_coefficients(const std::vector<Polynomial<F>>& cs, int v, const RingPtr<F>& ring) {
  std::vector<Term<F>> terms;
  for (std::size_t e = 0; e < cs.size(); ++e) {
    Monomial x = Monomial::variable(v, static_cast<unsigned>(e));
    for (const auto& t : cs[e].terms()) terms.push_back({t.m * x, t.c});
  }
  return Polynomial<F>::from_terms(ring, std::move(terms));
}

template <class F>
void trim(std::vector<Polynomial<F>>& cs) {
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

template <class F>
Polynomial<F> gcd_rec(const Polynomial<F>& a, const Polynomial<F>& b);

template <class F>
Polynomial<F> content_of(const std::vector<Polynomial<F>>& cs) {
  Polynomial<F> g;
  bool have = false;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = have ? gcd_rec(g, c) : primitive_part(c);
    have = true;
    if (g.is_constant()) break;
  }
  return g;
}

template <class F>
std::vector<Polynomial<F>> divide_all(std::vector<Polynomial<F>> cs, const Polynomial<F>& d) {
  if (d.is_constant()) {
    auto inv = d.field().inv(d.lc());
    for (auto& c : cs) c = c.scale(inv);
    return cs;
  }
  for (auto& c : cs) {
    if (!c.is_zero()) c = divide_exact(c, d);
  }
  return cs;
}

template <class F>
Monomial monomial_content(const Polynomial<F>& f) {
  Monomial g = f.terms()[0].m;
  for (const auto& t : f.terms()) g = gcd(g, t.m);
  return g;
}

template <class F>
Polynomial<F> divide_by_monomial(const Polynomial<F>& f, const Monomial& m) {
  if (m.is_one()) return f;
  std::vector<Term<F>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.m / m, t.c});
  return Polynomial<F>::from_sorted(f.ring(), std::move(out));
}

// Primitive polynomial remainder sequence in variable v.
template <class F>
Polynomial<F> gcd_rec(const Polynomial<F>& a0, const Polynomial<F>& b0) {
  const auto& ring = a0.ring();
  const F& k = ring->field();
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  Monomial ma = monomial_content(a0), mb = monomial_content(b0);
  Monomial mg = gcd(ma, mb);
  Polynomial<F> a = divide_by_monomial(a0, ma), b = divide_by_monomial(b0, mb);
  Polynomial<F> unit = Polynomial<F>::constant(ring, k.one());
  Polynomial<F> mono = Polynomial<F>::monomial(ring, mg, k.one());
  if (a.is_constant() || b.is_constant()) return mono;

  std::uint32_t ua = a.used_variables_mask(), ub = b.used_variables_mask();
  // A variable present in only one argument: the gcd divides its content there.
  for (int v = 0; v < ring->nvars(); ++v) {
    std::uint32_t bit = 1u << v;
    if ((ua & bit) && !(ub & bit)) return primitive_part(mono * gcd_rec(content_of(coefficients_in(a, v)), b));
    if ((ub & bit) && !(ua & bit)) return primitive_part(mono * gcd_rec(a, content_of(coefficients_in(b, v))));
  }
  int v = -1, best = 0;
  for (int i = 0; i < ring->nvars(); ++i) {
    if (!((ua >> i) & 1u)) continue;
    int d = std::max(a.degree_in(i), b.degree_in(i));
    if (v < 0 || d < best) {
      v = i;
      best = d;
    }
  }
  auto ca = coefficients_in(a, v), cb = coefficients_in(b, v);
  Polynomial<F> conta = content_of(ca), contb = content_of(cb);
  Polynomial<F> c = gcd_rec(conta, contb);
  auto pa = divide_all(ca, conta), pb = divide_all(cb, contb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (true) {
    // pseudo-remainder of pa by pb
    std::vector<Polynomial<F>> r = pa;
    const Polynomial<F>& lb = pb.back();
    std::size_t db = pb.size() - 1;
    while (r.size() >= pb.size()) {
      Polynomial<F> lr = r.back();
      std::size_t shift = r.size() - pb.size();
      for (auto& x : r) x = x * lb;
      for (std::size_t i = 0; i < db; ++i) r[i + shift] = r[i + shift] - lr * pb[i];
      r.pop_back();
      trim(r);
    }
    if (r.empty()) break;
    if (r.size() == 1) {
      pb = {unit};
      break;
    }
    Polynomial<F> cr = content_of(r);
    pa = std::move(pb);
    pb = divide_all(std::move(r), cr);
  }
  Polynomial<F> g = from_coefficients(pb, v, ring);
  return primitive_part(mono * c * g);
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial m;
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      m.e[i] = static_cast<std::uint16_t>(left);
      Monomial c = m;
      c.recompute();
      out.push_back(c);
      return;
    }
    for (int k = left; k >= 0; --k) {
      m.e[i] = static_cast<std::uint16_t>(k);
      self(self, i + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

// Basis vector of a one-dimensional kernel, or nothing when the kernel has another dimension.
template <class F>
std::optional<std::vector<typename F::Element>> kernel_line(const F& k, std::vector<std::vector<typename F::Element>> m,
                                                            int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i) {
      if (!k.is_zero(m[i][c])) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    auto inv = k.inv(m[r][c]);
    for (int j = c; j < cols; ++j) m[r][j] = k.mul(m[r][j], inv);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || k.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (int j = c; j < cols; ++j) {
        if (!k.is_zero(m[r][j])) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  if (static_cast<int>(pivots.size()) != cols - 1) return std::nullopt;
  int free = 0;
  for (std::size_t i = 0; i < pivots.size() && pivots[i] == free; ++i) ++free;
  std::vector<typename F::Element> v(cols, k.zero());
  v[free] = k.one();
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = k.neg(m[i][free]);
  return v;
}

// Gcd of two forms in at least three variables. Restriction to a random line bounds
// the degree of the gcd; a zero bound settles it, otherwise the cofactors are solved
// from a * B' = b * A' at random points and confirmed by exact division. Returns
// nothing when this route cannot decide.
template <class F>
std::optional<Polynomial<F>> homogeneous_gcd(const Polynomial<F>& a, const Polynomial<F>& b) {
  const auto& ring = a.ring();
  const F& k = ring->field();
  int n = ring->nvars();
  auto da = a.homogeneous_degree(), db = b.homogeneous_degree();
  if (a.is_zero() || b.is_zero() || !da || !db || n < 3) return std::nullopt;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (a.size() * 1315423911ull) ^ b.size());
  auto scalar = [&] { return k.from_int(static_cast<long long>(rng() % 1000) + 1); };
  auto line = Ring<F>::make(k, 2);
  std::vector<Polynomial<F>> images;
  for (int i = 0; i < n; ++i) {
    images.push_back(Polynomial<F>::variable(line, 0).scale(scalar()) +
                     Polynomial<F>::variable(line, 1).scale(scalar()));
  }
  auto ra = substitute(a, images, line), rb = substitute(b, images, line);
  if (ra.is_zero() || rb.is_zero()) return std::nullopt;
  int d = gcd_rec(ra, rb).total_degree();
  if (d == 0) return Polynomial<F>::constant(ring, 1LL);
  auto try_divisor = [&](const Polynomial<F>& g) -> std::optional<Polynomial<F>> {
    if (divide(a, g).second.is_zero() && divide(b, g).second.is_zero()) return primitive_part(g);
    return std::nullopt;
  };
  if (d == *da) return try_divisor(a);
  if (d == *db) return try_divisor(b);
  auto ma = monomials_of_degree(n, *da - d), mb = monomials_of_degree(n, *db - d);
  int cols = static_cast<int>(ma.size() + mb.size());
  if (cols > 1500) return std::nullopt;
  std::vector<std::vector<typename F::Element>> rows;
  for (int r = 0; r < cols + 8; ++r) {
    std::vector<typename F::Element> p;
    for (int i = 0; i < n; ++i) p.push_back(scalar());
    auto va = a.evaluate(p), vb = b.evaluate(p);
    auto mono_at = [&](const Monomial& m) {
      auto v = k.one();
      for (int i = 0; i < n; ++i) {
        for (unsigned e = 0; e < m.e[i]; ++e) v = k.mul(v, p[i]);
      }
      return v;
    };
    std::vector<typename F::Element> row;
    for (const auto& m : ma) row.push_back(k.mul(vb, mono_at(m)));
    for (const auto& m : mb) row.push_back(k.neg(k.mul(va, mono_at(m))));
    rows.push_back(std::move(row));
  }
  auto kernel = kernel_line(k, std::move(rows), cols);
  if (!kernel) return std::nullopt;
  std::vector<Term<F>> cofactor;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (!k.is_zero((*kernel)[i])) cofactor.push_back({ma[i], (*kernel)[i]});
  }
  auto ca = Polynomial<F>::from_terms(ring, std::move(cofactor));
  if (ca.is_zero()) return std::nullopt;
  auto [g, rem] = divide(a, ca);
  if (!rem.is_zero()) return std::nullopt;
  return try_divisor(g);
}

}  // namespace

template <class F>
Polynomial<F> gcd(const Polynomial<F>& a, const Polynomial<F>& b) {
  if (a.ring() != b.ring()) require_same_ring(*a.ring(), *b.ring());
  if (a.is_zero() && b.is_zero()) return a;
  if (auto g = homogeneous_gcd(a, b)) return *g;
  return gcd_rec(a, b);
}

template <class F>
Polynomial<F> gcd(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw AlgebraError("gcd of empty tuple");
  Polynomial<F> g = Polynomial<F>(fs[0].ring());
  for (const auto& f : fs) {
    g = gcd(g, f);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

template <class F>
std::pair<unsigned, Polynomial<F>> strip_variable_power(const Polynomial<F>& f, int var) {
  if (f.is_zero()) return {0, f};
  unsigned e = 0xFFFF;
  for (const auto& t : f.terms()) e = std::min<unsigned>(e, t.m.e[var]);
  if (e == 0) return {0, f};
  return {e, divide_by_monomial(f, Monomial::variable(var, e))};
}

#define BIRAT_INSTANTIATE(F)                                                                          \
  template class Polynomial<F>;                                                                       \
  template Polynomial<F> parse_polynomial(const RingPtr<F>&, const std::string&);                    \
  template Polynomial<F> substitute(const Polynomial<F>&, const std::vector<Polynomial<F>>&,          \
                                    const RingPtr<F>&);                                               \
  template std::vector<std::vector<Polynomial<F>>> jacobian(const std::vector<Polynomial<F>>&);       \
  template std::pair<Polynomial<F>, Polynomial<F>> divide(const Polynomial<F>&, const Polynomial<F>&); \
  template Polynomial<F> divide_exact(const Polynomial<F>&, const Polynomial<F>&);                    \
  template Polynomial<F> primitive_part(const Polynomial<F>&);                                        \
  template Polynomial<F> gcd(const Polynomial<F>&, const Polynomial<F>&);                             \
  template Polynomial<F> gcd(const std::vector<Polynomial<F>>&);                                      \
  template std::pair<unsigned, Polynomial<F>> strip_variable_power(const Polynomial<F>&, int);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
