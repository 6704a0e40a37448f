#include "birat/ideal/ideal.hpp"

#include <chrono>
#include <sstream>

#include "birat/ideal/groebner.hpp"
#include "birat/ideal/session.hpp"

namespace birat {

template <class F>
Polynomial<F> GroebnerBasis<F>::reduce(const Polynomial<F>& f) const {
  Polynomial<F> g = f.ring() == ring ? f : f.in_ring(ring);
  return normal_form(g, elements);
}

template <class F>
std::vector<Monomial> GroebnerBasis<F>::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements.size());
  for (const auto& g : elements) out.push_back(g.lm());
  return out;
}

template <class F>
Ideal<F>::Ideal(RingPtr<F> ring, std::vector<Poly> gens) : ring_(std::move(ring)), shared_(std::make_shared<Shared>()) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.ring() != ring_) {
      require_same_ring(*g.ring(), *ring_);
      g = Poly::from_sorted(ring_, g.terms());
    }
    if (!g.is_weighted_homogeneous()) homogeneous_ = false;
    gens_.push_back(std::move(g));
  }
}

template <class F>
Ideal<F> Ideal<F>::parse(const RingPtr<F>& ring, const std::vector<std::string>& gens) {
  std::vector<Poly> ps;
  for (const auto& s : gens) ps.push_back(parse_polynomial(ring, s));
  return Ideal(ring, std::move(ps));
}

template <class F>
std::string Ideal<F>::cache_key(const MonomialOrder& order) const {
  std::string text = ring_->describe() + "\n" + order.describe() + "\n";
  for (const auto& g : gens_) text += g.to_string() + "\n";
  return content_hash(text);
}

namespace {

template <class F>
std::string basis_payload(const GroebnerBasis<F>& gb) {
  std::string out = gb.ring->describe() + "\n";
  for (const auto& g : gb.elements) out += g.to_string() + "\n";
  return out;
}

template <class F>
std::optional<std::vector<Polynomial<F>>> parse_payload(const std::string& payload, const RingPtr<F>& ring) {
  std::istringstream in(payload);
  std::string line;
  if (!std::getline(in, line) || line != ring->describe()) return std::nullopt;
  std::vector<Polynomial<F>> out;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      out.push_back(parse_polynomial(ring, line));
    }
  } catch (const AlgebraError&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

template <class F>
BasisPtr<F> Ideal<F>::groebner(const MonomialOrder& order) const {
  {
    std::lock_guard<std::mutex> lock(shared_->mu);
    for (const auto& [o, b] : shared_->bases) {
      if (o == order) return b;
    }
  }
  auto gb = std::make_shared<GroebnerBasis<F>>();
  gb->ring = ring_->order() == order ? ring_ : ring_->with_order(order);
  Session* session = Session::current();
  if (session) ++session->counters().groebner_calls;
  std::string key;
  bool loaded = false;
  if (session && session->store()) {
    key = cache_key(order);
    if (auto payload = session->store()->load(key)) {
      if (auto elems = parse_payload<F>(*payload, gb->ring)) {
        gb->elements = std::move(*elems);
        loaded = true;
        ++session->counters().cache_hits;
      }
    }
  }
  if (!loaded) {
    auto start = std::chrono::steady_clock::now();
    std::vector<Poly> gens;
    gens.reserve(gens_.size());
    for (const auto& g : gens_) gens.push_back(g.in_ring(gb->ring));
    gb->elements = buchberger(gens);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (session && session->store()) {
      ++session->counters().cache_misses;
      if (secs >= session->min_cached_seconds()) session->store()->store(key, basis_payload(*gb));
    }
  }
  BasisPtr<F> result = gb;
  std::lock_guard<std::mutex> lock(shared_->mu);
  for (const auto& [o, b] : shared_->bases) {
    if (o == order) return b;
  }
  shared_->bases.emplace_back(order, result);
  return result;
}

template <class F>
bool Ideal<F>::contains(const Ideal& other) const {
  require_same_ring(*ring_, *other.ring_);
  auto gb = groebner();
  for (const auto& g : other.gens_) {
    if (!gb->contains(g)) return false;
  }
  return true;
}

template <class F>
Ideal<F> Ideal<F>::reduced() const {
  Ideal out(ring_, groebner()->elements);
  out.shared_ = shared_;
  return out;
}

template <class F>
std::string ideal_to_text(const Ideal<F>& I) {
  std::string out = I.ring()->describe() + "\n";
  for (const auto& g : I.generators()) out += g.to_string() + "\n";
  return out;
}

std::string ring_header_field(const std::string& header_line) {
  std::istringstream in(header_line);
  std::string word, field;
  in >> word >> field;
  if (word != "ring") throw AlgebraError("ring header expected, got: " + header_line);
  return field;
}

namespace {

template <class F>
F field_from_header(std::istringstream& in);

template <>
PrimeField field_from_header<PrimeField>(std::istringstream& in) {
  std::string kind;
  unsigned long p = 0;
  in >> kind >> p;
  if (kind != "fp") throw AlgebraError("expected a prime field header");
  return PrimeField(static_cast<std::uint32_t>(p));
}

template <>
RationalField field_from_header<RationalField>(std::istringstream& in) {
  std::string kind;
  in >> kind;
  if (kind != "q") throw AlgebraError("expected a rational field header");
  return RationalField();
}

}  // namespace

template <class F>
RingPtr<F> parse_ring_header(const std::string& header_line) {
  std::istringstream in(header_line);
  std::string word;
  in >> word;
  if (word != "ring") throw AlgebraError("ring header expected");
  F field = field_from_header<F>(in);
  int nvars = -1;
  std::string order = "grevlex";
  std::vector<std::string> names;
  while (in >> word) {
    if (word == "nvars") {
      in >> nvars;
    } else if (word == "order") {
      in >> order;
    } else if (word == "vars") {
      std::string n;
      while (in >> n) names.push_back(n);
    } else {
      throw AlgebraError("unknown ring header field: " + word);
    }
  }
  if (nvars < 0) throw AlgebraError("ring header lacks nvars");
  return Ring<F>::make(field, nvars, MonomialOrder::parse(order), names);
}

template <class F>
Ideal<F> parse_ideal_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  auto ring = parse_ring_header<F>(line);
  std::vector<Polynomial<F>> gens;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    gens.push_back(parse_polynomial(ring, line));
  }
  return Ideal<F>(ring, std::move(gens));
}

#define BIRAT_INSTANTIATE(F)                                         \
  template struct GroebnerBasis<F>;                                  \
  template class Ideal<F>;                                           \
  template std::string ideal_to_text(const Ideal<F>&);               \
  template RingPtr<F> parse_ring_header<F>(const std::string&);      \
  template Ideal<F> parse_ideal_text<F>(const std::string&);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
