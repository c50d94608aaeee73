#pragma once

#include <random>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "surreal/surreal.hpp"

namespace th {

using namespace surreal;

inline Surreal W(long n) { return Surreal::omega_pow(Surreal::from_rat(n)); }
inline Surreal Wq(const Rat& q) { return Surreal::omega_pow(Surreal::from_rat(q)); }
inline Surreal R(long p, long q = 1) { return Surreal::from_rat(make_rat(p, q)); }
inline Surreal omega() { return Surreal::omega(); }

/// Rational exponent of a term, if it has one.
inline std::optional<Rat> rat_exp(const Term& t, const Budget& b) { return t.exp.as_rat(b); }

/// Finite form with rational exponents from a small grid and small
/// rational coefficients.
inline oracle::Poly random_poly(std::mt19937& rng, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms), num(-6, 6), den(1, 4), enumr(-8, 8), eden(1, 2);
  oracle::Poly p;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    int c = num(rng);
    if (c == 0) c = 1;
    p[make_rat(enumr(rng), eden(rng))] += make_rat(c, den(rng));
  }
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
  if (p.empty()) p[Rat(0)] = 1;
  return p;
}

inline Surreal from_poly(const oracle::Poly& p) {
  std::vector<Term> ts;
  for (auto it = p.rbegin(); it != p.rend(); ++it) ts.push_back(Term{Coeff(it->second), Surreal::from_rat(it->first)});
  return Surreal::from_terms(std::move(ts));
}

/// Finite form whose exponents may themselves be finite forms.
inline Surreal random_form(std::mt19937& rng, int depth = 1) {
  Surreal x = from_poly(random_poly(rng, 3));
  if (depth > 0 && rng() % 3 == 0) {
    const Surreal e = random_form(rng, depth - 1);
    x = add(x, Surreal::monomial(Coeff(make_rat(static_cast<long>(rng() % 5) + 1, 2)), e));
  }
  return x;
}

/// Terms of a Surreal with rational exponents, as (exp, coeff) pairs.
inline std::vector<std::pair<Rat, Rat>> rat_terms(const Surreal& x, std::size_t n, const Budget& b) {
  std::vector<std::pair<Rat, Rat>> out;
  for (const Term& t : x.prefix(n, b)) {
    auto e = t.exp.as_rat(b);
    if (!e || !t.coeff.is_exact()) return {};
    out.emplace_back(*e, t.coeff.rat());
  }
  return out;
}

inline bool equal(const Surreal& x, const Surreal& y, const Budget& b = Budget{}) {
  return compare(x, y, b) == Cmp::Equal;
}

/// Agreement on the first n forced terms. A stream that stops with a
/// cancellation budget error after matching the other's end counts as
/// agreeing: every coefficient it could force was zero.
inline bool agree(const Surreal& x, const Surreal& y, std::size_t n, const Budget& b = Budget{}) {
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Term> tx, ty;
    bool ex = false, ey = false;
    try { tx = x.term(i, b); } catch (const KernelError& e) { if (e.kind() != ErrorKind::BudgetExhausted) throw; ex = true; }
    try { ty = y.term(i, b); } catch (const KernelError& e) { if (e.kind() != ErrorKind::BudgetExhausted) throw; ey = true; }
    if (ex || ey) return (ex && (ey || !ty)) || (ey && !tx);
    if (!tx || !ty) return !tx && !ty;
    if (compare(tx->exp, ty->exp, b.deeper()) != Cmp::Equal) return false;
    const Cmp cc = coeff_compare(tx->coeff, ty->coeff, b.prec);
    if (cc == Cmp::Equal) continue;
    if (cc == Cmp::Indeterminate) {
      // Refinable coefficients: accept overlapping enclosures.
      Interval a = tx->coeff.approx(b.prec), c = ty->coeff.approx(b.prec);
      if (a.hi < c.lo || c.hi < a.lo) return false;
      continue;
    }
    return false;
  }
  return true;
}

}  // namespace th
