#pragma once

#include <optional>
#include <vector>

#include "surreal/ordinal.hpp"
#include "surreal/surreal.hpp"

namespace surreal {

// Sign expansions on the hereditary monomial fragment
//   F = {0} u { +-r * w^y : r positive dyadic, y in F }.

/// Sign expansion of w^y given the expansion of y.
[[nodiscard]] SignSeq omega_pow_signs(const SignSeq& y);
/// Expansion of x, or nullopt when x is outside F.
[[nodiscard]] std::optional<SignSeq> sign_expansion(const Surreal& x, const Budget& b);
/// Element of F with the given expansion, or nullopt.
[[nodiscard]] std::optional<Surreal> from_sign_expansion(const SignSeq& s);

/// Omnific integer test: no negative exponents and an integer real part.
[[nodiscard]] Tri is_omnific(const Surreal& x, const Budget& b);

/// Simplest dyadic strictly between max L and min R. Throws DomainError on
/// an empty interval.
[[nodiscard]] Rat simplest_dyadic_between(const std::vector<Rat>& L, const std::vector<Rat>& R);

/// Cut lo < x < hi with optional valuation bounds:
///   val_upper u: x < w^u / n for all n (x is infinitesimal against w^u),
///   val_lower l: |x| > n * w^l for all n.
struct CutSpec {
  std::optional<Surreal> lo;
  std::optional<Surreal> hi;
  std::optional<Surreal> val_upper;
  std::optional<Surreal> val_lower;
};

/// Whether x satisfies every constraint of the cut.
[[nodiscard]] Tri in_cut(const Surreal& x, const CutSpec& c, const Budget& b);

/// Simplest element of the cut. Throws FragmentExhausted when the answer
/// or a bound falls outside F.
[[nodiscard]] Surreal simplest_in_cut(const CutSpec& c, const Budget& b);

}  // namespace surreal
