#pragma once

#include <string>
#include <utility>

#include "surreal/surreal.hpp"

namespace surreal {

/// Omnific integer part: d in Oz with d <= q < d + 1.
[[nodiscard]] Surreal oz_floor(const Surreal& q, const Budget& b);

/// x = 2*pi*d + a with d omnific and 0 <= a < 2*pi.
struct Reduction {
  Surreal d;
  Surreal a;
};
[[nodiscard]] Reduction reduce_mod_2pi(const Surreal& x, const Budget& b);

/// x / (2*pi), exact on rational multiples of pi.
[[nodiscard]] Surreal div_2pi(const Surreal& x);

[[nodiscard]] Surreal sin(const Surreal& x, const Budget& b);
[[nodiscard]] Surreal cos(const Surreal& x, const Budget& b);

struct SurComplex {
  Surreal re;
  Surreal im;
};

[[nodiscard]] SurComplex cadd(const SurComplex& z, const SurComplex& w);
[[nodiscard]] SurComplex cmul(const SurComplex& z, const SurComplex& w);
/// exp(re) * (cos(im) + i sin(im)).
[[nodiscard]] SurComplex cexp(const SurComplex& z, const Budget& b);
/// re = 0 and im / (2*pi) omnific.
[[nodiscard]] Tri in_kernel(const SurComplex& z, const Budget& b);
/// `<re> + (<im>)i`
[[nodiscard]] std::string to_text(const SurComplex& z, const Budget& b);

/// Point of the strip: 0 <= im < 2*pi.
struct StripPoint {
  Surreal re;
  Surreal im;
};
/// Checks the bound; throws Indeterminate or DomainError.
[[nodiscard]] StripPoint make_strip(const Surreal& re, const Surreal& im, const Budget& b);
[[nodiscard]] StripPoint strip_mul(const StripPoint& p, const StripPoint& q, const Budget& b);

}  // namespace surreal
