#pragma once

#include <utility>
#include <vector>

#include "surreal/surreal.hpp"

namespace surreal {

/// Sum of eps^n / n! for infinitesimal eps.
[[nodiscard]] Surreal exp_taylor(const Surreal& eps, const Budget& b);
/// Sum of (-1)^(k-1) eps^k / k for infinitesimal eps.
[[nodiscard]] Surreal log1p(const Surreal& eps, const Budget& b);

/// Gonshor's h: log w^(w^s) = w^h(s). Supported on dyadics, positive
/// reals and positive infinite monomial-fragment elements.
[[nodiscard]] Surreal h(const Surreal& s, const Budget& b);
/// Inverse of h on positive arguments.
[[nodiscard]] Surreal g(const Surreal& x, const Budget& b);

/// Memoized (argument, value) pairs, in insertion order.
[[nodiscard]] std::vector<std::pair<Surreal, Surreal>> h_memo();
[[nodiscard]] std::vector<std::pair<Surreal, Surreal>> g_memo();

/// log(w^gamma): termwise h on the exponents of gamma.
[[nodiscard]] Surreal log_leader(const Surreal& gamma);

[[nodiscard]] Surreal exp(const Surreal& x, const Budget& b);
/// Throws NonPositive unless x is decided positive.
[[nodiscard]] Surreal log(const Surreal& x, const Budget& b);

}  // namespace surreal
