#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surreal/budget.hpp"
#include "surreal/coeff.hpp"

namespace surreal {

struct Term;
struct Node;
class Generator;

/// Three-valued answer: nullopt means undecided within budget.
using Tri = std::optional<bool>;

/// Lazy Conway normal form: a memoized stream of terms with strictly
/// decreasing exponents. Copies share the stream.
class Surreal {
 public:
  Surreal();  // zero

  static Surreal from_rat(const Rat& q);
  static Surreal from_coeff(const Coeff& c);
  static Surreal omega();
  static Surreal omega_pow(const Surreal& y);
  static Surreal monomial(const Coeff& c, const Surreal& e);
  /// Terms must already be in normal form (decreasing, nonzero).
  static Surreal from_terms(std::vector<Term> terms);
  /// Stream backed by a generator. `finite` asserts termination.
  static Surreal lazy(std::function<std::unique_ptr<Generator>()> factory, bool finite);

  /// i-th term, or nullopt past the end. Throws KernelError when the
  /// generator cannot decide the next term within `b`.
  [[nodiscard]] std::optional<Term> term(std::size_t i, const Budget& b) const;
  /// Up to n leading terms (fewer if the stream ends).
  [[nodiscard]] std::vector<Term> prefix(std::size_t n, const Budget& b) const;
  /// All terms if the stream ends within `limit` terms.
  [[nodiscard]] std::optional<std::vector<Term>> all_terms(std::size_t limit, const Budget& b) const;

  [[nodiscard]] bool known_finite() const;
  [[nodiscard]] bool same_node(const Surreal& o) const { return node_ == o.node_; }
  /// Empty without forcing anything.
  [[nodiscard]] bool known_zero() const;
  /// Rational value of a fully forced stream, without forcing.
  [[nodiscard]] std::optional<Rat> peek_rat() const;
  /// All terms of a fully forced stream, without forcing.
  [[nodiscard]] std::optional<std::vector<Term>> peek_terms() const;
  /// Exact zero: the stream is empty.
  [[nodiscard]] bool is_zero(const Budget& b) const;

  /// Rational value if the stream is a finite real.
  [[nodiscard]] std::optional<Rat> as_rat(const Budget& b) const;
  [[nodiscard]] std::optional<Coeff> as_real(const Budget& b) const;

 private:
  explicit Surreal(std::shared_ptr<Node> n) : node_(std::move(n)) {}
  std::shared_ptr<Node> node_;
};

struct Term {
  Coeff coeff;
  Surreal exp;
};

/// Source of terms for a lazy stream. `next` returns nullopt at the end.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::optional<Term> next(const Budget& b) = 0;
};

// Arithmetic (lazy).
[[nodiscard]] Surreal add(const Surreal& x, const Surreal& y);
[[nodiscard]] Surreal neg(const Surreal& x);
[[nodiscard]] Surreal sub(const Surreal& x, const Surreal& y);
[[nodiscard]] Surreal mul(const Surreal& x, const Surreal& y);
[[nodiscard]] Surreal scale(const Surreal& x, const Coeff& c);
/// c * w^e * x
[[nodiscard]] Surreal shift(const Surreal& x, const Coeff& c, const Surreal& e);
[[nodiscard]] Surreal inv(const Surreal& x, const Budget& b);
[[nodiscard]] Surreal div(const Surreal& x, const Surreal& y, const Budget& b);
/// x^n for integer n (negative uses inv).
[[nodiscard]] Surreal power(const Surreal& x, long n, const Budget& b);

/// Sum over k of c(k) * eps^k. Zero coefficients are skipped. `eps` must be
/// infinitesimal.
[[nodiscard]] Surreal series_sum(const Surreal& eps, std::function<Coeff(std::size_t)> c,
                                 const Budget& b);

[[nodiscard]] Cmp compare(const Surreal& x, const Surreal& y, const Budget& b);
/// Sign of x: -1, 0, 1 or nullopt.
[[nodiscard]] std::optional<int> sign(const Surreal& x, const Budget& b);
/// compare that throws Indeterminate instead of returning it.
[[nodiscard]] Cmp compare_strict(const Surreal& x, const Surreal& y, const Budget& b,
                                 const char* what);
/// Termwise identity of the first forced terms; Equal on exact match.
[[nodiscard]] bool same_prefix(const Surreal& x, const Surreal& y, std::size_t n,
                               const Budget& b);

struct Decomposition {
  Surreal purely_infinite;
  Coeff real;
  Surreal infinitesimal;
};

[[nodiscard]] Decomposition decompose(const Surreal& x, const Budget& b);
[[nodiscard]] Term leading(const Surreal& x, const Budget& b);
[[nodiscard]] Surreal valuation(const Surreal& x, const Budget& b);
/// Terms with exponent strictly greater than e.
[[nodiscard]] Surreal truncate_before(const Surreal& x, const Surreal& e);
/// Terms with exponent strictly less than e.
[[nodiscard]] Surreal tail_after(const Surreal& x, const Surreal& e);
[[nodiscard]] bool is_truncation(const Surreal& x, const Surreal& y, const Budget& b);

/// Maps r*w^s to f(r)*w^m(s) with m strictly increasing, so order is kept.
[[nodiscard]] Surreal map_terms(const Surreal& x,
                                std::function<Term(const Term&, const Budget&)> f);

[[nodiscard]] Tri is_purely_infinite(const Surreal& x, const Budget& b);
[[nodiscard]] Tri is_infinitesimal(const Surreal& x, const Budget& b);
[[nodiscard]] Tri is_finite(const Surreal& x, const Budget& b);
[[nodiscard]] Tri is_positive_infinite(const Surreal& x, const Budget& b);
/// Finite stream whose exponents are finite forms, within budget.
[[nodiscard]] bool is_finite_form(const Surreal& x, const Budget& b);

/// Canonical text, e.g. `3*w^2 + 1/2 + 7*w^(-1)`. Streams longer than
/// b.max_terms end with `+ ...[truncated@N]`.
[[nodiscard]] std::string to_text(const Surreal& x, const Budget& b);
struct ForcedPrefix {
  std::vector<Term> terms;
  bool truncated = false;
};
/// The prefix to_text prints: at most b.max_terms terms.
[[nodiscard]] ForcedPrefix force_for_print(const Surreal& x, const Budget& b);
/// Whether to_text would mark truncation.
[[nodiscard]] bool is_truncated(const Surreal& x, const Budget& b);

/// Number of terms a generator may cancel before giving up on an
/// infinite input.
[[nodiscard]] std::size_t stall_limit(const Budget& b);

}  // namespace surreal
