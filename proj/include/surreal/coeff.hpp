#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "surreal/budget.hpp"

namespace surreal {

using Rat = mpq_class;
using Int = mpz_class;

// ---------------------------------------------------------------------------
// Exact rationals
// ---------------------------------------------------------------------------

enum class Cmp { Less, Equal, Greater, Indeterminate };

[[nodiscard]] const char* to_string(Cmp c);
[[nodiscard]] Cmp flip(Cmp c);

[[nodiscard]] Rat make_rat(long num, long den = 1);
[[nodiscard]] Rat rat_div(const Rat& a, const Rat& b);  // throws DivisionByZero
[[nodiscard]] Int rat_floor(const Rat& a);
[[nodiscard]] Cmp rat_compare(const Rat& a, const Rat& b);
[[nodiscard]] bool is_integer(const Rat& a);
[[nodiscard]] bool is_dyadic(const Rat& a);
[[nodiscard]] std::string rat_text(const Rat& a);
[[nodiscard]] Rat parse_rat(const std::string& s);

/// Closed rational interval.
struct Interval {
  Rat lo;
  Rat hi;

  [[nodiscard]] Rat width() const { return hi - lo; }
  [[nodiscard]] bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  [[nodiscard]] bool excludes_zero() const { return lo > 0 || hi < 0; }
};

// ---------------------------------------------------------------------------
// Refinable reals
//
// A refinable real is an exact polynomial with rational coefficients over
// transcendental atoms (pi, e^q, sin q, cos q, ln q, and functions of other
// refinable reals). The polynomial is kept in a normal form so that
// cancellations such as e^a * e^b = e^(a+b) or sin^2 + cos^2 = 1 are detected
// exactly; numeric enclosures come from MPFR with directed rounding.
// ---------------------------------------------------------------------------

class RReal;

struct Atom {
  enum class Kind { Pi, Exp, Sin, Cos, Ln, Fn };

  Kind kind = Kind::Pi;
  Rat arg;             // Exp, Sin, Cos, Ln
  std::string fn;      // Fn: exp, log, sin, cos, inv, or ext
  std::shared_ptr<const RReal> inner;  // Fn argument (absent for ext)
  std::shared_ptr<const std::function<Interval(unsigned)>> external;
  std::string key;     // canonical text; total order on atoms

  [[nodiscard]] Interval enclose(unsigned bits) const;
};

/// Product of atom powers. Exp atoms are merged, cos powers are reduced
/// below two, and only pi may carry a negative power.
using Monomial = std::vector<std::pair<Atom, int>>;

[[nodiscard]] std::string monomial_key(const Monomial& m);

/// Sparse rational polynomial keyed by monomial text. The empty key is the
/// constant monomial.
class RealPoly {
 public:
  struct Entry {
    Monomial mono;
    Rat coeff;
  };

  RealPoly() = default;
  explicit RealPoly(const Rat& c);
  static RealPoly atom(const Atom& a, int power = 1);
  /// Canonical product c * prod(atom^power).
  static RealPoly from_factors(std::map<std::string, std::pair<Atom, int>> factors, const Rat& c);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::optional<Rat> as_rat() const;
  [[nodiscard]] const std::map<std::string, Entry>& terms() const { return terms_; }

  RealPoly& operator+=(const RealPoly& o);
  [[nodiscard]] RealPoly operator+(const RealPoly& o) const;
  [[nodiscard]] RealPoly operator-() const;
  [[nodiscard]] RealPoly operator-(const RealPoly& o) const;
  [[nodiscard]] RealPoly operator*(const RealPoly& o) const;
  [[nodiscard]] RealPoly scaled(const Rat& q) const;

  [[nodiscard]] bool operator==(const RealPoly& o) const;

  [[nodiscard]] Interval enclose(unsigned bits) const;
  [[nodiscard]] std::string text() const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  std::map<std::string, Entry> terms_;
};

/// Refinable real with memoized, nested enclosures.
///
/// `approx(k)` returns an interval of width at most 2^-k containing the
/// value. Every returned interval is contained in all previously returned
/// ones, so refinement is monotone and consistent across threads.
class RReal {
 public:
  explicit RReal(RealPoly p);

  [[nodiscard]] Interval approx(unsigned k) const;
  [[nodiscard]] const RealPoly& poly() const { return poly_; }
  [[nodiscard]] std::string text() const { return poly_.text(); }

  /// Sign at precision up to `k` bits, nullopt when the enclosure keeps 0.
  [[nodiscard]] std::optional<int> sign(unsigned k) const;

 private:
  RealPoly poly_;
  mutable std::mutex mu_;
  mutable std::optional<Interval> best_;
};

using RRealPtr = std::shared_ptr<const RReal>;

[[nodiscard]] RRealPtr rreal_const(const std::string& name);  // "pi" or "e"
/// Independent black-box real, never identified with any other value.
[[nodiscard]] RRealPtr rreal_external(const std::string& name,
                                      std::function<Interval(unsigned)> approx);

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

/// Exact rational or refinable real. Exact values are never stored as
/// refinable reals.
class Coeff {
 public:
  Coeff() : v_(Rat(0)) {}
  Coeff(const Rat& q) : v_(q) {}  // NOLINT(implicit)
  Coeff(long n) : v_(Rat(n)) {}   // NOLINT(implicit)
  explicit Coeff(RealPoly p);
  explicit Coeff(RRealPtr r);

  [[nodiscard]] bool is_exact() const { return std::holds_alternative<Rat>(v_); }
  [[nodiscard]] const Rat& rat() const { return std::get<Rat>(v_); }
  [[nodiscard]] const RRealPtr& rreal() const { return std::get<RRealPtr>(v_); }
  [[nodiscard]] RealPoly poly() const;

  /// Exact (symbolic) zero test.
  [[nodiscard]] bool is_zero() const;
  /// Sign decided at `prec` bits; nullopt if undecided. Exact zero gives 0.
  [[nodiscard]] std::optional<int> sign(unsigned prec) const;
  /// Exact identity of normal forms.
  [[nodiscard]] bool same(const Coeff& o) const;

  [[nodiscard]] Interval approx(unsigned k) const;

  [[nodiscard]] Coeff operator+(const Coeff& o) const;
  [[nodiscard]] Coeff operator-(const Coeff& o) const;
  [[nodiscard]] Coeff operator-() const;
  [[nodiscard]] Coeff operator*(const Coeff& o) const;
  [[nodiscard]] Coeff operator/(const Coeff& o) const;  // throws on zero

  [[nodiscard]] std::string text() const;
  /// Name used in JSON output for refinable coefficients.
  [[nodiscard]] std::string name() const { return text(); }

 private:
  std::variant<Rat, RRealPtr> v_;
};

/// Builds a coefficient and verifies it is nonzero at `prec` bits.
/// Throws Indeterminate when no witness is found.
[[nodiscard]] Coeff nonzero_coeff(Coeff c, unsigned prec);

[[nodiscard]] Cmp coeff_compare(const Coeff& a, const Coeff& b, unsigned prec);

// Transcendental functions on coefficients with exact shortcuts
// (exp(0)=1, sin(k pi)=0, exp(ln q)=q, ...).
[[nodiscard]] Coeff coeff_exp(const Coeff& x);
[[nodiscard]] Coeff coeff_ln(const Coeff& x, unsigned prec);  // throws NonPositive
[[nodiscard]] Coeff coeff_sin(const Coeff& x);
[[nodiscard]] Coeff coeff_cos(const Coeff& x);
[[nodiscard]] Coeff coeff_pi();

/// If x is exactly q*pi for rational q, returns q.
[[nodiscard]] std::optional<Rat> pi_multiple(const Coeff& x);

/// rreal_fn(name, x): name in {sin, cos, exp, ln}.
[[nodiscard]] Coeff rreal_fn(const std::string& name, const Coeff& x, unsigned prec = 64);

}  // namespace surreal
