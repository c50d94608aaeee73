#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surreal/coeff.hpp"

namespace surreal {

/// Ordinal below epsilon_0 in Cantor normal form: sum of w^e * c with
/// strictly decreasing exponents and positive natural counts.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> exp;
    Int count;
  };

  Ordinal() = default;  // zero
  static Ordinal nat(const Int& n);
  static Ordinal omega_pow(const Ordinal& e, const Int& count = 1);
  static Ordinal omega() { return omega_pow(nat(1)); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::optional<Int> as_nat() const;
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  /// Exponent of the leading term (zero for finite ordinals).
  [[nodiscard]] Ordinal lead_exp() const;

  /// c with a + c == *this; requires a <= *this.
  [[nodiscard]] Ordinal left_sub(const Ordinal& a) const;
  /// *this == w^e * q + r with r < w^e.
  [[nodiscard]] std::pair<Ordinal, Ordinal> div_omega_pow(const Ordinal& e) const;

  [[nodiscard]] std::string text() const;

 private:
  std::vector<Term> terms_;
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend Ordinal operator*(const Ordinal& a, const Ordinal& b);
};

[[nodiscard]] int ordinal_compare(const Ordinal& a, const Ordinal& b);  // -1, 0, 1
[[nodiscard]] Ordinal operator+(const Ordinal& a, const Ordinal& b);
[[nodiscard]] Ordinal operator*(const Ordinal& a, const Ordinal& b);
inline bool operator==(const Ordinal& a, const Ordinal& b) { return ordinal_compare(a, b) == 0; }
inline bool operator<(const Ordinal& a, const Ordinal& b) { return ordinal_compare(a, b) < 0; }
inline bool operator<=(const Ordinal& a, const Ordinal& b) { return ordinal_compare(a, b) <= 0; }

struct SignRun {
  bool plus;
  Ordinal len;
};

/// Run-length sign expansion. Adjacent runs have opposite signs.
class SignSeq {
 public:
  SignSeq() = default;
  void push(bool plus, const Ordinal& len);
  void append(const SignSeq& o);

  [[nodiscard]] const std::vector<SignRun>& runs() const { return runs_; }
  [[nodiscard]] bool empty() const { return runs_.empty(); }
  [[nodiscard]] Ordinal length() const;
  /// Ordinal number of pluses, summed in sequence order.
  [[nodiscard]] Ordinal plus_count() const;
  [[nodiscard]] SignSeq negated() const;
  /// Each run length multiplied on the left by `f` (f * len).
  [[nodiscard]] SignSeq stretched(const Ordinal& f) const;
  /// Prefix of the given length.
  [[nodiscard]] SignSeq prefix(const Ordinal& len) const;
  /// Sign at position pos, nullopt past the end.
  [[nodiscard]] std::optional<bool> at(const Ordinal& pos) const;
  /// `+^w -^1` style text.
  [[nodiscard]] std::string text() const;

  bool operator==(const SignSeq& o) const;

 private:
  std::vector<SignRun> runs_;
};

[[nodiscard]] SignSeq dyadic_sign_expansion(const Rat& d);  // throws DomainError
/// Tree walk from the root; requires every run to be finite.
[[nodiscard]] Rat dyadic_from_signs(const SignSeq& s);
[[nodiscard]] SignSeq ordinal_sign_expansion(const Ordinal& o);

}  // namespace surreal
