#include "surreal/ordinal.hpp"

namespace surreal {

Ordinal Ordinal::nat(const Int& n) {
  Ordinal o;
  if (n < 0) throw KernelError(ErrorKind::DomainError, "negative ordinal");
  if (n > 0) o.terms_.push_back(Term{std::make_shared<const Ordinal>(), n});
  return o;
}

Ordinal Ordinal::omega_pow(const Ordinal& e, const Int& count) {
  Ordinal o;
  if (count > 0) o.terms_.push_back(Term{std::make_shared<const Ordinal>(e), count});
  return o;
}

std::optional<Int> Ordinal::as_nat() const {
  if (terms_.empty()) return Int(0);
  if (terms_.size() == 1 && terms_[0].exp->is_zero()) return terms_[0].count;
  return std::nullopt;
}

Ordinal Ordinal::lead_exp() const { return terms_.empty() ? Ordinal() : *terms_[0].exp; }

int ordinal_compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (int c = ordinal_compare(*x[i].exp, *y[i].exp); c != 0) return c;
    if (x[i].count != y[i].count) return x[i].count < y[i].count ? -1 : 1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& e = *b.terms_[0].exp;
  Ordinal out;
  for (const auto& t : a.terms_) {
    const int c = ordinal_compare(*t.exp, e);
    if (c > 0) {
      out.terms_.push_back(t);
    } else if (c == 0) {
      out.terms_.push_back(Ordinal::Term{t.exp, t.count + b.terms_[0].count});
      out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
      return out;
    } else {
      break;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  Ordinal out;
  const auto& lead = a.terms_[0];
  for (const auto& t : b.terms_) {
    if (!t.exp->is_zero()) {
      out = out + Ordinal::omega_pow(*lead.exp + *t.exp, t.count);
    } else {
      Ordinal part;
      part.terms_.push_back(Ordinal::Term{lead.exp, lead.count * t.count});
      part.terms_.insert(part.terms_.end(), a.terms_.begin() + 1, a.terms_.end());
      out = out + part;
    }
  }
  return out;
}

Ordinal Ordinal::left_sub(const Ordinal& a) const {
  if (ordinal_compare(a, *this) > 0) throw KernelError(ErrorKind::DomainError, "ordinal left subtraction underflow");
  const auto& x = a.terms_;
  const auto& y = terms_;
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && ordinal_compare(*x[i].exp, *y[i].exp) == 0 && x[i].count == y[i].count) ++i;
  Ordinal out;
  if (i == y.size()) return out;
  if (i < x.size() && ordinal_compare(*x[i].exp, *y[i].exp) == 0) {
    out.terms_.push_back(Term{y[i].exp, y[i].count - x[i].count});
    ++i;
  }
  out.terms_.insert(out.terms_.end(), y.begin() + static_cast<long>(i), y.end());
  return out;
}

std::pair<Ordinal, Ordinal> Ordinal::div_omega_pow(const Ordinal& e) const {
  Ordinal q, r;
  for (const auto& t : terms_) {
    if (ordinal_compare(*t.exp, e) >= 0) {
      q.terms_.push_back(Term{std::make_shared<const Ordinal>(t.exp->left_sub(e)), t.count});
    } else {
      r.terms_.push_back(t);
    }
  }
  return {q, r};
}

std::string Ordinal::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string s;
    if (t.exp->is_zero()) {
      s = t.count.get_str();
    } else {
      auto n = t.exp->as_nat();
      if (n && *n == 1) {
        s = "w";
      } else if (n) {
        s = "w^" + n->get_str();
      } else {
        s = "w^(" + t.exp->text() + ")";
      }
      if (t.count != 1) s += "*" + t.count.get_str();
    }
    out += (out.empty() ? "" : " + ") + s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sign sequences
// ---------------------------------------------------------------------------

void SignSeq::push(bool plus, const Ordinal& len) {
  if (len.is_zero()) return;
  if (!runs_.empty() && runs_.back().plus == plus) {
    runs_.back().len = runs_.back().len + len;
  } else {
    runs_.push_back(SignRun{plus, len});
  }
}

void SignSeq::append(const SignSeq& o) {
  for (const auto& r : o.runs_) push(r.plus, r.len);
}

Ordinal SignSeq::length() const {
  Ordinal n;
  for (const auto& r : runs_) n = n + r.len;
  return n;
}

Ordinal SignSeq::plus_count() const {
  Ordinal n;
  for (const auto& r : runs_) {
    if (r.plus) n = n + r.len;
  }
  return n;
}

SignSeq SignSeq::negated() const {
  SignSeq s;
  for (const auto& r : runs_) s.push(!r.plus, r.len);
  return s;
}

SignSeq SignSeq::stretched(const Ordinal& f) const {
  SignSeq s;
  for (const auto& r : runs_) s.push(r.plus, f * r.len);
  return s;
}

SignSeq SignSeq::prefix(const Ordinal& len) const {
  SignSeq s;
  Ordinal left = len;
  for (const auto& r : runs_) {
    if (left.is_zero()) break;
    if (r.len <= left) {
      s.push(r.plus, r.len);
      left = left.left_sub(r.len);
    } else {
      s.push(r.plus, left);
      left = Ordinal();
    }
  }
  return s;
}

std::optional<bool> SignSeq::at(const Ordinal& pos) const {
  Ordinal start;
  for (const auto& r : runs_) {
    Ordinal end = start + r.len;
    if (pos < end) return r.plus;
    start = end;
  }
  return std::nullopt;
}

std::string SignSeq::text() const {
  if (runs_.empty()) return "()";
  std::string out;
  for (const auto& r : runs_) {
    std::string len = r.len.text();
    if (len.find_first_of(" ^*") != std::string::npos) len = "(" + len + ")";
    out += (out.empty() ? "" : " ") + std::string(r.plus ? "+" : "-") + "^" + len;
  }
  return out;
}

bool SignSeq::operator==(const SignSeq& o) const {
  if (runs_.size() != o.runs_.size()) return false;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].plus != o.runs_[i].plus || !(runs_[i].len == o.runs_[i].len)) return false;
  }
  return true;
}

SignSeq dyadic_sign_expansion(const Rat& d) {
  if (!is_dyadic(d)) throw KernelError(ErrorKind::DomainError, rat_text(d) + " is not dyadic");
  if (d < 0) return dyadic_sign_expansion(-d).negated();
  SignSeq s;
  const Int n = rat_floor(d);
  Rat frac = d - Rat(n);
  if (frac == 0) {
    s.push(true, Ordinal::nat(n));
    return s;
  }
  s.push(true, Ordinal::nat(n + 1));
  s.push(false, Ordinal::nat(1));
  // Binary digits of the fraction, all but the last.
  while (true) {
    frac *= 2;
    const bool bit = frac >= 1;
    if (bit) frac -= 1;
    if (frac == 0) break;
    s.push(bit, Ordinal::nat(1));
  }
  return s;
}

Rat dyadic_from_signs(const SignSeq& s) {
  Rat v = 0;
  std::optional<Rat> lo, hi;
  for (const auto& r : s.runs()) {
    auto n = r.len.as_nat();
    if (!n) throw KernelError(ErrorKind::DomainError, "sign sequence is not finite");
    if (r.plus && !hi) {
      lo = v + Rat(*n - 1);
      v += Rat(*n);
      continue;
    }
    if (!r.plus && !lo) {
      hi = v - Rat(*n - 1);
      v -= Rat(*n);
      continue;
    }
    for (Int k = 0; k < *n; ++k) {
      if (r.plus) {
        lo = v;
        v = hi ? Rat((v + *hi) / 2) : Rat(v + 1);
      } else {
        hi = v;
        v = lo ? Rat((v + *lo) / 2) : Rat(v - 1);
      }
    }
  }
  v.canonicalize();
  return v;
}

SignSeq ordinal_sign_expansion(const Ordinal& o) {
  SignSeq s;
  s.push(true, o);
  return s;
}

}  // namespace surreal
