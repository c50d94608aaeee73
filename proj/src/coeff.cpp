#include "surreal/coeff.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <sstream>

namespace surreal {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::FragmentExhausted: return "FragmentExhausted";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::ZeroOrIndeterminateLeading: return "ZeroOrIndeterminateLeading";
    case ErrorKind::Syntax: return "SyntaxError";
  }
  return "?";
}

const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
    case Cmp::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Cmp flip(Cmp c) {
  if (c == Cmp::Less) return Cmp::Greater;
  if (c == Cmp::Greater) return Cmp::Less;
  return c;
}

// ---------------------------------------------------------------------------
// Rat
// ---------------------------------------------------------------------------

Rat make_rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_div(const Rat& a, const Rat& b) {
  if (b == 0) throw KernelError(ErrorKind::DivisionByZero, "division by zero");
  return a / b;
}

Int rat_floor(const Rat& a) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return r;
}

Cmp rat_compare(const Rat& a, const Rat& b) {
  int c = cmp(a, b);
  return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
}

bool is_integer(const Rat& a) { return a.get_den() == 1; }

bool is_dyadic(const Rat& a) {
  const Int& d = a.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

std::string rat_text(const Rat& a) { return a.get_str(); }

Rat parse_rat(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// MPFR helpers
// ---------------------------------------------------------------------------

namespace {

class Mp {
 public:
  explicit Mp(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(bits, 8u))); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }

  [[nodiscard]] Rat to_rat() const {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

// Rounds an interval outward onto the grid 2^-bits to keep denominators small.
Interval snap(const Interval& iv, unsigned bits) {
  Int scale = 1;
  scale <<= bits;
  Rat lo = iv.lo * scale;
  Rat hi = iv.hi * scale;
  Int flo = rat_floor(lo);
  Int chi = -rat_floor(-hi);
  return {Rat(flo, scale), Rat(chi, scale)};
}

Interval imul(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval iinv(const Interval& a) {
  if (!a.excludes_zero())
    throw KernelError(ErrorKind::Indeterminate, "cannot invert interval containing 0");
  return {1 / a.hi, 1 / a.lo};
}

using MpfrFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Monotone increasing function applied to an interval.
Interval monotone(MpfrFn f, const Interval& x, unsigned bits) {
  Mp lo(bits), hi(bits);
  mpfr_set_q(lo.get(), x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.hi.get_mpq_t(), MPFR_RNDU);
  f(lo.get(), lo.get(), MPFR_RNDD);
  f(hi.get(), hi.get(), MPFR_RNDU);
  return {lo.to_rat(), hi.to_rat()};
}

// 1-Lipschitz function (sin, cos) applied to an interval via its midpoint.
Interval lipschitz(MpfrFn f, const Interval& x, unsigned bits) {
  Rat mid = (x.lo + x.hi) / 2;
  Mp m(bits);
  mpfr_set_q(m.get(), mid.get_mpq_t(), MPFR_RNDN);
  Rat mr = m.to_rat();
  Rat radius = std::max(abs(x.hi - mr), abs(mr - x.lo));
  Mp lo(bits), hi(bits);
  f(lo.get(), m.get(), MPFR_RNDD);
  f(hi.get(), m.get(), MPFR_RNDU);
  Interval r{lo.to_rat() - radius, hi.to_rat() + radius};
  if (r.lo < -1) r.lo = -1;
  if (r.hi > 1) r.hi = 1;
  return r;
}

Interval point(const Rat& q) { return {q, q}; }

}  // namespace

// ---------------------------------------------------------------------------
// Atoms
// ---------------------------------------------------------------------------

Interval Atom::enclose(unsigned bits) const {
  const unsigned w = bits + 16;
  switch (kind) {
    case Kind::Pi: {
      Mp lo(w), hi(w);
      mpfr_const_pi(lo.get(), MPFR_RNDD);
      mpfr_const_pi(hi.get(), MPFR_RNDU);
      return {lo.to_rat(), hi.to_rat()};
    }
    case Kind::Exp: return monotone(mpfr_exp, point(arg), w);
    case Kind::Ln: return monotone(mpfr_log, point(arg), w);
    case Kind::Sin: return lipschitz(mpfr_sin, point(arg), w);
    case Kind::Cos: return lipschitz(mpfr_cos, point(arg), w);
    case Kind::Fn: break;
  }
  if (fn == "ext") return (*external)(bits);
  Interval x = inner->approx(bits);
  if (fn == "exp") return monotone(mpfr_exp, x, w);
  if (fn == "log") {
    if (!(x.lo > 0)) throw KernelError(ErrorKind::Indeterminate, "log argument not provably positive");
    return monotone(mpfr_log, x, w);
  }
  if (fn == "sin") return lipschitz(mpfr_sin, x, w);
  if (fn == "cos") return lipschitz(mpfr_cos, x, w);
  if (fn == "inv") return iinv(x);
  throw KernelError(ErrorKind::DomainError, "unknown atom function " + fn);
}

namespace {

Atom make_atom(Atom::Kind kind, const Rat& arg) {
  Atom a;
  a.kind = kind;
  a.arg = arg;
  switch (kind) {
    case Atom::Kind::Pi: a.key = "pi"; break;
    case Atom::Kind::Exp: a.key = arg == 1 ? "e" : "exp(" + rat_text(arg) + ")"; break;
    case Atom::Kind::Sin: a.key = "sin(" + rat_text(arg) + ")"; break;
    case Atom::Kind::Cos: a.key = "cos(" + rat_text(arg) + ")"; break;
    case Atom::Kind::Ln: a.key = "log(" + rat_text(arg) + ")"; break;
    case Atom::Kind::Fn: break;
  }
  return a;
}

Atom make_fn_atom(const std::string& fn, const RealPoly& inner) {
  Atom a;
  a.kind = Atom::Kind::Fn;
  a.fn = fn;
  a.inner = std::make_shared<const RReal>(inner);
  a.key = fn == "inv" ? "1/(" + inner.text() + ")" : fn + "(" + inner.text() + ")";
  return a;
}

bool is_cos(const Atom& a) {
  return a.kind == Atom::Kind::Cos || (a.kind == Atom::Kind::Fn && a.fn == "cos");
}

Atom sin_partner(const Atom& cosine) {
  if (cosine.kind == Atom::Kind::Cos) return make_atom(Atom::Kind::Sin, cosine.arg);
  return make_fn_atom("sin", cosine.inner->poly());
}

}  // namespace

std::string monomial_key(const Monomial& m) {
  std::string k;
  for (const auto& [a, p] : m) {
    if (!k.empty()) k += "*";
    k += a.key;
    if (p != 1) k += "^" + std::to_string(p);
  }
  return k;
}

// ---------------------------------------------------------------------------
// RealPoly
// ---------------------------------------------------------------------------

RealPoly::RealPoly(const Rat& c) {
  if (c != 0) terms_.emplace("", Entry{{}, c});
}

RealPoly RealPoly::atom(const Atom& a, int power) {
  std::map<std::string, std::pair<Atom, int>> f;
  f.emplace(a.key, std::make_pair(a, power));
  return from_factors(std::move(f), Rat(1));
}

RealPoly RealPoly::from_factors(std::map<std::string, std::pair<Atom, int>> factors, const Rat& c) {
  RealPoly out;
  if (c == 0) return out;
  Rat exp_total = 0;
  for (auto it = factors.begin(); it != factors.end();) {
    if (it->second.first.kind == Atom::Kind::Exp) {
      exp_total += it->second.first.arg * it->second.second;
      it = factors.erase(it);
    } else if (it->second.second == 0) {
      it = factors.erase(it);
    } else {
      ++it;
    }
  }
  if (exp_total != 0) {
    Atom e = make_atom(Atom::Kind::Exp, exp_total);
    factors.emplace(e.key, std::make_pair(e, 1));
  }
  for (auto& [key, fp] : factors) {
    if (is_cos(fp.first) && fp.second >= 2) {
      Atom s = sin_partner(fp.first);
      auto rest = factors;
      rest[key].second -= 2;
      auto with_sin = rest;
      auto& slot = with_sin.try_emplace(s.key, s, 0).first->second;
      slot.second += 2;
      return from_factors(std::move(rest), c) - from_factors(std::move(with_sin), c);
    }
  }
  Monomial m;
  for (auto& [key, fp] : factors) m.emplace_back(fp.first, fp.second);
  out.add_term(m, c);
  return out;
}

void RealPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  std::string k = monomial_key(m);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, Entry{m, c});
    return;
  }
  it->second.coeff += c;
  if (it->second.coeff == 0) terms_.erase(it);
}

std::optional<Rat> RealPoly::as_rat() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second.coeff;
  return std::nullopt;
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
  for (const auto& [k, e] : o.terms_) add_term(e.mono, e.coeff);
  return *this;
}

RealPoly RealPoly::operator+(const RealPoly& o) const {
  RealPoly r = *this;
  r += o;
  return r;
}

RealPoly RealPoly::operator-() const { return scaled(Rat(-1)); }

RealPoly RealPoly::operator-(const RealPoly& o) const { return *this + (-o); }

RealPoly RealPoly::scaled(const Rat& q) const {
  RealPoly r;
  if (q == 0) return r;
  r.terms_ = terms_;
  for (auto& [k, e] : r.terms_) e.coeff *= q;
  return r;
}

RealPoly RealPoly::operator*(const RealPoly& o) const {
  RealPoly r;
  for (const auto& [ka, a] : terms_) {
    for (const auto& [kb, b] : o.terms_) {
      std::map<std::string, std::pair<Atom, int>> f;
      for (const auto& [atom, p] : a.mono) f.emplace(atom.key, std::make_pair(atom, p));
      for (const auto& [atom, p] : b.mono) f.try_emplace(atom.key, atom, 0).first->second.second += p;
      r += from_factors(std::move(f), a.coeff * b.coeff);
    }
  }
  return r;
}

bool RealPoly::operator==(const RealPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto i = terms_.begin(), j = o.terms_.begin(); i != terms_.end(); ++i, ++j) {
    if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
  }
  return true;
}

Interval RealPoly::enclose(unsigned bits) const {
  Interval sum{0, 0};
  for (const auto& [k, e] : terms_) {
    Interval prod{e.coeff, e.coeff};
    for (const auto& [atom, p] : e.mono) {
      Interval a = atom.enclose(bits + 4);
      if (p < 0) a = iinv(a);
      for (int i = 0; i < std::abs(p); ++i) prod = snap(imul(prod, a), bits + 8);
    }
    sum.lo += prod.lo;
    sum.hi += prod.hi;
  }
  return sum;
}

namespace {

std::string monomial_text(const Monomial& m, const Rat& c) {
  std::string num, den;
  for (const auto& [a, p] : m) {
    for (int i = 0; i < std::abs(p); ++i) {
      if (p > 0) num += (num.empty() ? "" : "*") + a.key;
      else den += "/" + a.key;
    }
  }
  std::string out;
  if (num.empty()) {
    out = rat_text(c);
  } else if (c == 1) {
    out = num;
  } else {
    out = rat_text(c) + "*" + num;
  }
  return out + den;
}

}  // namespace

std::string RealPoly::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, e] : terms_) {
    const bool neg = e.coeff < 0;
    std::string body = monomial_text(e.mono, abs(e.coeff));
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RReal
// ---------------------------------------------------------------------------

RReal::RReal(RealPoly p) : poly_(std::move(p)) {}

Interval RReal::approx(unsigned k) const {
  const Rat target(Int(1), Int(1) << k);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (best_ && best_->width() <= target) return *best_;
  }
  const unsigned limit = std::max(8u * k, 4096u);
  for (unsigned w = k + 8; w <= limit; w *= 2) {
    Interval iv;
    try {
      iv = poly_.enclose(w);
    } catch (const KernelError& e) {
      if (e.kind() != ErrorKind::Indeterminate) throw;
      continue;
    }
    if (iv.width() > target) continue;
    std::lock_guard<std::mutex> lock(mu_);
    if (best_) {
      iv.lo = std::max(iv.lo, best_->lo);
      iv.hi = std::min(iv.hi, best_->hi);
    }
    best_ = iv;
    return iv;
  }
  throw KernelError(ErrorKind::Indeterminate, "cannot refine " + text() + " to 2^-" + std::to_string(k));
}

std::optional<int> RReal::sign(unsigned k) const {
  // Positive scaling keeps the sign; bring the largest coefficient to 1 so
  // that k bits are relative to the size of the terms.
  Rat m(0);
  for (const auto& [key, e] : poly_.terms()) m = std::max(m, Rat(abs(e.coeff)));
  if (m != 0 && m != 1) return RReal(poly_.scaled(Rat(1) / m)).sign(k);
  for (unsigned p = std::min(8u, k);; p = std::min(2 * p, k)) {
    Interval iv;
    try {
      iv = approx(p);
    } catch (const KernelError& e) {
      if (e.kind() != ErrorKind::Indeterminate) throw;
      return std::nullopt;
    }
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
    if (p >= k) return std::nullopt;
  }
}

RRealPtr rreal_const(const std::string& name) {
  if (name == "pi") return std::make_shared<const RReal>(RealPoly::atom(make_atom(Atom::Kind::Pi, 0)));
  if (name == "e") return std::make_shared<const RReal>(RealPoly::atom(make_atom(Atom::Kind::Exp, 1)));
  throw KernelError(ErrorKind::DomainError, "unknown constant " + name);
}

RRealPtr rreal_external(const std::string& name, std::function<Interval(unsigned)> approx) {
  static std::atomic<unsigned long> counter{0};
  Atom a;
  a.kind = Atom::Kind::Fn;
  a.fn = "ext";
  a.external = std::make_shared<const std::function<Interval(unsigned)>>(std::move(approx));
  a.key = "ext:" + name + "#" + std::to_string(counter++);
  return std::make_shared<const RReal>(RealPoly::atom(a));
}

// ---------------------------------------------------------------------------
// Coeff
// ---------------------------------------------------------------------------

Coeff::Coeff(RealPoly p) {
  if (auto q = p.as_rat()) {
    v_ = *q;
  } else {
    v_ = std::make_shared<const RReal>(std::move(p));
  }
}

Coeff::Coeff(RRealPtr r) {
  if (auto q = r->poly().as_rat()) {
    v_ = *q;
  } else {
    v_ = std::move(r);
  }
}

RealPoly Coeff::poly() const { return is_exact() ? RealPoly(rat()) : rreal()->poly(); }

bool Coeff::is_zero() const { return is_exact() && rat() == 0; }

std::optional<int> Coeff::sign(unsigned prec) const {
  if (is_exact()) return sgn(rat());
  return rreal()->sign(prec);
}

bool Coeff::same(const Coeff& o) const {
  if (is_exact() && o.is_exact()) return rat() == o.rat();
  if (is_exact() != o.is_exact()) return false;
  return rreal() == o.rreal() || rreal()->poly() == o.rreal()->poly();
}

Interval Coeff::approx(unsigned k) const {
  if (is_exact()) return {rat(), rat()};
  return rreal()->approx(k);
}

Coeff Coeff::operator+(const Coeff& o) const {
  if (is_exact() && o.is_exact()) return Coeff(Rat(rat() + o.rat()));
  return Coeff(poly() + o.poly());
}

Coeff Coeff::operator-(const Coeff& o) const {
  if (is_exact() && o.is_exact()) return Coeff(Rat(rat() - o.rat()));
  if (!is_exact() && !o.is_exact() && rreal() == o.rreal()) return Coeff(Rat(0));
  return Coeff(poly() - o.poly());
}

Coeff Coeff::operator-() const {
  if (is_exact()) return Coeff(Rat(-rat()));
  return Coeff(poly().scaled(Rat(-1)));
}

Coeff Coeff::operator*(const Coeff& o) const {
  if (is_exact() && o.is_exact()) return Coeff(Rat(rat() * o.rat()));
  if (is_exact()) return Coeff(o.poly().scaled(rat()));
  if (o.is_exact()) return Coeff(poly().scaled(o.rat()));
  return Coeff(poly() * o.poly());
}

namespace {

// Inverse of a single monomial made of invertible atoms (pi, exp), if any.
std::optional<RealPoly> monomial_inverse(const RealPoly& p) {
  if (p.terms().size() != 1) return std::nullopt;
  const auto& e = p.terms().begin()->second;
  std::map<std::string, std::pair<Atom, int>> f;
  for (const auto& [a, pw] : e.mono) {
    if (a.kind == Atom::Kind::Pi) {
      f.emplace(a.key, std::make_pair(a, -pw));
    } else if (a.kind == Atom::Kind::Exp) {
      Atom inv = make_atom(Atom::Kind::Exp, -a.arg * pw);
      f.emplace(inv.key, std::make_pair(inv, 1));
    } else {
      return std::nullopt;
    }
  }
  return RealPoly::from_factors(std::move(f), 1 / e.coeff);
}

}  // namespace

Coeff Coeff::operator/(const Coeff& o) const {
  if (o.is_exact()) {
    Rat inv = rat_div(Rat(1), o.rat());
    return *this * Coeff(inv);
  }
  if (auto inv = monomial_inverse(o.poly())) return Coeff(poly() * *inv);
  return Coeff(poly() * RealPoly::atom(make_fn_atom("inv", o.poly())));
}

std::string Coeff::text() const { return is_exact() ? rat_text(rat()) : rreal()->text(); }

Coeff nonzero_coeff(Coeff c, unsigned prec) {
  auto s = c.sign(prec);
  if (!s) throw KernelError(ErrorKind::Indeterminate, "no nonzero witness for " + c.text());
  if (*s == 0) throw KernelError(ErrorKind::DomainError, "zero coefficient");
  return c;
}

Cmp coeff_compare(const Coeff& a, const Coeff& b, unsigned prec) {
  if (a.is_exact() && b.is_exact()) return rat_compare(a.rat(), b.rat());
  if (a.same(b)) return Cmp::Equal;
  for (unsigned p = std::min(4u, prec);; p = std::min(2 * p, prec)) {
    Interval x, y;
    try {
      x = a.approx(p);
      y = b.approx(p);
    } catch (const KernelError& e) {
      if (e.kind() != ErrorKind::Indeterminate) throw;
      return Cmp::Indeterminate;
    }
    if (x.hi < y.lo) return Cmp::Less;
    if (x.lo > y.hi) return Cmp::Greater;
    if (p >= prec) return Cmp::Indeterminate;
  }
}

// ---------------------------------------------------------------------------
// Transcendental functions
// ---------------------------------------------------------------------------

Coeff coeff_pi() { return Coeff(rreal_const("pi")); }

std::optional<Rat> pi_multiple(const Coeff& x) {
  if (x.is_exact()) {
    if (x.rat() == 0) return Rat(0);
    return std::nullopt;
  }
  const auto& t = x.rreal()->poly().terms();
  if (t.size() != 1 || t.begin()->first != "pi") return std::nullopt;
  return t.begin()->second.coeff;
}

namespace {

// Splits x into rational constant r and multiple q of pi when x = r + q*pi.
std::optional<std::pair<Rat, Rat>> split_pi(const Coeff& x) {
  if (x.is_exact()) return std::make_pair(x.rat(), Rat(0));
  const auto& t = x.rreal()->poly().terms();
  Rat r = 0, q = 0;
  for (const auto& [k, e] : t) {
    if (k.empty()) r = e.coeff;
    else if (k == "pi") q = e.coeff;
    else return std::nullopt;
  }
  return std::make_pair(r, q);
}

// q mod 2 in [0, 2)
Rat mod2(const Rat& q) {
  Rat h = q / 2;
  return q - 2 * Rat(rat_floor(h));
}

Coeff sin_rat(const Rat& r) {
  if (r == 0) return Coeff(0);
  if (r < 0) return -Coeff(RealPoly::atom(make_atom(Atom::Kind::Sin, -r)));
  return Coeff(RealPoly::atom(make_atom(Atom::Kind::Sin, r)));
}

Coeff cos_rat(const Rat& r) {
  if (r == 0) return Coeff(1);
  return Coeff(RealPoly::atom(make_atom(Atom::Kind::Cos, abs(r))));
}

}  // namespace

Coeff coeff_sin(const Coeff& x) {
  if (auto rq = split_pi(x)) {
    const auto& [r, q] = *rq;
    Rat m = mod2(q);
    if (m == 0) return sin_rat(r);
    if (m == make_rat(1, 2)) return cos_rat(r);
    if (m == 1) return -sin_rat(r);
    if (m == make_rat(3, 2)) return -cos_rat(r);
    if (r == 0) {
      if (m == make_rat(1, 6) || m == make_rat(5, 6)) return Coeff(make_rat(1, 2));
      if (m == make_rat(7, 6) || m == make_rat(11, 6)) return Coeff(make_rat(-1, 2));
    }
  }
  return Coeff(RealPoly::atom(make_fn_atom("sin", x.poly())));
}

Coeff coeff_cos(const Coeff& x) {
  if (auto rq = split_pi(x)) {
    const auto& [r, q] = *rq;
    Rat m = mod2(q);
    if (m == 0) return cos_rat(r);
    if (m == make_rat(1, 2)) return -sin_rat(r);
    if (m == 1) return -cos_rat(r);
    if (m == make_rat(3, 2)) return sin_rat(r);
    if (r == 0) {
      if (m == make_rat(1, 3) || m == make_rat(5, 3)) return Coeff(make_rat(1, 2));
      if (m == make_rat(2, 3) || m == make_rat(4, 3)) return Coeff(make_rat(-1, 2));
    }
  }
  return Coeff(RealPoly::atom(make_fn_atom("cos", x.poly())));
}

Coeff coeff_exp(const Coeff& x) {
  if (x.is_exact()) {
    if (x.rat() == 0) return Coeff(1);
    return Coeff(RealPoly::atom(make_atom(Atom::Kind::Exp, x.rat())));
  }
  RealPoly result(Rat(1));
  RealPoly rest;
  for (const auto& [k, e] : x.rreal()->poly().terms()) {
    if (k.empty()) {
      result = result * RealPoly::atom(make_atom(Atom::Kind::Exp, e.coeff));
      continue;
    }
    if (e.mono.size() == 1 && e.mono[0].second == 1 && is_integer(e.coeff)) {
      const Atom& a = e.mono[0].first;
      const long n = e.coeff.get_num().get_si();
      if (a.kind == Atom::Kind::Ln) {
        Rat p = 1;
        for (long i = 0; i < std::labs(n); ++i) p *= a.arg;
        result = result.scaled(n >= 0 ? p : 1 / p);
        continue;
      }
      if (a.kind == Atom::Kind::Fn && a.fn == "log") {
        RealPoly base = a.inner->poly();
        if (n < 0) {
          Coeff inv = Coeff(1) / Coeff(base);
          base = inv.poly();
        }
        for (long i = 0; i < std::labs(n); ++i) result = result * base;
        continue;
      }
    }
    std::map<std::string, std::pair<Atom, int>> f;
    for (const auto& [atom, p] : e.mono) f.emplace(atom.key, std::make_pair(atom, p));
    rest += RealPoly::from_factors(std::move(f), e.coeff);
  }
  if (!rest.is_zero()) result = result * RealPoly::atom(make_fn_atom("exp", rest));
  return Coeff(result);
}

Coeff coeff_ln(const Coeff& x, unsigned prec) {
  auto s = x.sign(prec);
  if (!s || *s <= 0) throw KernelError(ErrorKind::NonPositive, "log of non-positive or undecided " + x.text());
  if (x.is_exact()) {
    if (x.rat() == 1) return Coeff(0);
    return Coeff(RealPoly::atom(make_atom(Atom::Kind::Ln, x.rat())));
  }
  const auto& t = x.rreal()->poly().terms();
  if (t.size() == 1) {
    const auto& e = t.begin()->second;
    bool simple = e.coeff > 0;
    for (const auto& [a, p] : e.mono) simple = simple && (a.kind == Atom::Kind::Pi || a.kind == Atom::Kind::Exp);
    if (simple) {
      Coeff out = e.coeff == 1 ? Coeff(0) : Coeff(RealPoly::atom(make_atom(Atom::Kind::Ln, e.coeff)));
      for (const auto& [a, p] : e.mono) {
        if (a.kind == Atom::Kind::Exp) {
          out = out + Coeff(Rat(a.arg * p));
        } else {
          out = out + Coeff(RealPoly::atom(make_fn_atom("log", RealPoly::atom(a))).scaled(Rat(p)));
        }
      }
      return out;
    }
  }
  return Coeff(RealPoly::atom(make_fn_atom("log", x.poly())));
}

Coeff rreal_fn(const std::string& name, const Coeff& x, unsigned prec) {
  if (name == "sin") return coeff_sin(x);
  if (name == "cos") return coeff_cos(x);
  if (name == "exp") return coeff_exp(x);
  if (name == "ln" || name == "log") return coeff_ln(x, prec);
  throw KernelError(ErrorKind::DomainError, "unknown function " + name);
}

}  // namespace surreal
