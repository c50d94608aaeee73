#include "surreal/trig.hpp"

#include "surreal/exp_log.hpp"
#include "surreal/simplicity.hpp"

namespace surreal {

namespace {

Coeff two_pi() { return coeff_pi() * Coeff(2); }

Coeff coeff_div_2pi(const Coeff& c) {
  if (auto k = pi_multiple(c)) {
    Rat q = *k / 2;
    q.canonicalize();
    return Coeff(q);
  }
  return c / two_pi();
}

// floor of a real coefficient, and whether it is an exact integer.
std::pair<Int, bool> coeff_floor(const Coeff& c, const Budget& b) {
  if (c.is_exact()) return {rat_floor(c.rat()), is_integer(c.rat())};
  const Interval iv = c.approx(b.prec);
  const Int lo = rat_floor(iv.lo), hi = rat_floor(iv.hi);
  if (lo != hi || Rat(lo) == iv.lo) throw KernelError(ErrorKind::Indeterminate, "floor of " + c.text() + " undecided");
  return {lo, false};
}

Surreal sin_taylor(const Surreal& eps, const Budget& b) {
  return series_sum(eps, [](std::size_t n) {
    if (n % 2 == 0) return Coeff(0);
    Int f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
    Rat q(Int((n / 2) % 2 == 0 ? 1 : -1), f);
    q.canonicalize();
    return Coeff(q);
  }, b);
}

Surreal cos_taylor(const Surreal& eps, const Budget& b) {
  return series_sum(eps, [](std::size_t n) {
    if (n % 2 == 1) return Coeff(0);
    Int f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
    Rat q(Int((n / 2) % 2 == 0 ? 1 : -1), f);
    q.canonicalize();
    return Coeff(q);
  }, b);
}

Surreal scaled(const Surreal& x, const Coeff& c) {
  if (c.is_zero()) return Surreal();
  if (c.is_exact() && c.rat() == 1) return x;
  return scale(x, c);
}

Cmp must(Cmp c, const char* what) {
  if (c == Cmp::Indeterminate) throw KernelError(ErrorKind::Indeterminate, what);
  return c;
}

}  // namespace

Surreal div_2pi(const Surreal& x) {
  return map_terms(x, [](const Term& t, const Budget&) { return Term{coeff_div_2pi(t.coeff), t.exp}; });
}

Surreal oz_floor(const Surreal& q, const Budget& b) {
  const Decomposition dq = decompose(q, b);
  auto [n, exact_int] = coeff_floor(dq.real, b);
  if (exact_int) {
    auto s = sign(dq.infinitesimal, b);
    if (!s) throw KernelError(ErrorKind::Indeterminate, "oz_floor: infinitesimal sign undecided");
    if (*s < 0) n -= 1;
  }
  const Surreal d = add(dq.purely_infinite, Surreal::from_rat(Rat(n)));
  if (must(compare(d, q, b), "oz_floor: d <= q undecided") == Cmp::Greater ||
      must(compare(q, add(d, Surreal::from_rat(1)), b), "oz_floor: q < d + 1 undecided") != Cmp::Less) {
    throw KernelError(ErrorKind::DomainError, "oz_floor: bounds violated");
  }
  return d;
}

Reduction reduce_mod_2pi(const Surreal& x, const Budget& b) {
  const Decomposition dx = decompose(x, b);
  const Surreal qp = div_2pi(dx.purely_infinite);
  auto [n, exact_int] = coeff_floor(coeff_div_2pi(dx.real), b);
  if (exact_int) {
    auto s = sign(dx.infinitesimal, b);
    if (!s) throw KernelError(ErrorKind::Indeterminate, "reduce: infinitesimal sign undecided");
    if (*s < 0) n -= 1;
  }
  Reduction r;
  r.d = add(qp, Surreal::from_rat(Rat(n)));
  const Coeff ar = n == 0 ? dx.real : dx.real - two_pi() * Coeff(Rat(n));
  r.a = add(ar.is_zero() ? Surreal() : Surreal::from_coeff(ar), dx.infinitesimal);
  if (must(compare(r.a, Surreal(), b), "reduce: a >= 0 undecided") == Cmp::Less ||
      must(compare(r.a, Surreal::from_coeff(two_pi()), b), "reduce: a < 2pi undecided") != Cmp::Less) {
    throw KernelError(ErrorKind::DomainError, "reduce: bounds violated");
  }
  return r;
}

Surreal sin(const Surreal& x, const Budget& b) {
  const Reduction red = reduce_mod_2pi(x, b);
  const Decomposition da = decompose(red.a, b);
  return add(scaled(cos_taylor(da.infinitesimal, b), coeff_sin(da.real)),
             scaled(sin_taylor(da.infinitesimal, b), coeff_cos(da.real)));
}

Surreal cos(const Surreal& x, const Budget& b) {
  const Reduction red = reduce_mod_2pi(x, b);
  const Decomposition da = decompose(red.a, b);
  return sub(scaled(cos_taylor(da.infinitesimal, b), coeff_cos(da.real)),
             scaled(sin_taylor(da.infinitesimal, b), coeff_sin(da.real)));
}

SurComplex cadd(const SurComplex& z, const SurComplex& w) { return {add(z.re, w.re), add(z.im, w.im)}; }

SurComplex cmul(const SurComplex& z, const SurComplex& w) {
  return {sub(mul(z.re, w.re), mul(z.im, w.im)), add(mul(z.re, w.im), mul(z.im, w.re))};
}

SurComplex cexp(const SurComplex& z, const Budget& b) {
  const Surreal e = exp(z.re, b);
  return {mul(e, cos(z.im, b)), mul(e, sin(z.im, b))};
}

Tri in_kernel(const SurComplex& z, const Budget& b) {
  try {
    if (!z.re.is_zero(b)) return false;
    return is_omnific(div_2pi(z.im), b);
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

std::string to_text(const SurComplex& z, const Budget& b) {
  return to_text(z.re, b) + " + (" + to_text(z.im, b) + ")i";
}

StripPoint make_strip(const Surreal& re, const Surreal& im, const Budget& b) {
  if (must(compare(im, Surreal(), b), "strip: im >= 0 undecided") == Cmp::Less ||
      must(compare(im, Surreal::from_coeff(two_pi()), b), "strip: im < 2pi undecided") != Cmp::Less) {
    throw KernelError(ErrorKind::DomainError, "strip: imaginary part outside [0, 2pi)");
  }
  return {re, im};
}

StripPoint strip_mul(const StripPoint& p, const StripPoint& q, const Budget& b) {
  Surreal s = add(p.im, q.im);
  const Surreal tp = Surreal::from_coeff(two_pi());
  if (must(compare(s, tp, b), "strip: bound undecided") != Cmp::Less) s = sub(s, tp);
  return {add(p.re, q.re), s};
}

}  // namespace surreal
