#include "surreal/simplicity.hpp"

#include <functional>

namespace surreal {

namespace {

const Ordinal kOne = Ordinal::nat(1);

[[noreturn]] void exhausted(const std::string& what) {
  throw KernelError(ErrorKind::FragmentExhausted, what);
}

}  // namespace

SignSeq omega_pow_signs(const SignSeq& y) {
  SignSeq s;
  s.push(true, kOne);
  Ordinal p;
  for (const auto& r : y.runs()) {
    if (r.plus) {
      p = p + r.len;
      s.push(true, Ordinal::omega_pow(p));
    } else {
      s.push(false, Ordinal::omega_pow(p + kOne) * r.len);
    }
  }
  return s;
}

std::optional<SignSeq> sign_expansion(const Surreal& x, const Budget& b) {
  try {
    auto ts = x.all_terms(1, b);
    if (!ts) return std::nullopt;
    if (ts->empty()) return SignSeq();
    const Term& t = (*ts)[0];
    if (!t.coeff.is_exact() || !is_dyadic(t.coeff.rat())) return std::nullopt;
    auto ys = sign_expansion(t.exp, b.deeper());
    if (!ys) return std::nullopt;
    SignSeq s = omega_pow_signs(*ys);
    const Rat r = t.coeff.rat();
    SignSeq rs = dyadic_sign_expansion(r < 0 ? Rat(-r) : r);
    SignSeq tail;
    bool first = true;
    for (const auto& run : rs.runs()) {
      Ordinal len = run.len;
      if (first) {
        len = len.left_sub(kOne);
        first = false;
      }
      tail.push(run.plus, len);
    }
    s.append(tail.stretched(Ordinal::omega_pow(ys->plus_count())));
    return r < 0 ? s.negated() : s;
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

namespace {

std::optional<Surreal> parse_fragment(const SignSeq& input) {
  if (input.empty()) return Surreal();
  const bool negative = !input.runs()[0].plus;
  const SignSeq s = negative ? input.negated() : input;
  std::vector<SignRun> runs = s.runs();
  runs[0].len = runs[0].len.left_sub(kOne);
  std::size_t i = runs[0].len.is_zero() ? 1 : 0;

  SignSeq y;
  Ordinal p;
  for (; i < runs.size(); ++i) {
    const SignRun& run = runs[i];
    if (run.plus) {
      const Ordinal e = run.len.lead_exp();
      const int c = ordinal_compare(e, p);
      if (c < 0) return std::nullopt;
      if (c == 0) break;
      y.push(true, e.left_sub(p));
      p = e;
      Ordinal rest = run.len.left_sub(Ordinal::omega_pow(e));
      if (!rest.is_zero()) {
        auto [q, r] = rest.div_omega_pow(e);
        if (!r.is_zero() || !q.as_nat()) return std::nullopt;
        runs[i].len = rest;
        break;
      }
    } else {
      auto [q, r] = run.len.div_omega_pow(p + kOne);
      y.push(false, q);
      if (!r.is_zero()) {
        runs[i].len = r;
        break;
      }
    }
  }

  SignSeq rs;
  rs.push(true, kOne);
  for (; i < runs.size(); ++i) {
    auto [q, r] = runs[i].len.div_omega_pow(p);
    auto m = q.as_nat();
    if (!r.is_zero() || !m) return std::nullopt;
    rs.push(runs[i].plus, Ordinal::nat(*m));
  }
  auto ye = parse_fragment(y);
  if (!ye) return std::nullopt;
  Rat r = dyadic_from_signs(rs);
  return Surreal::monomial(Coeff(negative ? Rat(-r) : r), *ye);
}

}  // namespace

std::optional<Surreal> from_sign_expansion(const SignSeq& s) {
  auto x = parse_fragment(s);
  if (!x) return std::nullopt;
  auto back = sign_expansion(*x, Budget{});
  if (!back || !(*back == s)) return std::nullopt;
  return x;
}

Tri is_omnific(const Surreal& x, const Budget& b) {
  try {
    for (std::size_t i = 0; i < b.max_terms; ++i) {
      auto t = x.term(i, b);
      if (!t) return true;
      auto s = sign(t->exp, b);
      if (!s) return std::nullopt;
      if (*s < 0) return false;
      if (*s == 0) {
        if (!t->coeff.is_exact()) return std::nullopt;
        if (!is_integer(t->coeff.rat())) return false;
      }
    }
  } catch (const KernelError&) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dyadic search
// ---------------------------------------------------------------------------

namespace {

// Tree descent for the simplest dyadic d with above(d) && below(d).
// nullopt after `limit` steps on either search.
std::optional<Rat> dyadic_search(const std::function<bool(const Rat&)>& above,
                                 const std::function<bool(const Rat&)>& below, unsigned limit) {
  if (above(Rat(0)) && below(Rat(0))) return Rat(0);
  const bool right = !above(Rat(0));
  const int dir = right ? 1 : -1;
  auto outer = [&](const Rat& d) { return right ? above(d) : below(d); };
  auto inner = [&](const Rat& d) { return right ? below(d) : above(d); };
  if (!inner(Rat(0))) return std::nullopt;
  // Least n >= 1 whose dir*n lies past the outer bound.
  Int lo = 0, hi = 1;
  unsigned steps = 0;
  while (!outer(Rat(dir * hi))) {
    lo = hi;
    hi *= 2;
    if (++steps > limit) return std::nullopt;
  }
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (outer(Rat(dir * mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Rat n(dir * hi);
  if (inner(n)) return n;
  Rat a(dir * (hi - 1)), c = n;
  for (unsigned k = 0; k < limit; ++k) {
    Rat m = (a + c) / 2;
    m.canonicalize();
    if (!outer(m)) {
      a = m;
    } else if (!inner(m)) {
      c = m;
    } else {
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace

Rat simplest_dyadic_between(const std::vector<Rat>& L, const std::vector<Rat>& R) {
  std::optional<Rat> lo, hi;
  for (const auto& l : L) {
    if (!lo || l > *lo) lo = l;
  }
  for (const auto& r : R) {
    if (!hi || r < *hi) hi = r;
  }
  if (lo && hi && *lo >= *hi) throw KernelError(ErrorKind::DomainError, "empty interval");
  auto d = dyadic_search([&](const Rat& q) { return !lo || q > *lo; },
                         [&](const Rat& q) { return !hi || q < *hi; }, 1u << 20);
  if (!d) throw KernelError(ErrorKind::DomainError, "no dyadic found");
  return *d;
}

// ---------------------------------------------------------------------------
// Cuts
// ---------------------------------------------------------------------------

Tri in_cut(const Surreal& x, const CutSpec& c, const Budget& b) {
  auto less = [&](const Surreal& u, const Surreal& v) -> Tri {
    Cmp r = compare(u, v, b);
    if (r == Cmp::Indeterminate) return std::nullopt;
    return r == Cmp::Less;
  };
  bool unknown = false;
  auto fold = [&](Tri t) {
    if (!t) unknown = true;
    return t && !*t;
  };
  if (c.lo && fold(less(*c.lo, x))) return false;
  if (c.hi && fold(less(x, *c.hi))) return false;
  if (c.val_upper || c.val_lower) {
    bool zero = false;
    try {
      zero = x.is_zero(b);
    } catch (const KernelError&) {
      return std::nullopt;
    }
    if (zero) {
      if (c.val_lower) return false;
    } else {
      Surreal v;
      try {
        v = valuation(x, b);
      } catch (const KernelError&) {
        return std::nullopt;
      }
      if (c.val_upper && fold(less(v, *c.val_upper))) return false;
      if (c.val_lower && fold(less(*c.val_lower, v))) return false;
    }
  }
  if (unknown) return std::nullopt;
  return true;
}

namespace {

// Sign sequence followed by an infinite tail of one sign (0: no tail).
struct Bound {
  SignSeq seq;
  int tail = 0;
};

int run_sign(const SignRun& r) { return r.plus ? 1 : -1; }

struct Divergence {
  Ordinal pos;
  int a;
  int b;
  bool equal;
};

Divergence diverge(const Bound& A, const Bound& B) {
  const auto& ra = A.seq.runs();
  const auto& rb = B.seq.runs();
  std::size_t i = 0, j = 0;
  Ordinal pos;
  Ordinal rem_a = ra.empty() ? Ordinal() : ra[0].len;
  Ordinal rem_b = rb.empty() ? Ordinal() : rb[0].len;
  while (true) {
    const int sa = i < ra.size() ? run_sign(ra[i]) : A.tail;
    const int sb = j < rb.size() ? run_sign(rb[j]) : B.tail;
    if (sa != sb) return {pos, sa, sb, false};
    const bool in_a = i < ra.size(), in_b = j < rb.size();
    if (!in_a && !in_b) return {pos, sa, sb, true};
    Ordinal step;
    if (in_a && in_b) {
      step = rem_a < rem_b ? rem_a : rem_b;
    } else {
      step = in_a ? rem_a : rem_b;
    }
    pos = pos + step;
    if (in_a) {
      rem_a = rem_a.left_sub(step);
      if (rem_a.is_zero() && ++i < ra.size()) rem_a = ra[i].len;
    }
    if (in_b) {
      rem_b = rem_b.left_sub(step);
      if (rem_b.is_zero() && ++j < rb.size()) rem_b = rb[j].len;
    }
  }
}

bool bound_less(const Bound& a, const Bound& b) {
  Divergence d = diverge(a, b);
  return !d.equal && d.a < d.b;
}

SignSeq bound_prefix(const Bound& B, const Ordinal& len) {
  const Ordinal n = B.seq.length();
  if (len <= n) return B.seq.prefix(len);
  SignSeq s = B.seq;
  s.push(B.tail > 0, len.left_sub(n));
  return s;
}

// First position strictly after d holding the given sign.
std::optional<Ordinal> next_sign_after(const Bound& B, const Ordinal& d, bool plus) {
  Ordinal start;
  const Ordinal after = d + kOne;
  for (const auto& r : B.seq.runs()) {
    const Ordinal end = start + r.len;
    if (r.plus == plus) {
      if (d < start) return start;
      if (after < end) return after;
    }
    start = end;
  }
  if (B.tail == (plus ? 1 : -1)) return d < start ? start : after;
  return std::nullopt;
}

SignSeq simplest_between(const Bound& A, const Bound& B) {
  Divergence d = diverge(A, B);
  if (d.equal || d.a >= d.b) throw KernelError(ErrorKind::DomainError, "empty cut");
  if (d.a == -1 && d.b == 1) return bound_prefix(A, d.pos);
  if (d.a == 0) {
    if (auto q = next_sign_after(B, d.pos, true)) return bound_prefix(B, *q);
    if (B.tail != 0) exhausted("cut has no simplest element in the fragment");
    SignSeq s = B.seq;
    s.push(false, kOne);
    return s;
  }
  if (auto q = next_sign_after(A, d.pos, false)) return bound_prefix(A, *q);
  if (A.tail != 0) exhausted("cut has no simplest element in the fragment");
  SignSeq s = A.seq;
  s.push(true, kOne);
  return s;
}

SignSeq fragment_signs(const Surreal& x, const Budget& b) {
  auto s = sign_expansion(x, b);
  if (!s) exhausted("bound outside the monomial fragment: " + to_text(x, b));
  return *s;
}

bool less_strict(const Surreal& x, const Surreal& y, const Budget& b) {
  return compare_strict(x, y, b, "cut bound") == Cmp::Less;
}

Surreal solve(const CutSpec& c, const Budget& b);

Surreal solve_signs(const CutSpec& c, const Budget& b) {
  std::vector<Bound> lower, upper;
  if (c.lo) lower.push_back(Bound{fragment_signs(*c.lo, b), 0});
  if (c.hi) upper.push_back(Bound{fragment_signs(*c.hi, b), 0});
  if (c.val_upper) {
    SignSeq y = fragment_signs(*c.val_upper, b);
    y.push(false, kOne);
    Bound v{omega_pow_signs(y), 1};
    upper.push_back(v);
    lower.push_back(Bound{v.seq.negated(), -1});
  }
  if (c.val_lower) {
    SignSeq y = fragment_signs(*c.val_lower, b);
    y.push(true, kOne);
    SignSeq v = omega_pow_signs(y);
    const bool positive = c.lo && !less_strict(*c.lo, Surreal(), b);
    if (positive) {
      lower.push_back(Bound{v, -1});
    } else {
      upper.push_back(Bound{v.negated(), 1});
    }
  }
  Bound A{SignSeq(), -1}, B{SignSeq(), 1};
  if (!lower.empty()) {
    A = lower[0];
    for (const auto& l : lower) {
      if (bound_less(A, l)) A = l;
    }
  }
  if (!upper.empty()) {
    B = upper[0];
    for (const auto& u : upper) {
      if (bound_less(u, B)) B = u;
    }
  }
  SignSeq s = simplest_between(A, B);
  auto x = from_sign_expansion(s);
  if (!x) exhausted("simplest element outside the monomial fragment: " + s.text());
  Tri ok = in_cut(*x, c, b);
  if (ok && !*ok) exhausted("simplest element failed verification: " + s.text());
  return *x;
}

Surreal solve(const CutSpec& c, const Budget& b) {
  const Surreal zero;
  if (c.lo && c.hi && !less_strict(*c.lo, *c.hi, b)) throw KernelError(ErrorKind::DomainError, "empty cut");
  const bool lo_neg = !c.lo || less_strict(*c.lo, zero, b);
  const bool hi_pos = !c.hi || less_strict(zero, *c.hi, b);
  if (lo_neg && hi_pos) {
    if (!c.val_lower) return zero;
    CutSpec neg_side = c, pos_side = c;
    neg_side.hi = zero;
    pos_side.lo = zero;
    Surreal n = solve(neg_side, b);
    Surreal p = solve(pos_side, b);
    auto sn = sign_expansion(n, b), sp = sign_expansion(p, b);
    if (sn && sp && sn->length() < sp->length()) return n;
    return p;
  }
  const bool dyadic_ok = (!c.val_upper || less_strict(zero, *c.val_upper, b)) &&
                         (!c.val_lower || less_strict(*c.val_lower, zero, b));
  if (dyadic_ok) {
    auto above = [&](const Rat& d) { return !c.lo || less_strict(*c.lo, Surreal::from_rat(d), b); };
    auto below = [&](const Rat& d) { return !c.hi || less_strict(Surreal::from_rat(d), *c.hi, b); };
    if (auto d = dyadic_search(above, below, b.prec + 64)) return Surreal::from_rat(*d);
  }
  return solve_signs(c, b);
}

}  // namespace

Surreal simplest_in_cut(const CutSpec& c, const Budget& b) { return solve(c, b); }

}  // namespace surreal
