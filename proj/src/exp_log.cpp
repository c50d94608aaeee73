#include "surreal/exp_log.hpp"

#include <map>
#include <mutex>

#include "surreal/simplicity.hpp"

namespace surreal {

namespace {

struct Memo {
  std::mutex mu;
  std::map<std::string, Surreal> value;
  std::vector<std::pair<Surreal, Surreal>> order;
};

Memo& h_table() {
  static Memo m;
  return m;
}

Memo& g_table() {
  static Memo m;
  return m;
}

const Budget kKeyBudget{64, 64, 16};

std::string key_of(const Surreal& s, const Budget& b) {
  if (!s.all_terms(64, b)) throw KernelError(ErrorKind::FragmentExhausted, "argument is not a finite form");
  return to_text(s, kKeyBudget);
}

std::optional<Surreal> lookup(Memo& m, const std::string& k) {
  std::lock_guard<std::mutex> lock(m.mu);
  auto it = m.value.find(k);
  if (it == m.value.end()) return std::nullopt;
  return it->second;
}

void store(Memo& m, const std::string& k, const Surreal& arg, const Surreal& v) {
  std::lock_guard<std::mutex> lock(m.mu);
  if (m.value.emplace(k, v).second) m.order.emplace_back(arg, v);
}

void remember(const std::string& k, const Surreal& s, const Surreal& v) {
  store(h_table(), k, s, v);
  store(g_table(), to_text(v, kKeyBudget), v, s);
}

// Positive reals and positive infinite fragment elements are fixed by h.
bool fixed_by_h(const Surreal& s, const Budget& b) {
  if (auto r = s.as_real(b)) {
    auto sg = r->sign(b.prec);
    return sg && *sg > 0;
  }
  return is_positive_infinite(s, b) == true && sign_expansion(s, b).has_value();
}

Surreal h_dyadic(const Rat& s, const Budget& b) {
  SignSeq signs = dyadic_sign_expansion(s);
  std::vector<bool> flat;
  for (const auto& r : signs.runs()) {
    for (long k = 0; k < r.len.as_nat()->get_si(); ++k) flat.push_back(r.plus);
  }
  std::optional<Surreal> left, right;
  Rat v = 0;
  SignSeq pre;
  for (std::size_t k = 0;; ++k) {
    v = dyadic_from_signs(pre);
    const Surreal arg = Surreal::from_rat(v);
    const std::string key = to_text(arg, kKeyBudget);
    Surreal hv;
    if (auto m = lookup(h_table(), key)) {
      hv = *m;
    } else if (v > 0) {
      hv = arg;
      remember(key, arg, hv);
    } else {
      CutSpec c{left ? *left : Surreal(), right, arg, std::nullopt};
      hv = simplest_in_cut(c, b);
      remember(key, arg, hv);
    }
    if (k == flat.size()) return hv;
    (flat[k] ? left : right) = hv;
    pre.push(flat[k], Ordinal::nat(1));
  }
}

}  // namespace

Surreal exp_taylor(const Surreal& eps, const Budget& b) {
  return series_sum(eps, [](std::size_t n) {
    Int f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
    Rat q(Int(1), f);
    q.canonicalize();
    return Coeff(q);
  }, b);
}

Surreal log1p(const Surreal& eps, const Budget& b) {
  return series_sum(eps, [](std::size_t k) {
    if (k == 0) return Coeff(0);
    return Coeff(make_rat(k % 2 == 1 ? 1 : -1, static_cast<long>(k)));
  }, b);
}

Surreal h(const Surreal& s, const Budget& b) {
  const std::string key = key_of(s, b);
  if (auto m = lookup(h_table(), key)) return *m;
  Surreal v;
  if (fixed_by_h(s, b)) {
    v = s;
  } else if (auto q = s.as_rat(b); q && is_dyadic(*q)) {
    return h_dyadic(*q, b);
  } else {
    throw KernelError(ErrorKind::FragmentExhausted, "h: unsupported argument " + key);
  }
  remember(key, s, v);
  return v;
}

Surreal g(const Surreal& x, const Budget& b) {
  if (compare_strict(x, Surreal(), b, "g") != Cmp::Greater) {
    throw KernelError(ErrorKind::DomainError, "g: argument must be positive");
  }
  const std::string key = key_of(x, b);
  if (auto m = lookup(g_table(), key)) return *m;
  if (fixed_by_h(x, b)) {
    remember(key, x, x);
    return x;
  }
  // Descent through the dyadic tree: h is increasing.
  Rat s = 0;
  std::optional<Rat> lo, hi;
  const std::size_t limit = 8 * (b.depth + 1);
  for (std::size_t step = 0; step < limit; ++step) {
    const Surreal arg = Surreal::from_rat(s);
    const Cmp c = compare_strict(h(arg, b), x, b, "g descent");
    if (c == Cmp::Equal) return arg;
    if (c == Cmp::Less) {
      lo = s;
      s = hi ? Rat((s + *hi) / 2) : Rat(s + 1);
    } else {
      hi = s;
      s = lo ? Rat((s + *lo) / 2) : Rat(s - 1);
    }
    s.canonicalize();
  }
  throw KernelError(ErrorKind::FragmentExhausted, "g: descent exceeded budget for " + key);
}

std::vector<std::pair<Surreal, Surreal>> h_memo() {
  std::lock_guard<std::mutex> lock(h_table().mu);
  return h_table().order;
}

std::vector<std::pair<Surreal, Surreal>> g_memo() {
  std::lock_guard<std::mutex> lock(g_table().mu);
  return g_table().order;
}

Surreal log_leader(const Surreal& gamma) {
  return map_terms(gamma, [](const Term& t, const Budget& b) { return Term{t.coeff, h(t.exp, b)}; });
}

Surreal exp(const Surreal& x, const Budget& b) {
  const Decomposition d = decompose(x, b);
  const Surreal e = map_terms(d.purely_infinite, [](const Term& t, const Budget& bb) {
    return Term{t.coeff, g(t.exp, bb)};
  });
  const Coeff er = d.real.is_zero() ? Coeff(1) : coeff_exp(d.real);
  return shift(exp_taylor(d.infinitesimal, b), er, e);
}

Surreal log(const Surreal& x, const Budget& b) {
  Term t;
  try {
    t = leading(x, b);
  } catch (const KernelError& e) {
    throw KernelError(ErrorKind::NonPositive, std::string("log: ") + e.what());
  }
  auto sg = t.coeff.sign(b.prec);
  if (!sg || *sg <= 0) throw KernelError(ErrorKind::NonPositive, "log: argument is not positive");
  const Surreal eps = sub(shift(x, Coeff(1) / t.coeff, neg(t.exp)), Surreal::from_rat(1));
  Surreal out = log_leader(t.exp);
  if (!(t.coeff.is_exact() && t.coeff.rat() == 1)) out = add(out, Surreal::from_coeff(coeff_ln(t.coeff, b.prec)));
  return add(out, log1p(eps, b));
}

}  // namespace surreal
