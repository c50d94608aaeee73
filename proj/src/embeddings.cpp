#include "surreal/embeddings.hpp"

#include <map>

#include "json.hpp"
#include "surreal/exp_log.hpp"

namespace surreal {

namespace {

using Vec = std::map<std::string, Rat>;

const Budget kKeyBudget{64, 64, 16};

Vec to_vec(const Surreal& x, const Budget& b) {
  auto ts = x.all_terms(64, b);
  if (!ts) throw KernelError(ErrorKind::Indeterminate, "span: not a finite form");
  Vec v;
  for (const auto& t : *ts) {
    if (!t.coeff.is_exact()) throw KernelError(ErrorKind::Indeterminate, "span: refinable coefficient");
    v[to_text(t.exp, kKeyBudget)] = t.coeff.rat();
  }
  return v;
}

// Row echelon form over the rationals, keyed by monomial text.
class Echelon {
 public:
  Vec reduce(Vec v) const {
    for (const auto& [pivot, row] : rows_) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      const Rat f = it->second;
      for (const auto& [k, c] : row) {
        Rat& slot = v[k];
        slot -= f * c;
        slot.canonicalize();
        if (slot == 0) v.erase(k);
      }
    }
    return v;
  }

  // True when v was independent of the rows so far.
  bool add(const Vec& v) {
    Vec r = reduce(v);
    if (r.empty()) return false;
    const std::string pivot = r.begin()->first;
    const Rat lead = r.begin()->second;
    for (auto& [k, c] : r) {
      c /= lead;
      c.canonicalize();
    }
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Rat f = it->second;
      for (const auto& [k, c] : r) {
        Rat& slot = row[k];
        slot -= f * c;
        slot.canonicalize();
        if (slot == 0) row.erase(k);
      }
    }
    rows_.emplace_back(pivot, std::move(r));
    return true;
  }

 private:
  std::vector<std::pair<std::string, Vec>> rows_;
};

Echelon span_of(const SubspaceSpec& delta, const Budget& b) {
  Echelon e;
  for (const auto& x : delta.basis) e.add(to_vec(x, b));
  return e;
}

bool member(const Echelon& e, const Surreal& x, const Budget& b) { return e.reduce(to_vec(x, b)).empty(); }

// Terms of y up to (keep = true) or from (keep = false) the first
// exponent outside the span.
class DevGen : public Generator {
 public:
  DevGen(Surreal y, SubspaceSpec delta, bool keep) : y_(std::move(y)), delta_(std::move(delta)), keep_(keep) {}

  std::optional<Term> next(const Budget& b) override {
    if (!span_) span_ = span_of(delta_, b);
    if (keep_) {
      if (done_) return std::nullopt;
      auto t = y_.term(i_, b);
      if (!t) return std::nullopt;
      if (member(*span_, t->exp, b)) {
        ++i_;
        return t;
      }
      done_ = true;
      return std::nullopt;
    }
    std::size_t skipped = 0;
    while (!done_) {
      auto t = y_.term(i_, b);
      if (!t) return std::nullopt;
      if (!member(*span_, t->exp, b)) {
        done_ = true;
        break;
      }
      ++i_;
      if (++skipped > stall_limit(b)) throw KernelError(ErrorKind::BudgetExhausted, "development: no remainder found");
    }
    return y_.term(i_++, b);
  }

 private:
  Surreal y_;
  SubspaceSpec delta_;
  bool keep_;
  std::optional<Echelon> span_;
  std::size_t i_ = 0;
  bool done_ = false;
};

Surreal remainder(const Surreal& y, const SubspaceSpec& delta) {
  return Surreal::lazy([y, delta] { return std::make_unique<DevGen>(y, delta, false); }, y.known_finite());
}

const char* end_name(PathEnd e) {
  switch (e) {
    case PathEnd::Budget:
      return "budget";
    case PathEnd::Cycle:
      return "cycle";
    case PathEnd::AtomicConfirmed:
      return "atomic_confirmed";
  }
  return "budget";
}

bool is_leader(const Surreal& y, const Budget& b) {
  auto ts = y.all_terms(1, b);
  return ts && ts->size() == 1 && (*ts)[0].coeff.is_exact() && (*ts)[0].coeff.rat() == 1;
}

}  // namespace

bool in_span(const Surreal& e, const SubspaceSpec& delta, const Budget& b) {
  return member(span_of(delta, b), e, b);
}

bool independent(const std::vector<Surreal>& xs, const Budget& b) {
  Echelon e;
  for (const auto& x : xs) {
    if (!e.add(to_vec(x, b))) return false;
  }
  return true;
}

Surreal development(const Surreal& y, const SubspaceSpec& delta, const Budget& b) {
  (void)span_of(delta, b);
  return Surreal::lazy([y, delta] { return std::make_unique<DevGen>(y, delta, true); }, y.known_finite());
}

PathTrace delta_path(const Surreal& y, const SubspaceSpec& delta, std::size_t n_max, const Budget& b) {
  if (is_positive_infinite(y, b) != true) throw KernelError(ErrorKind::DomainError, "delta_path: y must be positive infinite");
  if (in_span(valuation(y, b), delta, b)) throw KernelError(ErrorKind::DomainError, "delta_path: v(y) lies in the span");
  PathTrace t;
  Surreal cur = y;
  for (std::size_t n = 0;; ++n) {
    const Surreal L = log(cur, b);
    const Surreal rest = remainder(L, delta);
    auto s = sign(rest, b);
    if (!s) throw KernelError(ErrorKind::Indeterminate, "delta_path: sign undecided");
    t.steps.push_back(PathStep{cur, development(L, delta, b), *s, valuation(cur, b)});
    if (n == n_max) break;
    if (*s == 0) {
      t.terminated = PathEnd::Cycle;
      return t;
    }
    cur = *s > 0 ? rest : neg(rest);
    for (const auto& st : t.steps) {
      if (compare(st.y, cur, b) == Cmp::Equal) {
        t.terminated = PathEnd::Cycle;
        return t;
      }
    }
  }
  t.terminated = is_atomic(t, b) ? PathEnd::AtomicConfirmed : PathEnd::Budget;
  return t;
}

bool verify_path(const PathTrace& t, const SubspaceSpec& delta, const Budget& b) {
  for (std::size_t n = 0; n + 1 < t.steps.size(); ++n) {
    const Surreal L = log(t.steps[n].y, b);
    const Surreal d = development(L, delta, b);
    if (!same_prefix(d, t.steps[n].d, b.max_terms, b)) return false;
    const Surreal diff = sub(L, d);
    const Surreal next = t.steps[n].sign > 0 ? diff : neg(diff);
    if (!same_prefix(next, t.steps[n + 1].y, b.max_terms, b)) return false;
    if (!same_prefix(valuation(t.steps[n].y, b), t.steps[n].v, b.max_terms, b)) return false;
  }
  return true;
}

std::optional<std::size_t> first_non_atomic(const PathTrace& t, const Budget& b) {
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    if (!is_leader(t.steps[n].y, b)) return n;
  }
  return std::nullopt;
}

bool is_atomic(const PathTrace& t, const Budget& b) {
  if (t.steps.empty()) throw KernelError(ErrorKind::DomainError, "is_atomic: empty trace");
  return !first_non_atomic(t, b);
}

bool check_independence(const PathTrace& t, const SubspaceSpec& delta, const Budget& b) {
  std::vector<Surreal> xs = delta.basis;
  for (const auto& s : t.steps) xs.push_back(s.v);
  return independent(xs, b);
}

SubspaceSpec log_exp_closure(const SubspaceSpec& delta, const std::vector<Surreal>& sample, std::size_t iters,
                             const Budget& b) {
  SubspaceSpec out = delta;
  std::vector<Surreal> cands;
  std::map<std::string, bool> seen;
  for (const auto& x : sample) {
    auto ts = x.all_terms(64, b);
    if (!ts) continue;
    for (const auto& tm : *ts) {
      if (seen.emplace(to_text(tm.exp, kKeyBudget), true).second) cands.push_back(tm.exp);
    }
  }
  for (std::size_t round = 0; round < iters; ++round) {
    bool changed = false;
    for (const auto& g : cands) {
      try {
        const Echelon span = span_of(out, b);
        if (member(span, g, b)) continue;
        auto ls = log_leader(g).all_terms(64, b);
        if (!ls) continue;
        bool inside = true;
        for (const auto& tm : *ls) inside = inside && member(span, tm.exp, b);
        if (inside) {
          out.basis.push_back(g);
          changed = true;
        }
      } catch (const KernelError&) {
      }
    }
    if (!changed) break;
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

bool T1Report::all_pass() const {
  for (const auto& c : conditions) {
    if (c.status != Verdict::Pass) return false;
  }
  return !conditions.empty();
}

namespace {

// Folds per-element checks into one verdict.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  template <class F>
  void check(const Surreal& x, const Budget& b, F&& f) {
    try {
      Tri r = f();
      if (!r) {
        note(Verdict::Indeterminate, x, b);
      } else if (!*r) {
        note(Verdict::Fail, x, b);
      }
    } catch (const KernelError& e) {
      note(Verdict::Indeterminate, x, b);
    }
  }

  ConditionResult result() const { return {name_, status_, detail_}; }

 private:
  void note(Verdict v, const Surreal& x, const Budget& b) {
    if (status_ == Verdict::Fail) return;
    if (v == Verdict::Fail || detail_.empty()) detail_ = to_text(x, b);
    status_ = v;
  }

  std::string name_;
  Verdict status_ = Verdict::Pass;
  std::string detail_;
};

Tri decided(Cmp c, Cmp want) {
  if (c == Cmp::Indeterminate) return std::nullopt;
  return c == want;
}

}  // namespace

T1Report check_T1_conditions(const std::vector<Surreal>& sample, const Budget& b) {
  T1Report rep;

  Tally trunc("truncation_closed");
  SubspaceSpec gen{sample};
  gen.basis.push_back(Surreal::from_rat(1));
  for (const auto& x : sample) {
    trunc.check(x, b, [&]() -> Tri {
      auto ts = x.all_terms(b.max_terms, b);
      if (!ts) return std::nullopt;
      for (std::size_t k = 0; k <= ts->size(); ++k) {
        std::vector<Term> pre(ts->begin(), ts->begin() + static_cast<long>(k));
        if (!in_span(Surreal::from_terms(pre), gen, b)) return false;
      }
      return true;
    });
  }
  rep.conditions.push_back(trunc.result());

  Tally real("exp_real");
  for (const auto& x : sample) {
    real.check(x, b, [&]() -> Tri {
      const Coeff r = decompose(x, b).real;
      auto c = exp(Surreal::from_coeff(r), b).as_real(b);
      if (!c) return false;
      const Cmp cmp = coeff_compare(*c, r.is_zero() ? Coeff(1) : coeff_exp(r), b.prec);
      return decided(cmp, Cmp::Equal);
    });
  }
  rep.conditions.push_back(real.result());

  Tally inf("exp_infinitesimal");
  for (const auto& x : sample) {
    inf.check(x, b, [&]() -> Tri {
      const Surreal e = decompose(x, b).infinitesimal;
      return same_prefix(exp(e, b), exp_taylor(e, b), b.max_terms, b);
    });
  }
  rep.conditions.push_back(inf.result());

  Tally growth("growth");
  for (const auto& x : sample) {
    growth.check(x, b, [&]() -> Tri {
      Tri pos = is_positive_infinite(x, b);
      if (!pos) return std::nullopt;
      if (!*pos) return true;
      const Surreal ex = exp(x, b);
      for (long n = 1; n <= 5; ++n) {
        Tri r = decided(compare(ex, power(x, n, b), b), Cmp::Greater);
        if (!r || !*r) return r;
      }
      return true;
    });
  }
  rep.conditions.push_back(growth.result());

  Tally lead("log_leaders");
  for (const auto& x : sample) {
    lead.check(x, b, [&]() -> Tri {
      if (is_leader(x, b) && !x.as_real(b)) {
        Tri pi = is_purely_infinite(log(x, b), b);
        if (!pi || !*pi) return pi;
      }
      Tri pi = is_purely_infinite(x, b);
      if (!pi) return std::nullopt;
      if (*pi && !x.is_zero(b)) return is_leader(exp(x, b), b);
      return true;
    });
  }
  rep.conditions.push_back(lead.result());
  return rep;
}

TowerResult tower_generate(const TowerSpec& spec, const Budget& b) {
  if (spec.depth < 1 || spec.size_bound < 1) throw KernelError(ErrorKind::DomainError, "tower: bounds must be >= 1");
  TowerResult out;
  auto insert = [&](const Surreal& x) {
    if (out.elements.size() >= spec.size_bound) return;
    std::vector<std::size_t> unknown;
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
      const Cmp c = compare(out.elements[i], x, b);
      if (c == Cmp::Equal) return;
      if (c == Cmp::Indeterminate) unknown.push_back(i);
    }
    for (auto i : unknown) out.undecided.emplace_back(i, out.elements.size());
    out.elements.push_back(x);
  };
  const Surreal w = Surreal::omega();
  switch (spec.kind) {
    case TowerKind::LE:
      insert(w);
      break;
    case TowerKind::OmegaSeries:
      insert(w);
      insert(inv(w, b));
      break;
    case TowerKind::EL: {
      Surreal cur = w;
      for (std::size_t k = 0; k < spec.depth; ++k) {
        insert(cur);
        cur = log(cur, b);
      }
      break;
    }
  }
  for (std::size_t round = 0; round < spec.depth; ++round) {
    const std::vector<Surreal> snap = out.elements;
    for (const auto& x : snap) {
      try {
        insert(exp(x, b));
      } catch (const KernelError&) {
      }
      try {
        auto s = sign(x, b);
        if (s && *s > 0) insert(log(x, b));
      } catch (const KernelError&) {
      }
    }
    for (std::size_t i = 0; i < snap.size(); ++i) {
      for (std::size_t j = i; j < snap.size(); ++j) {
        insert(add(snap[i], snap[j]));
        insert(mul(snap[i], snap[j]));
      }
    }
  }
  return out;
}

std::string path_json(const PathTrace& t, const Budget& b) {
  nlohmann::json j;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : t.steps) {
    j["steps"].push_back({{"y", to_text(s.y, b)}, {"d", to_text(s.d, b)}, {"sign", s.sign}, {"v", to_text(s.v, b)}});
  }
  j["terminated"] = end_name(t.terminated);
  return j.dump();
}

std::string t1_json(const T1Report& r) {
  nlohmann::json j;
  j["conditions"] = nlohmann::json::array();
  for (const auto& c : r.conditions) {
    j["conditions"].push_back({{"condition", c.condition}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  j["all_pass"] = r.all_pass();
  return j.dump();
}

}  // namespace surreal
