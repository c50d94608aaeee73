// Lazy generators behind add, mul, series sums and term filters.
#include <algorithm>
#include <map>

#include "surreal/surreal.hpp"

namespace surreal {

namespace {

Cmp cmp_exp(const Surreal& a, const Surreal& b, const Budget& bud) {
  const Cmp c = compare(a, b, bud.deeper());
  if (c == Cmp::Indeterminate) {
    throw KernelError(ErrorKind::Indeterminate, "exponent comparison undecided within depth " +
                                                    std::to_string(bud.depth));
  }
  return c;
}

/// Exact zero is false; symbolic nonzero must also show a sign witness.
bool nonzero(const Coeff& c, const Budget& b) {
  if (c.is_zero()) return false;
  if (c.is_exact()) return true;
  if (c.poly().is_zero()) return false;
  auto s = c.sign(b.prec);
  if (!s || *s == 0) {
    throw KernelError(ErrorKind::Indeterminate,
                      "coefficient " + c.text() + " not separated from 0 at " + std::to_string(b.prec) + " bits");
  }
  return true;
}

void stall(std::size_t& n, bool finite, const Budget& b, const char* op) {
  if (!finite && ++n > stall_limit(b)) {
    throw KernelError(ErrorKind::BudgetExhausted, std::string(op) + ": cancellation exceeded budget");
  }
}

Surreal exp_add(const Surreal& a, const Surreal& b) {
  if (a.known_zero()) return b;
  if (b.known_zero()) return a;
  if (auto qa = a.peek_rat()) {
    if (auto qb = b.peek_rat()) return Surreal::from_rat(*qa + *qb);
  }
  return add(a, b);
}

class AddGen : public Generator {
 public:
  AddGen(Surreal x, Surreal y, bool finite) : x_(std::move(x)), y_(std::move(y)), finite_(finite) {}

  std::optional<Term> next(const Budget& b) override {
    std::size_t stalls = 0;
    for (;;) {
      auto tx = x_.term(i_, b);
      auto ty = y_.term(j_, b);
      if (!tx && !ty) return std::nullopt;
      if (!tx) { ++j_; return ty; }
      if (!ty) { ++i_; return tx; }
      const Cmp c = cmp_exp(tx->exp, ty->exp, b);
      if (c == Cmp::Greater) { ++i_; return tx; }
      if (c == Cmp::Less) { ++j_; return ty; }
      ++i_;
      ++j_;
      Coeff s = tx->coeff + ty->coeff;
      if (nonzero(s, b)) return Term{s, tx->exp};
      stall(stalls, finite_, b, "add");
    }
  }

 private:
  Surreal x_, y_;
  std::size_t i_ = 0, j_ = 0;
  bool finite_;
};

class MapGen : public Generator {
 public:
  MapGen(Surreal x, std::function<Term(const Term&, const Budget&)> f)
      : x_(std::move(x)), f_(std::move(f)) {}

  std::optional<Term> next(const Budget& b) override {
    auto t = x_.term(i_, b);
    if (!t) return std::nullopt;
    ++i_;
    return f_(*t, b);
  }

 private:
  Surreal x_;
  std::function<Term(const Term&, const Budget&)> f_;
  std::size_t i_ = 0;
};

class MulGen : public Generator {
 public:
  MulGen(Surreal x, Surreal y, bool finite) : x_(std::move(x)), y_(std::move(y)), finite_(finite) {}

  std::optional<Term> next(const Budget& b) override {
    if (!started_) {
      started_ = true;
      push(0, 0, b);
    }
    std::size_t stalls = 0;
    for (;;) {
      if (front_.empty()) return std::nullopt;
      std::size_t best = 0;
      for (std::size_t k = 1; k < front_.size(); ++k) {
        if (cmp_exp(front_[k].e, front_[best].e, b) == Cmp::Greater) best = k;
      }
      const Surreal e = front_[best].e;
      std::vector<Cand> group;
      std::vector<Cand> rest;
      for (std::size_t k = 0; k < front_.size(); ++k) {
        if (k == best || cmp_exp(front_[k].e, e, b) == Cmp::Equal) {
          group.push_back(front_[k]);
        } else {
          rest.push_back(front_[k]);
        }
      }
      front_ = std::move(rest);
      Coeff sum(0);
      for (const Cand& c : group) {
        sum = sum + c.c;
        if (row_.size() <= c.i + 1) row_.resize(c.i + 2, 0);
        row_[c.i] = c.j + 1;
        if (c.i == 0 || row_[c.i - 1] > c.j + 1) push(c.i, c.j + 1, b);
        if (row_[c.i + 1] == c.j) push(c.i + 1, c.j, b);
      }
      if (nonzero(sum, b)) return Term{sum, e};
      stall(stalls, finite_, b, "mul");
    }
  }

 private:
  struct Cand {
    std::size_t i, j;
    Surreal e;
    Coeff c;
  };

  void push(std::size_t i, std::size_t j, const Budget& b) {
    auto tx = x_.term(i, b);
    if (!tx) return;
    auto ty = y_.term(j, b);
    if (!ty) return;
    front_.push_back(Cand{i, j, exp_add(tx->exp, ty->exp), tx->coeff * ty->coeff});
  }

  Surreal x_, y_;
  bool finite_;
  bool started_ = false;
  std::vector<Cand> front_;
  std::vector<std::size_t> row_;
};

class SeriesGen : public Generator {
 public:
  SeriesGen(Surreal eps, Surreal e1, std::function<Coeff(std::size_t)> c)
      : eps_(std::move(eps)), e1_(std::move(e1)), c_(std::move(c)) {}

  std::optional<Term> next(const Budget& b) override {
    std::size_t stalls = 0;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t s = 0; s < open_.size();) {
        auto t = power(open_[s].k).term(open_[s].pos, b);
        if (!t) {
          open_.erase(open_.begin() + static_cast<long>(s));
          continue;
        }
        open_[s].head = t;
        if (!best || cmp_exp(t->exp, open_[*best].head->exp, b) == Cmp::Greater) best = s;
        ++s;
      }
      std::size_t skipped = 0;
      while (coeff(m_).is_zero()) {
        ++m_;
        if (++skipped > 64) throw KernelError(ErrorKind::BudgetExhausted, "series: too many zero coefficients");
      }
      if (!best || cmp_exp(lead(m_), open_[*best].head->exp, b) != Cmp::Less) {
        open_.push_back(Open{m_, 0, std::nullopt});
        ++m_;
        continue;
      }
      const Surreal e = open_[*best].head->exp;
      Coeff sum(0);
      for (auto& s : open_) {
        if (&s == &open_[*best] || cmp_exp(s.head->exp, e, b) == Cmp::Equal) {
          sum = sum + coeff(s.k) * s.head->coeff;
          ++s.pos;
        }
      }
      if (nonzero(sum, b)) return Term{sum, e};
      stall(stalls, false, b, "series");
    }
  }

 private:
  struct Open {
    std::size_t k;
    std::size_t pos;
    std::optional<Term> head;
  };

  const Surreal& power(std::size_t k) {
    if (pows_.empty()) pows_.push_back(Surreal::from_rat(1));
    while (pows_.size() <= k) pows_.push_back(mul(pows_.back(), eps_));
    return pows_[k];
  }

  Surreal lead(std::size_t k) {
    if (k == 0) return Surreal();
    if (auto q = e1_.peek_rat()) return Surreal::from_rat(*q * static_cast<long>(k));
    return scale(e1_, Coeff(static_cast<long>(k)));
  }

  const Coeff& coeff(std::size_t k) {
    while (coeffs_.size() <= k) coeffs_.push_back(c_(coeffs_.size()));
    return coeffs_[k];
  }

  Surreal eps_, e1_;
  std::function<Coeff(std::size_t)> c_;
  std::vector<Surreal> pows_;
  std::vector<Coeff> coeffs_;
  std::vector<Open> open_;
  std::size_t m_ = 0;
};

class TakeGreaterGen : public Generator {
 public:
  TakeGreaterGen(Surreal x, Surreal e) : x_(std::move(x)), e_(std::move(e)) {}

  std::optional<Term> next(const Budget& b) override {
    if (stopped_) return std::nullopt;
    auto t = x_.term(i_, b);
    if (!t || cmp_exp(t->exp, e_, b) != Cmp::Greater) {
      stopped_ = true;
      return std::nullopt;
    }
    ++i_;
    return t;
  }

 private:
  Surreal x_, e_;
  std::size_t i_ = 0;
  bool stopped_ = false;
};

class DropGen : public Generator {
 public:
  /// Skips the first `n` terms, then every term with exponent >= e (if set).
  DropGen(Surreal x, std::size_t n, std::optional<Surreal> e)
      : x_(std::move(x)), i_(n), e_(std::move(e)) {}

  std::optional<Term> next(const Budget& b) override {
    if (e_) {
      std::size_t skipped = 0;
      const bool fin = x_.known_finite();
      for (;;) {
        auto t = x_.term(i_, b);
        if (!t) return std::nullopt;
        if (cmp_exp(t->exp, *e_, b) == Cmp::Less) break;
        ++i_;
        if (!fin && ++skipped > b.max_terms) {
          throw KernelError(ErrorKind::BudgetExhausted, "tail: no term below the bound within budget");
        }
      }
      e_.reset();
    }
    auto t = x_.term(i_, b);
    if (t) ++i_;
    return t;
  }

 private:
  Surreal x_;
  std::size_t i_;
  std::optional<Surreal> e_;
};

std::optional<Term> known_monomial(const Surreal& x) {
  auto ts = x.peek_terms();
  if (!ts || ts->size() != 1) return std::nullopt;
  return ts->front();
}

}  // namespace

Surreal add(const Surreal& x, const Surreal& y) {
  if (x.known_zero()) return y;
  if (y.known_zero()) return x;
  if (auto qx = x.peek_rat()) {
    if (auto qy = y.peek_rat()) return Surreal::from_rat(*qx + *qy);
  }
  const bool fin = x.known_finite() && y.known_finite();
  return Surreal::lazy([x, y, fin] { return std::make_unique<AddGen>(x, y, fin); }, fin);
}

Surreal map_terms(const Surreal& x, std::function<Term(const Term&, const Budget&)> f) {
  if (x.known_zero()) return x;
  return Surreal::lazy([x, f] { return std::make_unique<MapGen>(x, f); }, x.known_finite());
}

Surreal scale(const Surreal& x, const Coeff& c) {
  if (c.is_zero()) return Surreal();
  if (c.is_exact() && c.rat() == 1) return x;
  if (auto q = x.peek_rat(); q && c.is_exact()) return Surreal::from_rat(*q * c.rat());
  return map_terms(x, [c](const Term& t, const Budget&) { return Term{c * t.coeff, t.exp}; });
}

Surreal neg(const Surreal& x) { return scale(x, Coeff(-1)); }

Surreal sub(const Surreal& x, const Surreal& y) {
  if (x.same_node(y)) return Surreal();
  return add(x, neg(y));
}

Surreal shift(const Surreal& x, const Coeff& c, const Surreal& e) {
  if (e.known_zero()) return scale(x, c);
  if (c.is_zero()) return Surreal();
  return map_terms(x, [c, e](const Term& t, const Budget&) { return Term{c * t.coeff, exp_add(t.exp, e)}; });
}

Surreal mul(const Surreal& x, const Surreal& y) {
  if (x.known_zero() || y.known_zero()) return Surreal();
  if (auto qx = x.peek_rat()) {
    if (auto qy = y.peek_rat()) return Surreal::from_rat(*qx * *qy);
  }
  if (auto t = known_monomial(x)) return shift(y, t->coeff, t->exp);
  if (auto t = known_monomial(y)) return shift(x, t->coeff, t->exp);
  const bool fin = x.known_finite() && y.known_finite();
  return Surreal::lazy([x, y, fin] { return std::make_unique<MulGen>(x, y, fin); }, fin);
}

Surreal series_sum(const Surreal& eps, std::function<Coeff(std::size_t)> c, const Budget& b) {
  if (eps.is_zero(b)) return Surreal::from_coeff(c(0));
  const Surreal e1 = leading(eps, b).exp;
  if (compare_strict(e1, Surreal(), b.deeper(), "series") != Cmp::Less) {
    throw KernelError(ErrorKind::DomainError, "series argument is not infinitesimal");
  }
  return Surreal::lazy([eps, e1, c] { return std::make_unique<SeriesGen>(eps, e1, c); }, false);
}

Surreal inv(const Surreal& x, const Budget& b) {
  std::optional<Term> t0;
  try {
    t0 = x.term(0, b);
  } catch (const KernelError& e) {
    throw KernelError(ErrorKind::ZeroOrIndeterminateLeading, std::string("inv: ") + e.what());
  }
  if (!t0) throw KernelError(ErrorKind::ZeroOrIndeterminateLeading, "inv: zero has no inverse");
  if (!t0->coeff.is_exact() && !t0->coeff.sign(b.prec)) {
    throw KernelError(ErrorKind::ZeroOrIndeterminateLeading, "inv: leading coefficient undecided");
  }
  const Coeff r = Coeff(1) / t0->coeff;
  const Surreal minus_e = neg(t0->exp);
  const Surreal tail = Surreal::lazy([x] { return std::make_unique<DropGen>(x, 1, std::nullopt); },
                                     x.known_finite());
  if (tail.is_zero(b)) return Surreal::monomial(r, minus_e);
  const Surreal eps = shift(tail, r, minus_e);
  const Surreal geo = series_sum(eps, [](std::size_t k) { return Coeff(k % 2 == 0 ? 1 : -1); }, b);
  return shift(geo, r, minus_e);
}

Surreal div(const Surreal& x, const Surreal& y, const Budget& b) { return mul(x, inv(y, b)); }

Surreal power(const Surreal& x, long n, const Budget& b) {
  if (n < 0) return inv(power(x, -n, b), b);
  Surreal result = Surreal::from_rat(1);
  Surreal base = x;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

Surreal truncate_before(const Surreal& x, const Surreal& e) {
  return Surreal::lazy([x, e] { return std::make_unique<TakeGreaterGen>(x, e); }, x.known_finite());
}

Surreal tail_after(const Surreal& x, const Surreal& e) {
  return Surreal::lazy([x, e] { return std::make_unique<DropGen>(x, 0, e); }, x.known_finite());
}

}  // namespace surreal
