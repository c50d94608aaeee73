#include "surreal/surreal.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace surreal {

struct Node {
  std::recursive_mutex mu;
  std::vector<Term> forced;
  bool done = false;
  bool finite = false;
  bool busy = false;
  std::unique_ptr<Generator> gen;
  std::function<std::unique_ptr<Generator>()> factory;
};

std::size_t stall_limit(const Budget& b) { return 2 * b.max_terms + 8; }

Surreal::Surreal() : node_(std::make_shared<Node>()) {
  node_->done = true;
  node_->finite = true;
}

Surreal Surreal::from_terms(std::vector<Term> terms) {
  auto n = std::make_shared<Node>();
  n->forced = std::move(terms);
  n->done = true;
  n->finite = true;
  return Surreal(n);
}

Surreal Surreal::from_coeff(const Coeff& c) {
  if (c.is_zero()) return Surreal();
  return from_terms({Term{c, Surreal()}});
}

Surreal Surreal::from_rat(const Rat& q) { return from_coeff(Coeff(q)); }

Surreal Surreal::monomial(const Coeff& c, const Surreal& e) {
  if (c.is_zero()) return Surreal();
  return from_terms({Term{c, e}});
}

Surreal Surreal::omega_pow(const Surreal& y) { return monomial(Coeff(1), y); }

Surreal Surreal::omega() { return omega_pow(from_rat(1)); }

Surreal Surreal::lazy(std::function<std::unique_ptr<Generator>()> factory, bool finite) {
  auto n = std::make_shared<Node>();
  n->factory = std::move(factory);
  n->finite = finite;
  return Surreal(n);
}

std::optional<Term> Surreal::term(std::size_t i, const Budget& b) const {
  Node& n = *node_;
  std::lock_guard lk(n.mu);
  while (n.forced.size() <= i && !n.done) {
    if (n.busy) throw KernelError(ErrorKind::DomainError, "stream forced from inside itself");
    n.busy = true;
    try {
      if (!n.gen) {
        n.gen = n.factory();
        for (std::size_t k = 0; k < n.forced.size(); ++k) n.gen->next(b);
      }
      auto t = n.gen->next(b);
      if (t) {
        n.forced.push_back(std::move(*t));
      } else {
        n.done = true;
        n.gen.reset();
        n.factory = nullptr;
      }
    } catch (...) {
      n.busy = false;
      n.gen.reset();
      throw;
    }
    n.busy = false;
  }
  if (i < n.forced.size()) return n.forced[i];
  return std::nullopt;
}

std::vector<Term> Surreal::prefix(std::size_t n, const Budget& b) const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = term(i, b);
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

std::optional<std::vector<Term>> Surreal::all_terms(std::size_t limit, const Budget& b) const {
  auto out = prefix(limit + 1, b);
  if (out.size() > limit) return std::nullopt;
  return out;
}

bool Surreal::known_finite() const {
  std::lock_guard lk(node_->mu);
  return node_->finite || node_->done;
}

bool Surreal::known_zero() const {
  std::lock_guard lk(node_->mu);
  return node_->done && node_->forced.empty();
}

std::optional<Rat> Surreal::peek_rat() const {
  std::lock_guard lk(node_->mu);
  if (!node_->done || node_->forced.size() > 1) return std::nullopt;
  if (node_->forced.empty()) return Rat(0);
  const Term& t = node_->forced[0];
  if (!t.coeff.is_exact() || !t.exp.known_zero()) return std::nullopt;
  return t.coeff.rat();
}

std::optional<std::vector<Term>> Surreal::peek_terms() const {
  std::lock_guard lk(node_->mu);
  if (!node_->done) return std::nullopt;
  return node_->forced;
}

bool Surreal::is_zero(const Budget& b) const { return !term(0, b); }

std::optional<Rat> Surreal::as_rat(const Budget& b) const {
  auto c = as_real(b);
  if (!c || !c->is_exact()) return std::nullopt;
  return c->rat();
}

std::optional<Coeff> Surreal::as_real(const Budget& b) const {
  auto t0 = term(0, b);
  if (!t0) return Coeff(0);
  if (term(1, b)) return std::nullopt;
  if (!t0->exp.is_zero(b)) return std::nullopt;
  return t0->coeff;
}

// ---------------------------------------------------------------------------
// Order
// ---------------------------------------------------------------------------

namespace {

Cmp sign_cmp(std::optional<int> s) {
  if (!s) return Cmp::Indeterminate;
  if (*s > 0) return Cmp::Greater;
  if (*s < 0) return Cmp::Less;
  return Cmp::Equal;
}

}  // namespace

Cmp compare(const Surreal& x, const Surreal& y, const Budget& b) {
  if (x.same_node(y)) return Cmp::Equal;
  // Rational constants compare without spending depth.
  if (auto qx = x.peek_rat()) {
    if (auto qy = y.peek_rat()) return rat_compare(*qx, *qy);
  }
  if (b.depth == 0) return Cmp::Indeterminate;
  const bool fin = x.known_finite() && y.known_finite();
  try {
    for (std::size_t i = 0;; ++i) {
      if (!fin && i > b.max_terms) return Cmp::Indeterminate;
      auto tx = x.term(i, b);
      auto ty = y.term(i, b);
      if (!tx && !ty) return Cmp::Equal;
      if (!tx) return flip(sign_cmp(ty->coeff.sign(b.prec)));
      if (!ty) return sign_cmp(tx->coeff.sign(b.prec));
      const Cmp ce = compare(tx->exp, ty->exp, b.deeper());
      if (ce == Cmp::Indeterminate) return ce;
      if (ce == Cmp::Greater) return sign_cmp(tx->coeff.sign(b.prec));
      if (ce == Cmp::Less) return flip(sign_cmp(ty->coeff.sign(b.prec)));
      const Cmp cc = coeff_compare(tx->coeff, ty->coeff, b.prec);
      if (cc != Cmp::Equal) return cc;
    }
  } catch (const KernelError&) {
    return Cmp::Indeterminate;
  }
}

std::optional<int> sign(const Surreal& x, const Budget& b) {
  try {
    auto t = x.term(0, b);
    if (!t) return 0;
    return t->coeff.sign(b.prec);
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

Cmp compare_strict(const Surreal& x, const Surreal& y, const Budget& b, const char* what) {
  const Cmp c = compare(x, y, b);
  if (c == Cmp::Indeterminate) {
    throw KernelError(ErrorKind::Indeterminate, std::string(what) + ": comparison undecided within budget");
  }
  return c;
}

bool same_prefix(const Surreal& x, const Surreal& y, std::size_t n, const Budget& b) {
  for (std::size_t i = 0; i < n; ++i) {
    auto tx = x.term(i, b);
    auto ty = y.term(i, b);
    if (!tx || !ty) return !tx && !ty;
    if (compare(tx->exp, ty->exp, b.deeper()) != Cmp::Equal) return false;
    if (coeff_compare(tx->coeff, ty->coeff, b.prec) != Cmp::Equal) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

Term leading(const Surreal& x, const Budget& b) {
  auto t = x.term(0, b);
  if (!t) throw KernelError(ErrorKind::ZeroOrIndeterminateLeading, "zero has no leading term");
  return *t;
}

Surreal valuation(const Surreal& x, const Budget& b) { return leading(x, b).exp; }

Decomposition decompose(const Surreal& x, const Budget& b) {
  const Surreal zero;
  const bool fin = x.known_finite();
  Coeff real(0);
  std::size_t positive = 0;
  for (std::size_t i = 0;; ++i) {
    auto t = x.term(i, b);
    if (!t) break;
    const Cmp c = compare_strict(t->exp, zero, b.deeper(), "decompose");
    if (c == Cmp::Greater) {
      if (!fin && ++positive > b.max_terms) {
        throw KernelError(ErrorKind::BudgetExhausted, "decompose: purely infinite part longer than budget");
      }
      continue;
    }
    if (c == Cmp::Equal) real = t->coeff;
    break;
  }
  if (auto ts = x.peek_terms()) {
    std::vector<Term> p, in;
    for (const Term& t : *ts) {
      const Cmp c = compare_strict(t.exp, zero, b.deeper(), "decompose");
      if (c == Cmp::Greater) p.push_back(t);
      if (c == Cmp::Less) in.push_back(t);
    }
    return {Surreal::from_terms(std::move(p)), real, Surreal::from_terms(std::move(in))};
  }
  return {truncate_before(x, zero), real, tail_after(x, zero)};
}

bool is_truncation(const Surreal& x, const Surreal& y, const Budget& b) {
  const bool fin = x.known_finite();
  for (std::size_t i = 0; fin || i < b.max_terms; ++i) {
    auto tx = x.term(i, b);
    if (!tx) return true;
    auto ty = y.term(i, b);
    if (!ty) return false;
    if (compare_strict(tx->exp, ty->exp, b.deeper(), "is_truncation") != Cmp::Equal) return false;
    const Cmp cc = coeff_compare(tx->coeff, ty->coeff, b.prec);
    if (cc == Cmp::Indeterminate) {
      throw KernelError(ErrorKind::Indeterminate, "is_truncation: coefficient equality undecided");
    }
    if (cc != Cmp::Equal) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

namespace {

/// Sign of the leading exponent, or nullopt for zero input.
std::optional<Cmp> lead_exp_sign(const Surreal& x, const Budget& b) {
  auto t = x.term(0, b);
  if (!t) return std::nullopt;
  return compare_strict(t->exp, Surreal(), b.deeper(), "predicate");
}

}  // namespace

Tri is_purely_infinite(const Surreal& x, const Budget& b) {
  try {
    const bool fin = x.known_finite();
    for (std::size_t i = 0; fin || i <= b.max_terms; ++i) {
      auto t = x.term(i, b);
      if (!t) return true;
      if (compare_strict(t->exp, Surreal(), b.deeper(), "predicate") != Cmp::Greater) return false;
    }
    return std::nullopt;
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

Tri is_infinitesimal(const Surreal& x, const Budget& b) {
  try {
    auto s = lead_exp_sign(x, b);
    return !s || *s == Cmp::Less;
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

Tri is_finite(const Surreal& x, const Budget& b) {
  try {
    auto s = lead_exp_sign(x, b);
    return !s || *s != Cmp::Greater;
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

Tri is_positive_infinite(const Surreal& x, const Budget& b) {
  try {
    auto s = lead_exp_sign(x, b);
    if (!s || *s != Cmp::Greater) return false;
    auto sg = x.term(0, b)->coeff.sign(b.prec);
    if (!sg) return std::nullopt;
    return *sg > 0;
  } catch (const KernelError&) {
    return std::nullopt;
  }
}

bool is_finite_form(const Surreal& x, const Budget& b) {
  if (b.depth == 0) return false;
  try {
    std::optional<std::vector<Term>> ts;
    if (x.known_finite()) {
      ts = x.prefix(static_cast<std::size_t>(-1), b);
    } else {
      ts = x.all_terms(b.max_terms, b);
    }
    if (!ts) return false;
    for (const Term& t : *ts) {
      if (!t.exp.known_zero() && !is_finite_form(t.exp, b.deeper())) return false;
    }
    return true;
  } catch (const KernelError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

ForcedPrefix force_for_print(const Surreal& x, const Budget& b) {
  ForcedPrefix f;
  try {
    for (std::size_t i = 0; i < b.max_terms; ++i) {
      auto t = x.term(i, b);
      if (!t) return f;
      f.terms.push_back(std::move(*t));
    }
    f.truncated = x.term(b.max_terms, b).has_value();
  } catch (const KernelError& e) {
    if (e.kind() != ErrorKind::BudgetExhausted) throw;
    f.truncated = true;
  }
  return f;
}

namespace {

bool is_compound(const std::string& s) {
  return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}

/// Coefficient text without sign, and whether it is negative.
std::pair<std::string, bool> coeff_parts(const Coeff& c) {
  if (c.is_exact()) return {rat_text(abs(c.rat())), c.rat() < 0};
  const RealPoly& p = c.rreal()->poly();
  if (p.terms().size() == 1 && p.terms().begin()->second.coeff < 0) return {(-c).text(), true};
  return {c.text(), false};
}

std::string exp_text(const Surreal& e, const Budget& b) {
  if (auto q = e.peek_rat()) {
    if (*q == 1) return "w";
    if (is_integer(*q) && *q > 1) return "w^" + rat_text(*q);
  }
  if (b.depth == 0) throw KernelError(ErrorKind::BudgetExhausted, "print: exponent nesting exceeds depth");
  return "w^(" + to_text(e, b.deeper()) + ")";
}

}  // namespace

std::string to_text(const Surreal& x, const Budget& b) {
  const ForcedPrefix f = force_for_print(x, b);
  std::string out;
  for (const Term& t : f.terms) {
    auto [ctext, negative] = coeff_parts(t.coeff);
    std::string body;
    if (t.exp.is_zero(b)) {
      body = (!t.coeff.is_exact() && is_compound(ctext)) ? "(" + ctext + ")" : ctext;
    } else {
      const std::string mono = exp_text(t.exp, b);
      if (ctext == "1") {
        body = mono;
      } else {
        body = (is_compound(ctext) ? "(" + ctext + ")" : ctext) + "*" + mono;
      }
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  if (f.truncated) {
    const std::string mark = "...[truncated@" + std::to_string(b.max_terms) + "]";
    out += out.empty() ? mark : " + " + mark;
  }
  return out.empty() ? "0" : out;
}

bool is_truncated(const Surreal& x, const Budget& b) { return force_for_print(x, b).truncated; }

}  // namespace surreal
