// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "cli_gen.hpp"
#include "samples.hpp"
#include "surreal/embeddings.hpp"
#include "surreal/exp_log.hpp"
#include "surreal/simplicity.hpp"
#include "surreal/trig.hpp"

using namespace surreal;
using namespace th;

namespace {

const Budget B{};

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Counts failed checks and keeps the first failure message.
class Checker {
 public:
  void operator()(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed; first: " + first_};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_zero(const Surreal& x) { return x.is_zero(B); }

Outcome field_axioms() {
  Checker c;
  std::mt19937 rng(1001);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 500; ++trial) {
    Surreal x = random_form(rng), y = random_form(rng), z = random_form(rng);
    const std::string tag = "trial " + std::to_string(trial);
    c(equal(add(x, y), add(y, x)), tag + " add commutes");
    c(equal(mul(x, y), mul(y, x)), tag + " mul commutes");
    c(equal(add(add(x, y), z), add(x, add(y, z))), tag + " add associates");
    c(equal(mul(mul(x, y), z), mul(x, mul(y, z))), tag + " mul associates");
    c(equal(mul(x, add(y, z)), add(mul(x, y), mul(x, z))), tag + " distributes");
    c(is_zero(add(x, neg(x))), tag + " additive inverse");
    c(agree(mul(x, inv(x, B)), R(1), 10, B), tag + " multiplicative inverse");
  }
  const double s = seconds_since(t0);
  c(s < 10.0, "runtime " + fmt_seconds(s) + " >= 10 s");
  return c.done("500 triples in " + fmt_seconds(s));
}

Outcome hahn_oracle() {
  Checker c;
  std::mt19937 rng(1002);
  for (int trial = 0; trial < 200; ++trial) {
    auto pa = random_poly(rng), pb = random_poly(rng);
    Surreal a = from_poly(pa), b = from_poly(pb);
    const std::string tag = "case " + std::to_string(trial);
    auto sum = oracle::poly_terms(oracle::poly_add(pa, pb));
    if (sum.size() > 10) sum.resize(10);
    c(rat_terms(add(a, b), 10, B) == sum, tag + " add");
    auto prod = oracle::poly_terms(oracle::poly_mul(pa, pb));
    if (prod.size() > 10) prod.resize(10);
    c(rat_terms(mul(a, b), 10, B) == prod, tag + " mul");
    c(rat_terms(inv(a, B), 10, B) == oracle::poly_inv_prefix(pa, 10), tag + " inv");
  }
  return c.done("200 cases, 10-term prefixes");
}

Outcome simplicity_oracle() {
  Checker c;
  auto levels = oracle::dyadic_levels(12);
  std::vector<Rat> all;
  for (const auto& l : levels) all.insert(all.end(), l.begin(), l.end());
  std::sort(all.begin(), all.end());
  std::mt19937 rng(1003);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int with_answer = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i > j) std::swap(i, j);
    const Rat lo = all[i], hi = all[j];
    std::optional<Rat> want;
    for (const auto& level : levels) {
      for (const auto& q : level) {
        if (q > lo && q < hi) {
          want = q;
          break;
        }
      }
      if (want) break;
    }
    if (!want) continue;
    ++with_answer;
    c(simplest_dyadic_between({lo}, {hi}) == *want, "cut (" + lo.get_str() + ", " + hi.get_str() + ")");
  }
  return c.done("1000 random cuts, " + std::to_string(with_answer) + " with a birthday <= 12 answer");
}

Outcome h_g_goldens() {
  Checker c;
  const auto cands = small_candidates();
  struct Golden {
    long s;
    Surreal want;
  };
  const std::vector<Golden> goldens{{0, W(-1)}, {1, R(1)}, {2, R(2)}, {-1, W(-2)}};
  for (const auto& gd : goldens) {
    const std::string tag = "h(" + std::to_string(gd.s) + ")";
    // Cut recursion over the predecessors of s, solved here directly.
    const Rat s(gd.s);
    SignSeq seq = dyadic_sign_expansion(s), pre;
    std::optional<Surreal> lo, hi;
    for (const auto& r : seq.runs()) {
      for (long k = 0; k < r.len.as_nat()->get_si(); ++k) {
        Surreal hv = h(Surreal::from_rat(dyadic_from_signs(pre)), B);
        (r.plus ? lo : hi) = hv;
        pre.push(r.plus, Ordinal::nat(1));
      }
    }
    // h values are positive; the valuation bound is v(h(s)) <= s.
    const CutSpec plain{lo ? *lo : Surreal(), hi, Surreal::from_rat(s), std::nullopt};
    // Validate the golden by tree descent over small candidates first.
    const bool in = in_cut(gd.want, plain, B) == true;
    c(in, tag + " golden outside its cut");
    bool simplest = true;
    const Ordinal want_len = sign_expansion(gd.want, B)->length();
    for (const auto& x : cands) {
      if (in_cut(x, plain, B) == true && sign_expansion(x, B)->length() < want_len) simplest = false;
    }
    c(simplest, tag + " golden not simplest among candidates");
    c(equal(simplest_in_cut(plain, B), gd.want), tag + " cut solver");
    c(equal(h(Surreal::from_rat(s), B), gd.want), tag + " h");
  }
  std::size_t memo = 0;
  for (const auto& [s, v] : h_memo()) {
    c(equal(g(v, B), s), "g(h(s)) = s");
    ++memo;
  }
  for (const auto& [v, s] : g_memo()) {
    c(equal(h(s, B), v), "h(g(b)) = b");
    ++memo;
  }
  return c.done("4 goldens, " + std::to_string(memo) + " memo entries");
}

Outcome exp_log_goldens() {
  Checker c;
  auto single = [](const Surreal& x, const Surreal& want) {
    auto ts = x.all_terms(4, B);
    return ts && ts->size() == 1 && equal(x, want);
  };
  c(single(exp(omega(), B), Surreal::omega_pow(omega())), "exp(w)");
  c(single(log(omega(), B), Surreal::omega_pow(W(-1))), "log w");
  c(single(log(log(omega(), B), B), Surreal::omega_pow(W(-2))), "log log w");
  auto e2 = exp(R(2), B).as_real(B);
  c(e2.has_value(), "exp(2) is real");
  if (e2) {
    const Interval iv = e2->approx(64);
    const auto ref = oracle::exp_bounds(Rat(2), 40);
    c(iv.lo <= ref.first && ref.second <= iv.hi, "exp(2) interval misses e^2");
    c(iv.width() <= Rat(1) / Rat(Int(1) << 60), "exp(2) interval too wide");
  }
  return c.done("exact single-term outputs, e^2 enclosed at 64 bits");
}

Outcome homomorphisms() {
  Checker c;
  std::mt19937 rng(1006);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    Surreal x = random_sample(rng, false), y = random_sample(rng, false);
    const std::string tag = "pair " + std::to_string(trial);
    c(agree(exp(add(x, y), B), mul(exp(x, B), exp(y, B)), 10, B), tag + " exp(x+y)");
    c(agree(log(exp(x, B), B), x, 10, B), tag + " log exp");
  }
  const double s = seconds_since(t0);
  c(s < 60.0, "runtime " + fmt_seconds(s) + " >= 60 s");
  return c.done("200 pairs, 10 terms, " + fmt_seconds(s));
}

Outcome growth() {
  Checker c;
  std::mt19937 rng(1007);
  for (int trial = 0; trial < 50; ++trial) {
    Surreal x = random_sample(rng, true);
    c(is_positive_infinite(x, B) == true, "sample not positive infinite");
    for (long n = 1; n <= 5; ++n) {
      c(compare(exp(x, B), power(x, n, B), B) == Cmp::Greater, to_text(x, B) + " at n=" + std::to_string(n));
    }
  }
  return c.done("50 samples, n <= 5");
}

Outcome delta_path_golden() {
  Checker c;
  PathTrace t = delta_path(omega(), SubspaceSpec{}, 3, B);
  c(t.steps.size() == 4, "step count");
  const std::vector<Surreal> want{omega(), Surreal::omega_pow(W(-1)), Surreal::omega_pow(W(-2)),
                                  Surreal::omega_pow(W(-3))};
  for (std::size_t i = 0; i < want.size() && i < t.steps.size(); ++i) {
    c(equal(t.steps[i].y, want[i]), "step " + std::to_string(i));
  }
  c(is_atomic(t, B), "atomic");
  c(check_independence(t, SubspaceSpec{}, B), "independence");
  c(t.terminated == PathEnd::AtomicConfirmed, "termination flag");
  return c.done("w, w^(w^(-1)), w^(w^(-2)), w^(w^(-3))");
}

Outcome development_laws() {
  Checker c;
  std::mt19937 rng(1009);
  for (int trial = 0; trial < 200; ++trial) {
    Surreal y = add(random_dev_part(rng), rng() % 2 ? random_rest(rng, 1) : Surreal());
    SubspaceSpec d{{omega()}};
    if (rng() % 2) d.basis.push_back(R(1));
    Surreal dev = development(y, d, B);
    c(is_truncation(dev, y, B), "truncation " + to_text(y, B));
    c(equal(development(dev, d, B), dev), "idempotence " + to_text(y, B));
  }
  SubspaceSpec d{{omega()}};
  int same = 0;
  for (int trial = 0; trial < 400 && same < 50; ++trial) {
    Surreal base = random_dev_part(rng);
    const int s = rng() % 2 ? 1 : -1;
    Surreal y1 = add(base, random_rest(rng, s)), y2 = add(base, random_rest(rng, s));
    std::vector<Surreal> sample{base};
    for (int k = 0; k < 6; ++k) sample.push_back(add(base, random_dev_part(rng)));
    for (int k = 0; k < 4; ++k) sample.push_back(random_dev_part(rng));
    auto c1 = cut_of(y1, sample), c2 = cut_of(y2, sample);
    if (!c1 || !c2 || *c1 != *c2) continue;
    ++same;
    c(equal(development(y1, d, B), development(y2, d, B)), "same cut " + to_text(y1, B));
  }
  c(same >= 50, "only " + std::to_string(same) + " same-cut pairs");
  return c.done("200 truncation pairs, " + std::to_string(same) + " same-cut pairs");
}

Outcome trig_suite() {
  Checker c;
  c(is_zero(sin(omega(), B)), "sin w = 0");
  c(equal(cos(omega(), B), R(1)), "cos w = 1");
  std::mt19937 rng(1010);
  for (int trial = 0; trial < 100; ++trial) {
    Surreal x = random_angle(rng);
    Surreal s = sin(x, B), co = cos(x, B);
    c(agree(add(mul(s, s), mul(co, co)), R(1), 8, B), "pythagoras " + to_text(x, B));
  }
  auto real = [&] { return from_map(random_map(rng, true, true, true)); };
  for (int trial = 0; trial < 100; ++trial) {
    SurComplex z{real(), random_angle(rng)}, w{real(), random_angle(rng)};
    SurComplex l = cexp(cadd(z, w), B), r = cmul(cexp(z, B), cexp(w, B));
    c(agree(l.re, r.re, 8, B) && agree(l.im, r.im, 8, B), "cexp homomorphism");
  }
  for (int trial = 0; trial < 50; ++trial) {
    SurComplex k{Surreal(), mul(random_omnific(rng), pi_times(Rat(2)))};
    c(in_kernel(k, B) == true, "kernel membership");
    SurComplex e = cexp(k, B);
    c(equal(e.re, R(1)) && is_zero(e.im), "cexp on kernel");
  }
  for (int trial = 0; trial < 200; ++trial) {
    Surreal q = from_map(random_map(rng, true, rng() % 4 != 0, true));
    Surreal d = oz_floor(q, B);
    c(is_omnific(d, B) == true, "oz_floor omnific");
    c(compare(d, q, B) != Cmp::Greater && compare(q, add(d, R(1)), B) == Cmp::Less, "oz_floor bounds");
  }
  return c.done("sin/cos of w, 100 + 100 + 50 + 200 samples");
}

Outcome t1_sample() {
  Checker c;
  T1Report r = check_T1_conditions({omega(), W(-1), R(3), Wq(make_rat(1, 2)), exp(omega(), B)}, B);
  for (const auto& cond : r.conditions) c(cond.status == Verdict::Pass, cond.condition + ": " + cond.detail);
  c(r.all_pass(), "all_pass");
  return c.done(std::to_string(r.conditions.size()) + " conditions");
}

Outcome cli_round_trip() {
  Checker c;
  std::mt19937 rng(1012);
  for (int trial = 0; trial < 1000; ++trial) {
    ExprPtr e = random_expr(rng, 4);
    const std::string s = print_expr(*e);
    c(*parse_expr(s) == *e, "syntax " + s);
  }
  Session session;
  for (int trial = 0; trial < 1000; ++trial) {
    Surreal x = random_printable(rng);
    const std::string t = to_text(x, B);
    Value v = eval(*parse_expr(t), session);
    const auto* y = std::get_if<Surreal>(&v);
    c(y && equal(*y, x) && to_text(*y, B) == t, "value " + t);
  }
  const std::string dir = std::string(SURREAL_SOURCE_DIR) + "/tests/golden/";
  for (const char* name : {"session", "errors"}) {
    std::ostringstream a, b;
    const int ca = run_batch({dir + name + ".txt"}, B, false, a);
    const int cb = run_batch({dir + name + ".txt"}, B, false, b);
    c(a.str() == b.str() && ca == cb, std::string(name) + " runs differ");
    c(a.str() == slurp(dir + name + ".out"), std::string(name) + " differs from golden");
  }
  return c.done("1000 syntax trees, 1000 normal forms, 2 batch goldens");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"field axioms", field_axioms},
      {"hahn arithmetic oracle", hahn_oracle},
      {"simplicity oracle", simplicity_oracle},
      {"h/g goldens", h_g_goldens},
      {"exp/log goldens", exp_log_goldens},
      {"homomorphism suites", homomorphisms},
      {"growth condition", growth},
      {"delta path golden", delta_path_golden},
      {"development laws", development_laws},
      {"trig/surcomplex suite", trig_suite},
      {"T1 conditions", t1_sample},
      {"CLI round trip and goldens", cli_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
