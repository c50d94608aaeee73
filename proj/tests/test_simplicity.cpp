#include "doctest.h"
#include "helpers.hpp"
#include "surreal/simplicity.hpp"

using namespace surreal;
using namespace th;

namespace {
const Budget B{};

Ordinal nat(long n) { return Ordinal::nat(n); }
Ordinal w() { return Ordinal::omega(); }

std::string signs(const Surreal& x) {
  auto s = sign_expansion(x, B);
  return s ? s->text() : "none";
}

// Flat sign list for finite sequences.
std::vector<int> flat(const SignSeq& s) {
  std::vector<int> out;
  for (const auto& r : s.runs()) {
    auto n = r.len.as_nat();
    REQUIRE(n);
    for (long k = 0; k < n->get_si(); ++k) out.push_back(r.plus ? 1 : -1);
  }
  return out;
}

Surreal random_fragment(std::mt19937& rng, int depth) {
  static const Rat coeffs[] = {Rat(1), Rat(2), make_rat(1, 2), make_rat(3, 4), Rat(3), make_rat(5, 2)};
  std::uniform_int_distribution<int> pick(0, 5), flip(0, 1), zero(0, 3);
  if (depth == 0 || zero(rng) == 0) return Surreal();
  Rat r = coeffs[pick(rng)];
  if (flip(rng)) r = -r;
  return Surreal::monomial(Coeff(r), random_fragment(rng, depth - 1));
}

// Lexicographic order on sign sequences with "end" between - and +,
// walked through positions of the run lists.
int lex(const SignSeq& a, const SignSeq& b) {
  auto at = [](const SignSeq& s, const Ordinal& pos) -> int {
    auto v = s.at(pos);
    return v ? (*v ? 1 : -1) : 0;
  };
  std::vector<Ordinal> cuts{Ordinal()};
  for (const SignSeq* s : {&a, &b}) {
    Ordinal p;
    for (const auto& r : s->runs()) {
      p = p + r.len;
      cuts.push_back(p);
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const Ordinal& x, const Ordinal& y) { return x < y; });
  for (const auto& pos : cuts) {
    const int x = at(a, pos), y = at(b, pos);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}
}  // namespace

TEST_CASE("ordinal arithmetic") {
  CHECK((w() + nat(1)).text() == "w + 1");
  CHECK(nat(1) + w() == w());
  CHECK(nat(3) + w() * nat(2) == w() * nat(2));
  CHECK(w() + nat(3) < w() * nat(2));
  CHECK((w() + nat(1)) * nat(2) == w() * nat(2) + nat(1));
  CHECK(nat(2) * w() == w());
  CHECK(w() * w() == Ordinal::omega_pow(nat(2)));
  CHECK((w() + nat(3)).left_sub(w()) == nat(3));
  CHECK(Ordinal::omega_pow(nat(2)).left_sub(w()) == Ordinal::omega_pow(nat(2)));
  auto [q, r] = (Ordinal::omega_pow(nat(2)) * nat(3) + w() + nat(4)).div_omega_pow(nat(1));
  CHECK(q == w() * nat(3) + nat(1));
  CHECK(r == nat(4));
  CHECK(Ordinal::omega_pow(w()).text() == "w^(w)");
}

TEST_CASE("dyadic sign expansions") {
  CHECK(dyadic_sign_expansion(make_rat(1, 2)).text() == "+^1 -^1");
  CHECK(dyadic_sign_expansion(Rat(3)).text() == "+^3");
  CHECK(dyadic_sign_expansion(make_rat(-3, 4)).text() == "-^1 +^1 -^1");
  CHECK(dyadic_sign_expansion(Rat(0)).empty());
  CHECK_THROWS_AS((void)dyadic_sign_expansion(make_rat(1, 3)), KernelError);
}

TEST_CASE("dyadic round trip and birthday up to 12") {
  auto levels = oracle::dyadic_levels(12);
  for (std::size_t d = 0; d < levels.size(); ++d) {
    for (const auto& q : levels[d]) {
      SignSeq s = dyadic_sign_expansion(q);
      CHECK(s.length() == nat(static_cast<long>(d)));
      CHECK(dyadic_from_signs(s) == q);
    }
  }
}

TEST_CASE("dyadic order is lexicographic order on signs") {
  auto levels = oracle::dyadic_levels(6);
  std::vector<Rat> all;
  for (const auto& l : levels) all.insert(all.end(), l.begin(), l.end());
  for (const auto& a : all) {
    for (const auto& b : all) {
      auto fa = flat(dyadic_sign_expansion(a)), fb = flat(dyadic_sign_expansion(b));
      fa.push_back(0);
      fb.push_back(0);
      const int want = a < b ? -1 : (a > b ? 1 : 0);
      CHECK(lex(dyadic_sign_expansion(a), dyadic_sign_expansion(b)) == want);
      // Flat oracle: first difference with end-of-sequence as 0.
      std::size_t i = 0;
      while (i < fa.size() && i < fb.size() && fa[i] == fb[i] && fa[i] != 0) ++i;
      const int got = fa[i] == fb[i] ? 0 : (fa[i] < fb[i] ? -1 : 1);
      CHECK(got == want);
    }
  }
}

TEST_CASE("sign expansions of monomials") {
  CHECK(signs(omega()) == "+^w");
  CHECK(signs(W(-1)) == "+^1 -^w");
  CHECK(signs(W(2)) == "+^(w^2)");
  CHECK(signs(Wq(make_rat(1, 2))) == "+^w -^(w^2)");
  CHECK(signs(scale(omega(), Coeff(2))) == "+^(w*2)");
  CHECK(signs(scale(omega(), make_rat(1, 2))) == "+^w -^w");
  CHECK(signs(Surreal::omega_pow(omega())) == "+^(w^(w))");
  CHECK(signs(W(-2)) == "+^1 -^(w*2)");
  CHECK(signs(neg(omega())) == "-^w");
  CHECK(signs(R(5, 4)) == "+^2 -^2");
  CHECK(signs(add(omega(), R(1))) == "none");
  CHECK(signs(R(1, 3)) == "none");
}

TEST_CASE("fragment round trip and order") {
  std::mt19937 rng(3);
  std::vector<Surreal> xs;
  for (int i = 0; i < 120; ++i) xs.push_back(random_fragment(rng, 3));
  for (const auto& x : xs) {
    auto s = sign_expansion(x, B);
    REQUIRE(s);
    auto back = from_sign_expansion(*s);
    REQUIRE(back);
    CHECK(equal(*back, x));
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Cmp c = compare(xs[i], xs[i + 1], B);
    const int l = lex(*sign_expansion(xs[i], B), *sign_expansion(xs[i + 1], B));
    CHECK(l == (c == Cmp::Less ? -1 : (c == Cmp::Greater ? 1 : 0)));
  }
  SignSeq odd;
  odd.push(true, w() + nat(1));
  CHECK_FALSE(from_sign_expansion(odd));
}

TEST_CASE("simplest_dyadic_between matches brute force") {
  auto levels = oracle::dyadic_levels(12);
  std::vector<Rat> all;
  for (const auto& l : levels) all.insert(all.end(), l.begin(), l.end());
  std::sort(all.begin(), all.end());
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i > j) std::swap(i, j);
    if (j - i < 2) j = std::min(all.size() - 1, i + 2);
    const Rat lo = all[i], hi = all[j];
    Rat want;
    bool found = false;
    for (const auto& level : levels) {
      for (const auto& q : level) {
        if (q > lo && q < hi) {
          want = q;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    REQUIRE(found);
    CHECK(simplest_dyadic_between({lo}, {hi}) == want);
  }
  CHECK(simplest_dyadic_between({}, {}) == 0);
  CHECK(simplest_dyadic_between({Rat(2)}, {}) == 3);
  CHECK(simplest_dyadic_between({}, {Rat(-2)}) == -3);
  CHECK(simplest_dyadic_between({make_rat(1, 3)}, {make_rat(2, 5)}) == make_rat(3, 8));
  CHECK_THROWS_AS((void)simplest_dyadic_between({Rat(1)}, {Rat(1)}), KernelError);
}

TEST_CASE("simplest_in_cut examples") {
  auto cut = [](std::optional<Surreal> lo, std::optional<Surreal> hi, std::optional<Surreal> vu = std::nullopt,
                std::optional<Surreal> vl = std::nullopt) { return CutSpec{lo, hi, vu, vl}; };
  CHECK(simplest_in_cut(cut(std::nullopt, std::nullopt), B).is_zero(B));
  CHECK(equal(simplest_in_cut(cut(R(1), R(2)), B), R(3, 2)));
  CHECK(equal(simplest_in_cut(cut(R(0), std::nullopt, R(0)), B), W(-1)));
  CHECK(equal(simplest_in_cut(cut(W(-1), std::nullopt, R(1)), B), R(1)));
  CHECK(equal(simplest_in_cut(cut(R(0), W(-1), R(-1)), B), W(-2)));
  CHECK(equal(simplest_in_cut(cut(R(0), W(-1)), B), scale(W(-1), make_rat(1, 2))));
  CHECK(equal(simplest_in_cut(cut(R(0), std::nullopt, std::nullopt, R(0)), B), omega()));
  CHECK(equal(simplest_in_cut(cut(std::nullopt, std::nullopt, std::nullopt, R(0)), B), omega()));
  CHECK(equal(simplest_in_cut(cut(std::nullopt, R(0), std::nullopt, R(0)), B), neg(omega())));
  CHECK(equal(simplest_in_cut(cut(R(0), R(1), std::nullopt, R(-1)), B), R(1, 2)));
  CHECK(equal(simplest_in_cut(cut(R(0), std::nullopt, R(1), R(0)), B), Wq(make_rat(1, 2))));
  // w + 1 and w^2 + 1 are the answers here, outside the monomial fragment.
  for (auto c : {cut(omega(), W(2)), cut(W(2), std::nullopt)}) {
    try {
      (void)simplest_in_cut(c, B);
      CHECK(false);
    } catch (const KernelError& e) {
      CHECK(e.kind() == ErrorKind::FragmentExhausted);
    }
  }
  CHECK_THROWS_AS((void)simplest_in_cut(cut(R(2), R(1)), B), KernelError);
}

TEST_CASE("simplest_in_cut answers are in the cut and prefix-minimal") {
  std::mt19937 rng(23);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Surreal a = random_fragment(rng, 3), c = random_fragment(rng, 3);
    const Cmp o = compare(a, c, B);
    if (o == Cmp::Equal) continue;
    if (o == Cmp::Greater) std::swap(a, c);
    CutSpec cs{a, c, std::nullopt, std::nullopt};
    Surreal x;
    try {
      x = simplest_in_cut(cs, B);
    } catch (const KernelError& e) {
      CHECK(e.kind() == ErrorKind::FragmentExhausted);
      continue;
    }
    ++solved;
    CHECK(in_cut(x, cs, B) == true);
    // Every proper prefix of the answer lies outside the cut.
    SignSeq s = *sign_expansion(x, B);
    std::vector<Ordinal> probes;
    Ordinal p;
    for (const auto& r : s.runs()) {
      probes.push_back(p);
      p = p + r.len;
    }
    for (const auto& q : probes) {
      auto y = from_sign_expansion(s.prefix(q));
      if (y) CHECK(in_cut(*y, cs, B) == false);
    }
  }
  CHECK(solved > 60);
}

TEST_CASE("is_omnific") {
  CHECK(is_omnific(R(3), B) == true);
  CHECK(is_omnific(R(1, 2), B) == false);
  CHECK(is_omnific(add(omega(), R(2)), B) == true);
  CHECK(is_omnific(scale(omega(), make_rat(1, 2)), B) == true);
  CHECK(is_omnific(add(omega(), W(-1)), B) == false);
  CHECK(is_omnific(add(omega(), R(1, 2)), B) == false);
  CHECK(is_omnific(Surreal::from_coeff(coeff_pi()), B) == std::nullopt);
}
