#include <a2lab/birational.hpp>
#include <a2lab/diophantine.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace a2lab;

namespace {

std::vector<Point3> sample_points(const SurfaceSpec& s, std::int64_t bound, std::size_t limit) {
  std::vector<Point3> out;
  for (const auto& p : census(s, bound, Region::SymmetricBox).points)
    if (p[0] != 0 && p[1] != 0 && out.size() < limit) out.push_back(p);
  return out;
}

}  // namespace

TEST(Birational, ApplyGenerator) {
  const SurfaceSpec s0 = surface_S0();
  auto [t1, p1] = apply_generator(Letter::SigmaX, s0, {1, 1, 3});
  EXPECT_EQ(t1, s0);
  EXPECT_EQ(p1, (Point3{1, 2, 5}));
  EXPECT_EQ(apply_generator(Letter::SigmaY, s0, {1, 2, 5}).second, (Point3{9, 2, 41}));

  const SurfaceSpec s = make_surface(UniPoly{1, 3, 2, 1}, UniPoly{1, 0, 0, 1});
  auto [t2, p2] = apply_generator(Letter::SigmaY, s, {1, 1, 8});
  EXPECT_EQ(t2.a(), (UniPoly{1, 2, 3, 1}));
  EXPECT_EQ(p2, (Point3{2, 1, 13}));
  EXPECT_THROW(apply_generator(Letter::SigmaY, s0, {1, 1, 4}), ValidationError);
}

TEST(Birational, ApplyWord) {
  const SurfaceSpec s0 = surface_S0();
  auto word = [&](const char* w) { return GeneratorWord::from_letters(parse_letters(w), s0); };
  EXPECT_EQ(apply_word(word("sx,sx"), {1, 1, 3}).point, (Point3{1, 1, 3}));
  EXPECT_EQ(apply_word(word("t"), {1, 2, 5}).point, (Point3{2, 1, 5}));
  EXPECT_EQ(apply_word(word("sx,t,sx"), {2, 9, 41}).point, (Point3{1, 1, 3}));
}

// The generic formulas agree with the exact-division shortcut, including
// where the shortcut has to fall back.
TEST(Birational, GeneratorFormulasMatchPointAction) {
  for (const auto& s : {surface_S0(), surface_T(2, 3), surface_T(-1, 4)}) {
    for (const auto& p : sample_points(s, 25, 200)) {
      for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
        auto f = generator_formula(l, s);
        std::vector<Integer> pt{p[0], p[1], p[2]};
        Point3 expect{f[0].eval(pt), f[1].eval(pt), f[2].eval(pt)};
        auto [t, q] = apply_generator(l, s, p);
        EXPECT_EQ(q, expect);
        EXPECT_TRUE(contains(t, q));
      }
    }
  }
}

TEST(Birational, InvolutionsAtPointLevel) {
  const SurfaceSpec s0 = surface_S0();
  for (const auto& p : sample_points(s0, 60, 400))
    for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) {
      auto q = apply_generator(l, s0, p).second;
      EXPECT_EQ(apply_generator(l, s0, q).second, p);
    }
  // σx alone is an involution whenever b = b̄ even if a ≠ ā.
  const SurfaceSpec s = make_surface(UniPoly{1, 2, 0, 1}, UniPoly{1, 0, 0, 1});
  for (const auto& p : sample_points(s, 40, 200)) {
    auto q = apply_generator(Letter::SigmaX, s, p).second;
    EXPECT_EQ(apply_generator(Letter::SigmaX, s, q).second, p);
  }
}

TEST(Birational, SigmaPlusIsInvolution) {
  const SurfaceSpec s0 = surface_S0();
  auto w = GeneratorWord::from_letters(parse_letters("sx,t,sx"), s0);
  for (const auto& p : sample_points(s0, 60, 300)) EXPECT_EQ(apply_word(w, apply_word(w, p).point).point, p);
}

TEST(Birational, SigmaAbGrowth) {
  const SurfaceSpec t = surface_T(2, 3);
  Point3 p{1, 1, 8};
  ASSERT_TRUE(contains(t, p));
  p = sigma_ab(t, p);
  Integer prev = max_abs_xy(p);
  for (int i = 0; i < 2; ++i) {  // digit counts grow about 47-fold per step
    Point3 q = sigma_ab(t, p);
    EXPECT_TRUE(contains(t, q));
    EXPECT_GT(max_abs_xy(q), prev);
    prev = max_abs_xy(q);
    p = q;
  }
  const SurfaceSpec s0 = surface_S0();
  EXPECT_NE(sigma_ab(s0, sigma_ab(s0, {1, 1, 3})), (Point3{1, 1, 3}));
}

TEST(Birational, FundamentalDomain) {
  auto [p, w] = reduce_to_fundamental_domain({2, 9, 41});
  EXPECT_EQ(p, (Point3{1, 1, 3}));
  EXPECT_EQ(format(w.letters), "sx,t,sx");
  auto [q, e] = reduce_to_fundamental_domain({1, 1, 3});
  EXPECT_EQ(q, (Point3{1, 1, 3}));
  EXPECT_TRUE(e.letters.empty());
  auto [r, v] = reduce_to_fundamental_domain({9, 2, 41});
  EXPECT_EQ(r, (Point3{1, 1, 3}));
  EXPECT_EQ(format(v.letters), "t,sx,t,sx");
  EXPECT_THROW(reduce_to_fundamental_domain({0, -1, 5}), ValidationError);
}

TEST(Birational, FundamentalDomainOnCensus) {
  for (const auto& p : census(surface_S0(), 2000, Region::PositiveBox).points) {
    auto [q, w] = reduce_to_fundamental_domain(p);
    EXPECT_LE(q[0], q[1]);
    EXPECT_LE(q[1] * q[1], q[0] * q[0] * q[0] + 1);
    // Inverse word (the letters are involutions on S0) walks back.
    auto rev = w.letters;
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(apply_word(GeneratorWord::from_letters(rev, surface_S0()), q).point, p);
  }
}

TEST(Birational, CurveInvariantStep) {
  EXPECT_EQ(curve_invariant_step({1, 2}), (CurveInvariants{1, 0}));
  EXPECT_EQ(curve_invariant_step({3, 8}), (CurveInvariants{2, 7}));
  EXPECT_EQ(curve_invariant_step({2, 5}), (CurveInvariants{1, 4}));
  EXPECT_THROW(curve_invariant_step({0, 0}), ValidationError);
}

// The stated rule is not an involution: (0,1) -> (1,2) -> (1,0).
TEST(Birational, CurveInvariantStepIsNotAnInvolution) {
  EXPECT_EQ(curve_invariant_step({0, 1}), (CurveInvariants{1, 2}));
  EXPECT_EQ(curve_invariant_step({1, 2}), (CurveInvariants{1, 0}));
  std::size_t fixed = 0, total = 0;
  for (long p = 0; p <= 100; ++p)
    for (long q = 0; q <= 100; ++q) {
      if (p + q < 1) continue;
      ++total;
      auto once = curve_invariant_step({p, q});
      if (once.p + once.q >= 1 && curve_invariant_step(once) == CurveInvariants{p, q}) ++fixed;
    }
  EXPECT_LT(fixed, total);
}

TEST(Birational, ReduceCurveInvariants) {
  auto states = [](long p, long q) {
    std::vector<std::pair<long, long>> out;
    for (const auto& s : reduce_curve_invariants({p, q}).states) out.emplace_back(s.p.get_si(), s.q.get_si());
    return out;
  };
  using V = std::vector<std::pair<long, long>>;
  EXPECT_EQ(states(1, 2), (V{{1, 2}, {1, 0}}));
  EXPECT_EQ(states(2, 5), (V{{2, 5}, {1, 4}}));
  EXPECT_EQ(states(3, 8), (V{{3, 8}, {2, 7}}));
  EXPECT_EQ(states(2, 9), (V{{2, 9}}));
  for (long p = 0; p <= 60; ++p)
    for (long q = 0; q <= 60; ++q) {
      if (p + q < 1) continue;
      auto t = reduce_curve_invariants({p, q});
      for (std::size_t i = 1; i < t.states.size(); ++i)
        EXPECT_LT(t.states[i].degree(), t.states[i - 1].degree());
      const auto& last = t.states.back();
      if (!t.stalled) {
        EXPECT_TRUE(last.degree() < 3 || 4 * last.p <= last.degree());
      }
    }
  EXPECT_FALSE(reduce_curve_invariants({5, 3}).unrealizable.empty());
}
