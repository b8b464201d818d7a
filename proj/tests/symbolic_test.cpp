#include <a2lab/diophantine.hpp>
#include <a2lab/symbolic.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace a2lab;

namespace {

const AnySurface kS0{surface_S0()};

MultiPoly X() { return MultiPoly::variable(xyz_vars(), 0); }
MultiPoly Y() { return MultiPoly::variable(xyz_vars(), 1); }
MultiPoly Z() { return MultiPoly::variable(xyz_vars(), 2); }
MultiPoly C(long c) { return MultiPoly::constant(xyz_vars(), c); }

MultiPoly random_xyz(std::mt19937_64& rng, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::uniform_int_distribution<long> c(-20, 20);
  std::vector<MultiPoly::Term> terms;
  for (int i = 0; i < 8; ++i)
    terms.emplace_back(make_monomial({unsigned(e(rng)), unsigned(e(rng)), unsigned(e(rng))}), Integer(c(rng)));
  return MultiPoly::from_terms(xyz_vars(), terms);
}

bool standard_only(const MultiPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (exponent(m, 0) && exponent(m, 1) && exponent(m, 2)) return false;
  return true;
}

}  // namespace

TEST(Symbolic, NormalFormExamples) {
  EXPECT_EQ(normal_form(X() * Y() * Z(), kS0), X().pow(3) + Y().pow(3) + C(1));
  EXPECT_EQ(normal_form(X() * Y() * Y() * Z(), kS0), X().pow(3) * Y() + Y().pow(4) + Y());
  EXPECT_EQ(normal_form(X() * X() + C(1), kS0), X() * X() + C(1));
}

TEST(Symbolic, NormalFormProperties) {
  std::mt19937_64 rng(2);
  const SurfaceSpec t = surface_T(2, 3);
  const AnySurface any{t};
  for (int i = 0; i < 100; ++i) {
    MultiPoly p = random_xyz(rng, 4), q = random_xyz(rng, 4), r = random_xyz(rng, 3);
    MultiPoly np = normal_form(p, any);
    EXPECT_TRUE(standard_only(np));
    EXPECT_EQ(normal_form(np, any), np);
    EXPECT_EQ(normal_form(p + q, any), normal_form(np + normal_form(q, any), any));
    EXPECT_TRUE(normal_form(t.defining() * r, any).is_zero());
    // p and its normal form agree on surface points.
    for (const auto& pt : census(t, 12, Region::SymmetricBox).points) {
      std::vector<Integer> v{pt[0], pt[1], pt[2]};
      EXPECT_EQ(p.eval(v), np.eval(v));
    }
  }
}

// Large coefficients take the GMP path; the two paths must agree.
TEST(Symbolic, NormalFormBigCoefficients) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    MultiPoly p = random_xyz(rng, 5);
    MultiPoly big = Integer("1000000000000000000000000000") * p;
    EXPECT_EQ(normal_form(big, kS0), Integer("1000000000000000000000000000") * normal_form(p, kS0));
  }
}

TEST(Symbolic, SubstituteMap) {
  const SurfaceSpec s0 = surface_S0();
  EXPECT_EQ(substitute_map(generator_map(Letter::Tau, s0), X() - Y()), Y() - X());
  EXPECT_EQ(substitute_map(generator_map(Letter::SigmaX, s0), X()), X());
  EXPECT_EQ(substitute_map(generator_map(Letter::SigmaX, s0), Y()), X() * Z() - Y() * Y());
  EXPECT_THROW(substitute_map(generator_map(Letter::Tau, s0), MultiPoly::variable({"t"}, 0)), ValidationError);
}

TEST(Symbolic, VerifyMap) {
  const SurfaceSpec s0 = surface_S0();
  for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) EXPECT_TRUE(verify_map(generator_map(l, s0)));
  const SymbolicSurface g;
  EXPECT_TRUE(verify_map(generator_map(Letter::SigmaY, g)));
  EXPECT_TRUE(verify_map(generator_map(Letter::SigmaX, g)));
  EXPECT_TRUE(verify_map(generator_map(Letter::Tau, g)));

  PolyMap bad = generator_map(Letter::SigmaY, s0);
  bad.components[2] = bad.components[2] + C(2) * X() * X() * Z();  // one sign flipped
  EXPECT_FALSE(verify_map(bad));
}

TEST(Symbolic, SigmaYGenericFormula) {
  const SymbolicSurface g;
  auto m = generator_map(Letter::SigmaY, g);
  const MultiPoly x = g.var("x"), y = g.var("y"), z = g.var("z");
  EXPECT_EQ(m.components[0], y * z - g.a_star());
  EXPECT_EQ(m.components[1], y);
  EXPECT_EQ(m.components[2], y * z * z - z * g.a_star() - (x + g.var("a2")) * g.b_star());
  const auto& t = std::get<SymbolicSurface>(m.target);
  EXPECT_EQ(t.a1, "a2");
  EXPECT_EQ(t.a2, "a1");
}

TEST(Symbolic, Involutions) {
  for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) EXPECT_TRUE(is_identity_mod(word_map({l, l}, kS0)));
  EXPECT_FALSE(is_identity_mod(word_map(parse_letters("sx,sy,sx,sy"), kS0)));
  // Generic surfaces: σ∘σ returns to the same surface and is the identity.
  const AnySurface g{SymbolicSurface{}};
  for (Letter l : {Letter::SigmaX, Letter::SigmaY, Letter::Tau}) EXPECT_TRUE(is_identity_mod(word_map({l, l}, g)));
}

TEST(Symbolic, Compose) {
  const SurfaceSpec s0 = surface_S0();
  auto sx = generator_map(Letter::SigmaX, s0), t = generator_map(Letter::Tau, s0);
  auto st = compose_maps(sx, t);
  EXPECT_EQ(st.components[0], sx.components[1]);
  EXPECT_EQ(st.components[1], sx.components[0]);
  EXPECT_EQ(format(st.word), "sx,t");
  // τ σx τ = σy.
  EXPECT_EQ(word_map(parse_letters("t,sx,t"), kS0).components, generator_map(Letter::SigmaY, s0).components);
  EXPECT_THROW(compose_maps(generator_map(Letter::SigmaY, surface_T(2, 3)), generator_map(Letter::SigmaY, surface_T(2, 3))),
               ValidationError);
}

TEST(Symbolic, ComposedMapsMatchPointAction) {
  for (const auto& s : {surface_S0(), surface_T(2, 3)}) {
    const AnySurface any{s};
    for (const char* w : {"sx", "sy", "t", "sx,sy", "sy,t,sx", "sy,sx,sy,sx"}) {
      auto word = GeneratorWord::from_letters(parse_letters(w), s);
      auto m = word_map(word.letters, any);
      EXPECT_TRUE(verify_map(m)) << w;
      for (const auto& p : census(s, 20, Region::SymmetricBox).points)
        if (p[0] != 0 && p[1] != 0) {
          EXPECT_EQ(evaluate_map(m, p), apply_word(word, p).point) << w;
        }
    }
  }
}

TEST(Symbolic, SigmaAbOnConcreteSurface) {
  auto m = word_map(sigma_ab_letters(), AnySurface{surface_T(2, 3)});
  EXPECT_EQ(component_stats(m).degrees, kExpectedDegrees);
}

TEST(Symbolic, GenericWordsSpecialize) {
  const AnySurface g{SymbolicSurface{}};
  auto m = word_map(parse_letters("sy,sx,sy"), g);
  EXPECT_TRUE(verify_map(m));
  for (std::array<long, 4> v : {std::array<long, 4>{0, 1, 0, 2}, {2, -1, 3, 4}}) {
    auto values = coefficient_values(v);
    auto concrete = word_map(m.word, AnySurface{SymbolicSurface{}.specialize(values)});
    EXPECT_EQ(specialize_map(m, values).components, concrete.components);
  }
}
