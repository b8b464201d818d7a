#include <a2lab/curves.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace a2lab;

TEST(Curves, CatalogDefects) {
  auto cat = line_catalog();
  ASSERT_EQ(cat.size(), 5u);
  for (const auto& c : cat) {
    auto r = on_surface_symbolic(c);
    EXPECT_EQ(r.defect, c.defect) << c.label;
    EXPECT_EQ(r.on_surface, c.label != "phi") << c.label;
  }
  const MultiPoly v = MultiPoly::variable(uv_vars(), 1);
  EXPECT_EQ(catalog_curve("phi").defect, Integer(8) * v.pow(6));
  EXPECT_THROW(catalog_curve("l9"), ValidationError);
}

TEST(Curves, Evaluate) {
  EXPECT_EQ(evaluate(catalog_curve("l3"), {Integer(0)}), (Point3{0, -1, 3}));
  EXPECT_EQ(evaluate(catalog_curve("nu"), {Integer(1)}), (Point3{-1, 1, -1}));
  EXPECT_EQ(evaluate(catalog_curve("phi"), {Integer(1), Integer(1)}), (Point3{1, 3, 12}));
  const SurfaceSpec s0 = surface_S0();
  for (const char* label : {"l1", "l2", "l3", "nu"})
    for (long t = -30; t <= 30; ++t) EXPECT_TRUE(contains(s0, evaluate(catalog_curve(label), {Integer(t)}))) << label;
}

TEST(Curves, PushSigmaYOfL3IsNu) {
  const SurfaceSpec s0 = surface_S0();
  auto img = push_curve(GeneratorWord::from_letters({Letter::SigmaY}, s0), catalog_curve("l3"));
  EXPECT_EQ(img.components, reparametrize(catalog_curve("nu"), UniPoly{-1, -1}).components);
  EXPECT_EQ(img.label, "sy(l3)");
}

TEST(Curves, PushEmptyWord) {
  const SurfaceSpec s0 = surface_S0();
  auto c = catalog_curve("nu");
  auto img = push_curve(GeneratorWord::from_letters({}, s0), c);
  EXPECT_EQ(img.components, c.components);
  EXPECT_EQ(img.label, "nu");
  EXPECT_THROW(push_curve(GeneratorWord::from_letters({}, s0), catalog_curve("phi")), ValidationError);
  EXPECT_THROW(push_curve(GeneratorWord::from_letters({}, surface_T(2, 3)), c), ValidationError);
}

TEST(Curves, PushGrowsDegree) {
  const SurfaceSpec s0 = surface_S0();
  auto l1 = catalog_curve("l1");
  auto img = push_curve(GeneratorWord::from_letters(parse_letters("sx,sy"), s0), l1);
  const MultiPoly t = in_t(UniPoly{0, 1});
  EXPECT_EQ(img.components[0], t);
  EXPECT_EQ(img.components[1], in_t(UniPoly{-1}));
  EXPECT_EQ(img.components[2], in_t(UniPoly{0, 0, -1}));
  auto before = component_degrees(l1), after = component_degrees(img);
  EXPECT_GT(*std::max_element(after.begin(), after.end()), *std::max_element(before.begin(), before.end()));
}

TEST(Curves, RandomWordsStayOnSurface) {
  const SurfaceSpec s0 = surface_S0();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(0, 2), len(1, 4);
  const Letter letters[] = {Letter::SigmaX, Letter::SigmaY, Letter::Tau};
  for (int i = 0; i < 30; ++i) {
    std::vector<Letter> w;
    for (int k = len(rng); k > 0; --k) w.push_back(letters[letter(rng)]);
    auto word = GeneratorWord::from_letters(w, s0);
    for (const char* label : {"l1", "l2", "l3", "nu"}) {
      auto c = catalog_curve(label);
      auto img = push_curve(word, c);
      EXPECT_TRUE(on_surface_symbolic(img).on_surface);
      // Agrees with the point action wherever xy != 0.
      for (long t = -6; t <= 6; ++t) {
        Point3 p = evaluate(c, {Integer(t)});
        if (p[0] == 0 || p[1] == 0) continue;
        EXPECT_EQ(evaluate(img, {Integer(t)}), apply_word(word, p).point) << format(w) << " " << label;
      }
    }
  }
}

TEST(Curves, CurveContains) {
  auto nu = catalog_curve("nu");
  EXPECT_TRUE(curve_contains(nu, {-3, 2, 3}));
  EXPECT_FALSE(curve_contains(nu, {1, 1, 3}));
  EXPECT_TRUE(curve_contains(catalog_curve("l1"), {0, -1, 77}));
  EXPECT_FALSE(curve_contains(catalog_curve("phi"), {1, 3, 12}));
}

TEST(Curves, OnKnownLine) {
  const SurfaceSpec s0 = surface_S0();
  EXPECT_TRUE(on_known_line(s0, {0, -1, 5}));
  EXPECT_TRUE(on_known_line(s0, {5, -6, 3}));
  EXPECT_TRUE(on_known_line(s0, {-3, 2, 3}));
  EXPECT_FALSE(on_known_line(s0, {1, 1, 3}));
  EXPECT_FALSE(on_known_line(s0, {2, 9, 41}));
  EXPECT_FALSE(on_known_line(surface_T(2, 3), {1, 1, 8}));
}

TEST(ProductMorphism, Examples) {
  const UniPoly lin{1, 1}, q{1, -1, 1};  // (1 + x)(1 - x + x^2) = 1 + x^3
  EXPECT_EQ(product_morphism(lin, lin, {1, 1, 3}, q, q), (Point3{1, 1, 3}));
  EXPECT_EQ(product_morphism(lin, lin, {1, 2, 2}, q, q), (Point3{1, 2, 5}));
  EXPECT_THROW(product_morphism(lin, lin, {1, 2, 3}, q, q), ValidationError);
  EXPECT_THROW(product_morphism(UniPoly{2, 1}, lin, {1, 1, 3}, q, q), ValidationError);
}

TEST(ProductMorphism, Identity) {
  const UniPoly lin{1, 1}, one{1};
  for (long x = -20; x <= 20; ++x)
    for (long y = -20; y <= 20; ++y) {
      if (x == 0 || y == 0 || (x + y + 1) % (x * y) != 0) continue;
      Point3 p{x, y, (x + y + 1) / (x * y)};
      EXPECT_EQ(product_morphism(lin, lin, p, one, one), p);
    }
}

// Points of xyz = x + y + 1 land on the product surface.
TEST(ProductMorphism, RandomTargets) {
  const UniPoly lin{1, 1};
  std::vector<Point3> pts;
  for (long x = -400; x <= 400 && pts.size() < 100; ++x)
    for (long y = -400; y <= 400 && pts.size() < 100; ++y)
      if (x != 0 && y != 0 && (x + y + 1) % (x * y) == 0) pts.push_back({x, y, (x + y + 1) / (x * y)});
  ASSERT_GE(pts.size(), 10u);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int i = 0; i < 20; ++i) {
    UniPoly a2{1, c(rng), c(rng)}, b2{1, c(rng)};
    const UniPoly a = lin * a2, b = lin * b2;
    for (const auto& p : pts) {
      Point3 img = product_morphism(lin, lin, p, a2, b2);
      EXPECT_EQ(img[0], p[0]);
      EXPECT_EQ(img[1], p[1]);
      EXPECT_EQ(img[0] * img[1] * img[2], a.eval(img[0]) + b.eval(img[1]) - 1);
    }
  }
}
