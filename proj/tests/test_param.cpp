#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace splitgap;
using oracle::cls;

namespace {

const PrimeField F;

bool proportional(const PlanePoint& a, const PlanePoint& b) { return normalize_point(F, a) == normalize_point(F, b); }

void expect_curve_of_class(const ParamTriple& phi, const DivClass& c, const PointSet& pts) {
  EXPECT_EQ(phi.degree(), c.d);
  for (std::size_t i = 0; i < c.m.size(); ++i) EXPECT_EQ(multiplicity_at(phi, pts[i]), c.m[i]) << to_string(c) << " point " << i;
  EXPECT_EQ(gcd(phi[0], phi[1], phi[2]).degree(), 0);
  i64 genus2 = static_cast<i64>(c.d - 1) * (c.d - 2);
  for (int m : c.m) genus2 -= static_cast<i64>(m) * (m - 1);
  EXPECT_EQ(genus2, 0);
}

}  // namespace

TEST(Points, Deterministic) {
  const PointSet a = random_points(9, 5, F), b = random_points(9, 5, F);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, random_points(9, 6, F).points);
}

TEST(Points, Genericity) {
  const PointSet three = random_points(3, 1, F);
  EXPECT_FALSE(collinear(F, three[0], three[1], three[2]));
  for (u64 seed = 1; seed <= 20; ++seed) {
    const PointSet nine = random_points(9, seed, F);
    EXPECT_TRUE(is_generic(F, nine.points));
  }
  // Six points on a conic are rejected.
  std::vector<PlanePoint> conic;
  for (u64 x = 1; x <= 6; ++x) conic.push_back({1, x, F.mul(x, x)});
  EXPECT_FALSE(is_generic(F, conic));
  EXPECT_FALSE(is_generic(F, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}));
}

TEST(Cremona, PointOnOppositeLineGoesToCoordinatePoint) {
  const PointSet base = random_points(3, 2, F);
  PointSet pts = base;
  pts.points.push_back(normalize_point(F, {F.add(base[1][0], base[2][0]), F.add(base[1][1], base[2][1]),
                                          F.add(base[1][2], base[2][2])}));
  const CremonaStep st = cremona_apply(pts, 0, 1, 2);
  EXPECT_EQ(st.after[3], (PlanePoint{1, 0, 0}));
  EXPECT_EQ(st.after[0], (PlanePoint{1, 0, 0}));
  EXPECT_EQ(st.after[1], (PlanePoint{0, 1, 0}));
  EXPECT_EQ(st.after[2], (PlanePoint{0, 0, 1}));
}

TEST(Cremona, Errors) {
  PointSet pts{F, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 3}}, 0};
  EXPECT_THROW(cremona_apply(pts, 0, 1, 2), DegenerateError);
  EXPECT_THROW(cremona_apply(pts, 0, 1, 7), DimensionError);
}

TEST(Cremona, InvolutionWithCoordinateCenters) {
  PointSet pts = random_points(6, 3, F);
  pts.points[0] = {1, 0, 0};
  pts.points[1] = {0, 1, 0};
  pts.points[2] = {0, 0, 1};
  const CremonaStep once = cremona_apply(pts, 0, 1, 2);
  PointSet mid{F, once.after, 0};
  const CremonaStep twice = cremona_apply(mid, 0, 1, 2);
  for (std::size_t i = 3; i < pts.size(); ++i) EXPECT_TRUE(proportional(twice.after[i], pts[i]));
}

TEST(Cremona, QuadricsDefineThePointMap) {
  const PointSet pts = random_points(7, 4, F);
  const CremonaStep st = cremona_apply(pts, 1, 3, 5);
  const auto q = st.quadrics(F);
  for (std::size_t n : {0u, 2u, 4u, 6u}) {
    const PlanePoint img{q[0].eval(pts[n]), q[1].eval(pts[n]), q[2].eval(pts[n])};
    EXPECT_TRUE(proportional(img, st.after[n]));
  }
}

TEST(Cremona, LatticeCommutation) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int r : {6, 7, 8}) {
    for (const NumType& t : enum_exceptional(r, 20)) {
      if (t.d < 1) continue;
      for (int trial = 0; trial < 6; ++trial) {
        DivClass c = t.as_class();
        std::shuffle(c.m.begin(), c.m.end(), rng);
        std::vector<int> idx(static_cast<std::size_t>(r));
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::sort(idx.begin(), idx.begin() + 3);
        const DivClass image = reflect(c, Reflection::quad(idx[0], idx[1], idx[2]));
        if (image.d < 1) continue;
        const u64 seed = rng();
        const ParamResult res = parameterize(c, random_points(r, seed, F), seed);
        const CremonaStep st = cremona_apply(res.points, idx[0], idx[1], idx[2]);
        const ParamTriple pushed = cremona_push(st, res.phi);
        EXPECT_EQ(pushed.degree(), image.d) << to_string(c);
        for (std::size_t i = 0; i < image.m.size(); ++i) EXPECT_EQ(multiplicity_at(pushed, st.after[i]), image.m[i]) << to_string(c);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(Multiplicity, Examples) {
  const BinForm s = BinForm::monomial(F, 1, 0), t = BinForm::monomial(F, 0, 1);
  const ParamTriple phi(pow(s, 4), mul(pow(s, 3), t), pow(t, 4));
  EXPECT_EQ(multiplicity_at(phi, {0, 0, 1}), 3);
  EXPECT_EQ(multiplicity_at(phi, {1, 2, 3}), 0);
  const PointSet pts = random_points(2, 9, F);
  const ParamResult line = parameterize(cls(1, {1, 1}), pts, 9);
  EXPECT_EQ(multiplicity_at(line.phi, pts[0]), 1);
}

TEST(Parameterize, LineThroughTwoPoints) {
  const PointSet pts = random_points(2, 10, F);
  const ParamResult res = parameterize(cls(1, {1, 1}), pts, 10);
  EXPECT_TRUE(res.word.empty());
  EXPECT_TRUE(proportional(res.phi.eval(1, 0), pts[0]));
  EXPECT_TRUE(proportional(res.phi.eval(0, 1), pts[1]));
}

TEST(Parameterize, NodalQuarticAndOctic) {
  for (u64 seed : {1, 2, 3}) {
    const DivClass quartic = cls(4, {2, 2, 2, 1, 1, 1, 1, 1});
    const ParamResult q = parameterize(quartic, random_points(8, seed, F), seed);
    expect_curve_of_class(q.phi, quartic, q.points);
    const DivClass octic = cls(8, {3, 3, 3, 3, 3, 3, 3});
    const ParamResult o = parameterize(octic, random_points(7, seed, F), seed);
    expect_curve_of_class(o.phi, octic, o.points);
  }
}

TEST(Parameterize, ConicAndMonoidBases) {
  for (const DivClass& c : {cls(2, {1, 1, 1, 1, 1}), cls(2, {1, 1, 1, 0, 0}), cls(3, {2, 1, 1, 1, 1}), cls(5, {4, 1, 1, 1}),
                            cls(6, {5, 1})}) {
    const ParamResult res = parameterize(c, random_points(c.r(), 12, F), 12);
    expect_curve_of_class(res.phi, c, res.points);
  }
}

TEST(Parameterize, TraceMatchesWord) {
  const DivClass c = cls(8, {3, 3, 3, 3, 3, 3, 3, 1, 1});
  const ParamResult res = parameterize(c, random_points(9, 3, F), 3);
  ASSERT_EQ(res.trace.size(), res.word.size());
  EXPECT_EQ(reflect(c, res.word), res.base);
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    EXPECT_EQ(res.trace[i].centers, res.word[i].idx);
  }
  EXPECT_EQ(res.trace.front().before, res.points.points);
}

TEST(Parameterize, InvariantsOnEnumeratedTypes) {
  for (int r : {5, 7, 9}) {
    for (const NumType& t : enum_exceptional(r, 24)) {
      if (t.d < 1) continue;
      const DivClass c = t.as_class();
      const ParamResult res = parameterize(c, random_points(r, 21, F), 21);
      expect_curve_of_class(res.phi, c, res.points);
    }
  }
}

TEST(Parameterize, DeterministicPerSeed) {
  const DivClass c = cls(12, {5, 5, 5, 5, 3, 3, 3, 3, 3});
  const ParamResult a = parameterize(c, random_points(9, 8, F), 8);
  const ParamResult b = parameterize(c, random_points(9, 8, F), 8);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.phi[i], b.phi[i]);
}

TEST(Parameterize, Errors) {
  EXPECT_THROW(parameterize(cls(0, {0, -1}), random_points(2, 1, F), 1), DomainError);
  EXPECT_THROW(parameterize(cls(3, {1, 1, 0}), random_points(3, 1, F), 1), DomainError);
  EXPECT_THROW(parameterize(cls(4, {3, 1, 1}), random_points(2, 1, F), 1), DimensionError);
}

TEST(Parameterize, WorksOverASmallerPrime) {
  const PrimeField small(10007);
  const DivClass c = cls(4, {2, 2, 2, 1, 1, 1, 1, 1});
  const ParamResult res = parameterize(c, random_points(8, 1, small), 1);
  EXPECT_EQ(res.phi.degree(), 4);
}
