#include <gtest/gtest.h>

#include <array>
#include <random>

#include "oracles.hpp"

using namespace plinf;

namespace {

const char* kQuad = "dx = y^3 - x^3*y; dy = -x^3 + x*y^3";

// Chart fields written with x,y standing for u,v.
PlanarField uv(const std::string& s) { return parse_field(s); }

Rational random_nonzero(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-7, 7), d(1, 5);
  for (;;) {
    int n = c(rng);
    if (n != 0) return Rational(n, d(rng));
  }
}

double random_positive(std::mt19937& rng) { return std::uniform_real_distribution<double>(0.3, 2.5)(rng); }

// Monomial maps with positive signs, evaluated on the positive quadrant through logarithms.
using Mat = std::array<std::array<double, 2>, 2>;

Mat exponents(const MonomialMap& F) {
  return {{{double(F.e[0][0]), double(F.e[0][1])}, {double(F.e[1][0]), double(F.e[1][1])}}};
}

Mat inverse(const Mat& E) {
  double d = E[0][0] * E[1][1] - E[0][1] * E[1][0];
  return {{{E[1][1] / d, -E[0][1] / d}, {-E[1][0] / d, E[0][0] / d}}};
}

Mat mul(const Mat& A, const Mat& B) {
  Mat C{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
  return C;
}

// Checks that the transition A -> B carries cf_a to cf_b, both being normalized
// push-forwards of the same field: D T (Xa / sa)(p) = (Xb / sb)(T p).
void expect_conjugate(const ChartField& a, const ChartField& b, double u, double v, double tol) {
  ASSERT_TRUE(a.forward.sx == 1 && a.forward.sy == 1 && b.forward.sx == 1 && b.forward.sy == 1);
  Mat Ea = exponents(a.forward), Eb = exponents(b.forward);
  Mat L = mul(inverse(Eb), Ea);  // log q = L log p
  double lu = std::log(u), lv = std::log(v);
  double qu = std::exp(L[0][0] * lu + L[0][1] * lv), qv = std::exp(L[1][0] * lu + L[1][1] * lv);
  double sa = std::pow(u, double(a.norm_u)) * std::pow(v, double(a.norm_v));
  double sb = std::pow(qu, double(b.norm_u)) * std::pow(qv, double(b.norm_v));
  double U = a.u_component().eval(u, v) / sa, V = a.v_component().eval(u, v) / sa;
  // DT = diag(q) L diag(1/p)
  double tu = qu * (L[0][0] * U / u + L[0][1] * V / v);
  double tv = qv * (L[1][0] * U / u + L[1][1] * V / v);
  double wu = b.u_component().eval(qu, qv) / sb, wv = b.v_component().eval(qu, qv) / sb;
  double scale = std::max({std::abs(wu), std::abs(wv), std::abs(tu), std::abs(tv), 1e-300});
  EXPECT_NEAR(tu, wu, tol * scale) << a.label() << " -> " << b.label();
  EXPECT_NEAR(tv, wv, tol * scale) << a.label() << " -> " << b.label();
}

}  // namespace

TEST(Compactify, DirectionalGoldens) {
  PlanarField X = parse_field(kQuad);
  ChartField xp = directional_plc(X, WeightVector(1, 2), Direction::Xpos);
  EXPECT_EQ(xp.field, uv("dx = x^3 - 2*x^4 + 2*x^2*y - y^4; dy = x*y^2 - x^3*y"));
  EXPECT_EQ(pretty(xp), "(-2*u^4 - v^4 + u^3 + 2*u^2*v) d/du + (-u^3*v + u*v^2) d/dv");
  ChartField yp = directional_plc(X, WeightVector(1, 2), Direction::Ypos);
  EXPECT_EQ(yp.field, uv("dx = 1 - 1/2*x^2 - x^3*y + 1/2*x^4*y^4; dy = 1/2*x^3*y^5 - 1/2*x*y"));
  EXPECT_EQ(xp.norm_v, 5);
  EXPECT_EQ(xp.divisor, Divisor::V);
  EXPECT_THROW(directional_plc(PlanarField(), WeightVector(1, 1), Direction::Xpos), DomainError);
}

TEST(Compactify, NegativeDirectionsBySignConjugation) {
  // x-: x -> -x, so the x- chart of X is the x+ chart of X(-x, y) conjugated.
  std::mt19937 rng(51);
  for (int i = 0; i < 30; ++i) {
    PlanarField f = oracle::random_field(rng, 4);
    PlanarField::TermMap mx, my;
    for (const auto& [p, c] : f.terms()) {
      // (P,Q)(-x,y) pulled back by x -> -x: P~ = -P(-x,y), Q~ = Q(-x,y).
      bool odd_x = (p.m % 2 != 0);
      mx[p] = odd_x ? CoeffPair{-c.a, -c.b} : c;
      bool odd_y = (p.n % 2 != 0);
      my[p] = odd_y ? CoeffPair{-c.a, -c.b} : c;
    }
    WeightVector w(1 + i % 3, 1 + (i % 3 == 0 ? 1 : 0));
    EXPECT_EQ(directional_plc(f, w, Direction::Xneg).field, directional_plc(PlanarField(mx), w, Direction::Xpos).field);
    EXPECT_EQ(directional_plc(f, w, Direction::Yneg).field, directional_plc(PlanarField(my), w, Direction::Ypos).field);
  }
}

TEST(Compactify, DirectionalPullbackExact) {
  std::mt19937 rng(53);
  const WeightVector ws[] = {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}};
  for (int i = 0; i < 40; ++i) {
    PlanarField f = oracle::random_field(rng, 2 + i % 5);
    for (auto w : ws)
      for (Direction d : {Direction::Xpos, Direction::Xneg, Direction::Ypos, Direction::Yneg}) {
        ChartField cf = directional_plc(f, w, d);
        for (int k = 0; k < 3; ++k) {
          Rational u = random_nonzero(rng), v = random_nonzero(rng);
          EXPECT_TRUE(oracle::pullback_holds(f, cf, u, v)) << to_string(f) << " " << to_string(w) << " " << to_string(d);
        }
      }
  }
}

TEST(Compactify, HomogeneousReduction) {
  // With weight (1,1) the x+ chart is the Poincare chart x = 1/v, y = u/v:
  // U = v^(d+1) (Q - u P)(1/v, u/v), V = -v^(d+2) P(1/v, u/v) for top level d.
  std::mt19937 rng(55);
  for (int i = 0; i < 100; ++i) {
    PlanarField f = oracle::random_field(rng, 2 + i % 6);
    ChartField cf = directional_plc(f, WeightVector(1, 1), Direction::Xpos);
    std::int64_t d = max_level(f, WeightVector(1, 1));
    Rational u = random_nonzero(rng), v = random_nonzero(rng);
    Rational x = 1 / v, y = u / v;
    Rational P = f.x_component()(x, y), Q = f.y_component()(x, y);
    EXPECT_EQ(cf.u_component()(u, v), oracle::rpow(v, d + 1) * (Q - u * P));
    EXPECT_EQ(cf.v_component()(u, v), -oracle::rpow(v, d + 2) * P);
  }
}

TEST(Compactify, SupportFollowsPolytopeMap) {
  std::mt19937 rng(57);
  const WeightVector ws[] = {{1, 1}, {1, 2}, {3, 2}};
  for (int i = 0; i < 100; ++i) {
    PlanarField f = oracle::random_field(rng, 2 + i % 6);
    Polytope p = build_polytope(f);
    for (auto w : ws)
      for (Direction d : {Direction::Xpos, Direction::Xneg, Direction::Ypos, Direction::Yneg})
        EXPECT_EQ(directional_plc(f, w, d).field.support(), polytope_after_plc(p, w, d).support);
  }
}

TEST(Compactify, LevelDataGoldens) {
  Polytope p = build_polytope(parse_field(kQuad));
  SimpleFan fan = fan_for_polytope(p);
  LevelData L = level_data(p, fan);
  ASSERT_EQ(L.M.size(), 9u);
  EXPECT_EQ(L.M.front(), 0);
  EXPECT_EQ(L.M.back(), 0);
  EXPECT_EQ(L.M[2], -5);  // (-2,-1)
  EXPECT_EQ(L.gamma[2], (std::vector<LatticePoint>{{2, 1}, {3, -1}}));
  EXPECT_EQ(L.M[4], -3);  // (-1,-1)
  EXPECT_EQ(L.gamma[4], (std::vector<LatticePoint>{{1, 2}, {2, 1}}));
  for (std::size_t j = 1; j + 1 < L.M.size(); ++j) EXPECT_LT(L.M[j], 0) << j;
}

TEST(Compactify, GammaIsVertexOrUpperSegment) {
  std::mt19937 rng(59);
  for (int i = 0; i < 200; ++i) {
    PlanarField f = oracle::random_field(rng, 2 + i % 6);
    Polytope p = build_polytope(f);
    SimpleFan fan = fan_for_polytope(p);
    LevelData L = level_data(p, fan);
    auto upper = split_boundary(p).upper;
    for (std::size_t j = 1; j < fan.s(); ++j) {
      std::set<LatticePoint> g(L.gamma[j].begin(), L.gamma[j].end());
      std::set<LatticePoint> ends;
      for (auto q : g)
        if (std::find(p.hull.begin(), p.hull.end(), q) != p.hull.end()) ends.insert(q);
      if (ends.size() == 1) continue;  // a vertex
      ASSERT_EQ(ends.size(), 2u);
      bool on_upper = std::any_of(upper.begin(), upper.end(), [&](const Segment& s) {
        return ends == std::set<LatticePoint>{s.from, s.to};
      });
      EXPECT_TRUE(on_upper) << to_string(f) << " xi=" << to_string(fan.vectors[j]);
    }
  }
}

TEST(Compactify, FanChartGoldens) {
  SimpleFan poincare = complete_fan({{-1, -1}}, {});
  ChartField c1 = fan_chart_field(parse_field("dx = x; dy = 0"), poincare, 1);
  EXPECT_EQ(c1.field, uv("dx = -x; dy = -y"));
  EXPECT_EQ(c1.divisor, Divisor::V);
  EXPECT_THROW(fan_chart_field(parse_field("dx = x; dy = 0"), poincare, 0), DomainError);
  EXPECT_THROW(fan_chart_field(parse_field("dx = x; dy = 0"), poincare, 3), DomainError);

  // Chart 1 of the Poincare fan agrees with the (1,1) x+ chart up to (u,v) -> (u,v)
  // on a homogeneous field of degree 2.
  PlanarField h = parse_field("dx = x^2 - 3*x*y; dy = 2*y^2 + x^2");
  EXPECT_EQ(fan_chart_field(h, poincare, 1).field, directional_plc(h, WeightVector(1, 1), Direction::Xpos).field);

  // A corrupted level table is caught by the exponent guard.
  Polytope p = build_polytope(h);
  LevelData L = level_data(p, poincare);
  L.M[1] += 5;
  EXPECT_THROW(fan_chart_field(h, poincare, L, 1), InternalError);
}

TEST(Compactify, FanChartPullbackExact) {
  std::mt19937 rng(61);
  PlanarField X = parse_field(kQuad);
  std::vector<PlanarField> fields{X};
  for (int i = 0; i < 25; ++i) fields.push_back(oracle::random_field(rng, 2 + i % 6));
  for (const auto& f : fields) {
    SimpleFan fan = fan_for_polytope(build_polytope(f));
    for (std::size_t j = 1; j <= fan.s(); ++j) {
      ChartField cf = fan_chart_field(f, fan, j);
      for (int k = 0; k < 4; ++k) {
        Rational u = random_nonzero(rng), v = random_nonzero(rng);
        EXPECT_TRUE(oracle::pullback_holds(f, cf, u, v)) << to_string(f) << " chart " << j;
      }
    }
  }
}

TEST(Compactify, DivisorInvariance) {
  std::mt19937 rng(63);
  for (int i = 0; i < 100; ++i) {
    PlanarField f = oracle::random_field(rng, 2 + i % 6);
    SimpleFan fan = fan_for_polytope(build_polytope(f));
    for (std::size_t j = 1; j <= fan.s(); ++j) {
      ChartField cf = fan_chart_field(f, fan, j);
      if (cf.divisor == Divisor::V || cf.divisor == Divisor::UV)
        EXPECT_TRUE(cf.v_component()(Rational(3, 7), Rational(0)) == 0 &&
                    cf.v_component()(Rational(-2), Rational(0)) == 0);
      if (cf.divisor == Divisor::U || cf.divisor == Divisor::UV)
        EXPECT_TRUE(cf.u_component()(Rational(0), Rational(5, 3)) == 0);
      Poly2 U = cf.u_component(), V = cf.v_component();
      if (cf.divisor != Divisor::U)
        for (const auto& [e, c] : V.terms()) EXPECT_GE(e.n, 1);
      if (cf.divisor != Divisor::V)
        for (const auto& [e, c] : U.terms()) EXPECT_GE(e.m, 1);
    }
  }
}

TEST(Compactify, AdjacentFanChartsConjugate) {
  std::mt19937 rng(65);
  std::vector<PlanarField> fields{parse_field(kQuad)};
  for (int i = 0; i < 15; ++i) fields.push_back(oracle::random_field(rng, 3 + i % 4, 3, 3));
  for (const auto& f : fields) {
    SimpleFan fan = fan_for_polytope(build_polytope(f));
    for (std::size_t j = 1; j < fan.s(); ++j) {
      ChartField a = fan_chart_field(f, fan, j), b = fan_chart_field(f, fan, j + 1);
      for (int k = 0; k < 20; ++k) expect_conjugate(a, b, random_positive(rng), random_positive(rng), 1e-10);
    }
  }
}

TEST(Compactify, FanChartMatchesDirectionalChart) {
  // In the fan of the (1,2)-example, chart B6 = ((-2,-3),(-1,-2)) and the (1,2) x+
  // chart are related by (u', v') = (u, u^2 v).
  PlanarField X = parse_field(kQuad);
  SimpleFan fan = fan_for_polytope(build_polytope(X));
  ChartField b6 = fan_chart_field(X, fan, 6);
  ChartField xp = directional_plc(X, WeightVector(1, 2), Direction::Xpos);
  std::mt19937 rng(67);
  for (int k = 0; k < 20; ++k) expect_conjugate(b6, xp, random_positive(rng), random_positive(rng), 1e-10);
}

TEST(Compactify, PolarGoldens) {
  for (double th : {0.0, 0.7, 2.1, 4.0})
    for (double r : {0.0, 0.3, 1.7}) {
      PolarField radial = polar_field(parse_field("dx = x; dy = y"), WeightVector(1, 1));
      EXPECT_NEAR(radial.eval_theta_dot(std::cos(th), std::sin(th), r), 0, 1e-15);
      EXPECT_NEAR(radial.eval_r_dot(std::cos(th), std::sin(th), r), -r, 1e-15);
      PolarField rot = polar_field(parse_field("dx = -y; dy = x"), WeightVector(1, 1));
      EXPECT_NEAR(rot.eval_theta_dot(std::cos(th), std::sin(th), r), 1, 1e-15);
      EXPECT_NEAR(rot.eval_r_dot(std::cos(th), std::sin(th), r), 0, 1e-15);
    }
  EXPECT_TRUE(polar_field(parse_field("dx = x; dy = y"), WeightVector(1, 1)).theta_dot.empty());
}

TEST(Compactify, PolarRDotVanishesOnDivisor) {
  std::mt19937 rng(69);
  for (int i = 0; i < 100; ++i) {
    PolarField pf = polar_field(oracle::random_field(rng, 2 + i % 6), WeightVector(1 + i % 2, 1 + (i / 2) % 2 * 2));
    for (const auto& [e, c] : pf.r_dot) EXPECT_GE(e.r, 1);
    for (const auto& [e, c] : pf.theta_dot) EXPECT_GE(e.r, 0);
    EXPECT_TRUE(r_slice(pf.r_dot, 0).empty());
  }
}

TEST(Compactify, PolarChainRule) {
  // x = Cs/r^a, y = Sn/r^b gives  d/dt (x, y) = r^(delta-1) (P, Q)(x, y).
  std::mt19937 rng(71);
  const WeightVector ws[] = {{1, 1}, {1, 2}, {2, 1}, {2, 3}};
  for (auto w : ws) {
    auto trig = cached_trig(w);
    const double a = double(w.alpha), b = double(w.beta);
    for (int i = 0; i < 10; ++i) {
      PlanarField f = oracle::random_field(rng, 2 + i % 5, 3, 3);
      PolarField pf = polar_field(f, w);
      for (int k = 0; k < 5; ++k) {
        double th = std::uniform_real_distribution<double>(0, trig->period())(rng);
        double r = random_positive(rng);
        auto [cs, sn] = trig->eval(th);
        double td = pf.eval_theta_dot(cs, sn, r), rd = pf.eval_r_dot(cs, sn, r);
        auto [dcs, dsn] = trig->rhs(cs, sn);
        double xd = dcs * td / std::pow(r, a) - a * cs * std::pow(r, -a - 1) * rd;
        double yd = dsn * td / std::pow(r, b) - b * sn * std::pow(r, -b - 1) * rd;
        double x = cs / std::pow(r, a), y = sn / std::pow(r, b);
        double s = std::pow(r, double(pf.delta - 1));
        double P = s * f.x_component().eval(x, y), Q = s * f.y_component().eval(x, y);
        double scale = std::max({1.0, std::abs(P), std::abs(Q)});
        EXPECT_NEAR(xd, P, 1e-8 * scale) << to_string(f) << " " << to_string(w);
        EXPECT_NEAR(yd, Q, 1e-8 * scale) << to_string(f) << " " << to_string(w);
      }
    }
  }
}
