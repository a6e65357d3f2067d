#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace plinf;

namespace {

const char* kQuad = "dx = y^3 - x^3*y; dy = -x^3 + x*y^3";
const char* kQuartic = "dx = y^2 + x^3*y^2; dy = x^2 + x^2*y^3";

oracle::Poly to_oracle(const Poly1& p) { return p.coeffs(); }

// min over a log grid in each open quadrant of |X(x,y)| relative to the sum of
// its monomial sizes; zero iff the field vanishes somewhere (up to resolution).
double min_relative_size(const PlanarField& g, int N = 200) {
  double best = 1e300;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double x = sx * std::pow(10.0, -1.0 + 2.0 * i / (N - 1));
          double y = sy * std::pow(10.0, -1.0 + 2.0 * j / (N - 1));
          double P = 0, Q = 0, S = 0;
          for (const auto& [e, c] : g.terms()) {
            double mono = std::pow(x, double(e.m)) * std::pow(y, double(e.n));
            P += to_double(c.a) * mono * x;
            Q += to_double(c.b) * mono * y;
            S += (std::abs(to_double(c.a) * x) + std::abs(to_double(c.b) * y)) * std::abs(mono);
          }
          best = std::min(best, (std::abs(P) + std::abs(Q)) / S);
        }
  return best;
}

PlanarField random_perturbation(std::mt19937& rng) {
  // X plus arbitrary terms a1 x y^2 + a2 x^3 + a3 x^2 y in P and b1 y^3 + b2 x^2 y + b3 x y^2 in Q.
  PlanarField::TermMap m = parse_field(kQuad).terms();
  std::uniform_int_distribution<int> c(-6, 6), d(1, 4);
  for (LatticePoint p : {LatticePoint{0, 2}, LatticePoint{2, 0}, LatticePoint{1, 1}}) {
    CoeffPair cp{Rational(c(rng)) / d(rng), Rational(c(rng)) / d(rng)};
    if (cp.a != 0 || cp.b != 0) m[p] = cp;
  }
  return PlanarField(std::move(m));
}

}  // namespace

TEST(Infinity, DivisorSingularityGoldens) {
  PlanarField X = parse_field(kQuad);
  WeightVector w(1, 2);
  auto xp = divisor_singularities(directional_plc(X, w, Direction::Xpos));
  ASSERT_EQ(xp.size(), 2u);
  EXPECT_EQ(*xp[0].position->exact, 0);
  EXPECT_TRUE(xp[0].at_origin);
  EXPECT_EQ(*xp[1].position->exact, Rational(1, 2));
  auto yp = divisor_singularities(directional_plc(X, w, Direction::Ypos));
  ASSERT_EQ(yp.size(), 2u);
  EXPECT_NEAR(yp[0].coordinate(), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(yp[1].coordinate(), std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(yp[0].position->exact);

  PlanarField rot = parse_field("dx = -y; dy = x");
  for (Direction d : {Direction::Xpos, Direction::Xneg, Direction::Ypos, Direction::Yneg})
    EXPECT_TRUE(divisor_singularities(directional_plc(rot, WeightVector(1, 1), d)).empty());
}

TEST(Infinity, ClassifyGoldens) {
  PlanarField X = parse_field(kQuad);
  auto cf = directional_plc(X, WeightVector(1, 2), Direction::Xpos);
  auto recs = analyse_chart(cf);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].cls, SingularityClass::Degenerate);
  const auto& h = recs[1];
  EXPECT_EQ(h.cls, SingularityClass::Hyperbolic);
  EXPECT_EQ(*h.eig_u.exact, Rational(-1, 4));
  EXPECT_EQ(*h.eig_v.exact, Rational(-1, 8));
  EXPECT_TRUE(h.characteristic_orbit);
}

TEST(Infinity, CurveOfSingularities) {
  PlanarField radial = parse_field("dx = x; dy = y");
  auto cf = directional_plc(radial, WeightVector(1, 1), Direction::Xpos);
  auto recs = analyse_chart(cf);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_TRUE(recs[0].curve);
  EXPECT_EQ(recs[0].cls, SingularityClass::CurveOfSingularities);
  EXPECT_TRUE(recs[0].characteristic_orbit);

  // A point of that curve, treated as an isolated record, has eigenvalues (0, -1).
  SingularityRecord pt = recs[0];
  pt.curve = false;
  pt.position = RealRoot{Poly1({Rational(0), Rational(1)}), 0, 0, Rational(0)};
  auto c = classify(cf, pt);
  EXPECT_EQ(c.eig_u.sign, 0);
  EXPECT_EQ(*c.eig_v.exact, -1);
  EXPECT_EQ(c.cls, SingularityClass::SemiHyperbolic);
  EXPECT_TRUE(c.characteristic_orbit);
}

TEST(Infinity, JacobianMatchesFiniteDifferences) {
  std::mt19937 rng(101);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    PlanarField f = oracle::random_field(rng, 3 + i % 4);
    Polytope p = build_polytope(f);
    std::vector<ChartField> charts;
    for (Direction d : {Direction::Xpos, Direction::Ypos, Direction::Xneg, Direction::Yneg})
      charts.push_back(directional_plc(f, std::array{WeightVector(1, 1), WeightVector(1, 2), WeightVector(2, 1), WeightVector(2, 3)}[i % 4], d));
    if (!p.is_point() && is_favorable(p)) {
      SimpleFan fan = fan_for_polytope(p);
      for (std::size_t j = 1; j <= fan.s(); ++j) charts.push_back(fan_chart_field(f, fan, j));
    }
    for (const auto& cf : charts) {
      auto U = cf.u_component(), V = cf.v_component();
      for (const auto& r : analyse_chart(cf)) {
        if (r.curve) continue;
        double u0 = r.axis == Axis::V ? r.coordinate() : 0, v0 = r.axis == Axis::U ? r.coordinate() : 0;
        const double h = 1e-6;
        double Uu = (U.eval(u0 + h, v0) - U.eval(u0 - h, v0)) / (2 * h);
        double Uv = (U.eval(u0, v0 + h) - U.eval(u0, v0 - h)) / (2 * h);
        double Vu = (V.eval(u0 + h, v0) - V.eval(u0 - h, v0)) / (2 * h);
        double Vv = (V.eval(u0, v0 + h) - V.eval(u0, v0 - h)) / (2 * h);
        double scale = 1 + std::abs(Uu) + std::abs(Uv) + std::abs(Vu) + std::abs(Vv);
        EXPECT_NEAR(Uu, r.eig_u.approx, 1e-5 * scale) << cf.label();
        EXPECT_NEAR(Vv, r.eig_v.approx, 1e-5 * scale) << cf.label();
        // The divisor is invariant, so the Jacobian is triangular there.
        if (r.axis == Axis::V) EXPECT_NEAR(Vu, 0, 1e-5 * scale) << cf.label();
        if (r.axis == Axis::U) EXPECT_NEAR(Uv, 0, 1e-5 * scale) << cf.label();
        if (r.eig_u.sign != 0) EXPECT_EQ(r.eig_u.sign, r.eig_u.approx > 0 ? 1 : -1);
        if (r.eig_v.sign != 0) EXPECT_EQ(r.eig_v.sign, r.eig_v.approx > 0 ? 1 : -1);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Infinity, SturmAgreesWithBisection) {
  std::mt19937 rng(103);
  int compared = 0, with_roots = 0;
  for (int i = 0; compared < 200; ++i) {
    PlanarField f = oracle::random_field(rng, 3 + i % 5, 4, 4);
    Direction d = std::array{Direction::Xpos, Direction::Ypos, Direction::Xneg, Direction::Yneg}[i % 4];
    auto cf = directional_plc(f, WeightVector(1, 1 + i % 3), d);
    Poly1 r = detail::axis_data(cf, Axis::V).restriction;
    if (r.is_zero()) continue;
    auto sturm = real_roots(r);
    auto bis = oracle::bisection_roots(to_oracle(r));
    ASSERT_EQ(sturm.size(), bis.size()) << r.str("u");
    for (std::size_t k = 0; k < bis.size(); ++k) EXPECT_NEAR(sturm[k].approx(), bis[k], 1e-9) << r.str("u");
    with_roots += !bis.empty();
    ++compared;
  }
  EXPECT_GT(with_roots, 50);
}

TEST(Infinity, TransverseZeroOnlyWhenDegenerate) {
  // On a fan chart a zero transverse eigenvalue at u != 0 forces a common root of
  // the segment polynomials, so it cannot occur for non-degenerate fields.
  std::mt19937 rng(107);
  int fields = 0;
  for (int i = 0; fields < 80 && i < 2000; ++i) {
    PlanarField f = oracle::random_field(rng, 3 + i % 5);
    Polytope p = build_polytope(f);
    if (p.is_point() || !is_favorable(p)) continue;
    if (!check_nondegenerate(upper_principal_part(f)).nondegenerate) continue;
    ++fields;
    SimpleFan fan = fan_for_polytope(p);
    for (std::size_t j = 1; j <= fan.s(); ++j)
      for (const auto& r : analyse_chart(fan_chart_field(f, fan, j))) {
        if (r.curve || r.at_origin) continue;
        EXPECT_NE(r.transverse().sign, 0) << to_string(f) << " chart " << j;
        EXPECT_NE(r.cls, SingularityClass::Degenerate) << to_string(f);
      }
  }
  EXPECT_EQ(fields, 80);
}

TEST(Infinity, NondegeneracyGoldens) {
  auto upp = upper_principal_part(parse_field(kQuad));
  EXPECT_TRUE(check_nondegenerate(upp).nondegenerate);
  for (const auto& [seg, g] : upp.per_segment) EXPECT_GT(min_relative_size(g), 1e-2) << to_string(g);

  // Sheared field: the restriction vanishes along x = -lambda y.
  for (int lam : {2, 3}) {
    auto s = upper_principal_part(shear(parse_field(kQuartic), lam));
    auto res = check_nondegenerate(s);
    ASSERT_FALSE(res.nondegenerate);
    bool on_line = false;
    for (const auto& wt : res.witnesses)
      if (std::abs(wt.x / wt.y + lam) < 1e-9) {
        on_line = true;
        PlanarField g = s.field.restrict_to([&](LatticePoint q) { return wt.segment.contains(q); });
        EXPECT_EQ(g.x_component()(Rational(-lam), Rational(1)), 0);
        EXPECT_EQ(g.y_component()(Rational(-lam), Rational(1)), 0);
        EXPECT_LT(min_relative_size(g), 2e-2);
      }
    EXPECT_TRUE(on_line);
  }

  // q = 0 with p(t) = 1 + t^2 has no real zero; p(t) = 1 - t^2 does.
  EXPECT_TRUE(check_nondegenerate(upper_principal_part(parse_field("dx = x^3 + x*y^2; dy = 0"))).nondegenerate);
  auto bad = check_nondegenerate(upper_principal_part(parse_field("dx = x^3 - x*y^2; dy = 0")));
  EXPECT_FALSE(bad.nondegenerate);
  EXPECT_EQ(bad.witnesses.size(), 2u);
}

TEST(Infinity, NondegeneracyAgreesWithGridScan) {
  std::mt19937 rng(109);
  int agree = 0, total = 0;
  for (int i = 0; total < 60; ++i) {
    PlanarField f = oracle::random_field(rng, 3 + i % 3, 3, 3);
    Polytope p = build_polytope(f);
    if (p.is_point() || !is_favorable(p)) continue;
    auto upp = upper_principal_part(f);
    auto res = check_nondegenerate(upp);
    ++total;
    // Every witness is an actual zero of its segment restriction.
    for (const auto& wt : res.witnesses) {
      PlanarField g = upp.field.restrict_to([&](LatticePoint q) { return wt.segment.contains(q); });
      double scale = 1 + std::abs(g.x_component().eval(wt.x, wt.y * 1.5)) + std::abs(g.y_component().eval(wt.x * 1.5, wt.y));
      EXPECT_NEAR(g.x_component().eval(wt.x, wt.y), 0, 1e-7 * scale) << to_string(f);
      EXPECT_NEAR(g.y_component().eval(wt.x, wt.y), 0, 1e-7 * scale) << to_string(f);
    }
    if (res.nondegenerate) {
      bool clear = true;
      for (const auto& [seg, g] : upp.per_segment)
        if (min_relative_size(g, 60) < 1e-6) clear = false;
      agree += clear;
    } else {
      ++agree;
    }
  }
  EXPECT_EQ(agree, total);
}

TEST(Infinity, SingularityCurveCheck) {
  auto upp = [](const char* s) { return upper_principal_part(parse_field(s)); };
  EXPECT_TRUE(check_no_singularity_curve(upp(kQuad)));
  EXPECT_TRUE(check_no_singularity_curve(upp("dx = x; dy = y")));
  // (x - y)(x d/dx + y d/dy)
  EXPECT_FALSE(check_no_singularity_curve(upp("dx = x^2 - x*y; dy = x*y - y^2")));
  // (x^2 + y^2 + 1)(x d/dx + 2 y d/dy) has no real curve of zeros.
  EXPECT_TRUE(check_no_singularity_curve(upp("dx = x^3 + x*y^2 + x; dy = 2*x^2*y + 2*y^3 + 2*y")));
  // Axis factors are not curves in (R*)^2.
  EXPECT_TRUE(check_no_singularity_curve(upp("dx = x*y^3 - x^3*y^2; dy = -x^3*y + x*y^4")));
}

TEST(Verdict, QuadrilateralIsEquivalent) {
  auto rep = equivalence_verdict(parse_field(kQuad));
  EXPECT_EQ(rep.verdict, Verdict::Equivalent);
  EXPECT_TRUE(rep.reasons.empty());
  EXPECT_TRUE(rep.hypotheses.all());
  EXPECT_EQ(rep.principal, parse_field(kQuad));
  ASSERT_EQ(rep.inventory_x.size(), 8u);
  for (const auto& m : rep.match_table) {
    EXPECT_TRUE(m.same_class);
    EXPECT_TRUE(m.index_principal.has_value());
  }
}

TEST(Verdict, PerturbedQuadrilateralFields) {
  std::mt19937 rng(113);
  PlanarField X = parse_field(kQuad);
  auto base = equivalence_verdict(X);
  for (int i = 0; i < 10; ++i) {
    PlanarField Y = random_perturbation(rng);
    auto rep = equivalence_verdict(Y);
    EXPECT_EQ(rep.verdict, Verdict::Equivalent) << to_string(Y);
    EXPECT_EQ(rep.principal, X);
    ASSERT_EQ(rep.inventory_x.size(), base.inventory_x.size());
    for (std::size_t c = 0; c < rep.inventory_x.size(); ++c) {
      const auto& a = rep.inventory_x[c].records;
      const auto& b = base.inventory_x[c].records;
      ASSERT_EQ(a.size(), b.size()) << rep.inventory_x[c].chart;
      for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_TRUE(same_point(a[k], b[k]));
        EXPECT_TRUE(same_classification(a[k], b[k]));
      }
    }
  }
}

TEST(Verdict, FailingHypotheses) {
  auto fail = equivalence_verdict(shear(parse_field(kQuartic), 2));
  EXPECT_EQ(fail.verdict, Verdict::HypothesesFail);
  ASSERT_FALSE(fail.reasons.empty());
  EXPECT_EQ(fail.reasons.front(), "non_degenerate_upper_part");

  auto point = equivalence_verdict(parse_field("dx = x^2*y; dy = x*y^2"));
  EXPECT_EQ(point.verdict, Verdict::HypothesesFail);
  EXPECT_EQ(point.reasons, std::vector<std::string>{"no upper boundary"});

  auto unfav = equivalence_verdict(parse_field(kQuartic));
  EXPECT_EQ(unfav.verdict, Verdict::HypothesesFail);
  EXPECT_EQ(unfav.reasons, std::vector<std::string>{"polytope not favorable; shear with make_favorable"});
  auto sheared = equivalence_verdict(parse_field(kQuartic), VerdictOptions{true});
  EXPECT_NE(sheared.lambda, 0);
  EXPECT_NE(sheared.reasons, unfav.reasons);

  EXPECT_THROW(equivalence_verdict(PlanarField()), DomainError);
}

TEST(ReturnMap, RotationIsInconclusive) {
  auto r = return_map_test(parse_field("dx = -y^3; dy = x^3"), WeightVector(1, 1));
  EXPECT_NEAR(r.period, 2 * M_PI, 1e-9);
  EXPECT_EQ(r.sign_full, 0);
  EXPECT_EQ(r.status, "inconclusive: zero integral");
}

TEST(ReturnMap, RadialPartOnTheTopLevel) {
  // r is an inverse radius, so an outward radial part c gives G = -c and the integral is -2 pi c.
  for (auto [num, den] : {std::pair{1, 2}, std::pair{-1, 3}}) {
    std::string c = std::to_string(num) + "/" + std::to_string(den);
    std::string s = "dx = -x^2*y - y^3 + " + c + "*x^3 + " + c + "*x*y^2; dy = x^3 + x*y^2 + " + c + "*x^2*y + " + c +
                    "*y^3 + x";
    auto r = return_map_test(parse_field(s), WeightVector(1, 1));
    EXPECT_NEAR(r.integral_full, -2 * M_PI * num / den, 1e-8) << s;
    EXPECT_NEAR(r.integral_principal, r.integral_full, 1e-8);
    EXPECT_TRUE(r.agreement);
    EXPECT_EQ(r.sign_full, num > 0 ? -1 : 1);
    EXPECT_EQ(r.status, "sign agreement at linear order");
  }
  EXPECT_NEAR(return_map_test(parse_field("dx = -x^2*y - y^3 + x^3 + x*y^2; dy = x^3 + x*y^2 + x^2*y + y^3"), WeightVector(1, 1))
                  .integral_full,
              -2 * M_PI, 1e-8);
}

TEST(ReturnMap, DivisorSingularitiesRejected) {
  EXPECT_THROW(return_map_test(parse_field(kQuad), WeightVector(1, 2)), HypothesisError);
  EXPECT_THROW(return_map_test(parse_field("dx = x^3 + x*y^2; dy = x^2*y + y^3"), WeightVector(1, 1)),
               HypothesisError);
  EXPECT_THROW(return_map_test(PlanarField(), WeightVector(1, 1)), DomainError);
}

TEST(Verdict, SingularDivisorAtAVertexFace) {
  // The vertex (2,4) has a = 0, so the divisor of the chart after (-1,-2) is a curve of
  // singular points for X and for its principal part alike.
  PlanarField f = parse_field("dx = x^5*y^3 - 2*x^2*y - y^2 - 1; dy = -5*x^4*y^4 - x^2*y^5 - 5/2*x*y^2 - x");
  auto rep = equivalence_verdict(f);
  EXPECT_TRUE(rep.hypotheses.all());
  EXPECT_EQ(rep.verdict, Verdict::Equivalent);
  int curves = 0;
  for (const auto& inv : rep.inventory_x)
    for (const auto& r : inv.records) curves += r.curve;
  EXPECT_GT(curves, 0);
  for (const auto& m : rep.match_table) EXPECT_TRUE(m.same_class);
}
