#include <catch2/catch_amalgamated.hpp>

#include "slablb/lemma_lab.hpp"
#include "slablb/rng.hpp"

using namespace slablb;

TEST_CASE("tweak a line through two prescribed points") {
  // start from p(x) = x, hit (0,1) and (1,3): result is 2x + 1
  const TweakResult t =
      tweak_to_interpolate(UniPoly({Rational(0), Rational(1)}),
                           {{Rational(0), Rational(1)},
                            {Rational(1), Rational(3)}});
  REQUIRE(t.tweaked == UniPoly({Rational(1), Rational(2)}));
  REQUIRE(t.deltas == std::vector<Rational>{Rational(1), Rational(1)});
  REQUIRE(t.system_det == Rational(1));
}

TEST_CASE("tweak is a fixed point on targets already satisfied") {
  const UniPoly p({Rational(2), Rational(-1), Rational(3)});
  std::vector<TweakTarget> targets;
  for (long long x : {-1, 0, 2})
    targets.push_back({Rational(x), p.eval(Rational(x))});
  const TweakResult t = tweak_to_interpolate(p, targets);
  REQUIRE(t.tweaked == p);
  for (const auto& d : t.deltas) REQUIRE(is_zero(d));
}

TEST_CASE("tweak input validation") {
  const UniPoly p({Rational(1), Rational(1)});
  REQUIRE_THROWS_AS(tweak_to_interpolate(p, {}), std::invalid_argument);
  // degree bound below the polynomial degree
  REQUIRE_THROWS_AS(
      tweak_to_interpolate(p, {{Rational(0), Rational(1)}}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      tweak_to_interpolate(p, {{Rational(0), Rational(1)},
                               {Rational(0), Rational(2)}}),
      std::invalid_argument);
}

TEST_CASE("agreement interval of identical polynomials spans the domain") {
  const UniPoly p({Rational(1), Rational(0), Rational(1)});
  const IntervalMeasurement m =
      agreement_interval(p, p, Rational(1, 2), -2.0, 2.0);
  REQUIRE(m.interval_length == Catch::Approx(4.0));
  REQUIRE(is_zero(m.eta));
  REQUIRE(std::isinf(m.bound));
}

TEST_CASE("agreement interval is empty when the gap always exceeds w") {
  // x^2 vs x^2 + 1: |diff| = 1 everywhere, w = 1/2
  const UniPoly p = UniPoly::monomial(2);
  UniPoly q = p;
  q.set_coeff(0, Rational(1));
  const IntervalMeasurement m =
      agreement_interval(p, q, Rational(1, 2), -2.0, 2.0);
  REQUIRE(m.interval_length == 0.0);
  REQUIRE(m.eta == Rational(1));
}

TEST_CASE("agreement interval with a linear gap has a known length") {
  // diff = x/4, w = 1/4: |diff| <= w on |x| <= 1, length 2.
  // eta = 1/4 and U = binom(3,2) = 3, so the shape bound is (w/eta)^(1/3) = 1.
  const UniPoly p = UniPoly::monomial(2);
  UniPoly q = p;
  q.set_coeff(1, Rational(1, 4));
  const IntervalMeasurement m =
      agreement_interval(p, q, Rational(1, 4), -2.0, 2.0);
  REQUIRE(m.capital_u == 3);
  REQUIRE(m.eta == Rational(1, 4));
  REQUIRE(m.bound == Catch::Approx(1.0));
  REQUIRE(m.interval_length == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("coefficient gaps after slicing") {
  // p1 - p2 = x0 x2: fixing x2 = c leaves gap |c| on the x0 monomial
  MultiPoly p1(3, 2), p2(3, 2);
  p1.add_term({1, 0, 1}, Rational(1));
  p1.add_term({0, 1, 0}, Rational(4));
  p2.add_term({0, 1, 0}, Rational(4));
  const SliceGaps g =
      coefficient_gap_after_slice(p1, p2, {{2, Rational(-3, 2)}});
  REQUIRE(g.max_gap == Rational(3, 2));
  REQUIRE(g.gaps.at(ExponentTuple{1, 0, 0}) == Rational(3, 2));
  // slicing at the root of the gap kills it
  const SliceGaps z = coefficient_gap_after_slice(p1, p2, {{2, Rational(0)}});
  REQUIRE(is_zero(z.max_gap));
}

TEST_CASE("slicing chain flags a gap the scan variable cannot shrink") {
  Rng rng(7, 0);
  const MultiPoly p1 = random_multilinear(rng, 3);
  MultiPoly p2 = p1;
  p2.add_term(ExponentTuple(3, 0), Rational(1));  // constant-only gap
  const VerificationReport r =
      verify_slicing_chain(p1, p2, 0.1, Rational(1), 2, 7);
  bool flagged = false;
  for (const auto& c : r.checks)
    flagged = flagged || c.note == "gap not in sliced coefficient";
  REQUIRE(flagged);
}

TEST_CASE("matrix rows follow the monomial-evaluation layout") {
  DetXInstance inst;
  inst.G = UniPoly({Rational(2), Rational(1)});  // x + 2
  inst.F = UniPoly({Rational(0), Rational(0), Rational(1)});  // x^2
  inst.delta1 = 1;
  inst.epsilon = Rational(0);
  for (long long x : {1, 2, 3})
    inst.points.push_back(
        {Rational(x), inst.F.eval(Rational(x)) / inst.G.eval(Rational(x))});
  inst.lambda_min = detx_lambda(inst.points);
  inst.validate();
  const ExactMatrix a = detx_build_matrix(inst);
  REQUIRE(a.rows() == 3);
  // row k = (1, x_k, y_k)
  REQUIRE(a.at(1, 0) == Rational(1));
  REQUIRE(a.at(1, 1) == Rational(2));
  REQUIRE(a.at(1, 2) == Rational(1));  // 4 / 4
  REQUIRE(a.at(2, 2) == Rational(9, 5));
}

TEST_CASE("worked 2x2 identity instance evaluates to 1 on both sides") {
  DetXInstance inst;
  inst.G = UniPoly({Rational(1), Rational(1)});  // x + 1
  inst.F = UniPoly({Rational(0), Rational(1)});  // x
  inst.delta1 = 0;
  inst.epsilon = Rational(0);
  inst.points = {{Rational(1), Rational(1, 2)}, {Rational(2), Rational(2, 3)}};
  inst.lambda_min = Rational(1);
  const CheckResult c = detx_verify(inst);
  REQUIRE(c.pass);
  const Rational det_a = det_exact(detx_build_matrix(inst));
  Rational g_prod(1);
  for (const auto& pt : inst.points) g_prod *= abs(inst.G.eval(pt.x));
  REQUIRE(abs(det_a) * g_prod == Rational(1));
  REQUIRE(abs(resultant(inst.G, inst.F)) *
              abs(inst.points[1].x - inst.points[0].x) == Rational(1));
}

TEST_CASE("zero resultant is reported as vacuous") {
  DetXInstance inst;
  inst.G = UniPoly({Rational(1), Rational(1)});
  inst.F = inst.G * UniPoly({Rational(0), Rational(1)});  // shares x + 1
  inst.delta1 = inst.F.degree() - 1;
  inst.epsilon = Rational(0);
  for (long long x : {0, 1, 2})
    inst.points.push_back(
        {Rational(x), inst.F.eval(Rational(x)) / inst.G.eval(Rational(x))});
  inst.lambda_min = detx_lambda(inst.points);
  const CheckResult c = detx_verify(inst);
  REQUIRE(c.pass);
  REQUIRE(c.note == "vacuous case");
}

TEST_CASE("degenerate single-point instance still satisfies the identity") {
  // deg F = 0 forces a 1x1 matrix: row = (y)
  DetXInstance inst;
  inst.G = UniPoly({Rational(1), Rational(1)});  // x + 1
  inst.F = UniPoly::constant(Rational(3));
  inst.delta1 = -1;
  inst.epsilon = Rational(0);
  inst.points = {{Rational(1), Rational(3, 2)}};
  inst.lambda_min = Rational(0);
  REQUIRE(inst.ell() == 1);
  const CheckResult c = detx_verify(inst);
  REQUIRE(c.pass);
}

TEST_CASE("instance validation rejects broken invariants") {
  DetXInstance inst;
  inst.G = UniPoly({Rational(1), Rational(2)});  // not monic
  inst.F = UniPoly({Rational(0), Rational(1)});
  inst.delta1 = 0;
  inst.epsilon = Rational(0);
  inst.points = {{Rational(1), Rational(1)}, {Rational(2), Rational(1)}};
  REQUIRE_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.G = UniPoly({Rational(1), Rational(1)});
  // y off the curve with epsilon = 0
  REQUIRE_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("random perturbed instances respect the residual bound") {
  const Rational eps(1, 1000000000LL);
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng(11, k);
    const DetXInstance inst = random_detx_instance(rng, 3, eps);
    inst.validate();  // |yG(x) - F(x)| <= epsilon holds exactly
    REQUIRE(inst.epsilon == eps);
  }
}
