#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "slablb/construction.hpp"

using namespace slablb;

namespace {

// small instance: 2^4 = 16 queries, cheap to build repeatedly
ConstructionConfig small_config() {
  ConstructionConfig cfg;
  cfg.d = 3;
  cfg.t = 1;
  cfg.n = 32;
  cfg.grid_resolution = 2;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("free coefficient counts") {
  REQUIRE(beta_for(3, 1) == 4);
  REQUIRE(beta_for(4, 1) == 6);
  REQUIRE(beta_for(5, 1) == 8);
  REQUIRE(beta_for(4, 2) == 6);
  REQUIRE_THROWS_AS(beta_for(5, 2), std::invalid_argument);
  ConstructionConfig cfg = small_config();
  cfg.d = 6;  // beta = 10 > 8
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("config validation") {
  ConstructionConfig cfg = small_config();
  REQUIRE_NOTHROW(cfg.validate());
  cfg.C = 0.5;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.n = 20000;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.c_w = 1e6;  // w exceeds eps_p
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.mode = "huge";
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.grid_resolution = 9;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("derived scalar formulas") {
  const ConstructionConfig cfg = small_config();
  REQUIRE(cfg.Q() == Catch::Approx(std::pow(32.0, 0.1)));
  REQUIRE(cfg.psi() ==
          Catch::Approx(std::exp2(std::sqrt(std::log2(32.0)))));
  REQUIRE(cfg.w() == Catch::Approx(cfg.c_w * cfg.Q() / 32.0));
  REQUIRE(cfg.eps_q() == Catch::Approx(cfg.eps_p / cfg.C));
}

TEST_CASE("instance build is deterministic") {
  const ConstructionConfig cfg = small_config();
  const ConstructionInstance a = build_instance(cfg);
  const ConstructionInstance b = build_instance(cfg);
  REQUIRE(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("inputs lie in the sample cube around the base point") {
  const ConstructionInstance inst = build_instance(small_config());
  REQUIRE(static_cast<int>(inst.inputs.size()) == inst.config.n);
  const double half = inst.config.eps_p / 2.0;
  for (const auto& p : inst.inputs) {
    REQUIRE(p.size() == inst.base_point.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      REQUIRE(std::abs(p[k] - to_double(inst.base_point[k])) <= half + 1e-12);
  }
}

TEST_CASE("query lattice is normalized and tau-separated") {
  const ConstructionInstance inst = build_instance(small_config());
  const int G = inst.config.grid_resolution;
  REQUIRE(static_cast<int>(inst.queries.size()) ==
          static_cast<int>(std::pow(G, inst.beta)));
  REQUIRE(inst.tau_grid > 0);
  const auto coords = detail::free_query_coords(3, 1);
  for (const auto& q : inst.queries) {
    // normalized: a(1,1) is pinned by the other coefficients
    REQUIRE(q.at(1, 1) ==
            (Rational(1) + q.at(1, 2) * q.at(2, 1)) / q.at(2, 2));
    // each free coefficient sits on the lattice around the base query
    for (const auto& [i, j] : coords) {
      const Rational off = q.at(i, j) - inst.base_query.at(i, j);
      REQUIRE(den(off * Rational(2) / inst.tau_grid) == 1);
    }
  }
  // distinct queries differ by at least tau_grid in some free coefficient
  for (std::size_t a = 0; a < inst.queries.size(); ++a)
    for (std::size_t b = a + 1; b < std::min(inst.queries.size(), a + 3); ++b) {
      Rational max_gap(0);
      for (const auto& [i, j] : coords) {
        const Rational gap =
            abs(inst.queries[a].at(i, j) - inst.queries[b].at(i, j));
        if (gap > max_gap) max_gap = gap;
      }
      REQUIRE(max_gap >= inst.tau_grid);
    }
}

TEST_CASE("base pair survives post-hoc verification") {
  const ConstructionInstance inst = build_instance(small_config());
  REQUIRE(base_pair_violation(inst.base_query, inst.base_point,
                              inst.config.min_width_minor) == "");
  // the base point is on the zero set, with a positive width minor
  REQUIRE(is_zero(derive_P(inst.base_query).eval(inst.base_point)));
  REQUIRE(sign(width_minor_poly(inst.base_query).eval(inst.base_point)) > 0);
}

TEST_CASE("formula mode skips materializing the grid") {
  ConstructionConfig cfg = small_config();
  cfg.mode = "formula";
  const ConstructionInstance inst = build_instance(cfg);
  REQUIRE(inst.queries.empty());
  REQUIRE(inst.realized_c() == 0.0);
}

TEST_CASE("space-time exponents") {
  REQUIRE(derived_exponent(4) == 63);
  REQUIRE(derived_exponent(6) == 131);
  ConstructionConfig lines3 = small_config();
  const BoundTable l3 = bound_formulas(lines3);
  REQUIRE(l3.exponent == 63);
  REQUIRE(l3.stated_exponent == 63);
  REQUIRE_FALSE(l3.discrepancy);
  ConstructionConfig planes4 = small_config();
  planes4.d = 4;
  planes4.t = 2;
  const BoundTable p4 = bound_formulas(planes4);
  REQUIRE(p4.exponent == 131);
  REQUIRE(p4.stated_exponent == 125);
  REQUIRE(p4.discrepancy);
}

TEST_CASE("instance round trips through JSON") {
  const ConstructionInstance inst = build_instance(small_config());
  const Json j = to_json(inst);
  const ConstructionInstance back = instance_from_json(j);
  REQUIRE(to_json(back).dump() == j.dump());
  REQUIRE(back.queries.size() == inst.queries.size());
  REQUIRE(back.w == inst.w);
}

TEST_CASE("search failure carries rejection diagnostics") {
  ConstructionConfig cfg = small_config();
  cfg.search_budget = 1;
  cfg.min_width_minor = 1e12;  // unattainable margin
  try {
    build_instance(cfg);
    FAIL("expected the base pair search to fail");
  } catch (const BasePairSearchError& e) {
    REQUIRE(e.diagnostics.value("budget", 0) == 1);
  }
}
