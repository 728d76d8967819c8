#include <catch2/catch_amalgamated.hpp>

#include "slablb/reduction.hpp"
#include "slablb/rng.hpp"
#include "slablb/runners.hpp"

using namespace slablb;

namespace {

// the worked d=3 line query used throughout: after normalization a(1,1) = 1
FlatParams worked_query() {
  FlatParams q(3, 1);
  q.set(0, 1, Rational(1));
  q.set(1, 1, Rational(0));  // overwritten by normalization
  q.set(1, 2, Rational(1));
  q.set(2, 1, Rational(1));
  q.set(2, 2, Rational(2));
  return normalize_query(q);
}

}  // namespace

TEST_CASE("b-variable indexing is the frozen layout") {
  REQUIRE(num_b_vars(3, 1) == 4);
  REQUIRE(num_b_vars(4, 2) == 6);
  REQUIRE(bvar_index(1, 1, 3, 1) == 0);
  REQUIRE(bvar_index(1, 2, 3, 1) == 1);
  REQUIRE(bvar_index(2, 1, 3, 1) == 2);
  REQUIRE(bvar_index(2, 2, 3, 1) == 3);
  REQUIRE(bvar_index(3, 2, 4, 2) == 5);
  REQUIRE_THROWS_AS(bvar_index(3, 1, 3, 1), std::out_of_range);
}

TEST_CASE("slab vector round trip") {
  std::vector<Rational> v{Rational(1), Rational(2), Rational(3), Rational(4)};
  const SlabParams s = slab_from_vector(3, 1, v, Rational(1, 2));
  REQUIRE(s.at(1, 2) == Rational(2));
  REQUIRE(s.at(2, 1) == Rational(3));
  REQUIRE(s.as_vector() == v);
  REQUIRE_THROWS_AS(slab_from_vector(3, 1, {Rational(1)}, Rational(0)),
                    std::invalid_argument);
}

TEST_CASE("normalization pins the bilinear coefficient") {
  const FlatParams q = worked_query();
  REQUIRE(q.at(1, 1) == Rational(1));  // (1 + 1*1) / 2... times 2 = 1
  const MultiPoly p = derive_P(q);
  ExponentTuple xy(4, 0);
  xy[static_cast<std::size_t>(default_y_var(3, 1))] = 1;
  xy[static_cast<std::size_t>(default_x_var(3, 1))] = 1;
  REQUIRE(p.coeff(xy) == Rational(1));
  // and the opposite cross term is exactly -1 for every normalized query
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(3, k);
    const FlatParams r = slablb::detail::random_normalized_query(rng, 3, 1);
    const MultiPoly pr = derive_P(r);
    ExponentTuple yx(4, 0);
    yx[static_cast<std::size_t>(bvar_index(1, 2, 3, 1))] = 1;
    yx[static_cast<std::size_t>(bvar_index(2, 1, 3, 1))] = 1;
    REQUIRE(pr.coeff(yx) == Rational(-1));
  }
  FlatParams bad(3, 1);
  bad.set(2, 2, Rational(0));
  REQUIRE_THROWS_AS(normalize_query(bad), std::domain_error);
}

TEST_CASE("worked query expands to the expected polynomial") {
  const FlatParams q = worked_query();
  const MultiPoly p = derive_P1(q);
  MultiPoly want(4, 2);
  auto mono = [](std::initializer_list<int> idx) {
    ExponentTuple e(4, 0);
    for (int v : idx) e[static_cast<std::size_t>(v)] += 1;
    return e;
  };
  want.add_term(mono({}), Rational(1));
  want.add_term(mono({0}), Rational(1));   // b(1,1)
  want.add_term(mono({1}), Rational(1));   // b(1,2)
  want.add_term(mono({2}), Rational(1));   // b(2,1)
  want.add_term(mono({3}), Rational(2));   // b(2,2)
  want.add_term(mono({0, 3}), Rational(1));
  want.add_term(mono({1, 2}), Rational(-1));
  REQUIRE(p == want);
  // the closed form agrees with the symbolic determinant expansion
  REQUIRE(p == intersection_poly(q).P);
}

TEST_CASE("w-carrying part is minus w times the width minor") {
  for (const auto& [t, d] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}) {
    Rng rng(5, static_cast<std::uint64_t>(d));
    const FlatParams q = slablb::detail::random_normalized_query(rng, d, t);
    const IntersectionPoly full = intersection_poly(q);
    const MultiPoly minor = width_minor_poly(q);
    const int nb = num_b_vars(d, t);
    MultiPoly expect(nb + 1, full.f.degree_bound());
    for (const auto& [e, c] : minor.terms()) {
      ExponentTuple we(e);
      we.push_back(1);
      expect.add_term(we, -c);
    }
    REQUIRE(full.f == expect);
    // so f vanishes identically at w = 0
    REQUIRE(full.f.substitute({{nb, Rational(0)}}).is_zero());
  }
}

TEST_CASE("offset-only query derives a constant polynomial") {
  FlatParams q(3, 1);
  q.set(0, 1, Rational(7));
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i) q.set(i, j, Rational(0));
  REQUIRE(derive_P(q) == MultiPoly::constant(4, 2, Rational(7)));
}

TEST_CASE("split into y G(x) + F(x)") {
  const FlatParams q = worked_query();
  const MultiPoly p = derive_P1(q);
  const int y = default_y_var(3, 1), x = default_x_var(3, 1);
  const SplitGF gf = split_GF(p, y, x, {{1, Rational(0)}, {2, Rational(0)}});
  REQUIRE(gf.G == UniPoly({Rational(1), Rational(1)}));  // 1 + x
  REQUIRE(gf.F == UniPoly({Rational(1), Rational(2)}));  // 1 + 2x
  REQUIRE(resultant(gf.G, gf.F) == Rational(-1));
  REQUIRE_FALSE(gf.degenerate);
  REQUIRE_THROWS_AS(split_GF(p, y, x, {{x, Rational(0)}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(split_GF(p, y, x, {{1, Rational(0)}}),
                    std::invalid_argument);
  // a polynomial with no y-dependence splits degenerately
  MultiPoly c = MultiPoly::constant(4, 2, Rational(3));
  const SplitGF dg = split_GF(c, y, x, {{1, Rational(0)}, {2, Rational(0)}});
  REQUIRE(dg.degenerate);
}

TEST_CASE("assumption checks on constructed degenerate inputs") {
  const std::vector<Rational> bv{Rational(1), Rational(1), Rational(1),
                                 Rational(1)};
  const SlabParams s = slab_from_vector(3, 1, bv, Rational(1));
  {
    // second query column zero: the combined system is singular
    FlatParams q(3, 1);
    q.set(0, 1, Rational(1));
    q.set(1, 1, Rational(1));
    q.set(2, 1, Rational(1));
    q.set(1, 2, Rational(0));
    q.set(2, 2, Rational(0));
    const Assumptions as = check_assumptions(q, s);
    REQUIRE_FALSE(as.as1);
    REQUIRE_THROWS_AS(intersects_oracle(q, s), std::domain_error);
  }
  {
    // width minor = a01 + b(1,1) a(1,1) + b(1,2) a(2,1) < 0
    FlatParams q(3, 1);
    q.set(0, 1, Rational(-5));
    q.set(1, 1, Rational(1));
    q.set(2, 1, Rational(1));
    q.set(1, 2, Rational(1));
    q.set(2, 2, Rational(2));
    REQUIRE(width_minor_poly(q).eval(bv) == Rational(-3));
    REQUIRE_FALSE(check_assumptions(q, s).as2);
  }
}

TEST_CASE("membership at zero width means lying on the zero set") {
  const FlatParams q = worked_query();
  const MultiPoly p = derive_P(q);
  // solve p(1, 1, 1, x) = 0 for the last coordinate
  std::map<int, Rational> fixed{{0, Rational(1)}, {1, Rational(1)},
                                {2, Rational(1)}};
  const MultiPoly line = p.substitute(fixed);
  ExponentTuple lin(4, 0);
  lin[3] = 1;
  const Rational root = -line.coeff(ExponentTuple(4, 0)) / line.coeff(lin);
  std::vector<Rational> on{Rational(1), Rational(1), Rational(1), root};
  REQUIRE(is_zero(p.eval(on)));
  REQUIRE(slab_membership(q, slab_from_vector(3, 1, on, Rational(0))));
  std::vector<Rational> off = on;
  off[3] += Rational(1);
  REQUIRE_FALSE(slab_membership(q, slab_from_vector(3, 1, off, Rational(0))));
}

TEST_CASE("membership agrees with the exact root-counting oracle") {
  int produced = 0;
  for (std::uint64_t k = 0; produced < 50 && k < 2000; ++k) {
    Rng rng(9, k);
    const FlatParams q = slablb::detail::random_normalized_query(rng, 3, 1);
    std::vector<Rational> bv;
    for (int v = 0; v < 4; ++v) bv.push_back(rng.grid_rational(16, 8));
    const Rational w0 = abs(rng.grid_rational(16, 8));
    const SlabParams s = slab_from_vector(3, 1, bv, w0);
    const Assumptions as = check_assumptions(q, s);
    if (!as.as1 || !as.as2) continue;
    ++produced;
    REQUIRE(intersects_oracle(q, s) == slab_membership(q, s));
  }
  REQUIRE(produced == 50);
}

TEST_CASE("flat and slab parameters round trip through JSON") {
  const FlatParams q = worked_query();
  REQUIRE(flat_from_json(to_json(q)) == q);
  const SlabParams s = slab_from_vector(
      3, 1, {Rational(1, 3), Rational(-2), Rational(0), Rational(7, 5)},
      Rational(1, 64));
  const SlabParams back = slab_from_json(to_json(s));
  REQUIRE(back.b == s.b);
  REQUIRE(back.w0 == s.w0);
}
