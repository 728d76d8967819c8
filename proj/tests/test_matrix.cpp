#include <catch2/catch_amalgamated.hpp>

#include "slablb/matrix.hpp"
#include "slablb/rng.hpp"

using namespace slablb;

namespace {

ExactMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  ExactMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m.at(r, c) = Rational(rows[static_cast<std::size_t>(r)]
                                [static_cast<std::size_t>(c)]);
  return m;
}

}  // namespace

TEST_CASE("determinant on fixed matrices") {
  REQUIRE(det_exact(ExactMatrix(0, 0)) == Rational(1));
  REQUIRE(det_exact(from_rows({{7}})) == Rational(7));
  REQUIRE(det_exact(from_rows({{1, 2}, {3, 4}})) == Rational(-2));
  REQUIRE(det_exact(from_rows({{2, 0, 1}, {1, 3, -1}, {0, 5, 4}})) ==
          Rational(39));
  // singular: repeated row
  REQUIRE(det_exact(from_rows({{1, 2}, {1, 2}})) == Rational(0));
  REQUIRE(det_exact(ExactMatrix::identity(5)) == Rational(1));
  REQUIRE_THROWS_AS(det_exact(ExactMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("bareiss and cofactor determinants agree") {
  Rng rng(42, 0);
  for (int k = 0; k < 50; ++k) {
    const int n = static_cast<int>(rng.range(1, 6));
    ExactMatrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m.at(r, c) = rng.grid_rational(16, 8);
    REQUIRE(det_bareiss(m) == det_cofactor(m));
  }
  // zero pivot forces a row swap inside Bareiss
  const ExactMatrix z = from_rows({{0, 1, 2}, {3, 0, 1}, {1, 1, 1}});
  REQUIRE(det_bareiss(z) == det_cofactor(z));
}

TEST_CASE("determinant is linear in each row") {
  Rng rng(43, 0);
  ExactMatrix m(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(r, c) = rng.grid_rational(16, 8);
  ExactMatrix scaled = m;
  const Rational s(5, 3);
  for (int c = 0; c < 3; ++c) scaled.at(1, c) *= s;
  REQUIRE(det_exact(scaled) == s * det_exact(m));
}

TEST_CASE("exact solve and inverse") {
  const ExactMatrix a = from_rows({{2, 1}, {1, 3}});
  const std::vector<Rational> b{Rational(5), Rational(10)};
  const auto x = solve_exact(a, b);
  REQUIRE(x[0] == Rational(1));
  REQUIRE(x[1] == Rational(3));

  const ExactMatrix inv = inverse_exact(a);
  ExactMatrix prod(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) prod.at(r, c) += a.at(r, k) * inv.at(k, c);
  REQUIRE(prod == ExactMatrix::identity(2));

  REQUIRE_THROWS_AS(solve_exact(from_rows({{1, 2}, {2, 4}}), b),
                    std::domain_error);
}

TEST_CASE("vandermonde determinant matches the product formula") {
  const std::vector<Rational> xs{Rational(1), Rational(2), Rational(1, 2),
                                 Rational(-3)};
  const ExactMatrix v = build_vandermonde(xs);
  REQUIRE(v.at(0, 0) == Rational(1));
  REQUIRE(v.at(3, 2) == Rational(9));
  REQUIRE(det_exact(v) == vandermonde_det(xs));
  // repeated node: singular
  REQUIRE(vandermonde_det({Rational(1), Rational(1)}) == Rational(0));
}

TEST_CASE("sylvester matrix layout for two linear polynomials") {
  // p = p1 x + p0, q = q1 x + q0: the matrix is [[p1, p0], [q1, q0]]
  const UniPoly p({Rational(3), Rational(2)});
  const UniPoly q({Rational(-1), Rational(5)});
  const ExactMatrix s = sylvester(p, q);
  REQUIRE(s.rows() == 2);
  REQUIRE(s.at(0, 0) == Rational(2));
  REQUIRE(s.at(0, 1) == Rational(3));
  REQUIRE(s.at(1, 0) == Rational(5));
  REQUIRE(s.at(1, 1) == Rational(-1));
  REQUIRE(resultant(p, q) == Rational(-17));
}

TEST_CASE("resultant detects common roots") {
  // monic linear pair: Res(x - a, x - b) = b - a
  REQUIRE(resultant(UniPoly({Rational(-2), Rational(1)}),
                    UniPoly({Rational(-5), Rational(1)})) == Rational(-3));
  const UniPoly shared = UniPoly({Rational(-2), Rational(1)});
  const UniPoly p = shared * UniPoly({Rational(-1), Rational(1)});
  const UniPoly q = shared * UniPoly({Rational(-3), Rational(1)});
  REQUIRE(is_zero(resultant(p, q)));
  REQUIRE(gcd_univariate(p, q) == shared);
  // degree 2 vs degree 1 with no common root
  const UniPoly r({Rational(1), Rational(0), Rational(1)});  // x^2 + 1
  const UniPoly l({Rational(-1), Rational(1)});              // x - 1
  // Res = lc(l)^2 * r(1) = 2
  REQUIRE(resultant(r, l) == Rational(2));
  REQUIRE_THROWS_AS(sylvester(UniPoly::constant(Rational(1)),
                              UniPoly::constant(Rational(2))),
                    std::invalid_argument);
}
