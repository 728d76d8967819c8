#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "slablb/poly.hpp"
#include "slablb/rational.hpp"

namespace slablb {

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
           Rational(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& at(int r, int c) { return e_[index(r, c)]; }
  const Rational& at(int r, int c) const { return e_[index(r, c)]; }

  bool operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Rational> e_;
};

// Cofactor expansion along the first row. Exponential; kept as an
// independent oracle for small matrices (n <= 6 in the test suites).
inline Rational det_cofactor(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m.at(0, 0);
  Rational acc(0);
  for (int c = 0; c < n; ++c) {
    if (is_zero(m.at(0, c))) continue;
    ExactMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == c) continue;
        minor.at(r - 1, cc++) = m.at(r, k);
      }
    }
    const Rational term = m.at(0, c) * det_cofactor(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

// Fraction-free (Bareiss) determinant. Rows are first scaled to integers;
// every intermediate division in the elimination is then exact over the
// integers, which keeps entry growth polynomial in the bit size.
inline Rational det_bareiss(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return Rational(1);
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(n),
                                     std::vector<BigInt>(static_cast<std::size_t>(n)));
  Rational scale(1);  // det(original) = det(integer matrix) / scale
  for (int r = 0; r < n; ++r) {
    BigInt l(1);
    for (int c = 0; c < n; ++c) l = lcm(l, den(m.at(r, c)));
    scale *= Rational(l);
    for (int c = 0; c < n; ++c) {
      const Rational v = m.at(r, c) * Rational(l);
      a[r][c] = num(v);  // exact: l is a common denominator
    }
  }
  BigInt prev(1);
  int sign_flips = 0;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k].is_zero()) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (!a[r][k].is_zero()) { p = r; break; }
      if (p < 0) return Rational(0);
      std::swap(a[k], a[p]);
      ++sign_flips;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        BigInt v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = v / prev;  // exact by the Bareiss identity
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational d(a[n - 1][n - 1]);
  if (sign_flips % 2 == 1) d = -d;
  return d / scale;
}

inline Rational det_exact(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

// Solve A x = b exactly by Gaussian elimination over the rationals.
// Throws if A is singular.
inline std::vector<Rational> solve_exact(const ExactMatrix& a,
                                         const std::vector<Rational>& b) {
  if (!a.square() || static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("solve_exact shape mismatch");
  const int n = a.rows();
  ExactMatrix w = a;
  std::vector<Rational> rhs = b;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int r = k; r < n; ++r)
      if (!is_zero(w.at(r, k))) { p = r; break; }
    if (p < 0) throw std::domain_error("singular linear system");
    if (p != k) {
      for (int c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(p, c));
      std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(p)]);
    }
    for (int r = k + 1; r < n; ++r) {
      if (is_zero(w.at(r, k))) continue;
      const Rational f = w.at(r, k) / w.at(k, k);
      for (int c = k; c < n; ++c) w.at(r, c) -= f * w.at(k, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(k)];
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
  for (int k = n - 1; k >= 0; --k) {
    Rational acc = rhs[static_cast<std::size_t>(k)];
    for (int c = k + 1; c < n; ++c) acc -= w.at(k, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(k)] = acc / w.at(k, k);
  }
  return x;
}

// Inverse via elimination; used for row-sum bounds in the tweaking checks.
inline ExactMatrix inverse_exact(const ExactMatrix& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  const int n = a.rows();
  ExactMatrix inv(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<Rational> e(static_cast<std::size_t>(n), Rational(0));
    e[static_cast<std::size_t>(c)] = Rational(1);
    const auto col = solve_exact(a, e);
    for (int r = 0; r < n; ++r) inv.at(r, c) = col[static_cast<std::size_t>(r)];
  }
  return inv;
}

// entry (i,j) = x_i^j, zero-based; rows follow the node order
inline ExactMatrix build_vandermonde(const std::vector<Rational>& xs) {
  const int n = static_cast<int>(xs.size());
  ExactMatrix v(n, n);
  for (int i = 0; i < n; ++i) {
    Rational p(1);
    for (int j = 0; j < n; ++j) {
      v.at(i, j) = p;
      p *= xs[static_cast<std::size_t>(i)];
    }
  }
  return v;
}

// Product formula; agrees with det_exact(build_vandermonde(xs)).
inline Rational vandermonde_det(const std::vector<Rational>& xs) {
  Rational d(1);
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d *= xs[static_cast<std::size_t>(j)] - xs[static_cast<std::size_t>(i)];
  return d;
}

// (d1+d2) x (d1+d2) Sylvester matrix: d2 shifted rows of p's coefficients
// (leading first) followed by d1 shifted rows of q's.
inline ExactMatrix sylvester(const UniPoly& p, const UniPoly& q) {
  const int d1 = p.degree(), d2 = q.degree();
  if (d1 < 1 && d2 < 1)
    throw std::invalid_argument("sylvester requires a non-constant polynomial");
  if (d1 < 0 || d2 < 0)
    throw std::invalid_argument("sylvester of zero polynomial");
  const int n = d1 + d2;
  ExactMatrix s(n, n);
  for (int r = 0; r < d2; ++r)
    for (int k = 0; k <= d1; ++k) s.at(r, r + k) = p.coeff(d1 - k);
  for (int r = 0; r < d1; ++r)
    for (int k = 0; k <= d2; ++k) s.at(d2 + r, r + k) = q.coeff(d2 - k);
  return s;
}

inline Rational resultant(const UniPoly& p, const UniPoly& q) {
  return det_exact(sylvester(p, q));
}

}  // namespace slablb
