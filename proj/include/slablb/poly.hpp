#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slablb/rational.hpp"

namespace slablb {

// ---------------------------------------------------------------------------
// Univariate polynomials, dense representation.
// degree() of the zero polynomial is -1 by convention so leading-coefficient
// logic stays total.
// ---------------------------------------------------------------------------
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  // x^k
  static UniPoly monomial(int k, const Rational& coeff = Rational(1)) {
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c.back() = coeff;
    return UniPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const Rational& coeff(int i) const {
    static const Rational kZero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(i)];
  }

  void set_coeff(int i, const Rational& v) {
    if (i < 0) throw std::invalid_argument("negative coefficient index");
    if (i >= static_cast<int>(c_.size()))
      c_.resize(static_cast<std::size_t>(i) + 1, Rational(0));
    c_[static_cast<std::size_t>(i)] = v;
    trim();
  }

  const std::vector<Rational>& coeffs() const { return c_; }

  Rational leading() const {
    return c_.empty() ? Rational(0) : c_.back();
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * x + to_double(*it);
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(i);
    return UniPoly(std::move(d));
  }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
  }

  UniPoly operator-(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(std::move(r));
  }

  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
  }

  UniPoly operator*(const Rational& s) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= s;
    return UniPoly(std::move(r));
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly monic() const {
    if (is_zero()) return UniPoly();
    return *this * (Rational(1) / leading());
  }

  // Euclidean division over the rationals: *this = q*divisor + r,
  // deg(r) < deg(divisor).
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
    UniPoly r = *this;
    const int dd = divisor.degree();
    if (r.degree() < dd) return {UniPoly(), r};
    std::vector<Rational> q(static_cast<std::size_t>(r.degree() - dd) + 1,
                            Rational(0));
    const Rational lead = divisor.leading();
    while (!r.is_zero() && r.degree() >= dd) {
      const int k = r.degree() - dd;
      const Rational f = r.leading() / lead;
      q[static_cast<std::size_t>(k)] = f;
      r = r - divisor * UniPoly::monomial(k, f);
    }
    return {UniPoly(std::move(q)), r};
  }

 private:
  void trim() {
    while (!c_.empty() && slablb::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<Rational> c_;  // c_[i] multiplies x^i
};

inline UniPoly gcd_univariate(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  UniPoly a = p, b = q;
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

// ---------------------------------------------------------------------------
// Sturm chain root counting on a closed interval, exact.
// ---------------------------------------------------------------------------
namespace detail {
inline int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int vars = 0, prev = 0;
  for (const auto& f : chain) {
    const int s = sign(f.eval(x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++vars;
      prev = s;
    }
  }
  return vars;
}
}  // namespace detail

// Number of distinct real roots of p in the closed interval [lo, hi].
inline int count_roots_in(const UniPoly& p, const Rational& lo,
                          const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  if (p.is_zero()) throw std::invalid_argument("root count of zero polynomial");
  if (p.degree() == 0) return 0;
  // square-free part so the chain is a proper Sturm sequence
  UniPoly sf = p;
  const UniPoly g = gcd_univariate(p, p.derivative());
  if (g.degree() >= 1) sf = p.divmod(g).first;
  std::vector<UniPoly> chain{sf, sf.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() >= 1) {
    UniPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(r * Rational(-1));
  }
  int count = detail::sign_variations(chain, lo) -
              detail::sign_variations(chain, hi);
  // Sturm counts roots in (lo, hi]; add lo back if it is a root.
  if (is_zero(sf.eval(lo))) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials over the rationals.
// Terms are kept in a map keyed by the exponent tuple (lexicographic order),
// which makes the representation canonical: equal polynomials compare equal.
// Zero coefficients are never stored.
// ---------------------------------------------------------------------------
using ExponentTuple = std::vector<int>;

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int num_vars, int degree_bound)
      : num_vars_(num_vars), degree_bound_(degree_bound) {
    if (num_vars < 0 || degree_bound < 0)
      throw std::invalid_argument("invalid polynomial shape");
  }

  static MultiPoly constant(int num_vars, int degree_bound, const Rational& v) {
    MultiPoly p(num_vars, degree_bound);
    p.add_term(ExponentTuple(static_cast<std::size_t>(num_vars), 0), v);
    return p;
  }

  static MultiPoly variable(int num_vars, int degree_bound, int index) {
    MultiPoly p(num_vars, degree_bound);
    ExponentTuple e(static_cast<std::size_t>(num_vars), 0);
    e.at(static_cast<std::size_t>(index)) = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  int num_vars() const { return num_vars_; }
  int degree_bound() const { return degree_bound_; }
  const std::map<ExponentTuple, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Rational coeff(const ExponentTuple& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const ExponentTuple& e, const Rational& c) {
    if (static_cast<int>(e.size()) != num_vars_)
      throw std::invalid_argument("exponent tuple arity mismatch");
    int s = 0;
    for (int x : e) {
      if (x < 0) throw std::invalid_argument("negative exponent");
      s += x;
    }
    if (s > degree_bound_)
      throw std::invalid_argument("term exceeds degree bound");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!slablb::is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (slablb::is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check_shape(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  MultiPoly operator-(const MultiPoly& o) const {
    check_shape(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }

  MultiPoly operator*(const Rational& s) const {
    MultiPoly r(num_vars_, degree_bound_);
    if (slablb::is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    if (num_vars_ != o.num_vars_)
      throw std::invalid_argument("polynomial arity mismatch");
    MultiPoly r(num_vars_, degree_bound_ + o.degree_bound_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        ExponentTuple e(e1);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
        r.add_term(e, c1 * c2);
      }
    return r;
  }

  bool operator==(const MultiPoly& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
      throw std::invalid_argument("evaluation point dimension mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int j = 0; j < e[k]; ++j) t *= point[k];
      acc += t;
    }
    return acc;
  }

  double eval(const std::vector<double>& point) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int j = 0; j < e[k]; ++j) t *= point[k];
      acc += t;
    }
    return acc;
  }

  // Fix a subset of variables to exact values; the result keeps the same
  // arity (fixed variables simply no longer occur) so slices of a family
  // stay directly comparable.
  MultiPoly substitute(const std::map<int, Rational>& assignments) const {
    for (const auto& [v, val] : assignments)
      if (v < 0 || v >= num_vars_)
        throw std::invalid_argument("substitution of unknown variable");
    MultiPoly r(num_vars_, degree_bound_);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      ExponentTuple rest = e;
      for (const auto& [v, val] : assignments) {
        for (int j = 0; j < e[static_cast<std::size_t>(v)]; ++j) t *= val;
        rest[static_cast<std::size_t>(v)] = 0;
      }
      r.add_term(rest, t);
    }
    return r;
  }

  MultiPoly partial_derivative(int var) const {
    if (var < 0 || var >= num_vars_)
      throw std::invalid_argument("derivative in unknown variable");
    MultiPoly r(num_vars_, degree_bound_);
    for (const auto& [e, c] : terms_) {
      const int k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      ExponentTuple d = e;
      d[static_cast<std::size_t>(var)] = k - 1;
      r.add_term(d, c * Rational(k));
    }
    return r;
  }

  // Regroup as sum over (d-1)-tuples j of h_j(X_var) * X_{others}^j.
  // Reassembly of the returned map reproduces the polynomial exactly.
  std::map<ExponentTuple, UniPoly> coeff_decompose(int var) const {
    if (var < 0 || var >= num_vars_)
      throw std::invalid_argument("decomposition along unknown variable");
    std::map<ExponentTuple, UniPoly> out;
    for (const auto& [e, c] : terms_) {
      ExponentTuple j;
      j.reserve(e.size() - 1);
      for (std::size_t k = 0; k < e.size(); ++k)
        if (static_cast<int>(k) != var) j.push_back(e[k]);
      auto [it, inserted] = out.try_emplace(j);
      UniPoly& h = it->second;
      h.set_coeff(e[static_cast<std::size_t>(var)],
                  h.coeff(e[static_cast<std::size_t>(var)]) + c);
    }
    // drop groups that cancelled to zero
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  void check_shape(const MultiPoly& o) const {
    if (num_vars_ != o.num_vars_)
      throw std::invalid_argument("polynomial arity mismatch");
  }

  int num_vars_ = 0;
  int degree_bound_ = 0;
  std::map<ExponentTuple, Rational> terms_;
};

}  // namespace slablb
