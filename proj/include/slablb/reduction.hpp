#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slablb/json_io.hpp"
#include "slablb/matrix.hpp"
#include "slablb/poly.hpp"
#include "slablb/rational.hpp"

namespace slablb {

// ---------------------------------------------------------------------------
// Parameter layouts.
//
// Canonical index table (frozen here; all other modules go through these
// accessors):
//   query t-flat    a(i,j)   i = 1..d-t, j = 1..t+1, plus the free a(0,1)
//   input hyperslab b(r,i)   r = 1..t+1, i = 1..d-t, plus width w0 >= 0
// In the b parametric space, variable b(r,i) lives at flat index
// (r-1)*(d-t) + (i-1); when a w indeterminate is needed it is appended last.
// ---------------------------------------------------------------------------

struct FlatParams {
  int d = 0;
  int t = 0;
  std::map<std::pair<int, int>, Rational> a;

  FlatParams() = default;
  FlatParams(int d_, int t_) : d(d_), t(t_) {
    if (t_ < 1 || d_ <= t_) throw std::invalid_argument("invalid (t,d)");
  }

  const Rational& at(int i, int j) const {
    auto it = a.find({i, j});
    if (it == a.end()) throw std::out_of_range("missing flat parameter");
    return it->second;
  }
  void set(int i, int j, const Rational& v) { a[{i, j}] = v; }

  bool operator==(const FlatParams& o) const {
    return d == o.d && t == o.t && a == o.a;
  }
};

struct SlabParams {
  int d = 0;
  int t = 0;
  std::map<std::pair<int, int>, Rational> b;
  Rational w0 = Rational(0);

  SlabParams() = default;
  SlabParams(int d_, int t_) : d(d_), t(t_) {
    if (t_ < 1 || d_ <= t_) throw std::invalid_argument("invalid (t,d)");
  }

  const Rational& at(int r, int i) const {
    auto it = b.find({r, i});
    if (it == b.end()) throw std::out_of_range("missing slab parameter");
    return it->second;
  }
  void set(int r, int i, const Rational& v) { b[{r, i}] = v; }

  // flat b-vector in canonical variable order
  std::vector<Rational> as_vector() const {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>((t + 1) * (d - t)));
    for (int r = 1; r <= t + 1; ++r)
      for (int i = 1; i <= d - t; ++i) v.push_back(at(r, i));
    return v;
  }
};

inline int num_b_vars(int d, int t) { return (t + 1) * (d - t); }

inline int bvar_index(int r, int i, int d, int t) {
  if (r < 1 || r > t + 1 || i < 1 || i > d - t)
    throw std::out_of_range("b variable index");
  return (r - 1) * (d - t) + (i - 1);
}

inline SlabParams slab_from_vector(int d, int t, const std::vector<Rational>& v,
                                   const Rational& w0) {
  if (static_cast<int>(v.size()) != num_b_vars(d, t))
    throw std::invalid_argument("b-vector dimension mismatch");
  SlabParams s(d, t);
  for (int r = 1; r <= t + 1; ++r)
    for (int i = 1; i <= d - t; ++i)
      s.set(r, i, v[static_cast<std::size_t>(bvar_index(r, i, d, t))]);
  s.w0 = w0;
  return s;
}

// ---------------------------------------------------------------------------
// The intersection determinant and its pieces.
// ---------------------------------------------------------------------------

struct IntersectionPoly {
  MultiPoly P;  // w-free part, in the (t+1)(d-t) b-variables
  MultiPoly f;  // w-carrying part, in the b-variables plus w (last variable)
};

namespace detail {

// Entry (r,c), 1-based, of the combined query/input system as a polynomial
// in the b-variables (arity nvars >= num_b_vars; extra trailing vars unused).
inline MultiPoly system_entry(const FlatParams& q, int r, int c, int nvars) {
  const int d = q.d, t = q.t;
  MultiPoly e(nvars, 2);
  if (r == 1 && c == 1)
    e.add_term(ExponentTuple(static_cast<std::size_t>(nvars), 0), q.at(0, 1));
  if (r == c && r >= 2 && r <= t)
    e.add_term(ExponentTuple(static_cast<std::size_t>(nvars), 0), Rational(1));
  for (int i = 1; i <= d - t; ++i) {
    ExponentTuple ex(static_cast<std::size_t>(nvars), 0);
    ex[static_cast<std::size_t>(bvar_index(r, i, d, t))] = 1;
    e.add_term(ex, q.at(i, c));
  }
  return e;
}

inline MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  MultiPoly acc;
  bool first = true;
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<MultiPoly>> minor;
    for (int r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][static_cast<std::size_t>(c)] * poly_det(minor);
    if (c % 2 == 1) term = term * Rational(-1);
    if (first) {
      acc = std::move(term);
      first = false;
    } else {
      acc = acc + term;
    }
  }
  return acc;
}

// Drop a trailing variable known to be absent from every term.
inline MultiPoly strip_last_var(const MultiPoly& p) {
  MultiPoly r(p.num_vars() - 1, p.degree_bound());
  for (const auto& [e, c] : p.terms()) {
    if (e.back() != 0) throw std::logic_error("stripped variable occurs");
    ExponentTuple s(e.begin(), e.end() - 1);
    r.add_term(s, c);
  }
  return r;
}

}  // namespace detail

// The (t x t) determinant whose positivity is the proper-width assumption;
// equals -df/dw (the full determinant is linear in w, so this is exact,
// not just a w=0 derivative).
inline MultiPoly width_minor_poly(const FlatParams& q) {
  const int nb = num_b_vars(q.d, q.t);
  std::vector<std::vector<MultiPoly>> m;
  for (int r = 1; r <= q.t; ++r) {
    std::vector<MultiPoly> row;
    for (int c = 1; c <= q.t; ++c)
      row.push_back(detail::system_entry(q, r, c, nb));
    m.push_back(std::move(row));
  }
  return detail::poly_det(m);
}

// Symbolic expansion of the (t+1)x(t+1) intersection determinant, split
// into the w-free part P and the w-carrying part f (with f(.,w=0) == 0).
inline IntersectionPoly intersection_poly(const FlatParams& q) {
  const int d = q.d, t = q.t;
  const int nb = num_b_vars(d, t);
  const int nv = nb + 1;  // + w
  std::vector<std::vector<MultiPoly>> m;
  for (int r = 1; r <= t + 1; ++r) {
    std::vector<MultiPoly> row;
    for (int c = 1; c <= t + 1; ++c) {
      MultiPoly e = detail::system_entry(q, r, c, nv);
      if (r == t + 1 && c == t + 1) {
        ExponentTuple one(static_cast<std::size_t>(nv), 0);
        e.add_term(one, Rational(1));  // the +1 carried over from the RHS
        ExponentTuple we(static_cast<std::size_t>(nv), 0);
        we.back() = 1;
        e.add_term(we, Rational(-1));  // ... minus w
      }
      row.push_back(std::move(e));
    }
    m.push_back(std::move(row));
  }
  const MultiPoly det = detail::poly_det(m);
  MultiPoly p_embedded(nv, det.degree_bound());
  MultiPoly f(nv, det.degree_bound());
  for (const auto& [e, c] : det.terms()) {
    if (e.back() == 0)
      p_embedded.add_term(e, c);
    else
      f.add_term(e, c);
  }
  return IntersectionPoly{detail::strip_last_var(p_embedded), f};
}

// Closed form of the w-free part for lines (t = 1), in the 2(d-1)
// b-variables. Agrees with intersection_poly(q).P exactly.
inline MultiPoly derive_P1(const FlatParams& q) {
  if (q.t != 1) throw std::invalid_argument("derive_P1 requires t = 1");
  if (q.d < 3) throw std::invalid_argument("derive_P1 requires d >= 3");
  const int d = q.d;
  const int nb = num_b_vars(d, 1);
  MultiPoly p(nb, 2);
  auto mono = [&](std::initializer_list<int> idx) {
    ExponentTuple e(static_cast<std::size_t>(nb), 0);
    for (int k : idx) e[static_cast<std::size_t>(k)] += 1;
    return e;
  };
  const Rational a01 = q.at(0, 1);
  p.add_term(mono({}), a01);
  for (int i = 1; i <= d - 1; ++i) {
    p.add_term(mono({bvar_index(2, i, d, 1)}), a01 * q.at(i, 2));
    p.add_term(mono({bvar_index(1, i, d, 1)}), q.at(i, 1));
  }
  for (int i = 1; i <= d - 1; ++i)
    for (int j = 1; j <= d - 1; ++j) {
      if (i == j) continue;
      p.add_term(mono({bvar_index(1, i, d, 1), bvar_index(2, j, d, 1)}),
                 q.at(i, 1) * q.at(j, 2) - q.at(j, 1) * q.at(i, 2));
    }
  return p;
}

// Closed form of the w-free part for planes in R^4 (t = 2, d = 4), in the
// six b-variables. Multilinear of degree <= 2; agrees with
// intersection_poly(q).P exactly.
inline MultiPoly derive_P2(const FlatParams& q) {
  if (q.t != 2 || q.d != 4)
    throw std::invalid_argument("derive_P2 requires (t,d) = (2,4)");
  const int d = 4, t = 2;
  const int nb = num_b_vars(d, t);
  MultiPoly p(nb, 2);
  auto mono = [&](std::initializer_list<int> idx) {
    ExponentTuple e(static_cast<std::size_t>(nb), 0);
    for (int k : idx) e[static_cast<std::size_t>(k)] += 1;
    return e;
  };
  const Rational a01 = q.at(0, 1);
  p.add_term(mono({}), a01);
  for (int j = 1; j <= 2; ++j) {
    for (int i = 2; i <= 3; ++i)
      p.add_term(mono({bvar_index(i, j, d, t)}), a01 * q.at(j, i));
    p.add_term(mono({bvar_index(1, j, d, t)}), q.at(j, 1));
  }
  for (int j = 1; j <= 2; ++j)
    for (int l = 1; l <= 2; ++l) {
      if (j == l) continue;
      p.add_term(mono({bvar_index(2, j, d, t), bvar_index(3, l, d, t)}),
                 a01 * (q.at(j, 2) * q.at(l, 3) - q.at(j, 3) * q.at(l, 2)));
      for (int k = 2; k <= 3; ++k)
        p.add_term(mono({bvar_index(1, j, d, t), bvar_index(k, l, d, t)}),
                   q.at(j, 1) * q.at(l, k) - q.at(j, k) * q.at(l, 1));
    }
  return p;
}

inline MultiPoly derive_P(const FlatParams& q) {
  return q.t == 1 ? derive_P1(q) : derive_P2(q);
}

// ---------------------------------------------------------------------------
// The y*G(x) + F(x) regrouping after slicing.
// ---------------------------------------------------------------------------

struct SplitGF {
  UniPoly G;  // coefficient of the y-variable, as a polynomial in x
  UniPoly F;  // remainder, as a polynomial in x
  bool degenerate = false;  // no y-dependence: G identically zero
};

// Fix every b-variable except y_var and x_var; regroup the sliced
// polynomial as y*G(x) + F(x). Throws if any y-degree exceeds 1.
inline SplitGF split_GF(const MultiPoly& p, int y_var, int x_var,
                        const std::map<int, Rational>& slice) {
  for (const auto& [v, val] : slice)
    if (v == y_var || v == x_var)
      throw std::invalid_argument("slice fixes a retained variable");
  const MultiPoly s = p.substitute(slice);
  SplitGF out;
  for (const auto& [e, c] : s.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      const int kk = static_cast<int>(k);
      if (kk != y_var && kk != x_var && e[k] != 0)
        throw std::invalid_argument("slice does not fix every other variable");
    }
    const int ye = e[static_cast<std::size_t>(y_var)];
    const int xe = e[static_cast<std::size_t>(x_var)];
    if (ye > 1) throw std::invalid_argument("polynomial is not linear in y");
    UniPoly& target = (ye == 1) ? out.G : out.F;
    target.set_coeff(xe, target.coeff(xe) + c);
  }
  out.degenerate = out.G.is_zero();
  return out;
}

// y = b(1,1), x = b(2,2) per the frozen layout
inline int default_y_var(int d, int t) { return bvar_index(1, 1, d, t); }
inline int default_x_var(int d, int t) { return bvar_index(2, 2, d, t); }

// ---------------------------------------------------------------------------
// Assumptions and the two intersection predicates.
// ---------------------------------------------------------------------------

struct Assumptions {
  bool as1 = false;  // proper intersection: system determinant nonzero
  bool as2 = false;  // width minor positive (slab has positive width)
};

inline Assumptions check_assumptions(const FlatParams& q, const SlabParams& s) {
  if (q.d != s.d || q.t != s.t)
    throw std::invalid_argument("flat/slab shape mismatch");
  const int n = q.t + 1;
  const int nb = num_b_vars(q.d, q.t);
  const auto bv = s.as_vector();
  ExactMatrix a(n, n);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c)
      a.at(r - 1, c - 1) = detail::system_entry(q, r, c, nb).eval(bv);
  Assumptions out;
  out.as1 = !is_zero(det_exact(a));
  out.as2 = sign(width_minor_poly(q).eval(bv)) > 0;
  return out;
}

// TRUE iff 0 <= P(a,b) <= -f(a,b,w0), evaluated exactly. This is the
// polynomial-slab membership predicate; -f(a,b,w0) = w0 * width minor.
inline bool slab_membership(const FlatParams& q, const SlabParams& s) {
  const auto bv = s.as_vector();
  const Rational p = derive_P(q).eval(bv);
  const Rational neg_f_w0 = s.w0 * width_minor_poly(q).eval(bv);
  return p >= 0 && p <= neg_f_w0;
}

// TRUE iff some w in [0, w0] solves P(a,b) + f(a,b,w) = 0, decided by
// exact root counting of the univariate polynomial in w. Requires the
// proper-intersection assumption.
inline bool intersects_oracle(const FlatParams& q, const SlabParams& s) {
  if (!check_assumptions(q, s).as1)
    throw std::domain_error("intersects_oracle requires proper intersection");
  const auto bv = s.as_vector();
  const Rational p = derive_P(q).eval(bv);
  const Rational minor = width_minor_poly(q).eval(bv);
  // g(w) = P - w * minor; the intersection determinant is linear in w
  const UniPoly g({p, -minor});
  if (g.is_zero()) return true;  // vanishes identically: every w works
  if (g.degree() == 0) return false;
  return count_roots_in(g, Rational(0), s.w0) >= 1;
}

// Fix a(1,1) = (1 + a(1,2)a(2,1)) / a(2,2); afterwards the coefficient of
// b(1,1)b(2,2) in the derived polynomial is exactly 1.
inline FlatParams normalize_query(const FlatParams& q) {
  const Rational a22 = q.at(2, 2);
  if (is_zero(a22))
    throw std::domain_error("normalize_query requires a(2,2) != 0");
  FlatParams r = q;
  r.set(1, 1, (Rational(1) + q.at(1, 2) * q.at(2, 1)) / a22);
  return r;
}

// ---------------------------------------------------------------------------
// JSON (decimal-string rationals)
// ---------------------------------------------------------------------------

inline Json to_json(const FlatParams& q) {
  Json entries = Json::array();
  for (const auto& [ij, v] : q.a)
    entries.push_back(Json{{"i", ij.first}, {"j", ij.second},
                           {"num", int_str(num(v))}, {"den", int_str(den(v))}});
  return Json{{"d", q.d}, {"t", q.t}, {"a", entries}};
}

inline FlatParams flat_from_json(const Json& j) {
  FlatParams q(j.at("d").get<int>(), j.at("t").get<int>());
  for (const auto& e : j.at("a"))
    q.set(e.at("i").get<int>(), e.at("j").get<int>(),
          rat_from_strings(e.at("num").get<std::string>(),
                           e.at("den").get<std::string>()));
  return q;
}

inline Json to_json(const SlabParams& s) {
  Json entries = Json::array();
  for (const auto& [ri, v] : s.b)
    entries.push_back(Json{{"r", ri.first}, {"i", ri.second},
                           {"num", int_str(num(v))}, {"den", int_str(den(v))}});
  return Json{{"d", s.d}, {"t", s.t}, {"b", entries}, {"w0", to_json(s.w0)}};
}

inline SlabParams slab_from_json(const Json& j) {
  SlabParams s(j.at("d").get<int>(), j.at("t").get<int>());
  for (const auto& e : j.at("b"))
    s.set(e.at("r").get<int>(), e.at("i").get<int>(),
          rat_from_strings(e.at("num").get<std::string>(),
                           e.at("den").get<std::string>()));
  s.w0 = rational_from_json(j.at("w0"));
  return s;
}

}  // namespace slablb
