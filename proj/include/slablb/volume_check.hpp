#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "slablb/construction.hpp"
#include "slablb/reduction.hpp"
#include "slablb/report.hpp"
#include "slablb/rng.hpp"

namespace slablb {

struct VolumeEstimate {
  double estimate = 0.0;  // fraction of Vol(R_hat)
  double ci_low = 0.0;    // Wilson 95%
  double ci_high = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

// Wilson score interval at 95%; well-behaved near zero proportions.
inline std::pair<double, double> wilson_ci(long long hits, long long n) {
  if (n <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double phat = static_cast<double>(hits) / static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

// Multilinear polynomial flattened for fast double evaluation.
struct CompiledPoly {
  struct Term {
    double coeff;
    std::vector<int> vars;  // repeated index = higher power
  };
  std::vector<Term> terms;

  explicit CompiledPoly(const MultiPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Term t;
      t.coeff = to_double(c);
      for (std::size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) t.vars.push_back(static_cast<int>(v));
      terms.push_back(std::move(t));
    }
  }

  double eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double v = t.coeff;
      for (int idx : t.vars) v *= x[static_cast<std::size_t>(idx)];
      acc += v;
    }
    return acc;
  }
};

}  // namespace detail

// Membership in the polynomial slab {0 <= P <= w * minor}, evaluated in
// floating point with an exact re-check whenever either boundary is within
// 1e-12, so boundary samples are never misclassified.
class RangeEvaluator {
 public:
  RangeEvaluator(const FlatParams& query, const Rational& width)
      : P_(derive_P(query)), minor_(width_minor_poly(query)),
        cp_(P_), cminor_(minor_), w_(width), wd_(to_double(width)) {}

  bool contains(const std::vector<double>& b) const {
    const double p = cp_.eval(b);
    const double hi = wd_ * cminor_.eval(b);
    constexpr double kGuard = 1e-12;
    if (std::abs(p) > kGuard && std::abs(hi - p) > kGuard)
      return p > 0.0 && p < hi;
    // exact fallback; doubles are dyadic rationals, so this is lossless
    std::vector<Rational> br;
    br.reserve(b.size());
    for (double v : b) br.emplace_back(v);
    const Rational pe = P_.eval(br);
    const Rational he = w_ * minor_.eval(br);
    return pe >= 0 && pe <= he;
  }

  const MultiPoly& poly() const { return P_; }

 private:
  MultiPoly P_;
  MultiPoly minor_;
  detail::CompiledPoly cp_;
  detail::CompiledPoly cminor_;
  Rational w_;
  double wd_;
};

namespace detail {

inline std::vector<double> cube_center(const ConstructionInstance& inst) {
  std::vector<double> c;
  c.reserve(inst.base_point.size());
  for (const auto& v : inst.base_point) c.push_back(to_double(v));
  return c;
}

template <typename Member>
VolumeEstimate mc_fraction(const ConstructionInstance& inst, long long samples,
                           std::uint64_t seed, std::uint64_t stream,
                           Member&& member) {
  const auto center = cube_center(inst);
  const double half = inst.config.eps_p / 2.0;
  Rng rng(seed, stream);
  long long hits = 0;
  std::vector<double> b(center.size());
  for (long long s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < b.size(); ++k)
      b[k] = center[k] + rng.uniform(-half, half);
    if (member(b)) ++hits;
  }
  VolumeEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  std::tie(est.ci_low, est.ci_high) = wilson_ci(hits, samples);
  return est;
}

}  // namespace detail

inline VolumeEstimate estimate_range_volume(const FlatParams& query,
                                            const ConstructionInstance& inst,
                                            long long samples,
                                            std::uint64_t seed,
                                            const Rational& width) {
  if (samples < 10000) throw std::invalid_argument("samples below 10^4");
  const RangeEvaluator ev(query, width);
  return detail::mc_fraction(inst, samples, seed, 0x5e1fULL,
                             [&](const std::vector<double>& b) {
                               return ev.contains(b);
                             });
}

inline VolumeEstimate estimate_range_volume(const FlatParams& query,
                                            const ConstructionInstance& inst,
                                            long long samples,
                                            std::uint64_t seed) {
  return estimate_range_volume(query, inst, samples, seed, inst.w);
}

inline VolumeEstimate estimate_pair_volume(const FlatParams& q1,
                                           const FlatParams& q2,
                                           const ConstructionInstance& inst,
                                           long long samples,
                                           std::uint64_t seed) {
  if (q1 == q2) throw std::invalid_argument("pair volume of identical queries");
  const RangeEvaluator e1(q1, inst.w), e2(q2, inst.w);
  return detail::mc_fraction(inst, samples, seed, 0x9a17ULL,
                             [&](const std::vector<double>& b) {
                               return e1.contains(b) && e2.contains(b);
                             });
}

// Directional-derivative floor of the query polynomial along axis-parallel
// lines through the cube (the bounded-derivative observation).
inline CheckResult derivative_bound_check(const FlatParams& query,
                                          const ConstructionInstance& inst,
                                          int lines, std::uint64_t seed) {
  const MultiPoly P = derive_P(query);
  const int nb = P.num_vars();
  std::vector<detail::CompiledPoly> partials;
  partials.reserve(static_cast<std::size_t>(nb));
  for (int v = 0; v < nb; ++v)
    partials.emplace_back(P.partial_derivative(v));
  const auto center = detail::cube_center(inst);
  const double half = inst.config.eps_p / 2.0;
  Rng rng(seed, 0xd317ULL);
  double min_abs = std::numeric_limits<double>::infinity();
  std::vector<double> b(center.size());
  const int points_per_line = 32;
  for (int l = 0; l < lines; ++l) {
    const int axis = static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
    for (std::size_t k = 0; k < b.size(); ++k)
      b[k] = center[k] + rng.uniform(-half, half);
    for (int s = 0; s < points_per_line; ++s) {
      b[static_cast<std::size_t>(axis)] =
          center[static_cast<std::size_t>(axis)] + rng.uniform(-half, half);
      min_abs = std::min(
          min_abs, std::abs(partials[static_cast<std::size_t>(axis)].eval(b)));
    }
  }
  CheckResult out;
  out.check_id = "derivative_bound";
  out.params = Json{{"lines", lines}, {"eps_p", inst.config.eps_p}};
  out.measured = Json{{"min_abs_derivative", min_abs}};
  out.bound = Json{{"form", "min |dP/db| >= c > 0"}};
  out.fitted_constants = Json{{"c", min_abs}};
  out.pass = min_abs > 0.0;
  return out;
}

// Volume of the range restricted to a projection window on one axis, and
// the 2D-slice area probe; both against the w-proportional bounds.
inline CheckResult projected_volume_check(const FlatParams& query,
                                          const ConstructionInstance& inst,
                                          int axis, double lo, double hi,
                                          long long samples, std::uint64_t seed,
                                          double c_fit = 0.0) {
  const auto center = detail::cube_center(inst);
  const double half = inst.config.eps_p / 2.0;
  const double side_lo = center[static_cast<std::size_t>(axis)] - half;
  const double side_hi = center[static_cast<std::size_t>(axis)] + half;
  if (lo < side_lo - 1e-12 || hi > side_hi + 1e-12 || lo > hi)
    throw std::invalid_argument("projection interval outside the cube side");
  const RangeEvaluator ev(query, inst.w);
  const VolumeEstimate est = detail::mc_fraction(
      inst, samples, seed, 0x7a03ULL, [&](const std::vector<double>& b) {
        const double v = b[static_cast<std::size_t>(axis)];
        return v >= lo && v <= hi && ev.contains(b);
      });
  const double wd = to_double(inst.w);
  const double len = hi - lo;
  if (c_fit <= 0.0) {
    // calibrate on the full side: volume = c * w * |I| / eps_p at |I| = side
    const VolumeEstimate full = detail::mc_fraction(
        inst, samples, seed, 0x7a03ULL,
        [&](const std::vector<double>& b) { return ev.contains(b); });
    c_fit = full.estimate > 0 ? 2.0 * full.estimate / wd : 1.0;
  }
  const double bound = c_fit * wd * len / inst.config.eps_p;

  // 2D-slice probe: random axis pair, everything else fixed; area of the
  // slab trace should be O(w * eps_p), i.e. an O(w / eps_p) area fraction
  Rng rng(seed, 0x2d51ULL);
  double max_slice_fraction = 0.0;
  const int nb = static_cast<int>(center.size());
  for (int rep = 0; rep < 8; ++rep) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
    int v = u;
    while (v == u) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
    std::vector<double> b(center.size());
    for (std::size_t k = 0; k < b.size(); ++k)
      b[k] = center[k] + rng.uniform(-half, half);
    long long hits = 0;
    const long long slice_samples = 20000;
    for (long long s = 0; s < slice_samples; ++s) {
      b[static_cast<std::size_t>(u)] = center[static_cast<std::size_t>(u)] +
                                       rng.uniform(-half, half);
      b[static_cast<std::size_t>(v)] = center[static_cast<std::size_t>(v)] +
                                       rng.uniform(-half, half);
      if (ev.contains(b)) ++hits;
    }
    max_slice_fraction =
        std::max(max_slice_fraction,
                 static_cast<double>(hits) / static_cast<double>(slice_samples));
  }

  CheckResult out;
  out.check_id = "projected_volume";
  out.params = Json{{"axis", axis}, {"interval", Json::array({lo, hi})},
                    {"samples", samples}};
  out.measured = Json{{"estimate", est.estimate},
                      {"ci", Json::array({est.ci_low, est.ci_high})},
                      {"max_2d_slice_fraction", max_slice_fraction}};
  out.bound = Json{{"volume_bound", bound},
                   {"slice_bound", c_fit * wd / inst.config.eps_p}};
  out.fitted_constants = Json{{"c_fit", c_fit}};
  out.pass = est.estimate <= bound &&
             max_slice_fraction <= c_fit * wd / inst.config.eps_p;
  return out;
}

// ---------------------------------------------------------------------------
// The aggregated framework-condition report.
// ---------------------------------------------------------------------------

struct ConditionReport {
  VerificationReport report;
  std::string csv;  // check_id,query_i,query_j,estimate,ci_low,ci_high,threshold,pass
  bool cond1_all_pass = false;
  int cond2_pass = 0;
  int cond2_total = 0;
};

namespace detail {

// Run job(i) for i in [0, count) across at most `threads` workers; results
// land by index, so the outcome is identical to the serial order.
template <typename Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t t =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t k = 0; k < t; ++k)
    pool.emplace_back([k, t, count, &job] {
      for (std::size_t i = k; i < count; i += t) job(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline ConditionReport condition_report(const ConstructionInstance& inst,
                                        int sample_pairs, long long samples,
                                        std::uint64_t seed, double kappa = 4.0,
                                        int threads = 1) {
  if (inst.queries.empty())
    throw std::invalid_argument("condition report needs a materialized instance");
  ConditionReport out;
  std::ostringstream csv;
  csv << "check_id,query_i,query_j,estimate,ci_low,ci_high,threshold,pass\n";
  const double c_realized = inst.realized_c();
  const double threshold1 =
      4.0 * c_realized * inst.config.Q() / static_cast<double>(inst.config.n);
  bool all1 = true;
  std::vector<VolumeEstimate> single(inst.queries.size());
  detail::parallel_for(inst.queries.size(), threads, [&](std::size_t qi) {
    single[qi] = estimate_range_volume(inst.queries[qi], inst, samples,
                                       seed + static_cast<std::uint64_t>(qi));
  });
  for (std::size_t qi = 0; qi < inst.queries.size(); ++qi) {
    const VolumeEstimate& est = single[qi];
    const bool pass = est.estimate >= threshold1;
    all1 = all1 && pass;
    csv << "condition1," << qi << ",," << est.estimate << "," << est.ci_low
        << "," << est.ci_high << "," << threshold1 << "," << (pass ? 1 : 0)
        << "\n";
  }
  out.cond1_all_pass = all1;
  {
    CheckResult c;
    c.check_id = "condition1_all_queries";
    c.params = Json{{"queries", inst.queries.size()}, {"samples", samples},
                    {"realized_c", c_realized}};
    c.bound = Json{{"threshold", threshold1}, {"form", "estimate >= 4c Q/n"}};
    c.pass = all1;
    out.report.add(std::move(c));
  }
  const double threshold2 =
      kappa / (static_cast<double>(inst.config.n) * inst.psi);
  Rng pair_rng(seed, 0xba5eULL);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(sample_pairs));
  for (int p = 0; p < sample_pairs; ++p) {
    const std::size_t i = pair_rng.below(inst.queries.size());
    std::size_t j = i;
    while (j == i) j = pair_rng.below(inst.queries.size());
    pairs.emplace_back(i, j);
  }
  std::vector<VolumeEstimate> overlap(pairs.size());
  detail::parallel_for(pairs.size(), threads, [&](std::size_t p) {
    overlap[p] = estimate_pair_volume(
        inst.queries[pairs[p].first], inst.queries[pairs[p].second], inst,
        samples, seed + 0x10000ULL + static_cast<std::uint64_t>(p));
  });
  int pass2 = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const VolumeEstimate& est = overlap[p];
    const bool pass = est.ci_high <= threshold2;
    if (pass) ++pass2;
    csv << "condition2," << pairs[p].first << "," << pairs[p].second << ","
        << est.estimate << "," << est.ci_low << "," << est.ci_high << ","
        << threshold2 << "," << (pass ? 1 : 0) << "\n";
  }
  out.cond2_pass = pass2;
  out.cond2_total = sample_pairs;
  {
    CheckResult c;
    c.check_id = "condition2_sampled_pairs";
    c.params = Json{{"pairs", sample_pairs}, {"samples", samples},
                    {"kappa", kappa}};
    c.bound = Json{{"threshold", threshold2},
                   {"form", "ci_high <= kappa / (n psi)"}};
    c.measured = Json{{"pass", pass2}, {"total", sample_pairs}};
    c.pass = sample_pairs == 0 || pass2 * 100 >= 95 * sample_pairs;
    out.report.add(std::move(c));
  }
  {
    CheckResult c;
    c.check_id = "instance_summary";
    c.measured = Json{{"psi", inst.psi},
                      {"tau_grid", to_double(inst.tau_grid)},
                      {"m", static_cast<double>(inst.queries.size())},
                      {"S_lower",
                       static_cast<double>(inst.queries.size()) * inst.config.Q()},
                      {"realized_c", c_realized},
                      {"w", to_double(inst.w)}};
    c.pass = true;
    out.report.add(std::move(c));
  }
  out.csv = csv.str();
  return out;
}

}  // namespace slablb
