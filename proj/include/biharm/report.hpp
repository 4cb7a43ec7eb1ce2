#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

inline constexpr double kFirstOrderTol = 1e-8;   // margins with at most two derivatives of u
inline constexpr double kFourthOrderTol = 1e-6;  // margins involving Delta w
inline constexpr std::size_t kTrimCells = 4;

/// Outcome of one pointwise inequality check. `margin[i]` is LHS - RHS at
/// node i (so >= 0 means the inequality holds there); only nodes with
/// `counted[i]` enter the statistics. pass <=> min margin >= -tolerance*scale.
struct VerificationReport {
  std::string inequality;
  std::map<std::string, double> params;
  std::vector<double> coordinate;  // r or x
  std::vector<double> time;        // empty for stationary checks
  std::vector<double> margin;
  std::vector<char> counted;

  double min_margin = std::numeric_limits<double>::infinity();
  double argmin_r = std::numeric_limits<double>::quiet_NaN();
  double argmin_t = std::numeric_limits<double>::quiet_NaN();
  double tolerance = kFirstOrderTol;
  double scale = 1.0;
  bool pass = false;
  bool applicable = true;
  std::size_t evaluated = 0;
  std::optional<double> refinement_order;
  std::vector<std::string> caveats;

  void add_caveat(std::string c) {
    if (std::find(caveats.begin(), caveats.end(), c) == caveats.end()) caveats.push_back(std::move(c));
  }
};

/// Fills min margin / argmin / pass from margin and counted. `scale` must
/// already be set.
inline void finalize(VerificationReport& rep) {
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.evaluated = 0;
  for (std::size_t i = 0; i < rep.margin.size(); ++i) {
    if (!rep.counted.empty() && !rep.counted[i]) continue;
    ++rep.evaluated;
    if (rep.margin[i] < rep.min_margin) {
      rep.min_margin = rep.margin[i];
      rep.argmin_r = i < rep.coordinate.size() ? rep.coordinate[i] : std::numeric_limits<double>::quiet_NaN();
      rep.argmin_t = i < rep.time.size() ? rep.time[i] : std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (rep.evaluated == 0) {
    rep.pass = true;
    rep.add_caveat("vacuous: no qualifying nodes");
    return;
  }
  rep.pass = rep.min_margin >= -rep.tolerance * rep.scale;
}

/// Largest |x_i| over counted entries.
inline double counted_max_abs(const std::vector<double>& x, const std::vector<char>& counted) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!counted.empty() && !counted[i]) continue;
    m = std::max(m, std::abs(x[i]));
  }
  return m;
}

/// Reports of the same inequality combine into one verdict. Associative:
/// min of margins, conjunction of verdicts, union of caveats.
inline VerificationReport merge(const VerificationReport& a, const VerificationReport& b) {
  if (a.inequality != b.inequality) throw PreconditionError("merge: reports check different inequalities");
  VerificationReport out = a;
  out.coordinate.clear();
  out.time.clear();
  out.margin.clear();
  out.counted.clear();
  out.pass = a.pass && b.pass;
  out.applicable = a.applicable || b.applicable;
  out.evaluated = a.evaluated + b.evaluated;
  out.scale = std::max(a.scale, b.scale);
  if (b.min_margin < a.min_margin) {
    out.min_margin = b.min_margin;
    out.argmin_r = b.argmin_r;
    out.argmin_t = b.argmin_t;
  }
  if (a.refinement_order && b.refinement_order) {
    out.refinement_order = std::min(*a.refinement_order, *b.refinement_order);
  } else if (!a.refinement_order) {
    out.refinement_order = b.refinement_order;
  }
  for (const auto& c : b.caveats) out.add_caveat(c);
  return out;
}

/// Observed order log2(e_coarse / e_fine) for a halving of h.
inline double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

/// Self-convergence order of a nodal quantity sampled on nested grids with
/// N, 2N and 4N intervals over the same window. Differences are taken on the
/// coarse nodes at least `trim` coarse cells from either end.
inline double self_convergence_order(const std::vector<double>& coarse, const std::vector<double>& mid,
                                     const std::vector<double>& fine, std::size_t trim = kTrimCells) {
  const std::size_t n = coarse.size() - 1;
  if (mid.size() != 2 * n + 1 || fine.size() != 4 * n + 1) {
    throw SizeError("self_convergence_order: grids are not nested 1:2:4");
  }
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = trim; i + trim <= n; ++i) {
    d1 = std::max(d1, std::abs(coarse[i] - mid[2 * i]));
    d2 = std::max(d2, std::abs(mid[2 * i] - fine[4 * i]));
  }
  return observed_order(d1, d2);
}

}  // namespace biharm
