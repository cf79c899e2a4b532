#pragma once

// Distances between persistence diagrams and between finite point clouds,
// and the perturbation-stability report built from them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topent/pcd.hpp"
#include "topent/persistence.hpp"

namespace topent {

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// Finite multiset of off-diagonal points (birth < death).
class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(std::vector<DiagramPoint> points);

  const std::vector<DiagramPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<DiagramPoint> points_;
};

// Points of the bars of dimension `dim`; essential bars enter with death t_max.
Diagram diagram_of(const Barcode& barcode, int dim);

// L-infinity cost of matching two points, and of sending a point to the
// diagonal ((death - birth) / 2).
double matching_cost(const DiagramPoint& a, const DiagramPoint& b) noexcept;
double diagonal_cost(const DiagramPoint& a) noexcept;

// Exact bottleneck distance: binary search over the candidate costs with a
// perfect-matching feasibility test (Hopcroft-Karp) on the graph where every
// point may also be matched to the diagonal.
double bottleneck_distance(const Diagram& a, const Diagram& b);

// Exact min over all surjections c: V -> W of max |d(p,p') - d(c(p),c(p'))|.
// This is the quantity 2 d_GH(V, W) as defined through surjections; it is not
// symmetric in V and W. Requires |V| >= |W| and |V| <= kMaxGhPoints.
inline constexpr std::size_t kMaxGhPoints = 9;
double gh_distortion(const PointCloud& v, const PointCloud& w);

// max_{i,j} |d(v_i, v_j) - d(w_i, w_j)| for the identity correspondence.
double identity_distortion(const PointCloud& v, const PointCloud& w);

struct StabilityRecord {
  double delta = 0.0;
  double distortion = 0.0;       // exact 2 d_GH when `exact_gh`, else identity distortion
  bool exact_gh = false;
  double t_max = 0.0;            // shared cutoff of both filtrations
  std::vector<double> bottleneck;  // per dimension 0 .. dim_cap - 1
  double entropy_gap = 0.0;      // |E(F_V) - E(F_W)| over all bars
  bool inequality_holds = true;  // bottleneck <= distortion + 1e-9 (exact GH only)
};

struct StabilityReport {
  std::vector<StabilityRecord> records;
  bool all_inequalities_hold = true;
  // Set when |dE| at the smallest delta exceeds |dE| at the largest one.
  bool entropy_trend_warning = false;
};

inline constexpr double kStabilityTolerance = 1e-9;

// For each delta: W = perturb(V, delta, seed), both barcodes built to the
// larger of the two stopping scales, then distortion, per-dimension
// bottleneck distances and the entropy gap are recorded. `deltas` must be
// sorted increasing.
StabilityReport stability_report(const PointCloud& v, const std::vector<double>& deltas,
                                 std::uint64_t seed, int dim_cap);

std::string stability_report_json(const StabilityReport& report);
std::string stability_report_text(const StabilityReport& report);

}  // namespace topent
