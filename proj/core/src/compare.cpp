#include "topent/compare.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>

#include "topent/entropy.hpp"
#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

Diagram::Diagram(std::vector<DiagramPoint> points) : points_(std::move(points)) {
  for (const auto& p : points_) {
    if (!std::isfinite(p.birth) || !std::isfinite(p.death) || !(p.birth < p.death)) {
      throw ValidationError("diagram points need finite birth < death");
    }
  }
}

Diagram diagram_of(const Barcode& barcode, int dim) {
  std::vector<DiagramPoint> points;
  for (const Bar& bar : barcode.bars()) {
    if (bar.dim == dim) points.push_back({bar.birth, bar.death});
  }
  return Diagram(std::move(points));
}

double matching_cost(const DiagramPoint& a, const DiagramPoint& b) noexcept {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const DiagramPoint& a) noexcept { return (a.death - a.birth) / 2.0; }

namespace {

// Hopcroft-Karp maximum matching on a bipartite graph with equal sides.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::size_t n) : n_(n), adj_(n) {}

  void add_edge(std::size_t left, std::size_t right) { adj_[left].push_back(right); }

  bool has_perfect_matching() {
    match_left_.assign(n_, kFree);
    match_right_.assign(n_, kFree);
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < n_; ++u) {
        if (match_left_[u] == kFree && dfs(u)) ++matched;
      }
    }
    return matched == n_;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    layer_.assign(n_, kInf);
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_left_[u] == kFree) {
        layer_[u] = 0;
        queue.push(u);
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (layer_[w] == kInf) {
          layer_[w] = layer_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_right_[v];
      if (w == kFree || (layer_[w] == layer_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    layer_[u] = kInf;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_, match_right_, layer_;
};

// Left: A points then diagonal copies of B. Right: B points then diagonal
// copies of A.
bool matching_exists(const Diagram& a, const Diagram& b, double threshold) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  BipartiteMatcher matcher(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (matching_cost(a.points()[i], b.points()[j]) <= threshold) matcher.add_edge(i, j);
    }
    if (diagonal_cost(a.points()[i]) <= threshold) matcher.add_edge(i, nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (diagonal_cost(b.points()[j]) <= threshold) matcher.add_edge(na + j, j);
    for (std::size_t i = 0; i < na; ++i) matcher.add_edge(na + j, nb + i);
  }
  return matcher.has_perfect_matching();
}

}  // namespace

double bottleneck_distance(const Diagram& a, const Diagram& b) {
  std::vector<double> candidates{0.0};
  for (const auto& p : a.points()) {
    candidates.push_back(diagonal_cost(p));
    for (const auto& q : b.points()) candidates.push_back(matching_cost(p, q));
  }
  for (const auto& q : b.points()) candidates.push_back(diagonal_cost(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Matching everything to the diagonal is always feasible at the largest
  // candidate, so the search has a valid upper end.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matching_exists(a, b, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

namespace {

class SurjectionSearch {
 public:
  SurjectionSearch(const DistanceMatrix& dv, const DistanceMatrix& dw)
      : dv_(dv), dw_(dw), image_(dv.size()), hits_(dw.size(), 0) {}

  double run() {
    best_ = std::numeric_limits<double>::infinity();
    uncovered_ = dw_.size();
    assign(0, 0.0);
    return best_;
  }

 private:
  void assign(std::size_t p, double current) {
    const std::size_t m = dv_.size();
    if (p == m) {
      if (uncovered_ == 0) best_ = std::min(best_, current);
      return;
    }
    if (uncovered_ > m - p) return;
    for (std::size_t target = 0; target < dw_.size(); ++target) {
      double worst = current;
      for (std::size_t q = 0; q < p && worst < best_; ++q) {
        worst = std::max(worst, std::abs(dv_(p, q) - dw_(target, image_[q])));
      }
      if (worst >= best_) continue;
      image_[p] = target;
      if (hits_[target]++ == 0) --uncovered_;
      assign(p + 1, worst);
      if (--hits_[target] == 0) ++uncovered_;
    }
  }

  const DistanceMatrix& dv_;
  const DistanceMatrix& dw_;
  std::vector<std::size_t> image_;
  std::vector<std::size_t> hits_;
  std::size_t uncovered_ = 0;
  double best_ = 0.0;
};

}  // namespace

double gh_distortion(const PointCloud& v, const PointCloud& w) {
  if (v.size() < w.size()) {
    throw InputError("gh_distortion needs |V| >= |W| (surjections V -> W)");
  }
  if (v.size() > kMaxGhPoints) {
    throw SizeError("gh_distortion enumerates surjections and supports at most " +
                    std::to_string(kMaxGhPoints) +
                    " points; use identity_distortion for larger clouds");
  }
  return SurjectionSearch(pairwise_distances(v), pairwise_distances(w)).run();
}

double identity_distortion(const PointCloud& v, const PointCloud& w) {
  if (v.size() != w.size()) throw InputError("identity_distortion needs clouds of equal size");
  const DistanceMatrix dv = pairwise_distances(v);
  const DistanceMatrix dw = pairwise_distances(w);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      worst = std::max(worst, std::abs(dv(i, j) - dw(i, j)));
    }
  }
  return worst;
}

namespace {

double barcode_entropy(const Barcode& barcode) {
  std::vector<double> lengths;
  for (const Bar& bar : barcode.bars()) lengths.push_back(bar.length());
  return lengths.empty() ? 0.0 : persistent_entropy(lengths);
}

}  // namespace

StabilityReport stability_report(const PointCloud& v, const std::vector<double>& deltas,
                                 std::uint64_t seed, int dim_cap) {
  if (!std::is_sorted(deltas.begin(), deltas.end())) {
    throw InputError("stability deltas must be sorted increasing");
  }
  if (dim_cap < 1) throw InputError("stability needs dim_cap >= 1");
  const DistanceMatrix dv = pairwise_distances(v);
  const double v_scale = scale_bounds(dv).t_max;

  StabilityReport report;
  for (double delta : deltas) {
    if (!(delta >= 0.0)) throw InputError("stability deltas must be nonnegative");
    const PointCloud w = perturb(v, delta, seed);
    const DistanceMatrix dw = pairwise_distances(w);
    StabilityRecord record;
    record.delta = delta;
    record.t_max = std::max(v_scale, scale_bounds(dw).t_max);
    record.exact_gh = v.size() <= kMaxGhPoints;
    record.distortion = record.exact_gh ? gh_distortion(v, w) : identity_distortion(v, w);

    const Barcode bv = compute_barcode(build_vr_filtration(dv, dim_cap, record.t_max));
    const Barcode bw = compute_barcode(build_vr_filtration(dw, dim_cap, record.t_max));
    for (int k = 0; k < dim_cap; ++k) {
      const double db = bottleneck_distance(diagram_of(bv, k), diagram_of(bw, k));
      record.bottleneck.push_back(db);
      if (record.exact_gh && db > record.distortion + kStabilityTolerance) {
        record.inequality_holds = false;
      }
    }
    record.entropy_gap = std::abs(barcode_entropy(bv) - barcode_entropy(bw));
    report.all_inequalities_hold = report.all_inequalities_hold && record.inequality_holds;
    report.records.push_back(std::move(record));
  }
  if (report.records.size() >= 2 &&
      report.records.front().entropy_gap > report.records.back().entropy_gap) {
    report.entropy_trend_warning = true;
  }
  return report;
}

std::string stability_report_json(const StabilityReport& report) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < report.records.size(); ++k) {
    const StabilityRecord& r = report.records[k];
    out << (k ? ",\n" : "\n") << "  {\"delta\": " << format_double(r.delta)
        << ", \"distortion\": " << format_double(r.distortion)
        << ", \"exact_gh\": " << (r.exact_gh ? "true" : "false")
        << ", \"t_max\": " << format_double(r.t_max) << ", \"bottleneck\": [";
    for (std::size_t d = 0; d < r.bottleneck.size(); ++d) {
      out << (d ? ", " : "") << format_double(r.bottleneck[d]);
    }
    out << "], \"entropy_gap\": " << format_double(r.entropy_gap)
        << ", \"inequality_holds\": " << (r.inequality_holds ? "true" : "false") << '}';
  }
  out << (report.records.empty() ? "]\n" : "\n]\n");
  return out.str();
}

std::string stability_report_text(const StabilityReport& report) {
  std::ostringstream out;
  std::size_t dims = 0;
  for (const auto& r : report.records) dims = std::max(dims, r.bottleneck.size());
  out << std::left << std::setw(24) << "delta" << std::setw(24) << "distortion"
      << std::setw(7) << "exact";
  for (std::size_t d = 0; d < dims; ++d) out << std::setw(24) << ("d_b[H" + std::to_string(d) + "]");
  out << std::setw(24) << "|dE|" << "ok\n";
  for (const auto& r : report.records) {
    out << std::setw(24) << format_double(r.delta) << std::setw(24)
        << format_double(r.distortion) << std::setw(7) << (r.exact_gh ? "yes" : "no");
    for (std::size_t d = 0; d < dims; ++d) {
      out << std::setw(24) << (d < r.bottleneck.size() ? format_double(r.bottleneck[d]) : "-");
    }
    out << std::setw(24) << format_double(r.entropy_gap) << (r.inequality_holds ? "yes" : "NO")
        << '\n';
  }
  if (report.entropy_trend_warning) {
    out << "warning: |dE| at the smallest delta exceeds |dE| at the largest delta\n";
  }
  out << (report.all_inequalities_hold ? "all stability inequalities hold\n"
                                       : "stability inequality VIOLATED\n");
  return out.str();
}

}  // namespace topent
