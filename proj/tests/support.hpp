#pragma once

// Random generators and brute-force oracles shared by the unit, property and
// acceptance tests. The oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "topent/compare.hpp"
#include "topent/numeric.hpp"
#include "topent/pcd.hpp"
#include "topent/persistence.hpp"
#include "topent/vrips.hpp"

namespace topent::testing {

inline PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim, double scale = 1.0) {
  std::vector<double> coords(n * dim);
  for (double& x : coords) x = rng.uniform(-scale, scale);
  return PointCloud(std::move(coords), dim);
}

inline std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next_u64() % (hi - lo + 1));
}

// Log-uniform lengths in [lo, hi].
inline std::vector<double> random_lengths(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (double& x : out) x = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return out;
}

inline Diagram random_diagram(Rng& rng, std::size_t n, bool coarse) {
  std::vector<DiagramPoint> points;
  for (std::size_t k = 0; k < n; ++k) {
    double b, d;
    if (coarse) {
      // Small integer grid: many exact ties between candidate costs.
      b = static_cast<double>(rng.next_u64() % 6);
      d = b + 1.0 + static_cast<double>(rng.next_u64() % 5);
    } else {
      b = rng.uniform(0.0, 1.0);
      d = b + rng.uniform(1e-3, 1.0);
    }
    points.push_back({b, d});
  }
  return Diagram(std::move(points));
}

// Exhaustive bottleneck: every partial injection A -> B, leftovers go to the
// diagonal.
inline double brute_bottleneck(const Diagram& a, const Diagram& b) {
  const auto& pa = a.points();
  const auto& pb = b.points();
  std::vector<bool> used(pb.size(), false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double worst) {
    if (worst >= best) return;
    if (i == pa.size()) {
      for (std::size_t j = 0; j < pb.size(); ++j) {
        if (!used[j]) worst = std::max(worst, (pb[j].death - pb[j].birth) / 2.0);
      }
      best = std::min(best, worst);
      return;
    }
    go(i + 1, std::max(worst, (pa[i].death - pa[i].birth) / 2.0));
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      const double c = std::max(std::abs(pa[i].birth - pb[j].birth),
                                std::abs(pa[i].death - pb[j].death));
      go(i + 1, std::max(worst, c));
      used[j] = false;
    }
  };
  go(0, 0.0);
  return best;
}

// Exhaustive 2 d_GH over all |W|^|V| maps, keeping the surjective ones.
inline double brute_gh(const PointCloud& v, const PointCloud& w) {
  const DistanceMatrix dv = pairwise_distances(v);
  const DistanceMatrix dw = pairwise_distances(w);
  const std::size_t m = v.size();
  const std::size_t k = w.size();
  std::vector<std::size_t> map(m, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::set<std::size_t> image(map.begin(), map.end());
    if (image.size() == k) {
      double worst = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          worst = std::max(worst, std::abs(dv(p, q) - dw(map[p], map[q])));
        }
      }
      best = std::min(best, worst);
    }
    std::size_t pos = 0;
    while (pos < m && ++map[pos] == k) map[pos++] = 0;
    if (pos == m) break;
  }
  return best;
}

// Every vertex subset of size <= dim_cap + 1 with diameter <= t_max, found by
// scanning all subsets (clouds of at most ~16 points).
inline std::vector<Simplex> brute_vr_simplices(const DistanceMatrix& d, int dim_cap,
                                               double t_max) {
  const std::size_t n = d.size();
  std::vector<Simplex> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> vs;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask & (1u << v)) vs.push_back(static_cast<Vertex>(v));
    }
    if (static_cast<int>(vs.size()) > dim_cap + 1) continue;
    double diam = 0.0;
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) diam = std::max(diam, d(vs[a], vs[b]));
    }
    if (diam <= t_max) out.push_back({vs, diam});
  }
  std::sort(out.begin(), out.end(), filtration_less);
  return out;
}

// Dense Z/2 reduction without any optimization: the textbook algorithm on a
// full boundary matrix, as an oracle for compute_barcode.
inline Barcode brute_barcode(const Filtration& f) {
  const std::size_t m = f.size();
  std::map<std::vector<Vertex>, std::size_t> index;
  for (std::size_t k = 0; k < m; ++k) index[f[k].vertices] = k;
  std::vector<std::vector<char>> cols(m, std::vector<char>(m, 0));
  for (std::size_t k = 0; k < m; ++k) {
    const auto& vs = f[k].vertices;
    if (vs.size() < 2) continue;
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::vector<Vertex> face;
      for (std::size_t t = 0; t < vs.size(); ++t) {
        if (t != drop) face.push_back(vs[t]);
      }
      cols[k][index.at(face)] = 1;
    }
  }
  auto low = [&](std::size_t k) -> long {
    for (std::size_t r = m; r-- > 0;) {
      if (cols[k][r]) return static_cast<long>(r);
    }
    return -1;
  };
  std::vector<long> lows(m, -1);
  for (std::size_t k = 0; k < m; ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      const long l = low(k);
      if (l < 0) break;
      for (std::size_t j = 0; j < k; ++j) {
        if (lows[j] == l) {
          for (std::size_t r = 0; r < m; ++r) cols[k][r] ^= cols[j][r];
          changed = true;
          break;
        }
      }
    }
    lows[k] = low(k);
  }
  std::vector<bool> paired(m, false);
  std::vector<Bar> bars;
  for (std::size_t k = 0; k < m; ++k) {
    if (lows[k] < 0) continue;
    const auto birth_idx = static_cast<std::size_t>(lows[k]);
    paired[birth_idx] = paired[k] = true;
    const double b = f[birth_idx].value;
    const double d = f[k].value;
    if (b < d) bars.push_back({f[birth_idx].dim(), b, d, false});
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (paired[k] || f[k].dim() > f.dim_cap() - 1) continue;
    if (f[k].value < f.t_max()) bars.push_back({f[k].dim(), f[k].value, f.t_max(), true});
  }
  return Barcode(std::move(bars), f.t_max());
}

inline std::vector<double> sorted_lengths(const Barcode& b, int dim) {
  std::vector<double> out;
  for (const Bar& bar : b.bars()) {
    if (bar.dim == dim) out.push_back(bar.length());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace topent::testing
