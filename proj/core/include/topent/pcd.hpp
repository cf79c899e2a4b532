#pragma once

// Point clouds in R^d with the Euclidean metric, their stopping / minimum
// scales, and deterministic synthetic samplers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace topent {

// Immutable finite set of distinct points in R^d, stored row-major.
// Construction validates: d >= 1, at least two points, finite coordinates,
// and no two identical points.
class PointCloud {
 public:
  PointCloud(std::vector<double> coords, std::size_t dim);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<double> coords_;
  std::size_t dim_;
};

// Dense symmetric matrix of Euclidean distances with a zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {d_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

// Entry (i, j) is computed by a fixed-order sum over coordinates and mirrored,
// so the result is bit-identical to evaluating euclidean_distance(i, j).
DistanceMatrix pairwise_distances(const PointCloud& cloud);

// Diameter-convention scales of a cloud.
//   t_max = min_i max_j d(v_i, v_j): at this scale one vertex is adjacent to
//           all others, so the Rips complex is a cone.
//   r_min = min_{i != j} d(v_i, v_j): the first edge, i.e. the shortest
//           finite dimension-0 bar.
struct ScaleBounds {
  double t_max = 0.0;
  double r_min = 0.0;
};

ScaleBounds scale_bounds(const DistanceMatrix& distances);
ScaleBounds scale_bounds(const PointCloud& cloud);

// CSV: one point per line, comma-separated decimal literals, '#' comment
// lines and blank lines ignored, no trailing commas.
PointCloud load_points(std::istream& in);
PointCloud load_points_file(const std::string& path);

// Writes the cloud in the same CSV format with shortest round-trip numbers.
void write_points(std::ostream& out, const PointCloud& cloud);

// Points r(cos a, sin a). With jitter = 0 the angles are exactly 2*pi*k/n.
// With jitter > 0 the radius is offset by U(-jitter, jitter) and the angle by
// U(-jitter, jitter) / radius, so each coordinate of the polar offset is
// bounded by jitter. Requires n >= 3.
PointCloud sample_circle(std::size_t n, double radius, double jitter, std::uint64_t seed);

// Points on the torus ((R + rho cos t) cos p, (R + rho cos t) sin p, rho sin t)
// with t, p drawn uniformly in [0, 2*pi) (uniform in angle, not in area).
// A draw that coincides with an earlier point is rejected and redrawn.
PointCloud sample_torus(std::size_t n, double major_radius, double minor_radius,
                        std::uint64_t seed);

// Moves each point by a pseudo-random vector of norm <= delta, drawn
// uniformly from the ball. Order and count are preserved. A move that creates
// a duplicate point is redrawn (at most kPerturbRetries times per point).
inline constexpr int kPerturbRetries = 64;
PointCloud perturb(const PointCloud& cloud, double delta, std::uint64_t seed);

}  // namespace topent
