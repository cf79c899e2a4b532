#include "topent/pcd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

namespace {

// Returns the pair (i, j), i < j, of the first duplicate found in sorted order,
// or (n, n) if all points are distinct.
std::pair<std::size_t, std::size_t> find_duplicate(std::span<const double> coords,
                                                   std::size_t dim) {
  const std::size_t n = coords.size() / dim;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t i) { return coords.subspan(i * dim, dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ra = row(a);
    auto rb = row(b);
    if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
    if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
    return a < b;
  });
  for (std::size_t k = 1; k < n; ++k) {
    auto ra = row(order[k - 1]);
    auto rb = row(order[k]);
    if (std::equal(ra.begin(), ra.end(), rb.begin())) {
      return {std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k])};
    }
  }
  return {n, n};
}

}  // namespace

PointCloud::PointCloud(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), dim_(dim) {
  if (dim_ == 0) throw InputError("point dimension must be at least 1");
  if (coords_.size() % dim_ != 0) {
    throw FormatError("coordinate count " + std::to_string(coords_.size()) +
                      " is not a multiple of dimension " + std::to_string(dim_));
  }
  if (size() < 2) {
    throw SizeError("a point cloud needs at least 2 points, got " + std::to_string(size()));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw ValidationError("point coordinates must be finite");
  }
  auto [i, j] = find_duplicate(coords_, dim_);
  if (i != size()) {
    throw ValidationError("duplicate points at indices " + std::to_string(i) + " and " +
                          std::to_string(j));
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw SizeError("a point cloud needs at least 2 points, got 0");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw FormatError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                        " coordinates, expected " + std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(std::move(coords), dim);
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (d_.size() != n_ * n_) throw InputError("distance matrix must be n x n");
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = euclidean_distance(cloud.point(i), cloud.point(j));
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return DistanceMatrix(n, std::move(d));
}

ScaleBounds scale_bounds(const DistanceMatrix& distances) {
  const std::size_t n = distances.size();
  if (n < 2) throw SizeError("scale bounds need at least 2 points");
  double t_max = std::numeric_limits<double>::infinity();
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double eccentricity = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      eccentricity = std::max(eccentricity, distances(i, j));
      r_min = std::min(r_min, distances(i, j));
    }
    t_max = std::min(t_max, eccentricity);
  }
  return {t_max, r_min};
}

ScaleBounds scale_bounds(const PointCloud& cloud) {
  return scale_bounds(pairwise_distances(cloud));
}

PointCloud load_points(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#') continue;

    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      const std::string_view field =
          view.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                             : comma - start);
      try {
        coords.push_back(parse_double(field));
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
      }
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (dim == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw FormatError("line " + std::to_string(line_no) + ": ragged row with " +
                        std::to_string(fields) + " coordinates, expected " +
                        std::to_string(dim));
    }
  }
  if (dim == 0 || coords.size() / dim < 2) {
    throw SizeError("a point cloud needs at least 2 points, got " +
                    std::to_string(dim == 0 ? 0 : coords.size() / dim));
  }
  return PointCloud(std::move(coords), dim);
}

PointCloud load_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open point file '" + path + "'");
  return load_points(in);
}

void write_points(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
}

PointCloud sample_circle(std::size_t n, double radius, double jitter, std::uint64_t seed) {
  if (n < 3) throw InputError("sample_circle needs n >= 3");
  if (!(radius > 0.0)) throw InputError("sample_circle needs radius > 0");
  if (!(jitter >= 0.0)) throw InputError("sample_circle needs jitter >= 0");
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    double rho = radius;
    if (jitter > 0.0) {
      rho += rng.uniform(-jitter, jitter);
      angle += rng.uniform(-jitter, jitter) / radius;
    }
    coords.push_back(rho * std::cos(angle));
    coords.push_back(rho * std::sin(angle));
  }
  return PointCloud(std::move(coords), 2);
}

PointCloud sample_torus(std::size_t n, double major_radius, double minor_radius,
                        std::uint64_t seed) {
  if (n < 2) throw InputError("sample_torus needs n >= 2");
  if (!(minor_radius > 0.0 && minor_radius < major_radius)) {
    throw InputError("sample_torus needs 0 < rho < R");
  }
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(3 * n);
  std::set<std::vector<double>> seen;
  while (seen.size() < n) {
    const double tube = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double around = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double ring = major_radius + minor_radius * std::cos(tube);
    std::vector<double> p{ring * std::cos(around), ring * std::sin(around),
                          minor_radius * std::sin(tube)};
    if (!seen.insert(p).second) continue;
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(std::move(coords), 3);
}

PointCloud perturb(const PointCloud& cloud, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InputError("perturb needs delta >= 0");
  if (delta == 0.0) return cloud;
  const std::size_t n = cloud.size();
  const std::size_t dim = cloud.dim();
  Rng rng(seed);
  std::vector<double> coords(cloud.coords().begin(), cloud.coords().end());
  std::set<std::vector<double>> placed;
  std::vector<double> offset(dim);
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt <= kPerturbRetries && !ok; ++attempt) {
      // Rejection sampling from a ball slightly inside the unit ball, so the
      // rounded displacement still has norm <= delta.
      constexpr double kShrink = 1.0 - 1e-9;
      double norm_sq = 0.0;
      do {
        norm_sq = 0.0;
        for (auto& c : offset) {
          c = rng.uniform(-1.0, 1.0);
          norm_sq += c * c;
        }
      } while (norm_sq > kShrink * kShrink);
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) p[k] = cloud.point(i)[k] + delta * offset[k];
      if (placed.insert(p).second) {
        std::copy(p.begin(), p.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * dim));
        ok = true;
      }
    }
    if (!ok) {
      throw ValidationError("perturb: point " + std::to_string(i) + " collided after " +
                            std::to_string(kPerturbRetries) + " retries");
    }
  }
  return PointCloud(std::move(coords), dim);
}

}  // namespace topent
