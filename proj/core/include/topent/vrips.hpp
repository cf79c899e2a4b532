#pragma once

// Vietoris-Rips filtrations indexed by simplex diameter.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "topent/pcd.hpp"

namespace topent {

using Vertex = std::uint32_t;

struct Simplex {
  std::vector<Vertex> vertices;  // strictly increasing
  double value = 0.0;            // diameter; 0 for a vertex

  int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

// Filtration order: value, then dimension, then lexicographic vertex list.
bool filtration_less(const Simplex& a, const Simplex& b) noexcept;

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;
inline constexpr int kDefaultDimCap = 2;

// A simplex list sorted in filtration order, closed under faces, with every
// value <= t_max. dim_cap is the largest simplex dimension present in the
// construction; homology is exact in dimensions 0 .. dim_cap - 1.
class Filtration {
 public:
  // Sorts the simplices and validates closure, monotonicity and the bounds;
  // throws ValidationError on violation.
  Filtration(std::vector<Simplex> simplices, double t_max, int dim_cap);

  std::span<const Simplex> simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const noexcept { return simplices_[i]; }
  double t_max() const noexcept { return t_max_; }
  int dim_cap() const noexcept { return dim_cap_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }

 private:
  struct Trusted {};
  Filtration(Trusted, std::vector<Simplex> simplices, double t_max, int dim_cap,
             std::size_t vertex_count);
  friend Filtration build_vr_filtration(const DistanceMatrix&, int, double, std::size_t);

  std::vector<Simplex> simplices_;
  double t_max_;
  int dim_cap_;
  std::size_t vertex_count_;
};

// Max over pairs of the distance matrix entries; 0 for a single vertex.
double simplex_diameter(std::span<const Vertex> vertices, const DistanceMatrix& distances);

// Every simplex of dimension <= dim_cap whose diameter is <= t_max, found by
// growing cliques of the threshold graph one vertex at a time (each new vertex
// larger than all current ones). Throws ResourceError once the number of
// simplices exceeds `budget`.
Filtration build_vr_filtration(const DistanceMatrix& distances, int dim_cap, double t_max,
                               std::size_t budget = kDefaultSimplexBudget);
Filtration build_vr_filtration(const PointCloud& cloud, int dim_cap, double t_max,
                               std::size_t budget = kDefaultSimplexBudget);

// Debug dump, one simplex per line: "value dim v0 v1 ...".
void write_filtration(std::ostream& out, const Filtration& filtration);

}  // namespace topent
