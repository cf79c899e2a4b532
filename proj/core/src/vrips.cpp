#include "topent/vrips.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

bool filtration_less(const Simplex& a, const Simplex& b) noexcept {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

Filtration::Filtration(std::vector<Simplex> simplices, double t_max, int dim_cap)
    : simplices_(std::move(simplices)), t_max_(t_max), dim_cap_(dim_cap), vertex_count_(0) {
  if (!(t_max_ > 0.0)) throw InputError("filtration t_max must be positive");
  if (dim_cap_ < 0) throw InputError("filtration dim_cap must be nonnegative");
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);

  std::map<std::vector<Vertex>, std::size_t> position;
  for (std::size_t k = 0; k < simplices_.size(); ++k) {
    const Simplex& s = simplices_[k];
    if (s.vertices.empty()) throw ValidationError("empty simplex");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end()) {
      throw ValidationError("simplex vertices must be strictly increasing");
    }
    if (s.dim() > dim_cap_) throw ValidationError("simplex dimension exceeds dim_cap");
    if (!(s.value >= 0.0) || s.value > t_max_) {
      throw ValidationError("simplex value outside [0, t_max]");
    }
    if (s.dim() == 0) ++vertex_count_;
    if (!position.emplace(s.vertices, k).second) throw ValidationError("repeated simplex");
    if (s.dim() == 0) continue;
    std::vector<Vertex> facet(s.vertices.size() - 1);
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::copy(s.vertices.begin(), s.vertices.begin() + static_cast<std::ptrdiff_t>(drop),
                facet.begin());
      std::copy(s.vertices.begin() + static_cast<std::ptrdiff_t>(drop) + 1, s.vertices.end(),
                facet.begin() + static_cast<std::ptrdiff_t>(drop));
      auto it = position.find(facet);
      if (it == position.end()) throw ValidationError("filtration is not closed under faces");
      if (simplices_[it->second].value > s.value) {
        throw ValidationError("face value exceeds coface value");
      }
    }
  }
}

Filtration::Filtration(Trusted, std::vector<Simplex> simplices, double t_max, int dim_cap,
                       std::size_t vertex_count)
    : simplices_(std::move(simplices)),
      t_max_(t_max),
      dim_cap_(dim_cap),
      vertex_count_(vertex_count) {}

double simplex_diameter(std::span<const Vertex> vertices, const DistanceMatrix& distances) {
  if (vertices.empty()) throw InputError("simplex_diameter needs at least one vertex");
  for (Vertex v : vertices) {
    if (v >= distances.size()) {
      throw InputError("vertex index " + std::to_string(v) + " out of range");
    }
  }
  double diameter = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      diameter = std::max(diameter, distances(vertices[a], vertices[b]));
    }
  }
  return diameter;
}

namespace {

class CliqueExpander {
 public:
  CliqueExpander(const DistanceMatrix& d, int dim_cap, double t_max, std::size_t budget)
      : d_(d), dim_cap_(dim_cap), budget_(budget), upper_(d.size()) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        if (d(i, j) <= t_max) upper_[i].push_back(static_cast<Vertex>(j));
      }
    }
  }

  std::vector<Simplex> run() {
    std::vector<Vertex> clique;
    for (std::size_t v = 0; v < d_.size(); ++v) {
      clique.assign(1, static_cast<Vertex>(v));
      emit(clique, 0.0);
      if (dim_cap_ >= 1) expand(clique, 0.0, upper_[v]);
    }
    return std::move(out_);
  }

 private:
  void emit(const std::vector<Vertex>& clique, double value) {
    if (out_.size() >= budget_) {
      throw ResourceError("simplex budget of " + std::to_string(budget_) +
                          " simplices exceeded; lower --dim-cap or --t-max, or raise the budget");
    }
    out_.push_back(Simplex{clique, value});
  }

  // `candidates` are the common upper neighbours of every clique vertex.
  void expand(std::vector<Vertex>& clique, double value, const std::vector<Vertex>& candidates) {
    std::vector<Vertex> next;
    for (Vertex u : candidates) {
      double coface_value = value;
      for (Vertex c : clique) coface_value = std::max(coface_value, d_(c, u));
      clique.push_back(u);
      emit(clique, coface_value);
      if (static_cast<int>(clique.size()) <= dim_cap_) {
        next.clear();
        const auto& nbrs = upper_[u];
        std::set_intersection(candidates.begin(), candidates.end(), nbrs.begin(), nbrs.end(),
                              std::back_inserter(next));
        if (!next.empty()) expand(clique, coface_value, next);
      }
      clique.pop_back();
    }
  }

  const DistanceMatrix& d_;
  int dim_cap_;
  std::size_t budget_;
  std::vector<std::vector<Vertex>> upper_;
  std::vector<Simplex> out_;
};

}  // namespace

Filtration build_vr_filtration(const DistanceMatrix& distances, int dim_cap, double t_max,
                               std::size_t budget) {
  if (dim_cap < 0) throw InputError("dim_cap must be nonnegative");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InputError("t_max must be positive");
  std::vector<Simplex> simplices = CliqueExpander(distances, dim_cap, t_max, budget).run();
  std::sort(simplices.begin(), simplices.end(), filtration_less);
  return Filtration(Filtration::Trusted{}, std::move(simplices), t_max, dim_cap,
                    distances.size());
}

Filtration build_vr_filtration(const PointCloud& cloud, int dim_cap, double t_max,
                               std::size_t budget) {
  return build_vr_filtration(pairwise_distances(cloud), dim_cap, t_max, budget);
}

void write_filtration(std::ostream& out, const Filtration& filtration) {
  for (const Simplex& s : filtration.simplices()) {
    out << format_double(s.value) << ' ' << s.dim();
    for (Vertex v : s.vertices) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace topent
