#include "topent/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

bool bar_less(const Bar& a, const Bar& b) noexcept {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.death != b.death) return a.death < b.death;
  return a.essential < b.essential;
}

Barcode::Barcode(std::vector<Bar> bars, double t_max) : bars_(std::move(bars)), t_max_(t_max) {
  if (!(t_max_ > 0.0) || !std::isfinite(t_max_)) {
    throw ValidationError("barcode t_max must be a positive finite number");
  }
  for (const Bar& bar : bars_) {
    if (bar.dim < 0) throw ValidationError("bar dimension must be nonnegative");
    if (!std::isfinite(bar.birth) || !std::isfinite(bar.death) || !(bar.birth < bar.death)) {
      throw ValidationError("bar needs finite birth < death");
    }
    if (bar.essential && bar.death != t_max_) {
      throw ValidationError("essential bar must die at t_max");
    }
  }
  std::sort(bars_.begin(), bars_.end(), bar_less);
}

namespace {

using Index = std::uint32_t;
constexpr Index kNone = std::numeric_limits<Index>::max();

struct VertexListHash {
  std::size_t operator()(const std::vector<Vertex>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Vertex x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Sparse Z/2 column reducer over the boundary matrix of a filtration. Columns
// hold row indices in increasing order; the pivot is the last entry.
class BoundaryReducer {
 public:
  explicit BoundaryReducer(const Filtration& f)
      : f_(f), pivot_owner_(f.size(), kNone), reduced_(f.size()), positive_(f.size(), false) {
    index_.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      index_.emplace(f[k].vertices, static_cast<Index>(k));
    }
  }

  void reduce(bool clearing) {
    if (clearing) {
      std::vector<std::vector<Index>> by_dim(static_cast<std::size_t>(f_.dim_cap()) + 1);
      for (std::size_t k = 0; k < f_.size(); ++k) {
        by_dim[static_cast<std::size_t>(f_[k].dim())].push_back(static_cast<Index>(k));
      }
      for (int d = f_.dim_cap(); d >= 1; --d) {
        for (Index j : by_dim[static_cast<std::size_t>(d)]) {
          if (positive_[j]) continue;  // cleared
          const Index pivot = reduce_column(j);
          if (pivot != kNone) positive_[pivot] = true;
        }
      }
      for (Index j : by_dim[0]) positive_[j] = true;
    } else {
      for (std::size_t k = 0; k < f_.size(); ++k) reduce_column(static_cast<Index>(k));
    }
  }

  Barcode barcode() const {
    std::vector<Bar> bars;
    const double t_max = f_.t_max();
    for (std::size_t j = 0; j < f_.size(); ++j) {
      if (reduced_[j].empty()) continue;
      const Index i = reduced_[j].back();
      const double birth = f_[i].value;
      const double death = f_[j].value;
      if (birth < death) bars.push_back(Bar{f_[i].dim(), birth, death, false});
    }
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (!positive_[i] || pivot_owner_[i] != kNone) continue;
      const int dim = f_[i].dim();
      if (dim > f_.dim_cap() - 1) continue;
      if (f_[i].value < t_max) bars.push_back(Bar{dim, f_[i].value, t_max, true});
    }
    return Barcode(std::move(bars), t_max);
  }

 private:
  std::vector<Index> boundary(Index j) const {
    const auto& vs = f_[j].vertices;
    std::vector<Index> column;
    if (vs.size() < 2) return column;
    column.reserve(vs.size());
    std::vector<Vertex> facet(vs.size() - 1);
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k != drop) facet[w++] = vs[k];
      }
      auto it = index_.find(facet);
      if (it == index_.end()) throw InternalError("filtration missing a facet");
      column.push_back(it->second);
    }
    std::sort(column.begin(), column.end());
    return column;
  }

  // Returns the pivot row of the reduced column, or kNone if it reduced to 0.
  Index reduce_column(Index j) {
    std::vector<Index> column = boundary(j);
    std::vector<Index> scratch;
    while (!column.empty()) {
      const Index owner = pivot_owner_[column.back()];
      if (owner == kNone) break;
      const auto& other = reduced_[owner];
      scratch.clear();
      std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      column.swap(scratch);
    }
    if (column.empty()) {
      positive_[j] = true;
      return kNone;
    }
    const Index pivot = column.back();
    pivot_owner_[pivot] = j;
    reduced_[j] = std::move(column);
    return pivot;
  }

  const Filtration& f_;
  std::unordered_map<std::vector<Vertex>, Index, VertexListHash> index_;
  std::vector<Index> pivot_owner_;
  std::vector<std::vector<Index>> reduced_;
  std::vector<bool> positive_;
};

}  // namespace

Barcode compute_barcode(const Filtration& filtration, ReductionOptions options) {
  BoundaryReducer reducer(filtration);
  reducer.reduce(options.clearing);
  return reducer.barcode();
}

Barcode restrict_dim(const Barcode& barcode, int k) {
  std::vector<Bar> bars;
  for (const Bar& bar : barcode.bars()) {
    if (bar.dim == k) bars.push_back(bar);
  }
  return Barcode(std::move(bars), barcode.t_max());
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) noexcept {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Barcode dim0_barcode_unionfind(const DistanceMatrix& distances, double t_max) {
  if (!(t_max > 0.0)) throw InputError("t_max must be positive");
  const std::size_t n = distances.size();
  struct Edge {
    double length;
    std::size_t u, v;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances(i, j) <= t_max) edges.push_back({distances(i, j), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  DisjointSets sets(n);
  std::vector<Bar> bars;
  std::size_t components = n;
  for (const Edge& e : edges) {
    if (sets.unite(e.u, e.v)) {
      bars.push_back(Bar{0, 0.0, e.length, false});
      --components;
    }
  }
  for (std::size_t c = 0; c < components; ++c) bars.push_back(Bar{0, 0.0, t_max, true});
  return Barcode(std::move(bars), t_max);
}

Barcode dim0_barcode_unionfind(const PointCloud& cloud, double t_max) {
  return dim0_barcode_unionfind(pairwise_distances(cloud), t_max);
}

std::vector<std::size_t> betti_numbers_at(const Barcode& barcode, double t, int max_dim) {
  std::vector<std::size_t> betti(static_cast<std::size_t>(std::max(max_dim, -1) + 1), 0);
  for (const Bar& bar : barcode.bars()) {
    if (bar.dim <= max_dim && bar.birth <= t && t < bar.death) {
      ++betti[static_cast<std::size_t>(bar.dim)];
    }
  }
  return betti;
}

void write_barcode_json(std::ostream& out, const Barcode& barcode) {
  out << "{\n  \"t_max\": " << format_double(barcode.t_max())
      << ",\n  \"scale_convention\": \"diameter\",\n  \"bars\": [";
  bool first = true;
  for (const Bar& bar : barcode.bars()) {
    out << (first ? "\n" : ",\n") << "    {\"dim\": " << bar.dim
        << ", \"birth\": " << format_double(bar.birth)
        << ", \"death\": " << format_double(bar.death)
        << ", \"essential\": " << (bar.essential ? "true" : "false") << '}';
    first = false;
  }
  out << (first ? "]\n}\n" : "\n  ]\n}\n");
}

std::string barcode_to_json(const Barcode& barcode) {
  std::ostringstream out;
  write_barcode_json(out, barcode);
  return out.str();
}

Barcode read_barcode_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("barcode JSON: ") + e.what());
  }
  try {
    if (doc.contains("scale_convention") &&
        doc.at("scale_convention").get<std::string>() != "diameter") {
      throw FormatError("barcode JSON: unsupported scale_convention");
    }
    const double t_max = doc.at("t_max").get<double>();
    std::vector<Bar> bars;
    for (const auto& item : doc.at("bars")) {
      bars.push_back(Bar{item.at("dim").get<int>(), item.at("birth").get<double>(),
                         item.at("death").get<double>(), item.at("essential").get<bool>()});
    }
    return Barcode(std::move(bars), t_max);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("barcode JSON: ") + e.what());
  }
}

Barcode load_barcode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open barcode file '" + path + "'");
  return read_barcode_json(in);
}

}  // namespace topent
