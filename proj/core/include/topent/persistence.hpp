#pragma once

// Persistence barcodes of filtrations over Z/2.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "topent/pcd.hpp"
#include "topent/vrips.hpp"

namespace topent {

// A half-open interval [birth, death) in homological dimension `dim`.
// `essential` marks a class still alive at the filtration cutoff; its death
// is then the cutoff t_max.
struct Bar {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;

  double length() const noexcept { return death - birth; }

  friend bool operator==(const Bar&, const Bar&) = default;
};

// Canonical bar order: (dim, birth, death, essential).
bool bar_less(const Bar& a, const Bar& b) noexcept;

// A multiset of bars kept in canonical order, plus the cutoff scale.
class Barcode {
 public:
  Barcode() = default;
  Barcode(std::vector<Bar> bars, double t_max);

  const std::vector<Bar>& bars() const noexcept { return bars_; }
  double t_max() const noexcept { return t_max_; }
  std::size_t size() const noexcept { return bars_.size(); }
  bool empty() const noexcept { return bars_.empty(); }

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<Bar> bars_;
  double t_max_ = 0.0;
};

struct ReductionOptions {
  // Reduce from the top dimension down and zero out the columns of simplices
  // already known to be positive. Output is identical either way.
  bool clearing = true;
};

// Standard column reduction of the boundary matrix. Every pair (s, t) with
// value(s) < value(t) gives [value(s), value(t)) in dim(s); unpaired
// simplices of dimension <= dim_cap - 1 give [value, t_max) flagged
// essential. Zero-length intervals are dropped.
Barcode compute_barcode(const Filtration& filtration, ReductionOptions options = {});

// Bars of dimension k only; t_max is kept.
Barcode restrict_dim(const Barcode& barcode, int k);

// Dimension-0 barcode from Kruskal's algorithm on edges of length <= t_max:
// each merge kills a component at the edge length, survivors are essential.
Barcode dim0_barcode_unionfind(const DistanceMatrix& distances, double t_max);
Barcode dim0_barcode_unionfind(const PointCloud& cloud, double t_max);

// Betti numbers at scale t: bars with birth <= t < death, per dimension.
std::vector<std::size_t> betti_numbers_at(const Barcode& barcode, double t, int max_dim);

// Barcode JSON:
//   {"t_max": x, "scale_convention": "diameter",
//    "bars": [{"dim": k, "birth": b, "death": d, "essential": e}, ...]}
// Numbers use the shortest round-trip decimal form.
void write_barcode_json(std::ostream& out, const Barcode& barcode);
std::string barcode_to_json(const Barcode& barcode);
Barcode read_barcode_json(std::istream& in);
Barcode load_barcode_file(const std::string& path);

}  // namespace topent
