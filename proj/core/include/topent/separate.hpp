#pragma once

// Iterative entropy-based separation of long-lived bars (features) from
// short-lived ones (noise), with a full per-iteration trace.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "topent/entropy.hpp"
#include "topent/persistence.hpp"

namespace topent {

// Rows whose C falls below 1 - kRatioTolerance stop an iteration.
inline constexpr double kRatioTolerance = 1e-12;
inline constexpr int kMaxSeparationIterations = 100;

// A length profile plus the bar that occupies each slot.
struct PreparedLengths {
  LengthProfile profile;
  std::vector<std::size_t> body_bars;  // bar index for each body entry
  std::size_t r_bar = 0;
  std::size_t t_bar = 0;
};

// Lengths death - birth of every bar. Bars are ordered by length descending,
// ties by (dim, birth, death); the first goes to the T slot, the last to the
// r slot, the rest form the body. Requires at least 2 bars.
PreparedLengths prepare_lengths(const Barcode& barcode);

struct SeparationRow {
  std::size_t index = 0;       // i, 1-based
  double length = 0.0;         // l_i
  double replaced = 0.0;       // l'_i
  double ratio = 0.0;          // C = S(L'_{i-1}) / S(L'_i)
  double rel_entropy = 0.0;    // E(L'_i) / E(M')
  bool is_feature = false;

  friend bool operator==(const SeparationRow&, const SeparationRow&) = default;
};

struct SeparationIteration {
  int iteration = 0;
  std::size_t n_prime = 0;
  std::size_t q = 0;
  double alpha = 0.0;
  double rel_entropy_start = 0.0;  // E(L) / E(M')
  std::vector<SeparationRow> rows;

  // Number of leading rows marked as features.
  std::size_t last_feature_index() const noexcept;
  // Index of the last row computed (where the loop stopped).
  std::size_t stop_index() const noexcept { return rows.size(); }

  friend bool operator==(const SeparationIteration&, const SeparationIteration&) = default;
};

// One pass of the neutralization loop over the arranged list body..., r, T:
// for i = 1, 2, ... computes L'_i and C, and stops at the first C < 1 (up to
// kRatioTolerance) or at i = n' - 2. Requires n' >= 3.
SeparationIteration run_iteration(const LengthProfile& profile, int iteration_number = 1);

struct SeparationResult {
  std::vector<SeparationIteration> iterations;
  std::vector<double> feature_lengths;  // T first, then retained body lengths
  std::vector<Bar> feature_bars;        // empty when run on bare lengths
  std::vector<Bar> noise_bars;

  friend bool operator==(const SeparationResult&, const SeparationResult&) = default;
};

// Repeats run_iteration, discarding the body entries after the last feature
// row whenever Q < (stop index), until Q >= stop index, the profile stops
// shrinking, or fewer than three lengths remain. Features are T plus the
// retained body; the r slot is noise unless every length is equal.
// Throws InternalError if kMaxSeparationIterations is exceeded.
SeparationResult separate_lengths(const LengthProfile& profile);
SeparationResult separate_features(const Barcode& barcode);

enum class TraceFormat { kText, kJson, kCsv };

// text: per iteration a header block (Iteration, n', Q, E(L')/E(M'), alpha)
//       and a row block (l_i, l'_i, C, E(L'_i)/E(M'), Feature?), then the
//       feature and noise lists.
// json: {"iterations": [...], "feature_lengths": [...], "feature_bars": [...],
//        "noise_bars": [...]}
// csv:  per iteration one "H,iteration,n_prime,Q,rel_entropy_start,alpha"
//       line followed by one "R,iteration,i,length,replaced,C,rel_entropy,feature"
//       line per row.
std::string render_trace(const SeparationResult& result, TraceFormat format);
SeparationResult parse_trace_json(std::istream& in);

}  // namespace topent
