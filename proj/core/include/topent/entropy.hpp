#pragma once

// Persistent entropy of a list of bar lengths and its extremal bounds.
//
// All logarithms are natural. For lengths l_1..l_n with S = sum l_i and
// p_i = l_i / S the entropy is E = -sum p_i ln p_i, which lies in [0, ln n].

#include <cstddef>
#include <span>
#include <vector>

namespace topent {

// Bar lengths arranged for neutralization: `body` sorted decreasing, followed
// by the shortest length r and then the longest length T.
struct LengthProfile {
  std::vector<double> body;
  double r = 0.0;
  double T = 0.0;

  std::size_t n() const noexcept { return body.size() + 2; }
  double alpha() const noexcept { return r / T; }

  // body..., r, T
  std::vector<double> arranged() const;
};

// Validates T >= body >= r > 0 and the decreasing body order.
void validate(const LengthProfile& profile);

// Throws InputError on an empty list or a nonpositive entry.
double persistent_entropy(std::span<const double> lengths);

// State after replacing the first i entries of an ordered list by the value
// that maximizes the entropy with the tail R_i = (l_{i+1}, ..., l_n) fixed.
struct NeutralizationState {
  std::size_t i = 0;
  double replaced_value = 0.0;  // P_i / exp(E(R_i))
  double tail_sum = 0.0;        // P_i
  double tail_entropy = 0.0;    // E(R_i)
  double total = 0.0;           // P_i + i * replaced_value
};

// Requires 1 <= i <= n - 2. Computes the replaced value both as
// P_i / exp(E(R_i)) and as the weighted geometric mean prod l_j^(l_j / P_i),
// and throws InternalError if they disagree by more than 1e-9 relative.
NeutralizationState neutralize_prefix(std::span<const double> lengths, std::size_t i);

// The weighted geometric mean form of the replaced value, exp(sum (l_j/P) ln l_j)
// over the tail starting at index i (0-based position of l_{i+1}).
double replaced_value_product_form(std::span<const double> lengths, std::size_t i);

// E(L'_i) where L'_i has its first i entries neutralized; i = 0 gives E(L).
double entropy_after_neutralization(std::span<const double> lengths, std::size_t i);

// The list {replaced_value x i, l_{i+1}, ..., l_n}.
std::vector<double> neutralized_list(std::span<const double> lengths, std::size_t i);

// Number of maximal bars in the minimum-entropy barcode with n bars and ratio
// alpha = r / T:
//   round-half-to-even(alpha * n * (alpha - 1 - ln alpha) / (alpha - 1)^2),
// clamped to [0, n]; alpha = 1 (within 1e-12) returns n.
std::size_t q_bound(std::size_t n, double alpha);

// The continuous optimum before rounding, alpha * n * (alpha - 1 - ln alpha) / (alpha - 1)^2.
double q_bound_continuous(std::size_t n, double alpha);

// Q copies of T followed by n - Q copies of r with Q = q_bound(n, r / T),
// where Q is further kept in [1, n - 1] when r < T so that the list still has
// maximum T and minimum r.
std::vector<double> min_entropy_barcode(std::size_t n, double T, double r);

// {T, b x (n - 2), r} with b = T * alpha^(alpha / (1 + alpha)), alpha = r / T.
std::vector<double> max_entropy_barcode(std::size_t n, double T, double r);
double max_entropy_body_value(double T, double r);

// E(L) / E(max_entropy_barcode(|L|, T, r)); 1 when the denominator is 0.
// Throws InputError if T / r differ from max / min of L by more than 1e-12.
double relative_entropy(std::span<const double> lengths, double T, double r);

}  // namespace topent
