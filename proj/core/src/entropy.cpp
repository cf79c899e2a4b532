#include "topent/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

namespace {

constexpr double kReplacedValueTolerance = 1e-9;
constexpr double kUnitAlphaTolerance = 1e-12;
constexpr double kSlotTolerance = 1e-12;

void require_positive(std::span<const double> lengths) {
  if (lengths.empty()) throw InputError("length list must be nonempty");
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InputError("bar lengths must be positive and finite");
    }
  }
}

void require_extremes(double T, double r) {
  if (!(r > 0.0) || !std::isfinite(T)) throw InputError("r must be positive and T finite");
  if (r > T) throw InputError("r must not exceed T");
}

}  // namespace

std::vector<double> LengthProfile::arranged() const {
  std::vector<double> out(body);
  out.push_back(r);
  out.push_back(T);
  return out;
}

void validate(const LengthProfile& profile) {
  require_extremes(profile.T, profile.r);
  for (std::size_t k = 0; k < profile.body.size(); ++k) {
    const double l = profile.body[k];
    if (l > profile.T || l < profile.r) throw InputError("profile body outside [r, T]");
    if (k > 0 && l > profile.body[k - 1]) throw InputError("profile body must be decreasing");
  }
}

double persistent_entropy(std::span<const double> lengths) {
  require_positive(lengths);
  const double total = compensated_sum(lengths);
  CompensatedSum entropy;
  for (double l : lengths) {
    const double p = l / total;
    entropy.add(-p * std::log(p));
  }
  return std::max(0.0, entropy.value());
}

double replaced_value_product_form(std::span<const double> lengths, std::size_t i) {
  const auto tail = lengths.subspan(i);
  const double tail_sum = compensated_sum(tail);
  CompensatedSum log_mean;
  for (double l : tail) log_mean.add((l / tail_sum) * std::log(l));
  return std::exp(log_mean.value());
}

NeutralizationState neutralize_prefix(std::span<const double> lengths, std::size_t i) {
  require_positive(lengths);
  if (i < 1 || i + 2 > lengths.size()) {
    throw InputError("neutralization index " + std::to_string(i) + " outside [1, " +
                     std::to_string(lengths.size() < 2 ? 0 : lengths.size() - 2) + "]");
  }
  const auto tail = lengths.subspan(i);
  NeutralizationState state;
  state.i = i;
  state.tail_sum = compensated_sum(tail);
  state.tail_entropy = persistent_entropy(tail);
  state.replaced_value = state.tail_sum / std::exp(state.tail_entropy);
  state.total = state.tail_sum + static_cast<double>(i) * state.replaced_value;

  const double product_form = replaced_value_product_form(lengths, i);
  if (std::abs(product_form - state.replaced_value) >
      kReplacedValueTolerance * state.replaced_value) {
    throw InternalError("neutralized value forms disagree beyond 1e-9");
  }
  return state;
}

std::vector<double> neutralized_list(std::span<const double> lengths, std::size_t i) {
  std::vector<double> out;
  out.reserve(lengths.size());
  if (i == 0) {
    out.assign(lengths.begin(), lengths.end());
    return out;
  }
  const NeutralizationState state = neutralize_prefix(lengths, i);
  out.assign(i, state.replaced_value);
  out.insert(out.end(), lengths.begin() + static_cast<std::ptrdiff_t>(i), lengths.end());
  return out;
}

double entropy_after_neutralization(std::span<const double> lengths, std::size_t i) {
  if (i == 0) return persistent_entropy(lengths);
  return persistent_entropy(neutralized_list(lengths, i));
}

double q_bound_continuous(std::size_t n, double alpha) {
  const double a = alpha;
  return a * static_cast<double>(n) * (a - 1.0 - std::log(a)) / ((a - 1.0) * (a - 1.0));
}

std::size_t q_bound(std::size_t n, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) throw InputError("alpha must lie in (0, 1]");
  if (n < 2) throw InputError("q_bound needs n >= 2");
  if (std::abs(alpha - 1.0) <= kUnitAlphaTolerance) return n;
  // nearbyint under the default FE_TONEAREST mode rounds half to even.
  const double q = std::nearbyint(q_bound_continuous(n, alpha));
  return static_cast<std::size_t>(std::clamp(q, 0.0, static_cast<double>(n)));
}

std::vector<double> min_entropy_barcode(std::size_t n, double T, double r) {
  require_extremes(T, r);
  if (n < 2) throw InputError("min_entropy_barcode needs n >= 2");
  std::size_t q = q_bound(n, r / T);
  if (r < T) q = std::clamp<std::size_t>(q, 1, n - 1);
  std::vector<double> out(q, T);
  out.resize(n, r);
  return out;
}

double max_entropy_body_value(double T, double r) {
  require_extremes(T, r);
  const double alpha = r / T;
  return T * std::pow(alpha, alpha / (1.0 + alpha));
}

std::vector<double> max_entropy_barcode(std::size_t n, double T, double r) {
  if (n < 2) throw InputError("max_entropy_barcode needs n >= 2");
  const double b = max_entropy_body_value(T, r);
  std::vector<double> out;
  out.reserve(n);
  out.push_back(T);
  out.insert(out.end(), n - 2, b);
  out.push_back(r);
  return out;
}

double relative_entropy(std::span<const double> lengths, double T, double r) {
  require_positive(lengths);
  require_extremes(T, r);
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  if (std::abs(*hi - T) > kSlotTolerance * T || std::abs(*lo - r) > kSlotTolerance * r) {
    throw InputError("declared T / r do not match the max / min of the lengths");
  }
  if (lengths.size() < 2) return 1.0;
  const double denominator = persistent_entropy(max_entropy_barcode(lengths.size(), T, r));
  if (denominator == 0.0) return 1.0;
  return persistent_entropy(lengths) / denominator;
}

}  // namespace topent
