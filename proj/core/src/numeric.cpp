#include "topent/numeric.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "topent/error.hpp"

namespace topent {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInput: return "input error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kResource: return "resource error";
    case ErrorKind::kInternal: return "internal error";
  }
  return "error";
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value();
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw InternalError("format_double: to_chars failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError("not a decimal number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError("non-finite number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace topent
