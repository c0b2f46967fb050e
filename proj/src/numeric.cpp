#include "gvar/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <system_error>

namespace gvar {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(b) && b < 0.0) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sub(double a, double b) {
  if (std::isinf(b) && b < 0.0) return a;
  if (b >= a) return -std::numeric_limits<double>::infinity();
  return a + std::log1p(-std::exp(b - a));
}

double power_norm(std::span<const double> xs, double p) {
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  CompensatedSum s;
  for (double x : xs) s.add(std::pow(std::abs(x) / scale, p));
  return scale * std::pow(s.value(), 1.0 / p);
}

bool close_rel(double a, double b, double rel, double abs_floor) {
  if (a == b) return true;
  const double scale = std::max({std::abs(a), std::abs(b), abs_floor});
  return std::abs(a - b) <= rel * scale;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace gvar
