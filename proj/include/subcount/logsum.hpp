#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace subcount {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; tolerates -inf operands.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log of the sum of exponentials, max-extracted for stability.
inline double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  double mx = *std::max_element(values.begin(), values.end());
  if (mx == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

}  // namespace subcount
