#pragma once

// Exact Bell numbers B(n) and partition numbers p(n), plus their leading
// asymptotic forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arrangekit {

using BigCount = boost::multiprecision::cpp_int;

struct CombinatoricsLimits {
  std::uint32_t bell_cap = 2000;
  std::uint32_t partition_cap = 100000;
};

// B(0..n) from the Bell triangle. Throws CapExceeded if n > limits.bell_cap.
std::vector<BigCount> bell_numbers(std::uint32_t n, const CombinatoricsLimits& limits = {});
BigCount bell(std::uint32_t n, const CombinatoricsLimits& limits = {});

// p(0..n) from Euler's pentagonal recurrence in a single pass.
std::vector<BigCount> partition_counts(std::uint32_t n, const CombinatoricsLimits& limits = {});
BigCount partition_count(std::uint32_t n, const CombinatoricsLimits& limits = {});

// Generalized pentagonal number (3k^2 - k)/2; k = -1 gives 2. k must be nonzero.
std::uint64_t pentagonal(std::int64_t k);

// ln(x) for x > 0, accurate for values far beyond double range.
double natural_log(const BigCount& x);

enum class AsymptoticMethod { bell, hardy_ramanujan };

std::string to_string(AsymptoticMethod method);

struct AsymptoticEstimate {
  AsymptoticMethod method;
  std::uint64_t n = 0;
  double log_value = 0.0;
  // exp(log_value) when representable as a finite double.
  std::optional<double> value;
  // Root of K ln K = n (bell method only).
  std::optional<double> lambert_k;
};

// Solves K ln K = n for K > 1 by Newton iteration (relative step below 1e-12).
double solve_k_ln_k(double n);

// B(n) ~ K^n e^(K - n - 1) / sqrt(1 + ln K)
AsymptoticEstimate bell_asymptotic(std::uint64_t n);

// p(n) ~ exp(pi sqrt(2n/3)) / (4 sqrt(3) n)
AsymptoticEstimate hardy_ramanujan(std::uint64_t n);

struct GrowthExponents {
  double bell;       // ln B(n) / (n ln n)
  double partition;  // ln p(n) / sqrt(n)
};

// Requires n >= 4.
GrowthExponents growth_exponents(std::uint32_t n, const CombinatoricsLimits& limits = {});

}  // namespace arrangekit
