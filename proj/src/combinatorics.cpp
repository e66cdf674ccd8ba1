#include "arrangekit/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "arrangekit/error.hpp"

namespace arrangekit {

namespace {

void check_cap(const char* what, std::uint32_t n, std::uint32_t cap) {
  if (n > cap) throw CapExceeded(what, std::to_string(n), std::to_string(cap));
}

std::optional<double> exp_if_finite(double log_value) {
  if (log_value >= std::log(std::numeric_limits<double>::max())) return std::nullopt;
  return std::exp(log_value);
}

}  // namespace

std::vector<BigCount> bell_numbers(std::uint32_t n, const CombinatoricsLimits& limits) {
  check_cap("bell", n, limits.bell_cap);
  // Row i of the triangle starts with B(i); each entry adds its left
  // neighbour and the entry above that neighbour.
  std::vector<BigCount> out;
  out.reserve(n + 1);
  out.emplace_back(1);
  std::vector<BigCount> row{BigCount(1)};
  std::vector<BigCount> next;
  for (std::uint32_t i = 1; i <= n; ++i) {
    next.clear();
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::size_t j = 0; j < row.size(); ++j) next.push_back(next.back() + row[j]);
    row.swap(next);
    out.push_back(row.front());
  }
  return out;
}

BigCount bell(std::uint32_t n, const CombinatoricsLimits& limits) { return bell_numbers(n, limits).back(); }

std::uint64_t pentagonal(std::int64_t k) {
  if (k == 0) throw DomainError("pentagonal index must be nonzero");
  const auto kk = static_cast<std::uint64_t>(k < 0 ? -k : k);
  // (3k^2 - k)/2 for k > 0, (3k^2 + |k|)/2 for k < 0.
  return k > 0 ? (3 * kk * kk - kk) / 2 : (3 * kk * kk + kk) / 2;
}

std::vector<BigCount> partition_counts(std::uint32_t n, const CombinatoricsLimits& limits) {
  check_cap("partition_count", n, limits.partition_cap);
  std::vector<BigCount> p(n + 1);
  p[0] = 1;
  for (std::uint32_t m = 1; m <= n; ++m) {
    BigCount sum = 0;
    for (std::int64_t k = 1;; ++k) {
      const std::uint64_t w_plus = pentagonal(k);
      if (w_plus > m) break;
      const std::uint64_t w_minus = pentagonal(-k);
      const bool add = (k % 2) == 1;
      if (add) {
        sum += p[m - w_plus];
        if (w_minus <= m) sum += p[m - w_minus];
      } else {
        sum -= p[m - w_plus];
        if (w_minus <= m) sum -= p[m - w_minus];
      }
    }
    p[m] = std::move(sum);
  }
  return p;
}

BigCount partition_count(std::uint32_t n, const CombinatoricsLimits& limits) {
  return partition_counts(n, limits).back();
}

double natural_log(const BigCount& x) {
  if (x <= 0) throw DomainError("natural_log of a non-positive count");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

std::string to_string(AsymptoticMethod method) {
  return method == AsymptoticMethod::bell ? "bell-asymptotic" : "hardy-ramanujan";
}

double solve_k_ln_k(double n) {
  if (!(n > 0.0)) throw DomainError("K ln K = n requires n > 0");
  double k = std::max(n / std::log(n + 1.0), 1.5);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = k * std::log(k) - n;
    const double step = f / (std::log(k) + 1.0);
    double next = k - step;
    if (next <= 1.0) next = 0.5 * (k + 1.0);
    const bool converged = std::abs(next - k) <= 1e-12 * next;
    k = next;
    if (converged) break;
  }
  return k;
}

AsymptoticEstimate bell_asymptotic(std::uint64_t n) {
  if (n < 1) throw DomainError("bell_asymptotic requires n >= 1");
  const double nn = static_cast<double>(n);
  const double k = solve_k_ln_k(nn);
  const double lk = std::log(k);
  const double log_value = nn * lk + k - nn - 1.0 - 0.5 * std::log1p(lk);
  return {AsymptoticMethod::bell, n, log_value, exp_if_finite(log_value), k};
}

AsymptoticEstimate hardy_ramanujan(std::uint64_t n) {
  if (n < 1) throw DomainError("hardy_ramanujan requires n >= 1");
  const double nn = static_cast<double>(n);
  const double log_value =
      std::sqrt(2.0 / 3.0) * std::numbers::pi * std::sqrt(nn) - std::log(4.0 * std::sqrt(3.0) * nn);
  return {AsymptoticMethod::hardy_ramanujan, n, log_value, exp_if_finite(log_value), std::nullopt};
}

GrowthExponents growth_exponents(std::uint32_t n, const CombinatoricsLimits& limits) {
  if (n < 4) throw DomainError("growth_exponents requires n >= 4");
  const double nn = static_cast<double>(n);
  return {natural_log(bell(n, limits)) / (nn * std::log(nn)),
          natural_log(partition_count(n, limits)) / std::sqrt(nn)};
}

}  // namespace arrangekit
