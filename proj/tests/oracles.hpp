#pragma once

// Slow, independent reference implementations used only by tests. None of
// them shares code with the library beyond the data model.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "arrangekit/combinatorics.hpp"
#include "arrangekit/enumeration.hpp"

namespace oracle {

using arrangekit::BigCount;

// Calls visit(rgs) for every restricted growth string of length n:
// a[0] = 0, a[i] <= 1 + max(a[0..i-1]). Each one is a set partition.
inline void for_each_rgs(int n, const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit({});
    return;
  }
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int max_seen) {
    if (i == n) {
      visit(a);
      return;
    }
    for (int v = 0; v <= max_seen + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(max_seen, v));
    }
  };
  rec(1, 0);
}

inline std::uint64_t set_partition_count(int n) {
  std::uint64_t c = 0;
  for_each_rgs(n, [&](const std::vector<int>&) { ++c; });
  return c;
}

// Integer partitions of n as non-increasing part lists.
inline void for_each_integer_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      visit(parts);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(rest - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
}

inline std::uint64_t integer_partition_count(int n) {
  std::uint64_t c = 0;
  for_each_integer_partition(n, [&](const std::vector<int>&) { ++c; });
  return c;
}

// Coin-change table: ways[m] with parts 1..n.
inline std::vector<BigCount> coin_change_partitions(int n) {
  std::vector<BigCount> ways(n + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) ways[m] += ways[m - part];
  return ways;
}

// B(n+1) = sum_k C(n,k) B(k).
inline std::vector<BigCount> bell_by_binomial_sum(int n) {
  std::vector<BigCount> b(n + 1, 0);
  b[0] = 1;
  for (int m = 0; m < n; ++m) {
    BigCount binom = 1, sum = 0;
    for (int k = 0; k <= m; ++k) {
      sum += binom * b[k];
      binom = binom * (m - k) / (k + 1);
    }
    b[m + 1] = sum;
  }
  return b;
}

// Root of K ln K = n on K > 1 by bisection.
inline double k_ln_k_bisection(double n) {
  double lo = 1.0, hi = std::max(2.0, n + 2.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < n ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Labels every particle, enumerates set partitions of the labels, filters by
// the binding rule and identifies arrangements that differ only by swapping
// identical particles.
inline std::set<arrangekit::Arrangement> labeled_then_quotient(const arrangekit::SystemSpec& spec) {
  std::vector<std::string> particles;
  for (const auto& [name, count] : spec.composition().counts())
    for (std::uint32_t i = 0; i < count; ++i) particles.push_back(name);
  const int n = static_cast<int>(particles.size());
  std::set<arrangekit::Arrangement> out;
  for_each_rgs(n, [&](const std::vector<int>& a) {
    const int blocks = n == 0 ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    std::vector<arrangekit::Composition::Counts> counts(blocks);
    for (int i = 0; i < n; ++i) ++counts[a[i]][particles[i]];
    std::vector<arrangekit::Cluster> clusters;
    for (auto& c : counts) {
      arrangekit::Composition comp(std::move(c));
      if (comp.size() >= 2 && !spec.binding().can_bind(comp)) return;
      clusters.emplace_back(std::move(comp));
    }
    out.insert(arrangekit::Arrangement(std::move(clusters), spec.composition()));
  });
  return out;
}

// Every sub-multiset of `c` with at least `min_size` particles.
inline std::vector<arrangekit::Composition> sub_multisets(const arrangekit::Composition& c, std::uint64_t min_size) {
  std::vector<std::pair<std::string, std::uint32_t>> items(c.counts().begin(), c.counts().end());
  std::vector<arrangekit::Composition> out;
  arrangekit::Composition::Counts current;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t size) {
    if (i == items.size()) {
      if (size >= min_size && size > 0) out.emplace_back(current);
      return;
    }
    for (std::uint32_t k = 0; k <= items[i].second; ++k) {
      if (k > 0) current[items[i].first] = k;
      rec(i + 1, size + k);
    }
    current.erase(items[i].first);
  };
  rec(0, 0);
  return out;
}

// Random system: up to `max_n` particles over species A..D, each species
// identical or distinguishable (multiplicity 1), with a random binding rule.
struct RandomSystemOptions {
  std::uint32_t max_n = 7;
  bool allow_allowlist = true;
  bool allow_none = true;
};

inline arrangekit::SystemSpec random_system(std::mt19937_64& rng, const RandomSystemOptions& opts = {}) {
  using namespace arrangekit;
  std::uniform_int_distribution<std::uint32_t> total(1, opts.max_n);
  const std::uint32_t n = total(rng);
  const std::vector<std::string> names{"A", "B", "C", "D", "E"};
  std::vector<Species> species;
  Composition::Counts counts;
  std::uint32_t placed = 0;
  std::size_t next = 0;
  while (placed < n && next < names.size()) {
    const bool identical = std::bernoulli_distribution(0.6)(rng);
    std::uint32_t k = 1;
    if (identical) k = std::uniform_int_distribution<std::uint32_t>(1, n - placed)(rng);
    if (next + 1 == names.size() && identical) k = n - placed;
    species.push_back({names[next], identical || k > 1});
    counts[names[next]] = k;
    placed += k;
    ++next;
  }
  // If the last species could not absorb the rest, top up the first identical one.
  if (placed < n) {
    for (auto& s : species)
      if (s.identical) {
        counts[s.name] += n - placed;
        placed = n;
        break;
      }
  }
  if (placed < n) {
    species.front().identical = true;
    counts[species.front().name] += n - placed;
  }
  Composition comp(std::move(counts));

  const int mode = std::uniform_int_distribution<int>(0, 2)(rng);
  BindingPredicate binding = BindingPredicate::all();
  if (mode == 1 && opts.allow_none) {
    binding = BindingPredicate::none();
  } else if (mode == 2 && opts.allow_allowlist) {
    std::set<Composition> entries;
    std::bernoulli_distribution keep(0.4);
    for (auto& sub : sub_multisets(comp, 2))
      if (keep(rng)) entries.insert(std::move(sub));
    binding = BindingPredicate::allowlist(std::move(entries));
  }
  return SystemSpec(SpeciesTable(std::move(species)), std::move(comp), std::move(binding));
}

}  // namespace oracle
