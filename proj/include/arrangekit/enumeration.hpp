#pragma once

// Arrangement enumeration and counting under a binding rule.

#include <cstdint>
#include <set>
#include <vector>

#include "arrangekit/combinatorics.hpp"
#include "arrangekit/core.hpp"

namespace arrangekit {

enum class BindingMode { all, none, allowlist };

// Decides whether a cluster composition can form a bound group. Singletons
// are always permitted. Allowlists need not be closed under subsets.
class BindingPredicate {
 public:
  static BindingPredicate all();
  static BindingPredicate none();
  // Entries must have size >= 2.
  static BindingPredicate allowlist(std::set<Composition> entries);

  BindingMode mode() const noexcept { return mode_; }
  const std::set<Composition>& entries() const noexcept { return entries_; }
  bool can_bind(const Composition& cluster) const;

 private:
  BindingPredicate(BindingMode mode, std::set<Composition> entries)
      : mode_(mode), entries_(std::move(entries)) {}

  BindingMode mode_ = BindingMode::all;
  std::set<Composition> entries_;
};

class SystemSpec {
 public:
  // Validates that the composition and allowlist use declared species and
  // that distinguishable species have multiplicity 1.
  SystemSpec(SpeciesTable species, Composition composition, BindingPredicate binding);

  const SpeciesTable& species() const noexcept { return species_; }
  const Composition& composition() const noexcept { return composition_; }
  const BindingPredicate& binding() const noexcept { return binding_; }
  std::uint64_t size() const noexcept { return composition_.size(); }

 private:
  SpeciesTable species_;
  Composition composition_;
  BindingPredicate binding_;
};

struct EnumerationOptions {
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  CombinatoricsLimits limits{};
};

struct ArrangementSet {
  std::vector<Arrangement> arrangements;  // canonical, ascending
  BigCount count = 0;
  bool has_all_bound = false;  // a single-cluster arrangement is present
  bool has_all_free = false;
};

// Every multiset partition of the composition whose clusters of size >= 2
// can bind, each once. Throws EmptyComposition or CapExceeded (checked
// before any generation).
ArrangementSet enumerate_arrangements(const SystemSpec& spec, const EnumerationOptions& options = {});

// Equal to enumerate_arrangements(spec).count. Uses closed forms for
// bind-none, single-species bind-all and all-distinguishable bind-all, and
// an exact coin-change count over the cluster lattice when that is small.
BigCount count_arrangements(const SystemSpec& spec, const EnumerationOptions& options = {});

struct ConstraintReport {
  BigCount arrangements;
  BigCount bell;
  BigCount partitions;
  bool general_holds = false;  // 1 <= M <= B(N)
  bool tight_applies = false;  // mode == all
  bool tight_holds = false;    // p(N) <= M <= B(N)

  bool ok() const noexcept { return general_holds && (!tight_applies || tight_holds); }
};

ConstraintReport check_constraints(const SystemSpec& spec, const EnumerationOptions& options = {});

}  // namespace arrangekit
