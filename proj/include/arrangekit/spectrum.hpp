#pragma once

// Arrangement-resolved structure of the energy spectrum.
//
// Energies use the all-free zero: every particle free and at rest is E = 0,
// and every bound-state energy in a catalog is negative. Each continuum
// arrangement opens at its lowest threshold (ground state of every bound
// group); continuum arrangements are numbered g = 1, 2, ... in ascending
// order of that threshold, the all-bound arrangement (if any) is g = 0.
// An energy exactly at a threshold counts that arrangement as open.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arrangekit/core.hpp"
#include "arrangekit/enumeration.hpp"

namespace arrangekit {

class MissingClusterEnergy : public ValidationError {
 public:
  explicit MissingClusterEnergy(std::string cluster)
      : ValidationError("no bound-state energies for cluster " + cluster), cluster_(std::move(cluster)) {}

  const std::string& cluster() const noexcept { return cluster_; }

 private:
  std::string cluster_;
};

class EnergyCatalog {
 public:
  using Levels = std::map<Composition, std::vector<double>>;
  using Annotations = std::map<Composition, std::vector<std::string>>;

  EnergyCatalog() = default;
  // Level lists are sorted ascending. Throws ValidationError for clusters of
  // size < 2, empty lists, or non-negative / non-finite energies.
  explicit EnergyCatalog(Levels levels, Annotations annotations = {});

  // nullptr if the cluster has no entry.
  const std::vector<double>* levels(const Composition& cluster) const;
  const Levels& all() const noexcept { return levels_; }
  // Free text (e.g. resonance notes); carried into exports, never computed on.
  const Annotations& annotations() const noexcept { return annotations_; }

 private:
  Levels levels_;
  Annotations annotations_;
};

struct SpectrumOptions {
  std::uint64_t ladder_cap = 1'000'000;
};

struct LadderStep {
  double energy;
  std::uint64_t multiplicity;

  friend bool operator==(const LadderStep&, const LadderStep&) = default;
};

// Sum of ground energies of the bound groups. Throws DomainError for an
// all-bound arrangement and MissingClusterEnergy for uncatalogued groups.
double lowest_threshold(const Arrangement& arr, const EnergyCatalog& catalog);

// Every sum of one level per bound group, ascending, equal sums merged.
// Empty for an all-bound arrangement. Throws CapExceeded when the product of
// level counts exceeds options.ladder_cap.
std::vector<LadderStep> threshold_ladder(const Arrangement& arr, const EnergyCatalog& catalog,
                                         const SpectrumOptions& options = {});

struct ArrangementLevel {
  Arrangement arrangement;
  std::string notation;
  std::uint64_t g = 0;
  std::optional<double> lowest_threshold;  // empty for all-bound
  std::vector<LadderStep> ladder;
  std::vector<double> bound_levels;  // all-bound only, from the catalog if present
  bool all_bound = false;
  bool all_free = false;
};

struct SpectrumLayout {
  std::vector<ArrangementLevel> levels;  // ascending g
  // Pairs of g values whose lowest thresholds coincide; ordered by notation.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> degenerate_thresholds;
  std::vector<std::string> warnings;

  bool has_all_bound() const noexcept { return !levels.empty() && levels.front().all_bound; }
  const ArrangementLevel* find(std::uint64_t g) const;
};

SpectrumLayout assign_g(const ArrangementSet& set, const EnergyCatalog& catalog, const SpectrumOptions& options = {});

struct OpenArrangements {
  std::uint64_t count = 0;
  std::vector<Arrangement> arrangements;  // ascending g
};

// Continuum arrangements with lowest threshold <= energy.
OpenArrangements open_arrangements(const SpectrumLayout& layout, double energy);

// Keys: arrangements[{arrangement, g, lowest_threshold, ladder, bound_levels}],
// degenerate_thresholds, warnings. Numbers rounded to 12 significant digits.
nlohmann::ordered_json export_spectrum(const SpectrumLayout& layout, const EnergyCatalog& catalog);

// Nearest double to x printed with `digits` significant digits.
double round_significant(double x, int digits = 12);

}  // namespace arrangekit
