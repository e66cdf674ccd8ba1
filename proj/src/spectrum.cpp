#include "arrangekit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "arrangekit/notation.hpp"

namespace arrangekit {

EnergyCatalog::EnergyCatalog(Levels levels, Annotations annotations)
    : levels_(std::move(levels)), annotations_(std::move(annotations)) {
  for (auto& [cluster, energies] : levels_) {
    const std::string name = "(" + cluster.member_string() + ")";
    if (cluster.size() < 2) throw ValidationError("catalog cluster " + name + " must contain at least 2 particles");
    if (energies.empty()) throw ValidationError("catalog cluster " + name + " has no energies");
    for (double e : energies)
      if (!std::isfinite(e) || !(e < 0.0))
        throw ValidationError("catalog energies for " + name + " must be finite and negative");
    std::sort(energies.begin(), energies.end());
  }
}

const std::vector<double>* EnergyCatalog::levels(const Composition& cluster) const {
  auto it = levels_.find(cluster);
  return it == levels_.end() ? nullptr : &it->second;
}

namespace {

// One level list per bound group in canonical cluster order (repeats included).
std::vector<const std::vector<double>*> bound_group_levels(const Arrangement& arr, const EnergyCatalog& catalog) {
  if (arr.is_all_bound()) throw DomainError("all-bound arrangement " + print(arr) + " has no continuum threshold");
  std::vector<const std::vector<double>*> out;
  for (const auto& g : arr.groups()) {
    if (g.cluster.is_singleton()) continue;
    const auto* levels = catalog.levels(g.cluster.members());
    if (levels == nullptr) throw MissingClusterEnergy(print(g.cluster));
    for (std::uint32_t i = 0; i < g.multiplicity; ++i) out.push_back(levels);
  }
  return out;
}

}  // namespace

double lowest_threshold(const Arrangement& arr, const EnergyCatalog& catalog) {
  std::vector<double> grounds;
  for (const auto* levels : bound_group_levels(arr, catalog)) grounds.push_back(levels->front());
  // Same summation order as the ladder, so the ladder starts exactly here.
  std::sort(grounds.begin(), grounds.end());
  double total = 0.0;
  for (double e : grounds) total += e;
  return total;
}

std::vector<LadderStep> threshold_ladder(const Arrangement& arr, const EnergyCatalog& catalog,
                                         const SpectrumOptions& options) {
  if (arr.is_all_bound()) return {};
  const auto groups = bound_group_levels(arr, catalog);

  std::uint64_t combos = 1;
  for (const auto* levels : groups) {
    if (combos > options.ladder_cap / levels->size())
      throw CapExceeded("threshold ladder of " + print(arr), "more than " + std::to_string(options.ladder_cap),
                        std::to_string(options.ladder_cap));
    combos *= levels->size();
  }

  std::vector<double> sums;
  sums.reserve(combos);
  std::vector<std::size_t> pick(groups.size(), 0);
  std::vector<double> chosen(groups.size());
  for (;;) {
    for (std::size_t i = 0; i < groups.size(); ++i) chosen[i] = (*groups[i])[pick[i]];
    // Summing in sorted order makes equal level multisets give identical sums.
    std::sort(chosen.begin(), chosen.end());
    double s = 0.0;
    for (double e : chosen) s += e;
    sums.push_back(s);
    std::size_t i = 0;
    while (i < groups.size() && ++pick[i] == groups[i]->size()) pick[i++] = 0;
    if (i == groups.size()) break;
  }
  std::sort(sums.begin(), sums.end());

  std::vector<LadderStep> ladder;
  for (double s : sums) {
    if (!ladder.empty() && ladder.back().energy == s) {
      ++ladder.back().multiplicity;
    } else {
      ladder.push_back({s, 1});
    }
  }
  return ladder;
}

const ArrangementLevel* SpectrumLayout::find(std::uint64_t g) const {
  for (const auto& level : levels)
    if (level.g == g) return &level;
  return nullptr;
}

SpectrumLayout assign_g(const ArrangementSet& set, const EnergyCatalog& catalog, const SpectrumOptions& options) {
  SpectrumLayout layout;
  std::vector<ArrangementLevel> continuum;
  std::optional<ArrangementLevel> all_bound;

  for (const auto& arr : set.arrangements) {
    ArrangementLevel level{arr, print(arr), 0, std::nullopt, {}, {}, false, false};
    level.all_free = arr.is_all_free();
    if (arr.is_all_bound()) {
      level.all_bound = true;
      if (const auto* levels = catalog.levels(arr.composition())) level.bound_levels = *levels;
      all_bound = std::move(level);
      continue;
    }
    level.lowest_threshold = lowest_threshold(arr, catalog);
    level.ladder = threshold_ladder(arr, catalog, options);
    continuum.push_back(std::move(level));
  }

  std::sort(continuum.begin(), continuum.end(), [](const ArrangementLevel& a, const ArrangementLevel& b) {
    if (*a.lowest_threshold != *b.lowest_threshold) return *a.lowest_threshold < *b.lowest_threshold;
    return a.notation < b.notation;
  });

  if (all_bound) layout.levels.push_back(std::move(*all_bound));
  for (std::size_t i = 0; i < continuum.size(); ++i) {
    continuum[i].g = i + 1;
    if (i > 0 && *continuum[i].lowest_threshold == *continuum[i - 1].lowest_threshold)
      layout.degenerate_thresholds.emplace_back(i, i + 1);
  }
  for (auto& level : continuum) layout.levels.push_back(std::move(level));

  if (layout.has_all_bound() && continuum.size() > 0) {
    const auto& bound = layout.levels.front();
    const double t1 = *layout.levels[1].lowest_threshold;
    if (!bound.bound_levels.empty() && !(bound.bound_levels.front() < t1)) {
      layout.warnings.push_back("all-bound ground energy of " + bound.notation + " is not below the lowest threshold T_1 of " +
                                layout.levels[1].notation);
    }
  }
  for (const auto& [lo, hi] : layout.degenerate_thresholds)
    layout.warnings.push_back("degenerate_thresholds: g=" + std::to_string(lo) + " and g=" + std::to_string(hi) +
                              " share a lowest threshold; ordered by notation");
  return layout;
}

OpenArrangements open_arrangements(const SpectrumLayout& layout, double energy) {
  OpenArrangements open;
  for (const auto& level : layout.levels) {
    if (!level.lowest_threshold || *level.lowest_threshold > energy) continue;
    open.arrangements.push_back(level.arrangement);
  }
  open.count = open.arrangements.size();
  return open;
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

nlohmann::ordered_json export_spectrum(const SpectrumLayout& layout, const EnergyCatalog& catalog) {
  using nlohmann::ordered_json;
  ordered_json records = ordered_json::array();
  for (const auto& level : layout.levels) {
    ordered_json rec;
    rec["arrangement"] = level.notation;
    rec["g"] = level.g;
    rec["lowest_threshold"] =
        level.lowest_threshold ? ordered_json(round_significant(*level.lowest_threshold)) : ordered_json(nullptr);
    ordered_json ladder = ordered_json::array();
    for (const auto& step : level.ladder)
      ladder.push_back({{"energy", round_significant(step.energy)}, {"multiplicity", step.multiplicity}});
    rec["ladder"] = std::move(ladder);
    ordered_json bound = ordered_json::array();
    for (double e : level.bound_levels) bound.push_back(round_significant(e));
    rec["bound_levels"] = std::move(bound);
    records.push_back(std::move(rec));
  }

  ordered_json doc;
  doc["arrangements"] = std::move(records);
  ordered_json ties = ordered_json::array();
  for (const auto& [lo, hi] : layout.degenerate_thresholds) ties.push_back({lo, hi});
  doc["degenerate_thresholds"] = std::move(ties);
  doc["warnings"] = layout.warnings;
  if (!catalog.annotations().empty()) {
    ordered_json notes = ordered_json::object();
    for (const auto& [cluster, text] : catalog.annotations()) notes["(" + cluster.member_string() + ")"] = text;
    doc["annotations"] = std::move(notes);
  }
  return doc;
}

}  // namespace arrangekit
