#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "arrangekit/enumeration.hpp"
#include "arrangekit/notation.hpp"
#include "arrangekit/separability.hpp"
#include "arrangekit/spectrum.hpp"
#include "oracles.hpp"

using namespace arrangekit;

TEST_CASE("enumeration equals the labeled quotient on random systems") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const SystemSpec spec = oracle::random_system(rng);
    const auto set = enumerate_arrangements(spec);
    const auto expected = oracle::labeled_then_quotient(spec);
    REQUIRE(std::set<Arrangement>(set.arrangements.begin(), set.arrangements.end()) == expected);
    CHECK(set.arrangements.size() == expected.size());
    CHECK(count_arrangements(spec) == set.count);
    CHECK(check_constraints(spec).ok());
    if (spec.binding().mode() == BindingMode::all && spec.size() >= 2) {
      CHECK(set.has_all_bound);
      CHECK(set.has_all_free);
    }
    if (spec.binding().mode() == BindingMode::none) {
      CHECK(set.count == 1);
      CHECK(set.has_all_free);
    }
  }
}

TEST_CASE("print round-trips and is injective") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    oracle::RandomSystemOptions opts;
    opts.max_n = 8;
    const SystemSpec spec = oracle::random_system(rng, opts);
    const auto set = enumerate_arrangements(spec);
    std::set<std::string> seen;
    for (const auto& a : set.arrangements) {
      const std::string s = print(a);
      CHECK(parse(s, spec.species()) == a);
      CHECK(print(parse(s, spec.species())) == s);
      seen.insert(s);
    }
    CHECK(seen.size() == set.arrangements.size());
  }
}

TEST_CASE("spectrum invariants on random catalogs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> energy(-5.0, -0.01);
  std::uniform_int_distribution<int> levels(1, 3);
  for (int trial = 0; trial < 80; ++trial) {
    oracle::RandomSystemOptions opts;
    opts.max_n = 6;
    const SystemSpec spec = oracle::random_system(rng, opts);
    const auto set = enumerate_arrangements(spec);
    EnergyCatalog::Levels table;
    for (const auto& sub : oracle::sub_multisets(spec.composition(), 2)) {
      if (!spec.binding().can_bind(sub)) continue;
      std::vector<double> e;
      for (int k = levels(rng); k > 0; --k) e.push_back(energy(rng));
      table.emplace(sub, e);
    }
    const EnergyCatalog cat(table);
    const auto layout = assign_g(set, cat);

    // g values are a contiguous block starting at 0 or 1.
    std::vector<std::uint64_t> gs;
    for (const auto& lvl : layout.levels) gs.push_back(lvl.g);
    const std::uint64_t first = layout.has_all_bound() ? 0 : 1;
    for (std::size_t i = 0; i < gs.size(); ++i) CHECK(gs[i] == first + i);
    CHECK(gs.size() == set.arrangements.size());

    double previous = -INFINITY;
    for (const auto& lvl : layout.levels) {
      if (lvl.all_bound) continue;
      const double t = *lvl.lowest_threshold;
      CHECK(t >= previous);
      previous = t;
      CHECK(t <= 0.0);
      const auto ladder = threshold_ladder(lvl.arrangement, cat);
      CHECK(ladder.front().energy == t);
      std::uint64_t total = 0, product = 1;
      for (const auto& step : ladder) total += step.multiplicity;
      for (const auto& grp : lvl.arrangement.groups())
        if (!grp.cluster.is_singleton())
          for (std::uint32_t k = 0; k < grp.multiplicity; ++k) product *= cat.levels(grp.cluster.members())->size();
      CHECK(total == product);
      CHECK(std::is_sorted(ladder.begin(), ladder.end(),
                           [](const LadderStep& a, const LadderStep& b) { return a.energy < b.energy; }));
    }
    const auto& last = layout.levels.back();
    if (!last.all_bound) CHECK(*last.lowest_threshold == 0.0);

    std::uint64_t prev_open = 0;
    for (double e = -16.0; e <= 1.0; e += 0.25) {
      const auto open = open_arrangements(layout, e);
      std::uint64_t brute = 0;
      for (const auto& lvl : layout.levels)
        if (!lvl.all_bound && *lvl.lowest_threshold <= e) ++brute;
      CHECK(open.count == brute);
      CHECK(open.count >= prev_open);
      prev_open = open.count;
    }
  }
}

TEST_CASE("separability identities on random configurations") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.01, 1.0);
  PotentialTable pots;
  pots.set_default(PairPotential::lennard_jones(1.0, 1.0));
  for (int trial = 0; trial < 200; ++trial) {
    RandomConfigurationOptions opts;
    opts.particles = 6;
    opts.subsystem = 2 + trial % 4;
    const auto cfg = random_configuration(rng, opts);
    const auto g = subsystem_geometry(cfg);

    const double s = scale(rng);
    const auto gs = subsystem_geometry(scaled(cfg, s));
    CHECK(gs.hyperradius == doctest::Approx(s * g.hyperradius).epsilon(1e-12));
    CHECK(gs.reduced_mass == g.reduced_mass);
    CHECK(norm(gs.center - g.center) <= 1e-12 * (1.0 + norm(g.center)));

    const Vec3 d{shift(rng), shift(rng), shift(rng)};
    const auto moved = translated(cfg, d);
    const auto gt = subsystem_geometry(moved);
    CHECK(gt.hyperradius == doctest::Approx(g.hyperradius).epsilon(1e-12));
    CHECK(gt.reduced_mass == doctest::Approx(g.reduced_mass).epsilon(1e-12));
    const auto r0 = separability_residual(cfg, pots, 0.5);
    const auto r1 = separability_residual(moved, pots, 0.5);
    CHECK(r1.coupled == doctest::Approx(r0.coupled).epsilon(1e-10));
    CHECK(r1.separated == doctest::Approx(r0.separated).epsilon(1e-10));
  }
}
