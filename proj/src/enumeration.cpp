#include "arrangekit/enumeration.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "arrangekit/notation.hpp"

namespace arrangekit {

BindingPredicate BindingPredicate::all() { return {BindingMode::all, {}}; }

BindingPredicate BindingPredicate::none() { return {BindingMode::none, {}}; }

BindingPredicate BindingPredicate::allowlist(std::set<Composition> entries) {
  for (const auto& e : entries)
    if (e.size() < 2)
      throw ValidationError("allowlist entry (" + e.member_string() + ") must contain at least 2 particles");
  return {BindingMode::allowlist, std::move(entries)};
}

bool BindingPredicate::can_bind(const Composition& cluster) const {
  if (cluster.size() <= 1) return true;
  switch (mode_) {
    case BindingMode::all:
      return true;
    case BindingMode::none:
      return false;
    case BindingMode::allowlist:
      return entries_.contains(cluster);
  }
  return false;
}

SystemSpec::SystemSpec(SpeciesTable species, Composition composition, BindingPredicate binding)
    : species_(std::move(species)), composition_(std::move(composition)), binding_(std::move(binding)) {
  for (const auto& [name, n] : composition_.counts()) {
    const Species* s = species_.find(name);
    if (s == nullptr) throw ValidationError("composition references undeclared species '" + name + "'");
    if (!s->identical && n != 1)
      throw ValidationError("distinguishable species '" + name + "' must have multiplicity 1");
  }
  for (const auto& entry : binding_.entries())
    for (const auto& [name, n] : entry.counts()) {
      const Species* s = species_.find(name);
      if (s == nullptr) throw ValidationError("allowlist references undeclared species '" + name + "'");
      if (!s->identical && n != 1)
        throw ValidationError("allowlist entry repeats distinguishable species '" + name + "'");
    }
}

namespace {

constexpr std::uint64_t kMaxLatticeStates = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxLatticeWork = 50'000'000;

// Species of the composition in name order, viewed as a mixed-radix lattice
// of sub-multisets.
struct Lattice {
  std::vector<std::string> names;
  std::vector<std::uint32_t> counts;
  std::vector<std::uint64_t> strides;
  std::optional<std::uint64_t> states;  // nullopt when the product overflows

  explicit Lattice(const Composition& c) {
    std::uint64_t stride = 1;
    bool overflow = false;
    for (const auto& [name, n] : c.counts()) {
      names.push_back(name);
      counts.push_back(n);
      strides.push_back(stride);
      if (!overflow && stride > UINT64_MAX / (std::uint64_t{n} + 1)) overflow = true;
      if (!overflow) stride *= std::uint64_t{n} + 1;
    }
    if (!overflow) states = stride;
  }

  std::uint64_t index_of(const std::vector<std::uint32_t>& v) const {
    std::uint64_t idx = 0;
    for (std::size_t t = 0; t < v.size(); ++t) idx += v[t] * strides[t];
    return idx;
  }

  Composition composition_of(const std::vector<std::uint32_t>& v) const {
    Composition::Counts counts_map;
    for (std::size_t t = 0; t < v.size(); ++t)
      if (v[t] > 0) counts_map.emplace(names[t], v[t]);
    return Composition(std::move(counts_map));
  }
};

struct Candidate {
  std::vector<std::uint32_t> counts;
  std::uint64_t size;
  std::uint64_t index;
  Cluster cluster;
};

std::string cap_string(std::uint64_t cap) { return std::to_string(cap); }

// Clusters that may appear in an arrangement of the composition, in canonical
// cluster order. Singletons are always last, one per species, in name order.
std::vector<Candidate> build_candidates(const SystemSpec& spec, const Lattice& lattice, std::uint64_t cap) {
  const std::size_t k = lattice.names.size();
  std::vector<Candidate> out;
  auto add = [&](std::vector<std::uint32_t> v) {
    Composition members = lattice.composition_of(v);
    const std::uint64_t size = members.size();
    if (size >= 2 && !spec.binding().can_bind(members)) return;
    const std::uint64_t index = lattice.index_of(v);
    out.push_back({std::move(v), size, index, Cluster(std::move(members))});
  };

  switch (spec.binding().mode()) {
    case BindingMode::all: {
      // Every nonzero sub-multiset is a distinct single-cluster-plus-free
      // arrangement, so the lattice size bounds M from below.
      if (!lattice.states || *lattice.states - 1 > cap)
        throw CapExceeded("arrangement estimate (at least one per cluster of the lattice)",
                          lattice.states ? std::to_string(*lattice.states - 1) : "more than 2^64", cap_string(cap));
      std::vector<std::uint32_t> v(k, 0);
      for (;;) {
        std::size_t t = 0;
        while (t < k && v[t] == lattice.counts[t]) v[t++] = 0;
        if (t == k) break;
        ++v[t];
        add(v);
      }
      break;
    }
    case BindingMode::allowlist:
      for (const auto& entry : spec.binding().entries()) {
        std::vector<std::uint32_t> v(k, 0);
        bool fits = true;
        for (const auto& [name, n] : entry.counts()) {
          auto it = std::lower_bound(lattice.names.begin(), lattice.names.end(), name);
          if (it == lattice.names.end() || *it != name) {
            fits = false;
            break;
          }
          const auto t = static_cast<std::size_t>(it - lattice.names.begin());
          if (n > lattice.counts[t]) {
            fits = false;
            break;
          }
          v[t] = n;
        }
        if (fits) add(std::move(v));
      }
      [[fallthrough]];
    case BindingMode::none:
      for (std::size_t t = 0; t < k; ++t) {
        std::vector<std::uint32_t> v(k, 0);
        v[t] = 1;
        add(std::move(v));
      }
      break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return cluster_precedes(a.cluster, b.cluster); });
  return out;
}

// Number of multisets of candidate clusters summing to the full composition:
// a coin-change table over the lattice. nullopt when the table is too large.
std::optional<BigCount> lattice_count(const Lattice& lattice, const std::vector<Candidate>& candidates) {
  if (!lattice.states || *lattice.states > kMaxLatticeStates) return std::nullopt;
  const std::uint64_t states = *lattice.states;
  if (states * candidates.size() > kMaxLatticeWork) return std::nullopt;
  const std::size_t k = lattice.names.size();
  std::vector<BigCount> ways(states, BigCount(0));
  ways[0] = 1;
  std::vector<std::uint32_t> digits(k);
  for (const auto& coin : candidates) {
    std::fill(digits.begin(), digits.end(), 0);
    for (std::uint64_t v = 0; v < states; ++v) {
      bool covers = true;
      for (std::size_t t = 0; t < k; ++t)
        if (digits[t] < coin.counts[t]) {
          covers = false;
          break;
        }
      if (covers) ways[v] += ways[v - coin.index];
      for (std::size_t t = 0; t < k; ++t) {
        if (++digits[t] <= lattice.counts[t]) break;
        digits[t] = 0;
      }
    }
  }
  return ways[states - 1];
}

class Generator {
 public:
  Generator(const std::vector<Candidate>& candidates, const Composition& composition, const Lattice& lattice)
      : candidates_(candidates), composition_(composition), remaining_(lattice.counts) {
    remaining_size_ = composition.size();
    singleton_begin_ = candidates.size() - lattice.names.size();
    first_with_size_.assign(remaining_size_ + 1, candidates.size());
    for (std::uint64_t s = 0; s <= remaining_size_; ++s) {
      auto it = std::find_if(candidates.begin(), candidates.end(), [&](const Candidate& c) { return c.size <= s; });
      first_with_size_[s] = static_cast<std::size_t>(it - candidates.begin());
    }
  }

  // The arrangement's first (canonically largest) cluster is candidate i.
  void top_level(std::size_t i, std::vector<Arrangement>& out) {
    out_ = &out;
    if (i >= singleton_begin_) {
      if (i == singleton_begin_ + smallest_remaining()) complete_with_singletons();
      return;
    }
    if (candidates_[i].size <= remaining_size_ && fits(candidates_[i])) take(i);
  }

  std::size_t top_level_begin() const { return first_with_size_[remaining_size_]; }

 private:
  void descend(std::size_t start) {
    if (remaining_size_ == 0) {
      emit();
      return;
    }
    for (std::size_t i = std::max(start, first_with_size_[remaining_size_]); i < candidates_.size(); ++i) {
      if (i >= singleton_begin_) {
        // The rest must be singletons, and the next one is the smallest
        // remaining species.
        if (singleton_begin_ + smallest_remaining() >= i) complete_with_singletons();
        return;
      }
      if (fits(candidates_[i])) take(i);
    }
  }

  void take(std::size_t i) {
    const Candidate& c = candidates_[i];
    for (std::size_t t = 0; t < remaining_.size(); ++t) remaining_[t] -= c.counts[t];
    remaining_size_ -= c.size;
    path_.push_back(i);
    descend(i);
    path_.pop_back();
    remaining_size_ += c.size;
    for (std::size_t t = 0; t < remaining_.size(); ++t) remaining_[t] += c.counts[t];
  }

  bool fits(const Candidate& c) const {
    for (std::size_t t = 0; t < remaining_.size(); ++t)
      if (c.counts[t] > remaining_[t]) return false;
    return true;
  }

  std::size_t smallest_remaining() const {
    std::size_t t = 0;
    while (t < remaining_.size() && remaining_[t] == 0) ++t;
    return t;
  }

  void complete_with_singletons() {
    const std::size_t mark = path_.size();
    for (std::size_t t = 0; t < remaining_.size(); ++t)
      for (std::uint32_t r = 0; r < remaining_[t]; ++r) path_.push_back(singleton_begin_ + t);
    emit();
    path_.resize(mark);
  }

  void emit() {
    std::vector<Cluster> clusters;
    clusters.reserve(path_.size());
    for (std::size_t i : path_) clusters.push_back(candidates_[i].cluster);
    out_->emplace_back(std::move(clusters), composition_);
  }

  const std::vector<Candidate>& candidates_;
  const Composition& composition_;
  std::vector<std::uint32_t> remaining_;
  std::uint64_t remaining_size_ = 0;
  std::size_t singleton_begin_ = 0;
  std::vector<std::size_t> first_with_size_;
  std::vector<std::size_t> path_;
  std::vector<Arrangement>* out_ = nullptr;
};

void check_estimate(const SystemSpec& spec, const Lattice& lattice, const std::vector<Candidate>& candidates,
                    const EnumerationOptions& options) {
  if (auto exact = lattice_count(lattice, candidates)) {
    if (*exact > options.cap) throw CapExceeded("arrangement count", exact->str(), cap_string(options.cap));
    return;
  }
  const std::uint64_t n = spec.size();
  if (n > options.limits.bell_cap)
    throw CapExceeded("arrangement estimate B(N)", "B(" + std::to_string(n) + ")", cap_string(options.cap));
  const BigCount bound = bell(static_cast<std::uint32_t>(n), options.limits);
  if (bound > options.cap)
    throw CapExceeded("arrangement estimate B(" + std::to_string(n) + ")", bound.str(), cap_string(options.cap));
}

ArrangementSet finish(std::vector<Arrangement> arrangements) {
  ArrangementSet set;
  set.count = arrangements.size();
  for (const auto& a : arrangements) {
    if (a.cluster_count() == 1) set.has_all_bound = true;
    if (a.is_all_free()) set.has_all_free = true;
  }
  set.arrangements = std::move(arrangements);
  return set;
}

}  // namespace

ArrangementSet enumerate_arrangements(const SystemSpec& spec, const EnumerationOptions& options) {
  const Composition& composition = spec.composition();
  if (composition.empty()) throw EmptyComposition();
  const Lattice lattice(composition);
  const auto candidates = build_candidates(spec, lattice, options.cap);
  if (spec.binding().mode() != BindingMode::none) check_estimate(spec, lattice, candidates, options);

  Generator probe(candidates, composition, lattice);
  const std::size_t begin = probe.top_level_begin();
  const std::size_t branches = candidates.size() - begin;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(branches)));

  std::vector<std::vector<Arrangement>> per_branch(branches);
  auto work = [&](unsigned worker) {
    Generator gen(candidates, composition, lattice);
    for (std::size_t b = worker; b < branches; b += threads) gen.top_level(begin + b, per_branch[b]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < threads; ++w) jobs.push_back(std::async(std::launch::async, work, w));
    for (auto& j : jobs) j.get();
  }

  std::vector<Arrangement> all;
  for (auto& part : per_branch)
    for (auto& a : part) all.push_back(std::move(a));
  return finish(std::move(all));
}

BigCount count_arrangements(const SystemSpec& spec, const EnumerationOptions& options) {
  const Composition& composition = spec.composition();
  if (composition.empty()) throw EmptyComposition();
  const auto n = composition.size();
  const auto mode = spec.binding().mode();
  if (mode == BindingMode::none) return 1;
  if (mode == BindingMode::all) {
    if (composition.species_count() == 1 && n <= options.limits.partition_cap)
      return partition_count(static_cast<std::uint32_t>(n), options.limits);
    if (composition.species_count() == n && n <= options.limits.bell_cap)
      return bell(static_cast<std::uint32_t>(n), options.limits);
  }
  const Lattice lattice(composition);
  const auto candidates = build_candidates(spec, lattice, options.cap);
  if (auto exact = lattice_count(lattice, candidates)) return *exact;
  return enumerate_arrangements(spec, options).count;
}

ConstraintReport check_constraints(const SystemSpec& spec, const EnumerationOptions& options) {
  ConstraintReport r;
  const auto n = static_cast<std::uint32_t>(spec.size());
  r.arrangements = count_arrangements(spec, options);
  r.bell = bell(n, options.limits);
  r.partitions = partition_count(n, options.limits);
  r.general_holds = r.arrangements >= 1 && r.arrangements <= r.bell;
  r.tight_applies = spec.binding().mode() == BindingMode::all;
  r.tight_holds = r.partitions <= r.arrangements && r.arrangements <= r.bell;
  return r;
}

}  // namespace arrangekit
