#include "arrangekit/core.hpp"

#include <algorithm>
#include <cctype>

namespace arrangekit {

namespace {

bool is_letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_valid_species_token(std::string_view token) {
  if (token.empty() || !is_letter(token.front())) return false;
  std::size_t i = 1;
  while (i < token.size() && (is_letter(token[i]) || is_digit(token[i]))) ++i;
  if (i == token.size()) return true;
  if (token[i] == '^') {
    ++i;
    while (i < token.size() && is_digit(token[i])) ++i;
  }
  return i + 1 == token.size() && (token[i] == '+' || token[i] == '-');
}

SpeciesTable::SpeciesTable(std::vector<Species> species) : species_(std::move(species)) {
  std::sort(species_.begin(), species_.end(),
            [](const Species& a, const Species& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < species_.size(); ++i) {
    if (!is_valid_species_token(species_[i].name))
      throw ValidationError("invalid species name '" + species_[i].name + "'");
    if (i > 0 && species_[i].name == species_[i - 1].name)
      throw ValidationError("duplicate species name '" + species_[i].name + "'");
  }
}

const Species* SpeciesTable::find(std::string_view name) const {
  auto it = std::lower_bound(species_.begin(), species_.end(), name,
                             [](const Species& s, std::string_view n) { return s.name < n; });
  if (it == species_.end() || it->name != name) return nullptr;
  return &*it;
}

Composition::Composition(Counts counts) : counts_(std::move(counts)) {
  for (const auto& [name, n] : counts_) {
    if (n == 0) throw ValidationError("multiplicity of '" + name + "' must be at least 1");
    size_ += n;
  }
}

std::uint32_t Composition::count(std::string_view name) const {
  auto it = counts_.find(name);
  return it == counts_.end() ? 0 : it->second;
}

std::string Composition::member_string() const {
  std::string out;
  for (const auto& [name, n] : counts_) {
    if (!out.empty()) out += ',';
    out += name;
    if (n > 1) {
      out += '_';
      out += std::to_string(n);
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Composition& a, const Composition& b) {
  return std::lexicographical_compare_three_way(a.counts_.begin(), a.counts_.end(),
                                                b.counts_.begin(), b.counts_.end());
}

std::uint64_t total_size(const Composition& c) { return c.size(); }

Composition merge(const Composition& a, const Composition& b) {
  Composition::Counts counts = a.counts();
  for (const auto& [name, n] : b.counts()) counts[name] += n;
  return Composition(std::move(counts));
}

Cluster::Cluster(Composition members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("a cluster must contain at least one particle");
  key_ = members_.member_string();
}

std::strong_ordering cluster_order(const Cluster& a, const Cluster& b) {
  if (a.size() != b.size()) return b.size() <=> a.size();
  return a.key() <=> b.key();
}

Arrangement::Arrangement(std::vector<Cluster> clusters, Composition composition)
    : composition_(std::move(composition)) {
  std::sort(clusters.begin(), clusters.end(), cluster_precedes);
  Composition::Counts seen;
  for (auto& cluster : clusters) {
    for (const auto& [name, n] : cluster.members().counts()) seen[name] += n;
    if (!groups_.empty() && groups_.back().cluster == cluster) {
      ++groups_.back().multiplicity;
    } else {
      groups_.push_back({std::move(cluster), 1});
    }
  }
  cluster_count_ = clusters.size();
  if (seen != composition_.counts())
    throw ValidationError("clusters do not partition the composition (particle conservation)");
}

Arrangement::Arrangement(std::vector<Cluster> clusters)
    : Arrangement(clusters, [&] {
        Composition::Counts counts;
        for (const auto& c : clusters)
          for (const auto& [name, n] : c.members().counts()) counts[name] += n;
        return Composition(std::move(counts));
      }()) {}

std::vector<Cluster> Arrangement::clusters() const {
  std::vector<Cluster> out;
  out.reserve(cluster_count_);
  for (const auto& g : groups_)
    for (std::uint32_t i = 0; i < g.multiplicity; ++i) out.push_back(g.cluster);
  return out;
}

bool Arrangement::is_all_free() const noexcept {
  return std::all_of(groups_.begin(), groups_.end(),
                     [](const ClusterGroup& g) { return g.cluster.is_singleton(); });
}

std::strong_ordering operator<=>(const Arrangement& a, const Arrangement& b) {
  if (auto c = a.composition_ <=> b.composition_; c != 0) return c;
  auto ia = a.groups_.begin();
  auto ib = b.groups_.begin();
  std::uint32_t used_a = 0, used_b = 0;
  while (ia != a.groups_.end() && ib != b.groups_.end()) {
    if (auto c = cluster_order(ia->cluster, ib->cluster); c != 0) return c;
    ++used_a;
    ++used_b;
    if (used_a == ia->multiplicity) {
      ++ia;
      used_a = 0;
    }
    if (used_b == ib->multiplicity) {
      ++ib;
      used_b = 0;
    }
  }
  if (ia == a.groups_.end() && ib == b.groups_.end()) return std::strong_ordering::equal;
  return ia == a.groups_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

Arrangement canonicalize(std::vector<Cluster> clusters, Composition composition) {
  return Arrangement(std::move(clusters), std::move(composition));
}

}  // namespace arrangekit
