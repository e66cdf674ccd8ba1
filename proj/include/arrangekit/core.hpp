#pragma once

// Data model for species, compositions, clusters and arrangements.
//
// Identical particles exist only as species multiplicities; there are no
// per-particle labels anywhere in the model. Every Arrangement is stored in
// canonical form, so value equality is arrangement identity.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arrangekit/error.hpp"

namespace arrangekit {

// letter (letter | digit)* [ ['^' digit*] ('+' | '-') ]
bool is_valid_species_token(std::string_view token);

struct Species {
  std::string name;
  bool identical = true;

  friend bool operator==(const Species&, const Species&) = default;
};

// Declared species, kept sorted by name. Names are unique and valid tokens.
class SpeciesTable {
 public:
  SpeciesTable() = default;
  explicit SpeciesTable(std::vector<Species> species);

  const Species* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<Species>& all() const noexcept { return species_; }
  std::size_t size() const noexcept { return species_.size(); }

 private:
  std::vector<Species> species_;
};

// Species name -> multiplicity; every stored multiplicity is at least 1.
class Composition {
 public:
  using Counts = std::map<std::string, std::uint32_t, std::less<>>;

  Composition() = default;
  explicit Composition(Counts counts);
  Composition(std::initializer_list<std::pair<const std::string, std::uint32_t>> counts)
      : Composition(Counts(counts)) {}

  const Counts& counts() const noexcept { return counts_; }
  std::uint32_t count(std::string_view name) const;
  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t species_count() const noexcept { return counts_.size(); }

  // Canonical member string, e.g. "A_2,B". Species in lexicographic order,
  // repeated species contracted with "_k".
  std::string member_string() const;

  friend bool operator==(const Composition& a, const Composition& b) { return a.counts_ == b.counts_; }
  friend std::strong_ordering operator<=>(const Composition& a, const Composition& b);

 private:
  Counts counts_;
  std::uint64_t size_ = 0;
};

std::uint64_t total_size(const Composition& c);
Composition merge(const Composition& a, const Composition& b);

// A bound group. Size 1 is a free particle.
class Cluster {
 public:
  explicit Cluster(Composition members);

  const Composition& members() const noexcept { return members_; }
  std::uint64_t size() const noexcept { return members_.size(); }
  bool is_singleton() const noexcept { return size() == 1; }
  const std::string& key() const noexcept { return key_; }

  friend bool operator==(const Cluster& a, const Cluster& b) { return a.key_ == b.key_; }

 private:
  Composition members_;
  std::string key_;
};

// Canonical cluster order: larger clusters first, then member string ascending.
std::strong_ordering cluster_order(const Cluster& a, const Cluster& b);
inline bool cluster_precedes(const Cluster& a, const Cluster& b) { return cluster_order(a, b) < 0; }

struct ClusterGroup {
  Cluster cluster;
  std::uint32_t multiplicity = 1;

  friend bool operator==(const ClusterGroup&, const ClusterGroup&) = default;
};

class Arrangement {
 public:
  // Throws ValidationError unless the clusters partition `composition` exactly.
  Arrangement(std::vector<Cluster> clusters, Composition composition);
  // Composition is the union of the clusters.
  explicit Arrangement(std::vector<Cluster> clusters);

  const std::vector<ClusterGroup>& groups() const noexcept { return groups_; }
  const Composition& composition() const noexcept { return composition_; }
  std::uint64_t cluster_count() const noexcept { return cluster_count_; }
  std::vector<Cluster> clusters() const;

  // One cluster holding every particle, N >= 2.
  bool is_all_bound() const noexcept { return cluster_count_ == 1 && composition_.size() >= 2; }
  bool is_all_free() const noexcept;
  bool is_continuum() const noexcept { return !is_all_bound(); }

  friend bool operator==(const Arrangement& a, const Arrangement& b) {
    return a.composition_ == b.composition_ && a.groups_ == b.groups_;
  }
  // Composition first, then the expanded cluster sequence in canonical order.
  friend std::strong_ordering operator<=>(const Arrangement& a, const Arrangement& b);

 private:
  std::vector<ClusterGroup> groups_;
  Composition composition_;
  std::uint64_t cluster_count_ = 0;
};

Arrangement canonicalize(std::vector<Cluster> clusters, Composition composition);
inline Arrangement canonicalize(const Arrangement& arr) { return arr; }

}  // namespace arrangekit
