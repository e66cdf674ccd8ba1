#include "arrangekit/notation.hpp"

#include <algorithm>

namespace arrangekit {

namespace {

constexpr std::uint32_t kMaxInteger = 1'000'000'000;
constexpr std::uint64_t kMaxClusters = 10'000'000;

bool is_letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct RawItem {
  std::string name;
  std::uint32_t count;
  std::size_t offset;
};

struct RawGroup {
  std::vector<RawItem> items;
  std::optional<std::uint32_t> multiplicity;  // nullopt: "_inf"
  std::size_t multiplicity_offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawGroup> arrangement() {
    std::vector<RawGroup> groups;
    skip_ws();
    if (at_end()) fail("'('");
    while (!at_end()) {
      groups.push_back(group());
      skip_ws();
    }
    return groups;
  }

  RawGroup single_group() {
    skip_ws();
    RawGroup g = group();
    skip_ws();
    if (!at_end()) fail("end of input");
    return g;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  std::string describe_found() const {
    if (at_end()) return "end of input";
    return std::string("'") + peek() + "'";
  }

  [[noreturn]] void fail(std::string expected) const {
    throw ParseError(pos_, std::move(expected), describe_found());
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  RawGroup group() {
    RawGroup g;
    expect('(');
    skip_ws();
    g.items.push_back(item());
    for (;;) {
      skip_ws();
      if (at_end()) fail("')' or ','");
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        g.items.push_back(item());
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        break;
      }
      fail("')' or ','");
    }
    g.multiplicity = 1;
    skip_ws();
    if (!at_end() && peek() == '_') {
      ++pos_;
      skip_ws();
      g.multiplicity_offset = pos_;
      if (text_.substr(pos_, 3) == "inf") {
        pos_ += 3;
        g.multiplicity.reset();
      } else {
        g.multiplicity = positive_integer("positive integer or 'inf'");
      }
    }
    return g;
  }

  RawItem item() {
    RawItem it;
    it.offset = pos_;
    it.name = species_token();
    it.count = 1;
    skip_ws();
    if (!at_end() && peek() == '_') {
      ++pos_;
      skip_ws();
      it.count = positive_integer("positive integer");
    }
    return it;
  }

  std::string species_token() {
    const std::size_t start = pos_;
    if (at_end() || !is_letter(peek())) fail("species");
    ++pos_;
    while (!at_end() && (is_letter(peek()) || is_digit(peek()))) ++pos_;
    if (!at_end() && peek() == '^') {
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (at_end() || (peek() != '+' && peek() != '-')) fail("'+' or '-'");
      ++pos_;
    } else if (!at_end() && (peek() == '+' || peek() == '-')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t positive_integer(const char* what) {
    if (at_end() || !is_digit(peek()) || peek() == '0') fail(what);
    std::uint64_t value = 0;
    while (!at_end() && is_digit(peek())) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > kMaxInteger) fail("integer at most 1000000000");
      ++pos_;
    }
    return static_cast<std::uint32_t>(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Composition group_members(const RawGroup& g, const SpeciesTable* species) {
  Composition::Counts counts;
  for (const auto& item : g.items) {
    if (species != nullptr && !species->contains(item.name)) throw UnknownSpecies(item.name, item.offset);
    std::uint64_t total = std::uint64_t{counts[item.name]} + item.count;
    if (total > kMaxInteger) throw ParseError(item.offset, "smaller multiplicity", "overflow");
    counts[item.name] = static_cast<std::uint32_t>(total);
  }
  return Composition(std::move(counts));
}

void check_distinguishable(const std::vector<RawGroup>& groups, const SpeciesTable& species) {
  Composition::Counts seen;
  for (const auto& g : groups) {
    const std::uint32_t reps = g.multiplicity.value_or(1);
    for (const auto& item : g.items) {
      const Species* s = species.find(item.name);
      if (s == nullptr || s->identical) continue;
      if (item.count > 1 || reps > 1 || ++seen[item.name] > 1)
        throw ParseError(item.offset, "at most one distinguishable particle '" + item.name + "'",
                         "'" + item.name + "' repeated");
    }
  }
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : ValidationError("parse error at offset " + std::to_string(offset) + ": expected " + expected +
                      ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

UnknownSpecies::UnknownSpecies(std::string name, std::size_t offset)
    : ValidationError("unknown species '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

InfinityNotEnumerable::InfinityNotEnumerable(std::size_t offset)
    : ValidationError("'_inf' at offset " + std::to_string(offset) +
                      " is a display-only thermodynamic-limit marker, not an enumerable arrangement"),
      offset_(offset) {}

Arrangement parse(std::string_view text, const SpeciesTable& species) {
  const auto groups = Parser(text).arrangement();
  std::vector<Cluster> clusters;
  std::uint64_t total = 0;
  for (const auto& g : groups) {
    if (!g.multiplicity) throw InfinityNotEnumerable(g.multiplicity_offset);
    total += *g.multiplicity;
    if (total > kMaxClusters) throw ParseError(g.multiplicity_offset, "smaller multiplicity", "too many clusters");
    Cluster cluster(group_members(g, &species));
    for (std::uint32_t i = 0; i < *g.multiplicity; ++i) clusters.push_back(cluster);
  }
  check_distinguishable(groups, species);
  return Arrangement(std::move(clusters));
}

Cluster parse_cluster(std::string_view text, const SpeciesTable& species) {
  const RawGroup g = Parser(text).single_group();
  if (!g.multiplicity) throw InfinityNotEnumerable(g.multiplicity_offset);
  if (*g.multiplicity != 1)
    throw ParseError(g.multiplicity_offset, "a single group without multiplicity", "'_'");
  check_distinguishable({g}, species);
  return Cluster(group_members(g, &species));
}

std::string print(const Cluster& cluster) { return "(" + cluster.key() + ")"; }

std::string print(const Arrangement& arr) {
  std::string out;
  for (const auto& g : arr.groups()) {
    out += print(g.cluster);
    if (g.multiplicity > 1) out += "_" + std::to_string(g.multiplicity);
  }
  return out;
}

bool DisplayForm::has_infinity() const {
  for (const auto& g : groups)
    if (g.infinite()) return true;
  return false;
}

DisplayForm parse_display(std::string_view text) {
  DisplayForm form;
  for (const auto& g : Parser(text).arrangement())
    form.groups.push_back({group_members(g, nullptr), g.multiplicity});
  return form;
}

std::string print(const DisplayForm& form) {
  std::string out;
  for (const auto& g : form.groups) {
    out += "(" + g.members.member_string() + ")";
    if (g.infinite()) {
      out += "_inf";
    } else if (*g.multiplicity > 1) {
      out += "_" + std::to_string(*g.multiplicity);
    }
  }
  return out;
}

SpeciesTable infer_species(std::string_view text) {
  Composition::Counts names;
  for (const auto& g : parse_display(text).groups)
    for (const auto& [name, n] : g.members.counts()) names[name] = 1;
  std::vector<Species> species;
  for (const auto& [name, n] : names) species.push_back({name, true});
  return SpeciesTable(std::move(species));
}

std::string render_error(std::string_view text, std::size_t offset, std::string_view message) {
  std::string out(message);
  out += "\n  ";
  out += text;
  out += "\n  ";
  out += std::string(std::min(offset, text.size()), ' ');
  out += "^";
  return out;
}

}  // namespace arrangekit
