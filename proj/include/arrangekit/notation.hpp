#pragma once

// Text notation for arrangements.
//
//   arrangement  := group+
//   group        := '(' body ')' [ '_' multiplicity ]
//   body         := item ( ',' item )*
//   item         := species-token [ '_' positive-integer ]
//   multiplicity := positive-integer | 'inf'
//
// "(A_2)(A)", "(Rb_2)(Rb)_3", "(A^+)(e^-)". Whitespace is allowed between
// tokens. `_inf` is accepted only by parse_display().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arrangekit/core.hpp"

namespace arrangekit {

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

class UnknownSpecies : public ValidationError {
 public:
  UnknownSpecies(std::string name, std::size_t offset);

  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

class InfinityNotEnumerable : public ValidationError {
 public:
  explicit InfinityNotEnumerable(std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Every species token must be declared. A distinguishable species may occur
// at most once. The result is canonical.
Arrangement parse(std::string_view text, const SpeciesTable& species);

// A single group without trailing multiplicity, e.g. "(A_2,B)".
Cluster parse_cluster(std::string_view text, const SpeciesTable& species);

std::string print(const Cluster& cluster);
std::string print(const Arrangement& arr);

// Display-only form. Groups are kept in input order; a missing multiplicity
// stands for the thermodynamic-limit marker "_inf".
struct DisplayGroup {
  Composition members;
  std::optional<std::uint32_t> multiplicity;

  bool infinite() const noexcept { return !multiplicity.has_value(); }
};

struct DisplayForm {
  std::vector<DisplayGroup> groups;

  bool has_infinity() const;
};

DisplayForm parse_display(std::string_view text);
std::string print(const DisplayForm& form);

// Every token in `text` declared as an identical species.
SpeciesTable infer_species(std::string_view text);

// Renders the error with the input line and a caret under the offset.
std::string render_error(std::string_view text, std::size_t offset, std::string_view message);

}  // namespace arrangekit
