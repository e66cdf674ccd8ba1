#pragma once

// JSON configuration document shared by all CLI subcommands. Every section
// is optional; each subcommand requires the sections it uses.
//
// {
//   "species":     [{"name": "A", "identical": true}],
//   "composition": {"A": 3},
//   "binding":     {"mode": "all" | "none" | "allowlist", "allowlist": ["(X,e)"]},
//   "catalog":     {"(A_2)": [-1.0, -0.1], "(A_3)": [-2.5]},
//   "annotations": {"(A_2)": ["free text"]},
//   "separability": {
//     "masses": [1, 1, 2], "positions": [[0,0,0], [1,0,0], [5,0,0]],
//     "labels": ["A", "A", "B"], "subsystem": [0, 1],
//     "potentials": [{"kind": "screened_coulomb", "charge_product": 1,
//                     "screening_length": 2, "between": ["A", "B"],
//                     "smoothness": "twice"}]
//   }
// }

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "arrangekit/enumeration.hpp"
#include "arrangekit/separability.hpp"
#include "arrangekit/spectrum.hpp"

namespace arrangekit {

// A schema violation; `path` is the offending field, e.g. "binding.mode".
class SchemaError : public ValidationError {
 public:
  SchemaError(std::string path, const std::string& message)
      : ValidationError(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct SeparabilitySetup {
  MassedConfiguration configuration;
  PotentialTable potentials;
};

struct ConfigDocument {
  SpeciesTable species;
  std::optional<SystemSpec> system;  // present when "composition" is given
  EnergyCatalog catalog;
  std::optional<SeparabilitySetup> separability;

  const SystemSpec& require_system() const;
  const SeparabilitySetup& require_separability() const;
};

// Validates the whole document before returning; throws SchemaError.
ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument load_config(const std::filesystem::path& path);

}  // namespace arrangekit
