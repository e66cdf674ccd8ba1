#include "arrangekit/config.hpp"

#include <fstream>
#include <set>

#include "arrangekit/notation.hpp"

namespace arrangekit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw SchemaError(path, message); }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::uint64_t require_count(const json& j, const std::string& path, std::uint64_t min) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < min) fail(path, "must be at least " + std::to_string(min));
  return v;
}

const std::string& require_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Composition cluster_key(const std::string& text, const SpeciesTable& species, const std::string& path) {
  try {
    return parse_cluster(text, species).members();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

SpeciesTable parse_species(const json& j) {
  require_array(j, "species");
  std::vector<Species> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = idx("species", i);
    require_object(j[i], path);
    only_keys(j[i], path, {"name", "identical"});
    if (!j[i].contains("name")) fail(path + ".name", "missing");
    Species s;
    s.name = require_string(j[i]["name"], path + ".name");
    if (!is_valid_species_token(s.name)) fail(path + ".name", "invalid species token '" + s.name + "'");
    if (j[i].contains("identical")) {
      if (!j[i]["identical"].is_boolean()) fail(path + ".identical", "expected a boolean");
      s.identical = j[i]["identical"].get<bool>();
    }
    out.push_back(std::move(s));
  }
  try {
    return SpeciesTable(std::move(out));
  } catch (const ValidationError& e) {
    fail("species", e.what());
  }
}

Composition parse_composition(const json& j, const SpeciesTable& species) {
  require_object(j, "composition");
  Composition::Counts counts;
  for (const auto& [name, value] : j.items()) {
    const std::string path = "composition." + name;
    const Species* s = species.find(name);
    if (s == nullptr) fail(path, "species is not declared");
    const auto n = require_count(value, path, 1);
    if (n > 1'000'000'000) fail(path, "multiplicity too large");
    if (!s->identical && n != 1) fail(path, "distinguishable species must have multiplicity 1");
    counts.emplace(name, static_cast<std::uint32_t>(n));
  }
  return Composition(std::move(counts));
}

BindingPredicate parse_binding(const json* j, const SpeciesTable& species) {
  if (j == nullptr) return BindingPredicate::all();
  require_object(*j, "binding");
  only_keys(*j, "binding", {"mode", "allowlist"});
  if (!j->contains("mode")) fail("binding.mode", "missing");
  const std::string& mode = require_string((*j)["mode"], "binding.mode");
  if (mode != "allowlist" && j->contains("allowlist")) fail("binding.allowlist", "only valid with mode 'allowlist'");
  if (mode == "all") return BindingPredicate::all();
  if (mode == "none") return BindingPredicate::none();
  if (mode != "allowlist") fail("binding.mode", "expected one of 'all', 'none', 'allowlist'");
  std::set<Composition> entries;
  if (j->contains("allowlist")) {
    const json& list = require_array((*j)["allowlist"], "binding.allowlist");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = idx("binding.allowlist", i);
      Composition c = cluster_key(require_string(list[i], path), species, path);
      if (c.size() < 2) fail(path, "allowlist entries must contain at least 2 particles");
      entries.insert(std::move(c));
    }
  }
  return BindingPredicate::allowlist(std::move(entries));
}

EnergyCatalog parse_catalog(const json* levels_json, const json* notes_json, const SpeciesTable& species) {
  EnergyCatalog::Levels levels;
  EnergyCatalog::Annotations notes;
  if (levels_json != nullptr) {
    require_object(*levels_json, "catalog");
    for (const auto& [key, value] : levels_json->items()) {
      const std::string path = "catalog." + key;
      Composition c = cluster_key(key, species, path);
      if (c.size() < 2) fail(path, "catalog clusters must contain at least 2 particles");
      require_array(value, path);
      if (value.empty()) fail(path, "at least one energy is required");
      std::vector<double> energies;
      for (std::size_t i = 0; i < value.size(); ++i) {
        const double e = require_number(value[i], idx(path, i));
        if (!(e < 0.0)) fail(idx(path, i), "bound-state energies must be negative");
        energies.push_back(e);
      }
      if (levels.contains(c)) fail(path, "duplicate cluster");
      levels.emplace(std::move(c), std::move(energies));
    }
  }
  if (notes_json != nullptr) {
    require_object(*notes_json, "annotations");
    for (const auto& [key, value] : notes_json->items()) {
      const std::string path = "annotations." + key;
      Composition c = cluster_key(key, species, path);
      require_array(value, path);
      std::vector<std::string> text;
      for (std::size_t i = 0; i < value.size(); ++i) text.push_back(require_string(value[i], idx(path, i)));
      notes.emplace(std::move(c), std::move(text));
    }
  }
  return EnergyCatalog(std::move(levels), std::move(notes));
}

Smoothness parse_smoothness(const json& j, const std::string& path) {
  const std::string& s = require_string(j, path);
  if (s == "continuous") return Smoothness::continuous;
  if (s == "once") return Smoothness::once_differentiable;
  if (s == "twice") return Smoothness::twice_differentiable;
  fail(path, "expected one of 'continuous', 'once', 'twice'");
}

PairPotential parse_potential(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("kind")) fail(path + ".kind", "missing");
  const std::string& kind = require_string(j["kind"], path + ".kind");
  auto param = [&](const char* name) {
    if (!j.contains(name)) fail(path + "." + name, "missing");
    return require_number(j[name], path + "." + name);
  };
  auto positive = [&](const char* name) {
    const double v = param(name);
    if (!(v > 0.0)) fail(path + "." + name, "must be positive");
    return v;
  };
  std::optional<PairPotential> pot;
  if (kind == "inverse_power") {
    only_keys(j, path, {"kind", "strength", "power", "between", "smoothness"});
    pot = PairPotential::inverse_power(param("strength"), positive("power"));
  } else if (kind == "lennard_jones") {
    only_keys(j, path, {"kind", "epsilon", "sigma", "between", "smoothness"});
    pot = PairPotential::lennard_jones(param("epsilon"), positive("sigma"));
  } else if (kind == "screened_coulomb") {
    only_keys(j, path, {"kind", "charge_product", "screening_length", "between", "smoothness"});
    pot = PairPotential::screened_coulomb(param("charge_product"), positive("screening_length"));
  } else {
    fail(path + ".kind", "expected one of 'inverse_power', 'lennard_jones', 'screened_coulomb'");
  }
  if (j.contains("smoothness")) pot = pot->with_smoothness(parse_smoothness(j["smoothness"], path + ".smoothness"));
  return *pot;
}

SeparabilitySetup parse_separability(const json& j) {
  const std::string root = "separability";
  require_object(j, root);
  only_keys(j, root, {"masses", "positions", "labels", "subsystem", "potentials"});
  for (const char* key : {"masses", "positions", "subsystem", "potentials"})
    if (!j.contains(key)) fail(root + "." + key, "missing");

  const json& masses = require_array(j["masses"], root + ".masses");
  const json& positions = require_array(j["positions"], root + ".positions");
  if (positions.size() != masses.size()) fail(root + ".positions", "must have one entry per mass");
  const json* labels = j.contains("labels") ? &j["labels"] : nullptr;
  if (labels != nullptr && (require_array(*labels, root + ".labels").size() != masses.size()))
    fail(root + ".labels", "must have one entry per mass");

  std::vector<Particle> particles;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    Particle p;
    p.mass = require_number(masses[i], idx(root + ".masses", i));
    if (!(p.mass > 0.0)) fail(idx(root + ".masses", i), "mass must be positive");
    const std::string ppath = idx(root + ".positions", i);
    const json& pos = require_array(positions[i], ppath);
    if (pos.size() != 3) fail(ppath, "expected 3 coordinates");
    p.position = {require_number(pos[0], idx(ppath, 0)), require_number(pos[1], idx(ppath, 1)),
                  require_number(pos[2], idx(ppath, 2))};
    if (labels != nullptr) p.label = require_string((*labels)[i], idx(root + ".labels", i));
    particles.push_back(std::move(p));
  }

  const json& sub = require_array(j["subsystem"], root + ".subsystem");
  std::vector<std::size_t> subsystem;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto v = require_count(sub[i], idx(root + ".subsystem", i), 0);
    if (v >= particles.size()) fail(idx(root + ".subsystem", i), "index out of range");
    subsystem.push_back(static_cast<std::size_t>(v));
  }

  PotentialTable table;
  const json& pots = require_array(j["potentials"], root + ".potentials");
  if (pots.empty()) fail(root + ".potentials", "at least one potential is required");
  for (std::size_t i = 0; i < pots.size(); ++i) {
    const std::string path = idx(root + ".potentials", i);
    PairPotential pot = parse_potential(pots[i], path);
    if (pots[i].contains("between")) {
      const json& between = require_array(pots[i]["between"], path + ".between");
      if (between.size() != 2) fail(path + ".between", "expected two labels");
      table.set(require_string(between[0], path + ".between[0]"), require_string(between[1], path + ".between[1]"),
                std::move(pot));
    } else {
      table.set_default(std::move(pot));
    }
  }

  try {
    return {MassedConfiguration(std::move(particles), std::move(subsystem)), std::move(table)};
  } catch (const ValidationError& e) {
    fail(root, e.what());
  }
}

}  // namespace

const SystemSpec& ConfigDocument::require_system() const {
  if (!system) throw SchemaError("composition", "missing (required by this command)");
  return *system;
}

const SeparabilitySetup& ConfigDocument::require_separability() const {
  if (!separability) throw SchemaError("separability", "missing (required by this command)");
  return *separability;
}

ConfigDocument parse_config(const json& doc) {
  require_object(doc, "$");
  only_keys(doc, "", {"species", "composition", "binding", "catalog", "annotations", "separability"});
  ConfigDocument out;
  if (doc.contains("species")) out.species = parse_species(doc["species"]);

  auto section = [&](const char* key) -> const json* { return doc.contains(key) ? &doc[key] : nullptr; };
  if (doc.contains("composition")) {
    Composition c = parse_composition(doc["composition"], out.species);
    BindingPredicate binding = parse_binding(section("binding"), out.species);
    try {
      out.system.emplace(out.species, std::move(c), std::move(binding));
    } catch (const ValidationError& e) {
      fail("composition", e.what());
    }
  } else if (doc.contains("binding")) {
    parse_binding(section("binding"), out.species);
  }
  out.catalog = parse_catalog(section("catalog"), section("annotations"), out.species);
  if (doc.contains("separability")) out.separability.emplace(parse_separability(doc["separability"]));
  return out;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string(), "cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace arrangekit
