#include "arrangekit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "arrangekit/combinatorics.hpp"
#include "arrangekit/config.hpp"
#include "arrangekit/enumeration.hpp"
#include "arrangekit/notation.hpp"
#include "arrangekit/separability.hpp"
#include "arrangekit/spectrum.hpp"

namespace arrangekit::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const Vec3& v) { return "(" + fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z) + ")"; }

ordered_json to_json(const Vec3& v) {
  return ordered_json::array({round_significant(v.x), round_significant(v.y), round_significant(v.z)});
}

std::string composition_summary(const Composition& c) {
  std::string out;
  for (const auto& [name, count] : c.counts()) {
    if (!out.empty()) out += ' ';
    out += name + ":" + std::to_string(count);
  }
  return out;
}

ordered_json composition_json(const Composition& c) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, count] : c.counts()) out[name] = count;
  return out;
}

// Left column padded to `width`.
void row(std::ostream& os, const std::string& label, const std::string& value, std::size_t width = 14) {
  os << std::left << std::setw(static_cast<int>(width)) << label << value << '\n';
}

struct Globals {
  std::string format = "table";
  std::string out_path;
  std::string config_path;
  std::uint64_t cap = EnumerationOptions{}.cap;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  bool json() const { return format == "json"; }

  EnumerationOptions enumeration() const {
    EnumerationOptions opts;
    opts.cap = cap;
    opts.threads = threads;
    return opts;
  }
};

ConfigDocument load(const Globals& g, const std::string& positional) {
  const std::string& path = positional.empty() ? g.config_path : positional;
  if (path.empty()) throw ValidationError("a config document is required (positional path or --config)");
  return load_config(path);
}

// --- parse -----------------------------------------------------------------

struct ParseArgs {
  std::string text;
  bool display = false;
};

void cmd_parse(const Globals& g, const ParseArgs& a, std::ostream& os) {
  if (a.display) {
    const DisplayForm form = parse_display(a.text);
    if (g.json()) {
      ordered_json doc;
      doc["display"] = print(form);
      doc["enumerable"] = !form.has_infinity();
      os << doc.dump(2) << '\n';
    } else {
      os << print(form) << '\n';
      if (form.has_infinity()) os << "display only: _inf is not enumerable\n";
    }
    return;
  }
  SpeciesTable species;
  if (!g.config_path.empty()) species = load_config(g.config_path).species;
  if (species.size() == 0) species = infer_species(a.text);
  const Arrangement arr = parse(a.text, species);
  if (g.json()) {
    ordered_json doc;
    doc["canonical"] = print(arr);
    doc["composition"] = composition_json(arr.composition());
    doc["N"] = arr.composition().size();
    doc["clusters"] = arr.cluster_count();
    os << doc.dump(2) << '\n';
  } else {
    os << print(arr) << '\n' << composition_summary(arr.composition()) << '\n';
  }
}

// --- enumerate ---------------------------------------------------------------

struct EnumerateArgs {
  std::string config;
  bool count_only = false;
};

void cmd_enumerate(const Globals& g, const EnumerateArgs& a, std::ostream& os) {
  const ConfigDocument doc = load(g, a.config);
  const SystemSpec& spec = doc.require_system();
  if (a.count_only) {
    const BigCount m = count_arrangements(spec, g.enumeration());
    if (g.json()) {
      ordered_json out;
      out["N"] = spec.size();
      out["M"] = m.str();
      os << out.dump(2) << '\n';
    } else {
      os << m << '\n';
    }
    return;
  }
  const ArrangementSet set = enumerate_arrangements(spec, g.enumeration());
  if (g.json()) {
    ordered_json out;
    out["N"] = spec.size();
    out["M"] = set.count.str();
    out["has_all_bound"] = set.has_all_bound;
    out["has_all_free"] = set.has_all_free;
    ordered_json list = ordered_json::array();
    for (const auto& arr : set.arrangements) list.push_back(print(arr));
    out["arrangements"] = std::move(list);
    os << out.dump(2) << '\n';
  } else {
    os << "# M = " << set.count << '\n';
    for (const auto& arr : set.arrangements) os << print(arr) << '\n';
  }
}

// --- counts ------------------------------------------------------------------

struct CountsArgs {
  std::optional<std::uint32_t> bell_n;
  std::optional<std::uint32_t> partitions_n;
  std::optional<std::uint32_t> table_n;
};

void cmd_counts(const Globals& g, const CountsArgs& a, std::ostream& os) {
  const int given = int(a.bell_n.has_value()) + int(a.partitions_n.has_value()) + int(a.table_n.has_value());
  if (given != 1) throw ValidationError("counts needs exactly one of --bell, --partitions, --table");

  if (a.bell_n || a.partitions_n) {
    const bool is_bell = a.bell_n.has_value();
    const std::uint32_t n = is_bell ? *a.bell_n : *a.partitions_n;
    const BigCount v = is_bell ? bell(n) : partition_count(n);
    if (g.json()) {
      ordered_json out;
      out["N"] = n;
      out[is_bell ? "B" : "p"] = v.str();
      os << out.dump(2) << '\n';
    } else {
      os << v << '\n';
    }
    return;
  }

  const std::uint32_t n = *a.table_n;
  if (n == 0) throw ValidationError("--table needs N >= 1");
  // Checked up front so a cap error produces no partial table.
  const auto p = partition_counts(n);
  const auto b = bell_numbers(n);
  if (g.json()) {
    ordered_json rows = ordered_json::array();
    for (std::uint32_t i = 1; i <= n; ++i) {
      ordered_json r;
      r["N"] = i;
      r["p"] = p[i].str();
      r["B"] = b[i].str();
      rows.push_back(std::move(r));
    }
    ordered_json out;
    out["rows"] = std::move(rows);
    os << out.dump(2) << '\n';
    return;
  }
  std::size_t wn = std::max<std::size_t>(1, std::to_string(n).size());
  std::size_t wp = 4, wb = 4;
  for (std::uint32_t i = 1; i <= n; ++i) {
    wp = std::max(wp, p[i].str().size());
    wb = std::max(wb, b[i].str().size());
  }
  os << std::right << std::setw(int(wn)) << "N" << "  " << std::setw(int(wp)) << "p(N)" << "  " << std::setw(int(wb))
     << "B(N)" << '\n';
  for (std::uint32_t i = 1; i <= n; ++i)
    os << std::setw(int(wn)) << i << "  " << std::setw(int(wp)) << p[i].str() << "  " << std::setw(int(wb))
       << b[i].str() << '\n';
}

// --- asymptotics -------------------------------------------------------------

struct AsymptoticsArgs {
  std::optional<std::uint64_t> n;
  std::string method = "bell";
  std::string series;
};

struct AsymptoticRow {
  AsymptoticEstimate estimate;
  std::optional<BigCount> exact;
  std::optional<double> ln_exact;
};

AsymptoticRow asymptotic_row(AsymptoticMethod method, std::uint64_t n, const CombinatoricsLimits& limits,
                             const std::vector<BigCount>* table) {
  AsymptoticRow r{method == AsymptoticMethod::bell ? bell_asymptotic(n) : hardy_ramanujan(n), {}, {}};
  const std::uint64_t cap = method == AsymptoticMethod::bell ? limits.bell_cap : limits.partition_cap;
  if (n <= cap) {
    if (table != nullptr)
      r.exact = (*table)[n];
    else
      r.exact = method == AsymptoticMethod::bell ? bell(std::uint32_t(n)) : partition_count(std::uint32_t(n));
    r.ln_exact = natural_log(*r.exact);
  }
  return r;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ValidationError("--series expects a range a..b, got '" + text + "'");
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ValidationError("--series expects a range a..b, got '" + text + "'");
    return v;
  };
  const std::string_view sv(text);
  const auto lo = number(sv.substr(0, dots));
  const auto hi = number(sv.substr(dots + 2));
  if (lo < 1 || hi < lo) throw ValidationError("--series needs 1 <= a <= b");
  if (hi - lo >= 1'000'000) throw CapExceeded("series length", std::to_string(hi - lo + 1), "1000000");
  return {lo, hi};
}

void cmd_asymptotics(const Globals& g, const AsymptoticsArgs& a, std::ostream& os) {
  AsymptoticMethod method;
  if (a.method == "bell")
    method = AsymptoticMethod::bell;
  else if (a.method == "hr" || a.method == "hardy-ramanujan")
    method = AsymptoticMethod::hardy_ramanujan;
  else
    throw ValidationError("--method must be 'bell' or 'hr'");
  const CombinatoricsLimits limits;

  if (!a.series.empty()) {
    if (a.n) throw ValidationError("give either N or --series, not both");
    const auto [lo, hi] = parse_range(a.series);
    const std::uint64_t cap = method == AsymptoticMethod::bell ? limits.bell_cap : limits.partition_cap;
    const auto top = std::uint32_t(std::min(hi, cap));
    const std::vector<BigCount> table =
        lo <= cap ? (method == AsymptoticMethod::bell ? bell_numbers(top) : partition_counts(top))
                  : std::vector<BigCount>{};
    ordered_json rows = ordered_json::array();
    if (!g.json()) os << "# " << to_string(method) << "\n# N ln_estimate ln_exact\n";
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const auto r = asymptotic_row(method, n, limits, n <= cap ? &table : nullptr);
      if (g.json()) {
        ordered_json j;
        j["N"] = n;
        j["ln_estimate"] = round_significant(r.estimate.log_value);
        j["ln_exact"] = r.ln_exact ? ordered_json(round_significant(*r.ln_exact)) : ordered_json(nullptr);
        rows.push_back(std::move(j));
      } else {
        os << n << ' ' << fmt(r.estimate.log_value) << ' ' << (r.ln_exact ? fmt(*r.ln_exact) : "-") << '\n';
      }
    }
    if (g.json()) {
      ordered_json out;
      out["method"] = to_string(method);
      out["rows"] = std::move(rows);
      os << out.dump(2) << '\n';
    }
    return;
  }

  if (!a.n) throw ValidationError("asymptotics needs N or --series");
  if (*a.n < 1) throw ValidationError("asymptotics needs N >= 1");
  const auto r = asymptotic_row(method, *a.n, limits, nullptr);
  // ratio = estimate / exact, formed in log space
  const double ratio = r.ln_exact ? std::exp(r.estimate.log_value - *r.ln_exact) : 0.0;
  if (g.json()) {
    ordered_json out;
    out["method"] = to_string(method);
    out["N"] = *a.n;
    out["estimate"] = r.estimate.value ? ordered_json(round_significant(*r.estimate.value)) : ordered_json(nullptr);
    out["ln_estimate"] = round_significant(r.estimate.log_value);
    if (r.estimate.lambert_k) out["K"] = round_significant(*r.estimate.lambert_k);
    out["exact"] = r.exact ? ordered_json(r.exact->str()) : ordered_json(nullptr);
    out["ln_exact"] = r.ln_exact ? ordered_json(round_significant(*r.ln_exact)) : ordered_json(nullptr);
    out["ratio"] = r.ln_exact ? ordered_json(round_significant(ratio)) : ordered_json(nullptr);
    os << out.dump(2) << '\n';
    return;
  }
  row(os, "method", to_string(method));
  row(os, "N", std::to_string(*a.n));
  row(os, "estimate", r.estimate.value ? fmt(*r.estimate.value) : "overflow");
  row(os, "ln_estimate", fmt(r.estimate.log_value));
  if (r.estimate.lambert_k) row(os, "K", fmt(*r.estimate.lambert_k));
  row(os, "exact", r.exact ? r.exact->str() : "not computed (above cap)");
  if (r.ln_exact) row(os, "ln_exact", fmt(*r.ln_exact));
  if (r.ln_exact) row(os, "ratio", fmt(ratio));
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  std::string config;
  std::optional<double> at_energy;
};

void cmd_spectrum(const Globals& g, const SpectrumArgs& a, std::ostream& os, std::ostream& err) {
  const ConfigDocument doc = load(g, a.config);
  const ArrangementSet set = enumerate_arrangements(doc.require_system(), g.enumeration());
  const SpectrumLayout layout = assign_g(set, doc.catalog);
  for (const auto& w : layout.warnings) err << "warning: " << w << '\n';

  if (a.at_energy) {
    const double e = *a.at_energy;
    if (!std::isfinite(e)) throw ValidationError("--at-energy must be finite");
    const auto open = open_arrangements(layout, e);
    if (g.json()) {
      ordered_json out;
      out["energy"] = round_significant(e);
      out["open"] = open.count;
      ordered_json list = ordered_json::array();
      for (const auto& arr : open.arrangements) list.push_back(print(arr));
      out["arrangements"] = std::move(list);
      os << out.dump(2) << '\n';
    } else {
      os << "# open at E = " << fmt(e) << ": " << open.count << '\n';
      for (const auto& arr : open.arrangements) os << print(arr) << '\n';
    }
    return;
  }

  if (g.json()) {
    os << export_spectrum(layout, doc.catalog).dump(2) << '\n';
    return;
  }
  std::size_t width = 11;
  for (const auto& lvl : layout.levels) width = std::max(width, lvl.notation.size());
  os << std::left << std::setw(4) << "g" << std::setw(int(width + 2)) << "arrangement" << "threshold\n";
  for (const auto& lvl : layout.levels) {
    std::string t;
    if (lvl.all_bound) {
      t = "bound";
      if (!lvl.bound_levels.empty()) t += " (ground " + fmt(lvl.bound_levels.front()) + ")";
    } else {
      t = fmt(*lvl.lowest_threshold);
    }
    os << std::left << std::setw(4) << lvl.g << std::setw(int(width + 2)) << lvl.notation << t << '\n';
  }
  for (const auto& [a1, a2] : layout.degenerate_thresholds)
    os << "# degenerate thresholds: g = " << a1 << " and g = " << a2 << '\n';
}

// --- separability ------------------------------------------------------------

struct SeparabilityArgs {
  std::string config;
  std::optional<std::size_t> sweep;
  bool random = false;
  std::size_t particles = 5;
  std::size_t subsystem = 3;
  bool equal_mass = false;
};

// Lower bound on the residual's scaling exponent: 2 when the linear term
// cancels (equal subsystem masses, one smooth potential per spectator), else 1.
int expected_order(const MassedConfiguration& cfg, const PotentialTable& table) {
  const auto& parts = cfg.particles();
  const auto& sub = cfg.subsystem();
  const double m0 = parts[sub.front()].mass;
  for (std::size_t i : sub)
    if (parts[i].mass != m0) return 1;
  for (std::size_t j : cfg.spectators()) {
    const PairPotential* first = nullptr;
    for (std::size_t i : sub) {
      const PairPotential& p = table.lookup(parts[i].label, parts[j].label);
      if (p.smoothness() != Smoothness::twice_differentiable) return 1;
      if (first == nullptr)
        first = &p;
      else if (first != &p)
        return 1;
    }
  }
  return 2;
}

void cmd_separability(const Globals& g, const SeparabilityArgs& a, std::ostream& os) {
  std::optional<MassedConfiguration> cfg;
  PotentialTable table;
  if (a.random) {
    if (!a.config.empty() || !g.config_path.empty())
      throw ValidationError("--random and a config document are mutually exclusive");
    std::mt19937_64 rng(g.seed);
    RandomConfigurationOptions opts;
    opts.particles = a.particles;
    opts.subsystem = a.subsystem;
    opts.equal_mass = a.equal_mass;
    cfg.emplace(random_configuration(rng, opts));
    table.set_default(PairPotential::screened_coulomb(1.0, 2.0));
  } else {
    ConfigDocument doc = load(g, a.config);
    const SeparabilitySetup& setup = doc.require_separability();
    cfg.emplace(setup.configuration);
    table = setup.potentials;
  }

  const SubsystemGeometry geom = subsystem_geometry(*cfg);
  const ConfinementReport conf = confinement_check(geom);
  std::optional<ScaleSweep> sweep;
  int order = 0;
  if (a.sweep) {
    if (*a.sweep < 2 || *a.sweep > 60) throw ValidationError("--scale-sweep needs 2 <= k <= 60");
    const auto scales = geometric_scales(4, *a.sweep);
    sweep = scale_sweep(*cfg, table, scales);
    order = expected_order(*cfg, table);
  }
  const bool has_spectators = !cfg->spectators().empty();

  if (g.json()) {
    ordered_json out;
    out["total_mass"] = round_significant(geom.total_mass);
    out["reduced_mass"] = round_significant(geom.reduced_mass);
    out["hyperradius"] = round_significant(geom.hyperradius);
    out["center"] = to_json(geom.center);
    ordered_json parts = ordered_json::array();
    for (std::size_t k = 0; k < geom.masses.size(); ++k) {
      ordered_json p;
      p["index"] = cfg->subsystem()[k];
      p["mass"] = round_significant(geom.masses[k]);
      p["distance"] = round_significant(geom.distances[k]);
      p["bound"] = round_significant(conf.bounds[k]);
      p["margin"] = round_significant(conf.margins[k]);
      parts.push_back(std::move(p));
    }
    out["subsystem"] = std::move(parts);
    out["confinement_holds"] = conf.holds;
    out["spectator_mean_distance"] =
        has_spectators ? ordered_json(round_significant(spectator_mean_distance(*cfg))) : ordered_json(nullptr);
    if (sweep) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : sweep->rows) {
        ordered_json j;
        j["scale"] = round_significant(r.scale);
        j["hyperradius"] = round_significant(r.hyperradius);
        j["residual"] = round_significant(r.residual);
        rows.push_back(std::move(j));
      }
      out["sweep"] = std::move(rows);
      out["slope"] = sweep->slope ? ordered_json(round_significant(*sweep->slope)) : ordered_json(nullptr);
      out["expected_min_slope"] = order;
    }
    os << out.dump(2) << '\n';
    return;
  }

  row(os, "M", fmt(geom.total_mass));
  row(os, "mu", fmt(geom.reduced_mass));
  row(os, "R", fmt(geom.hyperradius));
  row(os, "c", fmt(geom.center));
  os << "# index mass r_ci bound margin\n";
  for (std::size_t k = 0; k < geom.masses.size(); ++k)
    os << cfg->subsystem()[k] << ' ' << fmt(geom.masses[k]) << ' ' << fmt(geom.distances[k]) << ' '
       << fmt(conf.bounds[k]) << ' ' << fmt(conf.margins[k]) << '\n';
  row(os, "confinement", conf.holds ? "holds" : "VIOLATED");
  if (has_spectators) row(os, "r_rho", fmt(spectator_mean_distance(*cfg)));
  if (sweep) {
    os << "# s R residual\n";
    for (const auto& r : sweep->rows) os << fmt(r.scale) << ' ' << fmt(r.hyperradius) << ' ' << fmt(r.residual) << '\n';
    row(os, "q", sweep->slope ? fmt(*sweep->slope) : "undefined (residual vanishes)");
    row(os, "expected q >=", std::to_string(order));
  }
}

void report_parse_error(const std::string& text, std::size_t offset, const std::string& message, std::ostream& err) {
  err << "error: " << render_error(text, offset, message) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arrangement calculus for N-body systems", "arrangekit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "arrangekit 1.0.0");

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--out", g.out_path, "Write results to this file instead of stdout");
  app.add_option("--config", g.config_path, "Config document (JSON)");
  app.add_option("--cap", g.cap, "Maximum number of arrangements to generate")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for --random configurations");
  app.add_option("--threads", g.threads, "Enumeration worker threads")->check(CLI::Range(1u, 256u));

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "Canonicalize arrangement notation");
  parse_cmd->add_option("text", parse_args.text, "Arrangement, e.g. \"(Rb_2)(Rb)_3\"")->required();
  parse_cmd->add_flag("--display", parse_args.display, "Display-only form; accepts _inf");

  EnumerateArgs enum_args;
  auto* enum_cmd = app.add_subcommand("enumerate", "List every arrangement of the configured system");
  enum_cmd->add_option("config", enum_args.config, "Config document");
  enum_cmd->add_flag("--count-only", enum_args.count_only, "Print only the number of arrangements");

  CountsArgs counts_args;
  auto* counts_cmd = app.add_subcommand("counts", "Exact Bell and partition numbers");
  counts_cmd->add_option("--bell", counts_args.bell_n, "B(N)");
  counts_cmd->add_option("--partitions", counts_args.partitions_n, "p(N)");
  counts_cmd->add_option("--table", counts_args.table_n, "p(N) and B(N) for N = 1..N");

  AsymptoticsArgs asym_args;
  auto* asym_cmd = app.add_subcommand("asymptotics", "Asymptotic estimates against exact counts");
  asym_cmd->add_option("N", asym_args.n, "System size");
  asym_cmd->add_option("--method", asym_args.method, "bell or hr")->check(CLI::IsMember({"bell", "hr", "hardy-ramanujan"}));
  asym_cmd->add_option("--series", asym_args.series, "Range a..b of (N, ln value) rows");

  SpectrumArgs spec_args;
  auto* spec_cmd = app.add_subcommand("spectrum", "Threshold ordering (g numbering) of the arrangements");
  spec_cmd->add_option("config", spec_args.config, "Config document");
  spec_cmd->add_option("--at-energy", spec_args.at_energy,
                       "List arrangements open at this energy (an energy equal to a threshold counts as open)");

  SeparabilityArgs sep_args;
  auto* sep_cmd = app.add_subcommand("separability", "Subsystem geometry and the small-subsystem residual");
  sep_cmd->add_option("config", sep_args.config, "Config document");
  sep_cmd->add_option("--scale-sweep", sep_args.sweep, "Residual at s = 2^-4 .. 2^-(3+k) and the fitted slope");
  sep_cmd->add_flag("--random", sep_args.random, "Use a seeded random configuration");
  sep_cmd->add_option("--particles", sep_args.particles, "Particles in the random configuration");
  sep_cmd->add_option("--subsystem-size", sep_args.subsystem, "Subsystem size in the random configuration");
  sep_cmd->add_flag("--equal-mass", sep_args.equal_mass, "Equal masses in the random configuration");

  std::vector<std::string> argv_storage{"arrangekit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::ostringstream buffer;
  try {
    if (parse_cmd->parsed())
      cmd_parse(g, parse_args, buffer);
    else if (enum_cmd->parsed())
      cmd_enumerate(g, enum_args, buffer);
    else if (counts_cmd->parsed())
      cmd_counts(g, counts_args, buffer);
    else if (asym_cmd->parsed())
      cmd_asymptotics(g, asym_args, buffer);
    else if (spec_cmd->parsed())
      cmd_spectrum(g, spec_args, buffer, err);
    else if (sep_cmd->parsed())
      cmd_separability(g, sep_args, buffer);
  } catch (const ParseError& e) {
    report_parse_error(parse_args.text, e.offset(), e.what(), err);
    return kExitValidation;
  } catch (const UnknownSpecies& e) {
    report_parse_error(parse_args.text, e.offset(), e.what(), err);
    return kExitValidation;
  } catch (const InfinityNotEnumerable& e) {
    report_parse_error(parse_args.text, e.offset(), e.what(), err);
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  }

  if (g.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(g.out_path, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write " << g.out_path << '\n';
      return kExitValidation;
    }
  }
  return kExitOk;
}

}  // namespace arrangekit::cli
