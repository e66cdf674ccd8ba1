#include "arrangekit/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace arrangekit {

double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

MassedConfiguration::MassedConfiguration(std::vector<Particle> particles, std::vector<std::size_t> subsystem)
    : particles_(std::move(particles)), subsystem_(std::move(subsystem)) {
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    const double m = particles_[i].mass;
    if (!std::isfinite(m) || !(m > 0.0))
      throw ValidationError("particle " + std::to_string(i) + ": mass must be positive and finite");
    const auto& p = particles_[i].position;
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw ValidationError("particle " + std::to_string(i) + ": position must be finite");
  }
  if (subsystem_.size() < 2) throw ValidationError("subsystem needs at least 2 particles");
  std::vector<bool> in_sub(particles_.size(), false);
  for (std::size_t idx : subsystem_) {
    if (idx >= particles_.size()) throw ValidationError("subsystem index " + std::to_string(idx) + " out of range");
    if (in_sub[idx]) throw ValidationError("subsystem index " + std::to_string(idx) + " repeated");
    in_sub[idx] = true;
  }
  for (std::size_t i = 0; i < particles_.size(); ++i)
    if (!in_sub[i]) spectators_.push_back(i);
}

SubsystemGeometry subsystem_geometry(const MassedConfiguration& cfg) {
  SubsystemGeometry g;
  const auto& parts = cfg.particles();
  double log_product = 0.0;
  Vec3 weighted;
  for (std::size_t idx : cfg.subsystem()) {
    const double m = parts[idx].mass;
    g.masses.push_back(m);
    g.total_mass += m;
    log_product += std::log(m);
    weighted += m * parts[idx].position;
  }
  g.center = (1.0 / g.total_mass) * weighted;
  const auto n_sb = static_cast<double>(cfg.subsystem().size());
  g.reduced_mass = std::exp((log_product - std::log(g.total_mass)) / (n_sb - 1.0));

  double moment = 0.0;
  for (std::size_t idx : cfg.subsystem()) {
    const double r = norm(parts[idx].position - g.center);
    g.distances.push_back(r);
    moment += parts[idx].mass * r * r;
  }
  g.hyperradius = std::sqrt(moment / g.reduced_mass);
  return g;
}

ConfinementReport confinement_check(const SubsystemGeometry& geom) {
  ConfinementReport report;
  for (std::size_t i = 0; i < geom.masses.size(); ++i) {
    const double bound = std::sqrt(geom.reduced_mass / geom.masses[i]) * geom.hyperradius;
    const double r = geom.distances[i];
    report.bounds.push_back(bound);
    report.margins.push_back(bound - r);
    if (r > bound * (1.0 + 1e-12)) report.holds = false;
  }
  return report;
}

PairPotential::PairPotential(std::string name, std::function<double(double)> fn, Smoothness smoothness)
    : name_(std::move(name)), fn_(std::move(fn)), smoothness_(smoothness) {}

PairPotential PairPotential::inverse_power(double strength, double power) {
  return {"inverse_power", [strength, power](double r) { return -strength / std::pow(r, power); },
          Smoothness::twice_differentiable};
}

PairPotential PairPotential::lennard_jones(double epsilon, double sigma) {
  return {"lennard_jones",
          [epsilon, sigma](double r) {
            const double s6 = std::pow(sigma / r, 6);
            return 4.0 * epsilon * (s6 * s6 - s6);
          },
          Smoothness::twice_differentiable};
}

PairPotential PairPotential::screened_coulomb(double charge_product, double screening_length) {
  return {"screened_coulomb",
          [charge_product, screening_length](double r) { return charge_product * std::exp(-r / screening_length) / r; },
          Smoothness::twice_differentiable};
}

double PairPotential::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("potential " + name_ + " evaluated at r = 0 (coincident pair)");
  const double v = fn_(r);
  if (!std::isfinite(v)) throw DomainError("potential " + name_ + " is not finite at r = " + std::to_string(r));
  return v;
}

void PotentialTable::set(const std::string& a, const std::string& b, PairPotential potential) {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  pairs_.insert_or_assign(std::move(key), std::move(potential));
}

void PotentialTable::set_default(PairPotential potential) { fallback_ = std::move(potential); }

const PairPotential& PotentialTable::lookup(const std::string& a, const std::string& b) const {
  auto it = pairs_.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  if (it != pairs_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw ValidationError("no pair potential for labels '" + a + "' and '" + b + "'");
}

std::optional<Smoothness> PotentialTable::weakest_smoothness() const {
  std::optional<Smoothness> weakest;
  auto visit = [&](const PairPotential& p) {
    if (!weakest || p.smoothness() < *weakest) weakest = p.smoothness();
  };
  for (const auto& [key, p] : pairs_) visit(p);
  if (fallback_) visit(*fallback_);
  return weakest;
}

MassedConfiguration scaled(const MassedConfiguration& cfg, double s) {
  const Vec3 c = subsystem_geometry(cfg).center;
  auto particles = cfg.particles();
  for (std::size_t idx : cfg.subsystem()) particles[idx].position = c + s * (particles[idx].position - c);
  return MassedConfiguration(std::move(particles), cfg.subsystem());
}

MassedConfiguration translated(const MassedConfiguration& cfg, const Vec3& shift) {
  auto particles = cfg.particles();
  for (auto& p : particles) p.position += shift;
  return MassedConfiguration(std::move(particles), cfg.subsystem());
}

SeparabilityResidual separability_residual(const MassedConfiguration& cfg, const PotentialTable& potentials,
                                           double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("scale must be finite and non-negative");
  if (cfg.spectators().empty()) throw ValidationError("separability residual needs at least one spectator (N_sb < N)");
  const auto geom = subsystem_geometry(cfg);
  const auto& parts = cfg.particles();

  SeparabilityResidual out;
  out.scale = s;
  out.hyperradius = subsystem_geometry(scaled(cfg, s)).hyperradius;
  for (std::size_t j : cfg.spectators()) {
    const double r_cj = norm(parts[j].position - geom.center);
    if (!(r_cj > 0.0)) throw DomainError("spectator " + std::to_string(j) + " coincides with the subsystem center");
    for (std::size_t i : cfg.subsystem()) {
      const auto& v = potentials.lookup(parts[i].label, parts[j].label);
      const Vec3 ri = geom.center + s * (parts[i].position - geom.center);
      const double r_ij = norm(parts[j].position - ri);
      if (!(r_ij > 0.0))
        throw DomainError("coincident cross pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      out.coupled += v(r_ij);
      out.separated += v(r_cj);
    }
  }
  out.residual = std::abs(out.coupled - out.separated);
  return out;
}

std::vector<double> geometric_scales(int first_exponent, std::size_t count) {
  std::vector<double> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(std::ldexp(1.0, -(first_exponent + static_cast<int>(j))));
  return out;
}

std::optional<double> fit_log_log_slope(std::span<const SeparabilityResidual> rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows)
    if (row.residual > 0.0 && row.scale > 0.0) pts.emplace_back(std::log(row.scale), std::log(row.residual));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ScaleSweep scale_sweep(const MassedConfiguration& cfg, const PotentialTable& potentials,
                       std::span<const double> scales) {
  ScaleSweep sweep;
  for (double s : scales) sweep.rows.push_back(separability_residual(cfg, potentials, s));
  sweep.slope = fit_log_log_slope(sweep.rows);
  return sweep;
}

double spectator_mean_distance(const MassedConfiguration& cfg) {
  if (cfg.spectators().empty()) return 0.0;
  const Vec3 c = subsystem_geometry(cfg).center;
  double sum = 0.0;
  for (std::size_t j : cfg.spectators()) sum += norm(cfg.particles()[j].position - c);
  return sum / static_cast<double>(cfg.spectators().size());
}

MassedConfiguration random_configuration(std::mt19937_64& rng, const RandomConfigurationOptions& options) {
  if (options.subsystem < 2 || options.subsystem > options.particles)
    throw ValidationError("random configuration needs 2 <= subsystem <= particles");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mass(0.5, 5.0);
  std::uniform_real_distribution<double> shell(options.spectator_min, options.spectator_max);

  auto direction = [&] {
    for (;;) {
      Vec3 v{unit(rng), unit(rng), unit(rng)};
      const double n = norm(v);
      if (n > 1e-3 && n <= 1.0) return (1.0 / n) * v;
    }
  };
  auto in_ball = [&] {
    for (;;) {
      Vec3 v{unit(rng), unit(rng), unit(rng)};
      if (norm(v) <= 1.0) return options.subsystem_radius * v;
    }
  };

  const double common_mass = options.equal_mass ? mass(rng) : 0.0;
  std::vector<Particle> particles;
  std::vector<std::size_t> subsystem;
  for (std::size_t i = 0; i < options.particles; ++i) {
    Particle p;
    p.mass = options.equal_mass ? common_mass : mass(rng);
    if (i < options.subsystem) {
      p.position = in_ball();
      subsystem.push_back(i);
    } else {
      p.position = shell(rng) * direction();
    }
    particles.push_back(std::move(p));
  }
  return MassedConfiguration(std::move(particles), std::move(subsystem));
}

}  // namespace arrangekit
