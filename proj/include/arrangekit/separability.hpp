#pragma once

// Mass geometry of an N_sb-particle subsystem and the R -> 0 limit in which
// its interaction with the remaining particles stops depending on the
// subsystem's relative coordinates.
//
//   c   = sum m_i r_i / M               M = sum m_i
//   mu  = (prod m_i / M)^(1/(N_sb-1))   (N_sb-body reduced mass)
//   mu R^2 = sum m_i |r_i - c|^2        (hyperradius)
//
// All sums run over the subsystem. Each r_ci is confined by sqrt(mu/m_i) R.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrangekit/error.hpp"

namespace arrangekit {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double norm(const Vec3& v);

struct Particle {
  double mass = 1.0;
  Vec3 position;
  std::string label;  // selects pair potentials; may be empty
};

class MassedConfiguration {
 public:
  // Masses must be positive and finite; subsystem indices unique, in range,
  // and at least two of them.
  MassedConfiguration(std::vector<Particle> particles, std::vector<std::size_t> subsystem);

  const std::vector<Particle>& particles() const noexcept { return particles_; }
  const std::vector<std::size_t>& subsystem() const noexcept { return subsystem_; }
  // Indices outside the subsystem, ascending.
  const std::vector<std::size_t>& spectators() const noexcept { return spectators_; }

 private:
  std::vector<Particle> particles_;
  std::vector<std::size_t> subsystem_;
  std::vector<std::size_t> spectators_;
};

struct SubsystemGeometry {
  Vec3 center;
  double total_mass = 0.0;
  double reduced_mass = 0.0;
  double hyperradius = 0.0;
  std::vector<double> masses;     // subsystem order
  std::vector<double> distances;  // r_ci, subsystem order
};

SubsystemGeometry subsystem_geometry(const MassedConfiguration& cfg);

struct ConfinementReport {
  bool holds = true;
  std::vector<double> bounds;   // sqrt(mu/m_i) R
  std::vector<double> margins;  // bound - r_ci
};

// r_ci <= sqrt(mu/m_i) R for every i, with 1e-12 relative slack.
ConfinementReport confinement_check(const SubsystemGeometry& geom);

enum class Smoothness { continuous, once_differentiable, twice_differentiable };

// Central potential v(r) on r > 0.
class PairPotential {
 public:
  PairPotential(std::string name, std::function<double(double)> fn, Smoothness smoothness);

  // -C / r^k
  static PairPotential inverse_power(double strength, double power);
  // 4 eps [(sigma/r)^12 - (sigma/r)^6]
  static PairPotential lennard_jones(double epsilon, double sigma);
  // q exp(-r/lambda) / r
  static PairPotential screened_coulomb(double charge_product, double screening_length);

  const std::string& name() const noexcept { return name_; }
  Smoothness smoothness() const noexcept { return smoothness_; }
  // Same function with a caller-declared smoothness class.
  PairPotential with_smoothness(Smoothness smoothness) const { return {name_, fn_, smoothness}; }
  // Throws DomainError for r <= 0 or a non-finite result.
  double operator()(double r) const;

 private:
  std::string name_;
  std::function<double(double)> fn_;
  Smoothness smoothness_;
};

// Potentials keyed by an unordered pair of particle labels, with an optional
// fallback for pairs without an entry.
class PotentialTable {
 public:
  void set(const std::string& a, const std::string& b, PairPotential potential);
  void set_default(PairPotential potential);

  const PairPotential& lookup(const std::string& a, const std::string& b) const;
  // Weakest smoothness over the entries (and default).
  std::optional<Smoothness> weakest_smoothness() const;

 private:
  std::map<std::pair<std::string, std::string>, PairPotential> pairs_;
  std::optional<PairPotential> fallback_;
};

// Moves each subsystem particle to c + s (r_i - c); spectators stay put.
MassedConfiguration scaled(const MassedConfiguration& cfg, double s);
MassedConfiguration translated(const MassedConfiguration& cfg, const Vec3& shift);

struct SeparabilityResidual {
  double scale = 1.0;
  double hyperradius = 0.0;
  double coupled = 0.0;    // sum over spectators j, subsystem i of v_ij(r_ij)
  double separated = 0.0;  // same with r_ij replaced by r_cj
  double residual = 0.0;   // |coupled - separated|
};

// Evaluated on scaled(cfg, s). Needs 2 <= N_sb < N. Throws DomainError when a
// cross pair or a spectator coincides (distance 0).
SeparabilityResidual separability_residual(const MassedConfiguration& cfg, const PotentialTable& potentials,
                                           double s);

// s_j = 2^-(first + j), j = 0..count-1.
std::vector<double> geometric_scales(int first_exponent, std::size_t count);

// Least-squares slope of ln(residual) against ln(scale), ignoring rows whose
// residual is zero. nullopt with fewer than two usable rows.
std::optional<double> fit_log_log_slope(std::span<const SeparabilityResidual> rows);

struct ScaleSweep {
  std::vector<SeparabilityResidual> rows;
  std::optional<double> slope;
};

ScaleSweep scale_sweep(const MassedConfiguration& cfg, const PotentialTable& potentials,
                       std::span<const double> scales);

// Mean distance from c to the spectators. Diagnostic only.
double spectator_mean_distance(const MassedConfiguration& cfg);

struct RandomConfigurationOptions {
  std::size_t particles = 5;
  std::size_t subsystem = 3;
  bool equal_mass = false;
  double subsystem_radius = 1.0;
  double spectator_min = 3.0;
  double spectator_max = 6.0;
};

// Subsystem particles (indices 0..subsystem-1) within subsystem_radius of the
// origin, spectators in the shell [spectator_min, spectator_max], masses in
// [0.5, 5) unless equal_mass.
MassedConfiguration random_configuration(std::mt19937_64& rng, const RandomConfigurationOptions& options = {});

}  // namespace arrangekit
