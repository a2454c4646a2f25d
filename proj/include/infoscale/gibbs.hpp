#pragma once

#include <functional>
#include <vector>

#include "infoscale/divergences.hpp"
#include "infoscale/goal_oriented.hpp"

namespace infoscale {

using Offset = std::vector<int>;

/// One translation class of a translation-invariant interaction. Offsets are
/// sorted with the first at the origin; `table` holds the energy of every
/// spin configuration of the cluster, first offset most significant.
struct Cluster {
  std::vector<Offset> offsets;
  std::vector<double> table;
};

/// Translation-invariant interaction on Z^d with a finite single-spin state set.
/// Coefficients carry the inverse temperature.
class Interaction {
 public:
  explicit Interaction(int d, std::vector<double> spins = {-1.0, 1.0});

  static Interaction nearest_neighbor_ising(int d, double beta, double J, double h);

  /// Adds energy `table` on every translate of `offsets`. Clusters with equal
  /// offset sets after translation are merged.
  Interaction& add_cluster(std::vector<Offset> offsets, std::vector<double> table);
  /// coeff * prod of spins over the offsets.
  Interaction& add_product(std::vector<Offset> offsets, double coeff);
  /// Single-site term coeff * s.
  Interaction& add_field(double coeff);
  /// Single-site term with one value per spin state.
  Interaction& add_single_site(std::vector<double> values);

  int dimension() const noexcept { return d_; }
  const std::vector<double>& spins() const noexcept { return spins_; }
  const std::vector<Cluster>& clusters() const noexcept { return clusters_; }

  /// this - other on a common spin set and dimension.
  Interaction difference(const Interaction& other) const;
  Interaction scaled(double factor) const;

  /// sum over clusters X containing the origin of |X|^-1 sup |Phi_X|,
  /// i.e. the sum of sup |table| over translation classes.
  double triple_norm() const;

  std::size_t spin_index(double spin) const;

 private:
  int d_;
  std::vector<double> spins_;
  std::vector<Cluster> clusters_;
};

/// Box {0, ..., L-1}^d with free boundary conditions; sites are ordered
/// lexicographically with the first coordinate most significant.
struct LatticeVolume {
  int d = 1;
  int side = 1;

  LatticeVolume(int d, int side);
  /// Side 2n + 1, the symmetric box [-n, n]^d.
  static LatticeVolume from_half_width(int d, int n);

  std::size_t sites() const;
  std::vector<int> coordinates(std::size_t site) const;
};

/// Energy of a configuration given as one spin value per site.
double hamiltonian(const Interaction& phi, const LatticeVolume& volume, std::span<const double> sigma);

/// Log-partition function, mean and variance of a perturbing Hamiltonian.
struct PerturbationMoments {
  double log_partition = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

class GibbsMeasure {
 public:
  enum class Method { automatic, enumeration, transfer_matrix };
  static constexpr double kMaxConfigurations = 2e6;

  GibbsMeasure(Interaction phi, LatticeVolume volume, Method method = Method::automatic);

  const Interaction& interaction() const noexcept { return phi_; }
  const LatticeVolume& volume() const noexcept { return volume_; }
  Method method() const noexcept { return method_; }
  double log_partition() const noexcept { return log_z_; }

  /// Explicit law over configurations; enumeration only.
  DiscreteDistribution distribution() const;
  /// Configuration energies in enumeration order; enumeration only.
  const std::vector<double>& energies() const;

  /// log sum exp(-H - t H_pert) with mean and variance of H_pert under that law.
  PerturbationMoments moments(const Interaction& perturbation, double t = 0.0) const;

  /// Re-entrant curve t -> log sum exp(-H - t H_pert).
  std::function<double(double)> log_partition_curve(const Interaction& perturbation) const;

 private:
  Interaction phi_;
  LatticeVolume volume_;
  Method method_;
  double log_z_ = 0.0;
  std::vector<double> energies_;
};

/// Single-site interaction whose Hamiltonian is sum_x g(s_x); g has one value per spin state.
Interaction single_site_observable(const Interaction& like, std::span<const double> g);

/// R(mu_psi || mu_phi) = log Z_phi - log Z_psi + E_psi(H_phi - H_psi).
double gibbs_relative_entropy(const GibbsMeasure& psi, const GibbsMeasure& phi);

/// Per-site bounds on E_psi(f_N) - E_phi(f_N) with f_N = N^-1 sum_x g(s_x).
/// `g` has one value per spin state.
GoalBound finite_volume_xi(const GibbsMeasure& psi, const GibbsMeasure& phi, std::span<const double> g);

/// As finite_volume_xi with the relative entropy replaced by 2 N |||phi - psi|||.
GoalBound triple_norm_xi(const GibbsMeasure& phi, const Interaction& psi, std::span<const double> g);

/// sqrt(Var_phi(sum g) / N) sqrt(2 rho), with rho a per-site relative entropy
/// or its triple-norm surrogate 2 |||phi - psi|||.
double linearized_gibbs_bound(const GibbsMeasure& phi, double per_site_entropy, std::span<const double> g);

}  // namespace infoscale
