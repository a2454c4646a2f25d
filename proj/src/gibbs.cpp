#include "infoscale/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "infoscale/errors.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

bool same_space(const Interaction& a, const Interaction& b) {
  return a.dimension() == b.dimension() && a.spins() == b.spins();
}

// Site lists of every cluster translate that fits inside the box.
struct Placement {
  std::size_t cluster;
  std::vector<std::size_t> sites;
};

std::vector<Placement> placements(const Interaction& phi, const LatticeVolume& volume) {
  if (phi.dimension() != volume.d) {
    throw DimensionError("lattice: interaction and volume dimensions differ");
  }
  std::vector<Placement> out;
  const std::size_t n = volume.sites();
  for (std::size_t k = 0; k < phi.clusters().size(); ++k) {
    const Cluster& cl = phi.clusters()[k];
    for (std::size_t site = 0; site < n; ++site) {
      const std::vector<int> base = volume.coordinates(site);
      Placement pl{k, {}};
      bool inside = true;
      for (const Offset& off : cl.offsets) {
        std::size_t index = 0;
        for (int i = 0; i < volume.d; ++i) {
          const int x = base[static_cast<std::size_t>(i)] + off[static_cast<std::size_t>(i)];
          if (x < 0 || x >= volume.side) {
            inside = false;
            break;
          }
          index = index * static_cast<std::size_t>(volume.side) + static_cast<std::size_t>(x);
        }
        if (!inside) break;
        pl.sites.push_back(index);
      }
      if (inside) out.push_back(std::move(pl));
    }
  }
  return out;
}

double energy_of(const Interaction& phi, const std::vector<Placement>& pls, const std::vector<std::size_t>& spins) {
  const std::size_t s = phi.spins().size();
  double e = 0.0;
  for (const Placement& pl : pls) {
    std::size_t code = 0;
    for (std::size_t site : pl.sites) code = code * s + spins[site];
    e += phi.clusters()[pl.cluster].table[code];
  }
  return e;
}

// Energies of every configuration, site 0 most significant.
std::vector<double> enumerate_energies(const Interaction& phi, const LatticeVolume& volume) {
  const std::size_t n = volume.sites();
  const std::size_t s = phi.spins().size();
  const double count = std::pow(static_cast<double>(s), static_cast<double>(n));
  if (count > GibbsMeasure::kMaxConfigurations) {
    throw StructureError("gibbs: " + std::to_string(count) + " configurations exceed the enumeration cap of 2e6");
  }
  const auto pls = placements(phi, volume);
  const std::size_t total = static_cast<std::size_t>(count);
  std::vector<double> out(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t c = 0; c < total; ++c) {
    out[c] = energy_of(phi, pls, digits);
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < s) break;
      digits[i] = 0;
    }
  }
  return out;
}

bool transfer_eligible(const Interaction& phi) {
  if (phi.dimension() != 1) return false;
  for (const Cluster& cl : phi.clusters()) {
    if (cl.offsets.size() > 2) return false;
    if (cl.offsets.size() == 2 && cl.offsets[1][0] != 1) return false;
  }
  return true;
}

// Single-site and nearest-neighbour energies of a chain interaction.
struct ChainTerms {
  std::vector<double> site;  // u(s)
  std::vector<double> bond;  // w(s, s') at s * |S| + s'
};

ChainTerms chain_terms(const Interaction& phi) {
  const std::size_t s = phi.spins().size();
  ChainTerms t{std::vector<double>(s, 0.0), std::vector<double>(s * s, 0.0)};
  for (const Cluster& cl : phi.clusters()) {
    auto& target = cl.offsets.size() == 1 ? t.site : t.bond;
    for (std::size_t i = 0; i < cl.table.size(); ++i) target[i] += cl.table[i];
  }
  return t;
}

PerturbationMoments transfer_moments(const ChainTerms& base, const ChainTerms& pert, std::size_t s,
                                     std::size_t sites, double t) {
  std::vector<double> v(s), dv(s), ddv(s);
  double log_scale = 0.0;

  double lowest = kInf;
  for (std::size_t a = 0; a < s; ++a) lowest = std::min(lowest, base.site[a] + t * pert.site[a]);
  for (std::size_t a = 0; a < s; ++a) {
    const double w = std::exp(-(base.site[a] + t * pert.site[a] - lowest));
    v[a] = w;
    dv[a] = -pert.site[a] * w;
    ddv[a] = pert.site[a] * pert.site[a] * w;
  }
  log_scale -= lowest;

  std::vector<double> k(s * s), dk(s * s);
  lowest = kInf;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      const double e = base.bond[a * s + b] + base.site[b] + t * (pert.bond[a * s + b] + pert.site[b]);
      lowest = std::min(lowest, e);
    }
  }
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      const double e = base.bond[a * s + b] + base.site[b] + t * (pert.bond[a * s + b] + pert.site[b]);
      k[a * s + b] = std::exp(-(e - lowest));
      dk[a * s + b] = pert.bond[a * s + b] + pert.site[b];
    }
  }

  std::vector<double> nv(s), ndv(s), nddv(s);
  for (std::size_t step = 1; step < sites; ++step) {
    for (std::size_t b = 0; b < s; ++b) {
      double x = 0.0, dx = 0.0, ddx = 0.0;
      for (std::size_t a = 0; a < s; ++a) {
        const double kk = k[a * s + b];
        const double d = dk[a * s + b];
        x += v[a] * kk;
        dx += (dv[a] - d * v[a]) * kk;
        ddx += (ddv[a] - 2.0 * d * dv[a] + d * d * v[a]) * kk;
      }
      nv[b] = x;
      ndv[b] = dx;
      nddv[b] = ddx;
    }
    const double total = std::accumulate(nv.begin(), nv.end(), 0.0);
    for (std::size_t b = 0; b < s; ++b) {
      v[b] = nv[b] / total;
      dv[b] = ndv[b] / total;
      ddv[b] = nddv[b] / total;
    }
    log_scale += std::log(total) - lowest;
  }
  const double z = std::accumulate(v.begin(), v.end(), 0.0);
  const double dz = std::accumulate(dv.begin(), dv.end(), 0.0) / z;
  const double ddz = std::accumulate(ddv.begin(), ddv.end(), 0.0) / z;
  return {log_scale + std::log(z), -dz, std::max(0.0, ddz - dz * dz)};
}

PerturbationMoments enumerated_moments(const std::vector<double>& energies, const std::vector<double>& pert,
                                       double t) {
  double lowest = kInf;
  for (std::size_t i = 0; i < energies.size(); ++i) lowest = std::min(lowest, energies[i] + t * pert[i]);
  double z = 0.0, first = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double w = std::exp(-(energies[i] + t * pert[i] - lowest));
    z += w;
    first += w * pert[i];
  }
  const double mean = first / z;
  double second = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double w = std::exp(-(energies[i] + t * pert[i] - lowest));
    const double d = pert[i] - mean;
    second += w * d * d;
  }
  return {std::log(z) - lowest, mean, second / z};
}

}  // namespace

Interaction::Interaction(int d, std::vector<double> spins) : d_(d), spins_(std::move(spins)) {
  if (d_ < 1) throw ParameterError("interaction: dimension must be at least 1");
  if (spins_.empty()) throw ParameterError("interaction: empty spin set");
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (!std::isfinite(spins_[i])) throw ParameterError("interaction: spin values must be finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (spins_[i] == spins_[j]) throw ParameterError("interaction: spin values must be distinct");
    }
  }
}

Interaction Interaction::nearest_neighbor_ising(int d, double beta, double J, double h) {
  Interaction phi(d);
  for (int axis = 0; axis < d; ++axis) {
    Offset unit(static_cast<std::size_t>(d), 0);
    unit[static_cast<std::size_t>(axis)] = 1;
    phi.add_product({Offset(static_cast<std::size_t>(d), 0), unit}, -beta * J);
  }
  phi.add_field(-beta * h);
  return phi;
}

Interaction& Interaction::add_cluster(std::vector<Offset> offsets, std::vector<double> table) {
  const std::size_t k = offsets.size();
  const std::size_t s = spins_.size();
  if (k == 0) throw ParameterError("interaction: cluster without sites");
  for (const Offset& off : offsets) {
    if (off.size() != static_cast<std::size_t>(d_)) {
      throw DimensionError("interaction: offset has " + std::to_string(off.size()) + " coordinates, expected " +
                           std::to_string(d_));
    }
  }
  if (table.size() != int_pow(s, k)) {
    throw DimensionError("interaction: coupling table needs |S|^|X| = " + std::to_string(int_pow(s, k)) +
                         " entries, got " + std::to_string(table.size()));
  }
  for (double v : table) {
    if (!std::isfinite(v)) throw ParameterError("interaction: coupling values must be finite");
  }

  // Sort the offsets and translate the smallest to the origin, permuting the table to match.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return offsets[a] < offsets[b]; });
  for (std::size_t i = 1; i < k; ++i) {
    if (offsets[order[i]] == offsets[order[i - 1]]) throw ParameterError("interaction: repeated offset in a cluster");
  }
  const Offset origin = offsets[order[0]];
  std::vector<Offset> sorted(k);
  for (std::size_t i = 0; i < k; ++i) {
    sorted[i] = offsets[order[i]];
    for (int j = 0; j < d_; ++j) sorted[i][static_cast<std::size_t>(j)] -= origin[static_cast<std::size_t>(j)];
  }
  std::vector<double> permuted(table.size());
  std::vector<std::size_t> digits(k);
  for (std::size_t code = 0; code < table.size(); ++code) {
    std::size_t rest = code;
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = rest % s;
      rest /= s;
    }
    // digits[i] is the spin at sorted position i, which was position order[i] originally.
    std::vector<std::size_t> old_digits(k);
    for (std::size_t i = 0; i < k; ++i) old_digits[order[i]] = digits[i];
    std::size_t old_code = 0;
    for (std::size_t i = 0; i < k; ++i) old_code = old_code * s + old_digits[i];
    permuted[code] = table[old_code];
  }

  for (Cluster& cl : clusters_) {
    if (cl.offsets == sorted) {
      for (std::size_t i = 0; i < permuted.size(); ++i) cl.table[i] += permuted[i];
      return *this;
    }
  }
  clusters_.push_back({std::move(sorted), std::move(permuted)});
  return *this;
}

Interaction& Interaction::add_product(std::vector<Offset> offsets, double coeff) {
  const std::size_t k = offsets.size();
  const std::size_t s = spins_.size();
  std::vector<double> table(int_pow(s, k));
  for (std::size_t code = 0; code < table.size(); ++code) {
    std::size_t rest = code;
    double prod = coeff;
    for (std::size_t i = 0; i < k; ++i) {
      prod *= spins_[rest % s];
      rest /= s;
    }
    table[code] = prod;
  }
  return add_cluster(std::move(offsets), std::move(table));
}

Interaction& Interaction::add_field(double coeff) {
  std::vector<double> table(spins_.size());
  for (std::size_t i = 0; i < spins_.size(); ++i) table[i] = coeff * spins_[i];
  return add_cluster({Offset(static_cast<std::size_t>(d_), 0)}, std::move(table));
}

Interaction& Interaction::add_single_site(std::vector<double> values) {
  return add_cluster({Offset(static_cast<std::size_t>(d_), 0)}, std::move(values));
}

Interaction Interaction::difference(const Interaction& other) const {
  if (!same_space(*this, other)) {
    throw DimensionError("interaction difference: dimension or spin set differs");
  }
  Interaction out = *this;
  for (const Cluster& cl : other.clusters_) {
    std::vector<double> negated = cl.table;
    for (double& v : negated) v = -v;
    out.add_cluster(cl.offsets, std::move(negated));
  }
  return out;
}

Interaction Interaction::scaled(double factor) const {
  Interaction out = *this;
  for (Cluster& cl : out.clusters_) {
    for (double& v : cl.table) v *= factor;
  }
  return out;
}

double Interaction::triple_norm() const {
  double total = 0.0;
  for (const Cluster& cl : clusters_) {
    double sup = 0.0;
    for (double v : cl.table) sup = std::max(sup, std::abs(v));
    total += sup;
  }
  return total;
}

std::size_t Interaction::spin_index(double spin) const {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] == spin) return i;
  }
  throw ParameterError("interaction: " + std::to_string(spin) + " is not a spin value");
}

LatticeVolume::LatticeVolume(int d_, int side_) : d(d_), side(side_) {
  if (d < 1 || side < 1) throw ParameterError("lattice: dimension and side must be positive");
}

LatticeVolume LatticeVolume::from_half_width(int d, int n) {
  if (n < 0) throw ParameterError("lattice: half width must be nonnegative");
  return LatticeVolume(d, 2 * n + 1);
}

std::size_t LatticeVolume::sites() const {
  return int_pow(static_cast<std::size_t>(side), static_cast<std::size_t>(d));
}

std::vector<int> LatticeVolume::coordinates(std::size_t site) const {
  std::vector<int> x(static_cast<std::size_t>(d));
  for (int i = d; i-- > 0;) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(site % static_cast<std::size_t>(side));
    site /= static_cast<std::size_t>(side);
  }
  return x;
}

double hamiltonian(const Interaction& phi, const LatticeVolume& volume, std::span<const double> sigma) {
  if (sigma.size() != volume.sites()) {
    throw DimensionError("hamiltonian: configuration has " + std::to_string(sigma.size()) + " sites, expected " +
                         std::to_string(volume.sites()));
  }
  std::vector<std::size_t> spins(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) spins[i] = phi.spin_index(sigma[i]);
  return energy_of(phi, placements(phi, volume), spins);
}

GibbsMeasure::GibbsMeasure(Interaction phi, LatticeVolume volume, Method method)
    : phi_(std::move(phi)), volume_(volume), method_(method) {
  if (phi_.dimension() != volume_.d) throw DimensionError("gibbs: interaction and volume dimensions differ");
  if (method_ == Method::automatic) {
    method_ = transfer_eligible(phi_) ? Method::transfer_matrix : Method::enumeration;
  }
  if (method_ == Method::transfer_matrix) {
    if (!transfer_eligible(phi_)) {
      throw StructureError("gibbs: transfer matrix needs a one-dimensional nearest-neighbour interaction");
    }
    log_z_ = moments(Interaction(phi_.dimension(), phi_.spins())).log_partition;
  } else {
    energies_ = enumerate_energies(phi_, volume_);
    double lowest = kInf;
    for (double e : energies_) lowest = std::min(lowest, e);
    double z = 0.0;
    for (double e : energies_) z += std::exp(-(e - lowest));
    log_z_ = std::log(z) - lowest;
  }
}

DiscreteDistribution GibbsMeasure::distribution() const {
  std::vector<double> w(energies().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-energies_[i] - log_z_);
  return DiscreteDistribution(std::move(w), Normalize::yes);
}

const std::vector<double>& GibbsMeasure::energies() const {
  if (method_ != Method::enumeration) throw StructureError("gibbs: configurations are not enumerated");
  return energies_;
}

PerturbationMoments GibbsMeasure::moments(const Interaction& perturbation, double t) const {
  if (!same_space(phi_, perturbation)) throw DimensionError("gibbs: perturbation lives on a different spin space");
  if (method_ == Method::transfer_matrix) {
    if (!transfer_eligible(perturbation)) {
      throw StructureError("gibbs: perturbation is not nearest-neighbour in one dimension");
    }
    return transfer_moments(chain_terms(phi_), chain_terms(perturbation), phi_.spins().size(), volume_.sites(), t);
  }
  return enumerated_moments(energies_, enumerate_energies(perturbation, volume_), t);
}

std::function<double(double)> GibbsMeasure::log_partition_curve(const Interaction& perturbation) const {
  if (!same_space(phi_, perturbation)) throw DimensionError("gibbs: perturbation lives on a different spin space");
  if (method_ == Method::transfer_matrix) {
    if (!transfer_eligible(perturbation)) {
      throw StructureError("gibbs: perturbation is not nearest-neighbour in one dimension");
    }
    auto base = std::make_shared<const ChainTerms>(chain_terms(phi_));
    auto pert = std::make_shared<const ChainTerms>(chain_terms(perturbation));
    const std::size_t s = phi_.spins().size();
    const std::size_t n = volume_.sites();
    return [base, pert, s, n](double t) { return transfer_moments(*base, *pert, s, n, t).log_partition; };
  }
  auto base = std::make_shared<const std::vector<double>>(energies_);
  auto pert = std::make_shared<const std::vector<double>>(enumerate_energies(perturbation, volume_));
  return [base, pert](double t) {
    double lowest = kInf;
    for (std::size_t i = 0; i < base->size(); ++i) lowest = std::min(lowest, (*base)[i] + t * (*pert)[i]);
    double z = 0.0;
    for (std::size_t i = 0; i < base->size(); ++i) z += std::exp(-((*base)[i] + t * (*pert)[i] - lowest));
    return std::log(z) - lowest;
  };
}

Interaction single_site_observable(const Interaction& like, std::span<const double> g) {
  if (g.size() != like.spins().size()) {
    throw DimensionError("gibbs observable: need one value per spin state");
  }
  Interaction out(like.dimension(), like.spins());
  out.add_single_site(std::vector<double>(g.begin(), g.end()));
  return out;
}

double gibbs_relative_entropy(const GibbsMeasure& psi, const GibbsMeasure& phi) {
  if (psi.volume().d != phi.volume().d || psi.volume().side != phi.volume().side) {
    throw DimensionError("gibbs relative entropy: volumes differ");
  }
  const Interaction delta = phi.interaction().difference(psi.interaction());
  const double mean = psi.moments(delta).mean;
  return std::max(0.0, phi.log_partition() - psi.log_partition() + mean);
}

namespace {

GoalBound gibbs_xi(const GibbsMeasure& phi, double relative_entropy_value, std::span<const double> g) {
  const Interaction gamma = single_site_observable(phi.interaction(), g);
  const double n = static_cast<double>(phi.volume().sites());
  const bool constant = std::all_of(g.begin(), g.end(), [&](double v) { return v == g[0]; });
  const PerturbationMoments m = phi.moments(gamma);
  const auto curve = phi.log_partition_curve(gamma);
  const double log_z = phi.log_partition();
  const double mean = m.mean;
  // Tilting by exp(c sum g) is the perturbation with t = -c.
  const CgfSource source = CgfSource::symmetric(
      [curve, log_z, mean](double c) { return std::max(0.0, curve(-c) - log_z - c * mean); }, kInf,
      constant ? 0.0 : m.variance);
  return xi_bounds(source, relative_entropy_value).scaled(1.0 / n);
}

}  // namespace

GoalBound finite_volume_xi(const GibbsMeasure& psi, const GibbsMeasure& phi, std::span<const double> g) {
  return gibbs_xi(phi, gibbs_relative_entropy(psi, phi), g);
}

GoalBound triple_norm_xi(const GibbsMeasure& phi, const Interaction& psi, std::span<const double> g) {
  const double n = static_cast<double>(phi.volume().sites());
  return gibbs_xi(phi, 2.0 * n * phi.interaction().difference(psi).triple_norm(), g);
}

double linearized_gibbs_bound(const GibbsMeasure& phi, double per_site_entropy, std::span<const double> g) {
  if (per_site_entropy < 0.0) throw ParameterError("linearized gibbs bound: entropy must be nonnegative");
  const double n = static_cast<double>(phi.volume().sites());
  const double var = phi.moments(single_site_observable(phi.interaction(), g)).variance;
  return std::sqrt(var / n) * std::sqrt(2.0 * per_site_entropy);
}

}  // namespace infoscale
