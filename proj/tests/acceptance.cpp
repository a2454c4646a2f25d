// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "infoscale/divergences.hpp"
#include "infoscale/exact_models.hpp"
#include "infoscale/gibbs.hpp"
#include "infoscale/goal_oriented.hpp"
#include "infoscale/markov.hpp"
#include "infoscale/sweep.hpp"
#include "oracles.hpp"

using namespace infoscale;

namespace {

// Counts failed checks and keeps the first few messages.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    return std::to_string(checks_ - failures_) + "/" + std::to_string(checks_) + " checks" +
           (notes_.empty() ? "" : " [" + notes_ + "]");
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

oracle::Vec weights(const DiscreteDistribution& d) { return {d.weights().begin(), d.weights().end()}; }

TransitionMatrix random_chain(std::mt19937_64& rng, std::size_t n, double floor) {
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < n; ++x) rows.push_back(oracle::random_simplex(rng, n, floor));
  return TransitionMatrix(rows);
}

Interaction random_interaction(std::mt19937_64& rng, int d) {
  Interaction phi(d);
  for (int axis = 0; axis < d; ++axis) {
    Offset unit(static_cast<std::size_t>(d), 0);
    unit[static_cast<std::size_t>(axis)] = 1;
    phi.add_cluster({Offset(static_cast<std::size_t>(d), 0), unit}, oracle::random_values(rng, 4, 1.0));
  }
  phi.add_single_site(oracle::random_values(rng, 2, 1.0));
  return phi;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------------------

void iid_scaling(Tally& t) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const int copies = 1 + (trial / 3) % 4;
    const auto pw = oracle::random_simplex(rng, n), qw = oracle::random_simplex(rng, n);
    const DivergenceReport r = iid_scaled_divergences(DiscreteDistribution(pw), DiscreteDistribution(qw), copies, 0.5);
    const auto pn = oracle::product(pw, copies), qn = oracle::product(qw, copies);
    const std::string tag = "pair " + std::to_string(trial);
    t.check(close(r.kl, oracle::kl(qn, pn), 1e-10), tag + " kl");
    t.check(close(r.renyi, oracle::renyi(qn, pn, 0.5), 1e-10), tag + " renyi");
    t.check(close(r.chi2, oracle::chi2(qn, pn), 1e-10), tag + " chi2 " + fmt(r.chi2 - oracle::chi2(qn, pn)));
    t.check(close(r.hellinger, oracle::hellinger(qn, pn), 1e-10), tag + " hellinger");
  }
}

void classical_bounds(Tally& t) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto pw = oracle::random_simplex(rng, n, 0.01), qw = oracle::random_simplex(rng, n, 0.01);
    const auto fv = oracle::random_values(rng, n);
    const double gap = std::abs(oracle::mean(qw, fv) - oracle::mean(pw, fv));
    const DiscreteDistribution p(pw), q(qw);
    const Observable f(fv);
    const ClassicalBounds b = classical_qoi_bounds(p, q, f, 0.1 + 0.1 * (trial % 10));
    const std::string tag = "triple " + std::to_string(trial);
    t.check(b.ckp >= gap, tag + " ckp");
    t.check(b.pinsker >= gap, tag + " pinsker");
    t.check(b.scheffe >= gap, tag + " scheffe");
    // Equality holds on two-point supports, so allow rounding there.
    t.check(b.chapman_robbins >= gap * (1.0 - 1e-12), tag + " chapman-robbins " + fmt(gap - b.chapman_robbins));
    t.check(b.le_cam >= gap, tag + " le cam");
    t.check(b.hellinger_improved >= gap, tag + " hellinger");
    t.check(b.hellinger_improved <= hellinger_unshifted_bound(p, q, f), tag + " hellinger vs unshifted");
  }
}

void goal_oriented(Tally& t) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto pw = oracle::random_simplex(rng, n), qw = oracle::random_simplex(rng, n);
    const auto fv = oracle::random_values(rng, n);
    const GoalBound b = xi_bounds(CgfSource::empirical(DiscreteDistribution(pw), Observable(fv)), oracle::kl(qw, pw));
    const double gap = oracle::mean(qw, fv) - oracle::mean(pw, fv);
    t.check(b.xi_minus <= gap + 1e-12 && gap <= b.xi_plus + 1e-12, "sandwich " + std::to_string(trial));
  }
  // Per-site bounds from the explicit product space: every N for binary
  // supports, N <= 3 for supports up to 4.
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto pw = oracle::random_simplex(rng, n), qw = oracle::random_simplex(rng, n);
    const auto gv = oracle::random_values(rng, n);
    const GoalBound single = xi_tensorized(DiscreteDistribution(pw), DiscreteDistribution(qw), Observable(gv), 1);
    for (int copies : {1, 2, 3, 5, 10}) {
      if (copies > 3 && n > 2) continue;
      const GoalBound api = xi_tensorized(DiscreteDistribution(pw), DiscreteDistribution(qw), Observable(gv), copies);
      const auto pn = oracle::product(pw, copies), qn = oracle::product(qw, copies);
      const GoalBound brute = xi_bounds(CgfSource::empirical(DiscreteDistribution(pn, Normalize::yes),
                                                             Observable(oracle::product_sum(gv, copies))),
                                        oracle::kl(qn, pn))
                                  .scaled(1.0 / copies);
      const std::string tag = "N=" + std::to_string(copies) + " trial " + std::to_string(trial);
      t.check(close(api.xi_plus, single.xi_plus, 1e-8) && close(api.xi_minus, single.xi_minus, 1e-8), tag + " api");
      t.check(close(brute.xi_plus, single.xi_plus, 1e-8) && close(brute.xi_minus, single.xi_minus, 1e-8),
              tag + " brute " + fmt(brute.xi_plus - single.xi_plus));
    }
  }
}

void markov_rates(Tally& t) {
  std::mt19937_64 rng(104);
  double worst_kl = 0.0, worst_renyi = 0.0, worst_iact = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const TransitionMatrix q = random_chain(rng, n, 0.2), p = random_chain(rng, n, 0.2);
    const auto gv = oracle::random_values(rng, n);
    const Observable g(gv);
    const DiscreteDistribution start = DiscreteDistribution::uniform(n);
    const double r = relative_entropy_rate(q, p), d_half = renyi_rate(q, p, 0.5);
    double prev_kl = INFINITY, prev_renyi = INFINITY;
    const std::string tag = "pair " + std::to_string(trial);
    for (int steps : {8, 10, 12}) {
      const PathMeasures m = enumerate_paths(q, p, start, start, g, steps);
      const auto lq = weights(m.q), lp = weights(m.p);
      const double gap_kl = std::abs(oracle::kl(lq, lp) / steps - r);
      const double gap_renyi = std::abs(oracle::renyi(lq, lp, 0.5) / steps - d_half);
      t.check(gap_kl < prev_kl && gap_renyi < prev_renyi, tag + " gap not decreasing at N=" + std::to_string(steps));
      prev_kl = gap_kl;
      prev_renyi = gap_renyi;
    }
    worst_kl = std::max(worst_kl, prev_kl);
    worst_renyi = std::max(worst_renyi, prev_renyi);
    t.check(prev_kl < 2e-2, tag + " kl gap " + fmt(prev_kl));
    t.check(prev_renyi < 2e-2, tag + " renyi gap " + fmt(prev_renyi));

    const RateBound b = xi_rate_bounds(q, p, g);
    const double gap = oracle::mean(weights(stationary_distribution(q)), gv) - oracle::mean(weights(stationary_distribution(p)), gv);
    t.check(b.xi_minus_rate <= gap + 1e-10 && gap <= b.xi_plus_rate + 1e-10, tag + " sandwich");
    const double h = 1e-4;
    const double fd = (lambda_pg(p, g, h) - 2.0 * lambda_pg(p, g, 0.0) + lambda_pg(p, g, -h)) / (h * h);
    const double iact = integrated_autocorrelation(p, g);
    worst_iact = std::max(worst_iact, std::abs(fd - iact));
    t.check(std::abs(fd - iact) < 1e-5, tag + " iact " + fmt(fd - iact));
  }
  t.note("max gaps at N=12: kl " + fmt(worst_kl) + ", renyi " + fmt(worst_renyi) + "; max iact fd error " + fmt(worst_iact));
}

void cheap_bounds(Tally& t) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const double floor = trial % 2 ? 0.0 : 0.2;
    const TransitionMatrix q = random_chain(rng, n, floor), p = random_chain(rng, n, floor);
    const CheapRateBounds c = cheap_rate_bounds(q, p, Observable(oracle::random_values(rng, n)));
    const std::string tag = "pair " + std::to_string(trial);
    t.check(c.rer <= c.sup_row_re + 1e-14 && c.sup_row_re <= c.sup_log_ratio + 1e-14, tag + " ordering");
    t.check(c.with_rer.xi_plus <= c.with_sup_row_re.xi_plus + 1e-12 &&
                c.with_sup_row_re.xi_plus <= c.with_sup_log_ratio.xi_plus + 1e-12 &&
                c.with_rer.xi_minus >= c.with_sup_row_re.xi_minus - 1e-12 &&
                c.with_sup_row_re.xi_minus >= c.with_sup_log_ratio.xi_minus - 1e-12,
            tag + " nesting");
  }
}

void gibbs_layer(Tally& t) {
  for (int d : {1, 2, 3}) {
    const double beta = 0.75, J = -1.5, h = 0.25;
    t.check(Interaction::nearest_neighbor_ising(d, beta, J, h).triple_norm() == beta * (d * std::abs(J) + std::abs(h)),
            "triple norm d=" + std::to_string(d));
  }
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = trial % 2 ? 2 : 1;
    const LatticeVolume vol = d == 2 ? LatticeVolume(2, 3) : LatticeVolume(1, 2 + (trial / 2) % 9);
    const double n = static_cast<double>(vol.sites());
    const Interaction a = random_interaction(rng, d), b = random_interaction(rng, d);
    const GibbsMeasure psi(a, vol), phi(b, vol);
    const double norm = b.difference(a).triple_norm();
    const double re = gibbs_relative_entropy(psi, phi);
    const std::string tag = "pair " + std::to_string(trial);
    t.check(re / n <= 2.0 * norm + 1e-12, tag + " entropy");
    t.check(std::abs(phi.log_partition() - psi.log_partition()) <= n * norm + 1e-12, tag + " log Z");

    // Exact sample-mean gap by enumeration.
    const GibbsMeasure psi_e(a, vol, GibbsMeasure::Method::enumeration), phi_e(b, vol, GibbsMeasure::Method::enumeration);
    const std::vector<double> g = oracle::random_values(rng, 2);
    const std::size_t sites = vol.sites();
    oracle::Vec fn(std::size_t{1} << sites);
    for (std::size_t code = 0; code < fn.size(); ++code) {
      double s = 0.0;
      for (std::size_t i = 0; i < sites; ++i) s += g[(code >> (sites - 1 - i)) & 1u];
      fn[code] = s / n;
    }
    const double gap = oracle::mean(weights(psi_e.distribution()), fn) - oracle::mean(weights(phi_e.distribution()), fn);
    const GoalBound fv = finite_volume_xi(psi, phi, g);
    t.check(fv.xi_minus <= gap + 1e-12 && gap <= fv.xi_plus + 1e-12, tag + " sandwich");
  }
}

void exact_identities(Tally& t) {
  for (const Ising1DParams p : {Ising1DParams{0.5, 1.0, 0.3}, Ising1DParams{1.3, 0.7, -0.8}, Ising1DParams{2.0, 1.0, 0.05},
                                Ising1DParams{0.2, 1.0, 0.0}}) {
    const Ising1DQuantities q = ising1d_quantities(p);
    const double bj = p.beta * p.J, bh = p.beta * p.h, e = 1e-5, e2 = 1e-4;
    const double m = (ising1d_pressure(bj, bh + e) - ising1d_pressure(bj, bh - e)) / (2 * e);
    const double c = (ising1d_pressure(bj + e, bh) - ising1d_pressure(bj - e, bh)) / (2 * e);
    const double v = (ising1d_pressure(bj, bh + e2) - 2 * ising1d_pressure(bj, bh) + ising1d_pressure(bj, bh - e2)) / (e2 * e2);
    t.check(std::abs(m - q.magnetization) < 1e-6, "1-D magnetization " + fmt(m - q.magnetization));
    t.check(std::abs(c - q.nn_correlation) < 1e-6, "1-D correlation " + fmt(c - q.nn_correlation));
    t.check(std::abs(v - q.variance_per_site) < 1e-6 * std::max(1.0, q.variance_per_site), "1-D variance " + fmt(v - q.variance_per_site));
  }
  for (double beta : {1e-6, 1e-7}) {
    t.check(std::abs(ising2d_quantities({beta, 1.0}).pressure - std::log(2.0)) < 1e-9, "Onsager small beta");
  }
  const double bc = ising2d_critical_beta(1.0);
  t.check(std::abs(bc - 0.5 * std::log(1.0 + std::sqrt(2.0))) < 1e-15, "critical beta");
  t.check(ising2d_quantities({bc - 1e-3, 1.0}).spontaneous_magnetization == 0.0, "M0 below critical");
  t.check(ising2d_quantities({bc + 1e-3, 1.0}).spontaneous_magnetization > 0.0, "M0 above critical");
  t.check(meanfield_solve({0.5 - 1e-3, 1.0, 0.0, 2}).m == 0.0, "mean field below 1/2");
  t.check(meanfield_solve({0.5, 1.0, 0.0, 2}).m == 0.0, "mean field at 1/2");
  t.check(meanfield_solve({0.5 + 1e-3, 1.0, 0.0, 2}).m > 0.0, "mean field above 1/2");
}

void cross_model_rates(Tally& t) {
  const MeanFieldParams mf_pairs[][2] = {{{1.0, 1.0, 0.2, 1}, {0.5, 1.0, -0.1, 1}},
                                         {{1.6, 1.0, 0.0, 1}, {1.0, 1.0, 0.0, 1}},
                                         {{0.7, 2.0, 0.4, 2}, {1.3, 1.0, 0.0, 2, Branch::negative}}};
  for (const auto& pr : mf_pairs) {
    auto law = [](const MeanFieldParams& p) {
      const double x = p.beta * meanfield_solve(p).h_mf;
      return oracle::Vec{std::exp(-x) / (2 * std::cosh(x)), std::exp(x) / (2 * std::cosh(x))};
    };
    const double rate = cross_model_re_rate(pr[0], pr[1]);
    for (int n : {1, 3, 6}) {
      const double kl = oracle::kl(oracle::product(law(pr[0]), n), oracle::product(law(pr[1]), n)) / n;
      t.check(std::abs(rate - kl) < 1e-12, "mf-mf N=" + std::to_string(n) + " " + fmt(rate - kl));
    }
  }
  const Ising1DParams q{0.8, 1.0, 0.3}, p{0.5, 1.0, 0.0};
  const double rate = cross_model_re_rate(q, p);
  double prev = INFINITY;
  for (int n : {8, 10, 12}) {
    const LatticeVolume vol(1, n);
    const GibbsMeasure mq(Interaction::nearest_neighbor_ising(1, q.beta, q.J, q.h), vol, GibbsMeasure::Method::enumeration);
    const GibbsMeasure mp(Interaction::nearest_neighbor_ising(1, p.beta, p.J, p.h), vol, GibbsMeasure::Method::enumeration);
    const double per_site = oracle::kl(weights(mq.distribution()), weights(mp.distribution())) / n;
    const double gap = std::abs(per_site - rate);
    t.check(gap < prev, "chain pair trend at N=" + std::to_string(n));
    prev = gap;
  }
  t.check(prev < 5e-2, "chain pair gap " + fmt(prev));
  t.note("chain pair gap at N=12: " + fmt(prev));
  for (double beta = 0.1; beta <= 3.0 + 1e-9; beta += 0.1) {
    for (double h = -2.0; h <= 2.0 + 1e-9; h += 0.25) {
      t.check(cross_model_re_rate(MeanFieldParams{beta, 1.0, h, 1}, MeanFieldParams{1.0, 1.0, 0.3, 1}) >= 0.0, "mf-mf");
      t.check(cross_model_re_rate(MeanFieldParams{1.0, 1.0, -0.3, 2}, MeanFieldParams{beta, 1.0, h, 2}) >= 0.0, "mf-mf");
      t.check(cross_model_re_rate(Ising1DParams{beta, 1.0, h}, MeanFieldParams{1.0, 1.0, 0.3, 1}) >= 0.0, "ising1d-mf");
      t.check(cross_model_re_rate(Ising1DParams{0.7, 1.0, -0.5}, MeanFieldParams{beta, 1.0, h, 1}) >= 0.0, "ising1d-mf");
      t.check(cross_model_re_rate(Ising1DParams{beta, 1.0, h}, Ising1DParams{1.0, 1.0, 0.6}) >= 0.0, "ising1d-ising1d");
      t.check(cross_model_re_rate(Ising1DParams{1.0, 1.0, 0.6}, Ising1DParams{beta, 1.0, h}) >= 0.0, "ising1d-ising1d");
      for (Branch b : {Branch::positive, Branch::negative}) {
        t.check(cross_model_re_rate(Ising2DParams{beta, 1.0, b}, MeanFieldParams{1.0, 1.0, h, 2, b}) >= 0.0, "ising2d-mf");
      }
    }
  }
}

void phase_diagrams(Tally& t) {
  std::vector<PhaseRow> upper4, lower4;
  for (const std::string& name : figure_names()) {
    SweepConfig c = figure_preset(name);
    c.jobs = 4;
    const SweepResult r = run_study(c);
    t.check(r.failed_rows == 0, name + " has " + std::to_string(r.failed_rows) + " nan rows");
    std::size_t outside = 0, lin_violations = 0;
    for (const PhaseRow& row : r.rows) {
      if (!(row.xi_lower <= row.true_qoi + 1e-12 && row.true_qoi <= row.xi_upper + 1e-12)) ++outside;
      if (row.true_qoi < row.lin_lower || row.true_qoi > row.lin_upper) ++lin_violations;
    }
    t.check(outside == 0, name + ": " + std::to_string(outside) + " rows outside the bounds");
    if (lin_violations > 0) t.note(name + " linearized misses " + std::to_string(lin_violations) + "/" + std::to_string(r.rows.size()));
    if (name == "4a") upper4 = r.rows;
    if (name == "4b") lower4 = r.rows;
  }
  bool negated = upper4.size() == lower4.size() && !upper4.empty();
  for (std::size_t i = 0; negated && i < upper4.size(); ++i) {
    const PhaseRow &a = upper4[i], &b = lower4[i];
    negated = b.param == a.param && b.baseline_qoi == -a.baseline_qoi && b.true_qoi == -a.true_qoi &&
              b.xi_lower == -a.xi_upper && b.xi_upper == -a.xi_lower && b.lin_lower == -a.lin_upper &&
              b.lin_upper == -a.lin_lower && b.re_rate == a.re_rate;
  }
  t.check(negated, "4b is not the negation of 4a");
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void cli_determinism(Tally& t) {
  const std::string cli = INFOSCALE_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / ("infoscale_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto run = [&](int jobs, const std::string& file) {
    const std::string out = (dir / file).string();
    const std::string cmd = "\"" + cli + "\" figure 5b --jobs " + std::to_string(jobs) + " --out \"" + out + "\"";
    t.check(std::system(cmd.c_str()) == 0, "command failed: " + cmd);
    return read_all(out);
  };
  const std::string one = run(1, "j1.csv");
  const std::string eight = run(8, "j8.csv");
  const std::string again = run(8, "j8b.csv");
  t.check(!one.empty() && one.rfind(csv_header(), 0) == 0, "missing CSV header");
  t.check(one == eight, "jobs 1 and jobs 8 differ");
  t.check(eight == again, "repeated runs differ");
  t.note(std::to_string(one.size()) + " bytes");
  std::filesystem::remove_all(dir);
}

struct Criterion {
  const char* id;
  const char* name;
  double limit_seconds;
  std::function<void(Tally&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "IID scaling of product divergences", 10.0, iid_scaling},
      {"AC2", "classical bound validity", 5.0, classical_bounds},
      {"AC3", "goal-oriented sandwich and tensorization", 30.0, goal_oriented},
      {"AC4", "Markov rates, sandwich and autocorrelation", 60.0, markov_rates},
      {"AC5", "cheap-bound ordering and nesting", 5.0, cheap_bounds},
      {"AC6", "Gibbs layer", 60.0, gibbs_layer},
      {"AC7", "exact-model identities", 10.0, exact_identities},
      {"AC8", "cross-model relative entropy rates", 60.0, cross_model_rates},
      {"AC9", "phase-diagram sandwich and branch symmetry", 120.0, phase_diagrams},
      {"AC10", "CLI determinism for preset 5b", 120.0, cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally);
    } catch (const std::exception& e) {
      tally.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    if (!in_time) tally.note("runtime over " + fmt(c.limit_seconds) + " s");
    const bool pass = tally.ok() && in_time;
    failed += pass ? 0 : 1;
    std::printf("%-4s %s  %s (%.2f s) %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs, tally.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
