#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoscale/divergences.hpp"
#include "infoscale/errors.hpp"
#include "infoscale/gibbs.hpp"
#include "infoscale/goal_oriented.hpp"
#include "infoscale/json_io.hpp"
#include "infoscale/logging.hpp"
#include "infoscale/markov.hpp"
#include "infoscale/sweep.hpp"

namespace {

using nlohmann::json;
using namespace infoscale;

struct GlobalOptions {
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
  bool strict = false;
};

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ParseError(g.out + ": cannot open output file for writing");
  f << text;
  if (!f) throw Error(g.out + ": write failed");
}

void emit_json(const GlobalOptions& g, const json& doc) { emit(g, doc.dump(2) + "\n"); }

json report_json(const DivergenceReport& r) {
  json j;
  j["tv"] = r.tv ? json(*r.tv) : json(nullptr);
  j["hellinger"] = r.hellinger;
  j["kl"] = r.kl;
  j["renyi"] = r.renyi;
  j["renyi_alpha"] = r.renyi_alpha;
  j["chi2"] = finite_or_null(r.chi2);
  j["log1p_chi2"] = r.log1p_chi2;
  return j;
}

json bound_json(const GoalBound& b) {
  return {{"xi_plus", b.xi_plus},           {"xi_minus", b.xi_minus},
          {"c_star_plus", b.c_star_plus},   {"c_star_minus", b.c_star_minus},
          {"linearized", b.linearized_half_width}};
}

int run_phase(const GlobalOptions& g, SweepConfig config) {
  config.jobs = g.jobs;
  const SweepResult result = run_study(config);
  emit(g, format_rows(result.rows, g.format == "json" ? OutputFormat::json : OutputFormat::csv));
  if (result.failed_rows > 0) {
    logger()->warn("{} of {} grid points produced nan rows", result.failed_rows, result.rows.size());
    if (g.strict) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-theoretic UQ bounds for distributions, Markov chains and lattice models"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Sweep output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "Fail when a sweep row could not be computed");

  // divergence
  auto* div = app.add_subcommand("divergence", "Divergences between two distributions");
  std::string div_p, div_q, div_f;
  double div_alpha = 0.5;
  int div_iid = 0;
  div->add_option("--p", div_p, "Baseline distribution P (JSON)")->required();
  div->add_option("--q", div_q, "Alternative distribution Q (JSON)")->required();
  div->add_option("--alpha", div_alpha, "Renyi order");
  div->add_option("--observable", div_f, "Observable f (JSON) for the classical bounds");
  div->add_option("--iid", div_iid, "Also report divergences of the N-fold products")->check(CLI::PositiveNumber);

  // goal-bound
  auto* goal = app.add_subcommand("goal-bound", "Goal-oriented bounds on E_Q f - E_P f");
  std::string goal_p, goal_q, goal_f;
  goal->add_option("--p", goal_p, "Baseline distribution P (JSON)")->required();
  goal->add_option("--q", goal_q, "Alternative distribution Q (JSON)")->required();
  goal->add_option("--observable", goal_f, "Observable f (JSON)")->required();

  // markov
  auto* mk = app.add_subcommand("markov", "Rate bounds for stationary Markov chains");
  std::string mk_p, mk_q, mk_g;
  bool mk_cheap = false;
  int mk_enum = 0;
  double mk_alpha = 0.5;
  mk->add_option("--p", mk_p, "Baseline chain (JSON)")->required();
  mk->add_option("--q", mk_q, "Alternative chain (JSON)")->required();
  mk->add_option("--observable", mk_g, "Observable g (JSON)")->required();
  mk->add_option("--alpha", mk_alpha, "Renyi order for the Renyi rate");
  mk->add_flag("--cheap", mk_cheap, "Also report the supremum-based surrogate bounds");
  mk->add_option("--enumerate", mk_enum, "Compare with exact path enumeration over N steps")
      ->check(CLI::PositiveNumber);

  // gibbs
  auto* gb = app.add_subcommand("gibbs", "Finite-volume bounds for lattice Gibbs measures");
  std::string gb_phi, gb_psi, gb_obs = "spin";
  int gb_n = 1;
  int gb_side = 0;
  gb->add_option("--phi", gb_phi, "Baseline interaction (JSON)")->required();
  gb->add_option("--psi", gb_psi, "Alternative interaction (JSON)")->required();
  gb->add_option("--n", gb_n, "Half width: the box has side 2n+1")->check(CLI::NonNegativeNumber);
  gb->add_option("--side", gb_side, "Box side, overrides --n")->check(CLI::PositiveNumber);
  gb->add_option("--observable", gb_obs, "'spin' or a JSON file with one value per spin state");

  // phase
  auto* ph = app.add_subcommand("phase", "Phase-diagram bound sweep between two exact models");
  std::string ph_target, ph_baseline, ph_sweep = "beta";
  SweepGrid ph_grid{0.1, 2.0, 0.01};
  bool ph_from = false;
  ph->add_option("--target", ph_target, "Target model Q (JSON)")->required();
  ph->add_option("--baseline", ph_baseline, "Baseline model P (JSON)")->required();
  ph->add_option("--sweep", ph_sweep, "Swept parameter")->check(CLI::IsMember({"beta", "h"}));
  auto* from_opt = ph->add_option("--from", ph_grid.from, "First grid value");
  ph->add_option("--to", ph_grid.to, "Last grid value");
  ph->add_option("--step", ph_grid.step, "Grid spacing");

  // figure
  auto* fig = app.add_subcommand("figure", "Reproduce a phase-diagram figure preset");
  std::string fig_name;
  fig->add_option("name", fig_name, "Preset name (2a 2b 3a 3b 4a 4b 5a 5b)");
  fig->add_option("--figure", fig_name, "Preset name");

  // Global flags may also follow the subcommand.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  ph_from = from_opt->count() > 0;

  try {
    if (div->parsed()) {
      const auto p = load_distribution(div_p);
      const auto q = load_distribution(div_q);
      json doc = report_json(divergence_report(q, p, div_alpha));
      doc["chain_holds"] = divergence_report(q, p, div_alpha).chain_holds();
      if (!div_f.empty()) {
        const auto f = load_observable(div_f);
        const ClassicalBounds b = classical_qoi_bounds(p, q, f, div_alpha <= 1.0 ? std::optional(div_alpha) : std::nullopt);
        doc["gap"] = expectation(q, f) - expectation(p, f);
        doc["classical"] = {{"ckp", b.ckp},
                            {"pinsker", b.pinsker},
                            {"pinsker_alpha", b.alpha},
                            {"scheffe", b.scheffe},
                            {"chapman_robbins", b.chapman_robbins},
                            {"le_cam", b.le_cam},
                            {"hellinger_improved", b.hellinger_improved}};
      }
      if (div_iid > 0) {
        json iid = report_json(iid_scaled_divergences(p, q, div_iid, div_alpha));
        iid["n"] = div_iid;
        doc["iid"] = iid;
      }
      emit_json(g, doc);
      return 0;
    }
    if (goal->parsed()) {
      const auto p = load_distribution(goal_p);
      const auto q = load_distribution(goal_q);
      const auto f = load_observable(goal_f);
      const double r = relative_entropy(q, p);
      json doc = bound_json(xi_bounds(CgfSource::empirical(p, f), r));
      doc["gap"] = expectation(q, f) - expectation(p, f);
      doc["relative_entropy"] = r;
      emit_json(g, doc);
      return 0;
    }
    if (mk->parsed()) {
      const auto p = load_chain(mk_p);
      const auto q = load_chain(mk_q);
      const auto obs = load_observable(mk_g);
      const RateBound b = xi_rate_bounds(q, p, obs);
      const auto mu_p = stationary_distribution(p);
      const auto mu_q = stationary_distribution(q);
      json doc{{"rer", b.rer},
               {"renyi_rate", renyi_rate(q, p, mk_alpha)},
               {"renyi_alpha", mk_alpha},
               {"chi2_rate", chi2_rate(q, p)},
               {"xi_plus_rate", b.xi_plus_rate},
               {"xi_minus_rate", b.xi_minus_rate},
               {"c_star_plus", b.c_star_plus},
               {"c_star_minus", b.c_star_minus},
               {"iact", finite_or_null(b.iact)},
               {"linearized", b.linearized_half_width},
               {"gap", expectation(mu_q, obs) - expectation(mu_p, obs)},
               {"stationary_p", std::vector<double>(mu_p.weights().begin(), mu_p.weights().end())},
               {"stationary_q", std::vector<double>(mu_q.weights().begin(), mu_q.weights().end())}};
      if (mk_cheap) {
        const CheapRateBounds c = cheap_rate_bounds(q, p, obs);
        doc["cheap"] = {{"sup_row_re", c.sup_row_re},
                        {"sup_log_ratio", c.sup_log_ratio},
                        {"with_sup_row_re", bound_json(c.with_sup_row_re)},
                        {"with_sup_log_ratio", bound_json(c.with_sup_log_ratio)},
                        {"linearized_sup_row_re", c.linearized_sup_row_re},
                        {"linearized_sup_log_ratio", c.linearized_sup_log_ratio}};
      }
      if (mk_enum > 0) {
        const PathMeasures paths = enumerate_paths(q, p, mu_q, mu_p, obs, mk_enum);
        const double n = static_cast<double>(mk_enum);
        const double r = relative_entropy(paths.q, paths.p);
        const GoalBound pb = xi_bounds(CgfSource::empirical(paths.p, paths.additive), r).scaled(1.0 / n);
        doc["enumeration"] = {{"steps", mk_enum},
                              {"kl_per_step", r / n},
                              {"xi_plus_per_step", pb.xi_plus},
                              {"xi_minus_per_step", pb.xi_minus}};
      }
      emit_json(g, doc);
      return 0;
    }
    if (gb->parsed()) {
      const Interaction phi_i = load_interaction(gb_phi);
      const Interaction psi_i = load_interaction(gb_psi);
      const LatticeVolume vol =
          gb_side > 0 ? LatticeVolume(phi_i.dimension(), gb_side) : LatticeVolume::from_half_width(phi_i.dimension(), gb_n);
      std::vector<double> obs = phi_i.spins();
      if (gb_obs != "spin") {
        const Observable o = load_observable(gb_obs);
        obs.assign(o.values().begin(), o.values().end());
      }
      const GibbsMeasure phi(phi_i, vol);
      const GibbsMeasure psi(psi_i, vol);
      const double n = static_cast<double>(vol.sites());
      const double r = gibbs_relative_entropy(psi, phi);
      const double norm = phi_i.difference(psi_i).triple_norm();
      const GoalBound fb = finite_volume_xi(psi, phi, obs);
      const GoalBound tb = triple_norm_xi(phi, psi_i, obs);
      const Interaction gamma = single_site_observable(phi_i, obs);
      const double gap = (psi.moments(gamma).mean - phi.moments(gamma).mean) / n;
      json doc{{"sites", vol.sites()},
               {"method", phi.method() == GibbsMeasure::Method::transfer_matrix ? "transfer_matrix" : "enumeration"},
               {"relative_entropy", r},
               {"relative_entropy_per_site", r / n},
               {"triple_norm_difference", norm},
               {"xi", bound_json(fb)},
               {"triple_norm_xi", bound_json(tb)},
               {"linearized", linearized_gibbs_bound(phi, r / n, obs)},
               {"linearized_triple_norm", linearized_gibbs_bound(phi, 2.0 * norm, obs)},
               {"gap", gap}};
      emit_json(g, doc);
      return 0;
    }
    if (ph->parsed()) {
      SweepConfig c;
      c.name = "phase";
      c.target = load_model(ph_target);
      c.baseline = load_model(ph_baseline);
      c.variable = ph_sweep == "h" ? SweepVariable::h : SweepVariable::beta;
      if (c.variable == SweepVariable::h && !ph_from) ph_grid = SweepGrid{-1.5, 1.5, ph_grid.step};
      c.grid = ph_grid;
      return run_phase(g, c);
    }
    if (fig->parsed()) {
      if (fig_name.empty()) throw ParameterError("figure: a preset name is required");
      return run_phase(g, figure_preset(fig_name));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
