// Copyright 2026 The blochflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blochflow/cli/app.hpp"

#include <array>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blochflow/cli/commands.hpp"
#include "blochflow/cli/config.hpp"

namespace blochflow::cli {

namespace {

const std::vector<std::string> kGeneratorFlags = {"--alpha-r", "--alpha-i", "--beta-r", "--beta-i",
                                                  "--gamma-r", "--gamma-i", "--delta-r", "--delta-i"};

struct GeneratorFlags {
  std::array<std::optional<double>, 8> values;

  void add(CLI::App* app, const std::string& what) {
    for (std::size_t k = 0; k < 8; ++k)
      app->add_option(kGeneratorFlags[k], values[k], what + " entry " + kGeneratorFlags[k].substr(2));
  }
  void apply(Generatord& g) const {
    for (std::size_t k = 0; k < 8; ++k)
      if (values[k]) g[static_cast<GeneratorParameter>(k)] = *values[k];
  }
};

struct NoiseFlags {
  std::optional<std::string> target;
  std::optional<std::string> dist;
  std::optional<double> lo, hi, mean, sigma;

  void add(CLI::App* app) {
    app->add_option("--noise-target", target,
                    "Fluctuating parameter: alpha_r..delta_i or alpha_i-delta_i (split as +x/2, -x/2)");
    app->add_option("--noise-dist", dist, "Noise distribution")->check(CLI::IsMember({"flat", "gaussian"}));
    app->add_option("--noise-lo", lo, "Lower end of a flat noise law");
    app->add_option("--noise-hi", hi, "Upper end of a flat noise law");
    app->add_option("--noise-mean", mean, "Mean of a gaussian noise law");
    app->add_option("--noise-sigma", sigma, "Standard deviation of a gaussian noise law");
  }

  NoiseLaw apply(const NoiseLaw& preset) const {
    const NoiseTarget t = target ? parse_noise_target(*target) : preset.target;
    const bool preset_flat = std::holds_alternative<FlatLaw>(preset.distribution);
    const bool flat = dist ? *dist == "flat" : preset_flat;
    if (flat) {
      if (mean || sigma) throw ConfigError("--noise-mean/--noise-sigma need a gaussian noise law");
      FlatLaw base = preset_flat && !dist ? std::get<FlatLaw>(preset.distribution) : FlatLaw{-1, 1};
      return NoiseLaw::flat(t, lo.value_or(base.lo), hi.value_or(base.hi));
    }
    if (lo || hi) throw ConfigError("--noise-lo/--noise-hi need a flat noise law");
    GaussianLaw base = !preset_flat && !dist ? std::get<GaussianLaw>(preset.distribution) : GaussianLaw{0, 1};
    return NoiseLaw::gaussian(t, mean.value_or(base.mean), sigma.value_or(base.sigma));
  }
};

struct InitialFlags {
  std::vector<double> weights;
  std::vector<double> thetas;

  void add(CLI::App* app) {
    auto* w = app->add_option("--weights", weights, "Initial weights cos^2(theta0/2)")->delimiter(',');
    app->add_option("--thetas", thetas, "Initial polar angles in radians")->delimiter(',')->excludes(w);
  }
  void apply(std::vector<double>& out) const {
    if (!weights.empty()) out = thetas_from_weights(weights);
    if (!thetas.empty()) out = thetas;
  }
};

template <typename T>
void set_if(const std::optional<T>& v, T& target) {
  if (v) target = *v;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bloch-sphere collapse dynamics: flows, stochastic ensembles, a nonlinear model and envariance."};
  app.name("blochflow");
  app.require_subcommand(1);

  std::function<void()> action;

  // flow-field
  auto* ff = app.add_subcommand("flow-field", "Velocity field (theta_dot, phi_dot) on a Bloch-sphere grid");
  std::string ff_out, ff_preset = "fig3";
  GeneratorFlags ff_gen;
  std::optional<double> ff_lambda, ff_margin;
  std::optional<std::size_t> ff_nt, ff_np;
  ff->add_option("--out", ff_out, "Output CSV")->required();
  ff->add_option("--preset", ff_preset, "fig1 (sigma_y Rabi), fig3 (shifted fixed points), fig6 (nonlinear) or none");
  ff_gen.add(ff, "Generator");
  ff->add_option("--lambda", ff_lambda, "Use the nonlinear flow with this lambda");
  ff->add_option("--n-theta", ff_nt, "Theta grid points");
  ff->add_option("--n-phi", ff_np, "Phi grid points on [0, 2pi)");
  ff->add_option("--theta-margin", ff_margin, "Distance of the theta grid from the poles");
  ff->callback([&] {
    action = [&] {
      FlowFieldConfig c = flow_field_preset(parse_preset(ff_preset));
      c.out = ff_out;
      ff_gen.apply(c.generator);
      if (ff_lambda) c.lambda = ff_lambda;
      set_if(ff_nt, c.n_theta);
      set_if(ff_np, c.n_phi);
      set_if(ff_margin, c.theta_margin);
      run_flow_field(c);
    };
  });

  // trajectory
  auto* tj = app.add_subcommand("trajectory", "Stochastic trajectories theta(t), phi(t), weight0(t)");
  std::string tj_out, tj_preset = "fig4";
  std::optional<std::uint64_t> tj_seed;
  unsigned tj_threads = 1;
  GeneratorFlags tj_gen;
  NoiseFlags tj_noise;
  InitialFlags tj_init;
  std::optional<double> tj_dt, tj_dtheta;
  std::optional<std::size_t> tj_steps, tj_stride;
  tj->add_option("--out", tj_out, "Output CSV")->required();
  tj->add_option("--seed", tj_seed, "Master seed")->required();
  tj->add_option("--preset", tj_preset, "fig4 (gaussian alpha_i noise) or none");
  tj->add_option("--threads", tj_threads, "Worker threads; never changes results");
  tj_gen.add(tj, "Base generator");
  tj_noise.add(tj);
  tj_init.add(tj);
  tj->add_option("--dt", tj_dt, "Time step");
  tj->add_option("--steps", tj_steps, "Number of steps");
  tj->add_option("--delta-theta", tj_dtheta, "Stop once theta is this close to a pole");
  tj->add_option("--stride", tj_stride, "Record every k-th step (0: first and last only)");
  tj->callback([&] {
    action = [&] {
      TrajectoryConfig c = trajectory_preset(parse_preset(tj_preset));
      c.out = tj_out;
      c.seed = *tj_seed;
      c.threads = tj_threads;
      tj_gen.apply(c.base);
      c.noise = tj_noise.apply(c.noise);
      tj_init.apply(c.thetas);
      set_if(tj_dt, c.dt);
      set_if(tj_steps, c.steps);
      set_if(tj_stride, c.stride);
      if (tj_dtheta) c.delta_theta = tj_dtheta;
      run_trajectory(c);
    };
  });

  // ensemble
  auto* en = app.add_subcommand("ensemble", "Fuzzy-collapse outcome statistics against Born's rule and the splitting probability");
  std::string en_out, en_table, en_preset = "fig5";
  std::optional<std::uint64_t> en_seed;
  unsigned en_threads = 1;
  GeneratorFlags en_gen;
  NoiseFlags en_noise;
  InitialFlags en_init;
  std::optional<double> en_dt, en_dtheta;
  std::optional<std::size_t> en_steps, en_runs;
  en->add_option("--out", en_out, "Output JSON summary")->required();
  en->add_option("--table", en_table, "Output CSV table (default: --out with .csv)");
  en->add_option("--seed", en_seed, "Master seed")->required();
  en->add_option("--preset", en_preset, "fig5 (flat alpha_i-delta_i noise) or none");
  en->add_option("--threads", en_threads, "Worker threads; never changes results");
  en_gen.add(en, "Base generator");
  en_noise.add(en);
  en_init.add(en);
  en->add_option("--dt", en_dt, "Time step");
  en->add_option("--delta-theta", en_dtheta, "Fuzzy band around each pole");
  en->add_option("--max-steps", en_steps, "Step cap per run; capped runs count as unresolved");
  en->add_option("--runs", en_runs, "Runs per initial state");
  en->callback([&] {
    action = [&] {
      EnsembleCmdConfig c = ensemble_preset(parse_preset(en_preset));
      c.out = en_out;
      c.table = en_table;
      c.seed = *en_seed;
      c.threads = en_threads;
      en_gen.apply(c.base);
      c.noise = en_noise.apply(c.noise);
      en_init.apply(c.thetas);
      set_if(en_dt, c.dt);
      set_if(en_dtheta, c.delta_theta);
      set_if(en_steps, c.max_steps);
      set_if(en_runs, c.runs);
      run_ensemble(c);
    };
  });

  // nonlinear
  auto* nl = app.add_subcommand("nonlinear", "Outcome statistics of the nonlinear model theta' = sin(theta)(lambda - cos(theta))");
  std::string nl_out, nl_table, nl_preset = "fig6", nl_mode = "outcome";
  std::optional<std::uint64_t> nl_seed;
  unsigned nl_threads = 1;
  InitialFlags nl_init;
  std::optional<double> nl_lambda, nl_lo, nl_hi, nl_dt, nl_tol;
  std::optional<std::size_t> nl_draws, nl_steps;
  nl->add_option("--out", nl_out, "Output JSON summary")->required();
  nl->add_option("--table", nl_table, "Output CSV table (default: --out with .csv)");
  nl->add_option("--seed", nl_seed, "Master seed")->required();
  nl->add_option("--preset", nl_preset, "fig6 or none");
  nl->add_option("--threads", nl_threads, "Worker threads; never changes results");
  nl_init.add(nl);
  auto* nl_point = nl->add_option("--lambda", nl_lambda, "Fixed lambda instead of a flat law");
  nl->add_option("--lambda-lo", nl_lo, "Lower end of the flat lambda law")->excludes(nl_point);
  nl->add_option("--lambda-hi", nl_hi, "Upper end of the flat lambda law")->excludes(nl_point);
  nl->add_option("--draws", nl_draws, "Lambda draws per initial state");
  nl->add_option("--mode", nl_mode, "outcome, integrate or cross-check")
      ->check(CLI::IsMember({"outcome", "integrate", "cross-check"}));
  nl->add_option("--dt", nl_dt, "RK4 step");
  nl->add_option("--tol", nl_tol, "Pole capture distance");
  nl->add_option("--max-steps", nl_steps, "RK4 step cap");
  nl->callback([&] {
    action = [&] {
      NonlinearConfig c = nonlinear_preset(parse_preset(nl_preset));
      c.out = nl_out;
      c.table = nl_table;
      c.seed = *nl_seed;
      c.threads = nl_threads;
      nl_init.apply(c.thetas);
      if (nl_lambda)
        c.law = nonlinear::LambdaLaw::point(*nl_lambda);
      else if (nl_lo || nl_hi)
        c.law = nonlinear::LambdaLaw::flat(nl_lo.value_or(-1), nl_hi.value_or(1));
      set_if(nl_draws, c.draws);
      c.mode = nl_mode == "outcome" ? NonlinearMode::outcome
               : nl_mode == "integrate" ? NonlinearMode::integrate
                                        : NonlinearMode::cross_check;
      set_if(nl_dt, c.integration.dt);
      set_if(nl_tol, c.integration.tol);
      set_if(nl_steps, c.integration.max_steps);
      run_nonlinear(c);
    };
  });

  // envariance
  auto* ev = app.add_subcommand("envariance", "Swap checks and post-measurement density matrices for an n:m branch state");
  EnvarianceConfig ev_cfg;
  ev->add_option("--out", ev_cfg.out, "Output JSON report")->required();
  ev->add_option("--n", ev_cfg.n, "Branches carrying |0>");
  ev->add_option("--m", ev_cfg.m, "Branches carrying |1>");
  ev->callback([&] { action = [&] { run_envariance(ev_cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    action();
  } catch (const ConfigError& e) {
    err << "blochflow: configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "blochflow: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace blochflow::cli
