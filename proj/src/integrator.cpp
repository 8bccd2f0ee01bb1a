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

#include "blochflow/integrator.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace blochflow {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::string_view, 9> kNoiseTargetNames = {
    "alpha_r", "alpha_i", "beta_r", "beta_i", "gamma_r", "gamma_i", "delta_r", "delta_i", "alpha_i-delta_i"};

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::pointer0: return "pointer0";
    case Outcome::pointer1: return "pointer1";
    case Outcome::unresolved: return "unresolved";
    case Outcome::separatrix: return "separatrix";
  }
  return "unknown";
}

std::string_view to_string(NoiseTarget t) { return kNoiseTargetNames[static_cast<std::size_t>(t)]; }

NoiseTarget parse_noise_target(std::string_view name) {
  for (std::size_t i = 0; i < kNoiseTargetNames.size(); ++i)
    if (kNoiseTargetNames[i] == name) return static_cast<NoiseTarget>(i);
  if (name == "alpha_minus_delta_i") return NoiseTarget::alpha_minus_delta_i;
  throw ConfigError("unknown noise target '" + std::string(name) + "'");
}

NoiseLaw NoiseLaw::flat(NoiseTarget target, double lo, double hi) {
  NoiseLaw law;
  law.target = target;
  law.distribution = FlatLaw{lo, hi};
  law.validate();
  return law;
}

NoiseLaw NoiseLaw::gaussian(NoiseTarget target, double mean, double sigma) {
  NoiseLaw law;
  law.target = target;
  law.distribution = GaussianLaw{mean, sigma};
  law.validate();
  return law;
}

void NoiseLaw::validate() const {
  if (const auto* f = std::get_if<FlatLaw>(&distribution)) {
    if (!std::isfinite(f->lo) || !std::isfinite(f->hi) || f->hi < f->lo)
      throw ConfigError("flat noise needs finite lo <= hi");
  } else {
    const auto& g = std::get<GaussianLaw>(distribution);
    if (!std::isfinite(g.mean) || !std::isfinite(g.sigma) || g.sigma < 0)
      throw ConfigError("gaussian noise needs finite mean and sigma >= 0");
  }
}

bool NoiseLaw::biased() const {
  if (const auto* f = std::get_if<FlatLaw>(&distribution)) return f->lo != -f->hi;
  return std::get<GaussianLaw>(distribution).mean != 0;
}

Generatord NoiseLaw::apply(const Generatord& base, double value) const {
  Generatord g = base;
  if (target == NoiseTarget::alpha_minus_delta_i) {
    g.alpha_i += value / 2;
    g.delta_i -= value / 2;
  } else {
    g[static_cast<GeneratorParameter>(target)] += value;
  }
  return g;
}

std::string NoiseLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* f = std::get_if<FlatLaw>(&distribution)) {
    os << "flat(" << f->lo << ", " << f->hi << ")";
  } else {
    const auto& g = std::get<GaussianLaw>(distribution);
    os << "gaussian(" << g.mean << ", " << g.sigma << ")";
  }
  os << " on " << to_string(target);
  return os.str();
}

NoiseSampler::NoiseSampler(const NoiseLaw& law) : law_(law.distribution) {
  law.validate();
  if (const auto* f = std::get_if<FlatLaw>(&law_)) {
    if (f->hi > f->lo) uniform_ = std::uniform_real_distribution<double>(f->lo, f->hi);
  } else {
    const auto& g = std::get<GaussianLaw>(law_);
    if (g.sigma > 0) normal_ = std::normal_distribution<double>(g.mean, g.sigma);
  }
}

double NoiseSampler::operator()(RngStream& rng) {
  if (const auto* f = std::get_if<FlatLaw>(&law_)) return f->hi > f->lo ? uniform_(rng) : f->lo;
  const auto& g = std::get<GaussianLaw>(law_);
  return g.sigma > 0 ? normal_(rng) : g.mean;
}

void StopRule::validate() const {
  if (fuzzy_delta_theta) {
    const double d = *fuzzy_delta_theta;
    if (!(d > 0 && d < kPi / 2)) throw ConfigError("fuzzy delta_theta must lie in (0, pi/2)");
  }
  if (!fuzzy_delta_theta && !max_steps) throw ConfigError("stop rule needs a fuzzy band or max_steps");
}

BlochStated step(const BlochStated& s, const Generatord& g, double dt) {
  if (!(dt > 0)) throw ConfigError("step: dt must be positive");
  return bloch_from_amplitudes(exact_evolve(g, amplitudes_from_bloch(s), dt)).gauge_fixed();
}

Trajectory simulate(const BlochStated& s0, const NoiseLaw& noise, const Generatord& base, double dt,
                    const StopRule& stop, RngStream& rng, std::size_t record_stride) {
  if (!(dt > 0)) throw ConfigError("simulate: dt must be positive");
  stop.validate();
  NoiseSampler draw(noise);

  Trajectory tr;
  const BlochStated start = s0.gauge_fixed();
  auto record = [&](std::size_t k, const BlochStated& s) {
    tr.times.push_back(static_cast<double>(k) * dt);
    tr.samples.push_back(s);
  };
  record(0, start);

  // Work on unit-norm amplitudes; the global phase never feeds back into
  // theta or phi, so only the norm is reset each step.
  Amplitudes<double> psi = amplitudes_from_bloch(start);
  double theta = start.theta;
  std::size_t k = 0;
  for (;;) {
    if (stop.fuzzy_delta_theta) {
      if (theta <= *stop.fuzzy_delta_theta) {
        tr.outcome = Outcome::pointer0;
        break;
      }
      if (theta >= kPi - *stop.fuzzy_delta_theta) {
        tr.outcome = Outcome::pointer1;
        break;
      }
    }
    if (stop.max_steps && k >= *stop.max_steps) {
      tr.outcome = Outcome::unresolved;
      break;
    }
    psi = exact_evolve(noise.apply(base, draw(rng)), psi, dt);
    psi /= psi.norm();
    theta = 2 * std::atan2(std::abs(psi(1)), std::abs(psi(0)));
    ++k;
    if (record_stride > 0 && k % record_stride == 0) record(k, bloch_from_amplitudes(psi).gauge_fixed());
  }
  tr.steps = k;
  if (tr.times.back() != static_cast<double>(k) * dt)
    record(k, k == 0 ? start : bloch_from_amplitudes(psi).gauge_fixed());
  return tr;
}

void OutcomeCounts::add(Outcome o) {
  switch (o) {
    case Outcome::pointer0: ++pointer0; break;
    case Outcome::pointer1: ++pointer1; break;
    case Outcome::unresolved: ++unresolved; break;
    case Outcome::separatrix: ++separatrix; break;
  }
}

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& other) {
  pointer0 += other.pointer0;
  pointer1 += other.pointer1;
  unresolved += other.unresolved;
  separatrix += other.separatrix;
  return *this;
}

EnsembleResult ensemble(const EnsembleConfig& config, unsigned threads) {
  if (config.runs < 1) throw ConfigError("ensemble: runs must be >= 1");
  if (config.initial_states.empty()) throw ConfigError("ensemble: no initial states");
  if (!(config.dt > 0)) throw ConfigError("ensemble: dt must be positive");
  config.stop.validate();
  config.noise.validate();

  const std::size_t n_ic = config.initial_states.size();
  const std::size_t runs = config.runs;
  std::vector<Outcome> outcomes(n_ic * runs);
  std::vector<std::size_t> steps(n_ic * runs);

  parallel_for(n_ic * runs, threads, [&](std::size_t task) {
    const std::size_t ic = task / runs;
    const std::size_t run = task % runs;
    RngStream rng = make_stream(config.master_seed, ic, run);
    const Trajectory tr = simulate(config.initial_states[ic], config.noise, config.base, config.dt,
                                   config.stop, rng, 0);
    outcomes[task] = tr.outcome;
    steps[task] = tr.steps;
  });

  EnsembleResult result;
  result.config = config;
  result.biased_noise = config.noise.biased();
  result.counts.resize(n_ic);
  result.outcomes.resize(n_ic);
  result.mean_steps.resize(n_ic);
  for (std::size_t ic = 0; ic < n_ic; ++ic) {
    result.outcomes[ic].assign(outcomes.begin() + ic * runs, outcomes.begin() + (ic + 1) * runs);
    double total_steps = 0;
    for (std::size_t run = 0; run < runs; ++run) {
      result.counts[ic].add(outcomes[ic * runs + run]);
      total_steps += static_cast<double>(steps[ic * runs + run]);
    }
    result.mean_steps[ic] = total_steps / static_cast<double>(runs);
  }
  return result;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw ConfigError("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return grid;
}

FlowField flow_field(const Generatord& g, std::vector<double> theta_grid, std::vector<double> phi_grid) {
  FlowField field;
  field.theta_grid = std::move(theta_grid);
  field.phi_grid = std::move(phi_grid);
  field.samples.reserve(field.theta_grid.size() * field.phi_grid.size());
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (double theta : field.theta_grid) {
    for (double phi : field.phi_grid) {
      FlowSample sample{theta, phi, nan, nan, nan, false};
      if (theta <= kPoleTolerance || kPi - theta <= kPoleTolerance) {
        sample.pole = true;
      } else {
        const auto r = derivatives(BlochStated::canonical(theta, phi), g);
        sample.theta_dot = r.theta_dot;
        sample.phi_dot = r.phi_dot();
        sample.speed = std::hypot(r.theta_dot, std::sin(theta) * r.phi_dot());
      }
      field.samples.push_back(sample);
    }
  }
  return field;
}

std::optional<double> first_passage_time(const BlochStated& s0, double theta_target, const NoiseLaw& noise,
                                         const Generatord& base, double dt, std::size_t max_steps,
                                         RngStream& rng) {
  if (!(dt > 0)) throw ConfigError("first_passage_time: dt must be positive");
  NoiseSampler draw(noise);
  BlochStated s = s0.gauge_fixed();
  if (s.theta == theta_target) return 0.0;
  const bool from_below = s.theta < theta_target;
  for (std::size_t k = 1; k <= max_steps; ++k) {
    s = step(s, noise.apply(base, draw(rng)), dt);
    if (from_below ? s.theta >= theta_target : s.theta <= theta_target) return static_cast<double>(k) * dt;
  }
  return std::nullopt;
}

PassageStats passage_statistics(const BlochStated& from, double theta_to, const NoiseLaw& noise,
                                const Generatord& base, double dt, std::size_t max_steps, std::size_t runs,
                                std::uint64_t master_seed, std::uint64_t stream_group, unsigned threads) {
  if (runs < 2) throw ConfigError("passage_statistics: need at least two runs");
  std::vector<double> times(runs);
  std::vector<char> censored(runs, 0);
  const double cap = static_cast<double>(max_steps) * dt;
  parallel_for(runs, threads, [&](std::size_t run) {
    RngStream rng = make_stream(master_seed, stream_group, run);
    const auto t = first_passage_time(from, theta_to, noise, base, dt, max_steps, rng);
    times[run] = t.value_or(cap);
    censored[run] = t ? 0 : 1;
  });

  PassageStats stats;
  stats.runs = runs;
  double sum = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    sum += times[i];
    stats.censored += static_cast<std::size_t>(censored[i]);
  }
  stats.restricted_mean = sum / static_cast<double>(runs);
  double ss = 0;
  for (double t : times) ss += (t - stats.restricted_mean) * (t - stats.restricted_mean);
  stats.standard_error = std::sqrt(ss / static_cast<double>(runs - 1) / static_cast<double>(runs));
  return stats;
}

}  // namespace blochflow
