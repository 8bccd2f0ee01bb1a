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

#include "blochflow/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace blochflow::nonlinear {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kCdfCells = 4096;

double rate(double theta, double lambda) { return std::sin(theta) * (lambda - std::cos(theta)); }

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
}

}  // namespace

Rates derivatives(double theta, double lambda) { return {rate(theta, lambda), 0.0}; }

Outcome outcome(double theta0, double lambda, double tol) {
  if (!(theta0 >= 0 && theta0 <= kPi)) throw DomainError("outcome: theta0 outside [0, pi]");
  if (theta0 == 0) return Outcome::pointer0;
  if (theta0 == kPi) return Outcome::pointer1;
  const double diff = std::cos(theta0) - lambda;
  if (std::abs(diff) <= tol) return Outcome::separatrix;
  return diff > 0 ? Outcome::pointer0 : Outcome::pointer1;
}

LambdaLaw LambdaLaw::flat(double lo, double hi) {
  if (!(lo >= -1 && hi <= 1 && lo < hi)) throw ConfigError("flat lambda law needs -1 <= lo < hi <= 1");
  LambdaLaw law;
  law.kind_ = Kind::flat;
  law.lo_ = lo;
  law.hi_ = hi;
  return law;
}

LambdaLaw LambdaLaw::point(double value) {
  if (!(value >= -1 && value <= 1)) throw ConfigError("point lambda law needs a value in [-1, 1]");
  LambdaLaw law;
  law.kind_ = Kind::point;
  law.lo_ = law.hi_ = value;
  return law;
}

LambdaLaw LambdaLaw::density(std::function<double(double)> f) {
  if (!f) throw ConfigError("density lambda law needs a function");
  auto cdf = std::make_shared<std::vector<double>>(kCdfCells + 1, 0.0);
  const double h = 2.0 / kCdfCells;
  for (std::size_t i = 0; i < kCdfCells; ++i) {
    const double a = -1 + h * static_cast<double>(i);
    for (double x : {a, a + h / 2}) {
      const double v = f(x);
      if (!std::isfinite(v) || v < 0) throw ConfigError("lambda density must be finite and non-negative");
    }
    (*cdf)[i + 1] = (*cdf)[i] + boost::math::quadrature::gauss<double, 15>::integrate(f, a, a + h);
  }
  const double total = integrate(f, -1, 1);
  if (std::abs(total - 1) > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda density integrates to " << total << ", not 1";
    throw ConfigError(os.str());
  }
  for (double& c : *cdf) c /= cdf->back();

  LambdaLaw law;
  law.kind_ = Kind::density;
  law.f_ = std::move(f);
  law.cdf_ = std::move(cdf);
  return law;
}

double LambdaLaw::mass_below(double c) const {
  switch (kind_) {
    case Kind::flat:
      return std::clamp((c - lo_) / (hi_ - lo_), 0.0, 1.0);
    case Kind::point:
      if (std::abs(c - lo_) <= kSeparatrixTolerance) return 0.5;
      return c > lo_ ? 1.0 : 0.0;
    case Kind::density:
      return std::clamp(integrate(f_, -1, std::min(c, 1.0)), 0.0, 1.0);
  }
  return 0;
}

double LambdaLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::flat:
      return std::uniform_real_distribution<double>(lo_, hi_)(rng);
    case Kind::point:
      return lo_;
    case Kind::density: {
      const double u = std::uniform_real_distribution<double>(0, 1)(rng);
      const auto& cdf = *cdf_;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const auto i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cdf.begin() - 1, 0, kCdfCells - 1));
      const double span = cdf[i + 1] - cdf[i];
      const double frac = span > 0 ? (u - cdf[i]) / span : 0.5;
      return -1 + 2.0 * (static_cast<double>(i) + frac) / kCdfCells;
    }
  }
  return 0;
}

std::string LambdaLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::flat: os << "flat(" << lo_ << ", " << hi_ << ")"; break;
    case Kind::point: os << "point(" << lo_ << ")"; break;
    case Kind::density: os << "density"; break;
  }
  return os.str();
}

double born_probability(double theta0, const LambdaLaw& law) {
  if (!(theta0 >= 0 && theta0 <= kPi)) throw DomainError("born_probability: theta0 outside [0, pi]");
  return law.mass_below(std::cos(theta0));
}

NlTrajectory simulate(double theta0, double lambda, const NlIntegration& opts, double phi0) {
  if (!(opts.dt > 0)) throw ConfigError("nonlinear simulate: dt must be positive");
  if (!(opts.tol > 0)) throw ConfigError("nonlinear simulate: tol must be positive");
  if (!(theta0 >= 0 && theta0 <= kPi)) throw DomainError("nonlinear simulate: theta0 outside [0, pi]");
  if (!(lambda >= -1 && lambda <= 1)) throw DomainError("nonlinear simulate: lambda outside [-1, 1]");

  NlTrajectory tr;
  tr.phi = phi0;
  const double dt = opts.dt;
  double theta = theta0;
  tr.times.push_back(0);
  tr.thetas.push_back(theta);

  std::size_t k = 0;
  for (;;) {
    if (theta < opts.tol) {
      tr.outcome = Outcome::pointer0;
      break;
    }
    if (kPi - theta < opts.tol) {
      tr.outcome = Outcome::pointer1;
      break;
    }
    if (k >= opts.max_steps) {
      tr.outcome = Outcome::unresolved;
      break;
    }
    const double k1 = rate(theta, lambda);
    const double k2 = rate(theta + dt / 2 * k1, lambda);
    const double k3 = rate(theta + dt / 2 * k2, lambda);
    const double k4 = rate(theta + dt * k3, lambda);
    theta += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    ++k;
    if (opts.record_stride > 0 && k % opts.record_stride == 0) {
      tr.times.push_back(static_cast<double>(k) * dt);
      tr.thetas.push_back(theta);
    }
  }
  tr.steps = k;
  if (tr.times.back() != static_cast<double>(k) * dt) {
    tr.times.push_back(static_cast<double>(k) * dt);
    tr.thetas.push_back(theta);
  }
  return tr;
}

StudyResult study(const StudyConfig& config, unsigned threads) {
  if (config.draws < 1) throw ConfigError("nonlinear study: draws must be >= 1");
  if (config.thetas.empty()) throw ConfigError("nonlinear study: no initial states");
  for (double t : config.thetas)
    if (!(t >= 0 && t <= kPi)) throw ConfigError("nonlinear study: theta0 outside [0, pi]");

  const std::size_t draws = config.draws;
  std::vector<Outcome> outcomes(config.thetas.size() * draws);
  std::vector<double> lambdas(outcomes.size());
  parallel_for(outcomes.size(), threads, [&](std::size_t task) {
    const std::size_t i = task / draws;
    RngStream rng = make_stream(config.master_seed, i, task % draws);
    const double lambda = config.law.sample(rng);
    lambdas[task] = lambda;
    outcomes[task] = config.mode == StudyMode::outcome
                         ? outcome(config.thetas[i], lambda)
                         : simulate(config.thetas[i], lambda, config.integration).outcome;
  });

  StudyResult result;
  result.config = config;
  result.counts.resize(config.thetas.size());
  result.lambdas.resize(config.thetas.size());
  result.outcomes.resize(config.thetas.size());
  for (std::size_t i = 0; i < config.thetas.size(); ++i) {
    const auto first = static_cast<std::ptrdiff_t>(i * draws);
    const auto last = static_cast<std::ptrdiff_t>((i + 1) * draws);
    result.lambdas[i].assign(lambdas.begin() + first, lambdas.begin() + last);
    result.outcomes[i].assign(outcomes.begin() + first, outcomes.begin() + last);
    for (Outcome o : result.outcomes[i]) result.counts[i].add(o);
  }
  return result;
}

FlowField flow_field(double lambda, std::vector<double> theta_grid, std::vector<double> phi_grid) {
  if (!(lambda >= -1 && lambda <= 1)) throw DomainError("nonlinear flow_field: lambda outside [-1, 1]");
  FlowField field;
  field.theta_grid = std::move(theta_grid);
  field.phi_grid = std::move(phi_grid);
  field.samples.reserve(field.theta_grid.size() * field.phi_grid.size());
  for (double theta : field.theta_grid) {
    for (double phi : field.phi_grid) {
      const double td = rate(theta, lambda);
      field.samples.push_back({theta, phi, td, 0.0, std::abs(td), false});
    }
  }
  return field;
}

}  // namespace blochflow::nonlinear
