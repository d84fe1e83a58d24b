#include "mapt/scenarios.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mapt/local_likelihood.hpp"

namespace mapt {

namespace {

MixtureComponent uniform(double w, double lo, double hi) {
  return {MixtureComponent::Kind::Uniform, w, lo, hi, 1.0, 1.0};
}

MixtureComponent beta(double w, double a, double b, double lo = 0.0, double hi = 1.0) {
  return {MixtureComponent::Kind::Beta, w, lo, hi, a, b};
}

const std::array<Scenario, kScenarioCount>& all_scenarios() {
  static const std::array<Scenario, kScenarioCount> table = {
      Scenario{1, "Spiky local structures",
               {uniform(0.2, 0.0, 1.0), uniform(0.2, 0.2, 0.205), uniform(0.2, 0.4, 0.405),
                uniform(0.2, 0.6, 0.605), uniform(0.2, 0.8, 0.805)}},
      Scenario{2, "Non-overlapping structures of different scales",
               {uniform(0.1, 0.0, 1.0), uniform(0.3, 0.25, 0.5), beta(0.4, 2, 2, 0.25, 0.5),
                beta(0.2, 6000, 4000)}},
      Scenario{3, "Overlapping structures of different scales",
               {uniform(0.1, 0.0, 1.0), uniform(0.3, 0.25, 0.5), beta(0.4, 2, 2, 0.25, 0.5),
                beta(0.2, 4000, 6000)}},
      // The last term is a Beta(2,2) on (0.55, 0.8), mirroring the term on (0.3, 0.55).
      Scenario{4, "Sharp boundaries",
               {beta(0.1, 2, 2), uniform(0.25, 0.3, 0.55), beta(0.05, 2, 2, 0.3, 0.55),
                uniform(0.55, 0.55, 0.8), beta(0.05, 2, 2, 0.55, 0.8)}},
      Scenario{5, "Globally smooth structure", {beta(1.0, 10, 20)}},
  };
  return table;
}

}  // namespace

double MixtureComponent::pdf(double x) const {
  const bool inside = x >= lo && (x < hi || (x == hi && hi == 1.0));
  if (!inside) return 0.0;
  const double width = hi - lo;
  if (kind == Kind::Uniform) return 1.0 / width;
  const double t = (x - lo) / width;
  if (t <= 0.0 || t >= 1.0) {
    // Boundary: finite only when the corresponding shape is >= 1.
    if ((t <= 0.0 && shape1 > 1.0) || (t >= 1.0 && shape2 > 1.0)) return 0.0;
    if ((t <= 0.0 && shape1 == 1.0) || (t >= 1.0 && shape2 == 1.0)) {
      const double log_norm = log_gamma_fn(shape1 + shape2) - log_gamma_fn(shape1) -
                              log_gamma_fn(shape2);
      return std::exp(log_norm) / width;
    }
    return std::numeric_limits<double>::infinity();
  }
  const double log_norm =
      log_gamma_fn(shape1 + shape2) - log_gamma_fn(shape1) - log_gamma_fn(shape2);
  return std::exp(log_norm + (shape1 - 1.0) * std::log(t) + (shape2 - 1.0) * std::log1p(-t)) /
         width;
}

double MixtureComponent::sample(Rng& rng) const {
  if (kind == Kind::Uniform) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
  }
  return lo + (hi - lo) * sample_beta(rng, shape1, shape2);
}

double Scenario::pdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("scenario_pdf: x = " + std::to_string(x) + " lies outside [0, 1]");
  double acc = 0.0;
  for (const auto& c : components) acc += c.weight * c.pdf(x);
  return acc;
}

double Scenario::sample(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double target = u(rng);
  for (const auto& c : components) {
    target -= c.weight;
    if (target < 0.0) return c.sample(rng);
  }
  return components.back().sample(rng);
}

const Scenario& scenario(int id) {
  if (id < 1 || id > kScenarioCount)
    throw std::invalid_argument("scenario id must be in 1.." + std::to_string(kScenarioCount));
  return all_scenarios()[static_cast<std::size_t>(id - 1)];
}

double scenario_pdf(int id, double x) { return scenario(id).pdf(x); }

std::vector<double> scenario_sample(int id, std::size_t n, std::uint64_t seed) {
  const Scenario& s = scenario(id);
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.sample(rng));
  return out;
}

}  // namespace mapt
