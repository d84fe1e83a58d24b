#ifndef MAPT_SCENARIOS_HPP
#define MAPT_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mapt/random.hpp"

namespace mapt {

/// Mixture component on [lo, hi]: uniform, or Beta(shape1, shape2) rescaled
/// from (0, 1) onto (lo, hi).
struct MixtureComponent {
  enum class Kind { Uniform, Beta };
  Kind kind = Kind::Uniform;
  double weight = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  double shape1 = 1.0;
  double shape2 = 1.0;

  double pdf(double x) const;
  double sample(Rng& rng) const;
};

/// One of the five simulation truths, all supported on [0, 1].
struct Scenario {
  int id = 0;
  std::string name;
  std::vector<MixtureComponent> components;

  double pdf(double x) const;
  double sample(Rng& rng) const;
};

inline constexpr int kScenarioCount = 5;

/// Throws std::invalid_argument for ids outside 1..5.
const Scenario& scenario(int id);

/// Mixture density at x in [0, 1]; std::domain_error otherwise.
double scenario_pdf(int id, double x);
std::vector<double> scenario_sample(int id, std::size_t n, std::uint64_t seed);

}  // namespace mapt

#endif  // MAPT_SCENARIOS_HPP
