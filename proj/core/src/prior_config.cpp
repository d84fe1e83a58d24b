#include "mapt/prior_config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mapt {

BaseMeasure BaseMeasure::uniform(const Domain& domain) {
  BaseMeasure b;
  b.kind_ = Kind::Uniform;
  b.domain_ = domain;
  return b;
}

BaseMeasure BaseMeasure::piecewise(const Domain& domain, std::vector<double> breakpoints,
                                   std::vector<double> masses) {
  if (breakpoints.size() < 2 || masses.size() + 1 != breakpoints.size())
    throw std::invalid_argument("piecewise base needs k+1 breakpoints for k masses");
  if (breakpoints.front() != domain.lo || breakpoints.back() != domain.hi)
    throw std::invalid_argument("piecewise base breakpoints must start at lo and end at hi");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end())
    throw std::invalid_argument("piecewise base breakpoints must be strictly increasing");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::invalid_argument("piecewise base masses must be finite and positive");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("piecewise base masses must sum to 1");
  BaseMeasure b;
  b.kind_ = Kind::Piecewise;
  b.domain_ = domain;
  b.breakpoints_ = std::move(breakpoints);
  b.masses_ = std::move(masses);
  return b;
}

double BaseMeasure::cdf(double x) const {
  if (x <= domain_.lo) return 0.0;
  if (x >= domain_.hi) return 1.0;
  if (kind_ == Kind::Uniform) return (x - domain_.lo) / domain_.width();
  double acc = 0.0;
  for (std::size_t j = 0; j < masses_.size(); ++j) {
    const double a = breakpoints_[j];
    const double b = breakpoints_[j + 1];
    if (x >= b) {
      acc += masses_[j];
    } else {
      acc += masses_[j] * (x - a) / (b - a);
      break;
    }
  }
  return std::min(acc, 1.0);
}

double BaseMeasure::log_density(double x) const {
  if (kind_ == Kind::Uniform) return -std::log(domain_.width());
  // Pieces are [b_j, b_{j+1}); the last one is closed.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto j = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
  j = std::clamp<std::size_t>(j, 1, masses_.size()) - 1;
  return std::log(masses_[j] / (breakpoints_[j + 1] - breakpoints_[j]));
}

double BaseMeasure::log_mass(NodeId id) const {
  if (kind_ == Kind::Uniform) return -id.level * std::numbers::ln2;
  const auto [a, b] = node_interval(id, domain_);
  return std::log(cdf(b) - cdf(a));
}

double BaseMeasure::theta0(NodeId id) const {
  if (kind_ == Kind::Uniform) return 0.5;
  const auto [a, b] = node_interval(id, domain_);
  const double mid = split_point(id, domain_);
  const double left = cdf(mid) - cdf(a);
  const double whole = cdf(b) - cdf(a);
  if (!(whole > 0.0)) throw std::domain_error("base measure assigns zero mass to a node");
  return left / whole;
}

double BaseMeasure::log_conditional_density(double x, NodeId id) const {
  if (kind_ == Kind::Uniform) return -std::log(std::ldexp(domain_.width(), -id.level));
  return log_density(x) - log_mass(id);
}

std::vector<StateComponent> make_components(int states, double L, double U, int H) {
  if (states < 2) throw std::invalid_argument("make_components requires I >= 2");
  if (!(L < U)) throw std::invalid_argument("make_components requires L < U");
  if (H < 1) throw std::invalid_argument("make_components requires H >= 1");
  std::vector<StateComponent> comps;
  comps.reserve(static_cast<std::size_t>(states));
  const int intervals = states - 1;
  const double step = (U - L) / intervals;
  for (int i = 0; i < intervals; ++i) {
    const double lo = L + i * step;
    const double hi = (i + 1 == intervals) ? U : L + (i + 1) * step;
    comps.push_back(StateComponent::uniform_log10(lo, hi, H));
  }
  comps.push_back(StateComponent::at_infinity());
  return comps;
}

Transition make_transition(const TransitionSpec& spec) {
  if (spec.states < 1) throw std::invalid_argument("transition needs I >= 1");
  if (!(spec.beta >= 0.0) || std::isinf(spec.beta))
    throw std::invalid_argument("stickiness beta must be finite and >= 0");
  const auto I = static_cast<std::size_t>(spec.states);
  const double beta = spec.kernel == Kernel::Uniform ? 0.0 : spec.beta;
  Transition t;
  t.init.assign(I, 1.0 / static_cast<double>(I));
  t.matrix.assign(I * I, 0.0);
  for (std::size_t i = 0; i < I; ++i) {
    double norm = 0.0;
    for (std::size_t j = i; j < I; ++j) norm += std::exp(-beta * static_cast<double>(j - i));
    for (std::size_t j = i; j < I; ++j)
      t.matrix[i * I + j] = std::exp(-beta * static_cast<double>(j - i)) / norm;
  }
  // Complete shrinkage is absorbing.
  t.matrix[I * I - 1] = 1.0;
  return t;
}

double theta0_for(NodeId node, const BaseMeasure& base) { return base.theta0(node); }

void HyperParams::validate() const {
  const int I = states();
  if (I < 1) throw std::invalid_argument("hyperparameters need at least one state");
  if (max_depth < 1 || max_depth > kMaxDepth)
    throw std::invalid_argument("hyperparameters have an invalid max_depth");
  if (!(base.domain() == domain))
    throw std::invalid_argument("base measure domain differs from the model domain");
  if (transition.size() != static_cast<std::size_t>(I * I))
    throw std::invalid_argument("transition matrix has the wrong size");
  auto check_row = [](double sum, const char* what) {
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument(what);
  };
  check_row(std::accumulate(init_probs.begin(), init_probs.end(), 0.0),
            "initial state probabilities must sum to 1");
  for (int i = 0; i < I; ++i) {
    double sum = 0.0;
    for (int j = 0; j < I; ++j) {
      const double p = trans(i, j);
      if (p < 0.0) throw std::invalid_argument("negative transition probability");
      if (j < i && p != 0.0)
        throw std::invalid_argument("transition matrix must be upper-triangular");
      sum += p;
    }
    check_row(sum, "transition rows must sum to 1");
  }
  auto check_comps = [I](const std::vector<StateComponent>& comps) {
    if (comps.size() != static_cast<std::size_t>(I))
      throw std::invalid_argument("need one precision component per state");
    for (const auto& c : comps)
      if (c.quad_points.empty())
        throw std::invalid_argument("precision component without quadrature nodes");
  };
  if (level_components.empty()) {
    check_comps(components);
  } else {
    if (level_components.size() < static_cast<std::size_t>(max_depth))
      throw std::invalid_argument("per-level components must cover every split level");
    for (const auto& comps : level_components) check_comps(comps);
  }
}

BaseMeasure ModelConfig::base_measure() const {
  if (base_breakpoints.empty()) return BaseMeasure::uniform(domain);
  return BaseMeasure::piecewise(domain, base_breakpoints, base_masses);
}

HyperParams make_hyperparams(const ModelConfig& config) {
  if (config.states < 1) throw std::invalid_argument("I must be >= 1");
  HyperParams hp;
  hp.domain = config.domain;
  hp.max_depth = config.depth;
  hp.base = config.base_measure();
  hp.beta = config.beta;
  hp.L = config.L;
  hp.U = config.U;
  hp.H = config.H;
  if (config.states == 1) {
    hp.components = {StateComponent::uniform_log10(config.L, config.U, config.H)};
  } else {
    hp.components = make_components(config.states, config.L, config.U, config.H);
  }
  auto t = make_transition({config.states, config.beta, Kernel::Exponential});
  hp.init_probs = std::move(t.init);
  hp.transition = std::move(t.matrix);
  hp.validate();
  return hp;
}

HyperParams make_single_state_hyperparams(const Domain& domain, int max_depth,
                                          const BaseMeasure& base,
                                          StateComponent component) {
  HyperParams hp;
  hp.domain = domain;
  hp.max_depth = max_depth;
  hp.base = base;
  hp.components = {std::move(component)};
  hp.init_probs = {1.0};
  hp.transition = {1.0};
  hp.H = static_cast<int>(hp.components[0].size());
  hp.validate();
  return hp;
}

HyperParams make_single_state_hyperparams(const Domain& domain, int max_depth,
                                          const BaseMeasure& base,
                                          std::vector<StateComponent> per_level) {
  HyperParams hp;
  hp.domain = domain;
  hp.max_depth = max_depth;
  hp.base = base;
  for (auto& c : per_level) hp.level_components.push_back({std::move(c)});
  hp.components = hp.level_components.empty() ? std::vector<StateComponent>{}
                                              : hp.level_components.front();
  hp.init_probs = {1.0};
  hp.transition = {1.0};
  hp.H = 1;
  hp.validate();
  return hp;
}

}  // namespace mapt
