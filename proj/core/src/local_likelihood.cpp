#include "mapt/local_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mapt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_theta0(double theta0) {
  if (!(theta0 > 0.0 && theta0 < 1.0)) {
    std::ostringstream msg;
    msg << "theta0 must lie in (0, 1), got " << theta0;
    throw std::domain_error(msg.str());
  }
}

}  // namespace

StateComponent StateComponent::uniform_log10(double lo, double hi, int H) {
  if (!(lo < hi)) throw std::invalid_argument("component needs log10_lo < log10_hi");
  if (H < 1) throw std::invalid_argument("component needs at least one quadrature node");
  StateComponent comp;
  comp.log10_lo = lo;
  comp.log10_hi = hi;
  comp.quad_points.reserve(static_cast<std::size_t>(H));
  const double step = (hi - lo) / H;
  for (int h = 0; h < H; ++h)
    comp.quad_points.push_back({std::pow(10.0, lo + (h + 0.5) * step)});
  return comp;
}

StateComponent StateComponent::at_infinity() {
  StateComponent comp;
  comp.log10_lo = comp.log10_hi = std::numeric_limits<double>::infinity();
  comp.quad_points = {Precision::infinite()};
  comp.point_mass_at_infinity = true;
  return comp;
}

StateComponent StateComponent::fixed(double nu) {
  if (!(nu > 0.0) || std::isinf(nu))
    throw std::invalid_argument("fixed component needs a finite precision > 0");
  StateComponent comp;
  comp.log10_lo = comp.log10_hi = std::log10(nu);
  comp.quad_points = {Precision{nu}};
  return comp;
}

double log_gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "log_gamma_fn requires x > 0, got " << x;
    throw std::domain_error(msg.str());
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: no write to the global signgam
#else
  return std::lgamma(x);
#endif
}

double log_rising(double a, std::uint32_t m) {
  if (m == 0) return 0.0;
  // Short runs (and huge a, where the Gamma difference cancels) use a blocked
  // product; each block of eight factors stays far inside double range.
  if (m <= 48 || a > 64.0 * m) {
    const std::uint32_t block = a < 1e30 ? 8 : 1;
    double acc = 0.0;
    std::uint32_t j = 0;
    while (j < m) {
      double prod = 1.0;
      const std::uint32_t stop = std::min(m, j + block);
      for (; j < stop; ++j) prod *= a + j;
      acc += std::log(prod);
    }
    return acc;
  }
  return log_gamma_fn(a + m) - log_gamma_fn(a);
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == kNegInf) return kNegInf;
  if (std::isinf(top)) return top;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

double log_M(double theta0, Precision nu, SplitCounts counts) {
  check_theta0(theta0);
  if (counts.total() == 0) return 0.0;
  if (nu.is_infinite()) {
    double out = 0.0;
    if (counts.n_left > 0) out += counts.n_left * std::log(theta0);
    if (counts.n_right > 0) out += counts.n_right * std::log1p(-theta0);
    return out;
  }
  if (!(nu.value > 0.0)) throw std::domain_error("precision must be positive");
  const double v = nu.value;
  return log_rising(theta0 * v, counts.n_left) +
         log_rising((1.0 - theta0) * v, counts.n_right) -
         log_rising(v, counts.total());
}

double log_M_component(double theta0, const StateComponent& comp,
                       SplitCounts counts) {
  check_theta0(theta0);
  if (counts.total() == 0) return 0.0;
  if (comp.quad_points.size() == 1) return log_M(theta0, comp.quad_points[0], counts);
  std::vector<double> terms;
  terms.reserve(comp.quad_points.size());
  for (const Precision& nu : comp.quad_points) terms.push_back(log_M(theta0, nu, counts));
  return log_sum_exp(terms) - std::log(static_cast<double>(terms.size()));
}

std::vector<double> posterior_nu_weights(double theta0, const StateComponent& comp,
                                         SplitCounts counts) {
  check_theta0(theta0);
  const std::size_t H = comp.quad_points.size();
  if (H == 0) throw std::invalid_argument("component has no quadrature nodes");
  std::vector<double> w(H, 1.0 / static_cast<double>(H));
  if (counts.total() == 0 || H == 1) {
    if (H == 1) w[0] = 1.0;
    return w;
  }
  for (std::size_t h = 0; h < H; ++h) w[h] = log_M(theta0, comp.quad_points[h], counts);
  const double norm = log_sum_exp(w);
  for (double& x : w) x = std::exp(x - norm);
  return w;
}

std::vector<std::vector<double>> posterior_nu_weights(
    double theta0, std::span<const StateComponent> comps, SplitCounts counts) {
  std::vector<std::vector<double>> out;
  out.reserve(comps.size());
  for (const auto& comp : comps) out.push_back(posterior_nu_weights(theta0, comp, counts));
  return out;
}

}  // namespace mapt
