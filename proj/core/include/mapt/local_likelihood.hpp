#ifndef MAPT_LOCAL_LIKELIHOOD_HPP
#define MAPT_LOCAL_LIKELIHOOD_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace mapt {

/// Beta precision nu(A) = alpha_l + alpha_r. Infinity means complete
/// shrinkage: theta(A) is a point mass at theta0(A).
struct Precision {
  double value = 1.0;

  static Precision infinite() { return {std::numeric_limits<double>::infinity()}; }
  bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }
  bool operator==(const Precision&) const = default;
};

/// One mixture component F^i of the precision prior: log10(nu) uniform on
/// [log10_lo, log10_hi), discretized at H equally spaced midpoints, or a
/// point mass at infinity.
struct StateComponent {
  double log10_lo = 0.0;
  double log10_hi = 0.0;
  std::vector<Precision> quad_points;
  bool point_mass_at_infinity = false;

  /// H midpoint nodes on [lo, hi) in log10 scale.
  static StateComponent uniform_log10(double lo, double hi, int H);
  static StateComponent at_infinity();
  /// Degenerate single-point component at a finite precision.
  static StateComponent fixed(double nu);

  std::size_t size() const { return quad_points.size(); }
};

struct SplitCounts {
  std::uint32_t n_left = 0;
  std::uint32_t n_right = 0;

  std::uint32_t total() const { return n_left + n_right; }
  bool operator==(const SplitCounts&) const = default;
};

/// Natural log of Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma_fn(double x);

/// log(Gamma(a + m) / Gamma(a)), the log rising factorial.
double log_rising(double a, std::uint32_t m);

double log_sum_exp(std::span<const double> xs);
double log_add_exp(double a, double b);

/// Log marginal likelihood of the local binomial experiment,
///   Gamma(t*nu + nl) Gamma((1-t)*nu + nr) Gamma(nu)
///   -----------------------------------------------
///   Gamma(nu + n) Gamma(t*nu) Gamma((1-t)*nu)
/// with the infinite-precision limit nl*log(t) + nr*log(1-t).
/// Throws std::domain_error unless 0 < theta0 < 1.
double log_M(double theta0, Precision nu, SplitCounts counts);

/// Log of the quadrature average of M over a component's nodes.
double log_M_component(double theta0, const StateComponent& comp,
                       SplitCounts counts);

/// Posterior weights over a component's quadrature nodes, proportional to
/// M(theta0, nu_h). Sums to one.
std::vector<double> posterior_nu_weights(double theta0, const StateComponent& comp,
                                         SplitCounts counts);
std::vector<std::vector<double>> posterior_nu_weights(
    double theta0, std::span<const StateComponent> comps, SplitCounts counts);

}  // namespace mapt

#endif  // MAPT_LOCAL_LIKELIHOOD_HPP
