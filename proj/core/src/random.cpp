#include "mapt/random.hpp"

#include <cmath>
#include <limits>

namespace mapt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t s : stream) h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
  return h;
}

double sample_log_gamma(Rng& rng, double shape) {
  if (shape >= 1.0) {
    std::gamma_distribution<double> g(shape, 1.0);
    return std::log(g(rng));
  }
  // G(a) = G(a + 1) * U^(1/a)
  std::gamma_distribution<double> g(shape + 1.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = u(rng);
  while (v <= 0.0) v = u(rng);
  return std::log(g(rng)) + std::log(v) / shape;
}

double sample_beta(Rng& rng, double a, double b) {
  const double la = sample_log_gamma(rng, a);
  const double lb = sample_log_gamma(rng, b);
  // a / (a + b) = 1 / (1 + exp(lb - la))
  double theta = 1.0 / (1.0 + std::exp(lb - la));
  const double tiny = std::numeric_limits<double>::min();
  if (theta <= 0.0) theta = tiny;
  if (theta >= 1.0) theta = std::nextafter(1.0, 0.0);
  return theta;
}

}  // namespace mapt
