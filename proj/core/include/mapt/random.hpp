#ifndef MAPT_RANDOM_HPP
#define MAPT_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mapt {

using Rng = std::mt19937_64;

/// Mixes a base seed with stream identifiers (replicate, draw, ...) into an
/// independent 64-bit seed using the splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

/// Gamma(shape, 1) draw returned on the log scale; stays finite for tiny
/// shapes where the direct draw underflows to zero.
double sample_log_gamma(Rng& rng, double shape);

/// Beta(a, b) by the gamma-ratio method, clamped to the open unit interval.
double sample_beta(Rng& rng, double a, double b);

}  // namespace mapt

#endif  // MAPT_RANDOM_HPP
