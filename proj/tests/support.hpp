#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "relaycap/core_model.hpp"

// Shared fixtures for the test suites.

namespace testsupport {

// Two relays, two destinations, unit power, parameterised by a >= 1:
//   source SNRs           [a^2, a]        (already sorted for a >= 1)
//   destination 1 SNRs    [a^2, a]
//   destination 2 SNRs    [a^2, 0]
inline relaycap::Network make_fixture_network(double a) {
  return relaycap::Network::from_gains(
      1.0, {a, std::sqrt(a)}, {{a, std::sqrt(a)}, {a, 0.0}});
}

// Deterministic random network with positive gains, for property tests that
// do not care about the gain distribution's exact shape.
inline relaycap::Network random_network(std::mt19937_64& rng, int n, int l,
                                        double power = 1.0) {
  std::uniform_real_distribution<double> mag(0.05, 3.0);
  std::vector<double> src(static_cast<std::size_t>(n));
  for (double& g : src) g = mag(rng);
  std::vector<std::vector<double>> dest(static_cast<std::size_t>(l));
  for (auto& row : dest) {
    row.resize(static_cast<std::size_t>(n));
    for (double& g : row) g = mag(rng);
  }
  return relaycap::Network::from_gains(power, std::move(src), std::move(dest));
}

}  // namespace testsupport
