#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qssa/params.hpp"

namespace fixtures {

inline qssa::ReactionConfig make(double k1, double k_m1, double k2, double s0, double e0) {
  return qssa::ReactionConfig{{k1, k_m1, k2}, s0, e0};
}

// Figure configurations.
inline const qssa::ReactionConfig fig1 = make(1, 10, 10, 100, 5);
inline const qssa::ReactionConfig fig2_bottom_left = make(1, 100, 100, 200, 1);
inline const qssa::ReactionConfig ww_top = make(2, 100, 100, 10, 10);
inline const qssa::ReactionConfig ww_bottom = make(2, 100, 100, 10, 1);
inline const qssa::ReactionConfig xx_bottom = make(2, 100, 100, 100, 1);
inline const qssa::ReactionConfig zz_top = make(2, 100, 1, 10, 1);
inline const qssa::ReactionConfig zz_bottom = make(2, 1, 100, 10, 1);

inline std::vector<qssa::ReactionConfig> fig2_grid() {
  std::vector<qssa::ReactionConfig> out;
  for (double s0 : {2.0, 20.0, 200.0, 2000.0}) {
    for (double e0 : {0.025, 0.05, 0.075, 0.1, 0.25, 0.5, 0.75, 1.0, 2.5, 5.0, 7.5, 10.0}) {
      out.push_back(make(1, 100, 100, s0, e0));
    }
  }
  return out;
}

// Log-uniform random configurations with eps_RS <= eps_rs_max.
inline std::vector<qssa::ReactionConfig> random_configs(std::size_t n, unsigned seed,
                                                        double eps_rs_max = 0.1) {
  std::mt19937_64 rng(seed);
  auto logu = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  std::vector<qssa::ReactionConfig> out;
  while (out.size() < n) {
    const double k1 = logu(0.1, 10);
    const double k_m1 = logu(0.1, 100);
    const double k2 = logu(0.1, 100);
    const double s0 = logu(0.1, 1000);
    const double K_M = (k_m1 + k2) / k1;
    const double e0 = K_M * logu(1e-4, eps_rs_max);
    // Keep the explicit integration at desk scale: stiffness ratio C*/eps_RS.
    const double stiffness = k1 * (K_M + s0) * (K_M + s0) / (k2 * e0);
    if (stiffness > 2e5) continue;
    out.push_back(make(k1, k_m1, k2, s0, e0));
  }
  return out;
}

}  // namespace fixtures
