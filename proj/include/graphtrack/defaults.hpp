#pragma once

namespace graphtrack {

// alpha/beta tuned by `graphtrack gridsearch` on the stationary ER benchmark
// (N=100, p=0.2, sigma=0.01, T=2000, infinite memory), maximizing the mean
// edge F-measure over the final 200 steps; see data/tuned_params.json.
inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultBeta = 0.0316;

inline constexpr double kDefaultGamma = 0.002;
inline constexpr double kDefaultNoiseSigma = 0.01;
inline constexpr double kDefaultTol = 1e-8;
inline constexpr long kDefaultMaxIter = 50000;
inline constexpr double kDefaultDegreeFloor = 1e-9;
inline constexpr double kDefaultEdgeThresholdRel = 1e-4;

}  // namespace graphtrack
