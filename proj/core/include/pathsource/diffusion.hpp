#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "pathsource/rng.hpp"

namespace pathsource {

using Node = std::int64_t;

enum class WeightDist { gaussian, uniform, truncated_gaussian };

// One sampled world: hidden source, cumulative edge weights, and the S1
// start-time offset. Immutable after sampling; safe to share across threads.
struct PathInstance {
    Node n = 0;
    double sigma = 0.0;
    Node source = 0; // in {1..n}
    std::vector<double> prefix; // prefix[i-1] = sum of weights of edges left of node i; prefix[0] = 0
    double t_start = 0.0; // 0 in the S2 model
    WeightDist weight_dist = WeightDist::gaussian;
};

// Samples an instance: source uniform on {1..n} unless fixed, edge weights
// i.i.d. with mean 1 and std sigma (gaussian), or the matching uniform law on
// [1-sqrt(3)sigma, 1+sqrt(3)sigma], or a N(1,sigma^2) conditioned positive
// (truncated_gaussian keeps location 1 and scale sigma, so its mean shifts up).
// sigma = 0 gives unit weights exactly.
// Throws std::invalid_argument for n < 3, sigma < 0 or fixed_source out of range.
PathInstance sample_instance(Node n, double sigma, WeightDist weight_dist,
                             const RngContract& rng,
                             std::optional<Node> fixed_source = std::nullopt,
                             double s1_offset = 0.0);

// Distance answer for query node q: the segment weight sum between q and the
// source, plus t_start. Exactly t_start when q is the source.
double answer(const PathInstance& inst, Node q);

// As answer(), plus the side of q the source is on: -1 left, 0 equal, +1 right.
std::pair<double, int> answer_with_direction(const PathInstance& inst, Node q);

// exp(-a^2 / (2 sigma2)): two-sided Gaussian tail bound.
double gaussian_tail_bound(double a, double sigma2);

} // namespace pathsource
