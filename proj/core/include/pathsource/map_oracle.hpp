#pragma once
#include <cstdint>
#include <vector>

#include "pathsource/diffusion.hpp"
#include "pathsource/rng.hpp"

namespace pathsource {

// The bracketing sufficient statistic: the nearest query nodes on either side
// of the source and their answers.
struct BracketObservation {
    Node l = 0;
    Node r = 0; // r > l, r - l >= 2
    double a_l = 0.0;
    double a_r = 0.0;
    double sigma = 1.0;
};

struct Posterior {
    std::vector<Node> support; // interior nodes l+1 .. r-1
    std::vector<double> probs; // sums to 1 within 1e-12
};

// Posterior over the interior candidates under a uniform prior:
// probs[v] proportional to phi(a_l; v-l, (v-l) sigma^2) * phi(a_r; r-v, (r-v) sigma^2).
// Accumulated in log space with max-subtraction. Throws degenerate_posterior
// (a runtime_error) when every density underflows at once.
Posterior posterior(const BracketObservation& obs);

// Argmax of the posterior; ties go leftmost.
Node map_estimate(const BracketObservation& obs);

enum class IntegrationMethod { grid, monte_carlo };

// Success probability of the optimal estimator distinguishing k adjacent
// candidate sources bracketed by queries at distance d on either side:
// (1/k) * double integral of max_i g_i(x,y), with g_i the density of the
// independent answer pair. The grid method integrates over a box extending
// 8 standard deviations past the candidate means at resolution^2 cells; the
// monte_carlo method draws `resolution` answer pairs from a uniformly chosen
// hypothesis and counts exact-MAP hits.
double optimal_success_probability(Node d, Node k, double sigma,
                                   IntegrationMethod method, long resolution,
                                   const RngContract& rng = {12345, 0});

// Closed-form upper bound 2 (d+k) exp(k^2 / (2 (d+k) sigma^2)) / d on the
// total success mass over the k candidates.
double advantage_bound(Node d, Node k, double sigma);

} // namespace pathsource
