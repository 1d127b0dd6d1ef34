#pragma once
#include <cstdint>
#include <vector>

#include "pathsource/diffusion.hpp"

namespace pathsource {

enum class Model { S2, S1 };

// Equally spaced query plan: nodes 1, d+1, 2d+1, ..., 1 + floor((n-1)/d)*d.
struct NonAdaptivePlan {
    Node n = 0;
    Node d = 1; // spacing
    std::vector<Node> query_nodes;
    double delta = 0.1;
    Model model = Model::S2;
};

// Spacing for noise level sigma and failure probability delta:
// max(1, floor(1 / (16 sigma^2 ln(6/delta)))). sigma = 0 would give an
// infinite spacing, so it is clamped to spacing_cap.
Node spacing(double sigma, double delta, Node spacing_cap = 1'000'000);

NonAdaptivePlan build_plan(Node n, double sigma, double delta, Model model,
                           Node spacing_cap = 1'000'000);

// Arithmetic query count of the plan, floor((n-1)/d) + 1, without
// materializing the node list.
Node plan_query_count(Node n, double sigma, double delta,
                      Node spacing_cap = 1'000'000);

// Reconstruction with absolute answers (start time known). Picks the query
// node with the smallest answer (ties go leftmost) and places the source on
// the side indicated by the left neighbor's rounded answer.
Node estimate_s2(const NonAdaptivePlan& plan, const std::vector<double>& answers);

// Reconstruction with an unknown common offset: only rounded answer
// differences are used, so estimate_s1(plan, answers + c) is invariant in c.
Node estimate_s1(const NonAdaptivePlan& plan, const std::vector<double>& answers);

} // namespace pathsource
