#include "pathsource/nonadaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathsource {

namespace {

// Nearest integer, halves away from zero.
Node round_half_away(double x) { return static_cast<Node>(std::llround(x)); }

Node clamp_node(Node v, Node n) { return std::clamp<Node>(v, 1, n); }

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("delta must be in (0, 1/2)");
}

} // namespace

Node spacing(double sigma, double delta, Node spacing_cap) {
    check_delta(delta);
    if (sigma < 0.0) throw std::invalid_argument("spacing: sigma must be >= 0");
    if (sigma == 0.0) return spacing_cap;
    const double raw = 1.0 / (16.0 * sigma * sigma * std::log(6.0 / delta));
    if (raw >= static_cast<double>(spacing_cap)) return spacing_cap;
    return std::max<Node>(1, static_cast<Node>(std::floor(raw)));
}

NonAdaptivePlan build_plan(Node n, double sigma, double delta, Model model,
                           Node spacing_cap) {
    if (n < 3) throw std::invalid_argument("build_plan: n must be >= 3");
    NonAdaptivePlan plan;
    plan.n = n;
    plan.d = std::min<Node>(spacing(sigma, delta, spacing_cap), n);
    plan.delta = delta;
    plan.model = model;
    plan.query_nodes.reserve(static_cast<std::size_t>((n - 1) / plan.d + 1));
    for (Node q = 1; q <= n; q += plan.d) plan.query_nodes.push_back(q);
    return plan;
}

Node plan_query_count(Node n, double sigma, double delta, Node spacing_cap) {
    if (n < 3) throw std::invalid_argument("plan_query_count: n must be >= 3");
    const Node d = std::min<Node>(spacing(sigma, delta, spacing_cap), n);
    return (n - 1) / d + 1;
}

Node estimate_s2(const NonAdaptivePlan& plan, const std::vector<double>& answers) {
    if (answers.size() != plan.query_nodes.size())
        throw std::invalid_argument("estimate_s2: answers do not match plan");
    const auto it = std::min_element(answers.begin(), answers.end());
    const std::size_t i = static_cast<std::size_t>(it - answers.begin());
    const Node q_smallest = plan.query_nodes[i];
    const Node a_rounded = round_half_away(answers[i]);

    if (i == 0) // q_smallest = 1, no left neighbor: the source is to the right
        return clamp_node(q_smallest + a_rounded, plan.n);

    const Node a_left_rounded = round_half_away(answers[i - 1]);
    if (a_left_rounded >= plan.d)
        return clamp_node(q_smallest + a_rounded, plan.n);
    return clamp_node(q_smallest - a_rounded, plan.n);
}

Node estimate_s1(const NonAdaptivePlan& plan, const std::vector<double>& answers) {
    if (answers.size() != plan.query_nodes.size())
        throw std::invalid_argument("estimate_s1: answers do not match plan");
    const std::size_t m = answers.size();
    if (m == 1) return 1; // a single offset answer carries no information

    const auto it = std::min_element(answers.begin(), answers.end());
    const std::size_t i = static_cast<std::size_t>(it - answers.begin());
    const Node q_smallest = plan.query_nodes[i];
    const double a_smallest = answers[i];

    // Midpoint reconstruction from a bracketing pair: offsets cancel in the
    // answer difference.
    const auto midpoint = [&](Node q_lo, double a_lo, Node q_hi, double a_hi) {
        const Node diff = round_half_away(a_lo - a_hi);
        return clamp_node(round_half_away((static_cast<double>(diff) + q_lo + q_hi) / 2.0),
                          plan.n);
    };

    if (i == 0) // no left neighbor: use the right pair
        return midpoint(q_smallest, a_smallest, plan.query_nodes[1], answers[1]);
    if (i == m - 1) // no right neighbor: mirror with the left pair
        return midpoint(plan.query_nodes[m - 2], answers[m - 2], q_smallest, a_smallest);

    // ans(left) - ans(smallest) rounds to d exactly when the source sits at or
    // to the right of q_smallest.
    const Node left_diff = round_half_away(answers[i - 1] - a_smallest);
    if (left_diff >= plan.d)
        return midpoint(q_smallest, a_smallest, plan.query_nodes[i + 1], answers[i + 1]);
    return midpoint(plan.query_nodes[i - 1], answers[i - 1], q_smallest, a_smallest);
}

} // namespace pathsource
