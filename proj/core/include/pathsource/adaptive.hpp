#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pathsource/nonadaptive.hpp" // Model

namespace pathsource {

enum class CMode { paper, tuned };
enum class ScanThresholdMode { fixed_point, explicit_value };

struct AdaptiveConfig {
    double delta = 0.1;
    CMode c_mode = CMode::paper;
    double c_value = 2.0; // used in tuned mode
    ScanThresholdMode scan_threshold_mode = ScanThresholdMode::fixed_point;
    Node scan_threshold = 0; // used in explicit_value mode
    Model model = Model::S2;
    int max_steps = 64;

    // The concentration constant actually used by the search.
    double effective_c() const;
    Node effective_scan_threshold(double sigma) const;
};

struct AdaptiveTrace {
    std::vector<std::pair<Node, Node>> intervals; // [l_i, r_i] before each refinement round
    std::vector<std::pair<Node, double>> queries; // every probe, in order
    double min_answer = 0.0;
    std::size_t phase_switch_step = 0; // index in queries where scanning began
    Node total_queries = 0;
};

struct AdaptiveResult {
    Node estimate = -1; // -1 = failure sentinel
    AdaptiveTrace trace;
};

using QueryFn = std::function<double(Node)>;

// sqrt(4 log2(114/delta)): the constant making the answer concentration bound
// hold for all nodes simultaneously with probability 1-delta.
double c_of_delta(double delta);

// One refinement update. Given the answer a at the left endpoint l of [l, r],
// returns the clamped interval
//   [max(l, l + ceil(a - rad)), min(r, l + floor(a + rad))]
// with rad = c * sigma * sqrt(d) * ln(1+d), d = r - l. The result may be
// empty (second < first); the caller treats that as a concentration violation.
std::pair<Node, Node> shrink_interval(Node l, Node r, double a, double c, double sigma);

// Shrinking-interval search with absolute answers. Phase 1 queries l_i and
// shrinks until the interval stops shrinking, reaches the scan threshold, or
// max_steps; phase 2 scans the remaining candidates left to right for the
// node answering exactly 0.
AdaptiveResult search_s2(const QueryFn& oracle, Node n, double sigma,
                         const AdaptiveConfig& cfg);

// Offset-free variant: two probes per round (l_i and r_i), interval centered
// at (ans(l)-ans(r)+l+r)/2. The scan winner must be the strict minimum among
// all probes and consistent with a neighboring probe's answer difference.
AdaptiveResult search_s1(const QueryFn& oracle, Node n, double sigma,
                         const AdaptiveConfig& cfg);

// Deterministic width recursion d_{i+1} = ceil(c sigma sqrt(d_i) ln(1+d_i)),
// starting at n, stopped at the self-detected fixed point or at
// max(2 sigma^2, 1). The last element is the predicted scan width.
std::vector<Node> predicted_interval_sequence(Node n, double sigma, double c);

} // namespace pathsource
