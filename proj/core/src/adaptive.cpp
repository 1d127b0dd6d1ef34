#include "pathsource/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace pathsource {

double c_of_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("c_of_delta: delta must be in (0, 1/2)");
    return std::sqrt(4.0 * std::log2(114.0 / delta));
}

double AdaptiveConfig::effective_c() const {
    if (c_mode == CMode::paper) return c_of_delta(delta);
    if (!(c_value > 0.0))
        throw std::invalid_argument("AdaptiveConfig: tuned c_value must be > 0");
    return c_value;
}

Node AdaptiveConfig::effective_scan_threshold(double sigma) const {
    if (scan_threshold_mode == ScanThresholdMode::explicit_value) {
        if (scan_threshold < 0)
            throw std::invalid_argument("AdaptiveConfig: scan_threshold must be >= 0");
        return scan_threshold;
    }
    return std::max<Node>(static_cast<Node>(std::ceil(2.0 * sigma * sigma)), 1);
}

std::pair<Node, Node> shrink_interval(Node l, Node r, double a, double c, double sigma) {
    if (l > r) throw std::invalid_argument("shrink_interval: l must be <= r");
    const double d = static_cast<double>(r - l);
    const double rad = c * sigma * std::sqrt(d) * std::log1p(d);
    const Node nl = std::max(l, l + static_cast<Node>(std::ceil(a - rad)));
    const Node nr = std::min(r, l + static_cast<Node>(std::floor(a + rad)));
    return {nl, nr};
}

namespace {

struct Prober {
    const QueryFn& oracle;
    AdaptiveTrace& trace;
    double probe(Node q) {
        const double a = oracle(q);
        trace.queries.emplace_back(q, a);
        if (trace.queries.size() == 1 || a < trace.min_answer) trace.min_answer = a;
        return a;
    }
};

AdaptiveResult finish(AdaptiveTrace&& trace, Node estimate) {
    AdaptiveResult res;
    res.estimate = estimate;
    res.trace = std::move(trace);
    res.trace.total_queries = static_cast<Node>(res.trace.queries.size());
    return res;
}

} // namespace

AdaptiveResult search_s2(const QueryFn& oracle, Node n, double sigma,
                         const AdaptiveConfig& cfg) {
    if (n < 3) throw std::invalid_argument("search_s2: n must be >= 3");
    const double c = cfg.effective_c();
    const Node thr = cfg.effective_scan_threshold(sigma);

    AdaptiveTrace trace;
    Prober prober{oracle, trace};
    Node l = 1, r = n;

    for (int step = 0; step < cfg.max_steps; ++step) {
        if (r - l <= thr) break;
        trace.intervals.emplace_back(l, r);
        const double a = prober.probe(l);
        if (a == 0.0) { // only the source answers exactly 0
            trace.phase_switch_step = trace.queries.size();
            return finish(std::move(trace), l);
        }
        const auto [nl, nr] = shrink_interval(l, r, a, c, sigma);
        if (nr < nl) break; // concentration violated; scan the last valid interval
        const bool shrunk = (nr - nl) < (r - l);
        l = nl;
        r = nr;
        if (!shrunk) break;
    }

    trace.phase_switch_step = trace.queries.size();
    for (Node q = l; q <= r; ++q) {
        if (prober.probe(q) == 0.0) return finish(std::move(trace), q);
    }
    return finish(std::move(trace), -1);
}

AdaptiveResult search_s1(const QueryFn& oracle, Node n, double sigma,
                         const AdaptiveConfig& cfg) {
    if (n < 3) throw std::invalid_argument("search_s1: n must be >= 3");
    const double c = cfg.effective_c();
    const Node thr = cfg.effective_scan_threshold(sigma);

    AdaptiveTrace trace;
    Prober prober{oracle, trace};
    Node l = 1, r = n;

    for (int step = 0; step < cfg.max_steps; ++step) {
        if (r - l <= thr) break;
        trace.intervals.emplace_back(l, r);
        const double d = static_cast<double>(r - l);
        const double a_l = prober.probe(l);
        const double a_r = prober.probe(r);
        const double center = (a_l - a_r + static_cast<double>(l + r)) / 2.0;
        const double rad = c * sigma * std::sqrt(d) * std::log1p(d);
        const Node nl = std::max(l, static_cast<Node>(std::ceil(center - rad)));
        const Node nr = std::min(r, static_cast<Node>(std::floor(center + rad)));
        if (nr < nl) break;
        const bool shrunk = (nr - nl) < (r - l);
        l = nl;
        r = nr;
        if (!shrunk) break;
    }

    trace.phase_switch_step = trace.queries.size();
    for (Node q = l; q <= r; ++q) prober.probe(q);

    // Under an unknown offset there is no absolute-zero check. The winner must
    // answer strictly less than every probe at any other node, and its answer
    // difference to the nearest other probe must round to the node distance.
    std::map<Node, double> by_node;
    for (const auto& [q, a] : trace.queries) by_node.emplace(q, a);

    Node best = -1;
    double best_a = std::numeric_limits<double>::infinity();
    for (Node q = l; q <= r; ++q) {
        const double a = by_node.at(q);
        if (a < best_a) { best_a = a; best = q; }
    }
    if (best < 0) return finish(std::move(trace), -1);
    for (const auto& [q, a] : by_node) {
        if (q != best && a <= best_a) return finish(std::move(trace), -1);
    }

    auto it = by_node.find(best);
    const auto left = (it == by_node.begin()) ? by_node.end() : std::prev(it);
    const auto right = std::next(it);
    const auto neigh = (left != by_node.end()) ? left : right;
    if (neigh == by_node.end()) return finish(std::move(trace), -1);
    const Node dist = std::llabs(best - neigh->first);
    if (std::llround(neigh->second - best_a) != dist)
        return finish(std::move(trace), -1);
    return finish(std::move(trace), best);
}

std::vector<Node> predicted_interval_sequence(Node n, double sigma, double c) {
    if (n < 3) throw std::invalid_argument("predicted_interval_sequence: n must be >= 3");
    if (!(c > 0.0)) throw std::invalid_argument("predicted_interval_sequence: c must be > 0");
    const Node floor_width = std::max<Node>(static_cast<Node>(std::ceil(2.0 * sigma * sigma)), 1);
    std::vector<Node> seq{n};
    Node d = n;
    while (d > floor_width) {
        const double dd = static_cast<double>(d);
        const Node next = static_cast<Node>(std::ceil(c * sigma * std::sqrt(dd) * std::log1p(dd)));
        if (next >= d) break;
        seq.push_back(next);
        d = next;
    }
    return seq;
}

} // namespace pathsource
