#include "pathsource/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pathsource/adaptive.hpp"
#include "pathsource/nonadaptive.hpp"

namespace pathsource {

namespace {

double log_n(Node n, LogBase base) {
    const double nn = static_cast<double>(n);
    return base == LogBase::two ? std::log2(nn) : std::log(nn);
}

double tail_term(double d) {
    const double ld = std::log(d);
    return std::exp(-ld * ld / 2.0);
}

// Integral remainder of sum_{d>=M} exp(-(ln d)^2/2): substituting u = ln x
// gives sqrt(2 pi e) * (1 - Phi(ln M - 1)).
double tail_remainder(double m) {
    const double z = std::log(m) - 1.0;
    return std::sqrt(2.0 * std::numbers::pi * std::numbers::e) * 0.5 *
           std::erfc(z / std::numbers::sqrt2);
}

} // namespace

NonAdaptiveLowerBound nonadaptive_lb(Node n, double sigma, double p) {
    if (n < 3) throw std::invalid_argument("nonadaptive_lb: n must be >= 3");
    if (!(sigma > 0.0)) throw std::invalid_argument("nonadaptive_lb: sigma must be > 0");
    if (!(p > 1.0 / static_cast<double>(n) && p <= 1.0))
        throw std::invalid_argument("nonadaptive_lb: p must be in (1/n, 1]");

    NonAdaptiveLowerBound lb;
    lb.k = static_cast<Node>(std::ceil(16.0 * std::numbers::e / p));
    const double kk = static_cast<double>(lb.k);
    const double dd = std::ceil(kk * kk / (2.0 * sigma * sigma * std::log(p * kk / 8.0)));
    lb.d = std::max(static_cast<Node>(dd), lb.k);
    lb.bound = std::max(1.0, (p * static_cast<double>(n) - 2.0 * kk) /
                                 (8.0 * static_cast<double>(lb.d)));
    lb.valid = kk <= p * static_cast<double>(n) / 4.0;
    return lb;
}

double reduce(Node n, double sigma, double x, LogBase base) {
    if (n < 3) throw std::invalid_argument("reduce: n must be >= 3");
    if (x <= 1.0) return 0.0;
    return sigma * std::sqrt(x) / (400.0 * std::log(x) * log_n(n, base));
}

Node d1(double delta1) {
    if (!(delta1 > 0.0 && delta1 < 1.0))
        throw std::invalid_argument("d1: delta1 must be in (0, 1)");
    const double target = delta1 / 2.0;

    // Sum the series until terms drop below 1e-16, close with the integral
    // remainder, then peel terms off the front to find the minimal k.
    double m = 3.0;
    double tail = 0.0;
    while (true) {
        const double t = tail_term(m);
        if (t < 1e-16) break;
        tail += t;
        m += 1.0;
    }
    tail += tail_remainder(m);

    Node k = 3;
    while (tail > target) {
        tail -= tail_term(static_cast<double>(k));
        ++k;
        if (k > 100'000'000)
            throw std::runtime_error("d1: no k found (delta1 too small)");
    }
    return k;
}

double d2(double delta2, double eps, double sigma) {
    if (!(delta2 > 0.0 && delta2 < 1.0))
        throw std::invalid_argument("d2: delta2 must be in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("d2: eps must be in (0, 1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("d2: sigma must be > 0");
    const double ratio = eps * eps / (2.0 * sigma * sigma);
    if (ratio >= 1.0)
        return std::log(2.0 / (delta2 * (1.0 - 1.0 / std::numbers::e)));
    return (1.0 / ratio) * std::log(4.0 * sigma * sigma / (eps * eps * delta2));
}

double d_cap(double sigma, double delta) {
    const double third = delta / 3.0;
    return std::max({static_cast<double>(d1(third)), d2(third, 0.25, sigma),
                     sigma * sigma, std::numbers::e * std::numbers::e});
}

LambdaSequence lambda_sequence(Node n, double sigma, double p, LogBase base) {
    if (n < 3) throw std::invalid_argument("lambda_sequence: n must be >= 3");
    if (!(sigma > 0.0)) throw std::invalid_argument("lambda_sequence: sigma must be > 0");
    if (!(p > 1.0 / static_cast<double>(n) && p <= 1.0))
        throw std::invalid_argument("lambda_sequence: p must be in (1/n, 1]");

    LambdaSequence seq;
    seq.d_cap = d_cap(sigma, p / 2.0);
    const double c_lb = 8.0 / (p / 2.0);
    double lambda = static_cast<double>(n) / c_lb;
    seq.lambda.push_back(lambda);
    long j = 0;
    while (lambda >= seq.d_cap) {
        lambda = reduce(n, sigma, lambda, base);
        seq.lambda.push_back(lambda);
        ++j;
    }
    seq.j_min = j; // first index with lambda_j < d_cap
    const long cap = static_cast<long>(std::floor(p * log_n(n, base) / 2.0));
    seq.j_stop = std::min(seq.j_min - 1, cap);
    return seq;
}

Node nonadaptive_ub_queries(Node n, double sigma, double delta) {
    return plan_query_count(n, sigma, delta);
}

AdaptiveUpperBound adaptive_ub_steps(Node n, double sigma, double delta) {
    AdaptiveUpperBound ub;
    if (sigma == 0.0) { // noiseless: one refinement collapses the interval
        ub.steps = 1;
        ub.scan_width = 0;
        return ub;
    }
    const auto seq = predicted_interval_sequence(n, sigma, c_of_delta(delta));
    ub.steps = static_cast<long>(seq.size()) - 1;
    ub.scan_width = seq.back();
    return ub;
}

TheoryReport make_theory_report(Node n, double sigma, double delta_or_p,
                                bool given_is_p, LogBase base) {
    TheoryReport rep;
    rep.n = n;
    rep.sigma = sigma;
    rep.log_base = base;
    if (given_is_p) {
        rep.p = delta_or_p;
        rep.delta = 1.0 - delta_or_p;
    } else {
        rep.delta = delta_or_p;
        rep.p = 1.0 - delta_or_p;
    }
    if (!(rep.delta > 0.0 && rep.delta < 0.5))
        rep.delta = std::clamp(rep.delta, 1e-9, 0.499999); // keep UB formulas defined
    rep.nonadaptive_ub = nonadaptive_ub_queries(n, sigma, rep.delta);
    const auto lb = nonadaptive_lb(n, sigma, rep.p);
    rep.nonadaptive_lb_queries = lb.bound;
    rep.lb_k = lb.k;
    rep.lb_d = lb.d;
    rep.lb_valid = lb.valid;
    const auto ub = adaptive_ub_steps(n, sigma, rep.delta);
    rep.adaptive_ub_steps = ub.steps;
    rep.adaptive_scan_width = ub.scan_width;
    rep.c_delta = c_of_delta(rep.delta);
    const double half_p = rep.p / 2.0;
    rep.c_lb = 8.0 / half_p;
    rep.d1 = static_cast<double>(d1(half_p / 3.0));
    rep.d2 = d2(half_p / 3.0, 0.25, sigma);
    rep.d_cap = d_cap(sigma, half_p);
    const auto seq = lambda_sequence(n, sigma, rep.p, base);
    rep.lambda = seq.lambda;
    rep.j_min = seq.j_min;
    rep.j_stop = seq.j_stop;
    return rep;
}

} // namespace pathsource
