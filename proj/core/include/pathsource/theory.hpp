#pragma once
#include <cstdint>
#include <vector>

#include "pathsource/diffusion.hpp"

namespace pathsource {

enum class LogBase { two, e };

struct NonAdaptiveLowerBound {
    Node k = 0;
    Node d = 0;
    double bound = 1.0; // floored at 1
    bool valid = false; // k <= p n / 4
};

// k = ceil(16 e / p), d = max(ceil(k^2 / (2 sigma^2 ln(p k / 8))), k),
// bound = max(1, (p n - 2k) / (8 d)).
NonAdaptiveLowerBound nonadaptive_lb(Node n, double sigma, double p);

// sigma sqrt(x) / (400 ln(x) log(n)); 0 for x <= 1. The base of log(n) is
// selectable for sensitivity checks (default 2).
double reduce(Node n, double sigma, double x, LogBase base = LogBase::two);

struct LambdaSequence {
    std::vector<double> lambda; // lambda_0 .. lambda_{j_min} (first value below D)
    long j_min = 0;  // first index with lambda_j < D(sigma, p/2)
    long j_stop = 0; // min(j_min - 1, floor(p log n / 2))
    double d_cap = 0.0;
};

// Benchmark recursion lambda_0 = n p / 16, lambda_{j+1} = reduce(lambda_j),
// iterated until it drops below D(sigma, p/2).
LambdaSequence lambda_sequence(Node n, double sigma, double p,
                               LogBase base = LogBase::two);

// Smallest k >= 3 with sum_{d=k}^inf d^{-(ln d)/2} <= delta1 / 2. The tail is
// summed directly down to 1e-16 terms plus an integral remainder bound.
Node d1(double delta1);

// Two-branch threshold: (2 sigma^2 / eps^2) ln(4 sigma^2 / (eps^2 delta2))
// when eps^2/(2 sigma^2) <= 1, otherwise ln(2 / (delta2 (1 - 1/e))).
double d2(double delta2, double eps, double sigma);

// D(sigma, delta) = max(d1(delta/3), d2(delta/3, 1/4, sigma), sigma^2, e^2).
double d_cap(double sigma, double delta);

// Plan size floor((n-1)/d)+1 with d from the non-adaptive spacing rule.
Node nonadaptive_ub_queries(Node n, double sigma, double delta);

struct AdaptiveUpperBound {
    long steps = 0;      // refinement rounds before the fixed point
    Node scan_width = 0; // final element of the predicted width recursion
};

AdaptiveUpperBound adaptive_ub_steps(Node n, double sigma, double delta);

// Every closed-form constant and bound evaluated for one (n, sigma, delta/p).
struct TheoryReport {
    Node n = 0;
    double sigma = 0.0;
    double delta = 0.0;
    double p = 0.0;
    LogBase log_base = LogBase::two;
    Node nonadaptive_ub = 0;
    double nonadaptive_lb_queries = 1.0;
    Node lb_k = 0;
    Node lb_d = 0;
    bool lb_valid = false;
    long adaptive_ub_steps = 0;
    Node adaptive_scan_width = 0;
    double c_delta = 0.0; // sqrt(4 log2(114/delta))
    double c_lb = 0.0;    // 8 / (p/2)
    double d1 = 0.0;
    double d2 = 0.0;
    double d_cap = 0.0;
    std::vector<double> lambda;
    long j_min = 0;
    long j_stop = 0;
};

// Builds the full report. Exactly one of delta/p is given; the other is
// filled as its complement (p = 1 - delta).
TheoryReport make_theory_report(Node n, double sigma, double delta_or_p,
                                bool given_is_p, LogBase base = LogBase::two);

} // namespace pathsource
