#include "pathsource/map_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pathsource {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_normal_pdf(double x, double mean, double var) {
    return -0.5 * std::log(2.0 * std::numbers::pi * var) -
           (x - mean) * (x - mean) / (2.0 * var);
}

void check_obs(const BracketObservation& obs) {
    if (obs.r - obs.l < 2)
        throw std::invalid_argument("BracketObservation: r - l must be >= 2");
    if (!(obs.sigma > 0.0))
        throw std::invalid_argument("BracketObservation: sigma must be > 0");
}

// Joint log-density of the answer pair at the bracketing queries given the
// source is at interior node v.
double bracket_log_density(const BracketObservation& obs, Node v) {
    const double s2 = obs.sigma * obs.sigma;
    const double dl = static_cast<double>(v - obs.l);
    const double dr = static_cast<double>(obs.r - v);
    return log_normal_pdf(obs.a_l, dl, dl * s2) + log_normal_pdf(obs.a_r, dr, dr * s2);
}

} // namespace

Posterior posterior(const BracketObservation& obs) {
    check_obs(obs);
    Posterior post;
    std::vector<double> logp;
    for (Node v = obs.l + 1; v <= obs.r - 1; ++v) {
        post.support.push_back(v);
        logp.push_back(bracket_log_density(obs, v));
    }
    double mx = kNegInf;
    for (double lp : logp) mx = std::max(mx, lp);
    if (mx == kNegInf || std::isnan(mx))
        throw std::runtime_error("posterior: degenerate (all densities underflowed)");
    double total = 0.0;
    post.probs.resize(logp.size());
    for (std::size_t i = 0; i < logp.size(); ++i) {
        post.probs[i] = std::exp(logp[i] - mx);
        total += post.probs[i];
    }
    for (double& p : post.probs) p /= total;
    return post;
}

Node map_estimate(const BracketObservation& obs) {
    const Posterior post = posterior(obs);
    std::size_t best = 0;
    for (std::size_t i = 1; i < post.probs.size(); ++i)
        if (post.probs[i] > post.probs[best]) best = i;
    return post.support[best];
}

double optimal_success_probability(Node d, Node k, double sigma,
                                   IntegrationMethod method, long resolution,
                                   const RngContract& rng) {
    if (d < 1 || k < 1) throw std::invalid_argument("optimal_success_probability: d, k must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("optimal_success_probability: sigma must be > 0");
    if (resolution < 16) throw std::invalid_argument("optimal_success_probability: resolution must be >= 16");
    if (k == 1) return 1.0; // a single hypothesis is always identified

    const double s2 = sigma * sigma;
    // Candidate i in 1..k sits at distances d+i and d+k-i from the two queries.
    const auto log_g = [&](Node i, double x, double y) {
        const double dl = static_cast<double>(d + i);
        const double dr = static_cast<double>(d + k - i);
        return log_normal_pdf(x, dl, dl * s2) + log_normal_pdf(y, dr, dr * s2);
    };

    if (method == IntegrationMethod::grid) {
        const double pad = 8.0 * sigma * std::sqrt(static_cast<double>(d + k));
        const double lo = static_cast<double>(d + 1) - pad;
        const double hi = static_cast<double>(d + k) + pad;
        const double h = (hi - lo) / static_cast<double>(resolution);
        double sum = 0.0;
        for (long ix = 0; ix < resolution; ++ix) {
            const double x = lo + (static_cast<double>(ix) + 0.5) * h;
            for (long iy = 0; iy < resolution; ++iy) {
                const double y = lo + (static_cast<double>(iy) + 0.5) * h;
                double mx = kNegInf;
                for (Node i = 1; i <= k; ++i) mx = std::max(mx, log_g(i, x, y));
                sum += std::exp(mx);
            }
        }
        return sum * h * h / static_cast<double>(k);
    }

    auto eng = make_engine(rng);
    std::uniform_int_distribution<Node> pick{1, k};
    long hits = 0;
    for (long s = 0; s < resolution; ++s) {
        const Node i = pick(eng);
        const double dl = static_cast<double>(d + i);
        const double dr = static_cast<double>(d + k - i);
        const double x = std::normal_distribution<double>{dl, sigma * std::sqrt(dl)}(eng);
        const double y = std::normal_distribution<double>{dr, sigma * std::sqrt(dr)}(eng);
        Node best = 1;
        double best_lp = log_g(1, x, y);
        for (Node j = 2; j <= k; ++j) {
            const double lp = log_g(j, x, y);
            if (lp > best_lp) { best_lp = lp; best = j; }
        }
        if (best == i) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(resolution);
}

double advantage_bound(Node d, Node k, double sigma) {
    if (d < 1 || k < 1) throw std::invalid_argument("advantage_bound: d, k must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("advantage_bound: sigma must be > 0");
    const double dk = static_cast<double>(d + k);
    return 2.0 * dk * std::exp(static_cast<double>(k * k) / (2.0 * dk * sigma * sigma)) /
           static_cast<double>(d);
}

} // namespace pathsource
