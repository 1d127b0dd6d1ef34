#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pathsource/map_oracle.hpp"

using namespace pathsource;

namespace {

// Independent long-double density oracle for cross-checking the posterior.
long double ref_density(Node l, Node r, double a_l, double a_r, double sigma, Node v) {
    const long double s2 = static_cast<long double>(sigma) * sigma;
    const auto phi = [&](long double x, long double dist) {
        return std::exp(-(x - dist) * (x - dist) / (2.0L * dist * s2)) /
               std::sqrt(2.0L * std::numbers::pi_v<long double> * dist * s2);
    };
    return phi(a_l, static_cast<long double>(v - l)) *
           phi(a_r, static_cast<long double>(r - v));
}

} // namespace

TEST_CASE("posterior symmetry for symmetric observations") {
    const BracketObservation obs{10, 20, 5.0, 5.0, 1.0};
    const auto post = posterior(obs);
    REQUIRE(post.support.size() == 9);
    for (int j = 1; j <= 4; ++j) {
        CHECK(post.probs[4 - j] == doctest::Approx(post.probs[4 + j]).epsilon(1e-12));
    }
    CHECK(map_estimate(obs) == 15);
}

TEST_CASE("posterior matches a high-precision density oracle") {
    const BracketObservation obs{10, 20, 3.0, 7.0, 1.0};
    const auto post = posterior(obs);
    REQUIRE(post.support.size() == 9);
    long double total = 0.0L;
    std::vector<long double> ref;
    for (Node v = 11; v <= 19; ++v) {
        ref.push_back(ref_density(10, 20, 3.0, 7.0, 1.0, v));
        total += ref.back();
    }
    Node ref_argmax = 11;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(post.probs[i] ==
              doctest::Approx(static_cast<double>(ref[i] / total)).epsilon(1e-10));
        if (ref[i] > ref[static_cast<std::size_t>(ref_argmax - 11)]) ref_argmax = 11 + static_cast<Node>(i);
    }
    CHECK(map_estimate(obs) == ref_argmax);
    CHECK(map_estimate(obs) == 13);
}

TEST_CASE("noiseless limit concentrates on the consistent node") {
    const BracketObservation obs{10, 20, 4.0, 6.0, 1e-6};
    const auto post = posterior(obs);
    CHECK(post.probs[3] >= 1.0 - 1e-9); // node 14
    CHECK(map_estimate(obs) == 14);
}

TEST_CASE("posterior normalization and validation") {
    for (double al : {0.5, 3.0, 9.5}) {
        const BracketObservation obs{1, 12, al, 11.5 - al, 0.8};
        const auto post = posterior(obs);
        double sum = 0.0;
        for (double p : post.probs) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(posterior({10, 11, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(posterior({10, 20, 1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("optimal success probability basics") {
    CHECK(optimal_success_probability(10, 1, 1.0, IntegrationMethod::grid, 64) == 1.0);
    for (Node k : {2, 5}) {
        const double p = optimal_success_probability(20, k, 2.0, IntegrationMethod::grid, 256);
        CHECK(p >= 1.0 / static_cast<double>(k) - 1e-6);
        CHECK(p <= 1.0 + 1e-6);
    }
    CHECK_THROWS_AS(optimal_success_probability(10, 2, 1.0, IntegrationMethod::grid, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_success_probability(0, 2, 1.0, IntegrationMethod::grid, 64),
                    std::invalid_argument);
}

TEST_CASE("grid and monte carlo agree and respect the advantage bound") {
    const Node d = 50, k = 4;
    const double sigma = 1.0;
    const double g = optimal_success_probability(d, k, sigma, IntegrationMethod::grid, 512);
    const double m =
        optimal_success_probability(d, k, sigma, IntegrationMethod::monte_carlo, 200000);
    CHECK(std::abs(g - m) <= 0.01);
    CHECK(static_cast<double>(k) * g <= advantage_bound(d, k, sigma));
}

TEST_CASE("advantage bound closed form") {
    // d = k with a huge sigma: exponent vanishes, bound tends to 4.
    CHECK(advantage_bound(7, 7, 1e9) == doctest::Approx(4.0).epsilon(1e-9));
    const double expect = 2.0 * 54.0 * std::exp(16.0 / 108.0) / 50.0;
    CHECK(advantage_bound(50, 4, 1.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(advantage_bound(50, 4, 1.0) == doctest::Approx(2.504).epsilon(1e-3));
    CHECK_THROWS_AS(advantage_bound(0, 4, 1.0), std::invalid_argument);
}

TEST_CASE("domination sweep: k * success <= bound") {
    for (Node d : {10, 50, 200}) {
        for (Node k : {2, 4, 8}) {
            for (double sigma : {0.5, 1.0, 2.0}) {
                const double p =
                    optimal_success_probability(d, k, sigma, IntegrationMethod::grid, 256);
                CHECK(static_cast<double>(k) * p <= advantage_bound(d, k, sigma) + 1e-9);
            }
        }
    }
}
