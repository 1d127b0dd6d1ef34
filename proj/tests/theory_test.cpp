#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pathsource/theory.hpp"

using namespace pathsource;

namespace {

// Independent tail oracle for sum_{d >= k} d^{-(ln d)/2}, summed until terms
// vanish at long-double precision.
long double tail_sum(Node k) {
    long double s = 0.0L;
    for (long double d = static_cast<long double>(k);; d += 1.0L) {
        const long double ld = std::log(d);
        const long double t = std::exp(-ld * ld / 2.0L);
        s += t;
        if (t < 1e-22L && d > 1e7L) break;
        if (d > 5e7L) break;
    }
    return s;
}

} // namespace

TEST_CASE("nonadaptive lower bound constants at p = 1/2") {
    const auto lb = nonadaptive_lb(1'000'000, 1.0, 0.5);
    CHECK(lb.k == 87); // ceil(16e / 0.5), 16e = 43.49...
    CHECK(lb.d == 2235);
    CHECK(lb.bound == doctest::Approx((0.5 * 1e6 - 174.0) / (8.0 * 2235.0)).epsilon(1e-12));
    CHECK(lb.bound == doctest::Approx(27.96).epsilon(1e-3));
    CHECK(lb.valid);
    CHECK_THROWS_AS(nonadaptive_lb(1000, 1.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(nonadaptive_lb(1000, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("lower bound count is floored at one") {
    const auto lb = nonadaptive_lb(1000, 1.0, 0.5);
    CHECK(lb.bound == 1.0); // pn - 2k is negative at this n
    CHECK(lb.valid);        // k = 87 <= pn/4 = 125 still holds here
    const auto tiny = nonadaptive_lb(500, 1.0, 0.5);
    CHECK_FALSE(tiny.valid); // pn/4 = 62.5 < k
    CHECK(tiny.bound == 1.0);
}

TEST_CASE("reduce") {
    CHECK(reduce(1000, 1.0, 1.0) == 0.0);
    CHECK(reduce(1000, 1.0, 0.5) == 0.0);
    const double expect = 1000.0 / (400.0 * std::log(1e6) * 20.0);
    CHECK(reduce(Node{1} << 20, 1.0, 1e6) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(reduce(Node{1} << 20, 1.0, 1e6) == doctest::Approx(0.009047).epsilon(1e-3));
    // Increasing on x >= e^2.
    double prev = 0.0;
    for (double x = 7.5; x < 1e9; x *= 3.0) {
        const double r = reduce(100000, 1.0, x);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("d1 minimality and monotonicity") {
    const Node k03 = d1(0.3);
    const Node k001 = d1(0.01);
    CHECK(k001 >= k03);
    CHECK(k03 >= 3);
    for (double delta1 : {0.3, 0.1}) {
        const Node k = d1(delta1);
        CHECK(tail_sum(k) <= static_cast<long double>(delta1) / 2.0L);
        if (k > 3) CHECK(tail_sum(k - 1) > static_cast<long double>(delta1) / 2.0L);
    }
    CHECK_THROWS_AS(d1(0.0), std::invalid_argument);
}

TEST_CASE("d2 branch selection") {
    // sigma = 1, eps = 1/4, delta2 = 0.5/6: ratio 1/32 < 1.
    const double expect = 32.0 * std::log(64.0 * 12.0);
    CHECK(d2(0.5 / 6.0, 0.25, 1.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(d2(0.5 / 6.0, 0.25, 1.0) == doctest::Approx(212.6).epsilon(1e-3));
    // sigma = 0.1, eps = 0.9: ratio 40.5 >= 1, constant branch.
    const double delta2 = 0.05;
    const double other = std::log(2.0 / (delta2 * (1.0 - 1.0 / std::numbers::e)));
    CHECK(d2(delta2, 0.9, 0.1) == doctest::Approx(other).epsilon(1e-12));
    CHECK_THROWS_AS(d2(0.1, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("d_cap dominates sigma^2 and e^2") {
    const double e2 = std::numbers::e * std::numbers::e;
    for (double sigma : {0.1, 1.0, 10.0}) {
        for (double delta : {0.1, 0.25}) {
            const double D = d_cap(sigma, delta);
            CHECK(D >= e2);
            CHECK(D >= sigma * sigma);
        }
    }
    CHECK(d_cap(10.0, 0.25) >= 100.0);
    const double composed =
        std::max({static_cast<double>(d1(0.25 / 3.0)), d2(0.25 / 3.0, 0.25, 1.0), 1.0, e2});
    CHECK(d_cap(1.0, 0.25) == composed);
}

TEST_CASE("lambda sequence starts at np/16 and strictly decreases") {
    const Node n = 1'000'000'000;
    const auto seq = lambda_sequence(n, 1.0, 0.5);
    REQUIRE(!seq.lambda.empty());
    CHECK(seq.lambda[0] == doctest::Approx(static_cast<double>(n) * 0.5 / 16.0).epsilon(1e-12));
    for (std::size_t j = 1; j < seq.lambda.size(); ++j)
        CHECK(seq.lambda[j] < seq.lambda[j - 1]);
    CHECK(seq.lambda.back() < seq.d_cap);
    CHECK(seq.j_stop <= seq.j_min - 1);
}

TEST_CASE("j_stop grows slowly in n (log log signature)") {
    const auto a = lambda_sequence(1'000'000'000'000LL, 1.0, 0.5);
    const auto b = lambda_sequence(1000, 1.0, 0.5);
    CHECK(a.j_stop >= b.j_stop);
    const long diff = a.j_stop - b.j_stop;
    CHECK(diff >= 1);
    CHECK(diff <= 6);
}

TEST_CASE("upper-bound wrappers delegate") {
    CHECK(nonadaptive_ub_queries(1'000'000, std::sqrt(0.001), 0.1) == 66'667);
    const auto noiseless = adaptive_ub_steps(1000, 0.0, 0.1);
    CHECK(noiseless.steps == 1);
    CHECK(noiseless.scan_width == 0);
    const auto ub = adaptive_ub_steps(1'000'000, 1.0, 0.1);
    CHECK(ub.steps >= 2);
    CHECK(ub.scan_width > 0);
    CHECK(ub.scan_width < 1'000'000);
}

TEST_CASE("lower bound never exceeds the plan size on its validity range") {
    for (Node n : {Node{100000}, Node{1000000}, Node{100000000}}) {
        for (double sigma : {0.5, 1.0, 2.0}) {
            for (double p : {0.6, 0.9}) {
                const auto lb = nonadaptive_lb(n, sigma, p);
                if (!lb.valid) continue;
                const double ub =
                    static_cast<double>(nonadaptive_ub_queries(n, sigma, 1.0 - p));
                CHECK(lb.bound <= ub);
            }
        }
    }
}

TEST_CASE("theory report is internally coherent") {
    const auto rep = make_theory_report(1'000'000, 1.0, 0.1, false);
    CHECK(rep.delta == 0.1);
    CHECK(rep.p == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(rep.nonadaptive_ub == nonadaptive_ub_queries(1'000'000, 1.0, 0.1));
    CHECK(rep.c_delta == doctest::Approx(std::sqrt(4.0 * std::log2(1140.0))).epsilon(1e-12));
    CHECK(rep.c_lb == doctest::Approx(8.0 / 0.45).epsilon(1e-12));
    CHECK(rep.j_stop == std::min(rep.j_min - 1,
                                 static_cast<long>(std::floor(0.9 * std::log2(1e6) / 2.0))));
    REQUIRE(!rep.lambda.empty());
    CHECK(rep.lambda[0] == doctest::Approx(1e6 * 0.9 / 16.0).epsilon(1e-12));

    const auto rep_p = make_theory_report(1'000'000, 1.0, 0.9, true);
    CHECK(rep_p.delta == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(rep_p.nonadaptive_ub == rep.nonadaptive_ub);
}
