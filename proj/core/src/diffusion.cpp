#include "pathsource/diffusion.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsource {

PathInstance sample_instance(Node n, double sigma, WeightDist weight_dist,
                             const RngContract& rng,
                             std::optional<Node> fixed_source,
                             double s1_offset) {
    if (n < 3) throw std::invalid_argument("sample_instance: n must be >= 3");
    if (sigma < 0.0 || !std::isfinite(sigma))
        throw std::invalid_argument("sample_instance: sigma must be >= 0");
    if (fixed_source && (*fixed_source < 1 || *fixed_source > n))
        throw std::invalid_argument("sample_instance: fixed_source out of range");

    PathInstance inst;
    inst.n = n;
    inst.sigma = sigma;
    inst.t_start = s1_offset;
    inst.weight_dist = weight_dist;

    auto eng = make_engine(rng);
    if (fixed_source) {
        inst.source = *fixed_source;
    } else {
        inst.source = std::uniform_int_distribution<Node>{1, n}(eng);
    }

    inst.prefix.resize(static_cast<std::size_t>(n));
    inst.prefix[0] = 0.0;
    if (sigma == 0.0) {
        for (Node i = 1; i < n; ++i)
            inst.prefix[static_cast<std::size_t>(i)] = static_cast<double>(i);
        return inst;
    }

    std::normal_distribution<double> gauss{1.0, sigma};
    const double half_width = std::sqrt(3.0) * sigma;
    std::uniform_real_distribution<double> unif{1.0 - half_width, 1.0 + half_width};

    double acc = 0.0;
    for (Node i = 1; i < n; ++i) {
        double w;
        switch (weight_dist) {
            case WeightDist::gaussian:
                w = gauss(eng);
                break;
            case WeightDist::uniform:
                w = unif(eng);
                break;
            case WeightDist::truncated_gaussian:
                do { w = gauss(eng); } while (w <= 0.0);
                break;
            default:
                throw std::invalid_argument("sample_instance: unknown weight_dist");
        }
        acc += w;
        inst.prefix[static_cast<std::size_t>(i)] = acc;
    }
    return inst;
}

double answer(const PathInstance& inst, Node q) {
    if (q < 1 || q > inst.n)
        throw std::invalid_argument("answer: query node out of range");
    const Node lo = std::min(q, inst.source);
    const Node hi = std::max(q, inst.source);
    return inst.prefix[static_cast<std::size_t>(hi - 1)] -
           inst.prefix[static_cast<std::size_t>(lo - 1)] + inst.t_start;
}

std::pair<double, int> answer_with_direction(const PathInstance& inst, Node q) {
    const double a = answer(inst, q);
    int dir = 0;
    if (inst.source < q) dir = -1;
    else if (inst.source > q) dir = +1;
    return {a, dir};
}

double gaussian_tail_bound(double a, double sigma2) {
    if (a < 0.0) throw std::invalid_argument("gaussian_tail_bound: a must be >= 0");
    if (sigma2 <= 0.0) throw std::invalid_argument("gaussian_tail_bound: sigma2 must be > 0");
    return std::exp(-a * a / (2.0 * sigma2));
}

} // namespace pathsource
