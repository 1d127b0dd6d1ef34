#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pathsource/harness.hpp"
#include "pathsource/map_oracle.hpp"
#include "pathsource/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitIoError = 4;

using namespace pathsource;

int cmd_simulate(const std::string& strategy, const std::string& model, Node n,
                 double sigma, double delta, double p, bool has_delta, bool has_p,
                 long trials, std::uint64_t seed, const std::string& out,
                 const std::string& c_mode, double c_value) {
    TrialSpec spec;
    spec.strategy = strategy_from_string(strategy);
    spec.model = model_from_string(model);
    spec.n = n;
    spec.sigma = sigma;
    if (has_delta == has_p && spec.strategy != Strategy::scan_all)
        throw CLI::ValidationError("exactly one of --delta / --p is required");
    spec.delta_or_p = has_p ? 1.0 - p : delta;
    spec.trials = trials;
    spec.master_seed = seed;
    spec.c_mode = (c_mode == "tuned") ? CMode::tuned : CMode::paper;
    spec.c_value = c_value;
    spec.run_id = "simulate";

    const auto records = run_trials(spec);
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out << '\n';
        return kExitIoError;
    }
    write_trials_csv(f, records);
    if (!f.good()) {
        std::cerr << "error: write failed: " << out << '\n';
        return kExitIoError;
    }
    const auto agg = aggregate(records);
    std::cout << "trials=" << agg.trials << " success_rate=" << agg.success_rate
              << " mean_queries=" << agg.mean_queries << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    SweepConfig cfg;
    try {
        cfg = parse_sweep_config_file(config_path);
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
    try {
        const auto rows = run_sweep(cfg, out_dir);
        std::cout << rows.size() << " cells -> " << out_dir << "/aggregates.csv\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
    return kExitOk;
}

void print_report(const TheoryReport& rep, bool csv) {
    if (csv) {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "n,sigma,delta,p,nonadaptive_ub,nonadaptive_lb,lb_k,lb_d,"
                      "lb_valid,adaptive_ub_steps,adaptive_scan_width,c_delta,c_lb,"
                      "d1,d2,d_cap,j_min,j_stop\n"
                      "%lld,%.17g,%.17g,%.17g,%lld,%.17g,%lld,%lld,%d,%ld,%lld,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%ld,%ld\n",
                      static_cast<long long>(rep.n), rep.sigma, rep.delta, rep.p,
                      static_cast<long long>(rep.nonadaptive_ub),
                      rep.nonadaptive_lb_queries, static_cast<long long>(rep.lb_k),
                      static_cast<long long>(rep.lb_d), rep.lb_valid ? 1 : 0,
                      rep.adaptive_ub_steps,
                      static_cast<long long>(rep.adaptive_scan_width), rep.c_delta,
                      rep.c_lb, rep.d1, rep.d2, rep.d_cap, rep.j_min, rep.j_stop);
        std::cout << buf;
        return;
    }
    const auto line = [](const char* key, auto value) {
        std::cout << key;
        for (int i = static_cast<int>(std::string(key).size()); i < 22; ++i)
            std::cout << ' ';
        std::cout << "= " << value << '\n';
    };
    line("n", rep.n);
    line("sigma", rep.sigma);
    line("delta", rep.delta);
    line("p", rep.p);
    line("log_base", rep.log_base == LogBase::two ? "2" : "e");
    line("nonadaptive_ub", rep.nonadaptive_ub);
    line("nonadaptive_lb", rep.nonadaptive_lb_queries);
    line("lb_k", rep.lb_k);
    line("lb_d", rep.lb_d);
    line("lb_valid", rep.lb_valid ? "true" : "false");
    line("adaptive_ub_steps", rep.adaptive_ub_steps);
    line("adaptive_scan_width", rep.adaptive_scan_width);
    line("c_delta", rep.c_delta);
    line("c_lb", rep.c_lb);
    line("d1", rep.d1);
    line("d2", rep.d2);
    line("d_cap", rep.d_cap);
    line("j_min", rep.j_min);
    line("j_stop", rep.j_stop);
    std::cout << "lambda                =";
    for (double l : rep.lambda) std::cout << ' ' << l;
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Source identification on the path: simulation and bounds"};
    app.require_subcommand(1);

    // simulate
    std::string s_strategy, s_model = "S2", s_out, s_cmode = "paper";
    Node s_n = 0;
    double s_sigma = 0.0, s_delta = 0.0, s_p = 0.0, s_cvalue = 2.0;
    long s_trials = 192;
    std::uint64_t s_seed = 1;
    auto* sim = app.add_subcommand("simulate", "Run seeded Monte Carlo trials");
    sim->add_option("--strategy", s_strategy)->required()
        ->check(CLI::IsMember({"nonadaptive", "adaptive", "scan_all"}));
    sim->add_option("--model", s_model)->check(CLI::IsMember({"S2", "S1"}));
    sim->add_option("--n", s_n)->required()->check(CLI::Range(Node{3}, Node{1} << 40));
    sim->add_option("--sigma", s_sigma)->required()->check(CLI::NonNegativeNumber);
    auto* sim_delta = sim->add_option("--delta", s_delta)->check(CLI::Range(1e-12, 0.4999));
    auto* sim_p = sim->add_option("--p", s_p)->check(CLI::Range(0.5001, 1.0));
    sim_delta->excludes(sim_p);
    sim->add_option("--trials", s_trials)->check(CLI::PositiveNumber);
    sim->add_option("--seed", s_seed);
    sim->add_option("--out", s_out)->required();
    sim->add_option("--c-mode", s_cmode)->check(CLI::IsMember({"paper", "tuned"}));
    sim->add_option("--c-value", s_cvalue)->check(CLI::PositiveNumber);

    // sweep
    std::string w_config, w_out;
    auto* swp = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
    swp->add_option("--config", w_config)->required();
    swp->add_option("--out", w_out)->required();

    // theory
    Node t_n = 0;
    double t_sigma = 0.0, t_delta = 0.0, t_p = 0.0;
    std::string t_base = "2";
    bool t_csv = false;
    auto* thy = app.add_subcommand("theory", "Evaluate closed-form bounds and constants");
    thy->add_option("--n", t_n)->required()->check(CLI::Range(Node{3}, Node{1} << 62));
    thy->add_option("--sigma", t_sigma)->required()->check(CLI::PositiveNumber);
    auto* thy_delta = thy->add_option("--delta", t_delta)->check(CLI::Range(1e-12, 1.0));
    auto* thy_p = thy->add_option("--p", t_p)->check(CLI::Range(1e-12, 1.0));
    thy_delta->excludes(thy_p);
    thy->add_option("--log-base", t_base)->check(CLI::IsMember({"2", "e"}));
    thy->add_flag("--csv", t_csv);

    // oracle
    Node o_d = 0, o_k = 0;
    double o_sigma = 0.0;
    std::string o_method = "grid";
    long o_resolution = 256, o_samples = 100000;
    auto* orc = app.add_subcommand("oracle", "Optimal-estimator success probability");
    orc->add_option("--d", o_d)->required()->check(CLI::PositiveNumber);
    orc->add_option("--k", o_k)->required()->check(CLI::PositiveNumber);
    orc->add_option("--sigma", o_sigma)->required()->check(CLI::PositiveNumber);
    orc->add_option("--method", o_method)->check(CLI::IsMember({"grid", "mc"}));
    orc->add_option("--resolution", o_resolution)->check(CLI::Range(16L, 100000L));
    orc->add_option("--samples", o_samples)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(s_strategy, s_model, s_n, s_sigma, s_delta, s_p,
                                sim_delta->count() > 0, sim_p->count() > 0, s_trials,
                                s_seed, s_out, s_cmode, s_cvalue);
        if (swp->parsed()) return cmd_sweep(w_config, w_out);
        if (thy->parsed()) {
            if (thy_delta->count() == thy_p->count()) {
                std::cerr << "error: exactly one of --delta / --p is required\n";
                return kExitBadArgs;
            }
            const bool is_p = thy_p->count() > 0;
            const auto rep = make_theory_report(
                t_n, t_sigma, is_p ? t_p : t_delta, is_p,
                t_base == "e" ? LogBase::e : LogBase::two);
            print_report(rep, t_csv);
            return kExitOk;
        }
        if (orc->parsed()) {
            const bool mc = o_method == "mc";
            const long res = mc ? o_samples : o_resolution;
            const double prob = optimal_success_probability(
                o_d, o_k, o_sigma,
                mc ? IntegrationMethod::monte_carlo : IntegrationMethod::grid, res);
            const double bound = advantage_bound(o_d, o_k, o_sigma);
            std::printf("optimal_success_probability = %.12g\n", prob);
            std::printf("k * success                 = %.12g\n",
                        static_cast<double>(o_k) * prob);
            std::printf("advantage_bound             = %.12g\n", bound);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
    return kExitBadArgs;
}
