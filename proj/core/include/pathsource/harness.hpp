#pragma once
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathsource/adaptive.hpp"
#include "pathsource/diffusion.hpp"
#include "pathsource/nonadaptive.hpp"

namespace pathsource {

enum class Strategy { nonadaptive, adaptive, scan_all };

std::string to_string(Strategy s);
std::string to_string(Model m);
Strategy strategy_from_string(const std::string& s);
Model model_from_string(const std::string& s);

struct TrialSpec {
    std::string run_id;
    Strategy strategy = Strategy::nonadaptive;
    Model model = Model::S2;
    Node n = 0;
    double sigma = 0.0;
    double delta_or_p = 0.1; // delta for estimators; recorded as-is
    long trials = 192;
    std::uint64_t master_seed = 1;
    CMode c_mode = CMode::paper;
    double c_value = 2.0;
    WeightDist weight_dist = WeightDist::gaussian;
};

struct TrialRecord {
    std::string run_id;
    Strategy strategy = Strategy::nonadaptive;
    Model model = Model::S2;
    Node n = 0;
    double sigma = 0.0;
    double delta_or_p = 0.1;
    std::uint64_t master_seed = 1;
    long trial = 0;
    Node source = 0;
    Node estimate = -1; // -1 = failure sentinel
    int success = 0;
    Node queries = 0;
};

struct SweepAggregate {
    Strategy strategy = Strategy::nonadaptive;
    Model model = Model::S2;
    Node n = 0;
    double sigma = 0.0;
    double delta_or_p = 0.1;
    long trials = 0;
    double success_rate = 0.0;
    double mean_queries = 0.0;
    double median_queries = 0.0;
    double ci95_low = 0.0;  // two-sided Student-t interval on mean queries
    double ci95_high = 0.0;
};

// Runs `trials` seeded Monte Carlo trials; trial t uses stream_id = t.
// Deterministic for a fixed spec.
std::vector<TrialRecord> run_trials(const TrialSpec& spec);

// Mean/median/95% Student-t interval. With fewer than 2 records (or zero
// variance) the CI collapses to the mean.
SweepAggregate aggregate(const std::vector<TrialRecord>& records);

// Two-sided Student-t critical value for a 95% interval at nu dof.
double t_critical_95(long nu);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);
void write_aggregates_csv(std::ostream& os, const std::vector<SweepAggregate>& rows);

// Raised on sweep-config syntax errors; carries the 1-based line number
// (0 when not line-specific).
struct ConfigParseError : std::runtime_error {
    int line;
    ConfigParseError(int line_, const std::string& msg);
};

struct SweepConfig {
    std::vector<Strategy> strategies;
    std::vector<Model> models{Model::S2};
    std::vector<Node> n_list;
    std::vector<double> sigma_list;
    double delta = 0.1;
    bool has_p = false;
    double p = 0.0;
    long trials = 192;
    std::uint64_t master_seed = 1;
    CMode c_mode = CMode::paper;
    double c_value = 2.0;
    std::string out_dir;
    bool keep_raw = false;
};

// `key = value` lines, '#' comments, comma-separated lists.
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig parse_sweep_config_file(const std::string& path);

// Cartesian product of strategies x models x n_list x sigma_list. Writes
// aggregates.csv (rows sorted by strategy, model, n, sigma) and, with
// keep_raw, one raw trial CSV per cell, into out_dir.
std::vector<SweepAggregate> run_sweep(const SweepConfig& cfg, const std::string& out_dir);

} // namespace pathsource
