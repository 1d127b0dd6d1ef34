#include "pathsource/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

namespace pathsource {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::nonadaptive: return "nonadaptive";
        case Strategy::adaptive: return "adaptive";
        case Strategy::scan_all: return "scan_all";
    }
    return "?";
}

std::string to_string(Model m) { return m == Model::S2 ? "S2" : "S1"; }

Strategy strategy_from_string(const std::string& s) {
    if (s == "nonadaptive") return Strategy::nonadaptive;
    if (s == "adaptive") return Strategy::adaptive;
    if (s == "scan_all") return Strategy::scan_all;
    throw std::invalid_argument("unknown strategy: " + s);
}

Model model_from_string(const std::string& s) {
    if (s == "S2" || s == "s2") return Model::S2;
    if (s == "S1" || s == "s1") return Model::S1;
    throw std::invalid_argument("unknown model: " + s);
}

namespace {

void validate_spec(const TrialSpec& spec) {
    if (spec.n < 3) throw std::invalid_argument("spec field n: must be >= 3");
    if (spec.sigma < 0.0) throw std::invalid_argument("spec field sigma: must be >= 0");
    if (spec.trials < 1) throw std::invalid_argument("spec field trials: must be >= 1");
    if (spec.strategy != Strategy::scan_all &&
        !(spec.delta_or_p > 0.0 && spec.delta_or_p < 0.5))
        throw std::invalid_argument("spec field delta: must be in (0, 1/2)");
}

// Dedicated stream for S1 start-time offsets, decorrelated from the
// instance stream of the same trial.
double draw_s1_offset(const TrialSpec& spec, long trial) {
    auto eng = make_engine({spec.master_seed ^ 0x5151515151515151ULL,
                            static_cast<std::uint64_t>(trial)});
    return std::uniform_real_distribution<double>{0.0, 100.0}(eng);
}

void run_one(const TrialSpec& spec, long trial, const PathInstance& inst,
             TrialRecord& rec) {
    switch (spec.strategy) {
        case Strategy::nonadaptive: {
            const auto plan = build_plan(inst.n, spec.sigma, spec.delta_or_p, spec.model);
            std::vector<double> answers;
            answers.reserve(plan.query_nodes.size());
            for (Node q : plan.query_nodes) answers.push_back(answer(inst, q));
            rec.estimate = (spec.model == Model::S2) ? estimate_s2(plan, answers)
                                                     : estimate_s1(plan, answers);
            rec.queries = static_cast<Node>(plan.query_nodes.size());
            break;
        }
        case Strategy::adaptive: {
            AdaptiveConfig cfg;
            cfg.delta = spec.delta_or_p;
            cfg.c_mode = spec.c_mode;
            cfg.c_value = spec.c_value;
            cfg.model = spec.model;
            const QueryFn oracle = [&inst](Node q) { return answer(inst, q); };
            const auto res = (spec.model == Model::S2)
                                 ? search_s2(oracle, inst.n, spec.sigma, cfg)
                                 : search_s1(oracle, inst.n, spec.sigma, cfg);
            rec.estimate = res.estimate;
            rec.queries = res.trace.total_queries;
            break;
        }
        case Strategy::scan_all: {
            if (spec.model == Model::S2) {
                // Left-to-right scan; the source is the unique zero answer.
                for (Node q = 1; q <= inst.n; ++q) {
                    if (answer(inst, q) == 0.0) {
                        rec.estimate = q;
                        rec.queries = q;
                        break;
                    }
                }
            } else {
                // No absolute zero under an unknown offset: query everything
                // and take the argmin.
                Node best = 1;
                double best_a = answer(inst, 1);
                for (Node q = 2; q <= inst.n; ++q) {
                    const double a = answer(inst, q);
                    if (a < best_a) { best_a = a; best = q; }
                }
                rec.estimate = best;
                rec.queries = inst.n;
            }
            break;
        }
    }
    (void)trial;
}

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::vector<TrialRecord> run_trials(const TrialSpec& spec) {
    validate_spec(spec);
    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(spec.trials));
    for (long t = 0; t < spec.trials; ++t) {
        const double offset = (spec.model == Model::S1) ? draw_s1_offset(spec, t) : 0.0;
        const auto inst = sample_instance(
            spec.n, spec.sigma, spec.weight_dist,
            {spec.master_seed, static_cast<std::uint64_t>(t)}, std::nullopt, offset);
        TrialRecord rec;
        rec.run_id = spec.run_id;
        rec.strategy = spec.strategy;
        rec.model = spec.model;
        rec.n = spec.n;
        rec.sigma = spec.sigma;
        rec.delta_or_p = spec.delta_or_p;
        rec.master_seed = spec.master_seed;
        rec.trial = t;
        rec.source = inst.source;
        run_one(spec, t, inst, rec);
        rec.success = (rec.estimate == rec.source) ? 1 : 0;
        records.push_back(std::move(rec));
    }
    return records;
}

double t_critical_95(long nu) {
    boost::math::students_t_distribution<double> dist(static_cast<double>(nu));
    return boost::math::quantile(dist, 0.975);
}

SweepAggregate aggregate(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    SweepAggregate agg;
    const auto& first = records.front();
    agg.strategy = first.strategy;
    agg.model = first.model;
    agg.n = first.n;
    agg.sigma = first.sigma;
    agg.delta_or_p = first.delta_or_p;
    agg.trials = static_cast<long>(records.size());

    long successes = 0;
    std::vector<double> queries;
    queries.reserve(records.size());
    for (const auto& r : records) {
        successes += r.success;
        queries.push_back(static_cast<double>(r.queries));
    }
    agg.success_rate = static_cast<double>(successes) / static_cast<double>(agg.trials);

    double sum = 0.0;
    for (double q : queries) sum += q;
    agg.mean_queries = sum / static_cast<double>(agg.trials);

    std::sort(queries.begin(), queries.end());
    const std::size_t m = queries.size();
    agg.median_queries = (m % 2 == 1) ? queries[m / 2]
                                      : (queries[m / 2 - 1] + queries[m / 2]) / 2.0;

    if (agg.trials >= 2) {
        double ss = 0.0;
        for (double q : queries) ss += (q - agg.mean_queries) * (q - agg.mean_queries);
        const double sd = std::sqrt(ss / static_cast<double>(agg.trials - 1));
        const double half = (sd > 0.0)
                                ? t_critical_95(agg.trials - 1) * sd /
                                      std::sqrt(static_cast<double>(agg.trials))
                                : 0.0;
        agg.ci95_low = agg.mean_queries - half;
        agg.ci95_high = agg.mean_queries + half;
    } else {
        agg.ci95_low = agg.ci95_high = agg.mean_queries;
    }
    return agg;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "run_id,strategy,model,n,sigma,delta_or_p,master_seed,trial,source,"
          "estimate,success,queries\n";
    for (const auto& r : records) {
        os << r.run_id << ',' << to_string(r.strategy) << ',' << to_string(r.model)
           << ',' << r.n << ',' << fmt_real(r.sigma) << ',' << fmt_real(r.delta_or_p)
           << ',' << r.master_seed << ',' << r.trial << ',' << r.source << ','
           << r.estimate << ',' << r.success << ',' << r.queries << '\n';
    }
}

void write_aggregates_csv(std::ostream& os, const std::vector<SweepAggregate>& rows) {
    os << "strategy,model,n,sigma,delta_or_p,trials,success_rate,mean_queries,"
          "median_queries,ci95_low,ci95_high\n";
    for (const auto& a : rows) {
        os << to_string(a.strategy) << ',' << to_string(a.model) << ',' << a.n << ','
           << fmt_real(a.sigma) << ',' << fmt_real(a.delta_or_p) << ',' << a.trials
           << ',' << fmt_real(a.success_rate) << ',' << fmt_real(a.mean_queries)
           << ',' << fmt_real(a.median_queries) << ',' << fmt_real(a.ci95_low) << ','
           << fmt_real(a.ci95_high) << '\n';
    }
}

ConfigParseError::ConfigParseError(int line_, const std::string& msg)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg
                                   : msg),
      line(line_) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

SweepConfig parse_sweep_config(std::istream& is) {
    SweepConfig cfg;
    bool saw_strategies = false, saw_n = false, saw_sigma = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "strategies") {
                cfg.strategies.clear();
                for (const auto& s : split_list(val))
                    cfg.strategies.push_back(strategy_from_string(s));
                saw_strategies = true;
            } else if (key == "models") {
                cfg.models.clear();
                for (const auto& s : split_list(val))
                    cfg.models.push_back(model_from_string(s));
            } else if (key == "n_list") {
                cfg.n_list.clear();
                for (const auto& s : split_list(val)) cfg.n_list.push_back(std::stoll(s));
                saw_n = true;
            } else if (key == "sigma_list") {
                cfg.sigma_list.clear();
                for (const auto& s : split_list(val)) cfg.sigma_list.push_back(std::stod(s));
                saw_sigma = true;
            } else if (key == "delta") {
                cfg.delta = std::stod(val);
            } else if (key == "p") {
                cfg.p = std::stod(val);
                cfg.has_p = true;
            } else if (key == "trials") {
                cfg.trials = std::stol(val);
            } else if (key == "master_seed") {
                cfg.master_seed = std::stoull(val);
            } else if (key == "c_mode") {
                if (val == "paper") cfg.c_mode = CMode::paper;
                else if (val == "tuned") cfg.c_mode = CMode::tuned;
                else throw ConfigParseError(lineno, "c_mode must be paper or tuned");
            } else if (key == "c_value") {
                cfg.c_value = std::stod(val);
            } else if (key == "out_dir") {
                cfg.out_dir = val;
            } else if (key == "keep_raw") {
                cfg.keep_raw = (val == "true" || val == "1" || val == "yes");
            } else {
                throw ConfigParseError(lineno, "unknown key '" + key + "'");
            }
        } catch (const ConfigParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigParseError(lineno, "bad value for '" + key + "': " + e.what());
        }
    }
    if (!saw_strategies || cfg.strategies.empty())
        throw ConfigParseError(0, "missing required key 'strategies' (or empty list)");
    if (!saw_n || cfg.n_list.empty())
        throw ConfigParseError(0, "missing required key 'n_list'");
    if (!saw_sigma || cfg.sigma_list.empty())
        throw ConfigParseError(0, "missing required key 'sigma_list'");
    if (cfg.models.empty())
        throw ConfigParseError(0, "key 'models' must not be empty");
    return cfg;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    return parse_sweep_config(f);
}

std::vector<SweepAggregate> run_sweep(const SweepConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<SweepAggregate> rows;
    std::uint64_t cell_index = 0;
    for (const auto strat : cfg.strategies) {
        for (const auto model : cfg.models) {
            for (const Node n : cfg.n_list) {
                for (const double sigma : cfg.sigma_list) {
                    TrialSpec spec;
                    spec.strategy = strat;
                    spec.model = model;
                    spec.n = n;
                    spec.sigma = sigma;
                    spec.delta_or_p = cfg.has_p ? 1.0 - cfg.p : cfg.delta;
                    spec.trials = cfg.trials;
                    spec.c_mode = cfg.c_mode;
                    spec.c_value = cfg.c_value;
                    // Decorrelated per-cell seed, stable under cell ordering.
                    spec.master_seed = splitmix64(cfg.master_seed ^ splitmix64(cell_index));
                    ++cell_index;
                    std::ostringstream id;
                    id << to_string(strat) << '_' << to_string(model) << "_n" << n
                       << "_sigma" << sigma;
                    spec.run_id = id.str();
                    const auto records = run_trials(spec);
                    rows.push_back(aggregate(records));
                    if (cfg.keep_raw) {
                        std::ofstream raw(fs::path(out_dir) / ("raw_" + spec.run_id + ".csv"),
                                          std::ios::binary);
                        if (!raw) throw std::runtime_error("cannot write raw CSV");
                        write_trials_csv(raw, records);
                    }
                }
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SweepAggregate& a, const SweepAggregate& b) {
        return std::tuple(to_string(a.strategy), to_string(a.model), a.n, a.sigma) <
               std::tuple(to_string(b.strategy), to_string(b.model), b.n, b.sigma);
    });
    std::ofstream out(fs::path(out_dir) / "aggregates.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write aggregates.csv");
    write_aggregates_csv(out, rows);
    return rows;
}

} // namespace pathsource
