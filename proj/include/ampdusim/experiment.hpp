#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ampdusim/engine.hpp"

namespace ampdusim {

enum class OutputFormat { Csv, Json };

/// A full experiment: the cross product of the axis lists, every listed
/// strategy k-swept at every point. Defaults are the studied grid: four
/// MSDU sizes, four rates, PER 0.05..0.50 and the 21 methods.
struct ExperimentSpec {
    std::vector<int> msdu_bytes = {128, 512, 1024, 1500};
    std::vector<int> msdus_per_mpdu = {1};
    AggregationMode mode = AggregationMode::Ampdu;
    std::vector<double> rates_mbps = {433.3, 866.7, 1299.9, 3466.8};
    std::vector<double> pers = {0.05, 0.10, 0.15, 0.20, 0.25,
                                0.30, 0.35, 0.40, 0.45, 0.50};
    std::vector<Strategy> strategies = all_presets();
    int window_w = 64;
    long attempts = 200000;
    std::uint64_t seed = 1;
    std::string out;  // empty = stdout
    OutputFormat format = OutputFormat::Csv;

    /// Sorts and dedupes the numeric axes, dedupes strategies (keeping the
    /// listed order) and rejects out-of-range values with a diagnostic that
    /// names the offending key.
    void normalize_and_validate();
};

inline void ExperimentSpec::normalize_and_validate() {
    auto sort_unique = [](auto& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw std::invalid_argument(msg);
    };

    require(!msdu_bytes.empty(), "msdu_bytes: list must be non-empty");
    require(!msdus_per_mpdu.empty(), "msdus_per_mpdu: list must be non-empty");
    require(!rates_mbps.empty(), "rates_mbps: list must be non-empty");
    require(!pers.empty(), "pers: list must be non-empty");
    require(!strategies.empty(), "strategies: list must be non-empty");

    sort_unique(msdu_bytes);
    sort_unique(msdus_per_mpdu);
    sort_unique(rates_mbps);
    sort_unique(pers);
    std::vector<Strategy> unique_strats;
    for (const auto& s : strategies)
        if (std::find(unique_strats.begin(), unique_strats.end(), s) == unique_strats.end())
            unique_strats.push_back(s);
    strategies = std::move(unique_strats);

    for (int v : msdu_bytes)
        require(v >= 1 && v <= kMaxMsduBytes,
                "msdu_bytes: " + std::to_string(v) + " must be within 1.." +
                    std::to_string(kMaxMsduBytes));
    for (int v : msdus_per_mpdu)
        require(v >= 1 && v <= 7, "msdus_per_mpdu: " + std::to_string(v) + " must be within 1..7");
    for (double v : rates_mbps)
        require(v > 0.0, "rates_mbps: values must be strictly positive");
    for (double v : pers)
        require(v >= 0.0 && v <= 1.0, "pers: values must be within [0,1]");
    require(window_w >= 1 && window_w <= kMaxDistinctMpdus,
            "window_w: must be within 1.." + std::to_string(kMaxDistinctMpdus));
    require(attempts >= 40, "attempts: must be at least 40");

    // Every (msdu, msdus_per_mpdu) pair must make a legal frame.
    for (int msdu : msdu_bytes) {
        for (int m : msdus_per_mpdu) {
            FrameGeometry geom;
            geom.msdu_bytes = msdu;
            geom.msdus_per_mpdu = m;
            geom.mode = mode;
            try {
                geom.validate();
            } catch (const std::exception& e) {
                throw std::invalid_argument("msdu_bytes/msdus_per_mpdu: " + std::string(e.what()));
            }
        }
    }
    for (const auto& s : strategies) s.validate();
}

/// The fully-defaulted studied grid.
inline ExperimentSpec default_grid_spec() { return ExperimentSpec{}; }

namespace detail {

inline AggregationMode parse_mode(const std::string& text) {
    std::string lower;
    for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "ampdu") return AggregationMode::Ampdu;
    if (lower == "two_level" || lower == "two-level" || lower == "twolevel")
        return AggregationMode::TwoLevel;
    throw std::invalid_argument("mode: \"" + text + "\" is not one of \"ampdu\", \"two_level\"");
}

inline OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw std::invalid_argument("format: \"" + text + "\" is not one of \"csv\", \"json\"");
}

}  // namespace detail

/// Parses the flat spec document. Only the documented keys are accepted.
inline ExperimentSpec parse_spec_json(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("spec: document must be a JSON object");

    static const std::vector<std::string> known = {
        "msdu_bytes", "msdus_per_mpdu", "mode",      "rates_mbps", "pers", "strategies",
        "window_w",   "attempts",       "seed",      "out",        "format"};
    for (const auto& item : doc.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw std::invalid_argument("spec: unknown key \"" + item.key() + "\"");
    }

    ExperimentSpec spec;
    auto int_list = [&](const char* key, std::vector<int>& out) {
        if (!doc.contains(key)) return;
        const auto& v = doc.at(key);
        if (!v.is_array()) throw std::invalid_argument(std::string(key) + ": must be an array of integers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number_integer())
                throw std::invalid_argument(std::string(key) + ": entries must be integers");
            out.push_back(e.get<int>());
        }
    };
    auto num_list = [&](const char* key, std::vector<double>& out) {
        if (!doc.contains(key)) return;
        const auto& v = doc.at(key);
        if (!v.is_array()) throw std::invalid_argument(std::string(key) + ": must be an array of numbers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number())
                throw std::invalid_argument(std::string(key) + ": entries must be numbers");
            out.push_back(e.get<double>());
        }
    };

    int_list("msdu_bytes", spec.msdu_bytes);
    int_list("msdus_per_mpdu", spec.msdus_per_mpdu);
    num_list("rates_mbps", spec.rates_mbps);
    num_list("pers", spec.pers);

    if (doc.contains("mode")) {
        if (!doc.at("mode").is_string())
            throw std::invalid_argument("mode: must be a string");
        spec.mode = detail::parse_mode(doc.at("mode").get<std::string>());
    }
    if (doc.contains("strategies")) {
        const auto& v = doc.at("strategies");
        if (!v.is_array()) throw std::invalid_argument("strategies: must be an array of strings");
        spec.strategies.clear();
        for (const auto& e : v) {
            if (!e.is_string())
                throw std::invalid_argument("strategies: entries must be strings");
            spec.strategies.push_back(parse_strategy(e.get<std::string>()));
        }
    }
    if (doc.contains("window_w")) {
        if (!doc.at("window_w").is_number_integer())
            throw std::invalid_argument("window_w: must be an integer");
        spec.window_w = doc.at("window_w").get<int>();
    }
    if (doc.contains("attempts")) {
        if (!doc.at("attempts").is_number_integer())
            throw std::invalid_argument("attempts: must be an integer");
        spec.attempts = doc.at("attempts").get<long>();
    }
    if (doc.contains("seed")) {
        const auto& v = doc.at("seed");
        if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)))
            throw std::invalid_argument("seed: must be a non-negative integer");
        spec.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string())
            throw std::invalid_argument("out: must be a string");
        spec.out = doc.at("out").get<std::string>();
    }
    if (doc.contains("format")) {
        if (!doc.at("format").is_string())
            throw std::invalid_argument("format: must be a string");
        spec.format = detail::parse_format(doc.at("format").get<std::string>());
    }

    spec.normalize_and_validate();
    return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("spec: cannot open \"" + path + "\"");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("spec: malformed JSON in \"" + path + "\": " + e.what());
    }
    return parse_spec_json(doc);
}

/// One point of the axis cross product.
struct PointAxes {
    AggregationMode mode = AggregationMode::Ampdu;
    int msdu_bytes = 0;
    int msdus_per_mpdu = 1;
    double rate_mbps = 0.0;
    double per = 0.0;
};

inline std::vector<PointAxes> expand_points(const ExperimentSpec& spec) {
    std::vector<PointAxes> points;
    for (int msdu : spec.msdu_bytes)
        for (int m : spec.msdus_per_mpdu)
            for (double rate : spec.rates_mbps)
                for (double per : spec.pers)
                    points.push_back({spec.mode, msdu, m, rate, per});
    return points;
}

/// Seed stream for one axes point, derived from the axis values themselves,
/// so a point's rows do not depend on what else is in the grid.
inline std::uint64_t point_seed(std::uint64_t master, const PointAxes& p) {
    std::uint64_t h = master;
    h = derive_seed(h, static_cast<std::uint64_t>(p.mode));
    h = derive_seed(h, static_cast<std::uint64_t>(p.msdu_bytes));
    h = derive_seed(h, static_cast<std::uint64_t>(p.msdus_per_mpdu));
    h = derive_seed(h, std::bit_cast<std::uint64_t>(p.rate_mbps));
    h = derive_seed(h, std::bit_cast<std::uint64_t>(p.per));
    return h;
}

inline SimConfig make_point_config(const ExperimentSpec& spec, const PointAxes& p) {
    SimConfig cfg;
    cfg.geom.msdu_bytes = p.msdu_bytes;
    cfg.geom.msdus_per_mpdu = p.msdus_per_mpdu;
    cfg.geom.mode = p.mode;
    cfg.phy = PhyProfile::from_rate(p.rate_mbps, cfg.timing.t_sym_us);
    cfg.model.per = p.per;
    cfg.window_w = spec.window_w;
    cfg.k = spec.window_w;
    cfg.attempts = spec.attempts;
    cfg.warmup_attempts = std::min<long>(1000, spec.attempts / 10);
    cfg.seed = point_seed(spec.seed, p);
    return cfg;
}

/// Runs all indices in [0, n) across `jobs` worker threads. The mapping of
/// index to work is fixed, so results are identical for any job count.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(n, static_cast<std::size_t>(jobs < 1 ? 1 : jobs));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct RunRecord {
    PointAxes axes;
    Strategy strategy;
    int best_k = 0;
    long attempts = 0;
    std::uint64_t seed = 0;
    SimResult sim;
    double improvement_over_base_pct = 0.0;
    bool infeasible = false;
};

struct BestRecord {
    PointAxes axes;
    std::optional<double> ber;
    Strategy best_strategy;
    int best_k = 0;
    long attempts = 0;
    std::uint64_t seed = 0;
    SimResult best;
    SimResult base;
    int base_best_k = 0;
    double improvement_over_base_pct = 0.0;
    bool infeasible = false;
};

struct KRecord {
    PointAxes axes;
    Strategy strategy;
    int k = 0;
    long attempts = 0;
    std::uint64_t seed = 0;
    SimResult sim;
    bool best = false;
};

/// Full cross-product sweep: one record per (point, listed strategy), each
/// k-swept. The single-copy baseline is evaluated at every point (whether
/// listed or not) as the improvement reference.
inline std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, int jobs = 1) {
    const std::vector<PointAxes> points = expand_points(spec);

    std::vector<Strategy> sweep_strategies = spec.strategies;
    if (std::none_of(sweep_strategies.begin(), sweep_strategies.end(),
                     [](const Strategy& s) { return s.is_base(); }))
        sweep_strategies.push_back(Strategy::base());

    const std::size_t per_point = sweep_strategies.size();
    std::vector<SweepResult> sweeps(points.size() * per_point);
    parallel_for(sweeps.size(), jobs, [&](std::size_t i) {
        const PointAxes& p = points[i / per_point];
        const Strategy& strat = sweep_strategies[i % per_point];
        SimConfig cfg = make_point_config(spec, p);
        cfg.strategy = strat;
        cfg.seed = derive_seed(cfg.seed, detail::strategy_code(strat));
        sweeps[i] = sweep_k(cfg);
    });

    std::size_t base_idx = 0;
    for (std::size_t s = 0; s < per_point; ++s)
        if (sweep_strategies[s].is_base()) base_idx = s;

    std::vector<RunRecord> records;
    records.reserve(points.size() * spec.strategies.size());
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const SweepResult& base = sweeps[pi * per_point + base_idx];
        for (std::size_t si = 0; si < spec.strategies.size(); ++si) {
            const SweepResult& sweep = sweeps[pi * per_point + si];
            RunRecord rec;
            rec.axes = points[pi];
            rec.strategy = spec.strategies[si];
            rec.attempts = spec.attempts;
            rec.seed = spec.seed;
            rec.infeasible = !sweep.any_feasible;
            rec.best_k = sweep.best_k;
            rec.sim = sweep.best;
            if (rec.strategy.is_base()) {
                rec.improvement_over_base_pct = 0.0;
            } else if (sweep.any_feasible && base.any_feasible) {
                rec.improvement_over_base_pct =
                    100.0 * (sweep.best.throughput_mbps - base.best.throughput_mbps) /
                    base.best.throughput_mbps;
            } else {
                rec.improvement_over_base_pct = std::numeric_limits<double>::quiet_NaN();
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

/// Best duplicating method per point versus the k-swept baseline.
inline std::vector<BestRecord> best_experiment(const ExperimentSpec& spec, int jobs = 1) {
    if (std::none_of(spec.strategies.begin(), spec.strategies.end(),
                     [](const Strategy& s) { return s.is_base(); }))
        throw std::invalid_argument("strategies: must include \"base\" for the best command");

    const std::vector<PointAxes> points = expand_points(spec);
    std::vector<BestRecord> records(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        const PointAxes& p = points[i];
        const SimConfig cfg = make_point_config(spec, p);
        StrategyBest result = best_over_strategies(cfg, spec.strategies);

        BestRecord rec;
        rec.axes = p;
        rec.attempts = spec.attempts;
        rec.seed = spec.seed;
        if (p.per < 1.0) {
            FrameGeometry geom = cfg.geom;
            rec.ber = ber_from_per(p.per, 8LL * mpdu_element_bytes(geom));
        }
        rec.best_strategy = result.best_strategy;
        rec.best_k = result.best_k;
        rec.best = result.best;
        rec.base = result.base;
        rec.base_best_k = result.base_k;
        rec.improvement_over_base_pct = result.improvement_pct;
        rec.infeasible = !result.feasible;
        records[i] = std::move(rec);
    });
    return records;
}

/// The full k curve of one point and one strategy; `best` marks the
/// feasible argmax (ties to the smaller k). Requires single-valued axes.
inline std::vector<KRecord> ksweep_records(const ExperimentSpec& spec) {
    if (spec.msdu_bytes.size() != 1 || spec.msdus_per_mpdu.size() != 1 ||
        spec.rates_mbps.size() != 1 || spec.pers.size() != 1 || spec.strategies.size() != 1)
        throw std::invalid_argument(
            "sweep-k needs exactly one value per axis and exactly one strategy");

    const PointAxes p = expand_points(spec)[0];
    const Strategy strat = spec.strategies[0];
    SimConfig base_cfg = make_point_config(spec, p);
    base_cfg.strategy = strat;
    base_cfg.seed = derive_seed(base_cfg.seed, detail::strategy_code(strat));

    std::vector<KRecord> records;
    int best_k = 0;
    double best_thr = 0.0;
    bool any = false;
    for (int k = 1; k <= spec.window_w; ++k) {
        SimConfig cfg = base_cfg;
        cfg.k = k;
        cfg.seed = derive_seed(base_cfg.seed, static_cast<std::uint64_t>(k));
        KRecord rec;
        rec.axes = p;
        rec.strategy = strat;
        rec.k = k;
        rec.attempts = spec.attempts;
        rec.seed = spec.seed;
        rec.sim = run_sim(cfg);
        if (!rec.sim.infeasible && (!any || rec.sim.throughput_mbps > best_thr)) {
            any = true;
            best_k = k;
            best_thr = rec.sim.throughput_mbps;
        }
        records.push_back(std::move(rec));
    }
    if (any) records[static_cast<std::size_t>(best_k - 1)].best = true;
    return records;
}

// ---------------------------------------------------------------------------
// Output

/// Plain decimal with 12 significant digits; round-trips through parsing.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail {

inline std::string csv_number(double v, bool absent) {
    return absent ? std::string() : format_double(v);
}

}  // namespace detail

inline constexpr const char* kRunCsvHeader =
    "mode,msdu_bytes,msdus_per_mpdu,rate_mbps,per,strategy,best_k,attempts,seed,"
    "throughput_mbps,ci95_mbps,improvement_over_base_pct,infeasible";

inline void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << kRunCsvHeader << "\n";
    for (const auto& r : records) {
        const bool absent = r.infeasible;
        os << to_string(r.axes.mode) << ',' << r.axes.msdu_bytes << ',' << r.axes.msdus_per_mpdu
           << ',' << format_double(r.axes.rate_mbps) << ',' << format_double(r.axes.per) << ','
           << to_string(r.strategy) << ',' << (absent ? std::string() : std::to_string(r.best_k))
           << ',' << r.attempts << ',' << r.seed << ','
           << detail::csv_number(r.sim.throughput_mbps, absent) << ','
           << detail::csv_number(r.sim.ci95_mbps, absent) << ','
           << detail::csv_number(r.improvement_over_base_pct,
                                 absent || std::isnan(r.improvement_over_base_pct))
           << ',' << (r.infeasible ? 1 : 0) << "\n";
    }
}

inline constexpr const char* kBestCsvHeader =
    "mode,msdu_bytes,msdus_per_mpdu,rate_mbps,per,ber,best_strategy,best_k,attempts,seed,"
    "throughput_mbps,ci95_mbps,base_throughput_mbps,base_best_k,improvement_over_base_pct";

inline void write_csv(std::ostream& os, const std::vector<BestRecord>& records) {
    os << kBestCsvHeader << "\n";
    for (const auto& r : records) {
        const bool absent = r.infeasible;
        os << to_string(r.axes.mode) << ',' << r.axes.msdu_bytes << ',' << r.axes.msdus_per_mpdu
           << ',' << format_double(r.axes.rate_mbps) << ',' << format_double(r.axes.per) << ','
           << (r.ber ? format_double(*r.ber) : std::string()) << ','
           << (absent ? std::string() : to_string(r.best_strategy)) << ','
           << (absent ? std::string() : std::to_string(r.best_k)) << ',' << r.attempts << ','
           << r.seed << ',' << detail::csv_number(r.best.throughput_mbps, absent) << ','
           << detail::csv_number(r.best.ci95_mbps, absent) << ','
           << detail::csv_number(r.base.throughput_mbps, absent) << ','
           << (absent ? std::string() : std::to_string(r.base_best_k)) << ','
           << detail::csv_number(r.improvement_over_base_pct, absent) << "\n";
    }
}

inline constexpr const char* kSweepCsvHeader =
    "mode,msdu_bytes,msdus_per_mpdu,rate_mbps,per,strategy,k,attempts,seed,"
    "throughput_mbps,ci95_mbps,infeasible,best";

inline void write_csv(std::ostream& os, const std::vector<KRecord>& records) {
    os << kSweepCsvHeader << "\n";
    for (const auto& r : records) {
        const bool absent = r.sim.infeasible;
        os << to_string(r.axes.mode) << ',' << r.axes.msdu_bytes << ',' << r.axes.msdus_per_mpdu
           << ',' << format_double(r.axes.rate_mbps) << ',' << format_double(r.axes.per) << ','
           << to_string(r.strategy) << ',' << r.k << ',' << r.attempts << ',' << r.seed << ','
           << detail::csv_number(r.sim.throughput_mbps, absent) << ','
           << detail::csv_number(r.sim.ci95_mbps, absent) << ',' << (r.sim.infeasible ? 1 : 0)
           << ',' << (r.best ? 1 : 0) << "\n";
    }
}

namespace detail {

inline nlohmann::json axes_json(const PointAxes& p) {
    return {{"mode", to_string(p.mode)},
            {"msdu_bytes", p.msdu_bytes},
            {"msdus_per_mpdu", p.msdus_per_mpdu},
            {"rate_mbps", p.rate_mbps},
            {"per", p.per}};
}

inline nlohmann::json number_or_null(double v, bool absent) {
    if (absent || std::isnan(v)) return nullptr;
    return v;
}

}  // namespace detail

inline void write_json(std::ostream& os, const std::vector<RunRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row = detail::axes_json(r.axes);
        row["strategy"] = to_string(r.strategy);
        row["best_k"] = r.infeasible ? nlohmann::json(nullptr) : nlohmann::json(r.best_k);
        row["attempts"] = r.attempts;
        row["seed"] = r.seed;
        row["throughput_mbps"] = detail::number_or_null(r.sim.throughput_mbps, r.infeasible);
        row["ci95_mbps"] = detail::number_or_null(r.sim.ci95_mbps, r.infeasible);
        row["improvement_over_base_pct"] =
            detail::number_or_null(r.improvement_over_base_pct, r.infeasible);
        row["infeasible"] = r.infeasible;
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << "\n";
}

inline void write_json(std::ostream& os, const std::vector<BestRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row = detail::axes_json(r.axes);
        row["ber"] = r.ber ? nlohmann::json(*r.ber) : nlohmann::json(nullptr);
        row["best_strategy"] =
            r.infeasible ? nlohmann::json(nullptr) : nlohmann::json(to_string(r.best_strategy));
        row["best_k"] = r.infeasible ? nlohmann::json(nullptr) : nlohmann::json(r.best_k);
        row["attempts"] = r.attempts;
        row["seed"] = r.seed;
        row["throughput_mbps"] = detail::number_or_null(r.best.throughput_mbps, r.infeasible);
        row["ci95_mbps"] = detail::number_or_null(r.best.ci95_mbps, r.infeasible);
        row["base_throughput_mbps"] = detail::number_or_null(r.base.throughput_mbps, r.infeasible);
        row["base_best_k"] = r.infeasible ? nlohmann::json(nullptr) : nlohmann::json(r.base_best_k);
        row["improvement_over_base_pct"] =
            detail::number_or_null(r.improvement_over_base_pct, r.infeasible);
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << "\n";
}

inline void write_json(std::ostream& os, const std::vector<KRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row = detail::axes_json(r.axes);
        row["strategy"] = to_string(r.strategy);
        row["k"] = r.k;
        row["attempts"] = r.attempts;
        row["seed"] = r.seed;
        row["throughput_mbps"] = detail::number_or_null(r.sim.throughput_mbps, r.sim.infeasible);
        row["ci95_mbps"] = detail::number_or_null(r.sim.ci95_mbps, r.sim.infeasible);
        row["infeasible"] = r.sim.infeasible;
        row["best"] = r.best;
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << "\n";
}

}  // namespace ampdusim
