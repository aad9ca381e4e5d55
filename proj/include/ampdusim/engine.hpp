#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampdusim/channel.hpp"
#include "ampdusim/frame.hpp"
#include "ampdusim/strategy.hpp"
#include "ampdusim/timing.hpp"
#include "ampdusim/window.hpp"

namespace ampdusim {

/// One simulated link configuration.
struct SimConfig {
    FrameGeometry geom;
    MacTimingProfile timing;
    PhyProfile phy;
    ErrorModel model;
    Strategy strategy;
    int window_w = 64;
    int k = 64;                    // distinct MPDUs allowed per attempt
    long attempts = 200000;
    long warmup_attempts = 1000;   // excluded from the measurement
    std::uint64_t seed = 1;

    void validate() const {
        geom.validate();
        timing.validate();
        phy.validate();
        model.validate();
        strategy.validate();
        if (window_w < 1 || window_w > kMaxDistinctMpdus)
            throw std::invalid_argument("window_w must be in 1.." +
                                        std::to_string(kMaxDistinctMpdus));
        if (k < 1 || k > window_w)
            throw std::invalid_argument("k must be in 1..window_w");
        if (warmup_attempts < 0)
            throw std::invalid_argument("warmup_attempts must be non-negative");
        if (attempts - warmup_attempts < 20)
            throw std::invalid_argument("attempts must exceed warmup_attempts by at least 20");
    }
};

/// Steady-state estimate for one run. `infeasible` means the plan failed
/// validation and the run was aborted; the throughput fields are NaN then.
struct SimResult {
    double throughput_mbps = 0.0;
    double ci95_mbps = 0.0;
    long long delivered_mpdus = 0;
    double total_time_us = 0.0;
    bool infeasible = false;
    std::string infeasible_reason;
};

namespace detail {
inline constexpr int kCiBatches = 20;
inline constexpr double kStudentT975Df19 = 2.093;  // 95% two-sided, 19 df
}  // namespace detail

/// Monte-Carlo run of the saturated transmission loop: select the lowest
/// undelivered MPDUs, duplicate per strategy, charge C1 plus PSDU airtime,
/// sample per-copy losses, feed the Block Ack back into the window.
/// Deterministic for a given config. Throughput is measured payload bits
/// over measured channel time; the CI comes from 20 batch means.
inline SimResult run_sim(const SimConfig& cfg) {
    cfg.validate();
    const double c1 = cfg.timing.c1_us();
    const double payload_bits = 8.0 * cfg.geom.msdu_bytes * cfg.geom.msdus_per_mpdu;
    const long measured_attempts = cfg.attempts - cfg.warmup_attempts;

    WindowState window(0, cfg.window_w);
    RandomSource rng(cfg.seed);
    std::vector<std::uint64_t> xmin;
    std::vector<std::uint64_t> delivered;
    PsduPlan plan;

    SimResult result;
    std::array<double, detail::kCiBatches> batch_bits{};
    std::array<double, detail::kCiBatches> batch_time{};
    double total_time = 0.0;
    long long total_delivered = 0;

    for (long attempt = 0; attempt < cfg.attempts; ++attempt) {
        window.select_xmin(cfg.k, xmin);
        build_plan(xmin, cfg.strategy, plan);
        const PlanVerdict verdict = validate_plan(plan, cfg.geom, cfg.timing, cfg.phy);
        if (!verdict) {
            result.infeasible = true;
            result.infeasible_reason = verdict.summary();
            result.throughput_mbps = std::numeric_limits<double>::quiet_NaN();
            result.ci95_mbps = std::numeric_limits<double>::quiet_NaN();
            return result;
        }
        const double t = c1 + psdu_airtime_us(plan, cfg.geom, cfg.timing, cfg.phy);
        sample_plan_outcome(plan, cfg.model, rng, delivered);
        const int newly = window.apply_back(delivered);

        if (attempt >= cfg.warmup_attempts) {
            const long idx = attempt - cfg.warmup_attempts;
            const auto b = static_cast<std::size_t>(
                (static_cast<long long>(idx) * detail::kCiBatches) / measured_attempts);
            batch_bits[b] += newly * payload_bits;
            batch_time[b] += t;
            total_time += t;
            total_delivered += newly;
        }
    }

    result.delivered_mpdus = total_delivered;
    result.total_time_us = total_time;
    result.throughput_mbps = static_cast<double>(total_delivered) * payload_bits / total_time;

    double mean = 0.0;
    std::array<double, detail::kCiBatches> batch_thr{};
    for (int b = 0; b < detail::kCiBatches; ++b) {
        batch_thr[b] = batch_bits[b] / batch_time[b];
        mean += batch_thr[b];
    }
    mean /= detail::kCiBatches;
    // Equal batch means have zero variance by definition; skipping the
    // arithmetic keeps deterministic (per=0) runs at an exact zero CI.
    const auto [lo, hi] = std::minmax_element(batch_thr.begin(), batch_thr.end());
    if (*lo == *hi) {
        result.ci95_mbps = 0.0;
        return result;
    }
    double var = 0.0;
    for (int b = 0; b < detail::kCiBatches; ++b) {
        const double d = batch_thr[b] - mean;
        var += d * d;
    }
    var /= detail::kCiBatches - 1;
    result.ci95_mbps = detail::kStudentT975Df19 * std::sqrt(var / detail::kCiBatches);
    return result;
}

/// Exact steady-state throughput for tiny windows (window_w <= 4), from the
/// Markov chain over delivered-flag patterns of the non-base window slots.
///
/// A state encodes which of the offsets 1..W-1 behind the base are already
/// delivered (the base itself is undelivered by definition). Each attempt's
/// transmission set, duration and per-MPDU delivery probabilities follow
/// deterministically from the state; outcomes are enumerated exhaustively.
/// Renewal-reward over the stationary distribution gives the throughput.
inline double markov_oracle(const SimConfig& cfg) {
    cfg.validate();
    if (cfg.window_w > 4)
        throw std::domain_error("markov_oracle supports window_w <= 4");
    if (cfg.model.per >= 1.0) return 0.0;  // nothing is ever delivered

    const int w = cfg.window_w;
    const int n_states = 1 << (w - 1);
    const double c1 = cfg.timing.c1_us();
    const double payload_bits = 8.0 * cfg.geom.msdu_bytes * cfg.geom.msdus_per_mpdu;

    std::vector<std::vector<double>> transition(
        static_cast<std::size_t>(n_states), std::vector<double>(static_cast<std::size_t>(n_states), 0.0));
    std::vector<double> reward_bits(static_cast<std::size_t>(n_states), 0.0);
    std::vector<double> duration_us(static_cast<std::size_t>(n_states), 0.0);

    std::vector<std::uint64_t> xmin;
    PsduPlan plan;
    for (int s = 0; s < n_states; ++s) {
        const std::uint64_t mask = static_cast<std::uint64_t>(s) << 1;
        const int held = std::popcount(mask);
        int x = cfg.k < w - held ? cfg.k : w - held;

        xmin.clear();
        for (int i = 0; i < w && static_cast<int>(xmin.size()) < x; ++i)
            if (!((mask >> i) & 1u)) xmin.push_back(static_cast<std::uint64_t>(i));
        build_plan(xmin, cfg.strategy, plan);

        const PlanVerdict verdict = validate_plan(plan, cfg.geom, cfg.timing, cfg.phy);
        if (!verdict)
            throw std::invalid_argument("oracle plan failed validation: " + verdict.summary());
        duration_us[static_cast<std::size_t>(s)] =
            c1 + psdu_airtime_us(plan, cfg.geom, cfg.timing, cfg.phy);

        std::vector<double> q(plan.entries.size());
        for (std::size_t i = 0; i < plan.entries.size(); ++i)
            q[i] = mpdu_delivered_prob(cfg.model.per, plan.entries[i].copies);

        for (std::uint32_t outcome = 0; outcome < (1u << x); ++outcome) {
            double prob = 1.0;
            std::uint64_t full = mask;
            int count = 0;
            for (int i = 0; i < x; ++i) {
                if ((outcome >> i) & 1u) {
                    prob *= q[static_cast<std::size_t>(i)];
                    full |= 1ULL << plan.entries[static_cast<std::size_t>(i)].seq;
                    ++count;
                } else {
                    prob *= 1.0 - q[static_cast<std::size_t>(i)];
                }
            }
            if (prob == 0.0) continue;
            const int slide = std::countr_one(full);
            const std::uint64_t next_mask = slide >= 64 ? 0 : full >> slide;
            const int next_state = static_cast<int>(next_mask >> 1);
            transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(next_state)] += prob;
            reward_bits[static_cast<std::size_t>(s)] += prob * count * payload_bits;
        }
    }

    // Stationary distribution: solve pi P = pi with sum(pi) = 1 by Gaussian
    // elimination on (P^T - I) with the last row replaced by ones.
    const auto n = static_cast<std::size_t>(n_states);
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = transition[j][i] - (i == j ? 1.0 : 0.0);
    }
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    a[n - 1][n] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0)
            throw std::runtime_error("singular stationary system");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }

    double num = 0.0;
    double den = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double pi = a[s][n] / a[s][s];
        num += pi * reward_bits[s];
        den += pi * duration_us[s];
    }
    return num / den;
}

/// Argmax-over-k summary of one point. `any_feasible` is false when every
/// aggregation degree violated the aggregate limits.
struct SweepResult {
    int best_k = 0;
    SimResult best;
    bool any_feasible = false;
};

/// Runs k = 1..window_w (each with its own derived seed), skips infeasible
/// degrees, returns the feasible argmax. Ties resolve to the smaller k.
inline SweepResult sweep_k(const SimConfig& base_cfg) {
    SweepResult out;
    for (int k = 1; k <= base_cfg.window_w; ++k) {
        SimConfig cfg = base_cfg;
        cfg.k = k;
        cfg.seed = derive_seed(base_cfg.seed, static_cast<std::uint64_t>(k));
        SimResult r = run_sim(cfg);
        if (r.infeasible) {
            if (!out.any_feasible && out.best.infeasible_reason.empty())
                out.best.infeasible_reason = r.infeasible_reason;
            continue;
        }
        if (!out.any_feasible || r.throughput_mbps > out.best.throughput_mbps) {
            out.best_k = k;
            out.best = std::move(r);
            out.any_feasible = true;
        }
    }
    if (!out.any_feasible) {
        out.best.infeasible = true;
        out.best.throughput_mbps = std::numeric_limits<double>::quiet_NaN();
        out.best.ci95_mbps = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

namespace detail {
/// Stable per-strategy stream selector for seed derivation.
inline std::uint64_t strategy_code(const Strategy& s) {
    if (s.duplicate_all) return 100 + static_cast<std::uint64_t>(s.copies);
    return static_cast<std::uint64_t>(s.head_count) * 10 + static_cast<std::uint64_t>(s.copies);
}
}  // namespace detail

/// Best duplicating method at one point, each method independently k-swept,
/// against the k-swept single-copy baseline.
struct StrategyBest {
    Strategy best_strategy;
    int best_k = 0;
    SimResult best;
    int base_k = 0;
    SimResult base;
    double improvement_pct = 0.0;
    bool feasible = false;
};

/// The strategy set must contain the base method; it is the improvement
/// reference. When the set holds nothing but base, base is also the answer.
inline StrategyBest best_over_strategies(const SimConfig& point,
                                         std::span<const Strategy> strategies) {
    bool has_base = false;
    for (const auto& s : strategies) has_base |= s.is_base();
    if (!has_base)
        throw std::invalid_argument("strategy set must include the base method");

    auto sweep_for = [&](const Strategy& strat) {
        SimConfig cfg = point;
        cfg.strategy = strat;
        cfg.seed = derive_seed(point.seed, detail::strategy_code(strat));
        return sweep_k(cfg);
    };

    StrategyBest out;
    SweepResult base = sweep_for(Strategy::base());
    out.base_k = base.best_k;
    out.base = base.best;

    bool found = false;
    for (const auto& strat : strategies) {
        if (strat.is_base()) continue;
        SweepResult r = sweep_for(strat);
        if (!r.any_feasible) continue;
        if (!found || r.best.throughput_mbps > out.best.throughput_mbps) {
            out.best_strategy = strat;
            out.best_k = r.best_k;
            out.best = std::move(r.best);
            found = true;
        }
    }
    if (!found) {
        // nothing but base in the set (or nothing else feasible)
        out.best_strategy = Strategy::base();
        out.best_k = base.best_k;
        out.best = base.best;
        found = base.any_feasible;
    }
    out.feasible = found && base.any_feasible;
    out.improvement_pct =
        out.feasible
            ? 100.0 * (out.best.throughput_mbps - out.base.throughput_mbps) / out.base.throughput_mbps
            : std::numeric_limits<double>::quiet_NaN();
    return out;
}

/// Inputs of the frame-size scaling ratio: fixed overhead, baseline airtime
/// T and delivered bits B, the duplication surcharge T_s and B_s, and the
/// payload scale factor alpha.
struct RatioInputs {
    double c1_us = 0.0;
    double t_us = 0.0;
    double t_s_us = 0.0;
    double b_bits = 0.0;
    double b_s_bits = 0.0;
    double alpha = 1.0;

    void validate() const {
        if (!(c1_us > 0.0 && t_us > 0.0 && b_bits > 0.0 && b_s_bits > 0.0))
            throw std::invalid_argument("c1_us, t_us, b_bits and b_s_bits must be positive");
        if (t_s_us < 0.0)
            throw std::invalid_argument("t_s_us must be non-negative");
        if (!(alpha >= 1.0))
            throw std::invalid_argument("alpha must be >= 1");
    }
};

/// Throughput ratio of the duplicating method over the baseline when the
/// per-attempt payload scales by alpha. Decreases in alpha whenever the
/// duplication surcharge t_s is positive.
inline double ratio_eq_thr(const RatioInputs& in) {
    in.validate();
    const double dup = in.alpha * in.b_s_bits / (in.c1_us + in.alpha * (in.t_us + in.t_s_us));
    const double base = in.alpha * in.b_bits / (in.c1_us + in.alpha * in.t_us);
    return dup / base;
}

}  // namespace ampdusim
