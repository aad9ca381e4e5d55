#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ampdusim/engine.hpp"

using namespace ampdusim;

namespace {

SimConfig point_config(int msdu, double rate, double per, const Strategy& strat,
                       int window, int k, long attempts, std::uint64_t seed = 1) {
    SimConfig cfg;
    cfg.geom.msdu_bytes = msdu;
    cfg.geom.msdus_per_mpdu = 1;
    cfg.geom.mode = AggregationMode::Ampdu;
    cfg.phy = PhyProfile::from_rate(rate, cfg.timing.t_sym_us);
    cfg.model.per = per;
    cfg.strategy = strat;
    cfg.window_w = window;
    cfg.k = k;
    cfg.attempts = attempts;
    cfg.warmup_attempts = std::min<long>(1000, attempts / 10);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("a lossless channel reproduces the closed form exactly", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.0, Strategy::base(), 64, 64, 21000);
    const SimResult r = run_sim(cfg);
    const double expected =
        analytic_throughput_eq1(64, 1.0, cfg.geom, cfg.timing, cfg.phy);
    CHECK(r.throughput_mbps == expected);
    CHECK(r.ci95_mbps == 0.0);
    CHECK_THAT(r.throughput_mbps, Catch::Matchers::WithinRel(948.733786287832, 1e-12));
}

TEST_CASE("a fully lossy channel delivers nothing", "[engine]") {
    const SimResult r = run_sim(point_config(1500, 1299.9, 1.0, Strategy::all(3), 8, 8, 5000));
    CHECK(r.throughput_mbps == 0.0);
    CHECK(r.delivered_mpdus == 0);
    CHECK_FALSE(r.infeasible);
}

TEST_CASE("the single-slot window matches its renewal closed form", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.5, Strategy::base(), 1, 1, 200000);
    const SimResult r = run_sim(cfg);
    const double exact = 6000.0 / 213.5;  // 12000 bits x 0.5 per 213.5 us attempt
    CHECK(r.ci95_mbps > 0.0);
    CHECK(std::abs(r.throughput_mbps - exact) <= 3.0 * r.ci95_mbps);
}

TEST_CASE("throughput equals delivered payload over elapsed time", "[engine]") {
    const SimConfig cfg = point_config(512, 866.7, 0.3, Strategy::head(2, 2), 16, 12, 20000);
    const SimResult r = run_sim(cfg);
    const double payload_bits = 8.0 * 512;
    CHECK(r.throughput_mbps ==
          static_cast<double>(r.delivered_mpdus) * payload_bits / r.total_time_us);
}

TEST_CASE("identical configurations give bit-identical results", "[engine]") {
    const SimConfig cfg = point_config(1024, 433.3, 0.4, Strategy::all(2), 16, 16, 20000, 77);
    const SimResult a = run_sim(cfg);
    const SimResult b = run_sim(cfg);
    CHECK(a.throughput_mbps == b.throughput_mbps);
    CHECK(a.ci95_mbps == b.ci95_mbps);
    CHECK(a.delivered_mpdus == b.delivered_mpdus);
    CHECK(a.total_time_us == b.total_time_us);

    SimConfig other = cfg;
    other.seed = 78;
    CHECK(run_sim(other).throughput_mbps != a.throughput_mbps);
}

TEST_CASE("an infeasible plan aborts the run in-band", "[engine]") {
    // duplicating all 64 maximum-size elements 5x blows the 5.4 ms cap
    const SimResult r = run_sim(point_config(1500, 433.3, 0.5, Strategy::all(5), 64, 64, 5000));
    CHECK(r.infeasible);
    CHECK_FALSE(r.infeasible_reason.empty());
    CHECK(std::isnan(r.throughput_mbps));
}

TEST_CASE("configuration validation rejects inconsistent windows", "[engine]") {
    CHECK_THROWS_AS(run_sim(point_config(1500, 433.3, 0.5, Strategy::base(), 65, 64, 5000)),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_sim(point_config(1500, 433.3, 0.5, Strategy::base(), 8, 9, 5000)),
                    std::invalid_argument);

    SimConfig thin = point_config(1500, 433.3, 0.5, Strategy::base(), 8, 8, 1000);
    thin.warmup_attempts = 990;  // leaves fewer measured attempts than batches
    CHECK_THROWS_AS(run_sim(thin), std::invalid_argument);
}

TEST_CASE("the exact oracle matches its single-state closed form", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.5, Strategy::base(), 1, 1, 200000);
    CHECK_THAT(markov_oracle(cfg), Catch::Matchers::WithinRel(6000.0 / 213.5, 1e-12));
}

TEST_CASE("the exact oracle reduces to the closed form when lossless", "[engine]") {
    for (int w = 1; w <= 4; ++w) {
        const SimConfig cfg = point_config(1500, 1299.9, 0.0, Strategy::base(), w, w, 200000);
        const double expected =
            analytic_throughput_eq1(w, 1.0, cfg.geom, cfg.timing, cfg.phy);
        CHECK_THAT(markov_oracle(cfg), Catch::Matchers::WithinRel(expected, 1e-12));
    }
}

TEST_CASE("the exact oracle rejects windows beyond its state space", "[engine]") {
    CHECK_THROWS_AS(markov_oracle(point_config(1500, 1299.9, 0.5, Strategy::base(), 5, 5, 200000)),
                    std::domain_error);
}

TEST_CASE("the exact oracle returns zero on a fully lossy channel", "[engine]") {
    CHECK(markov_oracle(point_config(1500, 1299.9, 1.0, Strategy::all(2), 3, 3, 200000)) == 0.0);
}

TEST_CASE("simulation agrees with the exact oracle within three sigma", "[engine]") {
    const Strategy strategies[] = {Strategy::base(), Strategy::head(1, 2), Strategy::all(2)};
    for (int w = 1; w <= 4; ++w) {
        for (double per : {0.1, 0.3, 0.5}) {
            for (const Strategy& strat : strategies) {
                SimConfig cfg = point_config(1500, 1299.9, per, strat, w, w, 60000);
                cfg.seed = derive_seed(11, static_cast<std::uint64_t>(w * 100) +
                                                static_cast<std::uint64_t>(per * 10));
                const double exact = markov_oracle(cfg);
                const SimResult sim = run_sim(cfg);
                INFO("w=" << w << " per=" << per << " strategy=" << to_string(strat));
                REQUIRE(sim.ci95_mbps > 0.0);
                REQUIRE(std::abs(sim.throughput_mbps - exact) <= 3.0 * sim.ci95_mbps);
            }
        }
    }
}

TEST_CASE("throughput never increases with the error rate", "[engine]") {
    double prev_thr = std::numeric_limits<double>::infinity();
    double prev_ci = 0.0;
    for (double per : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9}) {
        const SimResult r =
            run_sim(point_config(1500, 1299.9, per, Strategy::base(), 8, 8, 50000));
        INFO("per=" << per);
        CHECK(r.throughput_mbps <= prev_thr + 3.0 * (prev_ci + r.ci95_mbps));
        prev_thr = r.throughput_mbps;
        prev_ci = r.ci95_mbps;
    }
}

TEST_CASE("the aggregation sweep picks the largest degree when lossless", "[engine]") {
    const SweepResult s = sweep_k(point_config(1500, 1299.9, 0.0, Strategy::base(), 64, 64, 5000));
    CHECK(s.any_feasible);
    CHECK(s.best_k == 64);
}

TEST_CASE("the aggregation sweep ties break to the smallest degree", "[engine]") {
    const SweepResult s = sweep_k(point_config(1500, 1299.9, 1.0, Strategy::base(), 4, 4, 5000));
    CHECK(s.any_feasible);
    CHECK(s.best_k == 1);
    CHECK(s.best.throughput_mbps == 0.0);
}

TEST_CASE("the aggregation sweep skips degrees that violate the airtime cap", "[engine]") {
    // 5 copies of a 1540-byte element at the lowest rate: 38+ distinct MPDUs
    // exceed the 5.4 ms cap, so the sweep must stay at or below 37.
    const SimConfig cfg = point_config(1500, 433.3, 0.5, Strategy::all(5), 64, 64, 3000);
    CHECK_FALSE(run_sim([&] { SimConfig c = cfg; c.k = 37; return c; }()).infeasible);
    CHECK(run_sim([&] { SimConfig c = cfg; c.k = 38; return c; }()).infeasible);

    const SweepResult s = sweep_k(cfg);
    CHECK(s.any_feasible);
    CHECK(s.best_k <= 37);
}

TEST_CASE("the best-strategy search requires the baseline in the set", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.5, Strategy::base(), 4, 4, 2000);
    const std::vector<Strategy> no_base{Strategy::head(1, 2)};
    CHECK_THROWS_AS(best_over_strategies(cfg, no_base), std::invalid_argument);
}

TEST_CASE("the best-strategy search reports a consistent improvement", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.5, Strategy::base(), 4, 4, 20000);
    const std::vector<Strategy> set{Strategy::base(), Strategy::head(1, 2), Strategy::head(1, 3),
                                    Strategy::all(2)};
    const StrategyBest best = best_over_strategies(cfg, set);
    REQUIRE(best.feasible);
    CHECK_FALSE(best.best_strategy.is_base());
    CHECK(best.best_k >= 1);
    CHECK(best.base_k >= 1);
    CHECK(best.improvement_pct ==
          100.0 * (best.best.throughput_mbps - best.base.throughput_mbps) /
              best.base.throughput_mbps);
}

TEST_CASE("the baseline against itself improves by nothing", "[engine]") {
    const SimConfig cfg = point_config(1500, 1299.9, 0.3, Strategy::base(), 4, 4, 20000);
    const std::vector<Strategy> only_base{Strategy::base()};
    const StrategyBest best = best_over_strategies(cfg, only_base);
    REQUIRE(best.feasible);
    CHECK(best.best_strategy.is_base());
    CHECK(best.improvement_pct == 0.0);
}

TEST_CASE("the scaling ratio reproduces its frozen reference values", "[engine]") {
    RatioInputs in;
    in.c1_us = 201.5;
    in.t_us = 608.0;
    in.t_s_us = 100.0;
    in.b_bits = 768000.0;
    in.b_s_bits = 768000.0;

    in.alpha = 1.0;
    CHECK_THAT(ratio_eq_thr(in), Catch::Matchers::WithinRel(0.890049477735, 1e-11));
    in.alpha = 2.0;
    CHECK_THAT(ratio_eq_thr(in), Catch::Matchers::WithinRel(0.876352395672, 1e-11));
}

TEST_CASE("the scaling ratio is one for a degenerate surcharge", "[engine]") {
    for (double alpha : {1.0, 2.0, 4.0, 16.0}) {
        RatioInputs in;
        in.c1_us = 201.5;
        in.t_us = 608.0;
        in.t_s_us = 0.0;
        in.b_bits = 768000.0;
        in.b_s_bits = 768000.0;
        in.alpha = alpha;
        CHECK(ratio_eq_thr(in) == 1.0);
    }
}

TEST_CASE("the scaling ratio strictly decreases in the payload scale", "[engine]") {
    for (double t_s : {10.0, 100.0, 500.0}) {
        for (double b_s_factor : {1.0, 1.2, 2.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double alpha : {1.0, 1.5, 2.0, 4.0, 8.0}) {
                RatioInputs in;
                in.c1_us = 201.5;
                in.t_us = 608.0;
                in.t_s_us = t_s;
                in.b_bits = 768000.0;
                in.b_s_bits = 768000.0 * b_s_factor;
                in.alpha = alpha;
                const double r = ratio_eq_thr(in);
                CHECK(r < prev);
                prev = r;
            }
        }
    }
}

TEST_CASE("the scaling ratio validates its inputs", "[engine]") {
    RatioInputs in;
    in.c1_us = 201.5;
    in.t_us = 608.0;
    in.t_s_us = 10.0;
    in.b_bits = 768000.0;
    in.b_s_bits = 768000.0;
    in.alpha = 0.5;
    CHECK_THROWS_AS(ratio_eq_thr(in), std::invalid_argument);
    in.alpha = 1.0;
    in.c1_us = 0.0;
    CHECK_THROWS_AS(ratio_eq_thr(in), std::invalid_argument);
    in.c1_us = 201.5;
    in.t_s_us = -1.0;
    CHECK_THROWS_AS(ratio_eq_thr(in), std::invalid_argument);
}
