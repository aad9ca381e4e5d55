#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ampdusim/frame.hpp"

namespace ampdusim {

/// Loss model: every transmitted MPDU copy fails independently with
/// probability `per`.
struct ErrorModel {
    double per = 0.0;

    void validate() const {
        if (!(per >= 0.0 && per <= 1.0))
            throw std::invalid_argument("per must be within [0,1]");
    }
};

namespace detail {
inline std::uint64_t splitmix64_fin(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Seed for one simulation run within a larger experiment. Distinct
/// (master_seed, run_index) pairs give decorrelated streams.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    return detail::splitmix64_fin(
        detail::splitmix64_fin(master_seed + 0x9E3779B97F4A7C15ULL * (run_index + 1)));
}

/// Counter-based splitmix64 stream. Identical seeds give bit-identical
/// output sequences; period 2^64.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(seed) {}

    static RandomSource for_run(std::uint64_t master_seed, std::uint64_t run_index) {
        return RandomSource(derive_seed(master_seed, run_index));
    }

    std::uint64_t next_u64() {
        return detail::splitmix64_fin(state_ += 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform double in [0,1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// p = 1 - (1-BER)^B. expm1/log1p keep tiny rates accurate.
inline double per_from_ber(double ber, long long frame_bits) {
    if (!(ber >= 0.0 && ber <= 1.0))
        throw std::invalid_argument("ber must be within [0,1]");
    if (frame_bits < 1)
        throw std::invalid_argument("frame_bits must be positive");
    if (ber == 0.0) return 0.0;
    if (ber == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(frame_bits) * std::log1p(-ber));
}

/// Inverse of per_from_ber; per = 1 has no finite BER.
inline double ber_from_per(double per, long long frame_bits) {
    if (!(per >= 0.0 && per < 1.0))
        throw std::domain_error("per must be within [0,1) to recover a BER");
    if (frame_bits < 1)
        throw std::invalid_argument("frame_bits must be positive");
    if (per == 0.0) return 0.0;
    return -std::expm1(std::log1p(-per) / static_cast<double>(frame_bits));
}

/// An MPDU with `copies` transmissions in one PSDU survives unless all fail.
inline double mpdu_delivered_prob(double per, int copies) {
    if (copies < 1)
        throw std::invalid_argument("copies must be positive");
    return 1.0 - std::pow(per, copies);
}

/// Samples one transmission attempt. Every copy is an independent Bernoulli
/// trial; a sequence number is delivered when at least one of its copies
/// succeeds. Exactly `copies` values are drawn per entry, in plan order, so
/// the stream consumption is deterministic.
inline void sample_plan_outcome(const PsduPlan& plan, const ErrorModel& model,
                                RandomSource& rng, std::vector<std::uint64_t>& delivered) {
    delivered.clear();
    const double p_succ = 1.0 - model.per;
    for (const auto& entry : plan.entries) {
        bool ok = false;
        for (int c = 0; c < entry.copies; ++c)
            ok |= rng.next_unit() < p_succ;
        if (ok) delivered.push_back(entry.seq);
    }
}

inline std::vector<std::uint64_t> sample_plan_outcome(const PsduPlan& plan,
                                                      const ErrorModel& model,
                                                      RandomSource& rng) {
    std::vector<std::uint64_t> delivered;
    sample_plan_outcome(plan, model, rng, delivered);
    return delivered;
}

}  // namespace ampdusim
