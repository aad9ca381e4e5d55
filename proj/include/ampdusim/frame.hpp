#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampdusim/timing.hpp"

namespace ampdusim {

// 802.11ac aggregate limits.
inline constexpr int kMaxDistinctMpdus = 64;      // Block Ack bitmap width
inline constexpr int kMaxMsduBytes = 2304;
inline constexpr int kMaxMpduBytes = 11454;       // MPDU within an aggregate
inline constexpr long long kMaxPsduBytes = 1048575;
inline constexpr double kMaxPsduAirtimeUs = 5400.0;

enum class AggregationMode { Ampdu, TwoLevel };

inline const char* to_string(AggregationMode mode) {
    return mode == AggregationMode::Ampdu ? "ampdu" : "two_level";
}

/// Sizing of one aggregate element: MSDU payload(s), MAC framing and the
/// 4-byte alignment padding applied per subframe and per element.
struct FrameGeometry {
    int msdu_bytes = 1500;             // L
    int msdus_per_mpdu = 1;            // 1..7; meaningful for TwoLevel only
    AggregationMode mode = AggregationMode::Ampdu;
    int mac_delimiter_bytes = 4;
    int mac_header_bytes = 32;
    int fcs_bytes = 4;
    int subframe_header_bytes = 14;

    void validate() const;

    /// Bytes of one A-MSDU subframe after padding (TwoLevel only).
    int subframe_bytes() const {
        const int raw = subframe_header_bytes + msdu_bytes;
        return 4 * ((raw + 3) / 4);
    }

    /// MPDU size without the delimiter; checked against the 11454-byte limit.
    int mpdu_bytes() const {
        if (mode == AggregationMode::Ampdu)
            return mac_header_bytes + fcs_bytes + msdu_bytes;
        return mac_header_bytes + fcs_bytes + msdus_per_mpdu * subframe_bytes();
    }
};

inline void FrameGeometry::validate() const {
    if (msdu_bytes < 1)
        throw std::invalid_argument("msdu_bytes must be a positive integer");
    if (msdu_bytes > kMaxMsduBytes)
        throw std::invalid_argument("msdu_bytes " + std::to_string(msdu_bytes) +
                                    " exceeds the " + std::to_string(kMaxMsduBytes) +
                                    "-byte MSDU limit");
    if (msdus_per_mpdu < 1 || msdus_per_mpdu > 7)
        throw std::invalid_argument("msdus_per_mpdu must be in 1..7");
    if (mode == AggregationMode::Ampdu && msdus_per_mpdu != 1)
        throw std::invalid_argument("ampdu mode carries exactly one MSDU per MPDU");
    if (mac_delimiter_bytes < 0 || mac_header_bytes < 0 || fcs_bytes < 0 ||
        subframe_header_bytes < 0)
        throw std::invalid_argument("framing byte counts must be non-negative");
    if (mpdu_bytes() > kMaxMpduBytes)
        throw std::invalid_argument("mpdu of " + std::to_string(mpdu_bytes()) +
                                    " bytes exceeds the " + std::to_string(kMaxMpduBytes) +
                                    "-byte MPDU limit");
}

/// One scheduled MPDU: its sequence number and how many copies go out.
struct PlanEntry {
    std::uint64_t seq = 0;
    int copies = 1;
};

/// The MPDUs of one PSDU, in transmission order.
/// Valid plans are non-empty with strictly increasing sequence numbers.
struct PsduPlan {
    std::vector<PlanEntry> entries;

    std::size_t distinct_count() const { return entries.size(); }

    long long total_copies() const {
        long long n = 0;
        for (const auto& e : entries) n += e.copies;
        return n;
    }

    void validate_structure() const {
        if (entries.empty())
            throw std::invalid_argument("plan has no entries");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].copies < 1)
                throw std::invalid_argument("plan entry copies must be positive");
            if (i > 0 && entries[i].seq <= entries[i - 1].seq)
                throw std::invalid_argument("plan seq values must be strictly increasing");
        }
    }
};

/// Padded on-air size of one aggregate element (delimiter included).
inline int mpdu_element_bytes(const FrameGeometry& geom) {
    geom.validate();
    const int raw = geom.mac_delimiter_bytes + geom.mpdu_bytes();
    return 4 * ((raw + 3) / 4);
}

/// PSDU payload bits: every copy of every element plus SERVICE and TAIL.
inline long long psdu_bits(const PsduPlan& plan, const FrameGeometry& geom,
                           const MacTimingProfile& timing) {
    if (plan.entries.empty())
        throw std::invalid_argument("plan has no entries");
    const long long element = mpdu_element_bytes(geom);
    return 8 * element * plan.total_copies() + timing.service_tail_bits;
}

/// PSDU airtime, quantized to whole OFDM symbols.
inline double psdu_airtime_us(const PsduPlan& plan, const FrameGeometry& geom,
                              const MacTimingProfile& timing, const PhyProfile& phy) {
    const long long bits = psdu_bits(plan, geom, timing);
    const double symbols = std::ceil(static_cast<double>(bits) / phy.data_bits_per_symbol);
    return timing.t_sym_us * symbols;
}

/// Outcome of checking a plan against the aggregate limits.
struct PlanVerdict {
    bool accepted = true;
    std::vector<std::string> violations;  // names every violated constraint

    explicit operator bool() const { return accepted; }

    std::string summary() const {
        if (accepted) return "accept";
        std::string s = "reject:";
        for (const auto& v : violations) s += " " + v;
        return s;
    }
};

/// Checks the 64-sequence-number bound, the 5.4 ms airtime cap, the PSDU
/// byte limit and the per-MPDU size limit. Duplicate copies do not count
/// against the 64 bound; they do count toward airtime and PSDU bytes.
inline PlanVerdict validate_plan(const PsduPlan& plan, const FrameGeometry& geom,
                                 const MacTimingProfile& timing, const PhyProfile& phy) {
    plan.validate_structure();
    PlanVerdict verdict;
    auto flag = [&](std::string msg) {
        verdict.accepted = false;
        verdict.violations.push_back(std::move(msg));
    };

    if (plan.distinct_count() > static_cast<std::size_t>(kMaxDistinctMpdus))
        flag("distinct sequence numbers " + std::to_string(plan.distinct_count()) +
             " exceed the limit of " + std::to_string(kMaxDistinctMpdus));

    if (geom.mpdu_bytes() > kMaxMpduBytes)
        flag("mpdu of " + std::to_string(geom.mpdu_bytes()) + " bytes exceeds the " +
             std::to_string(kMaxMpduBytes) + "-byte MPDU limit");

    const long long element = mpdu_element_bytes(geom);
    const long long total_bytes = element * plan.total_copies();
    if (total_bytes > kMaxPsduBytes)
        flag("psdu of " + std::to_string(total_bytes) + " bytes exceeds the " +
             std::to_string(kMaxPsduBytes) + "-byte limit");

    const double airtime = psdu_airtime_us(plan, geom, timing, phy);
    if (airtime > kMaxPsduAirtimeUs)
        flag("airtime of " + std::to_string(airtime) + " us exceeds the " +
             std::to_string(kMaxPsduAirtimeUs) + " us cap");

    return verdict;
}

/// Closed-form throughput of a single transmission that carries x_distinct
/// single-copy MPDUs, each delivered with probability p_succ. Mbps.
inline double analytic_throughput_eq1(int x_distinct, double p_succ,
                                      const FrameGeometry& geom,
                                      const MacTimingProfile& timing,
                                      const PhyProfile& phy) {
    if (x_distinct < 1 || x_distinct > kMaxDistinctMpdus)
        throw std::domain_error("x_distinct must be in 1.." + std::to_string(kMaxDistinctMpdus));
    if (!(p_succ >= 0.0 && p_succ <= 1.0))
        throw std::domain_error("p_succ must be within [0,1]");
    PsduPlan plan;
    plan.entries.reserve(static_cast<std::size_t>(x_distinct));
    for (int i = 0; i < x_distinct; ++i)
        plan.entries.push_back({static_cast<std::uint64_t>(i), 1});
    const double payload_bits =
        8.0 * geom.msdu_bytes * geom.msdus_per_mpdu * x_distinct * p_succ;
    return payload_bits / (timing.c1_us() + psdu_airtime_us(plan, geom, timing, phy));
}

}  // namespace ampdusim
