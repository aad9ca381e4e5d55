#pragma once

#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ampdusim/frame.hpp"

namespace ampdusim {

/// Blind duplication policy: how many MPDUs at the head of the transmission
/// set are sent `copies` times. head_count 0 is the single-copy baseline;
/// duplicate_all covers every MPDU in the attempt.
struct Strategy {
    int head_count = 0;
    int copies = 1;
    bool duplicate_all = false;

    static Strategy base() { return {}; }
    static Strategy head(int d, int c) { return {d, c, false}; }
    static Strategy all(int c) { return {0, c, true}; }

    bool is_base() const { return !duplicate_all && head_count == 0; }

    void validate() const {
        if (copies < 1 || copies > 5)
            throw std::invalid_argument("copies must be in 1..5");
        if (head_count < 0)
            throw std::invalid_argument("head_count must be non-negative");
        if (is_base() && copies != 1)
            throw std::invalid_argument("the base strategy carries exactly one copy");
        if (!is_base() && copies < 2)
            throw std::invalid_argument("a duplicating strategy needs copies >= 2");
    }

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline std::string to_string(const Strategy& s) {
    if (s.is_base()) return "base";
    if (s.duplicate_all) return "all" + std::to_string(s.copies);
    return std::to_string(s.head_count) + "mpdu" + std::to_string(s.copies);
}

inline constexpr std::string_view kStrategyGrammar =
    "\"base\", \"<d>mpdu<c>\" with d in 1..5 and c in 2..5, or \"all<c>\" with c in 2..5";

/// Parses a strategy name, case-insensitively, per kStrategyGrammar.
inline Strategy parse_strategy(std::string_view name) {
    std::string lower;
    lower.reserve(name.size());
    for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));

    auto fail = [&]() -> Strategy {
        throw std::invalid_argument("unrecognized strategy \"" + std::string(name) +
                                    "\"; accepted: " + std::string(kStrategyGrammar));
    };

    if (lower == "base") return Strategy::base();
    if (lower.size() == 4 && lower.compare(0, 3, "all") == 0) {
        const int c = lower[3] - '0';
        if (c < 2 || c > 5) return fail();
        return Strategy::all(c);
    }
    if (lower.size() == 6 && lower.compare(1, 4, "mpdu") == 0) {
        const int d = lower[0] - '0';
        const int c = lower[5] - '0';
        if (d < 1 || d > 5 || c < 2 || c > 5) return fail();
        return Strategy::head(d, c);
    }
    return fail();
}

/// The 21 studied methods: base, the 1..4-head duplications with 2..5
/// copies, and the duplicate-everything variants with 2..5 copies.
inline std::vector<Strategy> all_presets() {
    std::vector<Strategy> out;
    out.push_back(Strategy::base());
    for (int d = 1; d <= 4; ++d)
        for (int c = 2; c <= 5; ++c) out.push_back(Strategy::head(d, c));
    for (int c = 2; c <= 5; ++c) out.push_back(Strategy::all(c));
    return out;
}

/// Builds the transmission plan for a selected set of sequence numbers.
/// The first min(head_count, |xmin|) entries carry `copies` copies, the rest
/// one; duplicate_all gives every entry `copies` copies.
inline void build_plan(std::span<const std::uint64_t> xmin, const Strategy& strat,
                       PsduPlan& out) {
    out.entries.clear();
    out.entries.reserve(xmin.size());
    const std::size_t duplicated =
        strat.duplicate_all ? xmin.size()
                            : std::min<std::size_t>(static_cast<std::size_t>(strat.head_count),
                                                    xmin.size());
    for (std::size_t i = 0; i < xmin.size(); ++i)
        out.entries.push_back({xmin[i], i < duplicated ? strat.copies : 1});
}

inline PsduPlan build_plan(std::span<const std::uint64_t> xmin, const Strategy& strat) {
    PsduPlan plan;
    build_plan(xmin, strat, plan);
    return plan;
}

}  // namespace ampdusim
