#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ampdusim/frame.hpp"

namespace ampdusim {

/// ARQ transmission window over a saturated sequence-number stream.
///
/// The window covers [base_seq, base_seq + width - 1]. Delivery flags are a
/// bitmask relative to the base; bit 0 is the base itself and is clear by
/// definition (the base is the smallest undelivered sequence number). When
/// a contiguous delivered prefix forms, the window slides past it and new
/// undelivered sequence numbers enter at the tail.
class WindowState {
public:
    WindowState(std::uint64_t base_seq, int width) : base_(base_seq), width_(width) {
        if (width < 1 || width > kMaxDistinctMpdus)
            throw std::invalid_argument("window width must be in 1.." +
                                        std::to_string(kMaxDistinctMpdus));
    }

    std::uint64_t base_seq() const { return base_; }
    int width() const { return width_; }

    /// I: delivered MPDUs currently held in the window.
    int delivered_count() const { return std::popcount(flags_); }

    bool contains(std::uint64_t seq) const {
        return seq >= base_ && seq - base_ < static_cast<std::uint64_t>(width_);
    }

    bool is_delivered(std::uint64_t seq) const {
        return contains(seq) && (flags_ >> (seq - base_)) & 1u;
    }

    /// The min(k, width - I) smallest undelivered sequence numbers, ascending.
    /// The first element is always the window base.
    void select_xmin(int k, std::vector<std::uint64_t>& out) const {
        if (k < 1 || k > width_)
            throw std::invalid_argument("k must be in 1..width");
        out.clear();
        int want = k;
        const int undelivered = width_ - delivered_count();
        if (undelivered < want) want = undelivered;
        for (int i = 0; i < width_ && static_cast<int>(out.size()) < want; ++i) {
            if (!((flags_ >> i) & 1u)) out.push_back(base_ + static_cast<std::uint64_t>(i));
        }
    }

    std::vector<std::uint64_t> select_xmin(int k) const {
        std::vector<std::uint64_t> out;
        select_xmin(k, out);
        return out;
    }

    /// Applies Block Ack feedback: marks the given sequence numbers delivered
    /// (idempotently) and slides the base past the contiguous delivered
    /// prefix. Returns how many flags flipped from undelivered to delivered.
    int apply_back(std::span<const std::uint64_t> delivered_now) {
        int newly = 0;
        for (std::uint64_t seq : delivered_now) {
            if (!contains(seq))
                throw std::out_of_range("seq " + std::to_string(seq) +
                                        " is outside the transmission window");
            const std::uint64_t bit = 1ULL << (seq - base_);
            if (!(flags_ & bit)) {
                flags_ |= bit;
                ++newly;
            }
        }
        const int slide = std::countr_one(flags_);
        if (slide >= 64) {
            flags_ = 0;
        } else {
            flags_ >>= slide;
        }
        base_ += static_cast<std::uint64_t>(slide);
        return newly;
    }

private:
    std::uint64_t base_ = 0;
    int width_ = kMaxDistinctMpdus;
    std::uint64_t flags_ = 0;  // bit i = delivered(base_ + i); bit 0 always clear
};

}  // namespace ampdusim
