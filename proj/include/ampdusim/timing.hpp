#pragma once

#include <stdexcept>
#include <string>

namespace ampdusim {

/// Per-transmission fixed MAC/PHY overheads, all in microseconds.
///
/// Defaults are the Best Effort access category figures for an OFDM PHY:
/// AIFS 43 us, mean backoff 7.5 slots of 9 us, a 43 us preamble (3 spatial
/// streams), SIFS 16 us and a 32 us Block Ack (legacy preamble included,
/// basic rate 24 Mbps). SERVICE + TAIL add 22 bits to every PSDU.
struct MacTimingProfile {
    double aifs_us = 43.0;
    double slot_time_us = 9.0;
    double avg_backoff_us = 67.5;  // 7.5 slots, collision-free mean
    double phy_preamble_us = 43.0;
    double sifs_us = 16.0;
    double back_time_us = 32.0;
    double t_sym_us = 4.0;
    int service_tail_bits = 22;

    /// Fixed channel time spent around the PSDU itself.
    double c1_us() const {
        return aifs_us + avg_backoff_us + phy_preamble_us + sifs_us + back_time_us;
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0))
                throw std::invalid_argument(std::string(name) + " must be strictly positive");
        };
        positive(aifs_us, "aifs_us");
        positive(slot_time_us, "slot_time_us");
        positive(avg_backoff_us, "avg_backoff_us");
        positive(phy_preamble_us, "phy_preamble_us");
        positive(sifs_us, "sifs_us");
        positive(back_time_us, "back_time_us");
        positive(t_sym_us, "t_sym_us");
        if (service_tail_bits < 0)
            throw std::invalid_argument("service_tail_bits must be non-negative");
    }
};

/// Data rate plus the bits one OFDM symbol carries at that rate.
struct PhyProfile {
    double rate_mbps = 0.0;
    double data_bits_per_symbol = 0.0;  // rate_mbps * t_sym_us

    static PhyProfile from_rate(double rate_mbps, double t_sym_us = 4.0) {
        PhyProfile p;
        p.rate_mbps = rate_mbps;
        p.data_bits_per_symbol = rate_mbps * t_sym_us;
        p.validate();
        return p;
    }

    void validate() const {
        if (!(rate_mbps > 0.0))
            throw std::invalid_argument("rate_mbps must be strictly positive");
        if (!(data_bits_per_symbol > 0.0))
            throw std::invalid_argument("data_bits_per_symbol must be strictly positive");
    }
};

}  // namespace ampdusim
