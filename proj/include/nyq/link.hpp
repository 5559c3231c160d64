#pragma once

#include <cstdint>
#include <vector>

#include "nyq/grid.hpp"
#include "nyq/rng.hpp"
#include "nyq/sequence.hpp"

namespace nyq {

enum class Receiver { Matched, Peak };

/**
 * @brief One simulated TDM link: N delayed branches, OOK data, AWGN,
 * correlation or peak-sampling reception.
 *
 * Frames span one common period of the sequence family; waveforms are
 * periodic so no inter-frame interference exists.
 */
struct LinkConfig {
    SequenceSpec spec;
    std::size_t samples_per_interval = 16;  ///< samples per branch slot 1/(N df), >= 16
    Receiver receiver = Receiver::Matched;
    double ebn0_db = 10.0;
    std::size_t n_bits = 0;  ///< multiple of N (whole multiplexing frames)
    std::uint64_t seed = 1;
    bool noise_enabled = true;

    void validate() const;
};

/// One BER measurement.
struct BerPoint {
    double ebn0_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
};

/// A point whose error count is below 10 carries too little statistics.
inline bool is_reliable(const BerPoint& p) { return p.errors >= 10; }

/**
 * @brief Precomputed per-configuration state: the frame grid, the N branch
 * templates, their energies, decision thresholds and peak sample indices.
 */
struct LinkContext {
    SequenceSpec spec;
    Receiver receiver = Receiver::Matched;
    TimeGrid frame_grid;                       ///< one common period, endpoint excluded
    std::vector<std::vector<double>> branch;   ///< branch[k][i] = s(t_i - k/(N df))
    std::vector<double> energy;                ///< per-branch one-bit energy, dt * sum s^2
    std::vector<double> clean_statistic;       ///< noiseless one-bit decision statistic
    std::vector<std::vector<std::size_t>> peak_index;  ///< per-branch peak sample indices

    static LinkContext make(const SequenceSpec& spec, std::size_t samples_per_interval,
                            Receiver receiver);
};

/// OOK-modulate one frame: sum of bit_k * branch_k over one common period.
/// Requires exactly N bits.
Waveform modulate_frame(const std::vector<std::uint8_t>& bits, const LinkContext& ctx);

/// Convenience overload building a context ad hoc.
Waveform modulate_frame(const std::vector<std::uint8_t>& bits, const SequenceSpec& spec,
                        std::size_t samples_per_interval);

/// Add white Gaussian noise for the given Eb/N0: per-sample variance
/// N0 / (2 dt) with N0 = eb * 10^(-ebn0_db/10). Requires eb > 0.
void awgn(Waveform& signal, double ebn0_db, double eb, NormalRng& rng);

/// Per-branch decision statistics (matched: dt * sum rx*s_k; peak: sum of
/// the branch's peak samples).
std::vector<double> receive_statistics(const Waveform& rx, const LinkContext& ctx);

/// Threshold the statistics at half the noiseless one-bit value.
std::vector<std::uint8_t> receive_frame(const Waveform& rx, const LinkContext& ctx);

/// Sweep BER over the given Eb/N0 points. Each point owns an independent
/// RNG stream derived from (seed, point index); points may be evaluated
/// concurrently and results keep input order.
std::vector<BerPoint> ber_sweep(const LinkConfig& config, const std::vector<double>& ebn0_db);

}  // namespace nyq
