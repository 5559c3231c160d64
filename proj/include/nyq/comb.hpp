#pragma once

#include <cstddef>
#include <vector>

#include "nyq/grid.hpp"
#include "nyq/sequence.hpp"

namespace nyq {

/// One spectral line: cosine of the given frequency, amplitude and phase.
struct CombLine {
    double frequency_hz = 0.0;
    double amplitude = 0.0;
    double phase_rad = 0.0;
};

/**
 * @brief Phase-locked frequency comb: a finite set of lines with strictly
 * increasing frequencies, all multiples (integer or half-integer) of delta_f.
 */
struct FrequencyComb {
    std::vector<CombLine> lines;
    double delta_f = 1.0;

    void validate() const;
};

/// Comb of the given sequence: odd-N NSS has lines m*df (m = 0 .. (N-1)/2)
/// with amplitudes 1/N (DC) and 2/N; even N has lines (n-0.5)*df with
/// amplitudes 2/N. CNSS lines carry phase -pi/2 (sine as shifted cosine).
FrequencyComb nyquist_comb(const SequenceSpec& spec);

/// Branch delay of the k-th TDM branch, k/(N*df). Requires 0 <= k <= N-1.
double branch_delay(const SequenceSpec& spec, int k);

/// Phase acquired by a line at `frequency_hz` under a delay t0: 2*pi*f*t0.
double phase_for_delay(double frequency_hz, double t0);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double phi);

/// Delay the comb by t0: each line's phase decremented by 2*pi*f*t0 and
/// wrapped into (-pi, pi]. Amplitudes are untouched.
FrequencyComb apply_delay_as_phase(const FrequencyComb& comb, double t0);

/// Sum of the comb's cosine lines evaluated on the grid.
Waveform synthesize(const FrequencyComb& comb, const TimeGrid& grid);

/**
 * @brief Recover a pure delay between two combs from their phase difference.
 *
 * Unwraps the per-line phase difference over increasing frequency, fits an
 * affine function of frequency by least squares and returns -slope/(2*pi).
 * The result is the delay modulo the comb's unambiguous range (1/delta_f for
 * integer-harmonic combs, reached at half that for the sequential unwrap).
 * Throws if the combs differ in line frequencies or if the unwrapped phase
 * difference deviates from the affine fit by more than `linearity_tol`.
 */
double phase_slope(const FrequencyComb& before, const FrequencyComb& after,
                   double linearity_tol = 1e-9);

}  // namespace nyq
