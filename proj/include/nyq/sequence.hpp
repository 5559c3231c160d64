#pragma once

#include <cstddef>

#include "nyq/grid.hpp"

namespace nyq {

enum class SequenceKind { Nss, Cnss };

/**
 * @brief Parameters of a Nyquist sinc sequence family.
 *
 * n_lines is the number of spectral lines N, delta_f the line spacing in Hz.
 * The complementary (sine-series) kind exists only for even N.
 */
struct SequenceSpec {
    int n_lines = 4;
    double delta_f = 1.0;
    SequenceKind kind = SequenceKind::Nss;

    void validate() const;
    bool even() const { return n_lines % 2 == 0; }

    /// Repetition interval of the underlying pulse train, 1/delta_f.
    double repetition_interval() const { return 1.0 / delta_f; }

    /// Shortest interval over which every spectral line completes whole
    /// cycles: 1/delta_f for odd N, 2/delta_f for even N (the half-integer
    /// harmonics (n-0.5)*delta_f repeat only over 2/delta_f).
    double common_period() const;
};

/// Dirichlet-kernel closed form sin(N*pi*df*t) / (N*sin(pi*df*t)).
/// Near the removable singularities sin(pi*df*t)=0 (|sin| < eps_sing) the
/// value is taken from the pole-free Fourier series, which equals the
/// analytic limit (-1)^(m(N-1)) at t = m/df.
double nss_closed_form(const SequenceSpec& spec, double t, double eps_sing = 1e-8);

/// Cosine Fourier series of the same sequence:
///   odd N:  1/N + (2/N) * sum_{m=1}^{(N-1)/2} cos(2*pi*m*df*t)
///   even N: (2/N) * sum_{n=1}^{N/2} cos(2*pi*(n-0.5)*df*t)
double nss_fourier(const SequenceSpec& spec, double t);

/// Complementary sequence (even N only):
///   (2/N) * sum_{n=1}^{N/2} sin(2*pi*(n-0.5)*df*t)
double cnss(const SequenceSpec& spec, double t);

/// Value of the sequence described by spec at time t, shifted by t0.
/// NSS uses the closed form with the singularity policy above.
double sequence_value(const SequenceSpec& spec, double t, double shift = 0.0);

/**
 * @brief Raised-cosine pulse.
 *
 * sinc(t/dT) * cos(pi*a*t/dT) / (1 - (2*a*t/dT)^2) with normalized sinc,
 * dT the peak-to-first-zero duration and a the roll-off in [0, 1].
 * Removable singularities (t = 0 and t = dT/(2a)) return analytic limits.
 */
double raised_cosine(double delta_t, double rolloff, double t);

/// Pointwise evaluation of the (optionally shifted) sequence onto a grid.
Waveform sample(const SequenceSpec& spec, const TimeGrid& grid, double shift = 0.0);

Waveform sample_raised_cosine(double delta_t, double rolloff, const TimeGrid& grid);

/// The two dominant peaks of a CNSS repetition interval, mirror-symmetric
/// about half the interval. For N = 2 the two coincide at 1/(2*df).
struct CnssPeaks {
    double t_first;   ///< location of the first peak in (0, 1/(2 df)]
    double t_second;  ///< mirror location 1/df - t_first
    double amplitude; ///< common peak value
};

/// Locate the CNSS peak pair by coarse scan plus golden-section refinement.
CnssPeaks cnss_peaks(const SequenceSpec& spec);

}  // namespace nyq
