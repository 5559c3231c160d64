#pragma once

#include <vector>

#include "nyq/grid.hpp"

namespace nyq {

/// Two sinc conventions coexist in this library and are always named:
/// sinc_norm(x) = sin(pi x)/(pi x) (unit zero spacing) and
/// sinc_u(x) = sin(x)/x (zero spacing pi).
enum class SincConvention { Normalized, Unnormalized };

double sinc_norm(double x);
double sinc_u(double x);

/// A cos(omega t + phi) tone.
struct Sinusoid {
    double omega = 1.0;  ///< rad/s, > 0
    double amplitude = 1.0;
    double phase = 0.0;

    double value(double t) const;
};

/// Steady-state (Weyl) fractional derivative of a tone:
/// D^a [A cos(wt + p)] = A w^a cos(wt + p + pi a / 2).
Sinusoid weyl_derivative(const Sinusoid& tone, double alpha);

/**
 * @brief Riemann-Liouville fractional derivative with finite lower limit.
 *
 * D_a^alpha f(t) = d/dt I_a^(1-alpha) f(t). The singular-kernel integral is
 * evaluated by product integration (f piecewise linear between samples, the
 * kernel (t-tau)^(-alpha)/Gamma(1-alpha) integrated exactly per cell); the
 * outer derivative is a centered difference with h = grid dt. Orders in
 * [1, 2) apply a second central difference to I^(2-alpha). Converges at
 * O(dt^(2-alpha)) for smooth f. Valid for 0 <= alpha < 2.
 */
double rl_derivative(const Waveform& f, double alpha, double a, double t);

/// Fractional tangent line through (t0, f(t0)) with slope D^alpha f |_(t0).
double tangent_line(const Sinusoid& f, double t0, double alpha, double t);
double tangent_line(const Waveform& f, double a, double t0, double alpha, double t);

/// Sampled fractional-order function alpha(t).
struct Trajectory {
    TimeGrid grid;
    std::vector<double> alpha_samples;

    void validate() const;
    /// Piecewise-linear interpolation, clamped at the grid ends.
    double alpha_at(double t) const;
};

/**
 * @brief Trajectory that reshapes a sine into a sinc:
 * alpha(u) = (2/pi) asin(sinc(u - 2pi)), principal arcsin branch.
 *
 * The default unnormalized convention is the one forced by the tangent-line
 * derivation; |sinc| <= 1 everywhere so the branch never switches.
 */
Trajectory sine_to_sinc_trajectory(const TimeGrid& grid,
                                   SincConvention conv = SincConvention::Unnormalized);

/// Pointwise sin(pi alpha / 2) on the trajectory grid translated by -shift,
/// so the result reproduces the sinc the trajectory was built from.
Waveform reconstruct_from_trajectory(const Trajectory& traj, double shift);

/**
 * @brief Residual of the sinc-shift orthogonality integral:
 * integral over [-W, W] of sinc(t - i) * sin(pi alpha(t + 2pi) / 2) dt,
 * minus delta_{i0}. Reported, never asserted: whether the anchor-2pi
 * trajectory can meet the integer-shift condition is an open point, and the
 * value depends strongly on the sinc convention.
 */
double sinc_orthogonality_residual(const Trajectory& traj, int i, double half_width,
                                   SincConvention conv);

/// F(alpha) samples of a tone over a symmetric window.
struct DimensionalSpectrum {
    std::vector<double> alphas;
    std::vector<double> values;
    double window = 0.0;  ///< seconds, integration over [-window/2, window/2]
};

/// Windowed dimensional transform of a tone: for each alpha, the quadrature
/// of w^alpha A cos(wt + phi + pi alpha/2) over [-T/2, T/2].
DimensionalSpectrum dimensional_transform(const Sinusoid& tone, const std::vector<double>& alphas,
                                          double window);

/// Closed antiderivative of the same integral:
/// 2 A w^(alpha-1) sin(w T / 2) cos(phi + pi alpha / 2).
double dimensional_transform_closed(const Sinusoid& tone, double alpha, double window);

}  // namespace nyq
