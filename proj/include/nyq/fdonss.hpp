#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nyq/frac.hpp"
#include "nyq/gram.hpp"
#include "nyq/sequence.hpp"

namespace nyq {

/**
 * @brief Fractional-dimensional-order Nyquist sequence value (even N):
 *
 *   (2/N) sum_n ((n-0.5) w0)^alpha(t) cos((n-0.5) w0 t + pi alpha(t) / 2)
 *
 * with w0 = 2 pi delta_f. Each harmonic is rotated by the steady-state tone
 * rule with the order frozen at the evaluation time; alpha(t) interpolates
 * linearly between trajectory samples.
 */
double fdonss_eval(const SequenceSpec& spec, const Trajectory& traj, double t);

/// Single-harmonic term of fdonss_eval (n = 1 .. N/2); the full value is the
/// plain left-to-right sum of these.
double fdonss_harmonic(const SequenceSpec& spec, const Trajectory& traj, int n, double t);

enum class GramMode {
    NssVsFd,  ///< delayed NSS against delayed FDONSS
    FdVsFd    ///< delayed FDONSS against delayed FDONSS
};

/**
 * @brief Orthogonality matrix of the N delayed sequences over one common
 * period, normalized so that alpha == 0 yields the identity.
 *
 * Delays are the branch lattice i/(N df), realized per harmonic as the phase
 * shifts (2n-1) i pi / N. Quadrature is composite Gauss-Legendre aligned to
 * the trajectory samples with at least 64 points per shortest harmonic
 * period; the grid is doubled once and both results must agree to 1e-8.
 */
Matrix fdonss_gram(const SequenceSpec& spec, const Trajectory& traj, GramMode mode);

enum class SolveTarget {
    Fdonss,   ///< NssVsFd == I
    Cfdonss   ///< NssVsFd == 0 and FdVsFd == I, jointly weighted
};

struct SolveOptions {
    int knots = 8;            ///< piecewise-linear knots over one common period, >= 4
    int max_iter = 100;
    double tol = 1e-9;        ///< stop when the residual norm drops below this
    double weight_21 = 1.0;   ///< weight of the cross-orthogonality block (Cfdonss)
    double fd_step = 1e-6;    ///< central-difference step for the Jacobian
};

struct IterRecord {
    int iteration = 0;
    double residual = 0.0;
    double step_norm = 0.0;
};

struct SolveResult {
    Trajectory trajectory;
    std::vector<IterRecord> history;  ///< entry 0 is the initial residual
    bool converged = false;
    std::string stop_reason;
};

/// Thrown when the residual turns non-finite; carries the last finite iterate.
struct SolveDiverged : std::runtime_error {
    Trajectory last_iterate;
    explicit SolveDiverged(Trajectory last)
        : std::runtime_error("trajectory solve diverged (non-finite residual)"),
          last_iterate(std::move(last)) {}
};

/**
 * @brief Damped Gauss-Newton search for a trajectory alpha(t) meeting the
 * chosen orthogonality target.
 *
 * alpha(t) is piecewise linear on `knots` uniform knots over one common
 * period; the objective is the sum of squared deviations of fdonss_gram from
 * its target, the Jacobian is taken by central differences and each step is
 * halved until the residual norm does not increase, so the recorded history
 * is non-increasing. `init` is resampled onto the knot grid.
 */
SolveResult trajectory_solve(const SequenceSpec& spec, SolveTarget target,
                             const Trajectory& init, const SolveOptions& options = {});

/// Constant trajectory on `knots` uniform knots over one common period.
Trajectory constant_trajectory(const SequenceSpec& spec, int knots, double alpha);

}  // namespace nyq
