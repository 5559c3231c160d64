#include "nyq/fdonss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nyq/quadrature.hpp"

namespace nyq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_even(const SequenceSpec& spec, const char* who) {
    spec.validate();
    if (spec.n_lines % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": needs an even number of lines");
}

}  // namespace

double fdonss_harmonic(const SequenceSpec& spec, const Trajectory& traj, int n, double t) {
    require_even(spec, "fdonss_harmonic");
    if (n < 1 || n > spec.n_lines / 2)
        throw std::invalid_argument("fdonss_harmonic: n must lie in [1, N/2]");
    const double w0 = 2.0 * kPi * spec.delta_f;
    const double wn = (n - 0.5) * w0;
    const double alpha = traj.alpha_at(t);
    return (2.0 / spec.n_lines) * std::pow(wn, alpha) *
           std::cos(wn * t + kPi * alpha / 2.0);
}

double fdonss_eval(const SequenceSpec& spec, const Trajectory& traj, double t) {
    require_even(spec, "fdonss_eval");
    double acc = 0.0;
    for (int n = 1; n <= spec.n_lines / 2; ++n) acc += fdonss_harmonic(spec, traj, n, t);
    return acc;
}

namespace {

/**
 * Fused evaluation of one quadrature node for every (i, j) pair.
 *
 * With harmonics w_n = (n-0.5) w0 and per-branch phase shifts
 * phi(n, i) = (2n-1) i pi / N (the branch delay i/(N df) expressed per
 * harmonic), accumulates weight * lhs_i(t) * rhs_j(t) into g, where lhs is
 * the plain comb (alpha = 0) or the fractional one depending on the mode.
 */
struct GramAccumulator {
    int n_branches;
    int n_harm;
    std::vector<double> wn;        // harmonic angular frequencies
    std::vector<double> cos_phi;   // [n * n_branches + i]
    std::vector<double> sin_phi;
    GramMode mode;
    const Trajectory* traj;

    GramAccumulator(const SequenceSpec& spec, const Trajectory& trajectory, GramMode m)
        : n_branches(spec.n_lines),
          n_harm(spec.n_lines / 2),
          mode(m),
          traj(&trajectory) {
        const double w0 = 2.0 * kPi * spec.delta_f;
        wn.resize(n_harm);
        cos_phi.resize(static_cast<std::size_t>(n_harm) * n_branches);
        sin_phi.resize(static_cast<std::size_t>(n_harm) * n_branches);
        for (int n = 0; n < n_harm; ++n) {
            wn[n] = (n + 0.5) * w0;
            for (int i = 0; i < n_branches; ++i) {
                const double phi = (2 * n + 1) * i * kPi / n_branches;
                cos_phi[static_cast<std::size_t>(n) * n_branches + i] = std::cos(phi);
                sin_phi[static_cast<std::size_t>(n) * n_branches + i] = std::sin(phi);
            }
        }
    }

    void add_node(double t, double weight, Matrix& g, std::vector<double>& lhs,
                  std::vector<double>& rhs) const {
        const double alpha = traj->alpha_at(t);
        const double rot = kPi * alpha / 2.0;
        const double cr = std::cos(rot), sr = std::sin(rot);
        const double scale = 2.0 / n_branches;

        std::fill(lhs.begin(), lhs.end(), 0.0);
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (int n = 0; n < n_harm; ++n) {
            const double c = std::cos(wn[n] * t);
            const double s = std::sin(wn[n] * t);
            // Weyl-rotated, amplitude-scaled tone of this harmonic.
            const double gain = std::pow(wn[n], alpha);
            const double cf = gain * (c * cr - s * sr);
            const double sf = gain * (s * cr + c * sr);
            const double* cp = &cos_phi[static_cast<std::size_t>(n) * n_branches];
            const double* sp = &sin_phi[static_cast<std::size_t>(n) * n_branches];
            for (int i = 0; i < n_branches; ++i) {
                // cos(w t - phi + rot') expands over the phase tables.
                rhs[i] += cf * cp[i] + sf * sp[i];
                if (mode == GramMode::NssVsFd)
                    lhs[i] += c * cp[i] + s * sp[i];
            }
        }
        for (int i = 0; i < n_branches; ++i) {
            rhs[i] *= scale;
            if (mode == GramMode::NssVsFd) lhs[i] *= scale;
        }
        const std::vector<double>& left = (mode == GramMode::NssVsFd) ? lhs : rhs;
        for (int i = 0; i < n_branches; ++i) {
            const double wl = weight * left[i];
            for (int j = 0; j < n_branches; ++j) g.at(i, j) += wl * rhs[j];
        }
    }
};

Matrix gram_once(const SequenceSpec& spec, const Trajectory& traj, GramMode mode,
                 std::size_t points_scale) {
    const double period = spec.common_period();
    const double f_max = (spec.n_lines / 2 - 0.5) * spec.delta_f;

    // Integration cells follow the trajectory grid so that every cell sees a
    // smooth (piecewise-linear alpha) integrand.
    std::vector<double> edges;
    edges.push_back(0.0);
    for (std::size_t k = 0; k < traj.grid.n_samples; ++k) {
        const double t = traj.grid.time(k);
        if (t > 1e-12 * period && t < period * (1.0 - 1e-12)) edges.push_back(t);
    }
    edges.push_back(period);

    GramAccumulator acc(spec, traj, mode);
    Matrix g(static_cast<std::size_t>(spec.n_lines));
    std::vector<double> lhs(spec.n_lines), rhs(spec.n_lines);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        const std::size_t points = points_scale *
            std::max<std::size_t>(16, static_cast<std::size_t>(
                std::ceil(64.0 * (b - a) * f_max)));
        const GaussLegendre& rule = gauss_legendre(points);
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t q = 0; q < points; ++q)
            acc.add_node(mid + half * rule.nodes[q], half * rule.weights[q], g, lhs, rhs);
    }

    // Normalize so that alpha == 0 reproduces the identity.
    const double s0 = period / spec.n_lines;
    for (double& v : g.v) v /= s0;
    return g;
}

}  // namespace

Matrix fdonss_gram(const SequenceSpec& spec, const Trajectory& traj, GramMode mode) {
    require_even(spec, "fdonss_gram");
    traj.validate();

    const Matrix coarse = gram_once(spec, traj, mode, 1);
    const Matrix fine = gram_once(spec, traj, mode, 2);

    // Agreement to 1e-8 relative to the matrix scale; non-finite entries are
    // passed through for the caller (the solver rejects such iterates).
    bool finite = true;
    double diff = 0.0, scale = 1.0;
    for (std::size_t k = 0; k < fine.v.size(); ++k) {
        if (!std::isfinite(fine.v[k]) || !std::isfinite(coarse.v[k])) {
            finite = false;
            break;
        }
        diff = std::max(diff, std::abs(fine.v[k] - coarse.v[k]));
        scale = std::max(scale, std::abs(fine.v[k]));
    }
    if (finite && diff > 1e-8 * scale)
        throw std::runtime_error("fdonss_gram: doubled quadrature grid disagrees beyond 1e-8");
    return fine;
}

Trajectory constant_trajectory(const SequenceSpec& spec, int knots, double alpha) {
    require_even(spec, "constant_trajectory");
    if (knots < 2) throw std::invalid_argument("constant_trajectory: knots must be >= 2");
    const double period = spec.common_period();
    Trajectory traj;
    traj.grid = TimeGrid{0.0, period / (knots - 1), static_cast<std::size_t>(knots)};
    traj.alpha_samples.assign(static_cast<std::size_t>(knots), alpha);
    return traj;
}

namespace {

std::vector<double> residual_vector(const SequenceSpec& spec, SolveTarget target,
                                    const Trajectory& traj, double weight_21) {
    std::vector<double> r;
    if (target == SolveTarget::Fdonss) {
        const Matrix g = fdonss_gram(spec, traj, GramMode::NssVsFd);
        r.reserve(g.v.size());
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                r.push_back(g.at(i, j) - (i == j ? 1.0 : 0.0));
        return r;
    }
    const Matrix g21 = fdonss_gram(spec, traj, GramMode::NssVsFd);
    const Matrix g22 = fdonss_gram(spec, traj, GramMode::FdVsFd);
    const double w = std::sqrt(weight_21);
    r.reserve(g21.v.size() + g22.v.size());
    for (std::size_t i = 0; i < g21.n; ++i)
        for (std::size_t j = 0; j < g21.n; ++j) r.push_back(w * g21.at(i, j));
    for (std::size_t i = 0; i < g22.n; ++i)
        for (std::size_t j = 0; j < g22.n; ++j)
            r.push_back(g22.at(i, j) - (i == j ? 1.0 : 0.0));
    return r;
}

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

/// Solve (A + ridge I) x = b in place for a small SPD matrix via Cholesky.
bool cholesky_solve(std::vector<double> a, std::size_t n, std::vector<double> b,
                    double ridge, std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] += ridge;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0.0) return false;
                a[i * n + i] = std::sqrt(s);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * x[k];
        x[ii] = s / a[ii * n + ii];
    }
    return true;
}

}  // namespace

SolveResult trajectory_solve(const SequenceSpec& spec, SolveTarget target,
                             const Trajectory& init, const SolveOptions& options) {
    require_even(spec, "trajectory_solve");
    init.validate();
    if (options.knots < 4) throw std::invalid_argument("trajectory_solve: knots must be >= 4");
    if (options.max_iter < 0) throw std::invalid_argument("trajectory_solve: max_iter < 0");

    const std::size_t k = static_cast<std::size_t>(options.knots);
    Trajectory current = constant_trajectory(spec, options.knots, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        current.alpha_samples[i] = init.alpha_at(current.grid.time(i));

    // A trajectory whose Gram the doubled quadrature grid cannot certify is
    // treated as infinitely bad; line-search trials then back off.
    const auto eval = [&](const Trajectory& traj) -> std::vector<double> {
        try {
            return residual_vector(spec, target, traj, options.weight_21);
        } catch (const std::runtime_error&) {
            return {std::numeric_limits<double>::infinity()};
        }
    };

    SolveResult result;
    std::vector<double> r = eval(current);
    double res_norm = norm2(r);
    if (!std::isfinite(res_norm)) throw SolveDiverged(current);
    result.history.push_back({0, res_norm, 0.0});

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        if (res_norm < options.tol) break;

        // Central-difference Jacobian, one column per knot.
        const std::size_t m = r.size();
        std::vector<double> jac(m * k);
        Trajectory probe = current;
        for (std::size_t c = 0; c < k; ++c) {
            const double saved = probe.alpha_samples[c];
            probe.alpha_samples[c] = saved + options.fd_step;
            const std::vector<double> rp = eval(probe);
            probe.alpha_samples[c] = saved - options.fd_step;
            const std::vector<double> rm = eval(probe);
            probe.alpha_samples[c] = saved;
            for (std::size_t row = 0; row < m; ++row)
                jac[row * k + c] = (rp[row] - rm[row]) / (2.0 * options.fd_step);
        }

        // Normal equations J^T J d = -J^T r. A symmetric iterate can leave
        // J^T J rank-deficient (mirror-image knots move the Gram identically);
        // the plain step is then null-space noise, so the ridge escalates
        // whenever a direction fails its line search, sliding the step from
        // Gauss-Newton toward plain gradient descent.
        std::vector<double> jtj(k * k, 0.0), jtr(k, 0.0);
        for (std::size_t row = 0; row < m; ++row)
            for (std::size_t c = 0; c < k; ++c) {
                jtr[c] += jac[row * k + c] * r[row];
                for (std::size_t c2 = 0; c2 <= c; ++c2)
                    jtj[c * k + c2] += jac[row * k + c] * jac[row * k + c2];
            }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t c2 = c + 1; c2 < k; ++c2) jtj[c * k + c2] = jtj[c2 * k + c];
        std::vector<double> neg_jtr(k);
        for (std::size_t c = 0; c < k; ++c) neg_jtr[c] = -jtr[c];

        double trace = 0.0;
        for (std::size_t c = 0; c < k; ++c) trace += jtj[c * k + c];
        const double ridge_unit = std::max(trace / static_cast<double>(k), 1e-300);

        bool accepted = false;
        for (double ridge_rel = 0.0; !accepted && ridge_rel <= 1e6;
             ridge_rel = (ridge_rel == 0.0) ? 1e-10 : ridge_rel * 100.0) {
            std::vector<double> direction;
            if (!cholesky_solve(jtj, k, neg_jtr, ridge_rel * ridge_unit, direction)) continue;
            bool dir_finite = true;
            for (double d : direction) dir_finite = dir_finite && std::isfinite(d);
            if (!dir_finite) continue;

            // Halving line search; accepted steps never increase the residual.
            for (double step = 1.0; step >= 1e-12; step *= 0.5) {
                Trajectory trial = current;
                for (std::size_t c = 0; c < k; ++c)
                    trial.alpha_samples[c] += step * direction[c];
                const std::vector<double> rt = eval(trial);
                const double nt = norm2(rt);
                if (std::isfinite(nt) && nt < res_norm) {
                    double step_norm = 0.0;
                    for (double d : direction) step_norm += (step * d) * (step * d);
                    current = std::move(trial);
                    r = rt;
                    res_norm = nt;
                    result.history.push_back({iter, res_norm, std::sqrt(step_norm)});
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            result.stop_reason = "step size underflow";
            break;
        }
    }

    result.trajectory = current;
    result.converged = res_norm < options.tol;
    if (result.stop_reason.empty())
        result.stop_reason = result.converged ? "residual below tol" : "max iterations";
    return result;
}

}  // namespace nyq
