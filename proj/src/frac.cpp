#include "nyq/frac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nyq/quadrature.hpp"

namespace nyq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sinc_norm(double x) {
    const double y = kPi * x;
    if (std::abs(y) < 1e-8) return 1.0 - y * y / 6.0;
    return std::sin(y) / y;
}

double sinc_u(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double Sinusoid::value(double t) const { return amplitude * std::cos(omega * t + phase); }

Sinusoid weyl_derivative(const Sinusoid& tone, double alpha) {
    if (!(tone.omega > 0.0)) throw std::invalid_argument("weyl_derivative: omega must be > 0");
    return Sinusoid{tone.omega, tone.amplitude * std::pow(tone.omega, alpha),
                    tone.phase + kPi * alpha / 2.0};
}

namespace {

/**
 * Product-integration evaluation of I_a^(1-alpha) f at x: f is piecewise
 * linear between samples and the kernel (x-tau)^(-alpha)/Gamma(1-alpha) is
 * integrated exactly on every cell intersecting [a, x].
 */
double rl_integral(const Waveform& f, double alpha, double a, double x) {
    const TimeGrid& g = f.grid;
    if (x <= a) return 0.0;
    const double one_m = 1.0 - alpha;
    const double two_m = 2.0 - alpha;
    double acc = 0.0;
    // First cell index overlapping [a, x].
    const std::size_t first =
        static_cast<std::size_t>(std::max(0.0, std::floor((a - g.t_start) / g.dt)));
    for (std::size_t j = first; j + 1 < g.n_samples; ++j) {
        const double cell_lo = g.time(j);
        if (cell_lo >= x) break;
        const double cell_hi = g.time(j + 1);
        const double lo = std::max(cell_lo, a);
        const double hi = std::min(cell_hi, x);
        if (hi <= lo) continue;
        const double slope = (f.samples[j + 1] - f.samples[j]) / g.dt;
        // f(tau) = c - slope * u with u = x - tau
        const double c = f.samples[j] + slope * (x - cell_lo);
        const double ua = x - hi;
        const double ub = x - lo;
        acc += c * (std::pow(ub, one_m) - std::pow(ua, one_m)) / one_m -
               slope * (std::pow(ub, two_m) - std::pow(ua, two_m)) / two_m;
    }
    return acc / std::tgamma(one_m);
}

double interp(const Waveform& f, double t) {
    const TimeGrid& g = f.grid;
    const double pos = (t - g.t_start) / g.dt;
    const double clamped = std::clamp(pos, 0.0, static_cast<double>(g.n_samples - 1));
    const std::size_t j =
        std::min(static_cast<std::size_t>(clamped), g.n_samples - 2);
    const double frac = clamped - static_cast<double>(j);
    return f.samples[j] + frac * (f.samples[j + 1] - f.samples[j]);
}

}  // namespace

double rl_derivative(const Waveform& f, double alpha, double a, double t) {
    f.validate();
    if (alpha < 0.0 || alpha >= 2.0)
        throw std::invalid_argument("rl_derivative: alpha must lie in [0, 2)");
    const TimeGrid& g = f.grid;
    if (a < g.t_start - 1e-12 * g.dt || a > t)
        throw std::invalid_argument("rl_derivative: need grid start <= a <= t");
    const double h = g.dt;

    if (alpha == 0.0) return interp(f, t);
    if (alpha == 1.0) {
        if (t - h < g.t_start - 1e-9 * h || t + h > g.t_end() + 1e-9 * h)
            throw std::invalid_argument("rl_derivative: t too close to the grid ends");
        return (interp(f, t + h) - interp(f, t - h)) / (2.0 * h);
    }

    if (alpha < 1.0) {
        if (t - h < a - 1e-9 * h || t + h > g.t_end() + 1e-9 * h)
            throw std::invalid_argument("rl_derivative: t too close to the grid ends");
        return (rl_integral(f, alpha, a, t + h) - rl_integral(f, alpha, a, t - h)) / (2.0 * h);
    }

    // alpha in (1, 2): one more classical derivative of the (alpha-1) case,
    // realized as a second central difference of I^(2-alpha).
    const double beta = alpha - 1.0;
    if (t - h < a - 1e-9 * h || t + h > g.t_end() + 1e-9 * h)
        throw std::invalid_argument("rl_derivative: t too close to the grid ends");
    const double i_minus = rl_integral(f, beta, a, t - h);
    const double i_mid = rl_integral(f, beta, a, t);
    const double i_plus = rl_integral(f, beta, a, t + h);
    return (i_plus - 2.0 * i_mid + i_minus) / (h * h);
}

double tangent_line(const Sinusoid& f, double t0, double alpha, double t) {
    return weyl_derivative(f, alpha).value(t0) * (t - t0) + f.value(t0);
}

double tangent_line(const Waveform& f, double a, double t0, double alpha, double t) {
    return rl_derivative(f, alpha, a, t0) * (t - t0) + interp(f, t0);
}

void Trajectory::validate() const {
    grid.validate();
    if (alpha_samples.size() != grid.n_samples)
        throw std::invalid_argument("Trajectory: sample count does not match grid");
    for (double a : alpha_samples)
        if (!std::isfinite(a)) throw std::invalid_argument("Trajectory: non-finite alpha");
}

double Trajectory::alpha_at(double t) const {
    const double pos = (t - grid.t_start) / grid.dt;
    if (grid.n_samples == 1) return alpha_samples[0];
    const double clamped = std::clamp(pos, 0.0, static_cast<double>(grid.n_samples - 1));
    const std::size_t j = std::min(static_cast<std::size_t>(clamped), grid.n_samples - 2);
    const double frac = clamped - static_cast<double>(j);
    return alpha_samples[j] + frac * (alpha_samples[j + 1] - alpha_samples[j]);
}

Trajectory sine_to_sinc_trajectory(const TimeGrid& grid, SincConvention conv) {
    grid.validate();
    Trajectory traj{grid, {}};
    traj.alpha_samples.resize(grid.n_samples);
    const double two_pi = 2.0 * kPi;
    for (std::size_t i = 0; i < grid.n_samples; ++i) {
        const double x = grid.time(i) - two_pi;
        const double s = (conv == SincConvention::Unnormalized) ? sinc_u(x) : sinc_norm(x);
        traj.alpha_samples[i] = std::asin(s) * (2.0 / kPi);
    }
    return traj;
}

Waveform reconstruct_from_trajectory(const Trajectory& traj, double shift) {
    traj.validate();
    TimeGrid shifted = traj.grid;
    shifted.t_start -= shift;
    Waveform wf{shifted, {}};
    wf.samples.resize(traj.alpha_samples.size());
    for (std::size_t i = 0; i < wf.samples.size(); ++i)
        wf.samples[i] = std::sin(kPi * traj.alpha_samples[i] / 2.0);
    return wf;
}

double sinc_orthogonality_residual(const Trajectory& traj, int i, double half_width,
                                   SincConvention conv) {
    traj.validate();
    if (!(half_width > 0.0))
        throw std::invalid_argument("sinc_orthogonality_residual: half_width must be > 0");
    const double two_pi = 2.0 * kPi;
    if (traj.grid.t_start > two_pi - half_width ||
        traj.grid.t_end() < two_pi + half_width)
        throw std::invalid_argument(
            "sinc_orthogonality_residual: trajectory must cover [2pi-W, 2pi+W]");

    const auto pulse = [conv](double x) {
        return conv == SincConvention::Unnormalized ? sinc_u(x) : sinc_norm(x);
    };
    const auto integrand = [&](double t) {
        return pulse(t - i) * std::sin(kPi * traj.alpha_at(t + two_pi) / 2.0);
    };
    // Unit panels keep the oscillations resolved across the wide window.
    const double value = adaptive_simpson_panels(integrand, -half_width, half_width, 1.0, 1e-9);
    return value - (i == 0 ? 1.0 : 0.0);
}

DimensionalSpectrum dimensional_transform(const Sinusoid& tone, const std::vector<double>& alphas,
                                          double window) {
    if (!(window > 0.0)) throw std::invalid_argument("dimensional_transform: window must be > 0");
    DimensionalSpectrum out;
    out.alphas = alphas;
    out.window = window;
    out.values.resize(alphas.size());
    const double quarter_period = kPi / (2.0 * tone.omega);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const Sinusoid d = weyl_derivative(tone, alphas[k]);
        out.values[k] = adaptive_simpson_panels([&](double t) { return d.value(t); },
                                                -window / 2.0, window / 2.0, quarter_period,
                                                1e-9);
    }
    return out;
}

double dimensional_transform_closed(const Sinusoid& tone, double alpha, double window) {
    return 2.0 * tone.amplitude * std::pow(tone.omega, alpha - 1.0) *
           std::sin(tone.omega * window / 2.0) * std::cos(tone.phase + kPi * alpha / 2.0);
}

}  // namespace nyq
