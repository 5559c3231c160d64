#include "nyq/comb.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nyq {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void FrequencyComb::validate() const {
    if (!(delta_f > 0.0)) throw std::invalid_argument("FrequencyComb: delta_f must be > 0");
    if (lines.empty()) throw std::invalid_argument("FrequencyComb: no lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].amplitude < 0.0)
            throw std::invalid_argument("FrequencyComb: negative amplitude");
        if (i > 0 && !(lines[i].frequency_hz > lines[i - 1].frequency_hz))
            throw std::invalid_argument("FrequencyComb: frequencies must be strictly increasing");
    }
}

FrequencyComb nyquist_comb(const SequenceSpec& spec) {
    spec.validate();
    const int n = spec.n_lines;
    FrequencyComb comb;
    comb.delta_f = spec.delta_f;
    const double line_phase = (spec.kind == SequenceKind::Cnss) ? -kPi / 2.0 : 0.0;
    if (n % 2 == 1) {
        comb.lines.push_back({0.0, 1.0 / n, 0.0});
        for (int m = 1; m <= (n - 1) / 2; ++m)
            comb.lines.push_back({m * spec.delta_f, 2.0 / n, 0.0});
    } else {
        for (int k = 1; k <= n / 2; ++k)
            comb.lines.push_back({(k - 0.5) * spec.delta_f, 2.0 / n, line_phase});
    }
    return comb;
}

double branch_delay(const SequenceSpec& spec, int k) {
    spec.validate();
    if (k < 0 || k > spec.n_lines - 1)
        throw std::invalid_argument("branch_delay: k must lie in [0, N-1]");
    return static_cast<double>(k) / (spec.n_lines * spec.delta_f);
}

double phase_for_delay(double frequency_hz, double t0) {
    return kTwoPi * frequency_hz * t0;
}

double wrap_phase(double phi) {
    double w = std::remainder(phi, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    return w;
}

FrequencyComb apply_delay_as_phase(const FrequencyComb& comb, double t0) {
    comb.validate();
    FrequencyComb out = comb;
    for (auto& line : out.lines)
        line.phase_rad = wrap_phase(line.phase_rad - phase_for_delay(line.frequency_hz, t0));
    return out;
}

Waveform synthesize(const FrequencyComb& comb, const TimeGrid& grid) {
    comb.validate();
    grid.validate();
    Waveform wf{grid, std::vector<double>(grid.n_samples, 0.0)};
    for (std::size_t i = 0; i < grid.n_samples; ++i) {
        const double t = grid.time(i);
        double acc = 0.0;
        for (const auto& line : comb.lines)
            acc += line.amplitude * std::cos(kTwoPi * line.frequency_hz * t + line.phase_rad);
        wf.samples[i] = acc;
    }
    return wf;
}

double phase_slope(const FrequencyComb& before, const FrequencyComb& after,
                   double linearity_tol) {
    before.validate();
    after.validate();
    if (before.lines.size() != after.lines.size())
        throw std::invalid_argument("phase_slope: combs differ in line count");

    std::vector<double> freq, dphi;
    freq.reserve(before.lines.size());
    dphi.reserve(before.lines.size());
    for (std::size_t i = 0; i < before.lines.size(); ++i) {
        const auto& a = before.lines[i];
        const auto& b = after.lines[i];
        if (a.frequency_hz != b.frequency_hz)
            throw std::invalid_argument("phase_slope: combs differ in line frequencies");
        freq.push_back(a.frequency_hz);
        dphi.push_back(wrap_phase(b.phase_rad - a.phase_rad));
    }

    // Sequential unwrap over increasing frequency: the comb has few,
    // well-separated lines, so each step is corrected into (-pi, pi].
    for (std::size_t i = 1; i < dphi.size(); ++i) {
        double step = dphi[i] - dphi[i - 1];
        step -= kTwoPi * std::round(step / kTwoPi);
        dphi[i] = dphi[i - 1] + step;
    }

    // Least-squares affine fit dphi = slope * f + intercept.
    const std::size_t n = freq.size();
    double sf = 0.0, sp = 0.0, sff = 0.0, sfp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sf += freq[i];
        sp += dphi[i];
        sff += freq[i] * freq[i];
        sfp += freq[i] * dphi[i];
    }
    const double det = n * sff - sf * sf;
    if (det == 0.0) throw std::invalid_argument("phase_slope: degenerate line frequencies");
    const double slope = (n * sfp - sf * sp) / det;
    const double intercept = (sp - slope * sf) / n;

    double max_resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_resid = std::max(max_resid, std::abs(dphi[i] - (slope * freq[i] + intercept)));
    if (max_resid > linearity_tol)
        throw std::runtime_error("phase_slope: phase difference is not linear in frequency");

    return -slope / kTwoPi;
}

}  // namespace nyq
