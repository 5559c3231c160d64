#include "nyq/sequence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nyq {

namespace {
constexpr double kPi = std::numbers::pi;
}

void SequenceSpec::validate() const {
    if (n_lines < 2) throw std::invalid_argument("SequenceSpec: n_lines must be >= 2");
    if (!(delta_f > 0.0)) throw std::invalid_argument("SequenceSpec: delta_f must be > 0");
    if (kind == SequenceKind::Cnss && n_lines % 2 != 0)
        throw std::invalid_argument("SequenceSpec: CNSS requires an even number of lines");
}

double SequenceSpec::common_period() const {
    return even() ? 2.0 / delta_f : 1.0 / delta_f;
}

double nss_fourier(const SequenceSpec& spec, double t) {
    spec.validate();
    if (spec.kind != SequenceKind::Nss)
        throw std::invalid_argument("nss_fourier: spec must be NSS");
    const int n = spec.n_lines;
    const double w = 2.0 * kPi * spec.delta_f * t;
    double acc = 0.0;
    if (n % 2 == 1) {
        for (int m = (n - 1) / 2; m >= 1; --m) acc += std::cos(w * m);
        return (1.0 + 2.0 * acc) / n;
    }
    for (int k = n / 2; k >= 1; --k) acc += std::cos(w * (k - 0.5));
    return 2.0 * acc / n;
}

double nss_closed_form(const SequenceSpec& spec, double t, double eps_sing) {
    spec.validate();
    if (spec.kind != SequenceKind::Nss)
        throw std::invalid_argument("nss_closed_form: spec must be NSS");
    const double x = kPi * spec.delta_f * t;
    const double den = std::sin(x);
    if (std::abs(den) < eps_sing) {
        // Removable singularity at t = m/delta_f: the pole-free series equals
        // the analytic limit (-1)^(m(N-1)).
        return nss_fourier(spec, t);
    }
    return std::sin(spec.n_lines * x) / (spec.n_lines * den);
}

double cnss(const SequenceSpec& spec, double t) {
    spec.validate();
    if (spec.kind != SequenceKind::Cnss)
        throw std::invalid_argument("cnss: spec must be CNSS");
    const int n = spec.n_lines;
    const double w = 2.0 * kPi * spec.delta_f * t;
    double acc = 0.0;
    for (int k = n / 2; k >= 1; --k) acc += std::sin(w * (k - 0.5));
    return 2.0 * acc / n;
}

double sequence_value(const SequenceSpec& spec, double t, double shift) {
    if (spec.kind == SequenceKind::Cnss) return cnss(spec, t - shift);
    SequenceSpec s = spec;
    s.kind = SequenceKind::Nss;
    return nss_closed_form(s, t - shift);
}

double raised_cosine(double delta_t, double rolloff, double t) {
    if (!(delta_t > 0.0)) throw std::invalid_argument("raised_cosine: delta_t must be > 0");
    if (rolloff < 0.0 || rolloff > 1.0)
        throw std::invalid_argument("raised_cosine: rolloff must lie in [0, 1]");
    const double u = t / delta_t;
    const double sinc_part = (std::abs(u) < 1e-9)
                                 ? 1.0 - (kPi * u) * (kPi * u) / 6.0
                                 : std::sin(kPi * u) / (kPi * u);
    if (rolloff == 0.0) return sinc_part;
    const double g = 2.0 * rolloff * u;
    const double den = 1.0 - g * g;
    if (std::abs(den) < 1e-9) {
        // t = dT/(2a): cos/(1-g^2) tends to pi/4.
        return sinc_part * kPi / 4.0;
    }
    return sinc_part * std::cos(kPi * rolloff * u) / den;
}

Waveform sample(const SequenceSpec& spec, const TimeGrid& grid, double shift) {
    grid.validate();
    Waveform wf{grid, {}};
    wf.samples.resize(grid.n_samples);
    for (std::size_t i = 0; i < grid.n_samples; ++i)
        wf.samples[i] = sequence_value(spec, grid.time(i), shift);
    return wf;
}

Waveform sample_raised_cosine(double delta_t, double rolloff, const TimeGrid& grid) {
    grid.validate();
    Waveform wf{grid, {}};
    wf.samples.resize(grid.n_samples);
    for (std::size_t i = 0; i < grid.n_samples; ++i)
        wf.samples[i] = raised_cosine(delta_t, rolloff, grid.time(i));
    return wf;
}

CnssPeaks cnss_peaks(const SequenceSpec& spec) {
    spec.validate();
    if (spec.kind != SequenceKind::Cnss)
        throw std::invalid_argument("cnss_peaks: spec must be CNSS");
    const double rep = spec.repetition_interval();
    const double half = 0.5 * rep;

    // Coarse scan of (0, rep/2]; the peak pair is mirror-symmetric about
    // rep/2, so the global maximum of the interval lives in this half.
    const int n_scan = 4096;
    double best_t = half, best_v = cnss(spec, half);
    for (int i = 1; i < n_scan; ++i) {
        const double t = half * i / n_scan;
        const double v = cnss(spec, t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }

    // Golden-section refinement around the best scan cell.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_t - half / n_scan, hi = best_t + half / n_scan;
    if (lo < 0.0) lo = 0.0;
    if (hi > half) hi = half;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = cnss(spec, c), fd = cnss(spec, d);
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * rep; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = cnss(spec, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = cnss(spec, d);
        }
    }
    const double t1 = 0.5 * (lo + hi);
    return CnssPeaks{t1, rep - t1, cnss(spec, t1)};
}

}  // namespace nyq
