#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nyq {

/// Strictly uniform time grid: t_k = t_start + k * dt.
struct TimeGrid {
    double t_start = 0.0;
    double dt = 1.0;
    std::size_t n_samples = 0;

    double time(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
    double t_end() const { return time(n_samples == 0 ? 0 : n_samples - 1); }
    double span() const { return static_cast<double>(n_samples ? n_samples - 1 : 0) * dt; }

    void validate() const {
        if (dt <= 0.0) throw std::invalid_argument("TimeGrid: dt must be > 0");
        if (n_samples == 0) throw std::invalid_argument("TimeGrid: n_samples must be >= 1");
    }
};

/// Inclusive grid over [t_start, t_end] with n samples (n >= 2).
inline TimeGrid linspace_grid(double t_start, double t_end, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace_grid: need at least 2 samples");
    if (!(t_end > t_start)) throw std::invalid_argument("linspace_grid: t_end must exceed t_start");
    return TimeGrid{t_start, (t_end - t_start) / static_cast<double>(n - 1), n};
}

/// Grid over one period [0, T) with n samples, right endpoint excluded.
inline TimeGrid periodic_grid(double period, std::size_t n) {
    if (n < 1) throw std::invalid_argument("periodic_grid: need at least 1 sample");
    if (!(period > 0.0)) throw std::invalid_argument("periodic_grid: period must be > 0");
    return TimeGrid{0.0, period / static_cast<double>(n), n};
}

/// Uniformly sampled real signal with explicit time grid.
struct Waveform {
    TimeGrid grid;
    std::vector<double> samples;

    void validate() const {
        grid.validate();
        if (samples.size() != grid.n_samples)
            throw std::invalid_argument("Waveform: sample count does not match grid");
    }
};

}  // namespace nyq
