#include "nyq/gram.hpp"

#include <cmath>
#include <stdexcept>

#include "nyq/quadrature.hpp"

namespace nyq {

namespace {

/// Whole multiple of the spec's common period, else error: the tone-wise
/// orthogonality identities do not hold on partial periods.
double period_multiple(const SequenceSpec& spec, double period) {
    const double t = spec.common_period();
    const double m = period / t;
    const double m_round = std::round(m);
    if (m_round < 1.0 || std::abs(m - m_round) > 1e-9 * m_round)
        throw std::invalid_argument(
            "inner_product: period must be a whole multiple of the common period");
    return m_round;
}

}  // namespace

std::vector<double> branch_delays(const SequenceSpec& spec) {
    spec.validate();
    std::vector<double> shifts(spec.n_lines);
    for (int k = 0; k < spec.n_lines; ++k)
        shifts[k] = static_cast<double>(k) / (spec.n_lines * spec.delta_f);
    return shifts;
}

double inner_product_analytic(const SequenceSpec& spec, double shift_a, double shift_b,
                              double period) {
    spec.validate();
    period_multiple(spec, period);
    const int n = spec.n_lines;
    const double delta = shift_a - shift_b;

    // Line-by-line over full periods, every family collapses to
    // (period/N) * sin(N pi df d) / (N sin(pi df d)); on the branch lattice
    // d = k/(N df) the geometric sum is exactly 0 (or +-1 at k = mN).
    const double scale = period / n;
    const double u = delta * n * spec.delta_f;
    const double u_round = std::round(u);
    if (std::abs(u - u_round) < 1e-6) {
        const long k = static_cast<long>(u_round);
        if (k % n != 0) return 0.0;
        const long m = k / n;
        const bool negate = (n % 2 == 0) && (m % 2 != 0);
        return negate ? -scale : scale;
    }
    SequenceSpec nss = spec;
    nss.kind = SequenceKind::Nss;
    return scale * nss_closed_form(nss, delta);
}

double inner_product_numeric(const Waveform& a, const Waveform& b) {
    a.validate();
    b.validate();
    if (a.grid.n_samples != b.grid.n_samples || a.grid.dt != b.grid.dt ||
        a.grid.t_start != b.grid.t_start)
        throw std::invalid_argument("inner_product_numeric: waveforms must share one grid");
    std::vector<double> prod(a.samples.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.samples[i] * b.samples[i];
    return trapezoid(prod, a.grid.dt);
}

double inner_product_numeric(const SequenceSpec& spec, double shift_a, double shift_b,
                             double period, std::size_t n_intervals) {
    spec.validate();
    period_multiple(spec, period);
    const TimeGrid grid = linspace_grid(0.0, period, n_intervals + 1);
    return inner_product_numeric(sample(spec, grid, shift_a), sample(spec, grid, shift_b));
}

Matrix gram_matrix(const SequenceSpec& spec, const std::vector<double>& shifts,
                   GramBackend backend, std::size_t n_intervals) {
    spec.validate();
    const double period = spec.common_period();
    Matrix g(shifts.size());

    if (backend == GramBackend::Analytic) {
        for (std::size_t i = 0; i < shifts.size(); ++i)
            for (std::size_t j = 0; j < shifts.size(); ++j)
                g.at(i, j) = inner_product_analytic(spec, shifts[i], shifts[j], period);
        return g;
    }

    const TimeGrid grid = linspace_grid(0.0, period, n_intervals + 1);
    std::vector<Waveform> w;
    w.reserve(shifts.size());
    for (double s : shifts) w.push_back(sample(spec, grid, s));
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t j = i; j < shifts.size(); ++j) {
            const double value = inner_product_numeric(w[i], w[j]);
            g.at(i, j) = value;
            g.at(j, i) = value;
        }
    return g;
}

}  // namespace nyq
