#pragma once

#include <cstddef>
#include <vector>

#include "nyq/grid.hpp"
#include "nyq/sequence.hpp"

namespace nyq {

/// Minimal dense square matrix.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> v;

    explicit Matrix(std::size_t size = 0) : n(size), v(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

enum class GramBackend { Analytic, Numeric };

/// The N branch delays k/(N*df), k = 0 .. N-1.
std::vector<double> branch_delays(const SequenceSpec& spec);

/**
 * @brief Inner product of two shifted copies of the sequence over `period`,
 * evaluated tone-wise (exact for comb signals).
 *
 * Over a full common period the line-by-line integrals collapse to the
 * geometric sum (period/N) * D(shift_a - shift_b) where D is the Dirichlet
 * kernel of the family; shifts on the branch lattice therefore produce exact
 * zeros / exact diagonal values. `period` must be a whole multiple of the
 * spec's common period (the identities do not hold on partial periods).
 */
double inner_product_analytic(const SequenceSpec& spec, double shift_a, double shift_b,
                              double period);

/// Composite-trapezoid inner product of two waveforms on one shared grid.
double inner_product_numeric(const Waveform& a, const Waveform& b);

/// Numeric counterpart of inner_product_analytic: samples both shifted copies
/// on an inclusive grid with `n_intervals` trapezoid panels over `period`.
double inner_product_numeric(const SequenceSpec& spec, double shift_a, double shift_b,
                             double period, std::size_t n_intervals = 4096);

/// Gram matrix of the shifted family over the spec's common period:
/// G[i][j] = <shift_i, shift_j>. Expected (T/N) * I on the branch lattice.
Matrix gram_matrix(const SequenceSpec& spec, const std::vector<double>& shifts,
                   GramBackend backend, std::size_t n_intervals = 4096);

}  // namespace nyq
