#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace nyq {

/// Composite trapezoid of sampled values on a uniform step h (inclusive ends).
double trapezoid(const std::vector<double>& values, double h);

/// Adaptive composite Simpson on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-9, int max_depth = 40);

/// Adaptive Simpson over panels of width at most `panel_max`. Oscillatory
/// integrands over wide ranges can fool a single adaptive pass when an
/// interval spans whole oscillation periods; bounded panels cannot.
double adaptive_simpson_panels(const std::function<double(double)>& f, double a, double b,
                               double panel_max, double tol = 1e-9);

/// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(std::size_t order);

/// Integrate f over [a, b] with a single Gauss-Legendre panel of given order.
double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   std::size_t order);

}  // namespace nyq
