#pragma once

// Multiprecision zero extraction: Aberth-Ehrlich simultaneous iteration for
// polynomials (with a 128 -> 256 -> 512 bit precision ladder) and a rectangle
// argument-principle solver for analytic evaluators.

#include <complex>
#include <functional>
#include <vector>

#include "voronome/poly.hpp"

namespace voronome {

struct Root {
    BigComplex value;
    long multiplicity = 1;
    double residual = 0.0;  // |p(root)| relative to the coefficient scale
};

struct RootSet {
    std::vector<Root> roots;
    bool certified = false;
    long expected = -1;  // expected total multiplicity (degree / winding count)

    long total_multiplicity() const {
        long s = 0;
        for (const auto& r : roots) s += r.multiplicity;
        return s;
    }
};

struct AberthOptions {
    mpfr_prec_t precision = 128;  // start of the ladder
    double tol = 1e-30;
    int max_sweeps = 400;
    int ladder_steps = 3;  // 128 -> 256 -> 512
};

// all roots of p, multiplicities by cluster merging at radius tol^(1/k)
RootSet poly_roots(const CPoly& p, const AberthOptions& opt = {});
// exact input: multiplicities split off by squarefree decomposition first
RootSet poly_roots(const QPoly& p, const AberthOptions& opt = {});

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    std::complex<double> center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
};

struct RegionEvaluator {
    std::function<std::complex<double>(std::complex<double>)> f;
    // optional; a central difference is used when absent
    std::function<std::complex<double>(std::complex<double>)> df;
};

struct RegionOptions {
    mpfr_prec_t precision = 128;
    double tol = 1e-10;
    int max_boundary_retries = 5;
    double isolation_size = 1e-4;
};

// zeros of the evaluator inside rect; winding-number counted, quadrisection
// until isolation, Newton polish
RootSet region_roots(const RegionEvaluator& ev, Rect rect, const RegionOptions& opt = {});

// winding number of f along the rectangle boundary (must be zero-free)
long boundary_winding(const RegionEvaluator& ev, const Rect& rect, double zero_tol,
                      double* defect = nullptr);

}  // namespace voronome
