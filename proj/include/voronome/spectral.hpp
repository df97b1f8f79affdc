#pragma once

// Chart-free recovery of the critical radius, the dominant singularity, and
// the Voronoi edges from the normalized Taylor coefficients c_n = T^n f(z)/n!.

#include <complex>
#include <vector>

#include "voronome/scenario.hpp"

namespace voronome::spectral {

struct CoeffTrack {
    BigComplex basepoint;
    std::vector<BigComplex> c;  // c_0 .. c_N
    mpfr_prec_t precision = kDefaultPrecision;
};

// c_n = T^n f(z)/n! for n <= N, computed by iterating T on a truncated series
// window at the basepoint; precision is escalated until the last coefficients
// agree with a doubled-precision run to 32 bits
CoeffTrack taylor_coeffs(const Scenario& s, const BigComplex& z, long N);

struct RadiusEstimate {
    double value = 0;
    double error_bar = 0;
    bool infinite = false;
};

// Cauchy-Hadamard estimate |c_n|^(-1/n) with even/odd handling and Richardson
// extrapolation; the error bar is the spread of the last three estimates
RadiusEstimate estimate_radius(const CoeffTrack& t);

struct SingularityEstimate {
    bool edge_flag = false;   // non-decaying ratio oscillation
    bool multi_flag = false;  // conjugate-pair fallback used (|d| only)
    std::complex<double> d_hat;
    double abs_d_hat = 0;
    double m0_hat = 0;
    bool have_m0 = false;
};

SingularityEstimate track_singularity(const CoeffTrack& t);

struct EdgeScanOptions {
    int grid = 512;
    long N = 160;              // iterate depth for the ratio probe
    double mask_radius = 0.12; // exclusion radius around PPL points and poles
    int bisection_steps = 6;
};

// points where the dominant-direction estimate jumps between neighboring grid
// cells (angular jump above pi/8), bisection-refined
std::vector<std::complex<double>> detect_edges(const Scenario& s, double x0, double x1, double y0,
                                               double y1, const EdgeScanOptions& opt = {});

struct OrlovCase {
    double alpha;  // f = (1 - x)^alpha with a Puiseux (or polar) exponent alpha
};

struct OrlovFit {
    long K = 0;
    double raw_rel_err = 0;           // |c_K k^(a+1) - L| / |L| with L = 1/Gamma(-a)
    double extrapolated_rel_err = 0;  // after one Richardson step
    double correction_decay = 0;      // fitted exponent of the residual decay
    bool exact_series = false;        // nonnegative-integer-free polar case matches exactly
};

OrlovFit orlov_validate(const OrlovCase& spec, long K);

// test/debug hook: the grid scan's dominant-direction estimate at one point
std::complex<double> debug_dominant(const Scenario& s, long N, std::complex<double> z);

}  // namespace voronome::spectral
