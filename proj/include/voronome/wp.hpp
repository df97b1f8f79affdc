#pragma once

// Numerical Weierstrass machinery for the lattice Z + tau*Z: invariants from
// Eisenstein q-series, wp/wp' evaluation by Fourier series with certified
// truncation, inversion on the fundamental domain, and the rescaling that
// brings the curve to an exact normal form when the invariants allow it.

#include <optional>
#include <utility>
#include <vector>

#include "voronome/bigfloat.hpp"
#include "voronome/elliptic_curve.hpp"

namespace voronome {

class Lattice {
  public:
    // tau must have positive imaginary part
    static Lattice from_tau(const BigComplex& tau, mpfr_prec_t prec);
    static BigComplex tau_hex(mpfr_prec_t prec);     // exp(i*pi/3)
    static BigComplex tau_square(mpfr_prec_t prec);  // i

    const BigComplex& tau() const { return tau_; }
    const BigComplex& g2() const { return g2_; }
    const BigComplex& g3() const { return g3_; }
    mpfr_prec_t prec() const { return prec_; }

    // z reduced into the centered fundamental domain (coords in [-1/2,1/2))
    BigComplex reduce(const BigComplex& z) const;
    // same but with coords in [0,1)
    BigComplex reduce_positive(const BigComplex& z) const;

    // (wp(z), wp'(z)); throws NearPoleError within tol of a lattice point
    std::pair<BigComplex, BigComplex> wp(const BigComplex& z) const;
    // |wp'^2 - (4wp^3 - g2 wp - g3)| at z, for certification
    BigReal identity_residual(const BigComplex& z) const;

    // all solutions of wp(z) = x in the fundamental domain (one or two points)
    std::vector<BigComplex> wp_inverse(const BigComplex& x) const;

    // lattice vectors m + n*tau with |m|,|n| <= bound, excluding 0
    std::vector<BigComplex> vectors(int bound) const;

    std::array<BigComplex, 3> half_periods() const;

  private:
    BigComplex tau_;
    BigComplex g2_, g3_;
    BigComplex h_;  // e^{2 pi i tau}
    BigReal pi_;
    mpfr_prec_t prec_ = kDefaultPrecision;
};

// Rescaling z -> mu*z carrying (g2, g3) to an exact normal form:
//   hex-type (g2 = 0):    curve y^2 = 4x^3 - 4,  mu = (g3/4)^(1/6)
//   square-type (g3 = 0): curve y^2 = 4x^3 - 4x, mu = (g2/4)^(1/4)
// wp(z; L) = mu^2 * wp_hat(mu*z) and wp'(z; L) = mu^3 * wp_hat'(mu*z).
struct HatForm {
    bool exact = false;
    CurveParams<GaussianRational> curve;  // valid when exact
    BigComplex mu;

    static HatForm detect(const Lattice& lattice);
};

// irreducible-over-Q(i) factor blocks of c(x) = 4x^3 - g2 x - g3 for the
// exact normal forms; each block's roots are the x-values of half-periods
std::vector<QPoly> half_period_factors(const CurveParams<GaussianRational>& curve);

}  // namespace voronome
