#include "voronome/wp.hpp"

#include <array>
#include <cmath>

#include "voronome/errors.hpp"

namespace voronome {

namespace {

// sigma_k(n), exact
mpz_class sigma_pow(long n, int k) {
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            mpz_class t = 1;
            for (int j = 0; j < k; ++j) t *= d;
            s += t;
        }
    }
    return s;
}

}  // namespace

BigComplex Lattice::tau_hex(mpfr_prec_t prec) {
    BigReal th = BigReal::pi(prec) / BigReal(3l, prec);
    return {cos(th), sin(th)};
}

BigComplex Lattice::tau_square(mpfr_prec_t prec) {
    return {BigReal(0l, prec), BigReal(1l, prec)};
}

Lattice Lattice::from_tau(const BigComplex& tau, mpfr_prec_t prec) {
    if (tau.im.sign() <= 0) throw InvalidLatticeError("lattice: Im(tau) must be positive");
    Lattice L;
    L.prec_ = prec;
    L.tau_ = tau;
    L.pi_ = BigReal::pi(prec);
    BigReal two(2l, prec);
    L.h_ = exp(BigComplex(-two * L.pi_ * tau.im, two * L.pi_ * tau.re));

    // g2 = (4 pi^4/3) E4, g3 = (8 pi^6/27) E6; truncate when the sigma5(n) <= n^6
    // bound drops below the target
    BigComplex e4(1.0, 0.0, prec), e6(1.0, 0.0, prec);
    BigComplex hn(1.0, 0.0, prec);
    BigReal tail_bound = ldexp2(BigReal(1l, prec), -(long)prec - 16);
    for (long n = 1; n < 100000; ++n) {
        hn *= L.h_;
        e4 += BigReal(mpq_class(240 * sigma_pow(n, 3)), prec) * hn;
        e6 -= BigReal(mpq_class(504 * sigma_pow(n, 5)), prec) * hn;
        BigReal bound = abs(hn) * pow_si(BigReal((long)n, prec), 6) * BigReal(504l, prec);
        if (bound < tail_bound) break;
    }
    BigReal pi4 = pow_si(L.pi_, 4), pi6 = pow_si(L.pi_, 6);
    L.g2_ = (BigReal(4l, prec) * pi4 / BigReal(3l, prec)) * e4;
    L.g3_ = (BigReal(8l, prec) * pi6 / BigReal(27l, prec)) * e6;
    return L;
}

BigComplex Lattice::reduce(const BigComplex& z) const {
    BigReal b = z.im / tau_.im;
    BigReal bf = b - round_nearest(b);
    BigReal a = z.re - b * tau_.re;
    BigReal af = a - round_nearest(a);
    return {af + bf * tau_.re, bf * tau_.im};
}

BigComplex Lattice::reduce_positive(const BigComplex& z) const {
    BigReal b = z.im / tau_.im;
    BigReal bf = b - floor(b);
    BigReal a = z.re - b * tau_.re;
    BigReal af = a - floor(a);
    return {af + bf * tau_.re, bf * tau_.im};
}

std::pair<BigComplex, BigComplex> Lattice::wp(const BigComplex& z) const {
    BigComplex zr = reduce(z);
    BigReal scale = abs(tau_);
    BigReal tol = ldexp2(scale, -(long)prec_ / 4);
    if (abs(zr) < tol)
        throw NearPoleError("wp: evaluation point within tolerance of a lattice point");

    BigReal two(2l, prec_);
    BigComplex piz = pi_ * zr;
    BigComplex s = sin(piz);
    BigComplex c = cos(piz);
    BigReal pi2 = pi_ * pi_, pi3 = pi2 * pi_;
    BigComplex one(1.0, 0.0, prec_);

    BigComplex p = pi2 * (one / (s * s)) - BigComplex(pi2 / BigReal(3l, prec_), BigReal(0l, prec_));
    BigComplex dp = BigReal(-2l, prec_) * pi3 * (c / (s * s * s));

    // q-series tail; |h|^n e^{2 pi n |Im z|} decays like e^{-pi n Im tau}
    BigComplex hn(1.0, 0.0, prec_);
    BigComplex e2piz = exp(BigComplex(-two * pi_ * zr.im, two * pi_ * zr.re));
    BigComplex e2piz_inv = one / e2piz;
    BigComplex en = one, en_inv = one;
    BigReal tail = ldexp2(BigReal(1l, prec_), -(long)prec_ - 16);
    BigReal growth = abs(e2piz) > abs(e2piz_inv) ? abs(e2piz) : abs(e2piz_inv);
    BigReal habs = abs(h_);
    for (long n = 1; n < 200000; ++n) {
        hn *= h_;
        en *= e2piz;
        en_inv *= e2piz_inv;
        BigComplex coef = hn / (one - hn);
        // cos(2 pi n z) = (en + en_inv)/2, sin = (en - en_inv)/(2i)
        BigComplex cosn = (en + en_inv) / two;
        BigComplex sinn = BigComplex(BigReal(0l, prec_), BigReal(-1l, prec_)) * (en - en_inv) / two;
        BigReal nn((long)n, prec_);
        p += BigReal(8l, prec_) * pi2 * nn * (coef * (one - cosn));
        dp += BigReal(16l, prec_) * pi3 * nn * nn * (coef * sinn);
        BigReal term_bound = pow_si(habs, (long)n) * pow_si(growth, (long)n) * nn * nn *
                             BigReal(64l, prec_) * pi3;
        if (term_bound < tail) break;
    }
    return {p, dp};
}

BigReal Lattice::identity_residual(const BigComplex& z) const {
    auto [p, dp] = wp(z);
    BigComplex lhs = dp * dp;
    BigComplex rhs = BigReal(4l, prec_) * (p * p * p) - g2_ * p - g3_;
    return abs(lhs - rhs);
}

std::vector<BigComplex> Lattice::wp_inverse(const BigComplex& x) const {
    std::vector<BigComplex> found;
    BigReal target_tol = ldexp2(std::max(BigReal(1l, prec_), abs(x)), -(long)prec_ + 32);
    const int grid = 9;
    for (int ia = 1; ia < grid; ++ia) {
        for (int ib = 1; ib < grid; ++ib) {
            BigReal a((long)ia, prec_);
            BigReal b((long)ib, prec_);
            BigReal g((long)grid, prec_);
            BigComplex z(a / g + (b / g) * tau_.re, (b / g) * tau_.im);
            bool ok = true;
            for (int it = 0; it < 120; ++it) {
                std::pair<BigComplex, BigComplex> v;
                try {
                    v = wp(z);
                } catch (const NearPoleError&) {
                    ok = false;
                    break;
                }
                BigComplex step = (v.first - x) / v.second;
                z -= step;
                if (abs(step) < ldexp2(BigReal(1l, prec_), -(long)prec_ + 16)) break;
            }
            if (!ok) continue;
            try {
                auto v = wp(z);
                if (!(abs(v.first - x) < target_tol)) continue;
            } catch (const NearPoleError&) {
                continue;
            }
            BigComplex zf = reduce_positive(z);
            bool dup = false;
            BigReal dtol(1e-20, prec_);
            for (const auto& w : found)
                if (abs(reduce(zf - w)) < dtol) dup = true;
            if (!dup) found.push_back(zf);
            if (found.size() >= 2) return found;
        }
    }
    return found;
}

std::vector<BigComplex> Lattice::vectors(int bound) const {
    std::vector<BigComplex> out;
    for (int m = -bound; m <= bound; ++m)
        for (int n = -bound; n <= bound; ++n) {
            if (m == 0 && n == 0) continue;
            BigReal mm((long)m, prec_), nn((long)n, prec_);
            out.push_back({mm + nn * tau_.re, nn * tau_.im});
        }
    return out;
}

std::array<BigComplex, 3> Lattice::half_periods() const {
    BigReal half(1l, prec_);
    half = half / BigReal(2l, prec_);
    BigComplex h1(half, BigReal(0l, prec_));
    BigComplex h2(half * tau_.re, half * tau_.im);
    return {h1, h2, h1 + h2};
}

HatForm HatForm::detect(const Lattice& lattice) {
    HatForm hf;
    mpfr_prec_t prec = lattice.prec();
    BigReal a2 = abs(lattice.g2()), a3 = abs(lattice.g3());
    BigReal thresh = ldexp2(std::max(BigReal(1l, prec), std::max(a2, a3)), -(long)prec / 2);
    if (a2 < thresh && !(a3 < thresh)) {
        // y^2 = 4x^3 - 4 after z -> mu z with mu = (g3/4)^(1/6)
        hf.exact = true;
        hf.curve = {GaussianRational(0), GaussianRational(4)};
        BigComplex q = lattice.g3() / BigComplex(4.0, 0.0, prec);
        hf.mu = q.im.is_zero() && q.re.sign() > 0
                    ? BigComplex(rootn(q.re, 6), BigReal(0l, prec))
                    : rootn(q, 6);
    } else if (a3 < thresh && !(a2 < thresh)) {
        // y^2 = 4x^3 - 4x after z -> mu z with mu = (g2/4)^(1/4)
        hf.exact = true;
        hf.curve = {GaussianRational(4), GaussianRational(0)};
        BigComplex q = lattice.g2() / BigComplex(4.0, 0.0, prec);
        hf.mu = q.im.is_zero() && q.re.sign() > 0
                    ? BigComplex(rootn(q.re, 4), BigReal(0l, prec))
                    : rootn(q, 4);
    } else {
        hf.exact = false;
        hf.mu = BigComplex(1.0, 0.0, prec);
    }
    return hf;
}

std::vector<QPoly> half_period_factors(const CurveParams<GaussianRational>& curve) {
    // c(x) = 4x^3 - g2 x - g3 for the exact normal forms
    GaussianRational one(1);
    if (curve.g2.is_zero() && curve.g3 == GaussianRational(4)) {
        // 4(x - 1)(x^2 + x + 1)
        return {QPoly({GaussianRational(-1), one}), QPoly({one, one, one})};
    }
    if (curve.g3.is_zero() && curve.g2 == GaussianRational(4)) {
        // 4x(x - 1)(x + 1)
        return {QPoly({GaussianRational(0), one}), QPoly({GaussianRational(-1), one}),
                QPoly({one, one})};
    }
    throw UnsupportedScenarioError("half_period_factors: curve is not in a known normal form");
}

}  // namespace voronome
