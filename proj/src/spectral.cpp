#include "voronome/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "voronome/flatgeo.hpp"

namespace voronome::spectral {

using C = std::complex<double>;

namespace {

// series window of the scenario data at an arbitrary basepoint, BigComplex
// coefficients: returns (f series, omega-coefficient series)
std::pair<CSeries, CSeries> seed_series(const Scenario& s, const BigComplex& z, size_t len,
                                        mpfr_prec_t prec) {
    auto expand_rational = [&](const QRationalMap& r) {
        CPoly num = to_cpoly(r.num(), prec), den = to_cpoly(r.den(), prec);
        // shifted polynomials num(z+t), den(z+t) with BigComplex arithmetic
        BigComplex zz = z;
        CPoly ns = num.taylor_shift(zz), ds = den.taylor_shift(zz);
        std::vector<BigComplex> a(len, BigComplex(0.0, 0.0, prec)),
            b(len, BigComplex(0.0, 0.0, prec));
        for (size_t i = 0; i < len; ++i) {
            a[i] = ns.coeff(i).is_zero() ? BigComplex(0.0, 0.0, prec) : ns.coeff(i);
            b[i] = ds.coeff(i).is_zero() ? BigComplex(0.0, 0.0, prec) : ds.coeff(i);
        }
        if (b[0].is_zero()) throw InvalidInputError("taylor_coeffs: basepoint is a pole");
        return CSeries(z, a) / CSeries(z, b);
    };

    if (s.is_rational_like()) {
        const QRationalMap f0 = s.kind() == ScenarioKind::RationalP1 ? s.rational_data().f0
                                                                     : s.monomial_data().f0;
        CSeries fs = expand_rational(f0);
        CSeries oms = expand_rational(s.omega_map());
        return {fs, oms};
    }
    if (s.is_elliptic()) {
        const Lattice& L = s.lattice();
        auto [p, dp] = L.wp(z);
        BigComplex g2 = L.g2();
        // Taylor coefficients of wp(z + t) from wp'' = 6 wp^2 - g2/2
        std::vector<BigComplex> a(len + 1, BigComplex(0.0, 0.0, prec));
        a[0] = p;
        if (len > 1) a[1] = dp;
        BigReal half(1l, prec);
        half = half / BigReal(2l, prec);
        for (size_t k = 0; k + 2 <= len; ++k) {
            BigComplex conv(0.0, 0.0, prec);
            for (size_t i = 0; i <= k; ++i) conv += a[i] * a[k - i];
            BigComplex rhs = BigReal(6l, prec) * conv;
            if (k == 0) rhs -= half * g2;
            a[k + 2] = rhs / BigReal((long)((k + 2) * (k + 1)), prec);
        }
        a.resize(len);
        CSeries xs(z, a);
        CSeries ys = xs.derivative();
        // pad ys back to len with its own recurrence tail unavailability: use len-1 window
        if (s.kind() == ScenarioKind::EllipticDz) {
            std::vector<BigComplex> one(len, BigComplex(0.0, 0.0, prec));
            one[0] = BigComplex(1.0, 0.0, prec);
            return {xs, CSeries(z, one)};
        }
        // f = wp', omega coefficient = wp'
        return {ys, ys};
    }
    throw UnsupportedScenarioError("taylor_coeffs: unsupported scenario kind");
}

std::vector<BigComplex> window_run(const Scenario& s, const BigComplex& z, long N,
                                   mpfr_prec_t prec) {
    size_t len = (size_t)N + 2;
    auto [f, om] = seed_series(s, z, len, prec);
    std::vector<BigComplex> out;
    out.reserve((size_t)N + 1);
    BigReal fact(1l, prec);
    CSeries cur = f;
    out.push_back(cur.coeff(0));
    for (long n = 1; n <= N; ++n) {
        cur = cur.derivative() / om;
        fact *= BigReal(n, prec);
        out.push_back(cur.coeff(0) / fact);
    }
    return out;
}

double log_abs(const BigComplex& v) {
    if (v.is_zero()) return -std::numeric_limits<double>::infinity();
    // log |v| via mpfr to keep the huge dynamic range
    BigReal a = abs(v);
    return log(a).to_double();
}

}  // namespace

CoeffTrack taylor_coeffs(const Scenario& s, const BigComplex& z, long N) {
    if (N < 8) throw InvalidInputError("taylor_coeffs: N >= 8 required");
    CoeffTrack t;
    t.basepoint = z;
    mpfr_prec_t prec = std::max<mpfr_prec_t>(s.precision(), 128) + 64;
    for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
        auto lo = window_run(s, z, N, prec);
        auto hi = window_run(s, z, N, prec * 2);
        // the last coefficients must carry 32 significant bits
        bool ok = true;
        for (long n = N - 4; n <= N; ++n) {
            BigReal diff = abs(lo[(size_t)n] - hi[(size_t)n]);
            BigReal mag = abs(hi[(size_t)n]);
            if (mag.is_zero()) continue;
            if (!(diff / mag < ldexp2(BigReal(1l, prec), -32))) ok = false;
        }
        if (ok) {
            t.c = std::move(hi);
            t.precision = prec * 2;
            return t;
        }
    }
    throw ResourceError("taylor_coeffs: precision ladder exhausted", N);
}

RadiusEstimate estimate_radius(const CoeffTrack& t) {
    long N = (long)t.c.size() - 1;
    RadiusEstimate re;
    std::vector<double> lam((size_t)N + 1);
    bool all_zero = true;
    long nonzero = 0;
    for (long n = 0; n <= N; ++n) {
        lam[(size_t)n] = log_abs(t.c[(size_t)n]);
        if (std::isfinite(lam[(size_t)n])) {
            all_zero = false;
            ++nonzero;
        }
    }
    if (all_zero || nonzero < 16) {
        re.infinite = all_zero;
        if (!all_zero) throw InvalidInputError("estimate_radius: needs >= 16 nonzero coefficients");
        return re;
    }
    // rho_n = exp(-max(lam_k/k)) over a trailing window, handling even/odd
    // alternation by taking the windowed max of lam_k/k (limsup form)
    auto rho_at = [&](long n) {
        double best = -std::numeric_limits<double>::infinity();
        for (long k = std::max(2l, n - 16); k <= n; ++k) {
            if (!std::isfinite(lam[(size_t)k])) continue;
            best = std::max(best, lam[(size_t)k] / (double)k);
        }
        return std::exp(-best);
    };
    double r1 = rho_at(N), r2 = rho_at(N / 2), r4 = rho_at(N / 4);
    // one Richardson step in 1/n on log rho
    double l1 = std::log(r1), l2 = std::log(r2);
    double extral = 2 * l1 - l2;
    re.value = std::exp(extral);
    re.error_bar = std::max({std::abs(r1 - r2), std::abs(r2 - r4), 1e-12}) ;
    return re;
}

SingularityEstimate track_singularity(const CoeffTrack& t) {
    long N = (long)t.c.size() - 1;
    SingularityEstimate se;
    auto ratio_k = [&](long n, long k) -> C {
        const BigComplex &a = t.c[(size_t)n], &b = t.c[(size_t)(n + k)];
        if (a.is_zero() || b.is_zero()) return {std::numeric_limits<double>::quiet_NaN(), 0};
        double lm = log_abs(a) - log_abs(b);
        BigComplex q = a / b;
        return std::polar(std::exp(lm), atan2(q.im, q.re).to_double());
    };
    // consecutive ratios over a tail window
    long w0 = std::max(0l, N - 25);
    std::vector<C> rr;
    for (long n = w0; n + 1 <= N; ++n) {
        C v = ratio_k(n, 1);
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) rr.push_back(v);
    }
    if (rr.size() < 8) {
        se.edge_flag = true;
        return se;
    }
    size_t m = rr.size();
    double mag = std::abs(rr[m - 1]) + 1e-300;
    // does the ratio oscillation decay across the window?
    double osc_head = 0, osc_tail = 0;
    for (size_t i = 0; i + 1 < 4; ++i) osc_head = std::max(osc_head, std::abs(rr[i + 1] - rr[i]));
    for (size_t i = m - 4; i + 1 < m; ++i)
        osc_tail = std::max(osc_tail, std::abs(rr[i + 1] - rr[i]));
    bool oscillating = osc_tail > 0.5 * osc_head && osc_tail > 1e-5 * mag;

    auto aitken = [](C a, C b, C c) {
        C den = c - 2.0 * b + a;
        if (std::abs(den) < 1e-300) return c;
        return c - (c - b) * (c - b) / den;
    };

    if (oscillating) {
        se.edge_flag = true;
        // conjugate-pair fallback: even/odd sub-ratios converge to |d|^2
        std::vector<C> s2;
        for (long n = w0; n + 2 <= N; ++n) {
            C v = ratio_k(n, 2);
            if (std::isfinite(v.real())) s2.push_back(v);
        }
        if (s2.size() >= 6) {
            size_t k = s2.size();
            C a1 = aitken(s2[k - 6], s2[k - 4], s2[k - 2]);
            C a2 = aitken(s2[k - 5], s2[k - 3], s2[k - 1]);
            if (std::abs(a1 - a2) < 0.05 * (std::abs(a2) + 1e-300)) {
                se.multi_flag = true;
                se.abs_d_hat = std::sqrt(std::abs(a2));
            }
        }
        return se;
    }

    C acc = aitken(rr[m - 5], rr[m - 3], rr[m - 1]);
    se.d_hat = acc;
    se.abs_d_hat = std::abs(acc);

    // joint fit log|c_n| = a - n log|d| - (m0+1) log n over the tail; this is
    // the log|c_n d^n| slope in a better-conditioned form
    std::vector<double> xs1, xs2, ys;
    for (long n = std::max(3l, N / 4); n <= N; ++n) {
        if (t.c[(size_t)n].is_zero()) continue;
        xs1.push_back((double)n);
        xs2.push_back(std::log((double)n));
        ys.push_back(log_abs(t.c[(size_t)n]));
    }
    if (xs1.size() >= 8) {
        // least squares for y = b0 + b1 * n + b2 * log n
        double S = (double)xs1.size();
        double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0, sy = 0, s1y = 0, s2y = 0;
        for (size_t i = 0; i < xs1.size(); ++i) {
            s1 += xs1[i];
            s2 += xs2[i];
            s11 += xs1[i] * xs1[i];
            s22 += xs2[i] * xs2[i];
            s12 += xs1[i] * xs2[i];
            sy += ys[i];
            s1y += xs1[i] * ys[i];
            s2y += xs2[i] * ys[i];
        }
        // normal equations for (b0, b1, b2)
        double A[3][4] = {{S, s1, s2, sy}, {s1, s11, s12, s1y}, {s2, s12, s22, s2y}};
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            std::swap(A[c], A[piv]);
            if (std::abs(A[c][c]) < 1e-14) return se;
            for (int r = 0; r < 3; ++r) {
                if (r == c) continue;
                double f = A[r][c] / A[c][c];
                for (int k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
            }
        }
        double b2 = A[2][3] / A[2][2];
        se.m0_hat = -b2 - 1.0;
        se.have_m0 = true;
    }
    return se;
}

// --- fast grid scan ---

namespace {

// scaled value: m * 2^e
struct PV {
    C m;
    long e = 0;
    bool ok = true;
};

// polynomial with double coefficients scaled by a power of two, plus the
// exact coefficients for a high-precision fallback when the double Horner
// pass cancels too much
struct ScaledDPoly {
    std::vector<C> c;
    std::vector<double> cabs;
    long expo = 0;
    CPoly exact;

    static ScaledDPoly from(const QPoly& p, mpfr_prec_t fallback_prec) {
        ScaledDPoly sp;
        long emax = std::numeric_limits<long>::min();
        for (const auto& q : p.coeffs()) {
            BigComplex b = q.to_big(64);
            BigReal m = abs(b);
            if (!m.is_zero()) emax = std::max(emax, (long)mpfr_get_exp(m.raw()));
        }
        if (emax == std::numeric_limits<long>::min()) emax = 0;
        sp.expo = emax;
        for (const auto& q : p.coeffs()) {
            BigComplex b = q.to_big(64);
            BigReal re = ldexp2(b.re, -emax), im = ldexp2(b.im, -emax);
            C cv(re.to_double(), im.to_double());
            sp.c.push_back(cv);
            sp.cabs.push_back(std::abs(cv));
        }
        sp.exact = to_cpoly(p, fallback_prec);
        return sp;
    }
    // double pass; flips ok=false when more than ~22 bits cancel
    PV eval_checked(C z) const {
        C acc = 0;
        double sacc = 0, az = std::abs(z);
        for (size_t i = c.size(); i-- > 0;) {
            acc = acc * z + c[i];
            sacc = sacc * az + cabs[i];
        }
        PV v{acc, expo, true};
        if (!(std::abs(acc) > 1e-9 * sacc) || !std::isfinite(std::abs(acc))) v.ok = false;
        return v;
    }
    // high-precision fallback, result split into mantissa and exponent
    PV eval_exact(C z) const {
        mpfr_prec_t p = exact.coeffs().empty() ? 256 : exact.coeffs()[0].prec();
        BigComplex v = exact.eval(BigComplex(z.real(), z.imag(), p));
        PV out;
        BigReal m = abs(v);
        if (m.is_zero()) {
            out.m = C(0, 0);
            out.e = 0;
            return out;
        }
        long E = (long)mpfr_get_exp(m.raw());
        BigReal re = ldexp2(v.re, -E), im = ldexp2(v.im, -E);
        out.m = C(re.to_double(), im.to_double());
        // the exact coefficients are unscaled, so E alone is the exponent
        out.e = E;
        return out;
    }
    PV eval(C z) const {
        PV v = eval_checked(z);
        if (v.ok) return v;
        return eval_exact(z);
    }
};

struct RatioProbe {
    // returns the ratio-like direction estimate d(z) (phi-chart units), or NaN
    std::function<C(C)> dominant;
    std::function<bool(C)> masked;
};

RatioProbe make_probe(const Scenario& s, long N) {
    auto probe = std::make_shared<std::vector<std::array<ScaledDPoly, 2>>>();
    // iterates N-3 .. N+1 as scaled numerator/denominator pairs
    long n0 = N - 3;
    std::shared_ptr<flatgeo::WpDouble> wp;
    std::shared_ptr<std::array<double, 2>> muscale;
    bool elliptic = s.is_elliptic();
    std::vector<std::array<ScaledDPoly, 2>> ell_pairs;  // (n0poly, n1poly) per iterate
    std::vector<long> kpow;

    mpfr_prec_t fb = std::max<mpfr_prec_t>(s.precision(), 256);
    if (s.is_rational_like()) {
        auto trail = s.iterate_trail(N + 1);
        for (long n = n0; n <= N + 1; ++n)
            probe->push_back({ScaledDPoly::from(trail[(size_t)n].rat.num(), fb),
                              ScaledDPoly::from(trail[(size_t)n].rat.den(), fb)});
    } else if (elliptic) {
        auto trail = s.iterate_trail(N + 1);
        for (long n = n0; n <= N + 1; ++n) {
            ell_pairs.push_back({ScaledDPoly::from(trail[(size_t)n].ell.n0(), fb),
                                 ScaledDPoly::from(trail[(size_t)n].ell.n1(), fb)});
            kpow.push_back(trail[(size_t)n].ell.den_power());
        }
        auto [tr, ti] = s.lattice().tau().to_doubles();
        wp = std::make_shared<flatgeo::WpDouble>(flatgeo::WpDouble::make(C(tr, ti)));
        auto [mr, mi] = s.hat_form().mu.to_doubles();
        muscale = std::make_shared<std::array<double, 2>>(std::array<double, 2>{mr, mi});
    } else {
        throw UnsupportedScenarioError("detect_edges: unsupported scenario kind");
    }

    RatioProbe rp;
    if (s.is_rational_like()) {
        // omega multiplier for the ratio: c_n/c_{n+1} = (n+1) f_n / f_{n+1}
        rp.dominant = [probe, n0, N](C z) -> C {
            auto val = [&](long i) {
                const auto& pr = (*probe)[(size_t)i];
                PV num = pr[0].eval(z), den = pr[1].eval(z);
                if (num.m == C(0, 0) || den.m == C(0, 0))
                    return PV{C(0, 0), 0, false};
                return PV{num.m / den.m, num.e - den.e, true};
            };
            // three consecutive ratios then one Aitken step
            C r[3];
            for (int j = 0; j < 3; ++j) {
                long n = N - 2 + j - n0;
                PV v1 = val(n), v2 = val(n + 1);
                if (!v1.ok || !v2.ok) return C(NAN, NAN);
                C q = v1.m / v2.m;
                double mag = std::ldexp(std::abs(q), (int)std::clamp<long>(v1.e - v2.e, -900, 900));
                // c_n/c_{n+1} = (n+1) f_n/f_{n+1} with n = N-2+j
                r[j] = std::polar(mag * (double)(N - 1 + j), std::arg(q));
            }
            C den = r[2] - 2.0 * r[1] + r[0];
            if (std::abs(den) < 1e-300) return r[2];
            return r[2] - (r[2] - r[1]) * (r[2] - r[1]) / den;
        };
    } else {
        auto pairs = std::make_shared<std::vector<std::array<ScaledDPoly, 2>>>(std::move(ell_pairs));
        auto kp = std::make_shared<std::vector<long>>(std::move(kpow));
        rp.dominant = [pairs, kp, wp, muscale, n0, N](C z) -> C {
            auto [p, dp] = wp->eval(z);
            C mu(muscale->at(0), muscale->at(1));
            C xh = p / (mu * mu);
            C yh = dp / (mu * mu * mu);
            C cx = yh * yh;  // c(x) on the curve
            auto val = [&](long i) {
                const auto& pr = (*pairs)[(size_t)i];
                PV a = pr[0].eval(xh);
                PV b = pr[1].eval(xh);
                // n0 + n1*y with exponent alignment to the larger part
                long e = std::max(a.e, b.e + 2);
                C num = a.m * std::ldexp(1.0, (int)std::clamp<long>(a.e - e, -60, 0)) +
                        b.m * yh * std::ldexp(1.0, (int)std::clamp<long>(b.e - e, -60, 0));
                return PV{num, e, std::isfinite(std::abs(num))};
            };
            C r[3];
            for (int j = 0; j < 3; ++j) {
                long i = N - 2 + j - n0;
                PV v1 = val(i), v2 = val(i + 1);
                if (!v1.ok || !v2.ok || v1.m == C(0, 0) || v2.m == C(0, 0)) return C(NAN, NAN);
                long dk = kp->at((size_t)(i + 1)) - kp->at((size_t)i);
                C q = v1.m / v2.m;
                for (long t = 0; t < dk; ++t) q *= cx;
                double mag = std::ldexp(std::abs(q), (int)std::clamp<long>(v1.e - v2.e, -900, 900));
                r[j] = std::polar(mag * (double)(N - 1 + j), std::arg(q));
            }
            C den = r[2] - 2.0 * r[1] + r[0];
            if (std::abs(den) < 1e-300) return r[2];
            return r[2] - (r[2] - r[1]) * (r[2] - r[1]) / den;
        };
    }
    return rp;
}

}  // namespace

C debug_dominant(const Scenario& s, long N, C z) {
    RatioProbe probe = make_probe(s, N);
    return probe.dominant(z);
}

std::vector<C> detect_edges(const Scenario& s, double x0, double x1, double y0, double y1,
                            const EdgeScanOptions& opt) {
    PplReport rep = principal_polar_locus(s);
    std::vector<C> avoid;
    for (const auto& p : rep.points)
        for (const auto& pos : p.positions) {
            auto [a, b] = pos.to_doubles();
            avoid.push_back(C(a, b));
        }
    // poles of omega are masked as well
    if (s.is_rational_like()) {
        QRationalMap om = s.omega_map();
        AberthOptions ao;
        ao.precision = 128;
        for (const auto& r : poly_roots(om.den(), ao).roots) {
            auto [a, b] = r.value.to_doubles();
            avoid.push_back(C(a, b));
        }
    } else if (s.is_elliptic()) {
        // lattice points (poles of wp / wp')
        for (int m = -2; m <= 2; ++m)
            for (int n = -2; n <= 2; ++n) {
                auto [tr, ti] = s.lattice().tau().to_doubles();
                avoid.push_back(C((double)m + n * tr, n * ti));
            }
    }
    auto masked = [&, avoid](C z) {
        for (const auto& a : avoid)
            if (std::abs(z - a) < opt.mask_radius) return true;
        return false;
    };

    RatioProbe probe = make_probe(s, opt.N);
    int n = opt.grid;
    double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
    std::vector<C> dval((size_t)(n * n), C(NAN, NAN));
    auto at = [&](int i, int j) -> C& { return dval[(size_t)(j * n + i)]; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            C z(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy);
            if (masked(z)) continue;
            at(i, j) = probe.dominant(z);
        }
    auto jump = [&](C a, C b) {
        if (!std::isfinite(a.real()) || !std::isfinite(b.real())) return false;
        double da = std::arg(b / a);
        return std::abs(da) > M_PI / 8;
    };
    std::vector<C> cloud;
    auto refine = [&](C za, C zb) {
        C a = probe.dominant(za), b = probe.dominant(zb);
        if (!std::isfinite(a.real()) || !std::isfinite(b.real())) {
            cloud.push_back((za + zb) / 2.0);
            return;
        }
        for (int it = 0; it < opt.bisection_steps; ++it) {
            C zm = (za + zb) / 2.0;
            if (masked(zm)) break;
            C m = probe.dominant(zm);
            if (!std::isfinite(m.real())) break;
            if (jump(a, m)) {
                zb = zm;
                b = m;
            } else {
                za = zm;
                a = m;
            }
        }
        cloud.push_back((za + zb) / 2.0);
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            C a = at(i, j), b = at(i + 1, j);
            if (jump(a, b))
                refine(C(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy),
                       C(x0 + (i + 1.5) * dx, y0 + (j + 0.5) * dy));
        }
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i < n; ++i) {
            C a = at(i, j), b = at(i, j + 1);
            if (jump(a, b))
                refine(C(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy),
                       C(x0 + (i + 0.5) * dx, y0 + (j + 1.5) * dy));
        }
    return cloud;
}

OrlovFit orlov_validate(const OrlovCase& spec, long K) {
    OrlovFit fit;
    fit.K = K;
    double alpha = spec.alpha;
    mpfr_prec_t prec = 256;
    // c_{k+1} = c_k (k - alpha) / (k + 1), c_0 = 1 gives (1-x)^alpha up to sign
    // conventions: c_k = (-1)^k binom(alpha, k)
    BigReal c(1l, prec);
    BigReal a(alpha, prec);
    double L = 1.0 / std::tgamma(-alpha);
    auto measure = [&](long k, const BigReal& ck) {
        double v = log(abs(ck)).to_double() + (alpha + 1) * std::log((double)k);
        return std::exp(v) * (ck.sign() < 0 ? -1.0 : 1.0);
    };
    double A_half = 0, A_full = 0;
    std::vector<std::pair<double, double>> residuals;
    for (long k = 0; k < K; ++k) {
        BigReal kk((long)k, prec);
        c = c * (kk - a) / (kk + BigReal(1l, prec));
        long kn = k + 1;
        if (kn == K / 4 || kn == K / 2 || kn == K) {
            double A = measure(kn, c);
            if (kn == K / 2) A_half = A;
            if (kn == K) A_full = A;
            if (std::isfinite(L) && L != 0)
                residuals.push_back({std::log((double)kn), std::log(std::abs(A - L) + 1e-300)});
        }
    }
    if (alpha == std::round(alpha) && alpha < 0) {
        // polar case: the expansion terminates against the prediction exactly
        // ((1-x)^{-1} has c_k = 1 = prediction for every k)
        fit.exact_series = std::abs(alpha + 1.0) < 1e-15;
        fit.raw_rel_err = std::abs(A_full - L) / std::abs(L);
        fit.extrapolated_rel_err = fit.raw_rel_err;
        return fit;
    }
    fit.raw_rel_err = std::abs(A_full - L) / std::abs(L);
    double rich = 2 * A_full - A_half;
    fit.extrapolated_rel_err = std::abs(rich - L) / std::abs(L);
    if (residuals.size() >= 2) {
        auto [x1v, y1v] = residuals.front();
        auto [x2v, y2v] = residuals.back();
        fit.correction_decay = (y2v - y1v) / (x2v - x1v);
    }
    return fit;
}

}  // namespace voronome::spectral
