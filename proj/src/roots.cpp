#include "voronome/roots.hpp"

#include <algorithm>
#include <cmath>

#include "voronome/errors.hpp"

namespace voronome {

namespace {

constexpr double kGolden = 0.6180339887498949;

struct ScaledPoly {
    std::vector<BigComplex> c;  // ascending, c.back() != 0
    long degree() const { return (long)c.size() - 1; }

    BigComplex eval(const BigComplex& z) const {
        BigComplex acc = c.back();
        for (size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
        return acc;
    }
    BigComplex eval_deriv(const BigComplex& z) const {
        mpfr_prec_t p = z.prec();
        BigComplex acc(0.0, 0.0, p);
        for (size_t i = c.size() - 1; i >= 1; --i) acc = acc * z + BigReal((long)i, p) * c[i];
        return acc;
    }
    // sum_i |c_i| max(1,|z|)^i, the backward-error scale
    BigReal error_scale(const BigComplex& z) const {
        mpfr_prec_t p = z.prec();
        BigReal az = abs(z);
        if (az < BigReal(1l, p)) az = BigReal(1l, p);
        BigReal acc(0l, p), power(1l, p);
        for (const auto& ci : c) {
            acc += abs(ci) * power;
            power *= az;
        }
        return acc;
    }
};

BigComplex reprec(const BigComplex& x, mpfr_prec_t prec) {
    BigComplex out(prec);
    out.re = BigReal(Prec{prec}) + x.re;
    out.im = BigReal(Prec{prec}) + x.im;
    return out;
}

ScaledPoly at_precision(const CPoly& p, mpfr_prec_t prec) {
    ScaledPoly sp;
    for (const auto& ci : p.coeffs()) sp.c.push_back(reprec(ci, prec));
    return sp;
}

// Fujiwara-style root radius bound
double root_radius(const ScaledPoly& p) {
    long d = p.degree();
    double r = 0;
    for (long k = 1; k <= d; ++k) {
        BigReal q = abs(p.c[(size_t)(d - k)]) / abs(p.c.back());
        double a = q.to_double();
        if (a == 0) continue;
        r = std::max(r, std::pow(a, 1.0 / (double)k));
    }
    return 2.0 * std::max(r, 1e-12);
}

// one Aberth-Ehrlich sweep sequence at fixed precision
bool aberth_run(const ScaledPoly& p, std::vector<BigComplex>& z, mpfr_prec_t prec,
                int max_sweeps) {
    long d = p.degree();
    BigReal eps = ldexp2(BigReal(1l, prec), -(long)prec + 16);
    // fallback: accept stagnation at the numerical floor once updates are far
    // below half precision; the residual check downstream still certifies
    BigReal floor_eps = ldexp2(BigReal(1l, prec), -(long)prec / 2 - 16);
    BigReal prev_worst(1l, prec);
    int stagnant = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        BigReal worst(0l, prec);
        for (long k = 0; k < d; ++k) {
            BigComplex pv = p.eval(z[(size_t)k]);
            if (pv.is_zero()) continue;
            BigComplex dv = p.eval_deriv(z[(size_t)k]);
            if (dv.is_zero()) {
                z[(size_t)k] += BigComplex(1e-8, 2e-8, prec);
                continue;
            }
            BigComplex newton = pv / dv;
            BigComplex s(0.0, 0.0, prec);
            for (long j = 0; j < d; ++j) {
                if (j == k) continue;
                BigComplex diff = z[(size_t)k] - z[(size_t)j];
                if (diff.is_zero()) diff = BigComplex(1e-10, 1e-10, prec);
                s += BigComplex(1.0, 0.0, prec) / diff;
            }
            BigComplex denom = BigComplex(1.0, 0.0, prec) - newton * s;
            BigComplex w = denom.is_zero() ? newton : newton / denom;
            z[(size_t)k] -= w;
            BigReal rel = abs(w) / std::max(BigReal(1l, prec), abs(z[(size_t)k]));
            if (worst < rel) worst = rel;
        }
        if (worst < eps) return true;
        if (worst < floor_eps && !(worst < prev_worst / BigReal(2l, prec))) {
            if (++stagnant >= 3) return true;
        } else {
            stagnant = 0;
        }
        prev_worst = worst;
    }
    return false;
}

std::vector<std::vector<size_t>> cluster(const std::vector<BigComplex>& pts, double radius) {
    size_t n = pts.size();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<size_t> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            size_t a = stack.back();
            stack.pop_back();
            for (size_t b = 0; b < n; ++b) {
                if (comp[b] >= 0) continue;
                if (abs(pts[a] - pts[b]).to_double() <= radius) {
                    comp[b] = nc;
                    stack.push_back(b);
                }
            }
        }
        ++nc;
    }
    std::vector<std::vector<size_t>> out((size_t)nc);
    for (size_t i = 0; i < n; ++i) out[(size_t)comp[i]].push_back(i);
    return out;
}

RootSet solve_once(const CPoly& q, const AberthOptions& opt, double phase, long zero_roots,
                   long expected);

RootSet solve_simple(const CPoly& p, const AberthOptions& opt) {
    RootSet rs;
    rs.expected = std::max<long>(p.degree(), 0);
    if (p.degree() < 1) {
        rs.certified = true;
        return rs;
    }
    // split off the exact zero roots
    long v = p.valuation();
    std::vector<BigComplex> cc(p.coeffs().begin() + v, p.coeffs().end());
    CPoly q(std::move(cc));
    // distinct starting phases guard against two points collapsing onto one
    // root and stranding another
    RootSet best;
    for (double phase : {0.1, 0.47, 1.03}) {
        RootSet cand = solve_once(q, opt, phase, v, rs.expected);
        if (cand.certified) return cand;
        if (cand.roots.size() > best.roots.size() || best.roots.empty()) best = std::move(cand);
    }
    return best;
}

RootSet solve_once(const CPoly& q, const AberthOptions& opt, double phase, long zero_roots,
                   long expected) {
    RootSet rs;
    rs.expected = expected;
    long v = zero_roots;
    mpfr_prec_t prec = opt.precision;
    bool converged = false;
    std::vector<BigComplex> z;
    mpfr_prec_t used = prec;
    for (int step = 0; step <= opt.ladder_steps && !converged; ++step, prec *= 2) {
        used = prec;
        ScaledPoly sp = at_precision(q, prec);
        long d = sp.degree();
        if (d == 0) {
            converged = true;
            break;
        }
        if (z.empty()) {
            double r = root_radius(sp);
            for (long k = 0; k < d; ++k) {
                double theta = 2 * M_PI * (double)k / (double)d +
                               2 * M_PI * std::fmod(kGolden * (double)k, 1.0) / (3.0 * (double)d) +
                               phase;
                z.push_back(BigComplex(r * std::cos(theta), r * std::sin(theta), prec));
            }
        } else {
            for (auto& zk : z) zk = reprec(zk, prec);
        }
        converged = aberth_run(sp, z, prec, opt.max_sweeps);
        if (converged) {
            for (const auto& zk : z) {
                double res = (abs(sp.eval(zk)) / sp.error_scale(zk)).to_double();
                if (!(res < opt.tol)) {
                    converged = false;
                    break;
                }
            }
        }
    }

    ScaledPoly sp = at_precision(q, used);
    for (const auto& zk : z) {
        Root r;
        r.value = zk;
        r.multiplicity = 1;
        r.residual = (abs(sp.eval(zk)) / sp.error_scale(zk)).to_double();
        rs.roots.push_back(std::move(r));
    }
    for (long k = 0; k < v; ++k) rs.roots.push_back({BigComplex(0.0, 0.0, used), 1, 0.0});
    rs.certified = converged;

    // multiplicity clustering at radius tol^(1/k), smallest consistent k
    if (rs.roots.size() > 1) {
        std::vector<BigComplex> pts;
        for (auto& r : rs.roots) pts.push_back(r.value);
        std::vector<std::vector<size_t>> clusters;
        bool ok = false;
        for (size_t k = 1; k <= 6; ++k) {
            double radius = std::pow(opt.tol, 1.0 / (double)k);
            clusters = cluster(pts, radius);
            bool consistent = true;
            for (auto& cl : clusters)
                if (cl.size() > k) consistent = false;
            if (consistent) {
                ok = true;
                break;
            }
        }
        if (!ok) clusters = cluster(pts, std::pow(opt.tol, 1.0 / 6.0));
        std::vector<Root> merged;
        for (auto& cl : clusters) {
            if (cl.size() == 1) {
                merged.push_back(rs.roots[cl[0]]);
                continue;
            }
            mpfr_prec_t p2 = rs.roots[cl[0]].value.prec();
            BigComplex centroid(0.0, 0.0, p2);
            double res = 0;
            for (size_t i : cl) {
                centroid += rs.roots[i].value;
                res = std::max(res, rs.roots[i].residual);
            }
            centroid = centroid / BigReal((long)cl.size(), p2);
            merged.push_back({centroid, (long)cl.size(), res});
        }
        rs.roots = std::move(merged);
    }
    if (rs.total_multiplicity() != expected) rs.certified = false;
    return rs;
}

}  // namespace

RootSet poly_roots(const CPoly& p, const AberthOptions& opt) { return solve_simple(p, opt); }

RootSet poly_roots(const QPoly& p, const AberthOptions& opt) {
    RootSet rs;
    rs.expected = std::max<long>(p.degree(), 0);
    if (p.degree() < 1) {
        rs.certified = true;
        return rs;
    }
    // exact multiplicity structure first; each factor then has simple roots
    auto sf = squarefree_decomposition(p);
    bool all_ok = true;
    for (size_t j = 0; j < sf.size(); ++j) {
        if (sf[j].degree() < 1) continue;
        RootSet part = solve_simple(to_cpoly(sf[j], opt.precision), opt);
        if (!part.certified) all_ok = false;
        for (auto& r : part.roots) {
            r.multiplicity *= (long)(j + 1);
            rs.roots.push_back(r);
        }
    }
    rs.certified = all_ok && rs.total_multiplicity() == p.degree();
    return rs;
}

long boundary_winding(const RegionEvaluator& ev, const Rect& rect, double zero_tol,
                      double* defect) {
    using C = std::complex<double>;
    std::vector<C> corners{{rect.x0, rect.y0}, {rect.x1, rect.y0}, {rect.x1, rect.y1},
                           {rect.x0, rect.y1}};
    double total = 0;
    for (int e = 0; e < 4; ++e) {
        C a = corners[(size_t)e], b = corners[(size_t)((e + 1) % 4)];
        struct Seg {
            double t0, t1;
            C f0, f1;
            int depth;
        };
        C fa = ev.f(a), fb = ev.f(b);
        if (std::abs(fa) < zero_tol || std::abs(fb) < zero_tol)
            throw NearPoleError("winding: zero too close to the contour");
        std::vector<Seg> stack{{0.0, 1.0, fa, fb, 0}};
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            if (s.depth > 30) throw NearPoleError("winding: argument refinement failed");
            double tm = (s.t0 + s.t1) / 2;
            C zm = a + tm * (b - a);
            C fm = ev.f(zm);
            if (std::abs(fm) < zero_tol)
                throw NearPoleError("winding: zero too close to the contour");
            // accept only when both halves are small AND the value ratios are
            // near 1; a hidden full turn would drag |f| toward zero inside the
            // piece, which the ratio test exposes at the next refinement
            double d0 = std::arg(fm / s.f0), d1 = std::arg(s.f1 / fm);
            double r0 = std::abs(fm / s.f0 - 1.0), r1 = std::abs(s.f1 / fm - 1.0);
            if (s.depth >= 4 && std::abs(d0) < M_PI / 3 && std::abs(d1) < M_PI / 3 &&
                r0 < 0.7 && r1 < 0.7) {
                total += d0 + d1;
                continue;
            }
            stack.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
            stack.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
        }
    }
    double w = total / (2 * M_PI);
    long rounded = std::lround(w);
    if (defect) *defect = std::abs(w - (double)rounded);
    return rounded;
}

namespace {

std::complex<double> region_newton(const RegionEvaluator& ev, std::complex<double> z0,
                                   double scale) {
    using C = std::complex<double>;
    C z = z0;
    for (int it = 0; it < 80; ++it) {
        C f = ev.f(z);
        C d;
        if (ev.df) {
            d = ev.df(z);
        } else {
            double h = 1e-7 * scale;
            d = (ev.f(z + C(h, 0)) - ev.f(z - C(h, 0))) / C(2 * h, 0);
        }
        if (d == C(0, 0)) break;
        C step = f / d;
        z -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

long certified_winding(const RegionEvaluator& ev, Rect& r, const RegionOptions& opt) {
    double defect = 1;
    for (int attempt = 0; attempt < opt.max_boundary_retries; ++attempt) {
        try {
            long w = boundary_winding(ev, r, opt.tol * 1e-2, &defect);
            if (defect < 0.1) return w;
        } catch (const NearPoleError&) {
        }
        double gx = std::max(r.width(), opt.isolation_size) * (0.017 + 0.013 * attempt);
        double gy = std::max(r.height(), opt.isolation_size) * (0.019 + 0.011 * attempt);
        r = Rect{r.x0 - gx, r.y0 - gy, r.x1 + gx, r.y1 + gy};
    }
    throw CertificationError("region_roots: winding number did not certify after retries");
}

void region_recurse(const RegionEvaluator& ev, Rect rect, const RegionOptions& opt,
                    std::vector<Root>& out, int depth) {
    Rect r = rect;
    long w = certified_winding(ev, r, opt);
    if (w == 0) return;

    double diag = std::hypot(r.width(), r.height());
    if (w == 1 || diag < opt.isolation_size) {
        auto z = region_newton(ev, r.center(), std::max(diag, opt.isolation_size));
        bool inside = z.real() > r.x0 - 0.3 * r.width() && z.real() < r.x1 + 0.3 * r.width() &&
                      z.imag() > r.y0 - 0.3 * r.height() && z.imag() < r.y1 + 0.3 * r.height();
        if ((inside && std::abs(ev.f(z)) < 1e3 * opt.tol) || diag < opt.isolation_size) {
            Root root;
            if (!inside) z = r.center();  // certified enclosure without polish
            root.value = BigComplex(z.real(), z.imag(), opt.precision);
            root.multiplicity = w;
            root.residual = std::abs(ev.f(z));
            out.push_back(root);
            return;
        }
        // Newton wandered out of a still-large box; keep subdividing
    }
    if (depth > 40) throw CertificationError("region_roots: subdivision limit reached");
    double mx = (r.x0 + r.x1) / 2 + r.width() * 0.013;
    double my = (r.y0 + r.y1) / 2 + r.height() * 0.011;
    region_recurse(ev, Rect{r.x0, r.y0, mx, my}, opt, out, depth + 1);
    region_recurse(ev, Rect{mx, r.y0, r.x1, my}, opt, out, depth + 1);
    region_recurse(ev, Rect{r.x0, my, mx, r.y1}, opt, out, depth + 1);
    region_recurse(ev, Rect{mx, my, r.x1, r.y1}, opt, out, depth + 1);
}

}  // namespace

RootSet region_roots(const RegionEvaluator& ev, Rect rect, const RegionOptions& opt) {
    RootSet rs;
    Rect r = rect;
    long w = certified_winding(ev, r, opt);
    rs.expected = w;
    if (w == 0) {
        rs.certified = true;
        return rs;
    }
    std::vector<Root> found;
    region_recurse(ev, r, opt, found, 0);
    for (auto& cand : found) {
        bool dup = false;
        for (auto& have : rs.roots) {
            if (abs(cand.value - have.value).to_double() < opt.isolation_size * 2) {
                have.multiplicity = std::max(have.multiplicity, cand.multiplicity);
                dup = true;
                break;
            }
        }
        if (!dup) rs.roots.push_back(cand);
    }
    rs.certified = rs.total_multiplicity() == w;
    return rs;
}

}  // namespace voronome
