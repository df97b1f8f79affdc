#include "voronome/ppl.hpp"

#include <algorithm>
#include <sstream>

namespace voronome {

namespace {

// f and the omega coefficient as series at an affine point / at infinity,
// in a chart variable t with t = z - z0 (or t = 1/z)
struct LocalData {
    QSeries f;        // series of f
    QSeries omega;    // series of the omega coefficient in the chart
    long m = 0;       // order of omega at the point (must be >= 0)
    bool f_has_pole = false;
};

LocalData local_data_affine(const Scenario& s, const GaussianRational& z0, size_t window) {
    const QRationalMap f0 = s.kind() == ScenarioKind::RationalP1
                                ? s.rational_data().f0
                                : s.monomial_data().f0;
    QRationalMap om = s.omega_map();
    LocalData ld;
    long m_num = om.num().root_multiplicity(z0);
    long m_den = om.den().root_multiplicity(z0);
    ld.m = m_num - m_den;
    if (ld.m < 0) throw InvalidInputError("factorisation test: point is a pole of omega");
    ld.f_has_pole = f0.den().root_multiplicity(z0) > 0;
    if (!ld.f_has_pole) ld.f = f0.series_expand(z0, window);
    // omega series: expand num/den at z0; the valuation m survives exactly
    ld.omega = om.series_expand(z0, window);
    return ld;
}

LocalData local_data_infinity(const Scenario& s, size_t window) {
    const QRationalMap f0 = s.kind() == ScenarioKind::RationalP1
                                ? s.rational_data().f0
                                : s.monomial_data().f0;
    QRationalMap om = s.omega_map();
    // chart w = 1/z: f(1/w); omega = r(1/w) * (-1/w^2) dw
    QRationalMap fw = f0.at_infinity_chart();
    QRationalMap rw = om.at_infinity_chart();
    QRationalMap wm2(QPoly({GaussianRational(-1)}),
                     QPoly::monomial(2));  // -1/w^2
    QRationalMap omw = rw * wm2;
    LocalData ld;
    GaussianRational zero(0);
    long m_num = omw.num().root_multiplicity(zero);
    long m_den = omw.den().root_multiplicity(zero);
    ld.m = m_num - m_den;
    if (ld.m < 0) throw InvalidInputError("factorisation test: infinity is a pole of omega");
    ld.f_has_pole = fw.den().root_multiplicity(zero) > 0;
    if (!ld.f_has_pole) ld.f = fw.series_expand(zero, window);
    ld.omega = omw.series_expand(zero, window);
    return ld;
}

// the test itself on a fixed window: is f a power series in phi, where
// phi' = omega-coefficient (so val(phi) = m+1)?
bool series_factorised(const QSeries& f, const QSeries& omega, long m, size_t window) {
    QSeries phi = omega.integral().truncated(window);
    long v = phi.valuation();
    if (v != m + 1) throw Error("factorisation test: primitive valuation mismatch");
    // greedy elimination of phi powers
    std::vector<GaussianRational> res(f.coeffs());
    res.resize(window + 1, GaussianRational(0));
    QSeries power({}, std::vector<GaussianRational>(window + 1, GaussianRational(0)));
    {
        std::vector<GaussianRational> one(window + 1, GaussianRational(0));
        one[0] = GaussianRational(1);
        power = QSeries(f.center(), std::move(one));
    }
    long j = 0;  // current power of phi
    for (size_t k = 0; k <= window; ++k) {
        if (res[k].is_zero()) continue;
        if ((long)k % (m + 1) != 0) return false;
        long jk = (long)k / (m + 1);
        while (j < jk) {
            power = (power * phi).truncated(window);
            ++j;
        }
        GaussianRational lead = power.coeff(k);
        if (lead.is_zero()) throw Error("factorisation test: degenerate primitive power");
        GaussianRational b = res[k] / lead;
        for (size_t i = k; i <= window; ++i) res[i] -= b * power.coeff(i);
    }
    return true;
}

bool factorised_rational(const Scenario& s, const PointRef& z0) {
    const QRationalMap f0 = s.kind() == ScenarioKind::RationalP1
                                ? s.rational_data().f0
                                : s.monomial_data().f0;
    long degf = std::max(f0.num().degree(), f0.den().degree());
    auto run = [&](size_t window) -> bool {
        LocalData ld = z0.kind == PointRef::Infinity
                           ? local_data_infinity(s, window + 4)
                           : local_data_affine(s, z0.affine, window + 4);
        if (ld.f_has_pole) return false;
        if (ld.m == 0) return true;  // regular point of omega factorises trivially
        return series_factorised(ld.f, ld.omega, ld.m, window);
    };
    // sufficiency bound, then the doubling stability assertion
    LocalData probe = z0.kind == PointRef::Infinity ? local_data_infinity(s, 8)
                                                    : local_data_affine(s, z0.affine, 8);
    size_t window = (size_t)((probe.m + 1) * (2 * degf + 1) + probe.m + 2);
    bool a = run(window);
    bool b = run(2 * window);
    if (a != b)
        throw CertificationError("factorisation test unstable under window doubling");
    return a;
}

bool factorised_elliptic(const Scenario& s, const PointRef& z0) {
    IterateState st = s.initial_state();
    const auto& E = st.ell;
    if (s.kind() == ScenarioKind::EllipticDz) {
        // omega = dz has no zeros; every non-pole point of f factorises
        if (z0.kind == PointRef::LatticeOrigin) return false;  // pole of f
        return true;
    }
    // omega = wp' dz; its zeros are the three half-periods (order 1).
    if (z0.kind == PointRef::HalfPeriod) {
        auto factors = half_period_factors(E.curve());
        // pole of f at the half-period ends the test
        long npts = 0;
        for (const auto& q : factors) {
            long o = E.order_at_half_period(q);
            (void)o;
            npts += std::max<long>(1, q.degree());
        }
        (void)npts;
        // the local deck at a half-period is the elliptic involution: x -> x,
        // y -> -y. factorised by a primitive of wp' dz (= wp) means the odd
        // part in y vanishes identically.
        auto ord = [&](const QPoly& q) { return E.order_at_half_period(q); };
        for (const auto& q : factors) {
            if (ord(q) < 0) return false;  // pole of f at a zero of omega
        }
        return E.n1().is_zero();
    }
    if (z0.kind == PointRef::LatticeOrigin)
        throw InvalidInputError("factorisation test: origin is a pole of omega");
    return true;
}

}  // namespace

bool is_locally_factorised(const Scenario& s, const PointRef& z0) {
    if (s.is_rational_like()) return factorised_rational(s, z0);
    if (s.is_elliptic()) return factorised_elliptic(s, z0);
    throw UnsupportedScenarioError("factorisation test: unsupported scenario kind");
}

PplReport principal_polar_locus(const Scenario& s) {
    PplReport rep;
    AberthOptions aopt;
    aopt.precision = s.precision();

    if (s.is_rational_like()) {
        const QRationalMap f0 = s.kind() == ScenarioKind::RationalP1 ? s.rational_data().f0
                                                                     : s.monomial_data().f0;
        for (const auto& t : s.affine_blocks()) {
            long m_omega = s.omega_order_at_block(t);
            if (m_omega < 0) continue;  // poles of omega never enter
            long mf = factor_multiplicity(f0.den(), t.block);
            bool member = false;
            PplPoint::Kind kind = PplPoint::PoleOfF;
            if (mf > 0) {
                member = true;
                kind = PplPoint::PoleOfF;
            } else if (m_omega > 0) {
                if (t.block.degree() == 1) {
                    GaussianRational root = -(t.block.coeff(0) / t.block.coeff(1));
                    member = !is_locally_factorised(s, PointRef::at(root));
                } else {
                    throw UnsupportedScenarioError(
                        "ppl: factorisation test at a non-rational zero of omega");
                }
                kind = PplPoint::UnfactorisedZeroOfOmega;
            }
            if (member) {
                PplPoint p;
                p.kind = kind;
                p.tag = t;
                p.a_z = m_omega;
                p.npoints = t.npoints();
                RootSet rs = poly_roots(t.block, aopt);
                for (const auto& r : rs.roots) p.positions.push_back(r.value);
                rep.points.push_back(std::move(p));
            }
        }
        // infinity
        long m_omega_inf = s.omega_order_at_infinity();
        if (m_omega_inf >= 0) {
            long ord_f_inf = f0.is_zero() ? 0 : f0.order_at_infinity();
            bool member = false;
            PplPoint::Kind kind = PplPoint::PoleOfF;
            if (ord_f_inf < 0) {
                member = true;
            } else if (m_omega_inf > 0) {
                member = !is_locally_factorised(s, PointRef::infinity());
                kind = PplPoint::UnfactorisedZeroOfOmega;
            }
            if (member) {
                PplPoint p;
                p.kind = kind;
                p.tag.kind = PointTag::Infinity;
                p.tag.label = "inf";
                p.at_infinity = true;
                p.a_z = m_omega_inf;
                p.npoints = 1;
                rep.points.push_back(std::move(p));
            }
        }
    } else if (s.is_elliptic()) {
        const Lattice& L = s.lattice();
        auto hps = L.half_periods();
        if (s.kind() == ScenarioKind::EllipticDz) {
            // f = wp has its double pole at the lattice point; omega = dz is
            // regular there
            PplPoint p;
            p.kind = PplPoint::PoleOfF;
            p.tag.kind = PointTag::LatticeOrigin;
            p.tag.label = "0";
            p.positions.push_back(BigComplex(0.0, 0.0, s.precision()));
            p.a_z = 0;
            rep.points.push_back(std::move(p));
        } else {
            // omega = wp' dz: pole of f (= wp') sits at the pole of omega and
            // is excluded; the three half-period zeros of omega carry the
            // factorisation obstruction
            for (int j = 0; j < 3; ++j) {
                if (is_locally_factorised(s, PointRef::half_period(j))) continue;
                PplPoint p;
                p.kind = PplPoint::UnfactorisedZeroOfOmega;
                p.tag.kind = PointTag::HalfPeriodBlock;
                p.tag.label = "hp" + std::to_string(j);
                p.positions.push_back(hps[(size_t)j]);
                p.a_z = 1;
                rep.points.push_back(std::move(p));
            }
        }
    } else {
        // superelliptic: every branch point over a root of P*Q is fully
        // ramified (P*Q squarefree); f = w has poles over roots of Q and
        // fractional-power branches over roots of P
        const auto& d = s.superelliptic_data();
        for (const auto& t : s.affine_blocks()) {
            bool inP = divides(t.block, d.P);
            PplPoint p;
            p.kind = inP ? PplPoint::UnfactorisedZeroOfOmega : PplPoint::PoleOfF;
            p.tag = t;
            p.a_z = d.ell - 1;
            p.npoints = t.npoints();
            RootSet rs = poly_roots(t.block, aopt);
            for (const auto& r : rs.roots) p.positions.push_back(r.value);
            rep.points.push_back(std::move(p));
        }
    }

    rep.A = 0;
    for (const auto& p : rep.points) rep.A += (p.a_z + 1) * p.npoints;
    return rep;
}

GrowthAudit growth_audit(const Scenario& s, long n_min, long n_max) {
    if (n_min < 0 || n_max < n_min) throw InvalidInputError("growth_audit: bad range");
    PplReport rep = principal_polar_locus(s);
    if (rep.empty()) throw InvalidInputError("growth_audit: empty principal polar locus");
    GrowthAudit out;
    out.A = rep.A;
    auto trail = s.iterate_trail(n_max);
    long prevZ = -1;
    for (long n = 0; n <= n_max; ++n) {
        const auto& st = trail[(size_t)n];
        GrowthAuditRow row;
        row.n = n;
        row.Zn = st.zero_function ? 0 : st.divisor.pole_mass();
        for (const auto& e : st.divisor.entries)
            if (e.order < 0) row.pole_orders.emplace_back(e.tag.label, e.order);
        row.dZ = prevZ < 0 ? row.Zn : row.Zn - prevZ;
        prevZ = row.Zn;
        if (n >= n_min) out.rows.push_back(std::move(row));
    }
    // stabilization: smallest M with dZ == A for every following row
    long M = -1;
    for (long i = (long)out.rows.size() - 1; i >= 0; --i) {
        if (i == 0 || out.rows[(size_t)i].dZ != out.A) {
            M = out.rows[(size_t)i].dZ == out.A && i == 0 ? out.rows[0].n - 1
                                                         : out.rows[(size_t)i].n;
            break;
        }
    }
    out.stabilization_index = M;
    out.stabilized = M < (long)out.rows.back().n;
    return out;
}

PoleZeroLawResult pole_zero_law_check(const Scenario& s, long n) {
    if (!s.is_rational_like() && !s.is_elliptic())
        throw UnsupportedScenarioError("pole_zero_law_check: unsupported kind");
    PoleZeroLawResult res;
    auto trail = s.iterate_trail(n);
    const auto& stn = trail[(size_t)n];
    const auto& stm = trail[(size_t)(n - 1)];
    std::ostringstream w;

    auto check_point = [&](const std::string& label, long d_pole, long ord_n, long ord_m,
                           bool f_pole_here) {
        if (d_pole >= 2) {
            long slope = ord_n - ord_m;
            long b = ord_n - (d_pole - 1) * n;
            bool ok = slope == d_pole - 1 && ord_n > 0;
            w << "pole-of-omega " << label << ": d=" << d_pole << " ord(T^" << n
              << " f)=" << ord_n << " slope=" << slope << " b=" << b
              << (ok ? " [ok]" : " [FAIL]") << "\n";
            if (!ok) res.pass = false;
        } else if (d_pole == 1 && f_pole_here) {
            bool ok = ord_n < 0 && ord_n == ord_m;
            w << "simple-pole-of-omega " << label << " with pole of f: ord=" << ord_n
              << (ok ? " stays a pole, no zero accumulation [ok]" : " [FAIL]") << "\n";
            if (!ok) res.pass = false;
        }
    };

    if (s.is_rational_like()) {
        const QRationalMap f0 =
            s.kind() == ScenarioKind::RationalP1 ? s.rational_data().f0 : s.monomial_data().f0;
        for (const auto& t : s.affine_blocks()) {
            long d_pole = -s.omega_order_at_block(t);
            if (d_pole < 1) continue;
            long ord_n = factor_multiplicity(stn.rat.num(), t.block) -
                         factor_multiplicity(stn.rat.den(), t.block);
            long ord_m = factor_multiplicity(stm.rat.num(), t.block) -
                         factor_multiplicity(stm.rat.den(), t.block);
            bool f_pole = divides(t.block, f0.den());
            check_point(t.label, d_pole, ord_n, ord_m, f_pole);
        }
        long d_inf = -s.omega_order_at_infinity();
        if (d_inf >= 1) {
            long ord_n = stn.rat.order_at_infinity();
            long ord_m = stm.rat.order_at_infinity();
            bool f_pole = f0.order_at_infinity() < 0;
            check_point("inf", d_inf, ord_n, ord_m, f_pole);
        }
    } else {
        // elliptic kinds: the only pole of omega is the lattice origin
        long d_pole = s.kind() == ScenarioKind::EllipticWpPrime ? 3 : 0;
        if (d_pole >= 2) {
            long ord_n = stn.ell.order_at_origin();
            long ord_m = stm.ell.order_at_origin();
            check_point("0", d_pole, ord_n, ord_m, true);
        } else {
            w << "omega = dz has no poles on the torus; nothing to check\n";
        }
    }
    res.witnesses.push_back(w.str());
    return res;
}

}  // namespace voronome
