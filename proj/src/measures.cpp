#include "voronome/measures.hpp"

#include <algorithm>
#include <cmath>

namespace voronome::measures {

using C = std::complex<double>;

namespace {

C to_c(const BigComplex& z) {
    auto [a, b] = z.to_doubles();
    return {a, b};
}

void add_tagged_atoms(EmpiricalMeasure& em, const Divisor& divisor, const Scenario* s,
                      mpfr_prec_t prec) {
    for (const auto& e : divisor.entries) {
        if (e.order <= 0) continue;
        switch (e.tag.kind) {
            case PointTag::GenericZeros: break;  // carried by the solved roots
            case PointTag::Infinity:
                em.atoms.push_back({C(0, 0), true, mpq_class(e.order)});
                break;
            case PointTag::AffineBlock: {
                AberthOptions ao;
                ao.precision = prec;
                RootSet rs = poly_roots(e.tag.block, ao);
                for (const auto& r : rs.roots)
                    em.atoms.push_back({to_c(r.value), false, mpq_class(e.order)});
                break;
            }
            case PointTag::LatticeOrigin:
                em.atoms.push_back({C(0, 0), false, mpq_class(e.order)});
                break;
            case PointTag::HalfPeriodBlock: {
                if (!s || !s->is_elliptic())
                    throw UnsupportedScenarioError(
                        "empirical_measure: half-period tag needs the elliptic scenario");
                auto hps = s->lattice().half_periods();
                const auto& hf = s->hat_form();
                auto factors = half_period_factors(hf.curve);
                // match the tag's factor block to half periods by wp value
                const QPoly& q = e.tag.block;
                BigComplex mu2 = hf.mu * hf.mu;
                for (const auto& hp : hps) {
                    BigComplex xh = s->lattice().wp(hp).first / mu2;
                    // block root test at double tolerance
                    CPoly qc = to_cpoly(q, s->precision());
                    if (abs(qc.eval(xh)).to_double() < 1e-10)
                        em.atoms.push_back({to_c(hp), false, mpq_class(e.order)});
                }
                break;
            }
        }
    }
}

}  // namespace

EmpiricalMeasure empirical_measure(const RootSet& rs, const Divisor& divisor, long n,
                                   Normalization norm) {
    EmpiricalMeasure em;
    em.n = n;
    em.degraded = !rs.certified;
    em.Zn = divisor.pole_mass();
    for (const auto& r : rs.roots)
        em.atoms.push_back({to_c(r.value), false, mpq_class(r.multiplicity)});
    add_tagged_atoms(em, divisor, nullptr, 128);
    em.total = 0;
    for (const auto& a : em.atoms) em.total += a.weight;
    if (norm == Normalization::Probability && em.Zn > 0) {
        for (auto& a : em.atoms) a.weight /= em.Zn;
        em.total /= em.Zn;
    }
    return em;
}

EmpiricalMeasure empirical_measure_of(const Scenario& s, const IterateState& st,
                                      Normalization norm) {
    EmpiricalMeasure em;
    em.n = st.n;
    em.Zn = st.divisor.pole_mass();
    AberthOptions ao;
    ao.precision = s.precision();

    if (s.is_rational_like()) {
        // strip the tagged zeros symbolically, then solve the generic part
        QPoly reduced = st.rat.num();
        for (const auto& e : st.divisor.entries) {
            if (e.order <= 0 || e.tag.kind != PointTag::AffineBlock) continue;
            for (long k = 0; k < e.order; ++k) reduced = exact_div(reduced, e.tag.block);
        }
        RootSet rs = poly_roots(reduced, ao);
        em.degraded = !rs.certified;
        for (const auto& r : rs.roots)
            em.atoms.push_back({to_c(r.value), false, mpq_class(r.multiplicity)});
        add_tagged_atoms(em, st.divisor, &s, s.precision());
    } else if (s.is_elliptic()) {
        const auto& E = st.ell;
        const auto& hf = s.hat_form();
        const Lattice& L = s.lattice();
        BigComplex mu2 = hf.mu * hf.mu;
        BigComplex mu3 = mu2 * hf.mu;
        // generic zeros: roots of n0^2 - n1^2 c away from the half periods
        QPoly R = E.n0() * E.n0() - (E.n1() * E.n1()) * E.curve().c();
        for (const auto& q : half_period_factors(E.curve())) {
            long m = factor_multiplicity(R, q);
            for (long k = 0; k < m; ++k) R = exact_div(R, q);
        }
        if (R.degree() >= 1) {
            RootSet rs = poly_roots(R, ao);
            em.degraded = !rs.certified;
            CPoly n0c = to_cpoly(E.n0(), s.precision());
            CPoly n1c = to_cpoly(E.n1(), s.precision());
            CPoly cc = to_cpoly(E.curve().c(), s.precision());
            auto coeff_scale = [](const CPoly& poly, const BigReal& ax) {
                BigReal acc(0l, ax.prec()), power(1l, ax.prec());
                for (const auto& c : poly.coeffs()) {
                    acc += abs(c) * power;
                    power *= ax;
                }
                return acc;
            };
            for (const auto& r : rs.roots) {
                BigComplex xh = r.value;
                BigComplex x_true = mu2 * xh;
                auto zs = L.wp_inverse(x_true);
                BigComplex yh = sqrt(cc.eval(xh));
                BigReal v_plus = abs(n0c.eval(xh) + n1c.eval(xh) * yh);
                BigReal v_minus = abs(n0c.eval(xh) - n1c.eval(xh) * yh);
                // scale against the coefficient mass, which bounds the root
                // residual amplification through either branch value
                BigReal ax = abs(xh);
                BigReal scale = coeff_scale(n0c, ax) + coeff_scale(n1c, ax) * abs(yh) +
                                BigReal(1l, ax.prec());
                bool plus_zero = v_plus < ldexp2(scale, -40);
                bool minus_zero = v_minus < ldexp2(scale, -40);
                // match the sign branch through wp'
                for (const auto& z : zs) {
                    BigComplex yz = L.wp(z).second / mu3;
                    bool same_sign = abs(yz - yh) < abs(yz + yh);
                    bool take = (same_sign && plus_zero) || (!same_sign && minus_zero) ||
                                (plus_zero && minus_zero);
                    if (take) {
                        long w = (plus_zero && minus_zero) ? r.multiplicity / 2 : r.multiplicity;
                        em.atoms.push_back({to_c(z), false, mpq_class(std::max<long>(w, 1))});
                    }
                }
            }
        }
        add_tagged_atoms(em, st.divisor, &s, s.precision());
    } else {
        throw UnsupportedScenarioError("empirical_measure_of: unsupported kind");
    }

    em.total = 0;
    for (const auto& a : em.atoms) em.total += a.weight;
    if (norm == Normalization::Probability && em.Zn > 0) {
        for (auto& a : em.atoms) a.weight /= em.Zn;
        em.total /= em.Zn;
    }
    return em;
}

double AsymptoticMeasure::total_mass() const {
    double t = edge_mass / (double)A;
    for (const auto& a : atoms) t += a.weight.get_d();
    return t;
}

AsymptoticMeasure asymptotic_measure(const Scenario& s, const flatgeo::VoronoiDiagram& diagram) {
    PplReport rep = principal_polar_locus(s);
    if (rep.empty()) throw InvalidInputError("asymptotic_measure: empty principal polar locus");
    AsymptoticMeasure am;
    am.A = rep.A;
    for (const auto& e : diagram.edges) am.edge_parts.push_back(flatgeo::cauchy_edge_measure(e));
    am.edge_mass = flatgeo::diagram_mass(diagram);

    auto add_atom = [&](const std::string& label, C pos, bool inf, long d) {
        if (d >= 1 && d - 1 > 0)
            am.atoms.push_back({label, pos, inf, mpq_class(d - 1) / mpq_class(am.A)});
    };
    if (s.is_rational_like()) {
        AberthOptions ao;
        ao.precision = s.precision();
        for (const auto& t : s.affine_blocks()) {
            long d = -s.omega_order_at_block(t);
            if (d < 1) continue;
            RootSet rs = poly_roots(t.block, ao);
            for (const auto& r : rs.roots) add_atom(t.label, to_c(r.value), false, d);
        }
        long d_inf = -s.omega_order_at_infinity();
        if (d_inf >= 1) add_atom("inf", C(0, 0), true, d_inf);
    } else if (s.kind() == ScenarioKind::EllipticWpPrime) {
        add_atom("0", C(0, 0), false, 3);
    }
    return am;
}

namespace {

double segment_distance(C p, C a, C b) {
    C ab = b - a;
    double len2 = std::norm(ab);
    if (len2 < 1e-300) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double dist_to_edge_cloud(const flatgeo::VoronoiDiagram& d, C p, bool torus, C tau) {
    double best = std::numeric_limits<double>::infinity();
    auto reduce = [&](C z) {
        if (!torus) return z;
        double b = z.imag() / tau.imag();
        double bf = b - std::round(b);
        double a = z.real() - b * tau.real();
        double af = a - std::round(a);
        return C(af, 0) + bf * tau;
    };
    // wp-cover pullbacks are unordered point clouds; the straight-chart
    // pullbacks are polylines and admit exact segment distances
    bool polyline = d.family != flatgeo::ChartFamily::WpCover;
    for (const auto& e : d.edges) {
        if (polyline) {
            for (size_t i = 0; i + 1 < e.pullback.size(); ++i) {
                C q0 = e.pullback[i], q1 = e.pullback[i + 1];
                if (torus) {
                    // compare in a common representative frame
                    C shift = reduce(p - q0) - (p - q0);
                    best = std::min(best, segment_distance(p, q0 + shift, q1 + shift));
                } else {
                    best = std::min(best, segment_distance(p, q0, q1));
                }
            }
            if (e.pullback.size() == 1)
                best = std::min(best, std::abs(reduce(p - e.pullback[0])));
        } else {
            for (const auto& q : e.pullback) best = std::min(best, std::abs(reduce(p - q)));
        }
    }
    return best;
}

}  // namespace

namespace {

// exact edge distance in developed units for the straight chart families,
// covering the unbounded parts the sampled pullback cannot
double straight_edge_distance(const flatgeo::VoronoiDiagram& d, const flatgeo::ChartSpec& chart,
                              C p) {
    double best = std::numeric_limits<double>::infinity();
    double unit = 1.0;
    C w = p;
    if (d.family == flatgeo::ChartFamily::PlaneDz) {
        w = chart.forward(p);
        unit = std::abs(chart.omega_scale);
        if (unit <= 0) unit = 1.0;
    }
    for (const auto& e : d.edges) {
        double t = (w - e.M).real() * e.dir.real() + (w - e.M).imag() * e.dir.imag();
        double lo = e.unbounded0 ? -1e300 : e.t0;
        double hi = e.unbounded1 ? 1e300 : e.t1;
        t = std::clamp(t, lo, hi);
        best = std::min(best, std::abs(w - (e.M + t * e.dir)) / unit);
    }
    return best;
}

}  // namespace

ProjectionReport project_to_diagram(const EmpiricalMeasure& em,
                                    const flatgeo::VoronoiDiagram& diagram,
                                    const flatgeo::ChartSpec& chart, double eps_out) {
    ProjectionReport pr;
    bool torus = diagram.family == flatgeo::ChartFamily::TorusDz ||
                 diagram.family == flatgeo::ChartFamily::WpCover;
    bool straight = diagram.family == flatgeo::ChartFamily::PlaneDz ||
                    diagram.family == flatgeo::ChartFamily::CyclicBranched;
    for (const auto& a : em.atoms) {
        if (a.at_infinity) continue;
        double dist = straight ? straight_edge_distance(diagram, chart, a.point)
                               : dist_to_edge_cloud(diagram, a.point, torus, chart.tau);
        pr.distance_of_atom.push_back(dist);
        int edge = -1;
        if (dist <= eps_out) {
            // find which edge realized the minimum
            double best = std::numeric_limits<double>::infinity();
            for (size_t ei = 0; ei < diagram.edges.size(); ++ei)
                for (const auto& q : diagram.edges[ei].pullback) {
                    C diff = a.point - q;
                    if (torus) {
                        double b = diff.imag() / chart.tau.imag();
                        double bf = b - std::round(b);
                        double ar = diff.real() - b * chart.tau.real();
                        double af = ar - std::round(ar);
                        diff = C(af, 0) + bf * chart.tau;
                    }
                    if (std::abs(diff) < best) {
                        best = std::abs(diff);
                        edge = (int)ei;
                    }
                }
            ++pr.assigned;
        } else {
            ++pr.outliers;
        }
        pr.edge_of_atom.push_back(edge);
        pr.max_distance = std::max(pr.max_distance, dist);
    }
    long finite = pr.assigned + pr.outliers;
    pr.outlier_fraction = finite > 0 ? (double)pr.outliers / (double)finite : 0.0;
    return pr;
}

EdgeComparison compare_on_edge(const EmpiricalMeasure& em, const flatgeo::CauchyEdgeMeasure& cem,
                               const flatgeo::VoronoiEdge& edge, const flatgeo::ChartSpec& chart,
                               double assign_tol) {
    EdgeComparison ec;
    for (const auto& a : em.atoms) {
        if (a.at_infinity) continue;
        // developed position of the atom
        C w = chart.forward(a.point);
        // distance to the edge line
        double t = (w - cem.M).real() * cem.dir.real() + (w - cem.M).imag() * cem.dir.imag();
        C foot = cem.M + t * cem.dir;
        if (std::abs(w - foot) > assign_tol) continue;
        if (t < cem.t0 - assign_tol || t > cem.t1 + assign_tol) continue;
        long w_int = (long)std::llround(a.weight.get_d() * (em.Zn > 0 ? em.Zn : 1));
        (void)w_int;
        ec.thetas.push_back(cem.cdf(t));
        ++ec.atom_count;
    }
    if (ec.atom_count < 2) {
        ec.enough_data = false;
        return ec;
    }
    ec.enough_data = true;
    std::sort(ec.thetas.begin(), ec.thetas.end());
    for (size_t i = 0; i + 1 < ec.thetas.size(); ++i)
        ec.gaps.push_back(ec.thetas[i + 1] - ec.thetas[i]);
    // Kolmogorov distance of the atom set against the Cauchy law restricted to
    // the edge window
    double lo = cem.cdf(cem.t0), hi = cem.cdf(cem.t1);
    double massw = hi - lo;
    double n = (double)ec.thetas.size();
    double D = 0;
    for (size_t i = 0; i < ec.thetas.size(); ++i) {
        double F = (ec.thetas[i] - lo) / massw;
        D = std::max(D, std::abs((double)(i + 1) / n - F));
        D = std::max(D, std::abs((double)i / n - F));
    }
    ec.sup_cdf_distance = D;
    return ec;
}

}  // namespace voronome::measures
