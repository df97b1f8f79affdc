#include "voronome/flatgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voronome::flatgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_pi(double a) {
    while (a > M_PI) a -= 2 * M_PI;
    while (a <= -M_PI) a += 2 * M_PI;
    return a;
}

double wrap_to(double a, double period) {
    while (a > period / 2) a -= period;
    while (a <= -period / 2) a += period;
    return a;
}

}  // namespace

// --- WpDouble ---

WpDouble WpDouble::make(P2 tau) {
    WpDouble w;
    w.tau = tau;
    w.h = std::exp(P2(0, 2 * M_PI) * tau);
    double ha = std::abs(w.h);
    // |h|^n below 1e-19 with the e^{pi n Im tau} evaluation margin
    w.terms = (int)std::ceil(-19 * std::log(10.0) / (std::log(ha) + M_PI * tau.imag())) + 4;
    w.terms = std::max(w.terms, 8);
    return w;
}

P2 WpDouble::reduce(P2 z) const {
    double b = z.imag() / tau.imag();
    double bf = b - std::round(b);
    double a = z.real() - b * tau.real();
    double af = a - std::round(a);
    return P2(af, 0) + bf * tau;
}

std::pair<P2, P2> WpDouble::eval(P2 z) const {
    P2 zr = reduce(z);
    P2 s = std::sin(M_PI * zr), c = std::cos(M_PI * zr);
    double pi2 = M_PI * M_PI, pi3 = pi2 * M_PI;
    P2 p = pi2 / (s * s) - pi2 / 3.0;
    P2 dp = -2.0 * pi3 * c / (s * s * s);
    P2 e = std::exp(P2(0, 2 * M_PI) * zr);
    P2 en(1, 0), einv(1, 0), hn(1, 0);
    for (int n = 1; n <= terms; ++n) {
        hn *= h;
        en *= e;
        einv /= e;
        P2 coef = hn / (1.0 - hn);
        P2 cosn = (en + einv) * 0.5;
        P2 sinn = (en - einv) * P2(0, -0.5);
        p += 8.0 * pi2 * (double)n * coef * (1.0 - cosn);
        dp += 16.0 * pi3 * (double)(n * n) * coef * sinn;
    }
    return {p, dp};
}

// --- ChartSpec ---

P2 ChartSpec::forward(P2 z) const {
    switch (family) {
        case ChartFamily::PlaneDz: return omega_scale * z;
        case ChartFamily::MonomialCone: {
            double k = 1.0 - (double)ell;
            return std::pow(z, k) / k;
        }
        case ChartFamily::TorusDz: return z;
        case ChartFamily::WpCover: return wp.eval(z).first;
        case ChartFamily::CyclicBranched: return z;
    }
    return z;
}

// --- planar construction ---

namespace {

struct EdgeBuild {
    int a, b;
    P2 A, B, M, dir;
    double t0 = -kInf, t1 = kInf;
    bool alive = true;
};

// clip the (a,b)-bisector against "closer to A than to C" for every other site
EdgeBuild build_edge(const std::vector<P2>& sites, int ia, int ib) {
    EdgeBuild e;
    e.a = ia;
    e.b = ib;
    e.A = sites[(size_t)ia];
    e.B = sites[(size_t)ib];
    e.M = (e.A + e.B) / 2.0;
    e.dir = P2(0, 1) * (e.B - e.A) / std::abs(e.B - e.A);
    for (size_t c = 0; c < sites.size(); ++c) {
        if ((int)c == ia || (int)c == ib) continue;
        P2 C = sites[c];
        // |P-A|^2 - |P-C|^2 <= 0 along P(t) = M + t dir
        double q = -2 * ((e.M.real() * (e.A - C).real()) + (e.M.imag() * (e.A - C).imag())) +
                   std::norm(e.A) - std::norm(C);
        double s = -2 * ((e.dir.real() * (e.A - C).real()) + (e.dir.imag() * (e.A - C).imag()));
        if (std::abs(s) < 1e-300) {
            if (q > 0) {
                e.alive = false;
                return e;
            }
            continue;
        }
        double tstar = -q / s;
        if (s > 0) e.t1 = std::min(e.t1, tstar);
        else e.t0 = std::max(e.t0, tstar);
        if (e.t0 >= e.t1 - 1e-14) {
            e.alive = false;
            return e;
        }
    }
    return e;
}

std::vector<P2> merge_close(const std::vector<P2>& sites, double tol, bool* merged) {
    std::vector<P2> out;
    for (const auto& s : sites) {
        bool dup = false;
        for (const auto& o : out)
            if (std::abs(s - o) < tol) dup = true;
        if (dup) *merged = true;
        else out.push_back(s);
    }
    return out;
}

void collect_vertices(VoronoiDiagram& d) {
    std::vector<P2> vs;
    for (const auto& e : d.edges) {
        if (!e.unbounded0) vs.push_back(e.M + e.t0 * e.dir);
        if (!e.unbounded1) vs.push_back(e.M + e.t1 * e.dir);
    }
    for (const auto& v : vs) {
        bool found = false;
        for (auto& have : d.vertices) {
            if (std::abs(have.pos - v) < 1e-9) {
                have.degree++;
                found = true;
                break;
            }
        }
        if (!found) d.vertices.push_back({v, 1});
    }
}

}  // namespace

VoronoiDiagram planar_voronoi(const std::vector<P2>& sites_in) {
    VoronoiDiagram d;
    d.family = ChartFamily::PlaneDz;
    double scale = 1e-12;
    for (const auto& s : sites_in) scale = std::max(scale, std::abs(s));
    bool merged = false;
    std::vector<P2> sites = merge_close(sites_in, 1e-12 * std::max(scale, 1.0), &merged);
    d.merged_duplicate_sites = merged;
    for (const auto& s : sites) d.sites.push_back({s, false, -1, s, ""});
    if (sites.size() < 2) return d;
    for (size_t i = 0; i < sites.size(); ++i)
        for (size_t j = i + 1; j < sites.size(); ++j) {
            EdgeBuild e = build_edge(sites, (int)i, (int)j);
            if (!e.alive) continue;
            VoronoiEdge ve;
            ve.a = e.a;
            ve.b = e.b;
            ve.A = e.A;
            ve.B = e.B;
            ve.M = e.M;
            ve.dir = e.dir;
            ve.unbounded0 = e.t0 == -kInf;
            ve.unbounded1 = e.t1 == kInf;
            ve.t0 = e.t0;
            ve.t1 = e.t1;
            // the developed picture is its own pullback on the plane
            double lim = 4 * std::max(scale, 1.0);
            double a0 = ve.unbounded0 ? -lim : ve.t0;
            double a1 = ve.unbounded1 ? lim : ve.t1;
            for (int k = 0; k <= 32; ++k)
                ve.pullback.push_back(ve.M + (a0 + (a1 - a0) * k / 32.0) * ve.dir);
            d.edges.push_back(std::move(ve));
        }
    collect_vertices(d);
    return d;
}

VoronoiDiagram periodic_voronoi(const std::vector<P2>& sites, P2 tau, int tiling) {
    if (tau.imag() <= 0) throw InvalidLatticeError("periodic_voronoi: Im(tau) must be positive");
    VoronoiDiagram d;
    d.family = ChartFamily::TorusDz;
    d.tau = tau;
    for (const auto& s : sites) d.sites.push_back({s, false, -1, s, ""});

    std::vector<P2> tiled;
    std::vector<int> owner;
    for (int m = -tiling; m <= tiling; ++m)
        for (int n = -tiling; n <= tiling; ++n)
            for (size_t k = 0; k < sites.size(); ++k) {
                tiled.push_back(sites[k] + (double)m + (double)n * tau);
                owner.push_back((int)k);
            }

    // half-plane clip of t-intervals against the fundamental parallelogram
    // {a + b tau : a, b in [0,1]}
    auto clip_domain = [&](const EdgeBuild& e, double& t0, double& t1) -> bool {
        t0 = e.t0;
        t1 = e.t1;
        double big = 64 * (1 + std::abs(tau)) * (tiling + 1);
        t0 = std::max(t0, -big);
        t1 = std::min(t1, big);
        // coordinates: z = a + b tau  ->  b = Im z / Im tau, a = Re z - b Re tau
        auto coords = [&](P2 z) {
            double b = z.imag() / tau.imag();
            double a = z.real() - b * tau.real();
            return P2(a, b);
        };
        P2 c0 = coords(e.M), cd = coords(e.M + e.dir) - c0;
        // 0 <= a + t da <= 1 and 0 <= b + t db <= 1
        auto axis = [&](double base, double slope, double& lo, double& hi) -> bool {
            if (std::abs(slope) < 1e-14) return base >= -1e-12 && base <= 1 + 1e-12;
            double ta = (0 - base) / slope, tb = (1 - base) / slope;
            if (ta > tb) std::swap(ta, tb);
            lo = std::max(lo, ta);
            hi = std::min(hi, tb);
            return lo < hi - 1e-13;
        };
        if (!axis(c0.real(), cd.real(), t0, t1)) return false;
        if (!axis(c0.imag(), cd.imag(), t0, t1)) return false;
        return t0 < t1 - 1e-13;
    };

    std::vector<VoronoiEdge> pieces;
    for (size_t i = 0; i < tiled.size(); ++i)
        for (size_t j = i + 1; j < tiled.size(); ++j) {
            EdgeBuild e = build_edge(tiled, (int)i, (int)j);
            if (!e.alive) continue;
            double t0, t1;
            if (!clip_domain(e, t0, t1)) continue;
            VoronoiEdge ve;
            ve.a = owner[i];
            ve.b = owner[j];
            ve.A = e.A;
            ve.B = e.B;
            ve.M = e.M;
            ve.dir = e.dir;
            ve.t0 = t0;
            ve.t1 = t1;
            for (int k = 0; k <= 24; ++k)
                ve.pullback.push_back(ve.M + (t0 + (t1 - t0) * k / 24.0) * ve.dir);
            pieces.push_back(std::move(ve));
        }
    // dedupe pieces equal modulo the lattice
    auto red = [&](P2 z) {
        double b = z.imag() / tau.imag();
        double bf = b - std::floor(b + 1e-9);
        double a = z.real() - b * tau.real();
        double af = a - std::floor(a + 1e-9);
        return P2(af, 0) + bf * tau;
    };
    for (auto& p : pieces) {
        P2 mid = red(p.M + 0.5 * (p.t0 + p.t1) * p.dir);
        bool dup = false;
        for (const auto& q : d.edges) {
            P2 qmid = red(q.M + 0.5 * (q.t0 + q.t1) * q.dir);
            if (std::abs(mid - qmid) < 1e-9 &&
                std::abs(std::abs(p.t1 - p.t0) - std::abs(q.t1 - q.t0)) < 1e-9)
                dup = true;
        }
        if (!dup) d.edges.push_back(p);
    }
    collect_vertices(d);
    return d;
}

// --- chart construction ---

ChartSpec make_chart(const Scenario& s, const PplReport& ppl) {
    ChartSpec ch;
    switch (s.kind()) {
        case ScenarioKind::RationalP1: {
            const auto& om = s.rational_data().omega;
            if (om.num().degree() == 0 && om.den().degree() == 0) {
                ch.family = ChartFamily::PlaneDz;
                auto [cr, ci] = (om.num().coeff(0) / om.den().coeff(0)).to_doubles();
                ch.omega_scale = P2(cr, ci);
            } else {
                throw UnsupportedChartError(
                    "make_chart: rational omega without a supported developed picture");
            }
            break;
        }
        case ScenarioKind::Monomial: {
            ch.family = ChartFamily::MonomialCone;
            ch.ell = s.monomial_data().ell;
            break;
        }
        case ScenarioKind::Superelliptic: {
            ch.family = ChartFamily::CyclicBranched;
            break;
        }
        case ScenarioKind::EllipticDz: {
            ch.family = ChartFamily::TorusDz;
            auto [tr, ti] = s.lattice().tau().to_doubles();
            ch.tau = P2(tr, ti);
            break;
        }
        case ScenarioKind::EllipticWpPrime: {
            ch.family = ChartFamily::WpCover;
            auto [tr, ti] = s.lattice().tau().to_doubles();
            ch.tau = P2(tr, ti);
            ch.wp = WpDouble::make(ch.tau);
            auto hps = s.lattice().half_periods();
            for (int j = 0; j < 3; ++j) {
                auto [er, ei] = s.lattice().wp(hps[(size_t)j]).first.to_doubles();
                ch.wp_e[(size_t)j] = P2(er, ei);
            }
            break;
        }
    }

    // developed sites from PPL positions
    int pidx = 0;
    for (const auto& p : ppl.points) {
        if (p.at_infinity) {
            if (ch.family == ChartFamily::MonomialCone && ch.ell >= 2) {
                SiteInfo si;
                si.dev = P2(0, 0);
                si.is_apex = true;
                si.ppl_point = pidx;
                si.label = "inf";
                ch.sites.push_back(si);
                ch.apex_in_ppl = true;
            } else {
                throw UnsupportedChartError("make_chart: infinity in the PPL needs a cone chart");
            }
        } else {
            for (const auto& pos : p.positions) {
                auto [zr, zi] = pos.to_doubles();
                P2 z(zr, zi);
                SiteInfo si;
                si.surface = z;
                si.ppl_point = pidx;
                si.label = p.tag.label;
                if (ch.family == ChartFamily::WpCover) {
                    // half-period sites develop to the branch values e_j
                    si.dev = ch.wp.eval(z).first;
                } else if (ch.family == ChartFamily::MonomialCone) {
                    if (std::abs(z) < 1e-15) {
                        if (ch.ell > 1)
                            throw UnsupportedChartError("make_chart: site at the cone puncture");
                        si.is_apex = true;
                        si.dev = P2(0, 0);
                        ch.apex_in_ppl = true;
                    } else {
                        si.dev = ch.forward(z);
                    }
                } else {
                    si.dev = ch.forward(z);
                }
                ch.sites.push_back(si);
            }
        }
        ++pidx;
    }
    ch.scale = 1e-9;
    for (const auto& si : ch.sites) ch.scale = std::max(ch.scale, std::abs(si.dev));
    for (size_t i = 0; i < ch.sites.size(); ++i)
        for (size_t j = i + 1; j < ch.sites.size(); ++j)
            ch.scale = std::max(ch.scale, std::abs(ch.sites[i].dev - ch.sites[j].dev));
    return ch;
}

// --- distances and index ---

namespace {

// on the monomial cone: unrolled angular coordinate (real-valued)
double cone_angle(long ell, P2 z) {
    double k = 1.0 - (double)ell;
    return std::arg(1.0 / k) + k * std::arg(z);
}

}  // namespace

namespace {

struct LiftDistance {
    double dist;
    int site;
    P2 lift;       // developed position of the singular lift
    bool has_lift; // cone chord candidates carry directions, not positions
};

std::vector<LiftDistance> lift_distances(const ChartSpec& chart, P2 z) {
    std::vector<LiftDistance> out;
    switch (chart.family) {
        case ChartFamily::PlaneDz:
        case ChartFamily::CyclicBranched: {
            P2 w = chart.forward(z);
            for (size_t i = 0; i < chart.sites.size(); ++i)
                out.push_back({std::abs(w - chart.sites[i].dev), (int)i, chart.sites[i].dev, true});
            break;
        }
        case ChartFamily::TorusDz: {
            for (size_t i = 0; i < chart.sites.size(); ++i) {
                for (int m = -3; m <= 3; ++m)
                    for (int n = -3; n <= 3; ++n) {
                        P2 lam = (double)m + (double)n * chart.tau;
                        P2 lift = chart.sites[i].dev + lam;
                        out.push_back({std::abs(z - lift), (int)i, lift, true});
                    }
            }
            break;
        }
        case ChartFamily::WpCover: {
            P2 w = chart.wp.eval(z).first;
            for (size_t i = 0; i < chart.sites.size(); ++i)
                out.push_back({std::abs(w - chart.sites[i].dev), (int)i, chart.sites[i].dev, true});
            break;
        }
        case ChartFamily::MonomialCone: {
            P2 w = chart.forward(z);
            double rz = std::abs(w);
            double total = 2 * M_PI * std::abs(1.0 - (double)chart.ell);
            double az = cone_angle(chart.ell, z);
            for (size_t i = 0; i < chart.sites.size(); ++i) {
                const auto& si = chart.sites[i];
                if (si.is_apex) {
                    out.push_back({rz, (int)i, P2(0, 0), false});
                    continue;
                }
                double rc = std::abs(si.dev);
                double ac = cone_angle(chart.ell, si.surface);
                if (chart.apex_in_ppl) {
                    // sight lines stop at the singular apex
                    double da = wrap_to(az - ac, total);
                    double dist = std::abs(da) < M_PI
                                      ? std::sqrt(rz * rz + rc * rc - 2 * rz * rc * std::cos(da))
                                      : rz + rc;
                    out.push_back({dist, (int)i, P2(0, 0), false});
                } else {
                    // a factorised apex is transparent; all sheet copies of the
                    // site share one developed position
                    out.push_back({std::abs(w - si.dev), (int)i, si.dev, true});
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LiftDistance& a, const LiftDistance& b) { return a.dist < b.dist; });
    return out;
}

}  // namespace

std::vector<std::pair<double, int>> developed_distances(const ChartSpec& chart, P2 z) {
    std::vector<std::pair<double, int>> out;
    for (const auto& ld : lift_distances(chart, z)) out.emplace_back(ld.dist, ld.site);
    return out;
}

double critical_radius(const ChartSpec& chart, P2 z) {
    auto d = lift_distances(chart, z);
    if (d.empty()) throw UnsupportedChartError("critical_radius: no developed lifts");
    return d.front().dist;
}

int voronoi_index(const ChartSpec& chart, P2 z, double tie_rel_tol) {
    auto d = lift_distances(chart, z);
    if (d.empty()) throw UnsupportedChartError("voronoi_index: no developed lifts");
    double dmin = d.front().dist;
    // points of the PPL itself carry index 1 by convention
    if (dmin < tie_rel_tol * chart.scale) return 1;
    // coincident developed lifts hold a single singular point and count once
    int count = 0;
    std::vector<P2> seen;
    for (const auto& ld : d) {
        if (ld.dist > dmin * (1 + tie_rel_tol)) break;
        if (ld.has_lift) {
            bool dup = false;
            for (const auto& s : seen)
                if (std::abs(s - ld.lift) < 1e-10 * std::max(1.0, chart.scale)) dup = true;
            if (dup) continue;
            seen.push_back(ld.lift);
        }
        ++count;
    }
    return count;
}

// --- developed voronoi per chart family ---

namespace {

void pullback_wp_edges(const ChartSpec& chart, VoronoiDiagram& d) {
    // trace |wp(z)-A| = |wp(z)-B| on the torus, masked to the nearest pair
    for (auto& e : d.edges) {
        P2 A = e.A, B = e.B;
        auto h = [&](P2 z) {
            P2 w = chart.wp.eval(z).first;
            return std::abs(w - A) - std::abs(w - B);
        };
        auto mask = [&](P2 z) {
            P2 w = chart.wp.eval(z).first;
            double da = std::abs(w - A), db = std::abs(w - B);
            double dm = std::max(da, db);
            for (const auto& s : chart.sites) {
                if (std::abs(s.dev - A) < 1e-12 || std::abs(s.dev - B) < 1e-12) continue;
                if (std::abs(w - s.dev) < dm - 1e-12) return false;
            }
            // avoid the pole of wp
            P2 zr = chart.wp.reduce(z);
            return std::abs(zr) > 0.02;
        };
        // trace in lattice coordinates then map
        auto hc = [&](P2 ab) { return h(ab.real() + ab.imag() * chart.tau); };
        auto mc = [&](P2 ab) { return mask(ab.real() + ab.imag() * chart.tau); };
        auto cloud = trace_zero_set(hc, mc, 0, 1, 0, 1, 192);
        e.pullback.clear();
        for (auto& ab : cloud) e.pullback.push_back(ab.real() + ab.imag() * chart.tau);
    }
}

}  // namespace

VoronoiDiagram developed_voronoi(const ChartSpec& chart, const PplReport& ppl) {
    (void)ppl;
    switch (chart.family) {
        case ChartFamily::PlaneDz:
        case ChartFamily::CyclicBranched: {
            std::vector<P2> sites;
            for (const auto& s : chart.sites) sites.push_back(s.dev);
            VoronoiDiagram d = planar_voronoi(sites);
            for (size_t i = 0; i < d.sites.size() && i < chart.sites.size(); ++i)
                d.sites[i] = chart.sites[i];
            d.family = chart.family;
            if (chart.family == ChartFamily::PlaneDz) {
                // pull the straight edges back through z -> w = c z
                for (auto& e : d.edges)
                    for (auto& p : e.pullback) p /= chart.omega_scale;
            }
            return d;
        }
        case ChartFamily::TorusDz: {
            std::vector<P2> sites;
            for (const auto& s : chart.sites) sites.push_back(s.dev);
            VoronoiDiagram d = periodic_voronoi(sites, chart.tau);
            for (size_t i = 0; i < sites.size() && i < chart.sites.size(); ++i)
                d.sites[i] = chart.sites[i];
            return d;
        }
        case ChartFamily::WpCover: {
            std::vector<P2> sites;
            for (const auto& s : chart.sites) sites.push_back(s.dev);
            VoronoiDiagram d = planar_voronoi(sites);
            for (size_t i = 0; i < d.sites.size() && i < chart.sites.size(); ++i)
                d.sites[i] = chart.sites[i];
            d.family = ChartFamily::WpCover;
            d.tau = chart.tau;
            pullback_wp_edges(chart, d);
            return d;
        }
        case ChartFamily::MonomialCone: {
            // developed positions, with coincidences merged (possibly empty
            // diagram, the non-metric counterexample)
            std::vector<P2> sites;
            for (const auto& s : chart.sites) sites.push_back(s.dev);
            VoronoiDiagram d = planar_voronoi(sites);
            d.family = ChartFamily::MonomialCone;
            for (size_t i = 0; i < d.sites.size() && i < chart.sites.size(); ++i)
                d.sites[i] = chart.sites[i];

            if (chart.apex_in_ppl) {
                // visibility on the cone restricts each apex-site edge to the
                // sheet band |delta| < pi/2; in the supported single-site case
                // that band covers the full bisector line
                int nfinite = 0;
                for (const auto& s : chart.sites)
                    if (!s.is_apex) ++nfinite;
                if (nfinite > 1)
                    throw UnsupportedChartError(
                        "developed_voronoi: cone chart supports one finite site");
            }
            // parametric pullback of each edge through the inverse power map
            double k = 1.0 - (double)chart.ell;
            long nsheets = std::labs(1 - chart.ell);
            for (auto& e : d.edges) {
                e.pullback.clear();
                // choose the branch by matching the cone sector of the finite site
                P2 target = P2(1, 0);
                for (const auto& s : chart.sites)
                    if (!s.is_apex && (std::abs(s.dev - e.A) < 1e-12 * chart.scale ||
                                       std::abs(s.dev - e.B) < 1e-12 * chart.scale))
                        target = s.surface;
                for (int i = -160; i <= 160; ++i) {
                    double t = std::tan((double)i / 161.0 * M_PI / 2) * chart.scale;
                    P2 w = e.M + t * e.dir;
                    // all branch inverses of w = z^k / k
                    P2 base = std::pow(k * w, 1.0 / k);
                    for (long br = 0; br < nsheets; ++br) {
                        P2 zb = base * std::exp(P2(0, 2 * M_PI * (double)br / (double)nsheets));
                        if (std::abs(wrap_pi(std::arg(zb) - std::arg(target))) <=
                            M_PI / (double)nsheets + 1e-9)
                            e.pullback.push_back(zb);
                    }
                }
            }
            return d;
        }
    }
    throw UnsupportedChartError("developed_voronoi: unsupported chart family");
}

// --- Cauchy measure ---

double CauchyEdgeMeasure::density_at(double t) const {
    return h / (M_PI * (t * t + h * h));
}

double CauchyEdgeMeasure::cdf(double t) const {
    if (t == kInf) return 1.0;
    if (t == -kInf) return 0.0;
    return 0.5 + std::atan(t / h) / M_PI;
}

double CauchyEdgeMeasure::t_of(P2 p) const {
    return (p - M).real() * dir.real() + (p - M).imag() * dir.imag();
}

double CauchyEdgeMeasure::theta_of(P2 p) const { return cdf(t_of(p)); }

CauchyEdgeMeasure cauchy_edge_measure(const VoronoiEdge& e) {
    if (std::abs(e.A - e.B) < 1e-300)
        throw InvalidInputError("cauchy_edge_measure: degenerate site pair");
    CauchyEdgeMeasure m;
    m.A = e.A;
    m.B = e.B;
    m.M = (e.A + e.B) / 2.0;
    m.dir = e.dir;
    m.h = std::abs(e.A - e.B) / 2;
    // edges are parameterized from the midpoint of [A, B] already
    m.t0 = e.unbounded0 ? -kInf : e.t0;
    m.t1 = e.unbounded1 ? kInf : e.t1;
    return m;
}

double diagram_mass(const VoronoiDiagram& d) {
    double s = 0;
    for (const auto& e : d.edges) s += cauchy_edge_measure(e).mass();
    return s;
}

// --- marching squares ---

std::vector<P2> trace_zero_set(const std::function<double(P2)>& h,
                               const std::function<bool(P2)>& mask, double x0, double x1,
                               double y0, double y1, int n) {
    std::vector<P2> out;
    double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
    auto emit_cell = [&](double cx, double cy, double ddx, double ddy) {
        P2 c00(cx, cy), c10(cx + ddx, cy), c01(cx, cy + ddy), c11(cx + ddx, cy + ddy);
        if (!mask(c00) || !mask(c10) || !mask(c01) || !mask(c11)) return;
        double v00 = h(c00), v10 = h(c10), v01 = h(c01), v11 = h(c11);
        auto cross = [&](double a, double b, P2 pa, P2 pb) {
            if ((a <= 0 && b > 0) || (a > 0 && b <= 0)) {
                double s = a / (a - b);
                out.push_back(pa + s * (pb - pa));
            }
        };
        cross(v00, v10, c00, c10);
        cross(v10, v11, c10, c11);
        cross(v11, v01, c11, c01);
        cross(v01, v00, c01, c00);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double cx = x0 + i * dx, cy = y0 + j * dy;
            P2 c00(cx, cy), c10(cx + dx, cy), c01(cx, cy + dy), c11(cx + dx, cy + dy);
            if (!mask(c00) || !mask(c10) || !mask(c01) || !mask(c11)) continue;
            double v00 = h(c00), v10 = h(c10), v01 = h(c01), v11 = h(c11);
            bool pos = v00 > 0 || v10 > 0 || v01 > 0 || v11 > 0;
            bool neg = v00 <= 0 || v10 <= 0 || v01 <= 0 || v11 <= 0;
            if (!(pos && neg)) continue;
            // refine sign-change cells once
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    emit_cell(cx + a * dx / 2, cy + b * dy / 2, dx / 2, dy / 2);
        }
    }
    return out;
}

}  // namespace voronome::flatgeo
