#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "voronome/flatgeo.hpp"

using namespace voronome;
using namespace voronome::flatgeo;
using C = std::complex<double>;

namespace {

GaussianRational q(long a, long b = 1) {
    mpq_class v(a, b);
    v.canonicalize();
    return GaussianRational(v);
}

Scenario first_example() {
    QRationalMap f(QPoly({GaussianRational(0, 2)}), QPoly({q(1), q(0), q(1)}));
    QRationalMap om(QPoly({q(1)}), QPoly({q(1)}));
    return Scenario::rational_p1(om, f, 256);
}

Scenario monomial4() {
    QRationalMap f(QPoly({q(-1)}), QPoly({q(1), q(1)}));
    return Scenario::monomial(4, f, 256);
}

// brute-force nearest-site classifier on a torus grid; returns points within
// one cell of a class boundary
std::vector<C> torus_boundary_oracle(const std::vector<C>& sites, C tau, int n) {
    auto nearest = [&](C z) {
        int best = -1;
        double bd = 1e18;
        for (size_t s = 0; s < sites.size(); ++s)
            for (int m = -2; m <= 2; ++m)
                for (int k = -2; k <= 2; ++k) {
                    double d = std::abs(z - sites[s] - (double)m - (double)k * tau);
                    if (d < bd) {
                        bd = d;
                        best = (int)(s * 100) + (m + 2) * 10 + (k + 2);
                    }
                }
        return best;
    };
    std::vector<C> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            C z = (i + 0.5) / n * 1.0 + (j + 0.5) / n * tau;
            int c0 = nearest(z);
            C zx = z + 1.0 / n, zy = z + tau / (double)n;
            if (nearest(zx) != c0 || nearest(zy) != c0) out.push_back(z);
        }
    return out;
}

double dist_to_edges(const VoronoiDiagram& d, C p, C tau, bool torus) {
    double best = 1e18;
    auto red = [&](C z) {
        if (!torus) return z;
        double b = z.imag() / tau.imag();
        double bf = b - std::round(b);
        double a = z.real() - b * tau.real();
        double af = a - std::round(a);
        return C(af, 0) + bf * tau;
    };
    for (const auto& e : d.edges)
        for (const auto& pt : e.pullback) best = std::min(best, std::abs(red(p - pt)));
    return best;
}

}  // namespace

TEST_CASE("planar voronoi of {i, -i} is the real axis") {
    auto d = planar_voronoi({C(0, 1), C(0, -1)});
    REQUIRE(d.edges.size() == 1);
    const auto& e = d.edges[0];
    CHECK(e.unbounded0);
    CHECK(e.unbounded1);
    CHECK(std::abs(e.M) < 1e-15);
    CHECK(std::abs(e.dir.imag()) < 1e-15);  // horizontal line
    CHECK(d.vertices.empty());
}

TEST_CASE("planar voronoi of one site has no edges") {
    auto d = planar_voronoi({C(0.3, 0.7)});
    CHECK(d.edges.empty());
}

TEST_CASE("planar voronoi of the equilateral triple: three rays from 0") {
    C w = std::polar(1.0, 2 * M_PI / 3);
    auto d = planar_voronoi({C(1, 0), w, std::conj(w)});
    REQUIRE(d.edges.size() == 3);
    REQUIRE(d.vertices.size() == 1);
    CHECK(std::abs(d.vertices[0].pos) < 1e-12);
    for (const auto& e : d.edges) {
        bool b0 = e.unbounded0, b1 = e.unbounded1;
        CHECK(b0 != b1);  // a ray
        double t = b0 ? e.t1 : e.t0;
        CHECK(std::abs(e.M + t * e.dir) < 1e-12);  // endpoint at the origin
    }
}

TEST_CASE("periodic voronoi: hex lattice single site gives the hexagonal diagram") {
    C tau = std::polar(1.0, M_PI / 3);
    auto d = periodic_voronoi({C(0, 0)}, tau);
    CHECK(d.edges.size() >= 3);
    for (const auto& e : d.edges) {
        CHECK(std::abs(std::abs(e.B - e.A) - 1.0) < 1e-9);  // nearest-vector pairs
        for (const auto& p : e.pullback) {
            double da = std::abs(p - e.A), db = std::abs(p - e.B);
            CHECK(std::abs(da - db) < 1e-9);
        }
    }
    // doubling check: a larger tiling produces the same total mass
    auto d2 = periodic_voronoi({C(0, 0)}, tau, 4);
    CHECK(std::abs(diagram_mass(d) - diagram_mass(d2)) < 1e-9);
    CHECK_THROWS_AS(periodic_voronoi({C(0, 0)}, C(1.0, -2.0)), InvalidLatticeError);
}

TEST_CASE("periodic voronoi: square lattice gives the square grid diagram") {
    auto d = periodic_voronoi({C(0, 0)}, C(0, 1));
    double mass = diagram_mass(d);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& e : d.edges) {
        C mid = e.M + 0.5 * (e.t0 + e.t1) * e.dir;
        double fx = std::abs(std::abs(mid.real() - std::round(mid.real())) - 0.5);
        double fy = std::abs(std::abs(mid.imag() - std::round(mid.imag())) - 0.5);
        CHECK(std::min(fx, fy) < 1e-9);
    }
}

TEST_CASE("periodic voronoi: two-site checkerboard against the grid oracle") {
    C tau(0, 1);
    std::vector<C> sites{C(0, 0), C(0.5, 0.5)};
    auto d = periodic_voronoi(sites, tau);
    auto oracle_pts = torus_boundary_oracle(sites, tau, 48);
    REQUIRE(!oracle_pts.empty());
    for (const auto& p : oracle_pts) CHECK(dist_to_edges(d, p, tau, true) < 2.0 / 48 * 1.5);
}

TEST_CASE("developed voronoi on PlaneDz is bitwise planar_voronoi") {
    Scenario s = first_example();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    std::vector<C> sites;
    for (const auto& si : chart.sites) sites.push_back(si.dev);
    auto plain = planar_voronoi(sites);
    REQUIRE(dev.edges.size() == plain.edges.size());
    for (size_t i = 0; i < dev.edges.size(); ++i) {
        CHECK(dev.edges[i].M == plain.edges[i].M);
        CHECK(dev.edges[i].dir == plain.edges[i].dir);
        CHECK(dev.edges[i].t0 == plain.edges[i].t0);
        CHECK(dev.edges[i].t1 == plain.edges[i].t1);
    }
}

TEST_CASE("monomial pullback satisfies the bisector equation in the cone") {
    // the developed bisector of {0, phi(-1)} pulls back to the curve
    // Re((z/a)^(1-ell)) = (-1)^(ell-1)/2 inside the cone containing -a (the
    // exponent verified against the parametrized midline and the empirical
    // critical radius; the displayed ell-1 variant fails both)
    Scenario s = monomial4();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    REQUIRE(dev.edges.size() == 1);
    const auto& e = dev.edges[0];
    REQUIRE(!e.pullback.empty());
    for (const auto& z : e.pullback) {
        C val = std::pow(z, 1.0 - 4.0);  // (z/a)^(1-ell) with a = 1
        CHECK(std::abs(val.real() - (-0.5)) < 1e-9);
        CHECK(std::abs(std::arg(z)) > 2 * M_PI / 3 - 1e-9);  // cone containing -1
    }
}

TEST_CASE("wp-cover diagram has three edges meeting at the branch vertex") {
    Scenario s = Scenario::elliptic_wp_prime("hex", 192);
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    CHECK(dev.edges.size() == 3);
    REQUIRE(dev.vertices.size() == 1);
    CHECK(std::abs(dev.vertices[0].pos) < 1e-9);  // g2 = 0 puts the vertex at 0
    for (const auto& e : dev.edges) CHECK(!e.pullback.empty());
    for (const auto& e : dev.edges)
        for (size_t k = 0; k < e.pullback.size(); k += 7) {
            C w = chart.wp.eval(e.pullback[k]).first;
            CHECK(std::abs(std::abs(w - e.A) - std::abs(w - e.B)) < 1e-6);
        }
}

TEST_CASE("voronoi_index: first example values") {
    Scenario s = first_example();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    CHECK(voronoi_index(chart, C(2.0, 0.1)) == 1);
    CHECK(voronoi_index(chart, C(0.3, 0.0)) == 2);
    CHECK(voronoi_index(chart, C(0.0, 1.0)) == 1);  // PPL point convention
}

TEST_CASE("voronoi_index: equilateral triple center has index 3") {
    C w = std::polar(1.0, 2 * M_PI / 3);
    ChartSpec chart;
    chart.family = ChartFamily::PlaneDz;
    chart.omega_scale = C(1, 0);
    chart.sites = {{C(1, 0), false, 0, C(1, 0), "a"},
                   {w, false, 1, w, "b"},
                   {std::conj(w), false, 2, std::conj(w), "c"}};
    chart.scale = 1.0;
    CHECK(voronoi_index(chart, C(0.0, 0.0)) == 3);
    CHECK(voronoi_index(chart, C(0.2, 0.0)) == 1);
}

TEST_CASE("critical_radius: geometric values for the first example") {
    Scenario s = first_example();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    CHECK(critical_radius(chart, C(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(critical_radius(chart, C(2, 0)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("critical_radius on the torus equals the brute-force lattice minimum") {
    Scenario s = Scenario::elliptic_dz("hex", 192);
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    C tau = chart.tau;
    C z = (1.0 + tau) / 2.0;
    double expect = 1e18;
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
            expect = std::min(expect, std::abs(z - (double)m - (double)n * tau));
    CHECK(critical_radius(chart, z) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("critical_radius is 1-Lipschitz along developed segments (sampled)") {
    Scenario s = first_example();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    oracles::Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        C a((double)rng.small(-20, 20) / 10.0, (double)rng.small(-20, 20) / 10.0);
        C b = a + C((double)rng.small(-5, 5) / 10.0, (double)rng.small(-5, 5) / 10.0);
        double lhs = std::abs(critical_radius(chart, a) - critical_radius(chart, b));
        CHECK(lhs <= std::abs(a - b) + 1e-12);
    }
}

TEST_CASE("edge equidistance property on sampled edge points") {
    Scenario s = Scenario::elliptic_dz("hex", 192);
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    int checked = 0;
    for (const auto& e : dev.edges) {
        auto cem = cauchy_edge_measure(e);
        for (int k = 0; k < 400 && checked < 1000; ++k) {
            double t = cem.t0 + (cem.t1 - cem.t0) * (k + 0.5) / 400.0;
            C p = cem.M + t * cem.dir;
            double da = std::abs(p - e.A), db = std::abs(p - e.B);
            CHECK(std::abs(da - db) < 1e-9);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("cauchy measure: full real axis mass is 1 for the first example") {
    Scenario s = first_example();
    auto rep = principal_polar_locus(s);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    REQUIRE(dev.edges.size() == 1);
    auto cem = cauchy_edge_measure(dev.edges[0]);
    CHECK(cem.mass() == doctest::Approx(1.0).epsilon(1e-12));
    // segment [0,1]: integral dx/(pi (x^2+1)) = 1/4
    CHECK(cem.cdf(1.0) - cem.cdf(0.0) == doctest::Approx(0.25).epsilon(1e-12));
    // symmetric segments double the half mass
    CHECK(cem.cdf(0.7) - cem.cdf(-0.7) ==
          doctest::Approx(2 * (cem.cdf(0.7) - cem.cdf(0.0))).epsilon(1e-12));
}

TEST_CASE("cauchy mass is invariant under omega -> lambda omega") {
    GaussianRational lam(mpq_class(7, 3), mpq_class(1, 2));
    QRationalMap f(QPoly({GaussianRational(0, 2)}), QPoly({q(1), q(0), q(1)}));
    QRationalMap om1(QPoly({q(1)}), QPoly({q(1)}));
    QRationalMap om2(QPoly({lam}), QPoly({q(1)}));
    Scenario s1 = Scenario::rational_p1(om1, f, 192);
    Scenario s2 = Scenario::rational_p1(om2, f, 192);
    auto rep1 = principal_polar_locus(s1);
    auto rep2 = principal_polar_locus(s2);
    auto d1 = developed_voronoi(make_chart(s1, rep1), rep1);
    auto d2 = developed_voronoi(make_chart(s2, rep2), rep2);
    CHECK(std::abs(diagram_mass(d1) - diagram_mass(d2)) < 1e-9);
}

TEST_CASE("the non-metric counterexample produces an empty diagram") {
    QRationalMap f(QPoly({q(1)}), QPoly({q(-1), q(0), q(1)}));
    Scenario s = Scenario::monomial(-1, f, 192);  // omega = z dz
    auto rep = principal_polar_locus(s);
    CHECK(rep.point_count() == 2);
    auto chart = make_chart(s, rep);
    auto dev = developed_voronoi(chart, rep);
    CHECK(dev.empty());
    CHECK(dev.merged_duplicate_sites);
    CHECK(voronoi_index(chart, C(0.4, 0.9)) == 1);
    CHECK(voronoi_index(chart, C(-1.2, 0.5)) == 1);
}

TEST_CASE("cauchy_edge_measure rejects a degenerate pair") {
    VoronoiEdge e;
    e.A = e.B = C(1, 1);
    e.dir = C(1, 0);
    CHECK_THROWS_AS(cauchy_edge_measure(e), InvalidInputError);
}
