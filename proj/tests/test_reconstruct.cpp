#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "voronome/reconstruct.hpp"

using namespace voronome;
using C = std::complex<double>;

namespace {

GaussianRational q(long a, long b = 1) {
    mpq_class v(a, b);
    v.canonicalize();
    return GaussianRational(v);
}

struct WpSetup {
    Scenario s;
    PplReport rep;
    flatgeo::ChartSpec chart;
    flatgeo::VoronoiDiagram diagram;
};

WpSetup wp_setup() {
    Scenario s = Scenario::elliptic_wp_prime("hex", 192);
    auto rep = principal_polar_locus(s);
    auto chart = flatgeo::make_chart(s, rep);
    auto diagram = flatgeo::developed_voronoi(chart, rep);
    return {std::move(s), std::move(rep), std::move(chart), std::move(diagram)};
}

}  // namespace

TEST_CASE("wp' scenario dual graph: faces A, B triangles, C hexagon") {
    auto w = wp_setup();
    auto glue = reconstruct::gluing_report(w.s, w.diagram, w.chart);
    REQUIRE(glue.faces.size() == 3);
    long tri = 0, hex = 0;
    for (const auto& f : glue.faces) {
        if (f.connection_ids.size() == 3) ++tri;
        if (f.connection_ids.size() == 6) ++hex;
    }
    CHECK(tri == 2);
    CHECK(hex == 1);
    CHECK(glue.connections.size() == 6);  // three planar edges, two sheets each
}

TEST_CASE("planar two-site diagram yields a single crossing connection") {
    auto d = flatgeo::planar_voronoi({C(0, 1), C(0, -1)});
    flatgeo::ChartSpec chart;
    chart.family = flatgeo::ChartFamily::PlaneDz;
    auto conns = reconstruct::delaunay_dual(d, chart);
    REQUIRE(conns.size() == 1);
    CHECK(std::abs(conns[0].period - C(0, -2)) < 1e-12);  // B - A up to orientation
}

TEST_CASE("torus dual: three shortest-vector classes for the hex lattice") {
    Scenario t = Scenario::elliptic_dz("hex", 192);
    auto rep = principal_polar_locus(t);
    auto chart = flatgeo::make_chart(t, rep);
    auto d = flatgeo::developed_voronoi(chart, rep);
    auto conns = reconstruct::delaunay_dual(d, chart);
    REQUIRE(conns.size() == 3);
    // brute-force shortest lattice vectors: norm 1, classes {1, tau, tau-1}
    C tau = chart.tau;
    std::vector<C> expect{C(1, 0), tau, tau - 1.0};
    for (const auto& c : conns) {
        CHECK(std::abs(c.period) == doctest::Approx(1.0).epsilon(1e-9));
        bool matched = false;
        for (const auto& v : expect)
            if (std::abs(c.period - v) < 1e-9 || std::abs(c.period + v) < 1e-9) matched = true;
        CHECK(matched);
    }
}

TEST_CASE("wp' periods: equal moduli at mutual angle 2pi/3") {
    auto w = wp_setup();
    auto conns = reconstruct::delaunay_dual(w.diagram, w.chart);
    auto pers = reconstruct::periods(w.s, conns);
    REQUIRE(pers.size() == 6);
    double len = std::abs(pers[0]);
    for (const auto& p : pers) CHECK(std::abs(p) == doctest::Approx(len).epsilon(1e-9));
    // directions pairwise 0 or 2pi/3 apart (mod pi)
    for (size_t i = 0; i < pers.size(); ++i)
        for (size_t j = i + 1; j < pers.size(); ++j) {
            double ang = std::arg(pers[i] / pers[j]);
            double folded = std::fmod(std::abs(ang), M_PI / 3);
            double off = std::min(folded, M_PI / 3 - folded);
            CHECK(off < 1e-9);
        }
}

TEST_CASE("degenerate zero-length connection has period 0 (and is rejected)") {
    flatgeo::VoronoiEdge e;
    e.a = 0;
    e.b = 0;
    e.A = e.B = C(0.5, 0.5);
    flatgeo::VoronoiDiagram d;
    d.family = flatgeo::ChartFamily::PlaneDz;
    d.sites.push_back({C(0.5, 0.5), false, 0, C(0.5, 0.5), "s"});
    d.edges.push_back(e);
    flatgeo::ChartSpec chart;
    chart.family = flatgeo::ChartFamily::PlaneDz;
    CHECK_THROWS_AS(reconstruct::delaunay_dual(d, chart), InvalidInputError);
}

TEST_CASE("wp' gluing: cone angles 4pi, hexagon interior angles 5pi/3") {
    auto w = wp_setup();
    auto glue = reconstruct::gluing_report(w.s, w.diagram, w.chart);
    REQUIRE(glue.cones.size() == 3);
    for (const auto& c : glue.cones)
        CHECK(std::abs(c.angle - 4 * M_PI) < 1e-6);
    for (const auto& f : glue.faces) {
        if (f.connection_ids.size() == 6) {
            for (double a : f.interior_angles) CHECK(std::abs(a - 5 * M_PI / 3) < 1e-6);
        } else {
            for (double a : f.interior_angles) CHECK(std::abs(a - M_PI / 3) < 1e-6);
        }
    }
}

TEST_CASE("wp' gluing: triangles are equilateral and faces close") {
    auto w = wp_setup();
    auto glue = reconstruct::gluing_report(w.s, w.diagram, w.chart);
    for (const auto& f : glue.faces) {
        double perimeter = 0;
        for (size_t i = 0; i < f.developed_vertices.size(); ++i) {
            C a = f.developed_vertices[i];
            C b = f.developed_vertices[(i + 1) % f.developed_vertices.size()];
            perimeter += std::abs(b - a);
        }
        CHECK(std::abs(f.closure_residual) < 1e-6 * perimeter);
        if (f.connection_ids.size() == 3) {
            double s0 = std::abs(f.developed_vertices[1] - f.developed_vertices[0]);
            double s1 = std::abs(f.developed_vertices[2] - f.developed_vertices[1]);
            double s2 = std::abs(f.developed_vertices[0] - f.developed_vertices[2]);
            CHECK(std::abs(s1 / s0 - 1.0) < 1e-9);
            CHECK(std::abs(s2 / s0 - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("square torus: one square face, opposite edge pairing, no cone points") {
    Scenario t = Scenario::elliptic_dz("square", 192);
    auto rep = principal_polar_locus(t);
    auto chart = flatgeo::make_chart(t, rep);
    auto d = flatgeo::developed_voronoi(chart, rep);
    auto glue = reconstruct::gluing_report(t, d, chart);
    REQUIRE(glue.faces.size() == 1);
    CHECK(glue.faces[0].connection_ids.size() == 4);
    REQUIRE(glue.cones.size() == 1);
    CHECK(std::abs(glue.cones[0].angle - 2 * M_PI) < 1e-9);
    REQUIRE(glue.pairings.size() == 2);
    // opposite sides of the square carry the same connection
    const auto& ids = glue.faces[0].connection_ids;
    CHECK(ids[0] == ids[2]);
    CHECK(ids[1] == ids[3]);
    CHECK(glue.gauss_bonnet_defect < 1e-9);
}

TEST_CASE("gauss-bonnet: wp' cone excess matches the omega divisor") {
    auto w = wp_setup();
    auto glue = reconstruct::gluing_report(w.s, w.diagram, w.chart);
    // sum (angle/2pi - 1) = 3 simple zeros; with the order-3 pole this gives
    // deg div(omega) = 3 - 3 = 0 = 2g - 2 on genus one
    double s = 0;
    for (const auto& c : glue.cones) s += c.angle / (2 * M_PI) - 1.0;
    CHECK(std::abs(s - 3.0) < 1e-6);
    CHECK(glue.gauss_bonnet_defect < 1e-6);
}

TEST_CASE("paired sides carry equal periods") {
    auto w = wp_setup();
    auto glue = reconstruct::gluing_report(w.s, w.diagram, w.chart);
    for (const auto& p : glue.pairings) {
        const auto& f1 = glue.faces[(size_t)p[0]];
        const auto& f2 = glue.faces[(size_t)p[2]];
        int c1 = f1.connection_ids[(size_t)p[1]];
        int c2 = f2.connection_ids[(size_t)p[3]];
        CHECK(c1 == c2);  // glued sides realize the same saddle connection
        CHECK(std::abs(std::abs(glue.connections[(size_t)c1].period) -
                       std::abs(glue.connections[(size_t)c2].period)) < 1e-12);
    }
    // every connection is glued exactly once
    CHECK(glue.pairings.size() == glue.connections.size());
}
