#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "voronome/roots.hpp"
#include "voronome/scenario.hpp"
#include "voronome/wp.hpp"

using namespace voronome;

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

// expected real zeros of the n-th derivative: tan(theta) on the admissible grid
std::vector<double> expected_tangents(long n) {
    std::vector<double> out;
    double step = M_PI / (double)(n + 1);
    double offset = (n % 2 == 0) ? M_PI / (double)(2 * n + 2) : 0.0;
    for (long k = -n; k <= n; ++k) {
        double theta = offset + (double)k * step;
        if (theta > -M_PI / 2 + 1e-12 && theta < M_PI / 2 - 1e-12) out.push_back(std::tan(theta));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("poly_roots: z^2+1") {
    QPoly p({q(1), q(0), q(1)});
    AberthOptions opt;
    auto rs = poly_roots(p, opt);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.certified);
    for (const auto& r : rs.roots) {
        CHECK(std::abs(std::abs(r.value.im.to_double()) - 1.0) < 1e-30);
        CHECK(std::abs(r.value.re.to_double()) < 1e-30);
        CHECK(r.residual < 1e-30);
    }
}

TEST_CASE("poly_roots: ten simple real roots of f^(10) on the tangent grid") {
    Scenario s = first_example();
    auto st = s.iterate(10);
    AberthOptions opt;
    opt.precision = 256;
    auto rs = poly_roots(st.rat.num(), opt);
    REQUIRE(rs.total_multiplicity() == 10);
    CHECK(rs.certified);
    std::vector<double> got;
    for (const auto& r : rs.roots) {
        CHECK(std::abs(r.value.im.to_double()) < 1e-40);
        CHECK(r.multiplicity == 1);
        got.push_back(r.value.re.to_double());
    }
    std::sort(got.begin(), got.end());
    auto expect = expected_tangents(10);
    REQUIRE(expect.size() == 10);
    for (size_t i = 0; i < 10; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-12);
}

TEST_CASE("poly_roots: f^(11) has eleven roots including 0") {
    Scenario s = first_example();
    auto st = s.iterate(11);
    AberthOptions opt;
    opt.precision = 256;
    auto rs = poly_roots(st.rat.num(), opt);
    REQUIRE(rs.total_multiplicity() == 11);
    bool has_zero = false;
    for (const auto& r : rs.roots)
        if (abs(r.value).to_double() < 1e-50) has_zero = true;
    CHECK(has_zero);
    std::vector<double> got;
    for (const auto& r : rs.roots) got.push_back(r.value.re.to_double());
    std::sort(got.begin(), got.end());
    auto expect = expected_tangents(11);
    REQUIRE(expect.size() == 11);
    for (size_t i = 0; i < 11; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-12);
}

TEST_CASE("poly_roots: exact multiplicities via squarefree splitting") {
    // (z-1)^3 (z+2)^2 (z - i)
    QPoly p = QPoly({q(-1), q(1)}).pow(3) * QPoly({q(2), q(1)}).pow(2) *
              QPoly({GaussianRational(0, -1), q(1)});
    auto rs = poly_roots(p, AberthOptions{});
    CHECK(rs.certified);
    CHECK(rs.total_multiplicity() == 6);
    long m3 = 0, m2 = 0, m1 = 0;
    for (const auto& r : rs.roots) {
        if (r.multiplicity == 3) ++m3;
        if (r.multiplicity == 2) ++m2;
        if (r.multiplicity == 1) ++m1;
    }
    CHECK(m3 == 1);
    CHECK(m2 == 1);
    CHECK(m1 == 1);
}

TEST_CASE("property: real-coefficient roots close under conjugation") {
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<GaussianRational> c;
        long deg = 5 + rng.small(0, 4);
        for (long i = 0; i <= deg; ++i) c.push_back(q(rng.small(-9, 9)));
        QPoly p(c);
        if (p.degree() < 2) continue;
        auto rs = poly_roots(p, AberthOptions{});
        if (!rs.certified) continue;
        for (const auto& r : rs.roots) {
            bool found = false;
            for (const auto& r2 : rs.roots)
                if (abs(conj(r.value) - r2.value).to_double() < 1e-18) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("property: residuals do not grow under precision doubling") {
    Scenario s = first_example();
    auto st = s.iterate(14);
    AberthOptions lo;
    lo.precision = 128;
    lo.ladder_steps = 0;
    AberthOptions hi;
    hi.precision = 256;
    hi.ladder_steps = 0;
    auto r1 = poly_roots(st.rat.num(), lo);
    auto r2 = poly_roots(st.rat.num(), hi);
    double worst1 = 0, worst2 = 0;
    for (const auto& r : r1.roots) worst1 = std::max(worst1, r.residual);
    for (const auto& r : r2.roots) worst2 = std::max(worst2, r.residual);
    CHECK(worst2 <= worst1 * 1.000001);
}

TEST_CASE("region_roots: z^2 + 1 on [-2,2]^2") {
    RegionEvaluator ev;
    ev.f = [](std::complex<double> z) { return z * z + 1.0; };
    ev.df = [](std::complex<double> z) { return 2.0 * z; };
    auto rs = region_roots(ev, Rect{-2, -2, 2, 2});
    CHECK(rs.expected == 2);
    CHECK(rs.certified);
    REQUIRE(rs.roots.size() == 2);
    for (const auto& r : rs.roots)
        CHECK(std::abs(std::abs(r.value.im.to_double()) - 1.0) < 1e-9);
}

TEST_CASE("region_roots: no zeros gives winding 0 and an empty set") {
    RegionEvaluator ev;
    ev.f = [](std::complex<double> z) { return z * z + 1.0; };
    auto rs = region_roots(ev, Rect{3, 3, 4, 4});
    CHECK(rs.expected == 0);
    CHECK(rs.certified);
    CHECK(rs.roots.empty());
}

TEST_CASE("region_roots: the three zeros of wp' on the fundamental domain") {
    Scenario s = Scenario::elliptic_dz("hex", 192);
    const Lattice& L = s.lattice();
    auto wpd = [&L](std::complex<double> z) {
        auto [p, dp] = L.wp(BigComplex(z.real(), z.imag(), 96));
        auto [a, b] = dp.to_doubles();
        return std::complex<double>(a, b);
    };
    auto wpdd = [&L](std::complex<double> z) {
        // wp'' = 6 wp^2 - g2/2
        auto [p, dp] = L.wp(BigComplex(z.real(), z.imag(), 96));
        auto [a, b] = (BigReal(6l, 96) * (p * p) - L.g2() / BigReal(2l, 96)).to_doubles();
        return std::complex<double>(a, b);
    };
    RegionEvaluator ev{wpd, wpdd};
    // a rectangle holding the three half periods but no lattice point (the
    // evaluator must stay analytic inside)
    Rect rect{0.07, -0.08, 0.98, 0.80};
    auto rs = region_roots(ev, rect, RegionOptions{96, 1e-9, 5, 1e-4});
    CHECK(rs.certified);
    CHECK(rs.expected == 3);
    auto hps = L.half_periods();
    for (const auto& hp : hps) {
        auto [hx, hy] = hp.to_doubles();
        bool found = false;
        for (const auto& r : rs.roots)
            if (std::abs(r.value.re.to_double() - hx) + std::abs(r.value.im.to_double() - hy) <
                1e-6)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("U_n roots are purely imaginary (small-n sample)") {
    for (long n : {10l, 20l, 40l}) {
        QPoly un = circle_un(n);
        AberthOptions opt;
        opt.precision = 256;
        auto rs = poly_roots(un, opt);
        CHECK(rs.certified);
        for (const auto& r : rs.roots)
            CHECK(std::abs(r.value.re.to_double()) <
                  1e-25 * std::max(1.0, std::abs(r.value.im.to_double())));
    }
}
