#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "voronome/ratmap.hpp"

using namespace voronome;

namespace {

GaussianRational q(long a, long b = 1) {
    mpq_class v(a, b);
    v.canonicalize();
    return GaussianRational(v);
}
GaussianRational qi(long a, long b = 1) {
    mpq_class v(a, b);
    v.canonicalize();
    return GaussianRational(mpq_class(0), v);
}

}  // namespace

TEST_CASE("gaussian rational arithmetic stays in lowest terms") {
    GaussianRational a = GaussianRational::parse("2/4+6/9 i");
    CHECK(a.re == mpq_class(1, 2));
    CHECK(a.im == mpq_class(2, 3));
    GaussianRational b = a / a;
    CHECK(b == GaussianRational(1));
    CHECK((a * a.inv()) == GaussianRational(1));
    CHECK(GaussianRational::parse("-3").re == mpq_class(-3));
    CHECK(GaussianRational::parse("i").im == mpq_class(1));
    CHECK(GaussianRational::parse("2i").im == mpq_class(2));
    CHECK(GaussianRational::parse(a.str()) == a);
    CHECK_THROWS_AS(a / GaussianRational(0), std::domain_error);
}

TEST_CASE("reduce: common factor") {
    // (z^2-1)/(z-1) -> z+1
    QRationalMap r(QPoly({q(-1), q(0), q(1)}), QPoly({q(-1), q(1)}));
    CHECK(r.num() == QPoly({q(1), q(1)}));
    CHECK(r.den() == QPoly({q(1)}));
}

TEST_CASE("reduce: constant normalization") {
    // (2z)/4 -> (z/2)/1
    QRationalMap r(QPoly({q(0), q(2)}), QPoly({q(4)}));
    CHECK(r.den() == QPoly({q(1)}));
    CHECK(r.num() == QPoly({q(0), q(1, 2)}));
}

TEST_CASE("reduce: repeated factor, verified by exact multiplication back") {
    // ((z^2+1)^2 z)/((z^2+1)^3) -> z/(z^2+1)
    QPoly z2p1({q(1), q(0), q(1)});
    QPoly num = z2p1 * z2p1 * QPoly({q(0), q(1)});
    QPoly den = z2p1 * z2p1 * z2p1;
    QRationalMap r(num, den);
    CHECK(r.num() == QPoly({q(0), q(1)}));
    CHECK(r.den() == z2p1);
    // multiply back: r * den == num as maps
    QRationalMap back = r * QRationalMap(den, QPoly({q(1)}));
    CHECK(back == QRationalMap(num, QPoly({q(1)})));
}

TEST_CASE("series_expand: geometric series") {
    QRationalMap r(QPoly({q(1)}), QPoly({q(1), q(-1)}));  // 1/(1-z)
    auto s = r.series_expand(q(0), 3);
    for (size_t k = 0; k <= 3; ++k) CHECK(s.coeff(k) == q(1));
}

TEST_CASE("series_expand matches the long-division oracle") {
    // 2i/(z^2+1) at 0, N=2 -> [2i, 0, -2i]
    QPoly num({qi(2)});
    QPoly den({q(1), q(0), q(1)});
    QRationalMap r(num, den);
    auto s = r.series_expand(q(0), 2);
    auto ref = oracles::series_oracle(num, den, 2);
    CHECK(s.coeff(0) == ref[0]);
    CHECK(s.coeff(1) == ref[1]);
    CHECK(s.coeff(2) == ref[2]);
    CHECK(s.coeff(0) == qi(2));
    CHECK(s.coeff(1) == q(0));
    CHECK(s.coeff(2) == qi(-2));

    // 1/(z^2-1) at 0, N=4 -> [-1,0,-1,0,-1]
    QRationalMap r2(QPoly({q(1)}), QPoly({q(-1), q(0), q(1)}));
    auto s2 = r2.series_expand(q(0), 4);
    auto ref2 = oracles::series_oracle(QPoly({q(1)}), QPoly({q(-1), q(0), q(1)}), 4);
    for (size_t k = 0; k <= 4; ++k) {
        CHECK(s2.coeff(k) == ref2[k]);
        CHECK(s2.coeff(k) == (k % 2 == 0 ? q(-1) : q(0)));
    }
}

TEST_CASE("series_expand at a pole reports the pole order") {
    QRationalMap r(QPoly({qi(2)}), QPoly({q(1), q(0), q(1)}));
    try {
        r.series_expand(GaussianRational(0, 1), 3);  // center i
        FAIL("expected PoleAtCenterError");
    } catch (const PoleAtCenterError& e) {
        CHECK(e.pole_order == 1);
    }
}

TEST_CASE("laurent_order at finite points and infinity") {
    QRationalMap r(QPoly({qi(2)}), QPoly({q(1), q(0), q(1)}));  // 2i/(z^2+1)
    CHECK(r.order_at(GaussianRational(0, 1)) == -1);
    CHECK(r.order_at_infinity() == 2);
    QRationalMap z3(QPoly({q(0), q(0), q(0), q(1)}), QPoly({q(1)}));
    CHECK(z3.order_at(q(0)) == 3);
    QRationalMap zero;
    CHECK_THROWS_AS(zero.order_at_infinity(), UndefinedOrderError);
}

TEST_CASE("property: series of reduce(r) equals series of r") {
    oracles::Rng rng(20260810);
    for (int trial = 0; trial < 24; ++trial) {
        QPoly a = rng.nonzero_poly(4), b = rng.nonzero_poly(3), c = rng.nonzero_poly(2);
        if (b.coeff(0).is_zero() || c.coeff(0).is_zero()) continue;
        // r carries a built-in common factor c
        QRationalMap raw(a * c, b * c);
        QRationalMap red = raw.reduced();
        auto s1 = raw.series_expand(q(0), 8);
        auto s2 = red.series_expand(q(0), 8);
        for (size_t k = 0; k <= 8; ++k) CHECK(s1.coeff(k) == s2.coeff(k));
    }
}

TEST_CASE("property: principal divisor has degree zero") {
    oracles::Rng rng(77);
    for (int trial = 0; trial < 16; ++trial) {
        QPoly a = rng.nonzero_poly(5), b = rng.nonzero_poly(4);
        QRationalMap r(a, b);
        if (r.is_zero()) continue;
        long affine = r.num().degree() - r.den().degree();
        CHECK(affine + r.order_at_infinity() == 0);
    }
}

TEST_CASE("property: BigComplex arithmetic tracks exact rationals to 2^(-p+4)") {
    oracles::Rng rng(321);
    for (mpfr_prec_t p : {64l, 128l, 256l}) {
        for (int trial = 0; trial < 12; ++trial) {
            GaussianRational a = rng.gauss(), b = rng.gauss();
            if (b.is_zero()) continue;
            GaussianRational exact = (a * b + a) / b - a;
            BigComplex fa = a.to_big(p), fb = b.to_big(p);
            BigComplex approx = (fa * fb + fa) / fb - fa;
            BigComplex ex = exact.to_big(p * 2);
            double rel =
                (abs(approx - ex) / std::max(abs(ex), ldexp2(BigReal(1l, p), -(long)p)))
                    .to_double();
            CHECK(rel < std::ldexp(1.0, (int)(-p + 4)));
        }
    }
}

TEST_CASE("precision never silently downgrades") {
    BigReal a(1.0, 128), b(3.0, 512);
    CHECK((a / b).prec() == 512);
    BigComplex x(1.0, 2.0, 128), y(0.5, -0.25, 320);
    CHECK((x * y).prec() == 320);
}

TEST_CASE("polynomial gcd, squarefree decomposition, shifts") {
    QPoly z2p1({q(1), q(0), q(1)});
    QPoly p = z2p1 * z2p1 * QPoly({q(-1), q(1)});
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0] == QPoly({q(-1), q(1)}));
    CHECK(sf[1] == z2p1);
    CHECK(gcd(p, p.derivative()) == z2p1);
    QPoly sh = p.taylor_shift(q(3));
    CHECK(sh.taylor_shift(q(-3)) == p);
    CHECK(factor_multiplicity(p, z2p1) == 2);
}

TEST_CASE("karatsuba-range multiplication agrees with a naive loop") {
    oracles::Rng rng(5);
    std::vector<GaussianRational> ca, cb;
    for (int i = 0; i < 600; ++i) ca.push_back(rng.gauss());
    for (int i = 0; i < 530; ++i) cb.push_back(rng.gauss());
    QPoly a(ca), b(cb);
    QPoly prod = a * b;
    std::vector<GaussianRational> naive((size_t)(a.degree() + b.degree() + 1),
                                        GaussianRational(0));
    for (long i = 0; i <= a.degree(); ++i)
        for (long j = 0; j <= b.degree(); ++j)
            naive[(size_t)(i + j)] += a.coeff((size_t)i) * b.coeff((size_t)j);
    CHECK(prod == QPoly(naive));
}
