#pragma once

// Function-field elements (n0(x) + n1(x)*y) / c(x)^k on the Weierstrass curve
// y^2 = c(x) = 4x^3 - g2*x - g3, with x the Weierstrass function and y its
// derivative. Differentiation uses x' = y, y' = 6x^2 - g2/2 and reduces the
// y-degree modulo the curve.

#include <limits>
#include <tuple>
#include <vector>

#include "voronome/errors.hpp"
#include "voronome/poly.hpp"

namespace voronome {

template <class K>
struct CurveParams {
    K g2{}, g3{};

    Poly<K> c() const {
        using T = FieldTraits<K>;
        return Poly<K>({-g3, -g2, T::zero(), T::from_long(4)});
    }
    // dc/dx = 12x^2 - g2
    Poly<K> c_prime() const {
        using T = FieldTraits<K>;
        return Poly<K>({-g2, T::zero(), T::from_long(12)});
    }
    // y' = 6x^2 - g2/2
    Poly<K> y_prime() const {
        using T = FieldTraits<K>;
        return Poly<K>({-(g2 / T::from_long(2)), T::zero(), T::from_long(6)});
    }
};

template <class K>
class EllipticElement {
  public:
    using Traits = FieldTraits<K>;

    EllipticElement() = default;
    EllipticElement(CurveParams<K> curve, Poly<K> n0, Poly<K> n1, long k = 0)
        : curve_(std::move(curve)), n0_(std::move(n0)), n1_(std::move(n1)), k_(k) {
        if (k_ < 0) throw InvalidInputError("EllipticElement: negative denominator power");
        reduce();
    }

    static EllipticElement x(const CurveParams<K>& curve) {
        return {curve, Poly<K>::identity(), Poly<K>::zero(), 0};
    }
    static EllipticElement y(const CurveParams<K>& curve) {
        return {curve, Poly<K>::zero(), Poly<K>::constant(Traits::one()), 0};
    }
    static EllipticElement constant(const CurveParams<K>& curve, K v) {
        return {curve, Poly<K>::constant(std::move(v)), Poly<K>::zero(), 0};
    }

    const CurveParams<K>& curve() const { return curve_; }
    const Poly<K>& n0() const { return n0_; }
    const Poly<K>& n1() const { return n1_; }
    long den_power() const { return k_; }
    bool is_zero() const { return n0_.is_zero() && n1_.is_zero(); }

    friend EllipticElement operator+(const EllipticElement& a, const EllipticElement& b) {
        auto [pa, pb, k] = common_den(a, b);
        return {a.curve_, pa.first + pb.first, pa.second + pb.second, k};
    }
    friend EllipticElement operator-(const EllipticElement& a, const EllipticElement& b) {
        auto [pa, pb, k] = common_den(a, b);
        return {a.curve_, pa.first - pb.first, pa.second - pb.second, k};
    }
    friend EllipticElement operator*(const EllipticElement& a, const EllipticElement& b) {
        Poly<K> c = a.curve_.c();
        Poly<K> r0 = a.n0_ * b.n0_ + (a.n1_ * b.n1_) * c;
        Poly<K> r1 = a.n0_ * b.n1_ + a.n1_ * b.n0_;
        return {a.curve_, std::move(r0), std::move(r1), a.k_ + b.k_};
    }
    friend EllipticElement operator*(const K& s, const EllipticElement& a) {
        return {a.curve_, s * a.n0_, s * a.n1_, a.k_};
    }
    EllipticElement operator-() const { return {curve_, -n0_, -n1_, k_}; }
    friend bool operator==(const EllipticElement& a, const EllipticElement& b)
        requires(Traits::exact)
    {
        return a.k_ == b.k_ && a.n0_ == b.n0_ && a.n1_ == b.n1_;
    }

    // d/dz via x' = y, y' = 6x^2 - g2/2
    EllipticElement derivative() const {
        Poly<K> c = curve_.c();
        Poly<K> cp = curve_.c_prime();
        Poly<K> yp = curve_.y_prime();
        K kk = Traits::from_long(k_);
        // ((n0 + n1 y)/c^k)' = [ c*(n1' c + n1 yp) - k c' c n1  +  (n0' c - k c' n0) y ] / c^(k+1)
        Poly<K> new0 = c * (n1_.derivative() * c + n1_ * yp) - (kk * (cp * (c * n1_)));
        Poly<K> new1 = n0_.derivative() * c - kk * (cp * n0_);
        return {curve_, std::move(new0), std::move(new1), k_ + 1};
    }

    // division by y: (n0 + n1 y)/c^k / y = (n1 c + n0 y)/c^(k+1)
    EllipticElement div_by_y() const {
        return {curve_, n1_ * curve_.c(), n0_, k_ + 1};
    }

    template <class V>
    V eval(const V& xv, const V& yv) const {
        V num = n0_.template eval<V>(xv) + n1_.template eval<V>(xv) * yv;
        if (k_ == 0) return num;
        V cv = curve_.c().template eval<V>(xv);
        V den = cv;
        for (long j = 1; j < k_; ++j) den = den * cv;
        return num / den;
    }

    // order of vanishing at the lattice point (the pole of x and y);
    // negative = pole order; x has order -2, y has order -3, c(x) order -6
    long order_at_origin() const {
        if (is_zero()) throw UndefinedOrderError("order of the zero element");
        long o0 = n0_.is_zero() ? std::numeric_limits<long>::max() : -2 * n0_.degree();
        long o1 = n1_.is_zero() ? std::numeric_limits<long>::max() : -3 - 2 * n1_.degree();
        return std::min(o0, o1) + 6 * k_;
    }

    // order at the half-period point whose x-value is a root of the (squarefree,
    // irreducible-over-K) factor q of c(x); x - e has order 2, y has order 1
    long order_at_half_period(const Poly<K>& q) const
        requires(Traits::exact)
    {
        if (is_zero()) throw UndefinedOrderError("order of the zero element");
        long m0 = n0_.is_zero() ? std::numeric_limits<long>::max() : factor_multiplicity(n0_, q);
        long m1 = n1_.is_zero() ? std::numeric_limits<long>::max() : factor_multiplicity(n1_, q);
        
        long o0 = m0 == std::numeric_limits<long>::max() ? m0 : 2 * m0;
        long o1 = m1 == std::numeric_limits<long>::max() ? m1 : 2 * m1 + 1;
        return std::min(o0, o1) - 2 * k_;
    }

  private:
    static std::tuple<std::pair<Poly<K>, Poly<K>>, std::pair<Poly<K>, Poly<K>>, long> common_den(
        const EllipticElement& a, const EllipticElement& b) {
        Poly<K> c = a.curve_.c();
        long k = std::max(a.k_, b.k_);
        Poly<K> fa = c.pow((unsigned long)(k - a.k_));
        Poly<K> fb = c.pow((unsigned long)(k - b.k_));
        return {{a.n0_ * fa, a.n1_ * fa}, {b.n0_ * fb, b.n1_ * fb}, k};
    }

    void reduce()
        requires(Traits::exact)
    {
        Poly<K> c = curve_.c();
        while (k_ > 0 && (n0_.is_zero() || divides(c, n0_)) && (n1_.is_zero() || divides(c, n1_)) &&
               !(n0_.is_zero() && n1_.is_zero())) {
            if (!n0_.is_zero()) n0_ = exact_div(n0_, c);
            if (!n1_.is_zero()) n1_ = exact_div(n1_, c);
            --k_;
        }
        if (is_zero()) k_ = 0;
    }
    void reduce()
        requires(!Traits::exact)
    {}

    CurveParams<K> curve_;
    Poly<K> n0_, n1_;
    long k_ = 0;
};

using QEllipticElement = EllipticElement<GaussianRational>;

}  // namespace voronome
