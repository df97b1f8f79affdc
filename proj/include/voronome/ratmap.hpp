#pragma once

// Rational maps num/den with exact normalization (gcd = 1, den monic) and
// truncated power-series windows whose coefficients are exact within the
// window.

#include <optional>
#include <utility>

#include "voronome/errors.hpp"
#include "voronome/poly.hpp"

namespace voronome {

template <class K>
class SeriesWindow {
  public:
    using Traits = FieldTraits<K>;

    SeriesWindow() = default;
    SeriesWindow(K center, std::vector<K> coeffs)
        : center_(std::move(center)), c_(std::move(coeffs)) {}

    const K& center() const { return center_; }
    // truncation order N; coefficients c_0..c_N
    long order() const { return (long)c_.size() - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(size_t k) const { return k < c_.size() ? c_[k] : Traits::zero(); }

    // lowest nonzero index within the window, or -1 if all stored terms vanish
    long valuation() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!Traits::is_zero(c_[k])) return (long)k;
        return -1;
    }

    SeriesWindow truncated(size_t n) const {
        std::vector<K> r(c_.begin(), c_.begin() + std::min(c_.size(), n + 1));
        return {center_, std::move(r)};
    }

    friend SeriesWindow operator+(const SeriesWindow& a, const SeriesWindow& b) {
        size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<K> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = a.coeff(i) + b.coeff(i);
        return {a.center_, std::move(r)};
    }
    friend SeriesWindow operator-(const SeriesWindow& a, const SeriesWindow& b) {
        size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<K> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = a.coeff(i) - b.coeff(i);
        return {a.center_, std::move(r)};
    }
    friend SeriesWindow operator*(const SeriesWindow& a, const SeriesWindow& b) {
        size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<K> r(n, Traits::zero());
        for (size_t i = 0; i < n; ++i) {
            if (Traits::is_zero(a.c_[i])) continue;
            for (size_t j = 0; i + j < n; ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return {a.center_, std::move(r)};
    }
    friend SeriesWindow operator*(const K& s, const SeriesWindow& a) {
        std::vector<K> r = a.c_;
        for (auto& x : r) x *= s;
        return {a.center_, std::move(r)};
    }

    // division by a series with nonzero constant term
    friend SeriesWindow operator/(const SeriesWindow& a, const SeriesWindow& b) {
        if (b.c_.empty() || Traits::is_zero(b.c_[0]))
            throw InvalidInputError("SeriesWindow: division by series with zero constant term");
        size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<K> r(n, Traits::zero());
        for (size_t k = 0; k < n; ++k) {
            K acc = a.coeff(k);
            for (size_t j = 0; j < k; ++j) acc -= r[j] * b.coeff(k - j);
            r[k] = acc / b.c_[0];
        }
        return {a.center_, std::move(r)};
    }

    // d/dt in the local variable t = z - center; the window shrinks by one
    SeriesWindow derivative() const {
        if (c_.size() <= 1) return {center_, {}};
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Traits::from_long((long)i) * c_[i];
        return {center_, std::move(r)};
    }

    // antiderivative with zero constant term; the window grows by one
    SeriesWindow integral() const {
        std::vector<K> r(c_.size() + 1, Traits::zero());
        for (size_t i = 0; i < c_.size(); ++i)
            r[i + 1] = c_[i] / Traits::from_long((long)i + 1);
        return {center_, std::move(r)};
    }

  private:
    K center_{};
    std::vector<K> c_;
};

template <class K>
class RationalMap {
  public:
    using Traits = FieldTraits<K>;

    RationalMap() : num_(), den_(Poly<K>::constant(Traits::one())) {}
    RationalMap(Poly<K> num, Poly<K> den, bool already_reduced = false)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw InvalidInputError("RationalMap: zero denominator");
        if (already_reduced) {
            K inv = Traits::one() / den_.leading();
            num_ = inv * num_;
            den_ = inv * den_;
        } else {
            reduce_in_place();
        }
    }
    static RationalMap constant(K v) {
        return RationalMap(Poly<K>::constant(std::move(v)), Poly<K>::constant(Traits::one()));
    }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalMap reduced() const {
        RationalMap r = *this;
        r.reduce_in_place();
        return r;
    }

    friend RationalMap operator+(const RationalMap& a, const RationalMap& b) {
        return RationalMap(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalMap operator-(const RationalMap& a, const RationalMap& b) {
        return RationalMap(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalMap operator*(const RationalMap& a, const RationalMap& b) {
        return RationalMap(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalMap operator/(const RationalMap& a, const RationalMap& b) {
        if (b.is_zero()) throw InvalidInputError("RationalMap: division by zero map");
        return RationalMap(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalMap operator-() const { return RationalMap(-num_, den_, true); }
    friend bool operator==(const RationalMap& a, const RationalMap& b)
        requires(Traits::exact)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // df/dz, reduced. The denominator is split as den = g*s with s its
    // squarefree part, so the cleanup gcd only ever touches the small factor s.
    RationalMap derivative() const
        requires(Traits::exact)
    {
        if (num_.is_zero()) return RationalMap();
        if (den_.degree() == 0) {
            K inv = Traits::one() / den_.coeff(0);
            return RationalMap(inv * num_.derivative(), Poly<K>::constant(Traits::one()), true);
        }
        Poly<K> dp = den_.derivative();
        Poly<K> g = gcd(den_, dp);
        Poly<K> s = exact_div(den_, g);   // squarefree part
        Poly<K> t = exact_div(dp, g);
        Poly<K> u = num_.derivative() * s - num_ * t;
        Poly<K> v = den_ * s;
        // any common factor of u and v would divide s; in char 0 there is none,
        // but the check is cheap since deg s is small
        Poly<K> h = gcd(u, s);
        while (h.degree() > 0) {
            u = exact_div(u, h);
            v = exact_div(v, h);
            h = gcd(u, s);
        }
        return RationalMap(std::move(u), std::move(v), true);
    }

    template <class V>
    V eval(const V& z) const {
        return num_.template eval<V>(z) / den_.template eval<V>(z);
    }

    // order of vanishing at an exact affine point (negative = pole order)
    long order_at(const K& pt) const
        requires(Traits::exact)
    {
        if (num_.is_zero()) throw UndefinedOrderError("order of the zero map");
        return num_.root_multiplicity(pt) - den_.root_multiplicity(pt);
    }
    // order at infinity in the chart w = 1/z
    long order_at_infinity() const {
        if (num_.is_zero()) throw UndefinedOrderError("order of the zero map");
        return den_.degree() - num_.degree();
    }

    // the map rewritten in the chart w = 1/z, i.e. r(1/w) as a map in w
    RationalMap at_infinity_chart() const
        requires(Traits::exact)
    {
        long dn = num_.degree(), dd = den_.degree();
        Poly<K> rn = num_.reversed();
        Poly<K> rd = den_.reversed();
        long shift = dd - dn;
        if (shift >= 0) rn = Poly<K>::monomial((size_t)shift) * rn;
        else rd = Poly<K>::monomial((size_t)(-shift)) * rd;
        return RationalMap(std::move(rn), std::move(rd));
    }

    // exact first count+1 Taylor coefficients at a regular center
    SeriesWindow<K> series_expand(const K& center, size_t count) const
        requires(Traits::exact)
    {
        Poly<K> ds = den_.taylor_shift(center);
        if (Traits::is_zero(ds.coeff(0))) {
            long v = ds.valuation();
            long pole = v - num_.taylor_shift(center).valuation();
            throw PoleAtCenterError("series_expand: center is a pole", pole);
        }
        Poly<K> ns = num_.taylor_shift(center);
        std::vector<K> a(count + 1), b(count + 1);
        for (size_t i = 0; i <= count; ++i) {
            a[i] = ns.coeff(i);
            b[i] = ds.coeff(i);
        }
        SeriesWindow<K> sa(center, std::move(a)), sb(center, std::move(b));
        return sa / sb;
    }

  private:
    void reduce_in_place()
        requires(Traits::exact)
    {
        if (num_.is_zero()) {
            den_ = Poly<K>::constant(Traits::one());
            return;
        }
        Poly<K> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        K inv = Traits::one() / den_.leading();
        num_ = inv * num_;
        den_ = inv * den_;
    }
    void reduce_in_place()
        requires(!Traits::exact)
    {
        K inv = Traits::one() / den_.leading();
        num_ = inv * num_;
        den_ = inv * den_;
    }

    Poly<K> num_, den_;
};

// product of two maps that are already reduced; only the cross gcds
// (a.num, b.den) and (b.num, a.den) can be nontrivial, so this avoids the
// large gcd the general constructor would run
template <class K>
RationalMap<K> mul_pairwise(const RationalMap<K>& a, const RationalMap<K>& b)
    requires(FieldTraits<K>::exact)
{
    Poly<K> an = a.num(), bd = b.den();
    Poly<K> bn = b.num(), ad = a.den();
    Poly<K> g1 = gcd(an, bd);
    if (g1.degree() > 0) {
        an = exact_div(an, g1);
        bd = exact_div(bd, g1);
    }
    Poly<K> g2 = gcd(bn, ad);
    if (g2.degree() > 0) {
        bn = exact_div(bn, g2);
        ad = exact_div(ad, g2);
    }
    return RationalMap<K>(an * bn, ad * bd, true);
}

using QRationalMap = RationalMap<GaussianRational>;
using QSeries = SeriesWindow<GaussianRational>;
using CSeries = SeriesWindow<BigComplex>;

}  // namespace voronome
