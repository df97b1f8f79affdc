#pragma once

// Dense univariate polynomials over an exact or floating coefficient field,
// coefficients stored in ascending degree. Exact-field-only routines (gcd,
// squarefree decomposition, exact division tests) are guarded by traits.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "voronome/bigfloat.hpp"
#include "voronome/rational.hpp"

namespace voronome {

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational from_long(long n) { return GaussianRational(n); }
    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
};

template <>
struct FieldTraits<BigComplex> {
    static constexpr bool exact = false;
    static BigComplex zero() { return BigComplex(0.0, 0.0); }
    static BigComplex one() { return BigComplex(1.0, 0.0); }
    static BigComplex from_long(long n) { return BigComplex((double)n, 0.0); }
    static bool is_zero(const BigComplex& x) { return x.is_zero(); }
};

// Degree above which multiplication switches from schoolbook to Karatsuba.
inline constexpr size_t kKaratsubaThreshold = 512;

template <class K>
class Poly {
  public:
    using Traits = FieldTraits<K>;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<K> coeffs) : c_(coeffs) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
    static Poly identity() { return Poly(std::vector<K>{Traits::zero(), Traits::one()}); }
    // z^k
    static Poly monomial(size_t k, K coeff = Traits::one()) {
        std::vector<K> c(k + 1, Traits::zero());
        c[k] = std::move(coeff);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return (long)c_.size() - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(size_t k) const { return k < c_.size() ? c_[k] : Traits::zero(); }
    const K& leading() const {
        assert(!c_.empty());
        return c_.back();
    }
    // lowest index with nonzero coefficient; -1 for the zero polynomial
    long valuation() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!Traits::is_zero(c_[k])) return (long)k;
        return -1;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), Traits::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), Traits::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<K> r = c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        return Poly(mul_impl(a.c_, b.c_));
    }
    friend Poly operator*(const K& s, const Poly& a) {
        if (Traits::is_zero(s)) return Poly();
        std::vector<K> r = a.c_;
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    friend bool operator==(const Poly& a, const Poly& b)
        requires(Traits::exact)
    {
        return a.c_ == b.c_;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1, Traits::zero());
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Traits::from_long((long)i) * c_[i];
        return Poly(std::move(r));
    }

    template <class V>
    V eval(const V& z) const {
        if (c_.empty()) return V(z - z);  // zero of the value type
        V acc = value_of<V>(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * z + value_of<V>(c_[i]);
        return acc;
    }

    // quotient and remainder; divisor must be nonzero (field coefficients)
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<K> rem = a.c_;
        const size_t db = b.c_.size() - 1;
        std::vector<K> quo(rem.size() - db, Traits::zero());
        const K& lead = b.c_.back();
        for (size_t k = rem.size() - 1; ; --k) {
            if (k >= db) {
                K q = rem[k] / lead;
                if (!Traits::is_zero(q)) {
                    quo[k - db] = q;
                    for (size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.c_[j];
                }
                rem[k] = Traits::zero();
            }
            if (k == db) break;
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    // exact division; throws if the division leaves a remainder (exact fields)
    friend Poly exact_div(const Poly& a, const Poly& b)
        requires(Traits::exact)
    {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw std::domain_error("Poly: exact_div has remainder");
        return q;
    }
    friend bool divides(const Poly& b, const Poly& a)
        requires(Traits::exact)
    {
        if (a.is_zero()) return true;
        if (b.degree() > a.degree()) return false;
        auto [q, r] = divrem(a, b);
        (void)q;
        return r.is_zero();
    }

    Poly monic() const {
        if (is_zero()) return *this;
        K inv = Traits::one() / c_.back();
        return inv * *this;
    }

    friend Poly gcd(Poly a, Poly b)
        requires(Traits::exact)
    {
        while (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            (void)q;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    // Yun's squarefree decomposition: returns s with p = prod s[j]^(j+1)
    // up to the leading coefficient; every s[j] squarefree and pairwise coprime.
    friend std::vector<Poly> squarefree_decomposition(const Poly& p)
        requires(Traits::exact)
    {
        std::vector<Poly> out;
        if (p.degree() <= 0) return out;
        Poly a = p.monic();
        Poly d = a.derivative();
        Poly g = gcd(a, d);
        if (g.degree() == 0) {
            out.push_back(a);
            return out;
        }
        Poly w = exact_div(a, g);
        Poly y = exact_div(d, g);
        Poly z = y - w.derivative();
        while (!z.is_zero()) {
            Poly f = gcd(w, z);
            out.push_back(f);
            w = exact_div(w, f);
            y = exact_div(z, f);
            z = y - w.derivative();
        }
        out.push_back(w);
        return out;
    }

    // multiplicity of the exact root `pt` (0 when not a root)
    long root_multiplicity(const K& pt) const
        requires(Traits::exact)
    {
        Poly lin({-pt, Traits::one()});
        Poly cur = *this;
        long m = 0;
        while (!cur.is_zero() && Traits::is_zero(cur.eval(pt))) {
            cur = exact_div(cur, lin);
            ++m;
        }
        return m;
    }

    // multiplicity of a polynomial factor q (largest k with q^k | p)
    friend long factor_multiplicity(const Poly& p, const Poly& q)
        requires(Traits::exact)
    {
        long m = 0;
        Poly cur = p;
        while (!cur.is_zero() && divides(q, cur)) {
            cur = exact_div(cur, q);
            ++m;
        }
        return m;
    }

    // p(z + c), Taylor shift by Horner
    Poly taylor_shift(const K& c) const {
        if (is_zero()) return *this;
        std::vector<K> acc{c_.back()};
        for (size_t i = c_.size() - 1; i-- > 0;) {
            std::vector<K> next(acc.size() + 1, Traits::zero());
            for (size_t j = 0; j < acc.size(); ++j) {
                next[j + 1] += acc[j];
                next[j] += c * acc[j];
            }
            next[0] += c_[i];
            acc = std::move(next);
        }
        return Poly(std::move(acc));
    }

    // z^deg * p(1/z): coefficient reversal (chart flip to infinity)
    Poly reversed() const {
        std::vector<K> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    Poly pow(unsigned long e) const {
        Poly acc = constant(Traits::one());
        Poly base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    template <class V>
    static V value_of(const K& k) {
        if constexpr (std::is_same_v<K, V>) return k;
        else return convert_value<V>(k);
    }

  private:
    template <class V>
    static V convert_value(const K& k);

    static std::vector<K> mul_schoolbook(const std::vector<K>& a, const std::vector<K>& b) {
        std::vector<K> r(a.size() + b.size() - 1, Traits::zero());
        for (size_t i = 0; i < a.size(); ++i) {
            if (Traits::is_zero(a[i])) continue;
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

    static std::vector<K> mul_impl(const std::vector<K>& a, const std::vector<K>& b) {
        if (std::min(a.size(), b.size()) <= kKaratsubaThreshold) return mul_schoolbook(a, b);
        size_t h = (std::max(a.size(), b.size()) + 1) / 2;
        auto split = [&](const std::vector<K>& p) {
            std::vector<K> lo(p.begin(), p.begin() + std::min(h, p.size()));
            std::vector<K> hi(p.size() > h ? p.begin() + h : p.end(), p.end());
            if (lo.empty()) lo.push_back(Traits::zero());
            if (hi.empty()) hi.push_back(Traits::zero());
            return std::pair(lo, hi);
        };
        auto [a0, a1] = split(a);
        auto [b0, b1] = split(b);
        auto add = [](const std::vector<K>& x, const std::vector<K>& y) {
            std::vector<K> r(std::max(x.size(), y.size()), Traits::zero());
            for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
            for (size_t i = 0; i < y.size(); ++i) r[i] += y[i];
            return r;
        };
        auto z0 = mul_impl(a0, b0);
        auto z2 = mul_impl(a1, b1);
        auto z1 = mul_impl(add(a0, a1), add(b0, b1));
        std::vector<K> r(a.size() + b.size() - 1, Traits::zero());
        for (size_t i = 0; i < z0.size() && i < r.size(); ++i) r[i] += z0[i];
        for (size_t i = 0; i < z1.size() && i + h < r.size(); ++i) {
            r[i + h] += z1[i];
            if (i < z0.size()) r[i + h] -= z0[i];
            if (i < z2.size()) r[i + h] -= z2[i];
        }
        for (size_t i = 0; i < z2.size() && i + 2 * h < r.size(); ++i) r[i + 2 * h] += z2[i];
        return r;
    }

    void normalize() {
        while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

template <>
template <>
inline BigComplex Poly<GaussianRational>::convert_value<BigComplex>(const GaussianRational& k) {
    return k.to_big();
}

using QPoly = Poly<GaussianRational>;
using CPoly = Poly<BigComplex>;

// convert an exact polynomial to floating coefficients at the given precision
inline CPoly to_cpoly(const QPoly& p, mpfr_prec_t prec) {
    std::vector<BigComplex> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.push_back(q.to_big(prec));
    return CPoly(std::move(c));
}

}  // namespace voronome
