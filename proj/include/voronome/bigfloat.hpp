#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Precision is carried per value in bits and is never silently lowered:
// binary operations allocate the max precision of their operands, so a
// 256-bit value combined with a 512-bit value yields a 512-bit result.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <string>
#include <utility>

namespace voronome {

inline constexpr mpfr_prec_t kMinPrecision = 64;
inline constexpr mpfr_prec_t kDefaultPrecision = 256;

// constructor selector: "zero at this precision" (mpfr_prec_t is a plain
// integer type, so a tag keeps it distinct from value constructors)
struct Prec {
    mpfr_prec_t bits;
};

class BigReal {
  public:
    BigReal() { mpfr_init2(v_, kDefaultPrecision); mpfr_set_zero(v_, 1); }
    explicit BigReal(Prec p) {
        mpfr_init2(v_, clamp(p.bits));
        mpfr_set_zero(v_, 1);
    }
    BigReal(double d, mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigReal(long n, mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    BigReal(const mpq_class& q, mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, kMinPrecision);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static BigReal pi(mpfr_prec_t prec) {
        BigReal r(Prec{prec});
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(Prec{join(a, b)}); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(Prec{join(a, b)}); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(Prec{join(a, b)}); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(Prec{join(a, b)}); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    BigReal operator-() const {
        BigReal r(Prec{prec()}); mpfr_neg(r.v_, v_, MPFR_RNDN); return r;
    }
    BigReal& operator+=(const BigReal& o) { *this = *this + o; return *this; }
    BigReal& operator-=(const BigReal& o) { *this = *this - o; return *this; }
    BigReal& operator*=(const BigReal& o) { *this = *this * o; return *this; }
    BigReal& operator/=(const BigReal& o) { *this = *this / o; return *this; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

    friend BigReal abs(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal sqrt(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal hypot(const BigReal& a, const BigReal& b) {
        BigReal r(Prec{join(a, b)}); mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal exp(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal log(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal sin(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal cos(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal sinh(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_sinh(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal cosh(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_cosh(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal atan(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_atan(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigReal atan2(const BigReal& y, const BigReal& x) {
        BigReal r(Prec{join(y, x)}); mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r;
    }
    // a^(1/n), real branch; a >= 0 or n odd
    friend BigReal rootn(const BigReal& a, unsigned long n) {
        BigReal r(Prec{a.prec()});
#if MPFR_VERSION_MAJOR >= 4
        mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
#else
        mpfr_root(r.v_, a.v_, n, MPFR_RNDN);
#endif
        return r;
    }
    friend BigReal pow_si(const BigReal& a, long n) {
        BigReal r(Prec{a.prec()}); mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN); return r;
    }
    friend BigReal ldexp2(const BigReal& a, long e) {
        BigReal r(Prec{a.prec()}); mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN); return r;
    }
    friend BigReal floor(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_floor(r.v_, a.v_); return r;
    }
    friend BigReal round_nearest(const BigReal& a) {
        BigReal r(Prec{a.prec()}); mpfr_round(r.v_, a.v_); return r;
    }

    // Decimal string with `digits` significant digits (deterministic output).
    std::string str(int digits = 40) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    static BigReal parse(const std::string& s, mpfr_prec_t prec) {
        BigReal r(Prec{prec});
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }

  private:
    static mpfr_prec_t clamp(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, kMinPrecision); }
    static mpfr_prec_t join(const BigReal& a, const BigReal& b) {
        return std::max(a.prec(), b.prec());
    }
    mpfr_t v_;
};

inline std::ostream& operator<<(std::ostream& os, const BigReal& x);

class BigComplex {
  public:
    BigReal re, im;

    BigComplex() = default;
    explicit BigComplex(mpfr_prec_t prec) : re(Prec{prec}), im(Prec{prec}) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, mpfr_prec_t prec = kDefaultPrecision)
        : re(r, prec), im(i, prec) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) { *this = *this + o; return *this; }
    BigComplex& operator-=(const BigComplex& o) { *this = *this - o; return *this; }
    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }
    BigComplex& operator/=(const BigComplex& o) { *this = *this / o; return *this; }
    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
    friend BigReal abs(const BigComplex& a) { return hypot(a.re, a.im); }
    friend BigReal norm(const BigComplex& a) { return a.re * a.re + a.im * a.im; }
    friend BigReal arg(const BigComplex& a) { return atan2(a.im, a.re); }
    friend BigComplex sqrt(const BigComplex& a) {
        if (a.im.is_zero() && a.re.sign() >= 0) return {sqrt(a.re), BigReal(Prec{a.prec()})};
        BigReal r = abs(a);
        BigReal t = sqrt((r + a.re) / BigReal(2l, a.prec()));
        BigReal u = sqrt((r - a.re) / BigReal(2l, a.prec()));
        if (a.im.sign() < 0) u = -u;
        return {t, u};
    }
    friend BigComplex exp(const BigComplex& a) {
        BigReal m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }
    friend BigComplex pow_si(const BigComplex& a, long n) {
        if (n == 0) return BigComplex(1.0, 0.0, a.prec());
        bool inv = n < 0;
        unsigned long k = inv ? -(unsigned long)n : (unsigned long)n;
        BigComplex base = a, acc(1.0, 0.0, a.prec());
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        if (inv) acc = BigComplex(1.0, 0.0, a.prec()) / acc;
        return acc;
    }
    // principal n-th root via polar form
    friend BigComplex rootn(const BigComplex& a, unsigned long n) {
        BigReal r = rootn(abs(a), n);
        BigReal th = arg(a) / BigReal((long)n, a.prec());
        return {r * cos(th), r * sin(th)};
    }

    std::string str(int digits = 40) const {
        std::ostringstream os;
        os << re.str(digits) << (im.sign() < 0 ? "" : "+") << im.str(digits) << "i";
        return os.str();
    }
    std::pair<double, double> to_doubles() const { return {re.to_double(), im.to_double()}; }
};

inline BigComplex operator*(const BigReal& s, const BigComplex& a) {
    return {s * a.re, s * a.im};
}
inline BigComplex operator*(const BigComplex& a, const BigReal& s) {
    return {s * a.re, s * a.im};
}
inline BigComplex operator/(const BigComplex& a, const BigReal& s) {
    return {a.re / s, a.im / s};
}

inline BigComplex sin(const BigComplex& a) {
    return {sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im)};
}
inline BigComplex cos(const BigComplex& a) {
    return {cos(a.re) * cosh(a.im), -(sin(a.re) * sinh(a.im))};
}

}  // namespace voronome

#include <ostream>
namespace voronome {
inline std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.str(20); }
inline std::ostream& operator<<(std::ostream& os, const BigComplex& x) { return os << x.str(20); }
}  // namespace voronome
