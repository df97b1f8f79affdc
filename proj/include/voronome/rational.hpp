#pragma once

// Exact Gaussian rationals a + b*i with a, b in Q, the coefficient field for
// every scenario whose defining data is Gaussian-rational.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "voronome/bigfloat.hpp"

namespace voronome {

struct GaussianRational {
    mpq_class re{0}, im{0};

    GaussianRational() = default;
    GaussianRational(long r) : re(r) {}
    GaussianRational(mpq_class r) : re(std::move(r)) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r, long i) : re(r), im(i) {}

    static GaussianRational i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) { *this = *this + o; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { *this = *this - o; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }
    GaussianRational& operator/=(const GaussianRational& o) { *this = *this / o; return *this; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    friend GaussianRational conj(const GaussianRational& a) { return {a.re, -a.im}; }
    // |a|^2, exact
    friend mpq_class norm(const GaussianRational& a) { return a.re * a.re + a.im * a.im; }

    GaussianRational inv() const { return GaussianRational(1) / *this; }

    BigComplex to_big(mpfr_prec_t prec = kDefaultPrecision) const {
        return {BigReal(re, prec), BigReal(im, prec)};
    }
    std::pair<double, double> to_doubles() const { return {re.get_d(), im.get_d()}; }

    // Bit-exact literal "p/q+r/s i" (also accepts "p/q", "r/s i", "-3", "i", "2i").
    static GaussianRational parse(const std::string& text);
    std::string str() const;
};

inline std::string GaussianRational::str() const {
    std::string s;
    if (im == 0) return re.get_str();
    if (re != 0) {
        s = re.get_str();
        if (im > 0) s += "+";
    }
    if (im == 1) s += "i";
    else if (im == -1) s += "-i";
    else s += im.get_str() + "i";
    return s;
}

inline GaussianRational GaussianRational::parse(const std::string& text) {
    // strip spaces
    std::string t;
    for (char c : text)
        if (!isspace((unsigned char)c)) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational literal");

    auto parse_term = [](const std::string& term, GaussianRational& acc) {
        if (term.empty()) throw std::invalid_argument("bad rational literal");
        bool imag = term.back() == 'i' || term.back() == 'I';
        std::string num = imag ? term.substr(0, term.size() - 1) : term;
        if (!num.empty() && num.back() == '*') num.pop_back();
        if (!num.empty() && num.front() == '+') num = num.substr(1);
        if (num.empty()) num = "1";
        else if (num == "-") num = "-1";
        mpq_class q(num);
        q.canonicalize();
        if (imag) acc.im += q;
        else acc.re += q;
    };

    GaussianRational out;
    size_t start = 0;
    for (size_t k = 1; k <= t.size(); ++k) {
        if (k == t.size() || ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != 'e' &&
                              t[k - 1] != 'E' && k != start)) {
            parse_term(t.substr(start, k - start), out);
            start = k;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& q) {
    return os << q.str();
}

}  // namespace voronome
