#pragma once

// Concrete (X, omega, f) families with an engine applying T_omega: f -> df/omega
// exactly, plus exact divisor bookkeeping per iterate.
//
// Supported kinds:
//   RationalP1      X = CP^1, omega = r(z) dz rational, f rational
//   Monomial        X = CP^1, omega = z^(-ell) dz, i.e. T = z^ell d/dz
//   Superelliptic   the curve w^ell = P(z)/Q(z), f = w, omega = pullback of dz
//   EllipticDz      X = C/(Z + tau Z), omega = dz, f = wp
//   EllipticWpPrime X = C/(Z + tau Z), omega = wp' dz, f = wp'
//
// Elliptic iteration runs on the rescaled curve y^2 = 4x^3-4 (hex lattices) or
// y^2 = 4x^3-4x (square lattices) with exact Gaussian-rational coefficients;
// the overall power of the scale factor mu is carried separately and never
// affects zero sets or divisors.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "voronome/elliptic_curve.hpp"
#include "voronome/errors.hpp"
#include "voronome/ratmap.hpp"
#include "voronome/wp.hpp"

namespace voronome {

enum class ScenarioKind { RationalP1, Monomial, Superelliptic, EllipticDz, EllipticWpPrime };

std::string to_string(ScenarioKind k);

// A maximal set of surface points sharing one exact minimal polynomial block.
// Blocks are squarefree and pairwise coprime; deg-1 blocks carry their exact
// root. Special non-affine points get dedicated kinds.
struct PointTag {
    enum Kind { AffineBlock, Infinity, LatticeOrigin, HalfPeriodBlock, GenericZeros } kind =
        AffineBlock;
    QPoly block;      // AffineBlock / HalfPeriodBlock: minimal factor over Q(i)
    int block_id = -1;
    std::string label;

    long npoints() const {
        switch (kind) {
            case AffineBlock:
            case HalfPeriodBlock: return std::max<long>(1, block.degree());
            case GenericZeros: return 1;
            default: return 1;
        }
    }
};

struct DivisorEntry {
    PointTag tag;
    long order = 0;       // order per point (GenericZeros: total over the bucket)
    bool aggregate = false;

    long total_order() const { return aggregate ? order : order * tag.npoints(); }
};

struct Divisor {
    std::vector<DivisorEntry> entries;

    long degree() const {
        long s = 0;
        for (const auto& e : entries) s += e.total_order();
        return s;
    }
    // sum of pole orders (total over all points), a positive number
    long pole_mass() const {
        long s = 0;
        for (const auto& e : entries)
            if (e.order < 0) s -= e.total_order();
        return s;
    }
    long order_of(const std::string& label) const {
        for (const auto& e : entries)
            if (e.tag.label == label) return e.order;
        return 0;
    }
};

struct EvalResult {
    BigComplex value;
    bool near_pole = false;
};

struct IterateState {
    long n = 0;
    bool zero_function = false;

    // exactly one representation is live, per scenario kind
    QRationalMap rat;
    QPoly vn;                  // Superelliptic V_n
    QEllipticElement ell;      // elliptic kinds, hat curve
    long mu_power = 0;         // elliptic kinds: prefactor mu^mu_power

    Divisor divisor;
};

// --- scenario data per kind ---

struct RationalP1Data {
    QRationalMap omega;  // omega = omega(z) dz
    QRationalMap f0;
};
struct MonomialData {
    long ell = 2;  // T = z^ell d/dz, omega = z^(-ell) dz
    QRationalMap f0;
};
struct SuperellipticData {
    QPoly P, Q;
    long ell = 2;
};
struct EllipticData {
    std::string tau_name;  // "hex", "square", or "" for numeric
    BigComplex tau;
};

class Scenario {
  public:
    static Scenario rational_p1(QRationalMap omega, QRationalMap f0,
                                mpfr_prec_t prec = kDefaultPrecision);
    static Scenario monomial(long ell, QRationalMap f0, mpfr_prec_t prec = kDefaultPrecision);
    static Scenario superelliptic(QPoly P, QPoly Q, long ell,
                                  mpfr_prec_t prec = kDefaultPrecision);
    static Scenario elliptic_dz(const std::string& tau_name, mpfr_prec_t prec = kDefaultPrecision);
    static Scenario elliptic_wp_prime(const std::string& tau_name,
                                      mpfr_prec_t prec = kDefaultPrecision);
    static Scenario elliptic_dz_tau(const BigComplex& tau, mpfr_prec_t prec);
    static Scenario elliptic_wp_prime_tau(const BigComplex& tau, mpfr_prec_t prec);

    ScenarioKind kind() const { return kind_; }
    mpfr_prec_t precision() const { return prec_; }
    void set_precision(mpfr_prec_t p) { prec_ = p; }

    const RationalP1Data& rational_data() const { return std::get<RationalP1Data>(data_); }
    const MonomialData& monomial_data() const { return std::get<MonomialData>(data_); }
    const SuperellipticData& superelliptic_data() const {
        return std::get<SuperellipticData>(data_);
    }
    const EllipticData& elliptic_data() const { return std::get<EllipticData>(data_); }

    bool is_elliptic() const {
        return kind_ == ScenarioKind::EllipticDz || kind_ == ScenarioKind::EllipticWpPrime;
    }
    bool is_rational_like() const {
        return kind_ == ScenarioKind::RationalP1 || kind_ == ScenarioKind::Monomial;
    }

    // omega as a rational map (rational-like kinds only)
    QRationalMap omega_map() const;

    // lattice and hat form (elliptic kinds; built lazily, cached)
    const Lattice& lattice() const;
    const HatForm& hat_form() const;

    IterateState initial_state() const;
    IterateState apply_T(const IterateState& st) const;
    IterateState iterate(long n) const;
    // all states f_0 .. f_n (divisor audit trail)
    std::vector<IterateState> iterate_trail(long n) const;

    EvalResult evaluate(const IterateState& st, const BigComplex& z) const;

    Divisor divisor_of(const IterateState& st) const;

    // pairwise-coprime squarefree blocks covering poles of f0 and zeros/poles
    // of omega (rational-like kinds)
    const std::vector<PointTag>& affine_blocks() const { return blocks_; }

    // order of omega at an affine block point / at infinity (rational-like)
    long omega_order_at_block(const PointTag& tag) const;
    long omega_order_at_infinity() const;

    std::string name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

  private:
    void setup_blocks();

    ScenarioKind kind_ = ScenarioKind::RationalP1;
    std::variant<RationalP1Data, MonomialData, SuperellipticData, EllipticData> data_;
    mpfr_prec_t prec_ = kDefaultPrecision;
    std::vector<PointTag> blocks_;
    std::string name_;

    mutable std::shared_ptr<Lattice> lattice_;
    mutable std::shared_ptr<HatForm> hat_;
};

// V_{n+1} = ell*P*Q*V_n' - ((n*ell-1) P' Q + (n*ell+1) P Q') V_n
QPoly superelliptic_step(const QPoly& Vn, const QPoly& P, const QPoly& Q, long ell, long n);

// U_n = (2n-3) z U_{n-1} + (1-z^2) U_{n-1}', seeded by U_1 = z  (n >= 2)
QPoly circle_step(const QPoly& Un_minus_1, long n);
QPoly circle_un(long n);

// d/dz on the curve via x' = y, y' = 6x^2 - g2/2
template <class K>
EllipticElement<K> elliptic_derive(const EllipticElement<K>& e) {
    return e.derivative();
}

}  // namespace voronome
