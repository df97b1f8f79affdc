#include "voronome/scenario.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace voronome {

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::RationalP1: return "rational_p1";
        case ScenarioKind::Monomial: return "monomial";
        case ScenarioKind::Superelliptic: return "superelliptic";
        case ScenarioKind::EllipticDz: return "elliptic_dz";
        case ScenarioKind::EllipticWpPrime: return "elliptic_wp_prime";
    }
    return "?";
}

namespace {

// squarefree part of p (product of distinct irreducible factors)
QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return QPoly::constant(GaussianRational(1));
    QPoly g = gcd(p, p.derivative());
    return exact_div(p, g).monic();
}

// refine polys into pairwise-coprime squarefree blocks of degree >= 1
std::vector<QPoly> coprime_blocks(std::vector<QPoly> inputs) {
    std::vector<QPoly> work;
    for (auto& p : inputs) {
        if (p.degree() >= 1) work.push_back(squarefree_part(p));
    }
    std::vector<QPoly> out;
    while (!work.empty()) {
        QPoly cur = work.back();
        work.pop_back();
        if (cur.degree() < 1) continue;
        bool split = false;
        for (auto& o : out) {
            QPoly g = gcd(cur, o);
            if (g.degree() >= 1) {
                if (g.degree() < o.degree()) {
                    QPoly rest = exact_div(o, g).monic();
                    o = g;
                    out.push_back(rest);
                }
                cur = exact_div(cur, g).monic();
                if (cur.degree() < 1) {
                    split = true;
                    break;
                }
            }
        }
        if (!split && cur.degree() >= 1) out.push_back(cur.monic());
        else if (cur.degree() >= 1) work.push_back(cur);
    }
    return out;
}

std::string block_label(const QPoly& q) {
    if (q.degree() == 1) {
        GaussianRational root = -(q.coeff(0) / q.coeff(1));
        return root.str();
    }
    std::string s = "block[";
    for (long i = q.degree(); i >= 0; --i) {
        s += q.coeff((size_t)i).str();
        if (i > 0) s += ",";
    }
    return s + "]";
}

// multiplicity of the block q in p; splits are handled by the caller via the
// returned residual gcd (nontrivial when roots of q have unequal multiplicity)
std::pair<long, QPoly> block_multiplicity(const QPoly& p, const QPoly& q) {
    long m = 0;
    QPoly cur = p;
    while (!cur.is_zero() && divides(q, cur)) {
        cur = exact_div(cur, q);
        ++m;
    }
    QPoly res = cur.is_zero() ? QPoly::constant(GaussianRational(1)) : gcd(cur, q);
    return {m, res};
}

void append_block_orders(Divisor& d, const QPoly& q, int id, const QPoly& num, const QPoly& den) {
    auto [mn, rn] = block_multiplicity(num, q);
    auto [md, rd] = block_multiplicity(den, q);
    if (rn.degree() >= 1 || rd.degree() >= 1) {
        // split the block: points inside the residual have strictly larger order
        QPoly g = rn.degree() >= 1 ? rn : rd;
        QPoly rest = exact_div(q, g).monic();
        append_block_orders(d, g.monic(), id, num, den);
        if (rest.degree() >= 1) append_block_orders(d, rest, id, num, den);
        return;
    }
    long order = mn - md;
    if (order != 0) {
        PointTag tag;
        tag.kind = PointTag::AffineBlock;
        tag.block = q;
        tag.block_id = id;
        tag.label = block_label(q);
        d.entries.push_back({tag, order, false});
    }
}

}  // namespace

// --- factories ---

Scenario Scenario::rational_p1(QRationalMap omega, QRationalMap f0, mpfr_prec_t prec) {
    if (omega.is_zero()) throw InvalidInputError("scenario: omega must be nonzero");
    Scenario s;
    s.kind_ = ScenarioKind::RationalP1;
    s.data_ = RationalP1Data{std::move(omega), std::move(f0)};
    s.prec_ = prec;
    s.name_ = "rational_p1";
    s.setup_blocks();
    return s;
}

Scenario Scenario::monomial(long ell, QRationalMap f0, mpfr_prec_t prec) {
    if (ell == 1)
        throw InvalidInputError("scenario: monomial exponent 1 has no rational primitive");
    Scenario s;
    s.kind_ = ScenarioKind::Monomial;
    s.data_ = MonomialData{ell, std::move(f0)};
    s.prec_ = prec;
    s.name_ = "monomial" + std::to_string(ell);
    s.setup_blocks();
    return s;
}

Scenario Scenario::superelliptic(QPoly P, QPoly Q, long ell, mpfr_prec_t prec) {
    if (ell < 2) throw InvalidInputError("scenario: superelliptic needs ell >= 2");
    if (P.is_zero() || Q.is_zero())
        throw InvalidInputError("scenario: superelliptic needs nonzero P, Q");
    QPoly pq = P * Q;
    if (gcd(pq, pq.derivative()).degree() > 0)
        throw InvalidInputError("scenario: P*Q must be squarefree");
    Scenario s;
    s.kind_ = ScenarioKind::Superelliptic;
    s.data_ = SuperellipticData{std::move(P), std::move(Q), ell};
    s.prec_ = prec;
    s.name_ = "superelliptic" + std::to_string(ell);
    s.setup_blocks();
    return s;
}

Scenario Scenario::elliptic_dz(const std::string& tau_name, mpfr_prec_t prec) {
    Scenario s;
    s.kind_ = ScenarioKind::EllipticDz;
    BigComplex tau = tau_name == "square" ? Lattice::tau_square(prec) : Lattice::tau_hex(prec);
    s.data_ = EllipticData{tau_name.empty() ? "hex" : tau_name, tau};
    s.prec_ = prec;
    s.name_ = "elliptic_dz_" + (tau_name.empty() ? std::string("hex") : tau_name);
    return s;
}

Scenario Scenario::elliptic_wp_prime(const std::string& tau_name, mpfr_prec_t prec) {
    Scenario s = elliptic_dz(tau_name, prec);
    s.kind_ = ScenarioKind::EllipticWpPrime;
    s.name_ = "elliptic_wp_prime_" + (tau_name.empty() ? std::string("hex") : tau_name);
    return s;
}

Scenario Scenario::elliptic_dz_tau(const BigComplex& tau, mpfr_prec_t prec) {
    Scenario s;
    s.kind_ = ScenarioKind::EllipticDz;
    s.data_ = EllipticData{"", tau};
    s.prec_ = prec;
    s.name_ = "elliptic_dz";
    return s;
}

Scenario Scenario::elliptic_wp_prime_tau(const BigComplex& tau, mpfr_prec_t prec) {
    Scenario s = elliptic_dz_tau(tau, prec);
    s.kind_ = ScenarioKind::EllipticWpPrime;
    s.name_ = "elliptic_wp_prime";
    return s;
}

void Scenario::setup_blocks() {
    std::vector<QPoly> inputs;
    if (kind_ == ScenarioKind::RationalP1) {
        const auto& d = std::get<RationalP1Data>(data_);
        inputs = {d.f0.den(), d.omega.num(), d.omega.den()};
    } else if (kind_ == ScenarioKind::Monomial) {
        const auto& d = std::get<MonomialData>(data_);
        inputs = {d.f0.den(), QPoly::identity()};  // z itself is the omega block
    } else if (kind_ == ScenarioKind::Superelliptic) {
        const auto& d = std::get<SuperellipticData>(data_);
        inputs = {d.P, d.Q};
    } else {
        return;
    }
    auto blocks = coprime_blocks(std::move(inputs));
    // deterministic ordering by (degree, printed form)
    std::sort(blocks.begin(), blocks.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return block_label(a) < block_label(b);
    });
    blocks_.clear();
    int id = 0;
    for (auto& q : blocks) {
        PointTag t;
        t.kind = PointTag::AffineBlock;
        t.block = q;
        t.block_id = id++;
        t.label = block_label(q);
        blocks_.push_back(std::move(t));
    }
}

QRationalMap Scenario::omega_map() const {
    if (kind_ == ScenarioKind::RationalP1) return std::get<RationalP1Data>(data_).omega;
    if (kind_ == ScenarioKind::Monomial) {
        long ell = std::get<MonomialData>(data_).ell;
        if (ell <= 0) return QRationalMap(QPoly::monomial((size_t)(-ell)), QPoly::constant(1));
        return QRationalMap(QPoly::constant(1), QPoly::monomial((size_t)ell));
    }
    throw UnsupportedScenarioError("omega_map: not a rational-like scenario");
}

const Lattice& Scenario::lattice() const {
    if (!is_elliptic()) throw UnsupportedScenarioError("lattice: not an elliptic scenario");
    if (!lattice_) {
        const auto& d = std::get<EllipticData>(data_);
        lattice_ = std::make_shared<Lattice>(Lattice::from_tau(d.tau, prec_));
    }
    return *lattice_;
}

const HatForm& Scenario::hat_form() const {
    if (!hat_) hat_ = std::make_shared<HatForm>(HatForm::detect(lattice()));
    if (!hat_->exact)
        throw UnsupportedScenarioError(
            "elliptic engine: lattice invariants are not in a rescalable normal form "
            "(g2 = 0 or g3 = 0 required)");
    return *hat_;
}

// --- iteration ---

IterateState Scenario::initial_state() const {
    IterateState st;
    st.n = 0;
    switch (kind_) {
        case ScenarioKind::RationalP1:
            st.rat = std::get<RationalP1Data>(data_).f0;
            break;
        case ScenarioKind::Monomial:
            st.rat = std::get<MonomialData>(data_).f0;
            break;
        case ScenarioKind::Superelliptic:
            st.vn = QPoly::constant(GaussianRational(1));
            break;
        case ScenarioKind::EllipticDz: {
            const auto& hf = hat_form();
            st.ell = QEllipticElement::x(hf.curve);
            st.mu_power = 2;
            break;
        }
        case ScenarioKind::EllipticWpPrime: {
            const auto& hf = hat_form();
            st.ell = QEllipticElement::y(hf.curve);
            st.mu_power = 3;
            break;
        }
    }
    st.divisor = divisor_of(st);
    return st;
}

IterateState Scenario::apply_T(const IterateState& st) const {
    IterateState out;
    out.n = st.n + 1;
    out.zero_function = st.zero_function;
    out.mu_power = st.mu_power;
    if (st.zero_function) return out;

    switch (kind_) {
        case ScenarioKind::RationalP1: {
            const auto& d = std::get<RationalP1Data>(data_);
            QRationalMap df = st.rat.derivative();
            if (df.is_zero()) {
                out.zero_function = true;
                return out;
            }
            // T f = f' * (1/omega); only the small omega factors can cancel
            out.rat = mul_pairwise(df, QRationalMap(d.omega.den(), d.omega.num()));
            break;
        }
        case ScenarioKind::Monomial: {
            long ell = std::get<MonomialData>(data_).ell;
            QRationalMap df = st.rat.derivative();
            if (df.is_zero()) {
                out.zero_function = true;
                return out;
            }
            QRationalMap zpow =
                ell >= 0 ? QRationalMap(QPoly::monomial((size_t)ell), QPoly::constant(1))
                         : QRationalMap(QPoly::constant(1), QPoly::monomial((size_t)(-ell)));
            out.rat = mul_pairwise(df, zpow);
            break;
        }
        case ScenarioKind::Superelliptic: {
            const auto& d = std::get<SuperellipticData>(data_);
            out.vn = superelliptic_step(st.vn, d.P, d.Q, d.ell, st.n);
            break;
        }
        case ScenarioKind::EllipticDz: {
            out.ell = st.ell.derivative();
            out.mu_power = st.mu_power + 1;
            if (out.ell.is_zero()) out.zero_function = true;
            break;
        }
        case ScenarioKind::EllipticWpPrime: {
            out.ell = st.ell.derivative().div_by_y();
            out.mu_power = st.mu_power - 2;
            if (out.ell.is_zero()) out.zero_function = true;
            break;
        }
    }
    if (!out.zero_function) out.divisor = divisor_of(out);
    return out;
}

IterateState Scenario::iterate(long n) const {
    if (n < 0) throw InvalidInputError("iterate: n must be nonnegative");
    IterateState st = initial_state();
    for (long k = 0; k < n; ++k) st = apply_T(st);
    return st;
}

std::vector<IterateState> Scenario::iterate_trail(long n) const {
    if (n < 0) throw InvalidInputError("iterate: n must be nonnegative");
    std::vector<IterateState> out;
    out.reserve((size_t)n + 1);
    out.push_back(initial_state());
    for (long k = 0; k < n; ++k) out.push_back(apply_T(out.back()));
    return out;
}

// --- divisors ---

Divisor Scenario::divisor_of(const IterateState& st) const {
    Divisor d;
    if (st.zero_function) return d;

    if (is_rational_like()) {
        const QPoly& num = st.rat.num();
        const QPoly& den = st.rat.den();
        if (num.is_zero()) return d;
        long tagged_zero_mass = 0;
        for (const auto& t : blocks_) {
            size_t before = d.entries.size();
            append_block_orders(d, t.block, t.block_id, num, den);
            for (size_t i = before; i < d.entries.size(); ++i)
                if (d.entries[i].order > 0) tagged_zero_mass += d.entries[i].total_order();
        }
        long ord_inf = den.degree() - num.degree();
        if (ord_inf != 0) {
            PointTag t;
            t.kind = PointTag::Infinity;
            t.label = "inf";
            d.entries.push_back({t, ord_inf, false});
        }
        long generic = num.degree() - tagged_zero_mass;
        if (generic > 0) {
            PointTag t;
            t.kind = PointTag::GenericZeros;
            t.label = "generic";
            d.entries.push_back({t, generic, true});
        }
        return d;
    }

    if (is_elliptic()) {
        const auto& E = st.ell;
        if (E.is_zero()) return d;
        long known = 0;
        {
            PointTag t;
            t.kind = PointTag::LatticeOrigin;
            t.label = "0";
            long o = E.order_at_origin();
            if (o != 0) d.entries.push_back({t, o, false});
            known += o;
        }
        auto factors = half_period_factors(E.curve());
        int id = 0;
        for (const auto& q : factors) {
            long o = E.order_at_half_period(q);
            if (o != 0) {
                PointTag t;
                t.kind = PointTag::HalfPeriodBlock;
                t.block = q;
                t.block_id = id;
                t.label = "hp" + std::to_string(id);
                d.entries.push_back({t, o, false});
            }
            known += o * std::max<long>(1, q.degree());
            ++id;
        }
        long generic = -known;
        if (generic > 0) {
            PointTag t;
            t.kind = PointTag::GenericZeros;
            t.label = "generic";
            d.entries.push_back({t, generic, true});
        } else if (generic < 0) {
            throw Error("divisor: negative generic zero mass (unexpected pole)");
        }
        return d;
    }

    // superelliptic: divisor of w^(n) on the normalized curve of w^ell = P/Q
    {
        const auto& data = std::get<SuperellipticData>(data_);
        long ell = data.ell;
        long n = st.n;
        const QPoly& V = st.vn;
        if (V.is_zero()) return d;
        long d1 = data.P.degree(), d2 = data.Q.degree();
        long tagged_v_mass = 0;
        for (const auto& t : blocks_) {
            auto [mP, rP] = block_multiplicity(data.P, t.block);
            auto [mQ, rQ] = block_multiplicity(data.Q, t.block);
            auto [mV, rV] = block_multiplicity(V, t.block);
            if (rV.degree() >= 1)
                throw UnsupportedScenarioError(
                    "superelliptic divisor: V_n multiplicity differs inside a branch block");
            long order = 0;
            if (mP > 0) order = ell * mV - (n * ell - 1);
            else if (mQ > 0) order = ell * mV - (n * ell + 1);
            else order = ell * mV;  // unramified; per point on each of the ell sheets
            // npoints semantics: branch blocks have one curve point per root
            if (order != 0) {
                PointTag tag = t;
                tag.kind = PointTag::AffineBlock;
                d.entries.push_back({tag, order, false});
            }
            tagged_v_mass += mV * std::max<long>(1, t.block.degree());
        }
        // points over infinity
        long o_rational = (n * ell - 1) * d1 + (n * ell + 1) * d2 - ell * V.degree();
        long diff = d1 - d2;
        long g_inf = diff == 0 ? ell : std::gcd(ell, diff < 0 ? -diff : diff);
        long per_point = o_rational / (diff == 0 ? ell : g_inf);
        if (per_point != 0) {
            PointTag t;
            t.kind = PointTag::Infinity;
            t.label = "inf";
            // aggregate over the g_inf (or ell) points above infinity
            long npts = diff == 0 ? ell : g_inf;
            d.entries.push_back({t, per_point * npts, true});
        }
        long generic = ell * (V.degree() - tagged_v_mass);
        if (generic > 0) {
            PointTag t;
            t.kind = PointTag::GenericZeros;
            t.label = "generic";
            d.entries.push_back({t, generic, true});
        }
        return d;
    }
}

long Scenario::omega_order_at_block(const PointTag& tag) const {
    QRationalMap om = omega_map();
    auto [mn, rn] = block_multiplicity(om.num(), tag.block);
    auto [md, rd] = block_multiplicity(om.den(), tag.block);
    if (rn.degree() >= 1 || rd.degree() >= 1)
        throw UnsupportedScenarioError("omega order differs inside a block");
    return mn - md;
}

long Scenario::omega_order_at_infinity() const {
    QRationalMap om = omega_map();
    // omega = r(z) dz and dz has a double pole at infinity
    return om.order_at_infinity() - 2;
}

// --- evaluation ---

EvalResult Scenario::evaluate(const IterateState& st, const BigComplex& z) const {
    mpfr_prec_t p = std::max<mpfr_prec_t>(prec_, z.prec()) + 64;
    EvalResult res;
    if (st.zero_function) {
        res.value = BigComplex(0.0, 0.0, p);
        return res;
    }
    if (is_rational_like()) {
        CPoly num = to_cpoly(st.rat.num(), p);
        CPoly den = to_cpoly(st.rat.den(), p);
        BigComplex nv = num.eval(z), dv = den.eval(z);
        BigReal scale(0l, p);
        BigReal az = abs(z), power(1l, p);
        for (const auto& c : den.coeffs()) {
            scale += abs(c) * power;
            power *= az;
        }
        res.near_pole = !(scale.is_zero()) && abs(dv) < ldexp2(scale, -(long)prec_ / 2);
        res.value = nv / dv;
        return res;
    }
    if (is_elliptic()) {
        const auto& hf = hat_form();
        auto [wpv, wpd] = lattice().wp(z);
        BigComplex mu2 = hf.mu * hf.mu;
        BigComplex xh = wpv / mu2;
        BigComplex yh = wpd / (mu2 * hf.mu);
        CurveParams<GaussianRational> curve = st.ell.curve();
        CPoly n0 = to_cpoly(st.ell.n0(), p), n1 = to_cpoly(st.ell.n1(), p);
        BigComplex num = n0.eval(xh) + n1.eval(xh) * yh;
        BigComplex cv = to_cpoly(curve.c(), p).eval(xh);
        BigComplex den(1.0, 0.0, p);
        for (long j = 0; j < st.ell.den_power(); ++j) den *= cv;
        res.near_pole = abs(cv) < ldexp2(std::max(BigReal(1l, p), abs(xh)), -(long)prec_ / 2) &&
                        st.ell.den_power() > 0;
        res.value = pow_si(hf.mu, st.mu_power) * (num / den);
        return res;
    }
    // superelliptic: principal branch of the closed form
    {
        const auto& data = std::get<SuperellipticData>(data_);
        long n = st.n;
        CPoly P = to_cpoly(data.P, p), Q = to_cpoly(data.Q, p), V = to_cpoly(st.vn, p);
        BigComplex pv = P.eval(z), qv = Q.eval(z);
        // w^(n) = V / (ell^n * (P^(n ell - 1) Q^(n ell + 1))^(1/ell)), principal root
        BigComplex inner = pow_si(pv, n * data.ell - 1) * pow_si(qv, n * data.ell + 1);
        BigComplex root = rootn(inner, (unsigned long)data.ell);
        BigComplex denv = pow_si(BigComplex((double)data.ell, 0.0, p), n) * root;
        res.near_pole = abs(denv) < ldexp2(BigReal(1l, p), -(long)prec_ / 2);
        res.value = V.eval(z) / denv;
        return res;
    }
}

// --- recurrences ---

QPoly superelliptic_step(const QPoly& Vn, const QPoly& P, const QPoly& Q, long ell, long n) {
    GaussianRational l(ell);
    GaussianRational a(n * ell - 1), b(n * ell + 1);
    return l * (P * Q * Vn.derivative()) - (a * (P.derivative() * Q) + b * (P * Q.derivative())) * Vn;
}

QPoly circle_step(const QPoly& Un_minus_1, long n) {
    QPoly z = QPoly::identity();
    QPoly one_minus_z2({GaussianRational(1), GaussianRational(0), GaussianRational(-1)});
    return GaussianRational(2 * n - 3) * (z * Un_minus_1) + one_minus_z2 * Un_minus_1.derivative();
}

QPoly circle_un(long n) {
    if (n < 1) throw InvalidInputError("circle_un: n >= 1");
    QPoly u = QPoly::identity();  // U_1 = z
    for (long k = 2; k <= n; ++k) u = circle_step(u, k);
    return u;
}

}  // namespace voronome
