#pragma once

// Principal polar locus: the poles of f that are not poles of omega, plus the
// zeros of omega at which f is not locally a function of a primitive of omega.
// Also the growth constant A and the audits of the pole/zero order laws.

#include <string>
#include <vector>

#include "voronome/roots.hpp"
#include "voronome/scenario.hpp"

namespace voronome {

struct PointRef {
    enum Kind { AffineExact, Infinity, HalfPeriod, LatticeOrigin } kind = AffineExact;
    GaussianRational affine;
    int hp_index = 0;  // elliptic half-period 0:1/2, 1:tau/2, 2:(1+tau)/2

    static PointRef at(GaussianRational p) { return {AffineExact, std::move(p), 0}; }
    static PointRef infinity() { return {Infinity, {}, 0}; }
    static PointRef half_period(int j) { return {HalfPeriod, {}, j}; }
};

// The coefficient-index test: f = g(phi) near z0 for a primitive phi of omega.
// z0 must not be a pole of omega. A pole of f at a zero of omega counts as
// unfactorised. The answer is recomputed with a doubled coefficient window and
// must agree.
bool is_locally_factorised(const Scenario& s, const PointRef& z0);

struct PplPoint {
    enum Kind { PoleOfF, UnfactorisedZeroOfOmega } kind = PoleOfF;
    PointTag tag;                        // block / infinity / half-period tag
    bool at_infinity = false;
    std::vector<BigComplex> positions;   // numeric surface positions (empty for infinity)
    long a_z = 0;                        // order of omega at the point, >= 0
    long npoints = 1;
};

struct PplReport {
    std::vector<PplPoint> points;
    long A = 0;  // sum of (a_z + 1) over all PPL points

    long point_count() const {
        long c = 0;
        for (const auto& p : points) c += p.npoints;
        return c;
    }
    bool empty() const { return points.empty(); }
};

PplReport principal_polar_locus(const Scenario& s);

struct GrowthAuditRow {
    long n = 0;
    std::vector<std::pair<std::string, long>> pole_orders;  // label -> order (< 0)
    long Zn = 0;   // total pole mass
    long dZ = 0;   // Zn - Z_{n-1}
};

struct GrowthAudit {
    std::vector<GrowthAuditRow> rows;
    long A = 0;
    long stabilization_index = -1;  // smallest M with dZ == A for all n > M
    bool stabilized = false;
};

GrowthAudit growth_audit(const Scenario& s, long n_min, long n_max);

struct PoleZeroLawResult {
    bool pass = true;
    std::vector<std::string> witnesses;
};

// Verifies at iterate n (past stabilization): zeros of T^n f sit at the poles
// of omega of order d >= 2 with order (d-1)n + b, and simple poles of omega
// that are poles of f carry no zero accumulation.
PoleZeroLawResult pole_zero_law_check(const Scenario& s, long n);

}  // namespace voronome
