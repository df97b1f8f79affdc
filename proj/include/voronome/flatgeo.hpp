#pragma once

// Developed-plane geometry: explicit cover charts, Voronoi diagrams among
// developed lifts of the principal polar locus, pullback curves on the
// surface, critical radius, Voronoi index, and the Cauchy edge measure.
//
// Geometry runs in double precision on top of the multiprecision site data;
// every acceptance tolerance downstream is far above 1e-12.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "voronome/ppl.hpp"

namespace voronome::flatgeo {

using P2 = std::complex<double>;

// double-precision Weierstrass evaluator (Fourier series in the nome)
struct WpDouble {
    P2 tau;
    P2 h;  // e^{2 pi i tau}
    int terms = 0;

    static WpDouble make(P2 tau);
    P2 reduce(P2 z) const;  // centered fundamental domain
    std::pair<P2, P2> eval(P2 z) const;
};

enum class ChartFamily { PlaneDz, MonomialCone, TorusDz, WpCover, CyclicBranched };

struct SiteInfo {
    P2 dev;               // developed position
    bool is_apex = false;  // cone apex (monomial chart with the apex in the PPL)
    int ppl_point = -1;    // index into the PplReport point list
    P2 surface;            // surface position (where meaningful)
    std::string label;
};

struct ChartSpec {
    ChartFamily family = ChartFamily::PlaneDz;
    long ell = 0;         // MonomialCone: omega = z^(-ell) dz
    P2 omega_scale{1, 0}; // PlaneDz: omega = c dz
    P2 tau;               // torus families
    WpDouble wp;          // WpCover
    std::array<P2, 3> wp_e{};  // WpCover: developed half-period images
    std::vector<SiteInfo> sites;
    bool apex_in_ppl = false;  // MonomialCone
    double scale = 1.0;        // typical developed length scale

    // developing map (defined away from branch/apex points)
    P2 forward(P2 z) const;
};

struct VoronoiEdge {
    int a = -1, b = -1;  // site indices
    P2 A, B;             // developed site pair
    P2 M, dir;           // edge line: P(t) = M + t*dir, |dir| = 1
    double t0 = 0, t1 = 0;       // may be +-infinity
    bool unbounded0 = false, unbounded1 = false;
    std::vector<P2> pullback;    // sampled surface curve (z-plane / torus coords)
};

struct VoronoiVertex {
    P2 pos;
    int degree = 0;
};

struct VoronoiDiagram {
    std::vector<SiteInfo> sites;
    std::vector<VoronoiEdge> edges;
    std::vector<VoronoiVertex> vertices;
    ChartFamily family = ChartFamily::PlaneDz;
    P2 tau;
    bool merged_duplicate_sites = false;

    bool empty() const { return edges.empty(); }
};

// Voronoi diagram of distinct sites in the plane; duplicate sites within tol
// are merged (with a warning flag on the diagram)
VoronoiDiagram planar_voronoi(const std::vector<P2>& sites);

// quotient diagram on C/(Z + tau Z); sites inside the fundamental domain.
// Realized by (2*tiling+1)^2 lattice tiling and clipping.
VoronoiDiagram periodic_voronoi(const std::vector<P2>& sites, P2 tau, int tiling = 2);

ChartSpec make_chart(const Scenario& s, const PplReport& ppl);

VoronoiDiagram developed_voronoi(const ChartSpec& chart, const PplReport& ppl);

// distances from z to every visible developed lift, ascending (site index per entry)
std::vector<std::pair<double, int>> developed_distances(const ChartSpec& chart, P2 z);
double critical_radius(const ChartSpec& chart, P2 z);
// number of nearest lifts within relative tie tolerance; points within tol of
// the PPL itself return 1 by convention
int voronoi_index(const ChartSpec& chart, P2 z, double tie_rel_tol = 1e-9);

// Cauchy measure of one edge: density |A-B| / (2 pi |P-A| |P-B|) against
// euclidean length, with the closed-form cumulative in the angle variable
struct CauchyEdgeMeasure {
    P2 A, B;
    P2 M, dir;
    double h = 0;  // |A-B|/2
    double t0 = 0, t1 = 0;

    double density_at(double t) const;
    double cdf(double t) const;  // Theta in (0,1) along the full bisector line
    double mass() const { return cdf(t1) - cdf(t0); }
    // Theta value of a developed point assumed to lie on the edge line
    double theta_of(P2 p) const;
    double t_of(P2 p) const;
};

CauchyEdgeMeasure cauchy_edge_measure(const VoronoiEdge& e);

// total Cauchy mass of the diagram (each quotient edge once)
double diagram_mass(const VoronoiDiagram& d);

// zero-contour sampler: marching squares on an n x n grid with one local
// refinement pass near sign changes; masked cells are skipped
std::vector<P2> trace_zero_set(const std::function<double(P2)>& h,
                               const std::function<bool(P2)>& mask, double x0, double x1,
                               double y0, double y1, int n);

}  // namespace voronome::flatgeo
