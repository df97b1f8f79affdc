#pragma once

// Empirical root-counting measures of iterates and the predicted asymptotic
// measure mu/A + (1/A) sum (d_p - 1) delta_p, with quantitative comparison of
// zeros against the Cauchy distribution on Voronoi edges.

#include "voronome/flatgeo.hpp"
#include "voronome/roots.hpp"
#include "voronome/scenario.hpp"

namespace voronome::measures {

struct Atom {
    std::complex<double> point;
    bool at_infinity = false;
    mpq_class weight;  // exact rational weight
};

struct EmpiricalMeasure {
    std::vector<Atom> atoms;
    mpq_class total;
    long n = 0;           // iterate index
    long Zn = 0;          // total zero mass
    bool degraded = false;  // built from an uncertified root set
};

enum class Normalization { Counting, Probability };

// atoms from the finite roots plus the symbolic orders at the non-affine
// tagged points of the divisor
EmpiricalMeasure empirical_measure(const RootSet& rs, const Divisor& divisor, long n,
                                   Normalization norm);

// convenience: solve the finite zeros of the iterate and assemble the measure
EmpiricalMeasure empirical_measure_of(const Scenario& s, const IterateState& st,
                                      Normalization norm);

struct AsymptoticAtom {
    std::string label;
    std::complex<double> point;
    bool at_infinity = false;
    mpq_class weight;  // (d_p - 1)/A exactly
};

struct AsymptoticMeasure {
    long A = 0;
    std::vector<flatgeo::CauchyEdgeMeasure> edge_parts;  // carries mass edge_mass/A
    std::vector<AsymptoticAtom> atoms;
    double edge_mass = 0;  // total Cauchy mass of the diagram (before dividing by A)

    double total_mass() const;
};

AsymptoticMeasure asymptotic_measure(const Scenario& s, const flatgeo::VoronoiDiagram& diagram);

struct ProjectionReport {
    long assigned = 0;
    long outliers = 0;
    double outlier_fraction = 0;
    double max_distance = 0;
    std::vector<int> edge_of_atom;  // -1 for outliers
    std::vector<double> distance_of_atom;
};

// assign each finite atom to the nearest diagram edge point; outlier when the
// distance exceeds eps_out (developed units, scaled by the diagram diameter)
ProjectionReport project_to_diagram(const EmpiricalMeasure& em,
                                    const flatgeo::VoronoiDiagram& diagram,
                                    const flatgeo::ChartSpec& chart, double eps_out = 0.05);

struct EdgeComparison {
    bool enough_data = false;
    long atom_count = 0;
    double sup_cdf_distance = 0;  // Kolmogorov distance in the Theta variable
    std::vector<double> thetas;   // sorted atom positions in Theta units
    std::vector<double> gaps;     // consecutive Theta gaps
};

EdgeComparison compare_on_edge(const EmpiricalMeasure& em, const flatgeo::CauchyEdgeMeasure& cem,
                               const flatgeo::VoronoiEdge& edge, const flatgeo::ChartSpec& chart,
                               double assign_tol = 0.05);

}  // namespace voronome::measures
