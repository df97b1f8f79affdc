#pragma once

// Delaunay dual of a Voronoi diagram: saddle connections between the sites,
// their periods, and the flat polygon-gluing model of the surface.

#include <complex>
#include <string>
#include <vector>

#include "voronome/flatgeo.hpp"

namespace voronome::reconstruct {

using C = std::complex<double>;

struct SaddleConnection {
    int from_site = 0, to_site = 0;
    int sheet = 0;            // branch copy for two-sheeted covers
    C period;                 // integral of omega along the connection
    std::vector<C> path;      // polyline representative on the surface
};

struct Face {
    std::string name;
    std::vector<C> developed_vertices;
    std::vector<int> connection_ids;       // boundary sides, in order
    std::vector<int> vertex_sites;         // site at each corner
    std::vector<double> interior_angles;
    C closure_residual;                    // sum of boundary side vectors
};

struct ConePoint {
    std::string label;
    int site = -1;
    double angle = 0;  // total face angle at the identified vertex
};

struct GluingReport {
    std::vector<SaddleConnection> connections;
    std::vector<Face> faces;
    std::vector<ConePoint> cones;
    // each connection id with the two (face, side) slots it glues
    std::vector<std::array<int, 4>> pairings;  // {face1, side1, face2, side2}
    double gauss_bonnet_defect = 0;  // |sum(angle - 2pi)/2pi - sum ord_zero(omega)|
};

// one dual connection per Voronoi edge class
std::vector<SaddleConnection> delaunay_dual(const flatgeo::VoronoiDiagram& diagram,
                                            const flatgeo::ChartSpec& chart);

// periods recomputed by quadrature of omega along the stored paths (elliptic
// charts) or exact developed differences (translation charts); estimated
// error below 1e-8 relative
std::vector<C> periods(const Scenario& s, const std::vector<SaddleConnection>& connections);

GluingReport gluing_report(const Scenario& s, const flatgeo::VoronoiDiagram& diagram,
                           const flatgeo::ChartSpec& chart);

}  // namespace voronome::reconstruct
