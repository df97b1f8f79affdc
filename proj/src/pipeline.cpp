#include "voronome/pipeline.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "voronome/measures.hpp"
#include "voronome/ppl.hpp"
#include "voronome/reconstruct.hpp"
#include "voronome/spectral.hpp"

namespace voronome::pipeline {

using nlohmann::json;
using io::CsvWriter;
using io::SvgCanvas;
using io::fmt_double;

namespace {

Scenario with_precision(Scenario s, const Options& opt) {
    if (opt.precision >= 64) s.set_precision(opt.precision);
    return s;
}

std::filesystem::path outfile(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return opt.out_dir / name;
}

std::vector<std::pair<double, double>> to_xy(const std::vector<measures::Atom>& atoms) {
    std::vector<std::pair<double, double>> out;
    for (const auto& a : atoms)
        if (!a.at_infinity) out.push_back({a.point.real(), a.point.imag()});
    return out;
}

void draw_diagram(SvgCanvas& svg, const flatgeo::VoronoiDiagram& d, const std::string& color) {
    for (const auto& e : d.edges) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : e.pullback) pts.push_back({p.real(), p.imag()});
        if (pts.size() >= 2 && (d.family == flatgeo::ChartFamily::WpCover ||
                                d.family == flatgeo::ChartFamily::MonomialCone)) {
            // sampled clouds, draw as dots
            svg.dots(pts, color, 1.2);
        } else {
            svg.polyline(pts, color, 1.6, true);
        }
    }
    std::vector<std::pair<double, double>> sites;
    for (const auto& s : d.sites) sites.push_back({s.surface.real(), s.surface.imag()});
    svg.dots(sites, "#d62728", 4.0);
}

}  // namespace

Paths run_iterate(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    auto trail = s.iterate_trail(opt.n);
    CsvWriter csv({"n", "Zn", "dZ", "divisor"});
    csv.comment("divisor audit of T^n f for scenario " + s.name());
    long prev = 0;
    for (const auto& st : trail) {
        std::ostringstream div;
        for (const auto& e : st.divisor.entries)
            div << e.tag.label << ":" << e.order << (e.aggregate ? "(total)" : "") << " ";
        long zn = st.divisor.pole_mass();
        csv.row({std::to_string(st.n), std::to_string(zn), std::to_string(st.n ? zn - prev : 0),
                 div.str()});
        prev = zn;
    }
    auto path = outfile(opt, s.name() + "_iterate.csv");
    csv.save(path);
    return {path};
}

Paths run_roots(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    IterateState st = s.iterate(opt.n);
    auto em = measures::empirical_measure_of(s, st, measures::Normalization::Counting);
    CsvWriter csv({"re", "im", "multiplicity", "at_infinity"});
    csv.comment("zeros of T^" + std::to_string(opt.n) + " f, scenario " + s.name());
    csv.comment("precision_bits=" + std::to_string(s.precision()));
    for (const auto& a : em.atoms)
        csv.row({fmt_double(a.point.real()), fmt_double(a.point.imag()),
                 a.weight.get_str(), a.at_infinity ? "1" : "0"});
    auto path = outfile(opt, s.name() + "_roots_n" + std::to_string(opt.n) + ".csv");
    csv.save(path);
    return {path};
}

Paths run_ppl(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    PplReport rep = principal_polar_locus(s);
    CsvWriter csv({"label", "kind", "re", "im", "at_infinity", "a_z"});
    csv.comment("principal polar locus, A=" + std::to_string(rep.A));
    for (const auto& p : rep.points) {
        if (p.at_infinity) {
            csv.row({p.tag.label, p.kind == PplPoint::PoleOfF ? "pole_of_f" : "unfactorised_zero",
                     "", "", "1", std::to_string(p.a_z)});
        } else {
            for (const auto& pos : p.positions) {
                auto [x, y] = pos.to_doubles();
                csv.row({p.tag.label,
                         p.kind == PplPoint::PoleOfF ? "pole_of_f" : "unfactorised_zero",
                         fmt_double(x), fmt_double(y), "0", std::to_string(p.a_z)});
            }
        }
    }
    auto path = outfile(opt, s.name() + "_ppl.csv");
    csv.save(path);

    GrowthAudit audit = growth_audit(s, 0, std::max<long>(opt.n, 8));
    CsvWriter acsv({"n", "Zn", "dZ"});
    acsv.comment("growth audit; A=" + std::to_string(audit.A) +
                 " stabilization_index=" + std::to_string(audit.stabilization_index));
    for (const auto& r : audit.rows)
        acsv.row({std::to_string(r.n), std::to_string(r.Zn), std::to_string(r.dZ)});
    auto apath = outfile(opt, s.name() + "_growth.csv");
    acsv.save(apath);
    return {path, apath};
}

Paths run_voronoi(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    PplReport rep = principal_polar_locus(s);
    auto chart = flatgeo::make_chart(s, rep);
    auto diagram = flatgeo::developed_voronoi(chart, rep);

    CsvWriter csv({"edge", "site_a", "site_b", "x", "y"});
    csv.comment("voronoi edges (pullback samples), scenario " + s.name());
    for (size_t ei = 0; ei < diagram.edges.size(); ++ei)
        for (const auto& p : diagram.edges[ei].pullback)
            csv.row({std::to_string(ei), std::to_string(diagram.edges[ei].a),
                     std::to_string(diagram.edges[ei].b), fmt_double(p.real()),
                     fmt_double(p.imag())});
    auto path = outfile(opt, s.name() + "_voronoi.csv");
    csv.save(path);

    double R = 2.2;
    for (const auto& si : diagram.sites) R = std::max({R, std::abs(si.surface) * 1.4});
    SvgCanvas svg(-R, -R, R, R);
    draw_diagram(svg, diagram, "#1f77b4");
    auto spath = outfile(opt, s.name() + "_voronoi.svg");
    svg.save(spath);
    return {path, spath};
}

Paths run_measure(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    IterateState st = s.iterate(opt.n);
    auto em = measures::empirical_measure_of(s, st, measures::Normalization::Probability);
    PplReport rep = principal_polar_locus(s);
    auto chart = flatgeo::make_chart(s, rep);
    auto diagram = flatgeo::developed_voronoi(chart, rep);
    auto am = measures::asymptotic_measure(s, diagram);
    auto proj = measures::project_to_diagram(em, diagram, chart);

    CsvWriter csv({"edge", "theta", "gap", "sup_cdf_distance"});
    csv.comment("per-edge Cauchy comparison, scenario " + s.name() +
                ", n=" + std::to_string(opt.n));
    for (size_t ei = 0; ei < diagram.edges.size(); ++ei) {
        auto cem = flatgeo::cauchy_edge_measure(diagram.edges[ei]);
        auto cmp = measures::compare_on_edge(em, cem, diagram.edges[ei], chart);
        if (!cmp.enough_data) continue;
        for (size_t i = 0; i < cmp.thetas.size(); ++i)
            csv.row({std::to_string(ei), fmt_double(cmp.thetas[i]),
                     i < cmp.gaps.size() ? fmt_double(cmp.gaps[i]) : "",
                     i == 0 ? fmt_double(cmp.sup_cdf_distance) : ""});
    }
    auto path = outfile(opt, s.name() + "_measure_n" + std::to_string(opt.n) + ".csv");
    csv.save(path);

    CsvWriter sum({"quantity", "value"});
    sum.row({"n", std::to_string(opt.n)});
    sum.row({"Zn", std::to_string(em.Zn)});
    sum.row({"A", std::to_string(am.A)});
    sum.row({"asymptotic_total_mass", fmt_double(am.total_mass())});
    sum.row({"edge_mass", fmt_double(am.edge_mass)});
    sum.row({"outlier_fraction", fmt_double(proj.outlier_fraction)});
    for (const auto& a : am.atoms)
        sum.row({"atom_" + a.label, fmt_double(a.weight.get_d())});
    auto spath = outfile(opt, s.name() + "_measure_summary_n" + std::to_string(opt.n) + ".csv");
    sum.save(spath);
    return {path, spath};
}

Paths run_spectral_scan(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    double R = 2.0;
    // coarse estimator grid in the open region
    int g = std::max(4, opt.grid / 32);
    CsvWriter csv({"re", "im", "rho_hat", "rho_err", "abs_d_hat", "m0_hat", "flags"});
    csv.comment("spectral scan, N=" + std::to_string(opt.fast ? 60 : 120));
    long N = opt.fast ? 60 : 120;
    PplReport rep = principal_polar_locus(s);
    auto chart = flatgeo::make_chart(s, rep);
    for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i) {
            double x = -R + (i + 0.5) * 2 * R / g, y = -R + (j + 0.5) * 2 * R / g;
            BigComplex z(x, y, s.precision());
            double rr;
            try {
                rr = flatgeo::critical_radius(chart, {x, y});
            } catch (const Error&) {
                rr = 0;
            }
            if (rr < 0.15) continue;  // masked near the singular set
            try {
                auto track = spectral::taylor_coeffs(s, z, N);
                auto rad = spectral::estimate_radius(track);
                auto sing = spectral::track_singularity(track);
                std::string flags;
                if (sing.edge_flag) flags += "edge;";
                if (sing.multi_flag) flags += "multi;";
                csv.row({fmt_double(x), fmt_double(y), fmt_double(rad.value),
                         fmt_double(rad.error_bar), fmt_double(sing.abs_d_hat),
                         sing.have_m0 ? fmt_double(sing.m0_hat) : "",
                         flags.empty() ? "ok" : flags});
            } catch (const Error& e) {
                csv.row({fmt_double(x), fmt_double(y), "", "", "", "", e.what()});
            }
        }
    auto path = outfile(opt, s.name() + "_spectral.csv");
    csv.save(path);

    // edge cloud on the requested grid
    spectral::EdgeScanOptions eo;
    eo.grid = opt.grid;
    eo.N = opt.fast ? 80 : 160;
    auto cloud = spectral::detect_edges(s, -R, R, -R, R, eo);
    CsvWriter ccsv({"re", "im"});
    ccsv.comment("edge-indicator cloud, grid=" + std::to_string(opt.grid));
    for (const auto& p : cloud) ccsv.row({fmt_double(p.real()), fmt_double(p.imag())});
    auto cpath = outfile(opt, s.name() + "_edges.csv");
    ccsv.save(cpath);

    SvgCanvas svg(-R, -R, R, R);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : cloud) pts.push_back({p.real(), p.imag()});
    svg.dots(pts, "#1f77b4", 1.2);
    auto spath = outfile(opt, s.name() + "_edges.svg");
    svg.save(spath);
    return {path, cpath, spath};
}

Paths run_reconstruct(const Scenario& s0, const Options& opt) {
    Scenario s = with_precision(s0, opt);
    PplReport rep = principal_polar_locus(s);
    auto chart = flatgeo::make_chart(s, rep);
    auto diagram = flatgeo::developed_voronoi(chart, rep);
    auto glue = reconstruct::gluing_report(s, diagram, chart);

    std::ostringstream os;
    os << "saddle connections:\n";
    for (size_t i = 0; i < glue.connections.size(); ++i) {
        const auto& c = glue.connections[i];
        os << "  [" << i << "] site" << c.from_site << " -> site" << c.to_site << " sheet "
           << c.sheet << "  period = " << fmt_double(c.period.real()) << " + "
           << fmt_double(c.period.imag()) << "i  |period| = " << fmt_double(std::abs(c.period))
           << "\n";
    }
    os << "faces:\n";
    for (const auto& f : glue.faces) {
        os << "  " << f.name << ": " << f.connection_ids.size()
           << "-gon, closure residual = " << fmt_double(std::abs(f.closure_residual))
           << ", interior angles:";
        for (double a : f.interior_angles) os << " " << fmt_double(a);
        os << "\n";
    }
    os << "cone angles:\n";
    for (const auto& c : glue.cones)
        os << "  " << c.label << ": " << fmt_double(c.angle) << " (" << fmt_double(c.angle / M_PI)
           << " pi)\n";
    os << "edge pairings (face,side)x2:\n";
    for (const auto& p : glue.pairings)
        os << "  (" << p[0] << "," << p[1] << ") <-> (" << p[2] << "," << p[3] << ")\n";
    os << "gauss-bonnet defect: " << fmt_double(glue.gauss_bonnet_defect) << "\n";
    auto path = outfile(opt, s.name() + "_gluing.txt");
    std::ofstream(path) << os.str();

    // developed faces
    double R = 0.1;
    for (const auto& f : glue.faces)
        for (const auto& v : f.developed_vertices) R = std::max({R, std::abs(v) * 1.3});
    SvgCanvas svg(-R, -R, R, R);
    const char* colors[3] = {"#2ca02c", "#ff7f0e", "#9467bd"};
    int ci = 0;
    for (const auto& f : glue.faces) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& v : f.developed_vertices) pts.push_back({v.real(), v.imag()});
        if (!pts.empty()) pts.push_back(pts.front());
        svg.polyline(pts, colors[ci % 3], 2.0);
        ++ci;
    }
    auto spath = outfile(opt, s.name() + "_faces.svg");
    svg.save(spath);
    return {path, spath};
}

Paths run_orlov_check(const Options& opt) {
    std::ostringstream os;
    long K = opt.fast ? 20000 : 100000;
    for (double alpha : {-1.0, 0.5, -0.5}) {
        auto fit = spectral::orlov_validate({alpha}, K);
        os << "f = (1-x)^(" << alpha << "), K=" << fit.K << ":\n";
        os << "  raw leading-term relative error        = " << fmt_double(fit.raw_rel_err) << "\n";
        os << "  extrapolated leading-term rel. error   = "
           << fmt_double(fit.extrapolated_rel_err) << "\n";
        os << "  fitted correction decay exponent       = " << fmt_double(fit.correction_decay)
           << "\n";
        if (fit.exact_series) os << "  series matches the prediction exactly\n";
    }
    auto path = outfile(opt, "orlov_check.txt");
    std::ofstream(path) << os.str();
    return {path};
}

std::vector<std::string> figure_names() {
    return {"first-ex", "trefoil", "torus1", "torus2", "delaunay"};
}

std::string builtin_scenario(const std::string& name) {
    if (name == "first-ex")
        return R"({"kind":"rational_p1","omega":{"num":["1"],"den":["1"]},)"
               R"("f":{"num":["2i"],"den":["1","0","1"]},"precision":256})";
    if (name == "trefoil")
        return R"({"kind":"monomial","ell":4,"f":{"num":["-1"],"den":["1","1"]},"precision":256})";
    if (name == "torus1") return R"json({"kind":"elliptic_dz","tau":"exp(i*pi/3)","precision":256})json";
    if (name == "torus2" || name == "delaunay")
        return R"json({"kind":"elliptic_wp_prime","tau":"exp(i*pi/3)","precision":256})json";
    throw InvalidInputError("unknown figure name: " + name + " (valid: first-ex, trefoil, " +
                            "torus1, torus2, delaunay)");
}

Paths run_figure(const std::string& name, const Options& opt) {
    Scenario s = io::parse_scenario(builtin_scenario(name));
    s.set_name("fig_" + name);
    Options o = opt;

    if (name == "first-ex") {
        o.n = opt.fast ? 20 : 40;
        IterateState st = s.iterate(o.n);
        auto em = measures::empirical_measure_of(s, st, measures::Normalization::Counting);
        PplReport rep = principal_polar_locus(s);
        auto chart = flatgeo::make_chart(s, rep);
        auto diagram = flatgeo::developed_voronoi(chart, rep);
        // data gate: the real-root law must hold before rendering
        auto cem = flatgeo::cauchy_edge_measure(diagram.edges.at(0));
        auto cmp = measures::compare_on_edge(em, cem, diagram.edges[0], chart);
        if (!cmp.enough_data || (long)cmp.thetas.size() != o.n)
            throw CertificationError("figure first-ex: zeros do not sit on the real axis");
        for (double g : cmp.gaps)
            if (std::abs(g - 1.0 / (o.n + 1)) > 1e-9)
                throw CertificationError("figure first-ex: spacing law failed");
        Paths files = run_roots(s, o);
        SvgCanvas svg(-4.2, -2.1, 4.2, 2.1);
        svg.polyline({{-4.2, 0}, {4.2, 0}}, "#1f77b4", 1.5, true);
        svg.dots(to_xy(em.atoms), "#1f77b4", 3.0);
        svg.dots({{0, 1}, {0, -1}}, "#d62728", 5.0);
        svg.text(0.1, 1.1, "i");
        svg.text(0.1, -1.3, "-i");
        svg.text(-4.0, 1.8, "zeros of the n-th iterate on the real axis, n=" +
                                std::to_string(o.n));
        auto path = outfile(o, "fig_first_ex.svg");
        svg.save(path);
        files.push_back(path);
        return files;
    }
    if (name == "trefoil") {
        o.n = opt.fast ? 40 : 90;
        IterateState st = s.iterate(o.n);
        auto em = measures::empirical_measure_of(s, st, measures::Normalization::Counting);
        PplReport rep = principal_polar_locus(s);
        auto chart = flatgeo::make_chart(s, rep);
        auto diagram = flatgeo::developed_voronoi(chart, rep);
        Paths files = run_roots(s, o);
        SvgCanvas svg(-2.6, -2.6, 2.6, 2.6);
        draw_diagram(svg, diagram, "#2ca02c");
        std::vector<std::pair<double, double>> zs;
        for (const auto& a : em.atoms)
            if (!a.at_infinity && std::abs(a.point) > 1e-9) zs.push_back({a.point.real(), a.point.imag()});
        svg.dots(zs, "#1f77b4", 2.5);
        auto path = outfile(o, "fig_trefoil.svg");
        svg.save(path);
        files.push_back(path);
        return files;
    }
    if (name == "torus1" || name == "torus2") {
        o.n = name == "torus1" ? (opt.fast ? 25 : 45) : (opt.fast ? 15 : 25);
        IterateState st = s.iterate(o.n);
        auto em = measures::empirical_measure_of(s, st, measures::Normalization::Counting);
        PplReport rep = principal_polar_locus(s);
        auto chart = flatgeo::make_chart(s, rep);
        auto diagram = flatgeo::developed_voronoi(chart, rep);
        auto proj = measures::project_to_diagram(em, diagram, chart, 0.05);
        if (proj.outlier_fraction > 0.05)
            throw CertificationError("figure " + name + ": zeros stray from the diagram");
        Paths files = run_roots(s, o);
        double tr = chart.tau.real(), ti = chart.tau.imag();
        SvgCanvas svg(-0.3, -0.3, 1.0 + tr + 0.3, ti + 0.3);
        // fundamental parallelogram
        svg.polyline({{0, 0}, {1, 0}, {1 + tr, ti}, {tr, ti}, {0, 0}}, "#2ca02c", 1.0);
        draw_diagram(svg, diagram, "#1f77b4");
        svg.dots(to_xy(em.atoms), "#08306b", 2.6);
        auto path = outfile(o, "fig_" + name + ".svg");
        svg.save(path);
        files.push_back(path);
        return files;
    }
    if (name == "delaunay") {
        Paths files = run_reconstruct(s, o);
        return files;
    }
    throw InvalidInputError("unknown figure name: " + name);
}

io::Manifest run_pipeline(const std::filesystem::path& config_file) {
    io::Manifest manifest;
    json cfg;
    {
        std::ifstream in(config_file);
        if (!in) {
            manifest.error = "cannot open config " + config_file.string();
            manifest.failing_step = "config";
            return manifest;
        }
        try {
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = json::parse(ss.str());
        } catch (const std::exception& e) {
            manifest.error = std::string("config parse error: ") + e.what();
            manifest.failing_step = "config";
            return manifest;
        }
    }
    Options opt;
    std::optional<Scenario> scen;
    try {
        if (cfg.contains("out")) opt.out_dir = cfg.at("out").get<std::string>();
        if (cfg.contains("n")) opt.n = cfg.at("n").get<long>();
        if (cfg.contains("grid")) opt.grid = cfg.at("grid").get<int>();
        if (cfg.contains("fast")) opt.fast = cfg.at("fast").get<bool>();
        if (cfg.contains("seed")) opt.seed = cfg.at("seed").get<unsigned long>();
        if (cfg.contains("precision")) opt.precision = cfg.at("precision").get<long>();
        if (cfg.contains("scenario")) {
            if (cfg.at("scenario").is_string())
                scen = io::load_scenario(cfg.at("scenario").get<std::string>());
            else
                scen = io::parse_scenario(cfg.at("scenario").dump());
        }
    } catch (const std::exception& e) {
        manifest.error = std::string("config error: ") + e.what();
        manifest.failing_step = "config";
        return manifest;
    }

    auto steps = cfg.value("steps", json::array());
    for (const auto& step : steps) {
        std::string op = step.is_string() ? step.get<std::string>() : step.at("op").get<std::string>();
        Options so = opt;
        if (step.is_object()) {
            if (step.contains("n")) so.n = step.at("n").get<long>();
            if (step.contains("grid")) so.grid = step.at("grid").get<int>();
            if (step.contains("name")) so.out_dir = opt.out_dir;
        }
        try {
            Paths written;
            if (op == "iterate") written = run_iterate(*scen, so);
            else if (op == "roots") written = run_roots(*scen, so);
            else if (op == "ppl") written = run_ppl(*scen, so);
            else if (op == "voronoi") written = run_voronoi(*scen, so);
            else if (op == "measure") written = run_measure(*scen, so);
            else if (op == "spectral-scan") written = run_spectral_scan(*scen, so);
            else if (op == "reconstruct") written = run_reconstruct(*scen, so);
            else if (op == "orlov-check") written = run_orlov_check(so);
            else if (op == "figure") written = run_figure(step.at("name").get<std::string>(), so);
            else throw InvalidInputError("unknown pipeline step: " + op);
            for (const auto& f : written) manifest.record(f);
            manifest.steps_completed.push_back(op);
        } catch (const std::exception& e) {
            manifest.error = e.what();
            manifest.failing_step = op;
            return manifest;
        }
    }
    return manifest;
}

}  // namespace voronome::pipeline
