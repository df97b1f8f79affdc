// voro: iterate f -> df/omega on concrete Riemann-surface scenarios, extract
// zeros, build flat-metric Voronoi diagrams and Cauchy measures, and compare
// the empirical root distribution against the predicted asymptotic one.

#include <CLI11.hpp>

#include <iostream>

#include "voronome/pipeline.hpp"

using namespace voronome;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCertification = 3;

int guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kExitCertification;
    } catch (const ResourceError& e) {
        std::cerr << "resource failure: " << e.what() << " (step " << e.step_reached << ")\n";
        return kExitCertification;
    } catch (const InvalidInputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnsupportedScenarioError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnsupportedChartError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voro: zeros of iterated df/omega and flat Voronoi geometry"};
    app.require_subcommand(1);

    std::string scenario_file, figure_name, config_file;
    pipeline::Options opt;
    long precision_bits = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
        if (needs_scenario)
            cmd->add_option("--scenario", scenario_file, "scenario description file (JSON)")
                ->required();
        cmd->add_option("--n", opt.n, "iteration count");
        cmd->add_option("--precision", precision_bits, "working precision in bits");
        cmd->add_option("--grid", opt.grid, "grid resolution");
        cmd->add_flag("--fast", opt.fast, "desk-scale parameters for quick runs");
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--seed", opt.seed, "random seed for sampled checks");
    };

    auto* c_iterate = app.add_subcommand("iterate", "iterate T and audit the divisor");
    add_common(c_iterate, true);
    auto* c_roots = app.add_subcommand("roots", "zeros of the n-th iterate as CSV");
    add_common(c_roots, true);
    auto* c_ppl = app.add_subcommand("ppl", "principal polar locus report and growth audit");
    add_common(c_ppl, true);
    auto* c_vor = app.add_subcommand("voronoi", "developed Voronoi diagram (CSV + SVG)");
    add_common(c_vor, true);
    auto* c_measure = app.add_subcommand("measure", "empirical vs asymptotic measure");
    add_common(c_measure, true);
    auto* c_spec = app.add_subcommand("spectral-scan", "coefficient-based scan and edge cloud");
    add_common(c_spec, true);
    auto* c_rec = app.add_subcommand("reconstruct", "Delaunay dual and flat gluing report");
    add_common(c_rec, true);
    auto* c_orlov = app.add_subcommand("orlov-check", "coefficient asymptotics validation");
    add_common(c_orlov, false);
    auto* c_fig = app.add_subcommand("figure", "regenerate a named figure");
    c_fig->add_option("--name", figure_name, "first-ex | trefoil | torus1 | torus2 | delaunay")
        ->required();
    add_common(c_fig, false);
    auto* c_run = app.add_subcommand("run", "run a pipeline config; writes a manifest");
    c_run->add_option("--config", config_file, "pipeline config (JSON)")->required();
    c_run->add_option("--out", opt.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    if (precision_bits) opt.precision = precision_bits;

    auto report = [](const pipeline::Paths& files) {
        for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    };
    auto load = [&]() { return io::load_scenario(scenario_file); };

    if (c_iterate->parsed()) return guarded([&] { report(pipeline::run_iterate(load(), opt)); });
    if (c_roots->parsed()) return guarded([&] { report(pipeline::run_roots(load(), opt)); });
    if (c_ppl->parsed()) return guarded([&] { report(pipeline::run_ppl(load(), opt)); });
    if (c_vor->parsed()) return guarded([&] { report(pipeline::run_voronoi(load(), opt)); });
    if (c_measure->parsed()) return guarded([&] { report(pipeline::run_measure(load(), opt)); });
    if (c_spec->parsed())
        return guarded([&] { report(pipeline::run_spectral_scan(load(), opt)); });
    if (c_rec->parsed()) return guarded([&] { report(pipeline::run_reconstruct(load(), opt)); });
    if (c_orlov->parsed()) return guarded([&] { report(pipeline::run_orlov_check(opt)); });
    if (c_fig->parsed())
        return guarded([&] { report(pipeline::run_figure(figure_name, opt)); });
    if (c_run->parsed()) {
        io::Manifest m = pipeline::run_pipeline(config_file);
        std::filesystem::create_directories(opt.out_dir);
        m.save(opt.out_dir / "manifest.json");
        std::cout << "wrote " << (opt.out_dir / "manifest.json").string() << "\n";
        if (!m.error.empty()) {
            std::cerr << "pipeline failed at step '" << m.failing_step << "': " << m.error << "\n";
            return m.failing_step == "config" ? kExitConfig : kExitCertification;
        }
        return kExitOk;
    }
    return kExitConfig;
}
