#pragma once

// Reproducible pipelines behind the CLI subcommands: every operation writes
// deterministic CSV/SVG artifacts and the run command assembles a manifest.

#include <filesystem>
#include <string>
#include <vector>

#include "voronome/io.hpp"
#include "voronome/scenario.hpp"

namespace voronome::pipeline {

struct Options {
    long n = 20;
    int grid = 256;
    bool fast = false;
    std::filesystem::path out_dir = ".";
    unsigned long seed = 0;
    mpfr_prec_t precision = 0;  // 0 keeps the scenario default
};

using Paths = std::vector<std::filesystem::path>;

Paths run_iterate(const Scenario& s, const Options& opt);
Paths run_roots(const Scenario& s, const Options& opt);
Paths run_ppl(const Scenario& s, const Options& opt);
Paths run_voronoi(const Scenario& s, const Options& opt);
Paths run_measure(const Scenario& s, const Options& opt);
Paths run_spectral_scan(const Scenario& s, const Options& opt);
Paths run_reconstruct(const Scenario& s, const Options& opt);
Paths run_orlov_check(const Options& opt);
Paths run_figure(const std::string& name, const Options& opt);

std::vector<std::string> figure_names();
// scenario description text used by the named figures
std::string builtin_scenario(const std::string& name);

// config: {"scenario": <path or inline object>, "steps": [...], "out": dir,
//          "n": ..., "grid": ..., "precision": ..., "seed": ...}
io::Manifest run_pipeline(const std::filesystem::path& config_file);

}  // namespace voronome::pipeline
