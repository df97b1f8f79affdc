#pragma once

// File formats: scenario description files (JSON with bit-exact rational
// literals), CSV with full-precision decimal output, minimal SVG figures, and
// the run manifest.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voronome/scenario.hpp"

namespace voronome::io {

// Scenario description schema (JSON):
//   kind:      "rational_p1" | "monomial" | "superelliptic" |
//              "elliptic_dz" | "elliptic_wp_prime"
//   precision: bits (optional, default 256)
//   omega:     {num: [...], den: [...]}          (rational_p1)
//   ell:       integer                           (monomial, superelliptic)
//   f:         {num: [...], den: [...]}          (rational_p1, monomial)
//   P, Q:      [...]                             (superelliptic)
//   tau:       "exp(i*pi/3)" | "i" | {re: "...", im: "..."}  (elliptic kinds)
// Polynomial coefficient lists are ascending in degree; every entry is a
// bit-exact Gaussian-rational literal "p/q+r/s i".
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(const std::string& json_text);

struct CsvWriter {
    explicit CsvWriter(std::vector<std::string> columns) : cols(std::move(columns)) {}
    std::vector<std::string> cols;
    std::vector<std::string> comments;  // emitted as leading '#' lines
    std::vector<std::vector<std::string>> rows;

    void comment(std::string line) { comments.push_back(std::move(line)); }
    void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    std::string str() const;
    void save(const std::filesystem::path& file) const;
};

std::string fmt_double(double v);

struct SvgCanvas {
    double x0, y0, x1, y1;  // data viewport (y up)
    double pixels = 760;
    std::string body;

    SvgCanvas(double x0_, double y0_, double x1_, double y1_)
        : x0(x0_), y0(y0_), x1(x1_), y1(y1_) {}

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double width, bool dashed = false);
    void segments(const std::vector<std::pair<std::pair<double, double>,
                                              std::pair<double, double>>>& segs,
                  const std::string& color, double width);
    void dots(const std::vector<std::pair<double, double>>& pts, const std::string& color,
              double radius);
    void text(double x, double y, const std::string& s, const std::string& color = "#333");
    std::string str() const;
    void save(const std::filesystem::path& file) const;
};

uint64_t fnv1a64(const std::string& bytes);

struct ManifestEntry {
    std::string path;
    uint64_t bytes = 0;
    uint64_t hash = 0;
};

struct Manifest {
    std::vector<ManifestEntry> files;
    std::vector<std::string> steps_completed;
    std::string error;  // empty on success
    std::string failing_step;

    void record(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
};

}  // namespace voronome::io
