#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "voronome/pipeline.hpp"

using namespace voronome;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kFirstExample =
    R"({"kind":"rational_p1","omega":{"num":["1"],"den":["1"]},)"
    R"("f":{"num":["2i"],"den":["1","0","1"]},"precision":256})";

}  // namespace

TEST_CASE("scenario parsing: kinds, rational literals, errors") {
    Scenario s = io::parse_scenario(kFirstExample);
    CHECK(s.kind() == ScenarioKind::RationalP1);
    CHECK(s.precision() == 256);
    CHECK(s.rational_data().f0.den().degree() == 2);

    CHECK_THROWS_AS(io::parse_scenario("{"), InvalidInputError);
    CHECK_THROWS_AS(io::parse_scenario(R"({"kind":"nope"})"), InvalidInputError);
    CHECK_THROWS_AS(io::parse_scenario(R"({"kind":"elliptic_dz","tau":"third"})"),
                    InvalidInputError);
    CHECK_THROWS_AS(io::parse_scenario(R"({"kind":"rational_p1","precision":16,)"
                                       R"("omega":{"num":["1"]},"f":{"num":["1"]}})"),
                    InvalidInputError);

    Scenario hex = io::parse_scenario(R"json({"kind":"elliptic_wp_prime","tau":"exp(i*pi/3)"})json");
    CHECK(hex.kind() == ScenarioKind::EllipticWpPrime);
}

TEST_CASE("pipeline produces deterministic CSV bytes") {
    auto dir1 = std::filesystem::temp_directory_path() / "voro_det1";
    auto dir2 = std::filesystem::temp_directory_path() / "voro_det2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    Scenario s = io::parse_scenario(kFirstExample);
    s.set_name("det");
    pipeline::Options o1;
    o1.n = 9;
    o1.out_dir = dir1;
    pipeline::Options o2 = o1;
    o2.out_dir = dir2;
    auto f1 = pipeline::run_roots(s, o1);
    auto f2 = pipeline::run_roots(s, o2);
    REQUIRE(f1.size() == f2.size());
    for (size_t i = 0; i < f1.size(); ++i) CHECK(slurp(f1[i]) == slurp(f2[i]));
    auto g1 = pipeline::run_measure(s, o1);
    auto g2 = pipeline::run_measure(s, o2);
    for (size_t i = 0; i < g1.size(); ++i) CHECK(slurp(g1[i]) == slurp(g2[i]));
}

TEST_CASE("run_pipeline writes a manifest with hashes; config errors are reported") {
    auto dir = std::filesystem::temp_directory_path() / "voro_pipe";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto cfg = dir / "config.json";
    {
        std::ofstream out(cfg);
        out << R"({"scenario": )" << kFirstExample << R"(, "out": ")" << dir.string()
            << R"(", "n": 8, "steps": ["iterate", "ppl", "roots", "voronoi", "measure"]})";
    }
    io::Manifest m = pipeline::run_pipeline(cfg);
    CHECK(m.error.empty());
    CHECK(m.steps_completed.size() == 5);
    CHECK(m.files.size() >= 5);
    for (const auto& f : m.files) {
        CHECK(f.bytes > 0);
        CHECK(f.hash == io::fnv1a64(slurp(f.path)));
    }

    auto bad = dir / "bad.json";
    {
        std::ofstream out(bad);
        out << R"({"scenario": {"kind": "unknown"}, "steps": ["iterate"]})";
    }
    io::Manifest mb = pipeline::run_pipeline(bad);
    CHECK(!mb.error.empty());
    CHECK(mb.failing_step == "config");
    CHECK(mb.files.empty());
}

TEST_CASE("figure names are validated") {
    auto names = pipeline::figure_names();
    CHECK(names.size() == 5);
    CHECK_THROWS_AS(pipeline::builtin_scenario("not-a-figure"), InvalidInputError);
    for (const auto& n : names) CHECK(!pipeline::builtin_scenario(n).empty());
}

TEST_CASE("figure first-ex passes its data gate and writes files (fast)") {
    auto dir = std::filesystem::temp_directory_path() / "voro_fig";
    std::filesystem::remove_all(dir);
    pipeline::Options opt;
    opt.fast = true;
    opt.out_dir = dir;
    auto files = pipeline::run_figure("first-ex", opt);
    CHECK(files.size() >= 2);
    for (const auto& f : files) CHECK(std::filesystem::file_size(f) > 0);
}
