#include "voronome/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace voronome::io {

using nlohmann::json;

namespace {

QPoly parse_poly(const json& j) {
    std::vector<GaussianRational> c;
    for (const auto& item : j) c.push_back(GaussianRational::parse(item.get<std::string>()));
    return QPoly(std::move(c));
}

QRationalMap parse_map(const json& j) {
    QPoly num = parse_poly(j.at("num"));
    QPoly den = j.contains("den") ? parse_poly(j.at("den")) : QPoly({GaussianRational(1)});
    return QRationalMap(std::move(num), std::move(den));
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("scenario: invalid JSON: ") + e.what());
    }
    std::string kind = j.at("kind").get<std::string>();
    mpfr_prec_t prec = j.value("precision", 256);
    if (prec < 64) throw InvalidInputError("scenario: precision must be at least 64 bits");

    if (kind == "rational_p1") {
        return Scenario::rational_p1(parse_map(j.at("omega")), parse_map(j.at("f")), prec);
    }
    if (kind == "monomial") {
        return Scenario::monomial(j.at("ell").get<long>(), parse_map(j.at("f")), prec);
    }
    if (kind == "superelliptic") {
        return Scenario::superelliptic(parse_poly(j.at("P")), parse_poly(j.at("Q")),
                                       j.at("ell").get<long>(), prec);
    }
    if (kind == "elliptic_dz" || kind == "elliptic_wp_prime") {
        std::string tau_name;
        if (j.contains("tau") && j.at("tau").is_string()) {
            std::string t = j.at("tau").get<std::string>();
            if (t == "exp(i*pi/3)" || t == "hex") tau_name = "hex";
            else if (t == "i" || t == "square") tau_name = "square";
            else throw InvalidInputError("scenario: unknown named tau: " + t);
            return kind == "elliptic_dz" ? Scenario::elliptic_dz(tau_name, prec)
                                         : Scenario::elliptic_wp_prime(tau_name, prec);
        }
        if (j.contains("tau") && j.at("tau").is_object()) {
            BigReal re = BigReal::parse(j.at("tau").at("re").get<std::string>(), prec);
            BigReal im = BigReal::parse(j.at("tau").at("im").get<std::string>(), prec);
            BigComplex tau(re, im);
            return kind == "elliptic_dz" ? Scenario::elliptic_dz_tau(tau, prec)
                                         : Scenario::elliptic_wp_prime_tau(tau, prec);
        }
        throw InvalidInputError("scenario: elliptic kinds need tau");
    }
    throw InvalidInputError("scenario: unknown kind: " + kind);
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InvalidInputError("scenario: cannot open " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    Scenario s = parse_scenario(ss.str());
    s.set_name(file.stem().string());
    return s;
}

std::string fmt_double(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << "\n";
    for (size_t i = 0; i < cols.size(); ++i) os << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << r[i] << (i + 1 < r.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

void CsvWriter::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    out << str();
}

// --- svg ---

namespace {
std::pair<double, double> svg_xy(const SvgCanvas& c, double x, double y) {
    double w = c.pixels;
    double h = c.pixels * (c.y1 - c.y0) / (c.x1 - c.x0);
    double sx = (x - c.x0) / (c.x1 - c.x0) * w;
    double sy = h - (y - c.y0) / (c.y1 - c.y0) * h;
    return {sx, sy};
}
}  // namespace

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& color, double width, bool dashed) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"";
    if (dashed) os << " stroke-dasharray=\"6 5\"";
    os << " points=\"";
    for (const auto& [x, y] : pts) {
        auto [sx, sy] = svg_xy(*this, x, y);
        os << sx << "," << sy << " ";
    }
    os << "\"/>\n";
    body += os.str();
}

void SvgCanvas::segments(
    const std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>>& segs,
    const std::string& color, double width) {
    std::ostringstream os;
    for (const auto& [a, b] : segs) {
        auto [x1p, y1p] = svg_xy(*this, a.first, a.second);
        auto [x2p, y2p] = svg_xy(*this, b.first, b.second);
        os << "<line x1=\"" << x1p << "\" y1=\"" << y1p << "\" x2=\"" << x2p << "\" y2=\"" << y2p
           << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    }
    body += os.str();
}

void SvgCanvas::dots(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                     double radius) {
    std::ostringstream os;
    for (const auto& [x, y] : pts) {
        auto [sx, sy] = svg_xy(*this, x, y);
        os << "<circle cx=\"" << sx << "\" cy=\"" << sy << "\" r=\"" << radius << "\" fill=\""
           << color << "\"/>\n";
    }
    body += os.str();
}

void SvgCanvas::text(double x, double y, const std::string& s, const std::string& color) {
    auto [sx, sy] = svg_xy(*this, x, y);
    std::ostringstream os;
    os << "<text x=\"" << sx << "\" y=\"" << sy << "\" fill=\"" << color
       << "\" font-size=\"13\" font-family=\"sans-serif\">" << s << "</text>\n";
    body += os.str();
}

std::string SvgCanvas::str() const {
    double w = pixels;
    double h = pixels * (y1 - y0) / (x1 - x0);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << body << "</svg>\n";
    return os.str();
}

void SvgCanvas::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    out << str();
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void Manifest::record(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string data = ss.str();
    files.push_back({file.string(), (uint64_t)data.size(), fnv1a64(data)});
}

void Manifest::save(const std::filesystem::path& file) const {
    json j;
    j["files"] = json::array();
    for (const auto& f : files) {
        json e;
        e["path"] = f.path;
        e["bytes"] = f.bytes;
        char hex[20];
        snprintf(hex, sizeof hex, "%016llx", (unsigned long long)f.hash);
        e["fnv1a64"] = hex;
        j["files"].push_back(e);
    }
    j["steps_completed"] = steps_completed;
    if (!error.empty()) {
        j["error"] = error;
        j["failing_step"] = failing_step;
    }
    std::ofstream out(file);
    out << j.dump(2) << "\n";
}

}  // namespace voronome::io
