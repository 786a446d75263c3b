#pragma once

#include "apg/cutproject/model_set.hpp"
#include "apg/group/approx_group.hpp"
#include "apg/quasi/free_word.hpp"
#include "apg/twisted/extension.hpp"

#include "json.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace apg::io {

using json = nlohmann::ordered_json;

inline json region_json(const std::optional<Rational>& r) { return r ? json(r->str()) : json(nullptr); }

template <AmbientGroup G>
json certificate_json(const CoveringCertificate<G>& cert, const G& g) {
    json t = json::array();
    for (const auto& f : cert.translates) t.push_back(g.format(f));
    return json{{"translates", t},
                {"translate_count", cert.translates.size()},
                {"region", region_json(cert.covered_region)},
                {"translate_radius", region_json(cert.translate_radius)},
                {"validated", cert.validated},
                {"counts", {{"base", cert.base_size}, {"target", cert.target_size}, {"covered", cert.covered_count}}}};
}

// ---------------------------------------------------------------------------
// Point-set text files: "# ambient: <name>", "# region: <r>|complete", then
// one element per line in exact syntax.

template <AmbientGroup G>
void write_point_set(std::ostream& os, const PointSet<G>& X) {
    os << "# ambient: " << X.ambient().name() << "\n";
    os << "# region: " << (X.region() ? X.region()->str() : std::string("complete")) << "\n";
    for (const auto& x : X) os << X.ambient().format(x) << "\n";
}

inline Rational parse_element(const RationalLine&, const std::string& s) { return Rational::parse(s); }
inline QuadScalar parse_element(const QuadLine& g, const std::string& s) { return QuadScalar::parse(s, g.d); }
inline PScaled parse_element(const DyadicLine& g, const std::string& s) { return PScaled::parse(s, g.p); }
inline PScaled parse_element(const PAdicLine& g, const std::string& s) { return PScaled::parse(s, g.p); }
inline FreeWord parse_element(const FreeGroup&, const std::string& s) { return FreeWord::parse(s); }
inline Mat2<QuadScalar> parse_element(const SL2Group<QuadScalar>& g, const std::string& s) {
    const long long d = g.proto.d();
    return parse_mat2<QuadScalar>(s, [d](std::string_view e) { return QuadScalar::parse(e, d); });
}

struct PointSetHeader {
    std::string ambient;  // e.g. "quad 5"
    std::optional<Rational> region;
    std::vector<std::string> lines;
};

inline std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline PointSetHeader read_point_set_text(std::istream& is) {
    PointSetHeader h;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto body = trim(line.substr(1));
            if (body.rfind("ambient:", 0) == 0) h.ambient = trim(body.substr(8));
            if (body.rfind("region:", 0) == 0) {
                auto r = trim(body.substr(7));
                if (r != "complete") h.region = Rational::parse(r);
            }
            continue;
        }
        h.lines.push_back(line);
    }
    if (h.ambient.empty()) throw std::invalid_argument("point-set file lacks an '# ambient:' header");
    return h;
}

template <AmbientGroup G>
PointSet<G> point_set_from(const G& g, const PointSetHeader& h) {
    std::vector<element_t<G>> el;
    for (const auto& l : h.lines) el.push_back(parse_element(g, l));
    return PointSet<G>(g, std::move(el), h.region);
}

// ---------------------------------------------------------------------------
// Model-set CSV and SVG

inline std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return "\"" + s + "\"";
}

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string format_internal(const QuadScalar& x) { return x.str(); }
inline std::string format_internal(const PScaled& x) { return x.str(); }
inline std::string format_internal(const Rational& x) { return x.str(); }
inline std::string format_internal(const Mat2<QuadScalar>& x) { return x.str(); }

/// Real coordinate of a point on a one-dimensional real physical side; empty otherwise.
template <AmbientGroup G>
std::optional<double> physical_float(const G& g, const element_t<G>& x) {
    if constexpr (MetricAmbient<G>) {
        auto c = g.coordinates(x);
        if (c.size() == 1) return c[0];
    }
    return std::nullopt;
}

/// Rows "physical,internal,physical_float" in ascending canonical order.
template <CutProjectScheme S>
void write_model_set_csv(std::ostream& os, const ModelSet<S>& m) {
    os << "physical,internal,physical_float\n";
    for (const auto& x : m.points) {
        auto f = physical_float(m.points.ambient(), x);
        os << csv_field(m.points.ambient().format(x)) << "," << csv_field(format_internal(m.scheme.internal(x))) << ","
           << (f ? fixed(*f, 12) : std::string()) << "\n";
    }
}

template <CutProjectScheme S>
json model_set_provenance(const ModelSet<S>& m) {
    json cfg = json::object();
    for (const auto& [k, v] : m.scheme.config()) cfg[k] = v;
    return json{{"scheme", cfg}, {"range", m.range.str()}, {"count", m.points.size()}, {"window_recheck", m.recheck()}};
}

/// Tick marks on a horizontal line.
inline std::string svg_ticks(const std::vector<double>& xs) {
    double lo = 0, hi = 1;
    if (!xs.empty()) {
        lo = *std::min_element(xs.begin(), xs.end());
        hi = *std::max_element(xs.begin(), xs.end());
    }
    if (hi - lo < 1e-12) hi = lo + 1;
    const double W = 1000, H = 80, pad = 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<line x1=\"" << pad << "\" y1=\"40\" x2=\"" << W - pad << "\" y2=\"40\" stroke=\"black\"/>\n";
    for (double x : xs) {
        std::string px = fixed(pad + (x - lo) / (hi - lo) * (W - 2 * pad), 3);
        os << "<line x1=\"" << px << "\" y1=\"30\" x2=\"" << px << "\" y2=\"50\" stroke=\"steelblue\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace apg::io
