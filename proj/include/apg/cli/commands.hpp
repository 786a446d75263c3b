#pragma once

// Command-line driver: modelset, verify, quasi, euler, freeset.
// Exit codes: 0 ok, 1 failed certificate, 2 configuration error,
// 3 generation error or uncoverable truncation.

#include "apg/cutproject/model_set.hpp"
#include "apg/group/approx_group.hpp"
#include "apg/io/serialize.hpp"
#include "apg/quasi/quasimorphism.hpp"
#include "apg/twisted/extension.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace apg::cli {

using io::json;

enum ExitCode : int { kOk = 0, kFailed = 1, kConfig = 2, kGeneration = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Option holders

struct SchemeArgs {
    std::string scheme;
    long long d = 5;
    long long p = 2;
    std::string window = "1";
    int window_exp = 0;
    int n = 0;
    std::string range;
    std::string eps = "1/5";
    long long height = 0;
    CLI::Option* range_opt = nullptr;
    CLI::Option* height_opt = nullptr;
};

inline void add_scheme_options(CLI::App* sub, SchemeArgs& a, bool required) {
    auto* s = sub->add_option("--scheme", a.scheme, "fibonacci | quadratic | zp | approx-ring | pisot-matrix")
                  ->check(CLI::IsMember({"fibonacci", "quadratic", "zp", "approx-ring", "pisot-matrix"}));
    if (required) s->required();
    sub->add_option("--d", a.d, "square-free d for quadratic and matrix schemes");
    sub->add_option("--p", a.p, "prime for zp and approx-ring");
    sub->add_option("--window", a.window, "real window radius");
    sub->add_option("--window-exp", a.window_exp, "p-adic window exponent n (radius p^n)");
    sub->add_option("--n", a.n, "approx-ring depth");
    a.range_opt = sub->add_option("--range", a.range, "physical gauge bound");
    sub->add_option("--eps", a.eps, "matrix window radius");
    a.height_opt = sub->add_option("--height", a.height, "entry height bound for pisot-matrix");
}

inline Rational parse_rational_arg(const std::string& name, const std::string& v) {
    try {
        return Rational::parse(v);
    } catch (const std::exception&) {
        throw ConfigError("--" + name + ": not a rational: '" + v + "'");
    }
}

/// Builds the scheme described by the options and calls f(model_set).
template <class F>
void with_model_set(const SchemeArgs& a, F&& f) {
    auto need_range = [&] {
        if (!a.range_opt || a.range_opt->count() == 0) throw ConfigError("--range is required for scheme " + a.scheme);
        Rational r = parse_rational_arg("range", a.range);
        if (r.sign() <= 0) throw ConfigError("--range must be positive");
        return r;
    };
    try {
        if (a.scheme == "fibonacci" || a.scheme == "quadratic") {
            const long long d = a.scheme == "fibonacci" ? 5 : a.d;
            QuadraticScheme s(d, RealInterval{parse_rational_arg("window", a.window)});
            const Rational r = need_range();
            f(generate_model_set(s, r));
        } else if (a.scheme == "zp") {
            ZpScheme s(a.p, a.window_exp);
            const Rational r = need_range();
            f(generate_model_set(s, r));
        } else if (a.scheme == "approx-ring") {
            const Rational r = need_range();
            if (a.n < 0) throw ConfigError("--n must be non-negative");
            f(approximate_ring_zp(a.p, a.n, r));
        } else if (a.scheme == "pisot-matrix") {
            if (!a.height_opt || a.height_opt->count() == 0) throw ConfigError("--height is required for pisot-matrix");
            if (a.height < 1) throw ConfigError("--height must be >= 1");
            const Rational eps = parse_rational_arg("eps", a.eps);
            if (eps.sign() <= 0) throw ConfigError("--eps must be positive");
            f(pisot_matrix_set(a.d, eps, a.height));
        } else {
            throw ConfigError("--scheme is required");
        }
    } catch (const std::invalid_argument& e) {
        // scheme constructors reject bad d, p, windows
        if (dynamic_cast<const AmbientMismatch*>(&e)) throw;
        throw ConfigError(e.what());
    }
}

/// Reads a point-set file and calls f(point_set) with the ambient named in its header.
template <class F>
void with_point_file(const std::string& path, F&& f) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    io::PointSetHeader h;
    try {
        h = io::read_point_set_text(in);
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    std::istringstream words(h.ambient);
    std::string kind;
    long long param = 0;
    words >> kind >> param;
    try {
        if (kind == "rational") return f(io::point_set_from(RationalLine{}, h));
        if (kind == "quad") return f(io::point_set_from(QuadLine{param}, h));
        if (kind == "dyadic") return f(io::point_set_from(DyadicLine{param}, h));
        if (kind == "padic") return f(io::point_set_from(PAdicLine{param}, h));
        if (kind == "free2") return f(io::point_set_from(FreeGroup{}, h));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": unsupported ambient '" + h.ambient + "'");
}

/// Reads a point-set file for a known ambient.
template <AmbientGroup G>
PointSet<G> read_point_file(const std::string& path, const G& g) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    try {
        auto h = io::read_point_set_text(in);
        if (h.ambient != g.name()) throw ConfigError(path + ": ambient '" + h.ambient + "' but expected '" + g.name() + "'");
        return io::point_set_from(g, h);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Reports

struct Context {
    std::filesystem::path out_dir;
    std::ostream* out;
    std::ostream* err;
    json config;
};

/// Every option of the subcommand chain with its effective value, in declaration order.
inline json options_json(const CLI::App* app) {
    json j = json::object();
    for (const CLI::Option* o : app->get_options()) {
        if (o->get_lnames().empty()) continue;
        const std::string key = o->get_lnames().front();
        if (key == "help" || key == "config" || key == "out" || key == "name") continue;
        if (o->count() > 0) {
            const auto& res = o->results();
            if (o->get_expected_max() == 0) {
                j[key] = true;
            } else if (res.size() == 1 && o->get_expected_max() <= 1) {
                j[key] = res.front();
            } else {
                j[key] = res;
            }
        } else if (o->get_expected_max() == 0) {
            j[key] = false;
        } else {
            const std::string def = o->get_default_str();
            j[key] = def.empty() ? json(nullptr) : json(def);
        }
    }
    return j;
}

inline void write_text(const Context& ctx, const std::string& file, const std::string& text) {
    std::filesystem::create_directories(ctx.out_dir);
    std::ofstream os(ctx.out_dir / file, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + (ctx.out_dir / file).string());
    os << text;
}

inline void write_json(const Context& ctx, const std::string& file, json report) {
    json full = json::object();
    full["config"] = ctx.config;
    for (auto& [k, v] : report.items()) full[k] = v;
    write_text(ctx, file, full.dump(2) + "\n");
}

template <AmbientGroup G>
json point_set_summary(const PointSet<G>& X) {
    return json{{"ambient", X.ambient().name()}, {"size", X.size()}, {"region", io::region_json(X.region())}};
}

inline std::optional<Rational> optional_rational(const CLI::Option* o, const std::string& name, const std::string& v) {
    if (!o || o->count() == 0) return std::nullopt;
    return parse_rational_arg(name, v);
}

// ---------------------------------------------------------------------------
// modelset

struct ModelsetArgs {
    SchemeArgs scheme;
    bool svg = false;
    std::string name = "modelset";
};

inline int cmd_modelset(const ModelsetArgs& a, const Context& ctx) {
    with_model_set(a.scheme, [&](const auto& m) {
        std::ostringstream csv, pts;
        io::write_model_set_csv(csv, m);
        io::write_point_set(pts, m.points);
        write_text(ctx, a.name + ".csv", csv.str());
        write_text(ctx, a.name + ".points", pts.str());
        json rep = io::model_set_provenance(m);
        rep["files"] = {a.name + ".csv", a.name + ".points"};
        if (a.svg) {
            std::vector<double> xs;
            for (const auto& x : m.points)
                if (auto f = io::physical_float(m.points.ambient(), x)) xs.push_back(*f);
            if (xs.size() == m.points.size()) {
                write_text(ctx, a.name + ".svg", io::svg_ticks(xs));
                rep["files"].push_back(a.name + ".svg");
            } else {
                rep["svg_skipped"] = "physical side is not a real line";
            }
        }
        write_json(ctx, a.name + ".json", rep);
        *ctx.out << m.size() << " points written to " << (ctx.out_dir / (a.name + ".csv")).string() << "\n";
    });
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    SchemeArgs scheme;
    std::vector<std::string> checks{"approx"};
    std::string input;
    std::string other;
    std::string interior;
    std::string region;
    std::string translate_radius;
    std::string probe_spacing = "1/16";
    std::string name = "verify";
    CLI::Option* interior_opt = nullptr;
    CLI::Option* region_opt = nullptr;
    CLI::Option* translate_opt = nullptr;
};

struct CheckOutcome {
    json entries = json::array();
    int code = kOk;

    void record(json entry, int c) {
        entries.push_back(std::move(entry));
        if (c == kGeneration || code == kGeneration)
            code = kGeneration;
        else
            code = std::max(code, c);
    }
};

template <AmbientGroup G>
void check_symmetry(const PointSet<G>& X, CheckOutcome& out, const Context& ctx) {
    if (auto w = symmetry_witness(X)) {
        const std::string ws = X.ambient().format(*w);
        *ctx.out << "FAIL symmetry: witness " << ws << "\n";
        out.record({{"check", "symmetry"}, {"status", "fail"}, {"witness", ws}}, kFailed);
    } else {
        out.record({{"check", "symmetry"}, {"status", "pass"}}, kOk);
    }
}

template <AmbientGroup G>
void check_approx(const PointSet<G>& X, const VerifyArgs& a, CheckOutcome& out, const Context& ctx) {
    auto interior = optional_rational(a.interior_opt, "interior", a.interior);
    if (!interior) interior = default_interior(X);
    auto tr = optional_rational(a.translate_opt, "translate-radius", a.translate_radius);
    json e{{"check", "approx"}, {"interior", io::region_json(interior)}};
    try {
        auto cert = verify_approximate_subgroup(X, interior, tr);
        e["status"] = "pass";
        e["certificate"] = io::certificate_json(cert, X.ambient());
        *ctx.out << "approx: |F| = " << cert.translates.size() << "\n";
        out.record(std::move(e), kOk);
    } catch (const NotSymmetric& ex) {
        e["status"] = "fail";
        e["witness"] = ex.witness();
        *ctx.out << "FAIL approx: not symmetric, witness " << ex.witness() << "\n";
        out.record(std::move(e), kFailed);
    } catch (const Uncoverable& ex) {
        e["status"] = "uncoverable";
        e["witness"] = ex.witness();
        *ctx.out << "UNCOVERABLE approx: " << ex.witness() << "\n";
        out.record(std::move(e), kGeneration);
    }
}

template <AmbientGroup G>
void check_commensurable(const PointSet<G>& X, const PointSet<G>& Y, const VerifyArgs& a, CheckOutcome& out,
                         const Context& ctx) {
    auto region = optional_rational(a.region_opt, "region", a.region);
    auto tr = optional_rational(a.translate_opt, "translate-radius", a.translate_radius);
    json e{{"check", "commensurable"}, {"region", io::region_json(region)}, {"other", point_set_summary(Y)}};
    try {
        auto c = commensurable(X, Y, region, tr);
        e["status"] = "pass";
        e["x_by_y"] = io::certificate_json(c.x_by_y, X.ambient());
        e["y_by_x"] = io::certificate_json(c.y_by_x, X.ambient());
        *ctx.out << "commensurable: |F| = " << c.x_by_y.translates.size() << ", " << c.y_by_x.translates.size() << "\n";
        out.record(std::move(e), kOk);
    } catch (const Uncoverable& ex) {
        e["status"] = "uncoverable";
        e["witness"] = ex.witness();
        *ctx.out << "UNCOVERABLE commensurable: " << ex.witness() << "\n";
        out.record(std::move(e), kGeneration);
    }
}

template <AmbientGroup G>
void check_delone(const PointSet<G>& X, const VerifyArgs& a, CheckOutcome& out, const Context& ctx) {
    if constexpr (MetricAmbient<G>) {
        auto interior = optional_rational(a.interior_opt, "interior", a.interior);
        const Rational spacing = parse_rational_arg("probe-spacing", a.probe_spacing);
        if (spacing.sign() <= 0) throw ConfigError("--probe-spacing must be positive");
        if (X.size() < 2) throw ConfigError("delone check needs at least two points");
        auto rep = delone_check(X, interior, spacing);
        json e{{"check", "delone"},
               {"status", "pass"},
               {"min_gap", rep.min_gap},
               {"gap_witness", {X.ambient().format(rep.gap_witness.first), X.ambient().format(rep.gap_witness.second)}},
               {"covering_radius", rep.covering_radius},
               {"probe_spacing", rep.probe_spacing.str()},
               {"probe_extent", rep.probe_extent.str()},
               {"probe_count", rep.probe_count}};
        if (rep.dimension == 1) {
            json gaps = json::array();
            for (const auto& g : gap_alphabet(X, rep.probe_extent)) gaps.push_back(X.ambient().format(g));
            e["gap_alphabet"] = gaps;
        }
        *ctx.out << "delone: min_gap " << io::fixed(rep.min_gap) << ", covering_radius " << io::fixed(rep.covering_radius)
                 << "\n";
        out.record(std::move(e), kOk);
    } else {
        throw ConfigError("delone check needs an ambient with a distance (" + X.ambient().name() + " has none)");
    }
}

template <AmbientGroup G>
std::optional<PointSet<G>> load_input(const VerifyArgs& a, const G& g) {
    if (a.input.empty()) return std::nullopt;
    return read_point_file(a.input, g);
}

template <AmbientGroup G>
void run_set_checks(const PointSet<G>& X, const VerifyArgs& a, CheckOutcome& out, const Context& ctx,
                    const std::optional<PointSet<G>>& other) {
    for (const auto& c : a.checks) {
        if (c == "symmetry") {
            check_symmetry(X, out, ctx);
        } else if (c == "approx") {
            check_approx(X, a, out, ctx);
        } else if (c == "delone") {
            check_delone(X, a, out, ctx);
        } else if (c == "commensurable") {
            if (!other) throw ConfigError("commensurable needs --other (or --input together with --scheme)");
            check_commensurable(X, *other, a, out, ctx);
        }
    }
}

inline int cmd_verify(const VerifyArgs& a, Context ctx) {
    static const std::vector<std::string> known{"symmetry", "approx", "commensurable", "meyer", "delone", "pullback"};
    for (const auto& c : a.checks)
        if (std::find(known.begin(), known.end(), c) == known.end()) throw ConfigError("unknown check '" + c + "'");
    auto wants = [&](const char* c) { return std::find(a.checks.begin(), a.checks.end(), c) != a.checks.end(); };
    CheckOutcome out;
    json input;

    if (!a.scheme.scheme.empty()) {
        with_model_set(a.scheme, [&](const auto& m) {
            using G = std::decay_t<decltype(m.points.ambient())>;
            const G& g = m.points.ambient();
            const auto file_set = load_input(a, g);
            // The file set (when given) is the subject; the model set is the reference.
            const auto& X = file_set ? *file_set : m.points;
            input = {{"subject", point_set_summary(X)}, {"model", io::model_set_provenance(m)}};
            std::optional<PointSet<G>> other;
            if (!a.other.empty())
                other = read_point_file(a.other, g);
            else if (file_set)
                other = m.points;
            run_set_checks(X, a, out, ctx, other);
            if (wants("meyer")) {
                if (!file_set) throw ConfigError("meyer needs --input (the candidate subset M)");
                const Rational region = a.region_opt && a.region_opt->count()
                                            ? parse_rational_arg("region", a.region)
                                            : m.range / Rational(2);
                auto tr = optional_rational(a.translate_opt, "translate-radius", a.translate_radius);
                auto rep = meyer_check(*file_set, m, region, tr);
                json e{{"check", "meyer"}, {"region", rep.region.str()}, {"translate_radius", rep.translate_radius.str()},
                       {"contained", rep.contained}};
                if (rep.offending) e["offending"] = *rep.offending;
                if (rep.m_by_s) e["m_by_s"] = io::certificate_json(*rep.m_by_s, g);
                if (rep.s_by_m) e["s_by_m"] = io::certificate_json(*rep.s_by_m, g);
                if (rep.failed_direction) {
                    e["failed_direction"] = *rep.failed_direction;
                    e["witness"] = *rep.uncovered;
                }
                e["status"] = rep.meyer() ? "pass" : "fail";
                if (rep.offending)
                    *ctx.out << "FAIL meyer: " << *rep.offending << " is not in S\n";
                else if (rep.failed_direction)
                    *ctx.out << "FAIL meyer: " << *rep.failed_direction << " uncovered at " << *rep.uncovered << "\n";
                else
                    *ctx.out << "meyer: commensurable on region " << rep.region.str() << "\n";
                out.record(std::move(e), rep.meyer() ? kOk : kFailed);
            }
            if (wants("pullback")) {
                const Rational region = a.region_opt && a.region_opt->count() ? parse_rational_arg("region", a.region)
                                                                             : m.range;
                try {
                    if (!std::holds_alternative<RealInterval>(m.scheme.window()) &&
                        !std::holds_alternative<PadicBall>(m.scheme.window()))
                        throw ConfigError("pullback needs an interval or p-adic ball window");
                    auto rep = pullback_containment_check(m.scheme, m.scheme.window(), region);
                    json e{{"check", "pullback"}, {"region", region.str()}, {"pullback_size", rep.pullback_size},
                           {"difference_size", rep.difference_size}, {"contained", rep.contained}};
                    if (rep.offending) e["offending"] = *rep.offending;
                    if (rep.certificate) e["certificate"] = io::certificate_json(*rep.certificate, g);
                    e["status"] = rep.contained ? "pass" : "fail";
                    *ctx.out << (rep.contained ? "pullback: contained" : "FAIL pullback: " + *rep.offending) << "\n";
                    out.record(std::move(e), rep.contained ? kOk : kFailed);
                } catch (const Uncoverable& ex) {
                    out.record({{"check", "pullback"}, {"status", "uncoverable"}, {"witness", ex.witness()}}, kGeneration);
                }
            }
        });
    } else {
        if (a.input.empty()) throw ConfigError("verify needs --input or --scheme");
        if (wants("meyer") || wants("pullback")) throw ConfigError("meyer and pullback need --scheme");
        with_point_file(a.input, [&](const auto& X) {
            using G = std::decay_t<decltype(X.ambient())>;
            input = {{"subject", point_set_summary(X)}};
            std::optional<PointSet<G>> other;
            if (!a.other.empty()) other = read_point_file(a.other, X.ambient());
            run_set_checks(X, a, out, ctx, other);
        });
    }
    json rep{{"input", input}, {"checks", out.entries}, {"exit_code", out.code}};
    write_json(ctx, a.name + ".json", rep);
    return out.code;
}

// ---------------------------------------------------------------------------
// quasi

struct QuasiArgs {
    // brooks
    std::string w = "xy";
    int ball = 6;
    std::string kernel = "0";
    std::string interior;
    CLI::Option* interior_opt = nullptr;
    int order = 20;
    bool defect = false;
    // nearint
    std::string gamma = "1/2";
    long long pairs = 100000;
    std::uint64_t seed = 0;
    long long num_bound = 1000000;
    long long den_bound = 1000;
    // homogenize
    std::string q = "brooks";
    std::string g = "xy";
    long long N = 1;
    std::string name;
};

inline FreeWord parse_word_arg(const std::string& name, const std::string& s) {
    try {
        return FreeWord::parse(s);
    } catch (const std::exception&) {
        throw ConfigError("--" + name + ": not a word over x, X, y, Y: '" + s + "'");
    }
}

inline Quasimorphism<FreeGroup> brooks_arg(const std::string& w) {
    FreeWord word = parse_word_arg("w", w);
    if (word.empty() || !word.is_cyclically_reduced()) throw ConfigError("--w must be nontrivial and cyclically reduced");
    return brooks_quasimorphism(word);
}

inline int cmd_quasi_brooks(const QuasiArgs& a, const Context& ctx) {
    auto q = brooks_arg(a.w);
    const FreeWord w = parse_word_arg("w", a.w);
    if (a.ball < 0) throw ConfigError("--ball must be non-negative");
    const Rational bound = parse_rational_arg("kernel", a.kernel);
    if (bound.sign() < 0) throw ConfigError("--kernel must be non-negative");
    auto ball = free_ball(a.ball);
    auto A = approximate_kernel(q, bound, ball);
    auto interior = optional_rational(a.interior_opt, "interior", a.interior);
    if (!interior) interior = default_interior(A);

    json order = json::array();
    bool order_ok = true;
    for (int n = -a.order; n <= a.order; ++n) {
        if (n == 0) continue;
        const bool in_a = in_brooks_A(w, FreeWord::x().pow(n) * FreeWord::y());
        order.push_back({{"n", n}, {"in_A", in_a}});
        order_ok = order_ok && (in_a == (n < 0));
    }
    json rep{{"w", w.str()},
             {"ball_radius", a.ball},
             {"ball_size", ball.size()},
             {"kernel_bound", bound.str()},
             {"kernel_size", A.size()},
             {"order_property", {{"holds", order_ok}, {"table", order}}}};
    int code = order_ok ? kOk : kFailed;
    try {
        auto cert = verify_approximate_subgroup(A, interior);
        rep["certificate"] = io::certificate_json(cert, A.ambient());
        rep["product_region"] = io::region_json(product_set(A, A).region());
        *ctx.out << "kernel " << A.size() << " elements, |F| = " << cert.translates.size() << "\n";
    } catch (const NotSymmetric& e) {
        rep["certificate"] = {{"status", "fail"}, {"witness", e.witness()}};
        *ctx.out << "FAIL kernel not symmetric, witness " << e.witness() << "\n";
        code = kFailed;
    } catch (const Uncoverable& e) {
        rep["certificate"] = {{"status", "uncoverable"}, {"witness", e.witness()}};
        *ctx.out << "UNCOVERABLE " << e.witness() << "\n";
        code = kGeneration;
    }
    if (a.defect) {
        auto est = empirical_defect(q, ball);
        rep["defect"] = {{"value", est.defect.str()}, {"g", est.g.str()}, {"h", est.h.str()}, {"pairs", est.pairs}};
    }
    rep["exit_code"] = code;
    write_json(ctx, (a.name.empty() ? "quasi-brooks" : a.name) + ".json", rep);
    return code;
}

/// Uniform integer in [0, n) from the raw generator; portable across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Rational draw_rational(std::mt19937_64& rng, long long num_bound, long long den_bound) {
    const long long num = static_cast<long long>(draw_below(rng, 2 * static_cast<std::uint64_t>(num_bound) + 1)) - num_bound;
    const long long den = 1 + static_cast<long long>(draw_below(rng, static_cast<std::uint64_t>(den_bound)));
    return Rational(BigInt(num), BigInt(den));
}

inline int cmd_quasi_nearint(const QuasiArgs& a, const Context& ctx) {
    const Rational gamma = parse_rational_arg("gamma", a.gamma);
    if (gamma.sign() <= 0 || gamma > Rational(1)) throw ConfigError("--gamma must lie in (0, 1]");
    if (a.pairs < 1) throw ConfigError("--pairs must be positive");
    if (a.num_bound < 1 || a.den_bound < 1) throw ConfigError("sampling bounds must be positive");
    std::mt19937_64 rng(a.seed);
    std::map<std::string, long long> counts;
    BigInt worst = 0;
    json outside = json::array();
    for (long long i = 0; i < a.pairs; ++i) {
        Rational s = draw_rational(rng, a.num_bound, a.den_bound);
        Rational t = draw_rational(rng, a.num_bound, a.den_bound);
        BigInt d = nearest_integer_qh(gamma, s + t) - nearest_integer_qh(gamma, s) - nearest_integer_qh(gamma, t);
        ++counts[d.str()];
        BigInt ad = d < 0 ? BigInt(-d) : d;
        if (ad > worst) worst = ad;
        if (ad > 1 && outside.size() < 20) outside.push_back({{"s", s.str()}, {"t", t.str()}, {"defect", d.str()}});
    }
    json hist = json::object();
    for (const auto& [k, v] : counts) hist[k] = v;
    const bool ok = worst <= 1;
    json rep{{"gamma", gamma.str()}, {"pairs", a.pairs},  {"seed", a.seed},
             {"defect_counts", hist}, {"max_abs_defect", worst.str()}, {"within_error_set", ok},
             {"outside", outside}};
    write_json(ctx, (a.name.empty() ? "quasi-nearint" : a.name) + ".json", rep);
    *ctx.out << "nearint gamma " << gamma.str() << ": max |defect| " << worst.str() << " over " << a.pairs << " pairs\n";
    return ok ? kOk : kFailed;
}

inline int cmd_quasi_homogenize(const QuasiArgs& a, const Context& ctx) {
    if (a.N < 1) throw ConfigError("--N must be >= 1");
    Quasimorphism<FreeGroup> q = a.q == "brooks" ? brooks_arg(a.w) : exponent_sum_x();
    const FreeWord g = parse_word_arg("g", a.g);
    auto rep_h = homogenize_estimate(FreeGroup{}, q, g, a.N);
    json samples = json::array();
    for (const auto& [n, v] : rep_h.samples) samples.push_back({{"N", n}, {"value", v.str()}});
    json rep{{"quasimorphism", q.name}, {"g", g.str()}, {"samples", samples}, {"estimate", rep_h.samples.back().second.str()}};
    write_json(ctx, (a.name.empty() ? "quasi-homogenize" : a.name) + ".json", rep);
    *ctx.out << q.name << " on " << g.str() << ": " << rep_h.samples.back().second.str() << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// euler

struct EulerArgs {
    long long triples = 10000;
    std::uint64_t seed = 0;
    int ext_ball = 0;
    long long assoc = 0;
    long long p = 2;
    bool delta_cert = false;
    std::string name = "euler";
};

inline int cmd_euler(const EulerArgs& a, const Context& ctx) {
    if (a.triples < 0 || a.assoc < 0 || a.ext_ball < 0) throw ConfigError("counts must be non-negative");
    std::mt19937_64 rng(a.seed);
    long long failures = 0;
    long long beta0 = 0, beta1 = 0, beta_other = 0;
    double max_res = 0;
    json per = json::array();
    json failed = json::array();
    for (long long i = 0; i < a.triples; ++i) {
        RealMat2 g = random_sl2(rng), h = random_sl2(rng), k = random_sl2(rng);
        CocycleIdentity r;
        try {
            r = cocycle_identity_detail(g, h, k);
        } catch (const UnresolvedRounding& e) {
            failed.push_back({{"index", i}, {"error", e.what()}});
            ++failures;
            per.push_back(nullptr);
            continue;
        }
        per.push_back(r.max_residual);
        max_res = std::max(max_res, r.max_residual);
        for (int b : {r.min_beta, r.max_beta}) (b == 0 ? beta0 : b == 1 ? beta1 : beta_other) += 1;
        if (!r.holds) {
            ++failures;
            failed.push_back({{"index", i}, {"lhs", r.lhs}, {"rhs", r.rhs}});
        }
    }
    const int half_turn = euler_cocycle(RealMat2::rotation(std::numbers::pi), RealMat2::rotation(std::numbers::pi));
    json rep{{"cocycle",
              {{"triples", a.triples},
               {"seed", a.seed},
               {"identity_failures", failures},
               {"beta_extremes", {{"0", beta0}, {"1", beta1}, {"other", beta_other}}},
               {"max_residual", max_res},
               {"half_turn_beta", half_turn},
               {"failed", failed},
               {"residuals", per}}}};
    bool ok = failures == 0 && beta_other == 0 && max_res < 1e-6 && half_turn == 1;
    *ctx.out << "cocycle identity: " << (a.triples - failures) << "/" << a.triples << " hold, max residual "
             << max_res << "\n";

    if (a.ext_ball > 0) {
        if (!is_prime(a.p)) throw ConfigError("--p must be prime");
        ExtGroup G{a.p};
        const auto gens = default_generators(G);
        auto ball = word_ball(G, gens, a.ext_ball);
        const auto& el = ball.elements();
        std::map<std::string, long long> defects;
        Rational worst;
        for (const auto& u : el)
            for (const auto& v : el) {
                Rational d = (delta_qm(twisted_product(u, v)) - delta_qm(u) - delta_qm(v)).to_rational();
                ++defects[d.str()];
                if (d.abs() > worst) worst = d.abs();
            }
        long long assoc_fail = 0;
        for (long long i = 0; i < a.assoc; ++i) {
            const auto& x = el[draw_below(rng, el.size())];
            const auto& y = el[draw_below(rng, el.size())];
            const auto& z = el[draw_below(rng, el.size())];
            if (!(G.compose(G.compose(x, y), z) == G.compose(x, G.compose(y, z)))) ++assoc_fail;
        }
        json gj = json::array();
        for (const auto& g : gens) gj.push_back(g.str());
        json hist = json::object();
        for (const auto& [k, v] : defects) hist[k] = v;
        json ext{{"p", a.p},
                 {"generators", gj},
                 {"ball_radius", a.ext_ball},
                 {"ball_size", el.size()},
                 {"pairs", static_cast<long long>(el.size() * el.size())},
                 {"defect_counts", hist},
                 {"max_abs_defect", worst.str()},
                 {"assoc_samples", a.assoc},
                 {"assoc_failures", assoc_fail}};
        ok = ok && worst <= Rational(1) && assoc_fail == 0;
        *ctx.out << "extension ball " << el.size() << ": max |defect| " << worst.str() << ", associativity failures "
                 << assoc_fail << "/" << a.assoc << "\n";
        if (a.delta_cert) {
            auto delta = kernel_Delta(ball);
            auto hull = symmetric_hull(delta);
            json dj{{"size", delta.size()}, {"hull_size", hull.size()}};
            if (auto w = symmetry_witness(delta)) dj["asymmetry_witness"] = G.format(*w);
            try {
                auto cert = verify_approximate_subgroup(hull);
                dj["certificate"] = io::certificate_json(cert, G);
                *ctx.out << "delta hull " << hull.size() << ": |F| = " << cert.translates.size() << "\n";
            } catch (const Uncoverable& e) {
                dj["certificate"] = {{"status", "uncoverable"}, {"witness", e.witness()}};
                ok = false;
            }
            ext["delta"] = dj;
        }
        rep["extension"] = ext;
    }
    rep["all_pass"] = ok;
    write_json(ctx, a.name + ".json", rep);
    return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// freeset

struct FreesetArgs {
    std::string Y;
    std::string X;
    std::string name = "freeset";
};

/// "a..b" (integers) or a comma list of rationals.
inline std::vector<Rational> parse_rational_list(const std::string& name, const std::string& s) {
    std::vector<Rational> out;
    if (auto dots = s.find(".."); dots != std::string::npos) {
        Rational lo = parse_rational_arg(name, s.substr(0, dots)), hi = parse_rational_arg(name, s.substr(dots + 2));
        if (!lo.is_integer() || !hi.is_integer()) throw ConfigError("--" + name + ": range ends must be integers");
        for (BigInt k = lo.num(); k <= hi.num(); ++k) out.emplace_back(k);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!io::trim(item).empty()) out.push_back(parse_rational_arg(name, io::trim(item)));
    return out;
}

inline int cmd_freeset(const FreesetArgs& a, const Context& ctx) {
    PointSet<RationalLine> Y(RationalLine{}, parse_rational_list("Y", a.Y));
    PointSet<RationalLine> X(RationalLine{}, parse_rational_list("X", a.X));
    PointSet<RationalLine> B;
    try {
        B = maximal_free_set(Y, X);
    } catch (const ContainsIdentity&) {
        throw ConfigError("X contains the identity");
    } catch (const NotSymmetric& e) {
        throw ConfigError("X is not symmetric: " + e.witness() + " lacks its inverse");
    }
    json bj = json::array();
    for (const auto& b : B) bj.push_back(b.str());
    const bool free = is_free(B, X), maximal = is_maximal_free(B, Y, X);
    json rep{{"Y_size", Y.size()}, {"X_size", X.size()}, {"B", bj}, {"free", free}, {"maximal", maximal}};
    write_json(ctx, a.name + ".json", rep);
    *ctx.out << "B = {";
    for (std::size_t i = 0; i < B.size(); ++i) *ctx.out << (i ? ", " : "") << B.elements()[i].str();
    *ctx.out << "}\n";
    return free && maximal ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Approximate groups: model sets, covering certificates, quasimorphisms, twisted extensions"};
    app.name("apg");
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "read options from a TOML/INI file");
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->envname("APG_OUT_DIR");
    app.require_subcommand(1);
    app.fallthrough();

    ModelsetArgs ms;
    auto* c_ms = app.add_subcommand("modelset", "generate a cut-and-project set");
    add_scheme_options(c_ms, ms.scheme, true);
    c_ms->add_flag("--svg", ms.svg, "also write an SVG picture (1D real physical sides)");
    c_ms->add_option("--name", ms.name, "output file stem");

    VerifyArgs vf;
    auto* c_vf = app.add_subcommand("verify", "certify approximate-subgroup properties");
    add_scheme_options(c_vf, vf.scheme, false);
    c_vf->add_option("--check", vf.checks, "symmetry, approx, commensurable, meyer, delone, pullback")->delimiter(',');
    c_vf->add_option("--input", vf.input, "point-set file (subject)");
    c_vf->add_option("--other", vf.other, "second point-set file for commensurable");
    vf.interior_opt = c_vf->add_option("--interior", vf.interior, "certified interior (default: the set's region)");
    vf.region_opt = c_vf->add_option("--region", vf.region, "region for commensurable, meyer and pullback");
    vf.translate_opt = c_vf->add_option("--translate-radius", vf.translate_radius, "gauge bound on translates");
    c_vf->add_option("--probe-spacing", vf.probe_spacing, "grid spacing for the covering-radius probe");
    c_vf->add_option("--name", vf.name, "report file stem");

    QuasiArgs qa;
    auto* c_q = app.add_subcommand("quasi", "quasimorphisms on F2 and R");
    c_q->require_subcommand(1);
    c_q->fallthrough();
    auto* c_qb = c_q->add_subcommand("brooks", "Brooks kernel and its certificate");
    c_qb->add_option("--w", qa.w, "counted word");
    c_qb->add_option("--ball", qa.ball, "ball radius in F2");
    c_qb->add_option("--kernel", qa.kernel, "kernel bound");
    qa.interior_opt = c_qb->add_option("--interior", qa.interior, "certified interior (default: ball radius)");
    c_qb->add_option("--order", qa.order, "order-property table for 1 <= |n| <= order");
    c_qb->add_flag("--defect", qa.defect, "also scan all pairs of the ball for the defect");
    c_qb->add_option("--name", qa.name, "report file stem");
    auto* c_qn = c_q->add_subcommand("nearint", "defect of the nearest-integer map on sampled pairs");
    c_qn->add_option("--gamma", qa.gamma, "threshold in (0, 1]");
    c_qn->add_option("--pairs", qa.pairs, "number of sampled pairs");
    c_qn->add_option("--seed", qa.seed, "random seed")->required();
    c_qn->add_option("--num-bound", qa.num_bound, "numerators drawn from [-b, b]");
    c_qn->add_option("--den-bound", qa.den_bound, "denominators drawn from [1, b]");
    c_qn->add_option("--name", qa.name, "report file stem");
    auto* c_qh = c_q->add_subcommand("homogenize", "q(g^N)/N for N, 2N, 4N");
    c_qh->add_option("--q", qa.q, "brooks | exponent-x")->check(CLI::IsMember({"brooks", "exponent-x"}));
    c_qh->add_option("--w", qa.w, "counted word for brooks");
    c_qh->add_option("--g", qa.g, "element");
    c_qh->add_option("--N", qa.N, "base exponent");
    c_qh->add_option("--name", qa.name, "report file stem");

    EulerArgs ea;
    auto* c_e = app.add_subcommand("euler", "Euler cocycle samples and the twisted extension");
    c_e->add_option("--triples", ea.triples, "random det-1 triples for the cocycle identity");
    c_e->add_option("--seed", ea.seed, "random seed")->required();
    c_e->add_option("--ext-ball", ea.ext_ball, "word radius of the extension ball (0: skip)");
    c_e->add_option("--assoc", ea.assoc, "sampled triples for associativity");
    c_e->add_option("--p", ea.p, "prime of Z[1/p]");
    c_e->add_flag("--delta-cert", ea.delta_cert, "certify the symmetric hull of Delta on the ball");
    c_e->add_option("--name", ea.name, "report file stem");

    FreesetArgs fa;
    auto* c_f = app.add_subcommand("freeset", "greedy maximal X-free subset of Y in Q");
    c_f->add_option("--Y", fa.Y, "a..b or comma list")->required();
    c_f->add_option("--X", fa.X, "comma list, symmetric, without 0")->required();
    c_f->add_option("--name", fa.name, "report file stem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        if (rc == 0) return kOk;
        err << app.help();
        return kConfig;
    }

    Context ctx{out_dir, &out, &err, json::object()};
    try {
        for (CLI::App* sub : app.get_subcommands()) {
            json cfg{{"command", sub->get_name()}};
            if (sub == c_q) {
                CLI::App* leaf = c_q->get_subcommands().front();
                cfg["command"] = "quasi " + leaf->get_name();
                cfg["options"] = options_json(leaf);
                ctx.config = cfg;
                if (leaf == c_qb) return cmd_quasi_brooks(qa, ctx);
                if (leaf == c_qn) return cmd_quasi_nearint(qa, ctx);
                return cmd_quasi_homogenize(qa, ctx);
            }
            cfg["options"] = options_json(sub);
            ctx.config = cfg;
            if (sub == c_ms) return cmd_modelset(ms, ctx);
            if (sub == c_vf) return cmd_verify(vf, ctx);
            if (sub == c_e) return cmd_euler(ea, ctx);
            if (sub == c_f) return cmd_freeset(fa, ctx);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const AmbientMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const Uncoverable& e) {
        err << "uncoverable: " << e.what() << "\n";
        return kGeneration;
    } catch (const std::exception& e) {
        err << "generation error: " << e.what() << "\n";
        return kGeneration;
    }
    return kConfig;
}

}  // namespace apg::cli
