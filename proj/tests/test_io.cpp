#include "apg/cutproject/model_set.hpp"
#include "apg/io/serialize.hpp"
#include "apg/quasi/quasimorphism.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace apg;

namespace {

template <AmbientGroup G>
PointSet<G> round_trip(const PointSet<G>& X) {
    std::stringstream ss;
    io::write_point_set(ss, X);
    return io::point_set_from(X.ambient(), io::read_point_set_text(ss));
}

std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : row) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) out.push_back(std::exchange(cur, {}));
        else cur += c;
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST(PointSetFile, RoundTripsEveryAmbient) {
    auto fib = generate_model_set(QuadraticScheme(5, RealInterval{Rational(1)}), Rational(20)).points;
    auto r1 = round_trip(fib);
    EXPECT_TRUE(r1.same_elements(fib));
    EXPECT_EQ(r1.region(), fib.region());

    auto zp = generate_model_set(ZpScheme(3, 0), Rational(10)).points;
    EXPECT_TRUE(round_trip(zp).same_elements(zp));

    auto ball = free_ball(3);
    auto rb = round_trip(ball);
    EXPECT_TRUE(rb.same_elements(ball));

    PointSet<RationalLine> full(RationalLine{}, {Rational(1, 3), Rational(-2)});
    auto rf = round_trip(full);
    EXPECT_TRUE(rf.complete());
    EXPECT_TRUE(rf.same_elements(full));

    auto pis = pisot_matrix_set(5, Rational(1, 2), 3).points;
    EXPECT_TRUE(round_trip(pis).same_elements(pis));
}

TEST(PointSetFile, RejectsMissingHeaderAndBadLines) {
    std::istringstream a("1\n2\n");
    EXPECT_THROW(io::read_point_set_text(a), std::invalid_argument);
    std::istringstream b("# ambient: rational\n1/0\n");
    auto h = io::read_point_set_text(b);
    EXPECT_THROW(io::point_set_from(RationalLine{}, h), std::invalid_argument);
}

TEST(ModelSetCsv, ColumnsAndFloatsMatchExactValues) {
    auto m = generate_model_set(QuadraticScheme(5, RealInterval{Rational(1)}), Rational(10));
    std::stringstream ss;
    io::write_model_set_csv(ss, m);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "physical,internal,physical_float");
    std::size_t rows = 0;
    double prev = -1e300;
    while (std::getline(ss, line)) {
        auto f = split_csv_row(line);
        ASSERT_EQ(f.size(), 3u) << line;
        QuadScalar x = QuadScalar::parse(f[0], 5);
        EXPECT_TRUE(m.points.contains(x));
        // independent float evaluation of a + b sqrt(5)
        const double v = std::stod(f[2]);
        EXPECT_NEAR(v, x.a().to_double() + x.b().to_double() * std::sqrt(5.0), 1e-9);
        EXPECT_GT(v, prev);
        prev = v;
        ++rows;
    }
    EXPECT_EQ(rows, m.size());
}

TEST(ModelSetCsv, NonRealPhysicalSideLeavesFloatEmpty) {
    // physical side Q_p
    auto m = approximate_ring_zp(2, 3, Rational(8));
    std::stringstream ss;
    io::write_model_set_csv(ss, m);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) EXPECT_EQ(line.back(), ',');
}

TEST(ModelSetCsv, QuotesFieldsWithCommas) {
    EXPECT_EQ(io::csv_field("1/2"), "1/2");
    EXPECT_EQ(io::csv_field("[[1,0],[0,1]]"), "\"[[1,0],[0,1]]\"");
    auto m = pisot_matrix_set(5, Rational(1, 2), 2);
    std::stringstream ss;
    io::write_model_set_csv(ss, m);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) EXPECT_EQ(split_csv_row(line).size(), 3u) << line;
}

TEST(Provenance, RecordsSchemeRangeAndCount) {
    auto m = approximate_ring_zp(3, 2, Rational(9));
    auto j = io::model_set_provenance(m);
    EXPECT_EQ(j["range"], "9");
    EXPECT_EQ(j["count"], m.size());
    EXPECT_EQ(j["window_recheck"], true);
    EXPECT_TRUE(j["scheme"].is_object());
    EXPECT_FALSE(j["scheme"].empty());
}

TEST(CertificateJson, MirrorsCertificate) {
    PointSet<RationalLine> X(RationalLine{}, {Rational(-1), Rational(0), Rational(1)}, Rational(1));
    auto cert = verify_approximate_subgroup(X);
    auto j = io::certificate_json(cert, X.ambient());
    EXPECT_EQ(j["translate_count"], cert.translates.size());
    EXPECT_EQ(j["validated"], true);
    EXPECT_EQ(j["region"], "1");
    EXPECT_TRUE(j["translate_radius"].is_null());
}

TEST(Svg, OneTickPerPoint) {
    const std::string s = io::svg_ticks({0.0, 1.5, 3.0});
    std::size_t n = 0;
    for (auto p = s.find("steelblue"); p != std::string::npos; p = s.find("steelblue", p + 1)) ++n;
    EXPECT_EQ(n, 3u);
    EXPECT_NE(s.find("x1=\"20.000\""), std::string::npos);
    EXPECT_NE(s.find("x1=\"980.000\""), std::string::npos);
    EXPECT_EQ(io::svg_ticks({}).find("steelblue"), std::string::npos);
}
