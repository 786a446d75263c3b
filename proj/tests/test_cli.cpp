#include "apg/cli/commands.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using apg::cli::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "apg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = apg::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("apg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return (dir / name).string();
    }
    std::string out() const { return dir.string(); }

    fs::path dir;
};

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"modelset", "--scheme", "nonsense", "--range", "3"}).code, 2);
    auto r = run({"modelset", "--scheme", "fibonacci", "--out", out()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--range"), std::string::npos);
    EXPECT_EQ(run({"modelset", "--scheme", "fibonacci", "--range", "-3", "--out", out()}).code, 2);
    EXPECT_EQ(run({"modelset", "--scheme", "zp", "--p", "4", "--range", "3", "--out", out()}).code, 2);
    EXPECT_EQ(run({"euler", "--triples", "3"}).code, 2);  // seed required
    EXPECT_EQ(run({"verify", "--input", (dir / "missing.txt").string(), "--out", out()}).code, 2);
}

TEST_F(CliTest, ModelsetWritesFiles) {
    auto r = run({"modelset", "--scheme", "fibonacci", "--range", "30", "--svg", "--out", out(), "--name", "fib"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"fib.csv", "fib.json", "fib.points", "fib.svg"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
    auto j = load(dir / "fib.json");
    EXPECT_EQ(j["count"], 53);
    EXPECT_EQ(j["config"]["command"], "modelset");
    EXPECT_EQ(j["config"]["options"]["range"], "30");
    EXPECT_EQ(j["config"]["options"]["window"], "1");  // defaults recorded too
}

TEST_F(CliTest, VerifyTruncatedIntegers) {
    // {-10..10} taken as a finite set: the whole square is certified
    std::string body = "# ambient: rational\n# region: complete\n";
    for (int k = -10; k <= 10; ++k) body += std::to_string(k) + "\n";
    auto in = write("z.txt", body);
    auto r = run({"verify", "--input", in, "--check", "symmetry,approx", "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = load(dir / "verify.json");
    EXPECT_EQ(j["checks"][1]["certificate"]["translate_count"], 3);
    EXPECT_EQ(j["exit_code"], 0);
}

TEST_F(CliTest, NonSymmetricSetFailsWithWitness) {
    auto in = write("n.txt", "# ambient: rational\n# region: 3\n0\n1\n2\n3\n");
    auto r = run({"verify", "--input", in, "--check", "approx", "--out", out()});
    EXPECT_EQ(r.code, 1);
    auto j = load(dir / "verify.json");
    EXPECT_EQ(j["checks"][0]["status"], "fail");
    EXPECT_EQ(j["checks"][0]["witness"], "1");
}

TEST_F(CliTest, MeyerOutsideModelSetFails) {
    auto in = write("m.txt", "# ambient: quad 5\n# region: 30\n0\n3\n");
    auto r = run({"verify", "--scheme", "fibonacci", "--range", "30", "--input", in, "--check", "meyer", "--out", out()});
    EXPECT_EQ(r.code, 1);
    auto j = load(dir / "verify.json");
    EXPECT_EQ(j["checks"][0]["offending"], "3+0*sqrt(5)");
    EXPECT_EQ(j["checks"][0]["contained"], false);
}

TEST_F(CliTest, MeyerOfModelSetItselfPasses) {
    ASSERT_EQ(run({"modelset", "--scheme", "fibonacci", "--range", "30", "--out", out()}).code, 0);
    auto r = run({"verify", "--scheme", "fibonacci", "--range", "30", "--input", (dir / "modelset.points").string(),
                  "--check", "meyer,delone,pullback", "--out", out()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, UncoverableTruncationExitsThree) {
    // {-1, 0, 1} cannot cover 10 with translates of gauge <= 1
    auto in = write("u.txt", "# ambient: rational\n# region: 1\n-1\n0\n1\n");
    auto other = write("v.txt", "# ambient: rational\n# region: 10\n-10\n10\n");
    auto r = run({"verify", "--input", in, "--other", other, "--check", "commensurable", "--translate-radius", "1",
                  "--out", out()});
    EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
    const std::vector<std::vector<std::string>> cmds{
        {"modelset", "--scheme", "zp", "--p", "3", "--range", "20"},
        {"quasi", "nearint", "--pairs", "2000", "--seed", "9"},
        {"euler", "--triples", "50", "--seed", "5", "--ext-ball", "1", "--assoc", "20"},
        {"freeset", "--Y", "0..20", "--X", "-3,-1,1,3"},
    };
    for (auto args : cmds) {
        args.insert(args.end(), {"--out", out(), "--name", "a"});
        ASSERT_EQ(run(args).code, 0);
        const std::string first = slurp(dir / "a.json");
        ASSERT_EQ(run(args).code, 0);
        EXPECT_EQ(slurp(dir / "a.json"), first) << args[0];
    }
}

TEST_F(CliTest, OutDirFromEnvironment) {
    const fs::path env_dir = dir / "env";
    ::setenv("APG_OUT_DIR", env_dir.c_str(), 1);
    auto r = run({"freeset", "--Y", "1,2,3", "--X", "-1,1"});
    ::unsetenv("APG_OUT_DIR");
    ASSERT_EQ(r.code, 0);
    auto j = load(env_dir / "freeset.json");
    EXPECT_EQ(j["B"], json::array({"1", "3"}));
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
    auto cfg = write("c.toml", "out = \"" + (dir / "cfg").string() + "\"\n[quasi.brooks]\nball = 3\ninterior = \"3\"\n");
    auto r = run({"--config", cfg, "quasi", "brooks"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = load(dir / "cfg" / "quasi-brooks.json");
    EXPECT_EQ(j["ball_radius"], 3);
    EXPECT_EQ(j["config"]["options"]["ball"], "3");
    EXPECT_EQ(j["order_property"]["holds"], true);
}

TEST_F(CliTest, FreesetRejectsBadX) {
    EXPECT_EQ(run({"freeset", "--Y", "1", "--X", "0,1,-1", "--out", out()}).code, 2);
    EXPECT_EQ(run({"freeset", "--Y", "1", "--X", "1,2,-1", "--out", out()}).code, 2);
}

TEST_F(CliTest, EulerReportsHalfTurnAndCounts) {
    ASSERT_EQ(run({"euler", "--triples", "200", "--seed", "1", "--out", out()}).code, 0);
    auto j = load(dir / "euler.json");
    EXPECT_EQ(j["cocycle"]["half_turn_beta"], 1);
    EXPECT_EQ(j["cocycle"]["identity_failures"], 0);
    EXPECT_EQ(j["cocycle"]["residuals"].size(), 200u);
}
