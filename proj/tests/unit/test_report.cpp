#include "wildcycle/errors.hpp"
#include "wildcycle/report.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace wildcycle;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path corpus(const std::string& name) { return fs::path(WILDCYCLE_CORPUS_DIR) / name; }

int run_cli(const std::string& args)
{
    int st = std::system((std::string(WILDCYCLE_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const char* kPair = "variables: t z\nrank: 2\nmatrix:\n0 ; 1\nt^-2 ; 0\nend\n";

}  // namespace

TEST(Report, ExitCodeMapping)
{
    EXPECT_EQ(exit_code_for(ErrorKind::ParseError), 1);
    EXPECT_EQ(exit_code_for(ErrorKind::UnsupportedExponent), 1);
    EXPECT_EQ(exit_code_for(ErrorKind::NotStarShaped), 1);
    EXPECT_EQ(exit_code_for(ErrorKind::InsufficientTruncation), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::UnsupportedAlgebraicExtension), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::Internal), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::NonTerminating), 3);
}

TEST(Report, DefaultTruncationIsClamped)
{
    EXPECT_EQ(default_truncation(1, 0), 8);
    EXPECT_EQ(default_truncation(3, 2), 10);
    EXPECT_EQ(default_truncation(6, 20), 64);
}

TEST(Report, SchemaAndKeyOrder)
{
    Report r = run_command_text("decompose", kPair);
    EXPECT_EQ(r.exit_code, 0);
    json j = json::parse(r.json);
    // nlohmann::json sorts keys, so the emitted order is checked on the text
    EXPECT_EQ(j["schema"], kReportSchema);
    EXPECT_EQ(j["command"], "decompose");
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["input"]["format"], kDocumentFormat);
    size_t last = 0;
    for (const char* k : {"schema", "command", "input", "options", "result", "truncation", "findings", "exit_code"}) {
        size_t at = r.json.find(std::string("\n  \"") + k + "\"");
        ASSERT_NE(at, std::string::npos) << k;
        EXPECT_GE(at, last) << k;
        last = at;
    }
    std::multiset<std::string> phis;
    for (const auto& p : j["result"]["phi_set"]) phis.insert(p["phi"].get<std::string>());
    EXPECT_EQ(phis, (std::multiset<std::string>{"t^-1", "-t^-1"}));
}

TEST(Report, EveryCommandRoundTripsAndIsDeterministic)
{
    for (const auto& cmd : command_names()) {
        Report a = run_command_text(cmd, kPair), b = run_command_text(cmd, kPair);
        EXPECT_EQ(a.exit_code, 0) << cmd << "\n" << a.text;
        EXPECT_EQ(a.json, b.json) << cmd;
        EXPECT_EQ(a.text, b.text) << cmd;
        EXPECT_EQ(reserialize_json(a.json), a.json) << cmd;
        EXPECT_EQ(render_text(a.json), a.text) << cmd;
    }
}

TEST(Report, InputErrorsBecomeExitCodeOne)
{
    Report r = run_command_text("decompose", "variables: t z\nrank: 1\nmatrix:\nt^(1/2)\nend\n");
    EXPECT_EQ(r.exit_code, 1);
    json j = json::parse(r.json);
    EXPECT_EQ(j["findings"][0]["error"], "UnsupportedExponent");
    RunOptions bad;
    bad.truncation = 65;
    EXPECT_EQ(run_command_text("decompose", kPair, bad).exit_code, 1);
    RunOptions l0;
    l0.lambda0 = "1 +";
    EXPECT_EQ(run_command_text("nearby", kPair, l0).exit_code, 1);
}

TEST(Report, TruncationFailureReportsTheRequiredTruncation)
{
    Report r = run_command_text("decompose", "variables: t z\nrank: 2\ntruncation: 1\nmatrix:\nt^-2 + O(t) ; t^-1 + O(t)\nt^-3 + O(t) ; O(t)\nend\n");
    EXPECT_EQ(r.exit_code, 2);
    json j = json::parse(r.json);
    EXPECT_EQ(j["findings"][0]["error"], "InsufficientTruncation");
    EXPECT_GT(j["truncation"]["required_truncation"].get<int>(), 1);
}

TEST(Report, LambdaPointsAgreeWithTheFamily)
{
    Report r = run_command_text("decompose", slurp(corpus("rank_one_half.wc")));
    ASSERT_EQ(r.exit_code, 0);
    json j = json::parse(r.json);
    ASSERT_EQ(j["result"]["restrictions"].size(), 2u);
    for (const auto& x : j["result"]["restrictions"]) EXPECT_TRUE(x["agrees_with_family"].get<bool>());
}

TEST(Cli, ExitCodesAndOutputFiles)
{
    EXPECT_EQ(run_cli("decompose --input " + corpus("exponential_pair.wc").string()), 0);
    EXPECT_EQ(run_cli("verify --input " + corpus("truncated_twisted.wc").string()), 0);
    EXPECT_EQ(run_cli("decompose --input /nonexistent/file.wc"), 1);
    EXPECT_EQ(run_cli("decompose --input " + corpus("exponential_pair.wc").string() + " --truncation 0"), 1);
    EXPECT_EQ(run_cli("frobnicate --input " + corpus("exponential_pair.wc").string()), 1);
    fs::path dir = fs::temp_directory_path() / "wildcycle_cli_test";
    fs::create_directories(dir);
    fs::path bad = dir / "trunc.wc";
    std::ofstream(bad) << "variables: t z\nrank: 2\ntruncation: 1\nmatrix:\nt^-2 + O(t) ; t^-1 + O(t)\nt^-3 + O(t) ; O(t)\nend\n";
    EXPECT_EQ(run_cli("nearby --input " + bad.string()), 2);
    fs::path out = dir / "report";
    EXPECT_EQ(run_cli("nearby --input " + corpus("regular_diagonal.wc").string() + " --json --output " + out.string()), 0);
    ASSERT_TRUE(fs::exists(out));
    ASSERT_TRUE(fs::exists(out.string() + ".txt"));
    std::string js = slurp(out);
    EXPECT_EQ(render_text(js), slurp(out.string() + ".txt"));
    EXPECT_EQ(json::parse(js)["result"]["table"]["total_dim"], 3);
    // the CLI output equals the library report byte for byte
    RunOptions none;
    EXPECT_EQ(run_command_text("nearby", slurp(corpus("regular_diagonal.wc")), none).json, js);
    fs::remove_all(dir);
}
