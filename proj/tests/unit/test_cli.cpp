#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mql/mql.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + MQL_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<nlohmann::json> records(const std::string& out) {
  std::vector<nlohmann::json> r;
  std::istringstream is(out);
  for (std::string line; std::getline(is, line);) r.push_back(nlohmann::json::parse(line));
  return r;
}

}  // namespace

TEST(Cli, FlipExample) {
  auto r = run("flip 4,4,4,4 -i 4");
  ASSERT_EQ(r.code, 0);
  const auto rec = records(r.out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["quad"], "4,4,4,36");
  EXPECT_EQ(rec[0]["cmd"], "flip");
  EXPECT_EQ(rec[0]["input"], "4,4,4,4");
  EXPECT_EQ(rec[0]["version"], mql::kVersion);
  EXPECT_EQ(run("--format text flip 4,4,4,4 -i 4").out, "4,4,4,36\n");
}

TEST(Cli, FlipOutputVerifies) {
  for (const char* q : {"4,4,4,4", "1,5,24,30", "2.5,3,1+i,6"}) {
    // complete the complex example first
    std::string quad = q;
    if (quad == "2.5,3,1+i,6") {
      const auto roots = mql::complete_quad(2.5, 3.0, mql::Complex(1, 1));
      quad = "2.5,3,1+i," + mql::format_complex(roots.d, 17);
    }
    for (int i = 1; i <= 4; ++i) {
      const auto r = run("--format text flip " + quad + " -i " + std::to_string(i));
      ASSERT_EQ(r.code, 0) << quad;
      std::string flipped = r.out.substr(0, r.out.size() - 1);
      EXPECT_EQ(run("verify '" + flipped + "'").code, 0) << flipped;
    }
  }
}

TEST(Cli, SystoleExample) {
  const auto r = run("systole 4,4,4,4");
  ASSERT_EQ(r.code, 0);
  const auto rec = records(r.out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_NEAR(rec[0]["length"].get<double>(), 2.0 * std::asinh(2.0), 1e-12);
  EXPECT_NEAR(rec[0]["length"].get<double>(), 2.887271, 1e-6);
  EXPECT_EQ(rec[0]["kind"], "one-sided");
}

TEST(Cli, FundamentalListsTheReducedQuads) {
  const auto r = run("--format text fundamental");
  ASSERT_EQ(r.code, 0);
  std::string expected;
  for (const auto& q : mql::integral::fundamental_quads()) expected += "(" + mql::integral::to_string(q) + ")\n";
  EXPECT_EQ(r.out, expected);
}

TEST(Cli, ReducePaths) {
  auto rec = records(run("reduce 3481,5,24,30").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["quad"], "1,5,24,30");
  EXPECT_EQ(rec[0]["word"], "f1");
  EXPECT_EQ(rec[0]["exact"], true);
  rec = records(run("reduce 4.0,4,4,36").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["quad"], "4,4,4,4");
  EXPECT_EQ(rec[0]["kind"], "sink");
  EXPECT_EQ(rec[0]["exact"], false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify 4,4,4,4").code, 0);
  EXPECT_EQ(run("verify 1,2,3,4").code, 2);
  EXPECT_EQ(run("verify 1.5,2,3,4").code, 2);
  EXPECT_EQ(run("systole 1,2,3,4").code, 2);
  EXPECT_EQ(run("verify 1,2,3").code, 1);
  EXPECT_EQ(run("flip 4,4,4,4 -i 5").code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--exact flip 4.0,4,4,4 -i 1").code, 1);
  EXPECT_EQ(run("enumerate-integral -B 3").code, 4);
  EXPECT_EQ(run("coords 0,0,0,0 --to lambda").code, 4);
  EXPECT_EQ(run("spectrum 0,0,0,0 -L 3 --max-cells 100").code, 3);
  EXPECT_EQ(run("spectrum 0,0,0,0 -L 3", "MQL_MAX_CELLS=100").code, 3);
  EXPECT_EQ(run("mcshane 4,4,4,4 --cutoff 1e6 --budget 10").code, 3);
  EXPECT_EQ(run("--version").code, 0);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Deterministic) {
  for (const char* args : {"spectrum 1,5,24,30 -L 6", "spectrum 2,5,5,8 -L 6 --two-sided", "bq-check 3,3,6,6 -k 40",
                           "mcshane 4,4,4,4 --cutoff 1000", "enumerate-integral -B 100"}) {
    const auto a = run(args), b = run(args), c = run(std::string("--threads 4 ") + args);
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out, c.out) << args;
  }
}

TEST(Cli, CsvAndOutFile) {
  const auto r = run("--format csv reduce 4,4,4,36");
  EXPECT_EQ(r.out, "cmd,version,input,quad,word,exact\nreduce," + std::string(mql::kVersion) +
                       ",\"4,4,4,36\",\"4,4,4,4\",f4,true\n");
  const std::string path = ::testing::TempDir() + "mql_cli_out.jsonl";
  ASSERT_EQ(run("--out " + path + " flip 4,4,4,4 -i 1").code, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  char buf[512] = {};
  const std::size_t n = std::fread(buf, 1, sizeof buf - 1, f);
  std::fclose(f);
  EXPECT_EQ(nlohmann::json::parse(std::string(buf, n))["quad"], "36,4,4,4");
}

TEST(Cli, OtherSubcommands) {
  auto rec = records(run("mcg 1,5,24,30 -w p2").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["quad"], "24,30,1,5");

  rec = records(run("coords 4,4,4,4 --to horocyclic").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["in_fundamental_domain"], true);
  rec = records(run("coords 0.25,0.25,0.25,0.25 --from horocyclic").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["quad"], "4,4,4,4");

  rec = records(run("klein -A 3 --seed 1,1 -n 6").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["terms"], nlohmann::json({1.0, 1.0, 2.0, 5.0, 13.0, 34.0}));

  rec = records(run("enumerate-integral -B 36").out);
  bool saw = false;
  for (const auto& x : rec) saw = saw || x["quad"] == "4,4,4,36";
  EXPECT_TRUE(saw);

  rec = records(run("growth 4,4,4,4 --lmin 6 --lmax 12 --shells 4").out);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0]["samples"].size(), 4u);
}
