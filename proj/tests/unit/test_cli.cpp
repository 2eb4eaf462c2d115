#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef EQUIDEF_CLI
#error "EQUIDEF_CLI must name the command line binary"
#endif

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(EQUIDEF_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, EvalExitCodes) {
  EXPECT_EQ(run("eval --formula '(rel GAMMA a b c)' --points '0,0 1,0 3,0' --norm l2 --impl PSI=oracle").code, 0);
  EXPECT_EQ(run("eval --formula '(rel B a b c)' --points '0,0 2,1 4,0' --norm linf --mode repaired").code, 1);
  const CliRun bad = run("eval --formula '(rel FOO a b c)' --points '0,0 2,1 4,0'");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("unknown relation"), std::string::npos);
  EXPECT_EQ(run("eval --formula '(= a b)' --points '0,0'").code, 2);
  EXPECT_EQ(run("eval --formula '(equi a b c d)' --points '0,0 1,0 0,0 0,1' --backend float").code, 0);
  EXPECT_EQ(run("eval --no-such-flag").code, 2);
}

TEST(Cli, EvalExplain) {
  const CliRun r = run("eval --formula '(exists (z) (and (equi a z a b) (not (= z b))))' --points '0,0 1,0' "
                    "--universe auto --explain");
  EXPECT_EQ(r.code, 1);
  const CliRun w = run("eval --formula '(rel NEQ x y)' --points '0,0 1,0' --explain --norm l1");
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(w.out.find("universe:"), std::string::npos);
}

TEST(Cli, VerifyLayer) {
  EXPECT_EQ(run("verify-layer --relation PHI:3 --seed 1").code, 2);
  EXPECT_EQ(run("verify-layer --relation GAMMA --samples 50").code, 2);
  const std::string out = ::testing::TempDir() + "strict.json";
  const CliRun r = run("verify-layer --relation B --mode strict-paper --sampler midpoint --samples 20 --seed 4 --output " +
                    out);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(slurp(out).find("\"counterexamples\": ["), std::string::npos);
  EXPECT_EQ(run("verify-layer --relation GAMMA --samples 100 --seed 2 --norm l2 --backend exact").code, 0);
}

TEST(Cli, ReportsDeterministic) {
  const CliRun a = run("check-axioms --norm linf --samples 80 --seed 5");
  const CliRun b = run("check-axioms --norm linf --samples 80 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("check-axioms --norm linf --samples 80 --seed 6");
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, VogtAndClosure) {
  const std::string cfg = ::testing::TempDir() + "similarities.cfg";
  std::ofstream(cfg) << R"({"maps": ["similarities"], "norms": ["l1"], "quadruples": 20, "triples": 20, "seed": 1})";
  EXPECT_EQ(run("vogt --maps " + cfg).code, 0);
  EXPECT_EQ(run("vogt --map shear").code, 2);
  const CliRun v = run("vogt --map shear --map anisotropic --seed 2 --quadruples 1000 --triples 50");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("\"classification\": \"violating\""), std::string::npos);

  const std::string pts = ::testing::TempDir() + "chain.pts";
  std::ofstream(pts) << R"([{"x":"0","y":"0"},{"x":"1","y":"0"},{"x":"7/2","y":"0"}])";
  const CliRun c = run("closure --relation DELTA:4 --norm l1 --points " + pts);
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("\"provenance\": \"chain-closure\""), std::string::npos);
}

// Every flag of every subcommand, with its default, appears in --help.
TEST(Cli, HelpDocumentsFlagsAndDefaults) {
  struct Expect {
    const char* sub;
    std::vector<const char*> needles;
  };
  const std::vector<Expect> cases = {
      {"eval",
       {"--formula", "--points", "--universe", "auto", "--impl-default", "layer", "--impl", "--explain", "--output",
        "--norm", "l2", "--backend", "exact", "--tolerance", "1e-09", "--depth-K", "6", "--depth-N", "64",
        "--depth-B", "2", "--chain-max", "8", "--phi-depth", "--no-adaptive-n", "--mode", "repaired"}},
      {"expand", {"--relation", "--stats", "--depth-K"}},
      {"verify-layer", {"--relation", "--samples", "1000", "--seed", "REQUIRED", "--sampler", "default", "auto"}},
      {"check-axioms", {"--axioms", "abcdefghi", "--samples", "--chain-cap", "64", "--formula-stride", "50", "--seed"}},
      {"vogt", {"--maps", "--map", "--norms", "--backend", "--quadruples", "--triples", "--seed", "--output"}},
      {"closure", {"--relation", "--points", "--midpoint-depth", "--max-rounds", "6", "--output"}},
  };
  for (const auto& c : cases) {
    const CliRun r = run(std::string(c.sub) + " --help");
    EXPECT_EQ(r.code, 0) << c.sub;
    for (const char* n : c.needles) EXPECT_NE(r.out.find(n), std::string::npos) << c.sub << ": " << n;
  }
  const CliRun top = run("--help");
  for (const char* s : {"eval", "expand", "verify-layer", "check-axioms", "vogt", "closure", "version"}) {
    EXPECT_NE(top.out.find(s), std::string::npos) << s;
  }
  EXPECT_EQ(run("version").out, "equidef 0.1.0\n");
}
