#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "homlie/catalog.hpp"
#include "homlie/io.hpp"

using namespace homlie;

namespace {

TEST_CASE("algebra json round trip") {
  for (const auto& L : {heisenberg(Scalar(1, 2)), example314(1, 2, 3, 5),
                        abelian(2), sl2(), sl2_involution()}) {
    json j = emit_algebra(L);
    CHECK(parse_algebra(j) == L);
    // through text as well
    CHECK(parse_algebra(json::parse(j.dump())) == L);
  }
}

TEST_CASE("algebra json rejections") {
  json good = emit_algebra(heisenberg(1));

  json extra = good;
  extra["colour"] = "blue";
  CHECK_THROWS_AS(parse_algebra(extra), parse_error);

  json bad_order = good;
  bad_order["brackets"][0]["i"] = 2;
  bad_order["brackets"][0]["j"] = 1;
  CHECK_THROWS_AS(parse_algebra(bad_order), parse_error);

  json diag = good;
  diag["brackets"][0]["j"] = 4;  // out of range
  CHECK_THROWS_AS(parse_algebra(diag), parse_error);

  json decimal = good;
  decimal["alpha"][0][0] = "0.5";
  CHECK_THROWS_AS(parse_algebra(decimal), parse_error);

  json numeric = good;
  numeric["alpha"][0][0] = 1;  // rationals must be strings
  CHECK_THROWS_AS(parse_algebra(numeric), parse_error);

  json no_alpha = good;
  no_alpha.erase("alpha");
  CHECK_THROWS_AS(parse_algebra(no_alpha), parse_error);

  json short_basis = good;
  short_basis["basis"] = {"e1", "e2"};
  CHECK_THROWS_AS(parse_algebra(short_basis), parse_error);

  json bracket_extra = good;
  bracket_extra["brackets"][0]["weight"] = 1;
  CHECK_THROWS_AS(parse_algebra(bracket_extra), parse_error);
}

TEST_CASE("module json round trip and rejections") {
  HomLieAlgebra L = sl2_involution();
  Representation V = adjoint(L, 1);
  json j = emit_module(V);
  Representation back = parse_module(j, L);
  CHECK(back.dim_v() == V.dim_v());
  CHECK(back.beta() == V.beta());
  for (std::size_t i = 0; i < L.dim(); ++i) CHECK(back.rho()[i] == V.rho()[i]);

  json extra = j;
  extra["note"] = "x";
  CHECK_THROWS_AS(parse_module(extra, L), parse_error);

  json short_rho = j;
  short_rho["rho"].erase(2);
  CHECK_THROWS_AS(parse_module(short_rho, L), parse_error);

  json no_beta = j;
  no_beta.erase("beta");
  CHECK_THROWS_AS(parse_module(no_beta, L), parse_error);
}

TEST_CASE("map space and trace emission") {
  HomLieAlgebra L = heisenberg(1);
  Representation V = adjoint(L, 0);
  json s = emit_map_space(solve_bider_s(L, V));
  CHECK(s["kind"] == "bider_s");
  CHECK(s["dim"] == 2);
  REQUIRE(s["basis"].size() == 2);
  // d x n x n nested arrays of rational strings
  CHECK(s["basis"][0].size() == 3);
  CHECK(s["basis"][0][0].size() == 3);
  CHECK(s["basis"][0][0][0].size() == 3);
  CHECK(s["basis"][0][0][0][0].is_string());

  json c = emit_map_space(solve_cent(L, V));
  CHECK(c["kind"] == "cent");
  CHECK(c["basis"][0].size() == 3);     // matrix rows
  CHECK(c["basis"][0][0].size() == 3);  // columns

  ReductionResult r = reduce_bider_s(L, 0, 1);
  json t = emit_trace(r.trace);
  REQUIRE(t.size() == 2);
  CHECK(t[0]["move"] == "direct-solve");
  CHECK(t[0]["note"] == "max levels reached");
  CHECK(t[1]["move"] == "quotient-center");
  CHECK_FALSE(t[1].contains("note"));
  CHECK(t[1]["dims"] == json({3, 2}));
}

// --- end-to-end checks against the installed binary ---

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("HOMLIE_CLI");
  if (!cli) FAIL("HOMLIE_CLI not set");
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

TEST_CASE("cli validate exit codes") {
  std::string good = write_temp("cli_good.json", emit_algebra(heisenberg(2)).dump());
  CHECK(run_cli("validate " + good).status == 0);

  // bad twist: not multiplicative
  HomLieAlgebra h = heisenberg(2);
  json j = emit_algebra(h);
  j["alpha"][2][2] = "3";
  std::string invalid = write_temp("cli_invalid.json", j.dump());
  RunResult r = run_cli("validate " + invalid);
  CHECK(r.status == 1);
  CHECK(r.out.find("multiplicativity fails") != std::string::npos);

  std::string garbage = write_temp("cli_garbage.json", "{not json");
  CHECK(run_cli("validate " + garbage).status == 2);
  CHECK(run_cli("validate /no/such/file.json").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("solve").status == 2);
}

TEST_CASE("cli solve output") {
  std::string file = write_temp("cli_h1.json", emit_algebra(heisenberg(1)).dump());
  RunResult r = run_cli("solve bider-s " + file);
  CHECK(r.status == 0);
  CHECK(r.out.find("dim 2") != std::string::npos);
  CHECK(r.out.find("δ(e1,e2)") != std::string::npos);

  RunResult cent = run_cli("solve cent " + file + " --adjoint 1");
  CHECK(cent.status == 0);
  CHECK(cent.out.find("f(e1)") != std::string::npos);

  CHECK(run_cli("solve nonsense " + file).status == 2);
}

TEST_CASE("cli json output is byte identical across runs") {
  std::string file = write_temp("cli_e314.json",
                                emit_algebra(example314(1, 2, 3, 5)).dump());
  for (const std::string& cmd :
       {"solve bider-s " + file + " --json", "reduce com " + file + " --json",
        "info " + file + " --json",
        std::string("catalog emit heisenberg --params 1/2 --json")}) {
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("cli catalog emit feeds validate") {
  RunResult emit = run_cli("catalog emit sl2-involution");
  REQUIRE(emit.status == 0);
  std::string file = write_temp("cli_sl2inv.json", emit.out);
  CHECK(run_cli("validate " + file).status == 0);
  CHECK(run_cli("verify thm37 " + file).status == 0);
  CHECK(run_cli("verify thm43 " + file + " --adjoint 1").status == 0);

  std::string h = write_temp("cli_h2.json", emit_algebra(heisenberg(2)).dump());
  CHECK(run_cli("verify thm37 " + h).status == 1);  // hypotheses fail

  CHECK(run_cli("catalog emit heisenberg --params 0").status == 2);
  CHECK(run_cli("catalog emit nonsense").status == 2);
  CHECK(run_cli("catalog list").status == 0);
}

TEST_CASE("cli loop check") {
  CHECK(run_cli("loop-check --k 0 --phi 't^2 + 1' --window 6").status == 0);
  RunResult wrong =
      run_cli("loop-check --k 0 --phi 't^2 + 1' --window 6 --wrong-twist");
  CHECK(wrong.status == 1);
  CHECK(wrong.out.find("(e*t^-6, f*t^0)") != std::string::npos);
  CHECK(run_cli("loop-check --k 0 --phi 't^2 + 1' --window 1").status == 2);
  CHECK(run_cli("loop-check --k 0 --phi 'bogus' --window 4").status == 2);
}

}  // namespace
