#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture = "cli_capture_" + std::to_string(counter++) + ".tmp";
  const std::string cmd =
      std::string(FRANKL_FORGE_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::remove(capture.c_str());
  return r;
}

std::string write_temp(const std::string& text, const std::string& name) {
  std::ofstream out(name, std::ios::binary);
  out << text;
  return name;
}

}  // namespace

TEST_CASE("check passes on the bundled chain family") {
  auto r = run_cli(std::string("check ") + FRANKL_FORGE_DATA_DIR + "/chain_n1.json --k 5 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("5/7") != std::string::npos);
  CHECK(r.output.find("[pass]") != std::string::npos);
}

TEST_CASE("check accepts union-closed input and the text format") {
  auto r = run_cli(std::string("check ") + FRANKL_FORGE_DATA_DIR + "/union_n3.json --k 5 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("union-closed input") != std::string::npos);

  auto t = run_cli(std::string("check ") + FRANKL_FORGE_DATA_DIR + "/diamond_n2.txt --t 2/5");
  CHECK(t.exit_code == 0);
}

TEST_CASE("check reports verification failure with exit 1") {
  // heavy upward weights break the 1/2 bound: f_1 = 1/(1+2) = 1/3
  auto path = write_temp(R"({"n": 1, "sets": [[], [1]]})", "cli_fail_family.json");
  auto r = run_cli("check " + path + " --k 1 --m 2");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("1/3") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("non-closed and malformed inputs exit 2") {
  auto open_path = write_temp(R"({"n": 2, "sets": [[1], [2]]})", "cli_open_family.json");
  auto r = run_cli("check " + open_path);
  CHECK(r.exit_code == 2);
  std::remove(open_path.c_str());

  auto bad_path = write_temp("{broken", "cli_bad_family.json");
  auto b = run_cli("check " + bad_path);
  CHECK(b.exit_code == 2);
  std::remove(bad_path.c_str());

  auto e = run_cli("exhaustive --n 5 --k 5 --m 2");
  CHECK(e.exit_code == 2);  // n=5 needs --allow-n5
}

TEST_CASE("budget overruns exit 3") {
  auto r = run_cli("entropy-verify --n 2 --k 5,5 --m 2,2 --seed 3 --budget 4");
  CHECK(r.exit_code == 3);
}

TEST_CASE("exhaustive results are jobs-invariant") {
  auto strip_jobs_echo = [](std::string text) {
    const auto pos = text.find("\"jobs\":");
    if (pos != std::string::npos) {
      text.erase(pos, text.find('\n', pos) - pos);
    }
    return text;
  };
  auto one = run_cli("exhaustive --n 3 --k 9 --m 3 --jobs 1 --format json");
  auto four = run_cli("exhaustive --n 3 --k 9 --m 3 --jobs 4 --format json");
  CHECK(one.exit_code == 0);
  CHECK(strip_jobs_echo(one.output) == strip_jobs_echo(four.output));
  CHECK(one.output.find("\"failures\": 0") != std::string::npos);
}

TEST_CASE("entropy-verify passes on a bundled family") {
  auto r = run_cli(std::string("entropy-verify --family ") + FRANKL_FORGE_DATA_DIR +
                   "/diamond_n2.txt --k 3,3 --m 2,1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max residual") != std::string::npos);

  auto toy = run_cli(std::string("entropy-verify --family ") + FRANKL_FORGE_DATA_DIR +
                     "/chain_n1.json --k 2 --m 1");
  CHECK(toy.exit_code == 0);
  CHECK(toy.output.find("mu[1] = 1*d(2/3)") != std::string::npos);
}

TEST_CASE("threshold and scan emit reports") {
  auto r = run_cli("threshold --k 4 --m 2 --grid 512 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"phi_star\"") != std::string::npos);

  auto s = run_cli("scan --k 5..6 --grid 512 --format csv");
  CHECK(s.exit_code == 0);
  CHECK(s.output.find("k,m,phi_star,limiting_type,argmin_x,grid,tol,flags") !=
        std::string::npos);
  CHECK(s.output.find("5,1,0.5,") != std::string::npos);
}

TEST_CASE("sample emits a closed family and respects the seed") {
  auto a = run_cli("sample --n 3 --density 0.4 --seed 11");
  auto b = run_cli("sample --n 3 --density 0.4 --seed 11");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  auto path = write_temp(a.output, "cli_sampled_family.json");
  auto chk = run_cli("check " + path + " --k 5 --m 2");
  CHECK(chk.exit_code == 0);
  std::remove(path.c_str());
}
