#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "subplanck/grid_io.hpp"
#include "subplanck/wigner.hpp"

using namespace subplanck;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

bool single_error_line(const std::string& err, const std::string& kind) {
  return err.rfind("error: " + kind + ": ", 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("grid axis parsing") {
  const auto g = cli::parse_grid_axis("-10:10:801");
  CHECK(g.x_min == -10.0);
  CHECK(g.p_max == 10.0);
  CHECK(g.np == 801);
  for (const char* bad : {"1:2", "1:2:3:4", "2:1:5", "0:1:1", "0:1:2.5", "a:1:3", "0:inf:3", "0:1:"})
    CHECK_THROWS_AS(cli::parse_grid_axis(bad), std::invalid_argument);
}

TEST_CASE("number lists") {
  const auto dirs = cli::parse_number_list("0,15,...,345");
  REQUIRE(dirs.size() == 24);
  CHECK(dirs.back() == 345.0);
  CHECK(cli::parse_number_list("4,6,8").size() == 3);
  CHECK(cli::parse_number_list("0,0.1,...,1").size() == 11);
  for (const char* bad : {"", "1,x", "0,...,5", "0,1,...", "0,1,...,-3"})
    CHECK_THROWS_AS(cli::parse_number_list(bad), std::invalid_argument);
}

TEST_CASE("wigner command writes the library grid") {
  TempDir dir("subplanck_cli_wigner");
  const auto r = invoke({"wigner", "--L", "4", "--beta", "2", "--grid", "-5:5:41", "--out-dir", dir.str(), "--name",
                         "w", "--image"});
  REQUIRE(r.code == 0);
  const auto expected = wigner_grid(make_cat(2.0, 4), GridSpec::square(-5.0, 5.0, 41));
  CHECK(slurp(dir.path / "w.csv") == grid_to_csv(expected));
  CHECK(fs::exists(dir.path / "w.png"));

  const auto j = invoke({"wigner", "--L", "2", "--beta", "1", "--theta", "3.14159", "--grid", "-3:3:11", "--pgrid",
                         "-1:1:5", "--format", "json", "--out-dir", dir.str(), "--name", "odd"});
  REQUIRE(j.code == 0);
  const auto back = grid_from_json(slurp(dir.path / "odd.json"));
  CHECK(back.spec.np == 5);
  CHECK(back.spec.nx == 11);

  const auto c = invoke({"wigner", "--L", "8", "--beta", "8", "--center-only", "--grid", "-0.5:0.5:21", "--out-dir",
                         dir.str()});
  REQUIRE(c.code == 0);
  CHECK(fs::exists(dir.path / "wigner_center_L8_beta8.csv"));

  CHECK(invoke({"wigner", "--L", "2", "--beta", "8", "--theta", "0", "--center-only", "--grid", "-0.4:0.4:21",
                "--out-dir", dir.str()})
            .code == 0);
  const auto bad = invoke({"wigner", "--L", "2", "--beta", "8", "--theta", "1", "--center-only", "--out-dir", dir.str()});
  CHECK(bad.code == 1);
}

TEST_CASE("output directory falls back to the environment") {
  TempDir dir("subplanck_cli_env");
  ::setenv("SUBPLANCK_OUTPUT_DIR", dir.str().c_str(), 1);
  const auto r = invoke({"overlap", "--L", "2", "--beta", "8", "--grid", "-1:1:11", "--zeros"});
  ::unsetenv("SUBPLANCK_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir.path / "overlap_exact_L2_beta8.csv"));
  CHECK(fs::exists(dir.path / "overlap_exact_L2_beta8_zeros.csv"));
}

TEST_CASE("overlap modes, extension and optomech") {
  TempDir dir("subplanck_cli_misc");
  for (const char* mode : {"exact", "diagonal", "bessel"})
    CHECK(invoke({"overlap", "--L", "6", "--beta", "8", "--mode", mode, "--grid", "-1:1:9", "--out-dir", dir.str()})
              .code == 0);
  CHECK(invoke({"overlap", "--coherent", "--beta", "3", "--grid", "-1:1:9", "--out-dir", dir.str()}).code == 0);

  REQUIRE(invoke({"extension", "--L", "4", "--betas", "4,8", "--dirs", "0,45,...,90", "--out-dir", dir.str()}).code ==
          0);
  const std::string csv = slurp(dir.path / "extension_L4.csv");
  CHECK(csv.rfind("L,beta,direction_degrees,width,no_zero\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  const auto o = invoke({"optomech", "--M", "30", "--ksq", "1/240", "--alpha0", "8", "--purity", "--t",
                         "188.49555921538757", "--out-dir", dir.str()});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("components 4") != std::string::npos);
  const std::string report = slurp(dir.path / "optomech_M30_report.json");
  CHECK(report.find("\"purity\"") != std::string::npos);
  CHECK(fs::exists(dir.path / "optomech_M30_state.json"));
}

TEST_CASE("failures exit nonzero with one error line") {
  TempDir dir("subplanck_cli_fail");
  auto r = invoke({"optomech", "--M", "60", "--ksq", "0.00416", "--out-dir", dir.str()});
  CHECK(r.code == 1);
  CHECK(single_error_line(r.err, "invalid-argument"));

  r = invoke({"wigner", "--L", "2", "--beta", "2", "--grid", "1:-1:5", "--out-dir", dir.str()});
  CHECK(r.code == 1);
  CHECK(single_error_line(r.err, "invalid-argument"));

  r = invoke({"wigner", "--beta", "2", "--bogus"});
  CHECK(r.code == 1);
  CHECK(single_error_line(r.err, "invalid-argument"));

  r = invoke({"extension", "--L", "3", "--betas", "8", "--out-dir", dir.str()});
  CHECK(r.code == 1);

  r = invoke({});
  CHECK(r.code == 1);

  r = invoke({"wigner", "--L", "2", "--beta", "2", "--grid", "-1:1:5", "--out-dir", (dir.path / "missing").string()});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "io"));

  r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("wigner") != std::string::npos);
  CHECK(invoke({"optomech", "--help"}).code == 0);
}
