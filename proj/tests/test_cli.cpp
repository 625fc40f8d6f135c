#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qnr/json_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(QNR_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qnr_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = temp_dir() / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string matrix_file(const std::string& name, const qnr::ComplexMatrix& m) {
  return write_file(name, qnr::matrix_to_json(m).dump());
}

}  // namespace

TEST_CASE("radius subcommand: values, json output, exit codes") {
  using qnr::ComplexMatrix;
  const std::string ex1 = matrix_file(
      "ex1.json", ComplexMatrix::from_entries(2, {0.1, 1.0 / 24, 1.0 / 24, 0.1}));
  const RunResult plain = run("radius " + ex1 + " --q 0.5");
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("value 0.0916666") != std::string::npos);

  const RunResult json = run("radius " + ex1 + " --q 0.5 --json");
  CHECK(json.exit_code == 0);
  const auto parsed = nlohmann::json::parse(json.out);
  CHECK(std::abs(parsed["value"].get<double>() - (1.0 / 24 + 0.05)) < 1e-6);
  CHECK(parsed["constraint_residual"].get<double>() < 1e-9);

  const std::string id3 = matrix_file("id3.json", ComplexMatrix::identity(3));
  const std::string id3_out = run("radius " + id3 + " --q 0.7").out;
  REQUIRE(id3_out.rfind("value ", 0) == 0);
  CHECK(std::abs(std::stod(id3_out.substr(6)) - 0.7) < 1e-9);

  const std::string zero = matrix_file("zero.json", ComplexMatrix(2));
  CHECK(run("radius " + zero + " --q 0.5").out.find("value 0\n") != std::string::npos);

  const std::string broken = write_file("broken.json", "{\"dim\": 2, \"entries\": [[1,0]]");
  CHECK(run("radius " + broken + " --q 0.5").exit_code == 2);

  const std::string overflow = write_file(
      "overflow.json", "{\"dim\": 1, \"entries\": [[1e999, 0]]}");
  CHECK(run("radius " + overflow + " --q 1").exit_code == 2);

  const std::string one = matrix_file("one.json", ComplexMatrix::identity(1));
  CHECK(run("radius " + one + " --q 0.5").exit_code == 3);
  CHECK(run("radius " + one + " --q 1").exit_code == 0);

  CHECK(run("radius " + ex1 + " --q not_a_number").exit_code == 2);
}

TEST_CASE("bounds subcommand: closed forms and exit codes") {
  using qnr::ComplexMatrix;
  const std::string t = matrix_file("t.json", ComplexMatrix::from_entries(1, {2.0}));
  const std::string s = matrix_file("s.json", ComplexMatrix::from_entries(1, {1.0}));

  const RunResult r =
      run("bounds --family tridiagonal --n 3 --q 0.5 " + t + " " + s + " --json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double r2p2 = 2.0 + std::sqrt(2.0);
  CHECK(std::abs(j["lower"].get<double>() - r2p2 * 0.5) < 1e-12);
  CHECK(std::abs(j["upper"].get<double>() - r2p2 * (0.5 + std::sqrt(3.0))) < 1e-12);
  CHECK(j["verdict"]["lower_ok"].get<bool>());
  CHECK(j["verdict"]["upper_ok"].get<bool>());
  CHECK(j["cfg"].contains("seed"));

  CHECK(run("bounds --family tridiagonal --n 3 --q 0 " + t + " " + s).exit_code == 3);
  CHECK(run("bounds --family circulant --n 3 --q 0.5 " + t + " " + s).exit_code == 2);
  CHECK(run("bounds --family heptagonal --n 2 --q 0.5 " + t + " " + s).exit_code == 2);

  // q = 1 identity-block circulant: lower = upper = 2.
  const std::string i2 = matrix_file("i2.json", ComplexMatrix::identity(2));
  const RunResult req =
      run("bounds --family circulant --n 2 --q 1 " + i2 + " " + i2 + " --json");
  CHECK(req.exit_code == 0);
  const auto jq = nlohmann::json::parse(req.out);
  CHECK(jq["lower"].get<double>() == 2.0);
  CHECK(jq["upper"].get<double>() == 2.0);
}

TEST_CASE("range subcommand: csv shape, content, determinism") {
  using qnr::ComplexMatrix;
  const std::string id2 = matrix_file("id2.json", ComplexMatrix::identity(2));
  const std::string csv1 = (temp_dir() / "id2.csv").string();
  const std::string csv2 = (temp_dir() / "id2_again.csv").string();
  const std::string svg = (temp_dir() / "id2.svg").string();

  CHECK(run("range " + id2 + " --q 0.5 --thetas 90 --out " + csv1 + " --svg " + svg)
            .exit_code == 0);
  CHECK(run("range " + id2 + " --q 0.5 --thetas 90 --out " + csv2).exit_code == 0);

  const std::string body = read_file(csv1);
  CHECK(body == read_file(csv2));
  CHECK(read_file(svg).find("<polyline") != std::string::npos);

  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theta,support,re,im");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 4);
    CHECK(std::abs(vals[2] - 0.5) < 1e-7);
    CHECK(std::abs(vals[3]) < 1e-7);
    // Shortest round-trip text: re-formatting the parsed value is an identity.
    std::istringstream recells(line);
    std::getline(recells, cell, ',');
    CHECK(qnr::format_double(std::stod(cell)) == cell);
  }
  CHECK(rows == 90);

  CHECK(run("range " + id2 + " --q 0.5 --thetas 4 --out " + csv1).exit_code == 2);
}

TEST_CASE("build subcommand assembles and reduces") {
  using qnr::ComplexMatrix;
  const std::string t = matrix_file("bt.json", ComplexMatrix::from_entries(1, {2.0}));
  const std::string s = matrix_file("bs.json", ComplexMatrix::from_entries(1, {1.0}));
  const std::string out = (temp_dir() / "built.json").string();
  const std::string blocks = (temp_dir() / "red").string();

  const RunResult r = run("build --family tridiagonal --n 3 " + t + " " + s + " --out " + out +
                          " --reduced-blocks " + blocks);
  CHECK(r.exit_code == 0);
  const qnr::ComplexMatrix built = qnr::load_matrix(out);
  CHECK(qnr::max_entry_distance(
            built, ComplexMatrix::from_entries(3, {2, 1, 0, 1, 2, 1, 0, 1, 2})) == 0.0);
  const qnr::ComplexMatrix k1 = qnr::load_matrix(blocks + "_k1.json");
  CHECK(std::abs(k1.at(0, 0) - qnr::cplx(2.0 + std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("verify subcommand exit codes and report writing") {
  const std::string report = (temp_dir() / "axioms.json").string();
  const RunResult r = run("verify --suite axioms --trials 1 --seed 42 --report " + report);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  const auto j = nlohmann::json::parse(read_file(report));
  CHECK(j["overall_pass"].get<bool>());
  for (const auto& rec : j["suites"][0]["records"]) CHECK(rec["trials"].get<int>() == 1);

  CHECK(run("verify --suite nope").exit_code == 2);
  CHECK(run("verify --suite axioms --trials 1 --report /nonexistent_dir/x.json").exit_code ==
        2);
}

TEST_CASE("reproduce subcommand: identity-block example emits the exact chain") {
  const std::string prefix = (temp_dir() / "ex2").string();
  const RunResult r = run("reproduce --example ex2 --q-grid 0.1:1:0.1 --out " + prefix);
  CHECK(r.exit_code == 0);

  std::istringstream lines(read_file(prefix + ".csv"));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "q,lower,wq,upper");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 4);
    const double q = v[0];
    CHECK(v[1] == 2.0 * q);                         // lower is exactly 2q
    CHECK(std::abs(v[2] - (1.0 + q)) < 1e-6);       // estimate of 1 + q
    CHECK(v[1] <= 1.0 + q);                         // the chain, exactly
    CHECK(1.0 + q <= v[3]);
    CHECK(v[1] <= v[2] + 1e-5);
    CHECK(v[2] <= v[3] + 1e-5);
  }
  CHECK(rows == 10);
  CHECK(read_file(prefix + "_boundary.csv").find("theta,support,re,im") == 0);
  CHECK(!read_file(prefix + "_boundary.svg").empty());

  CHECK(run("reproduce --example ex9 --out " + prefix).exit_code == 2);
  CHECK(run("reproduce --example ex2 --q-grid 0:1:0.1 --out " + prefix).exit_code == 2);
}
