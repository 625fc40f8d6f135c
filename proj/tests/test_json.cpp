#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qnr/json_io.hpp"
#include "qnr/rng.hpp"

using namespace qnr;

TEST_CASE("matrix json round trip is bit exact") {
  auto rng = make_rng(101);
  for (int n : {1, 3, 5}) {
    const ComplexMatrix m = random_gaussian_matrix(n, rng);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back.dim() == n);
    CHECK(back.entries() == m.entries());
  }
}

TEST_CASE("matrix json validation") {
  CHECK_THROWS_AS(matrix_from_json(ordered_json::parse(R"({"dim": 2})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      matrix_from_json(ordered_json::parse(R"({"dim": 2, "entries": [[1,0],[0,1]]})")),
      std::invalid_argument);  // wrong length
  CHECK_THROWS_AS(
      matrix_from_json(ordered_json::parse(R"({"dim": 1, "entries": [[1,0,0]]})")),
      std::invalid_argument);  // entry is not a pair
  CHECK_THROWS_AS(
      matrix_from_json(ordered_json::parse(R"({"dim": 1, "entries": [["x",0]]})")),
      std::invalid_argument);
}

TEST_CASE("structured spec json round trip") {
  auto rng = make_rng(103);
  StructuredSpec spec;
  spec.family = Family::imaginary_circulant;
  spec.n = 3;
  for (int i = 0; i < 3; ++i) spec.blocks.push_back(random_gaussian_matrix(2, rng));
  const StructuredSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.family == spec.family);
  CHECK(back.n == spec.n);
  for (int i = 0; i < 3; ++i) {
    CHECK(back.blocks[i].entries() == spec.blocks[i].entries());
  }

  CHECK_THROWS_AS(
      spec_from_json(ordered_json::parse(
          R"({"family": "circulant", "n": 3, "blocks": [{"dim":1,"entries":[[1,0]]}]})")),
      std::invalid_argument);  // arity mismatch
}

TEST_CASE("format_double emits shortest round-trip text") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.0, 0.9999999999999999, 1.5e17}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    // Re-formatting the parsed value reproduces the text.
    CHECK(format_double(std::stod(s)) == s);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("atomic_write_file replaces content completely") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qnr_atomic_test.txt").string();
  atomic_write_file(path, "first\n");
  atomic_write_file(path, "second\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second\n");
  std::filesystem::remove(path);
  CHECK_THROWS(atomic_write_file("/nonexistent_dir/sub/file.txt", "x"));
}
