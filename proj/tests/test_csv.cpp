#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sshe/csv.hpp"
#include "sshe/errors.hpp"

using namespace sshe;

TEST_CASE("numbers print with 15 significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.25) == "-0.25");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_exact(0.1) == "0.1");
  double back = 0;
  REQUIRE(parse_number(format_exact(1.0 / 3.0), back));
  CHECK(back == 1.0 / 3.0);
}

TEST_CASE("parse_number is strict") {
  double x = 0;
  CHECK(parse_number(" +2.5 ", x));
  CHECK(x == 2.5);
  CHECK_FALSE(parse_number("2,5", x));
  CHECK_FALSE(parse_number("", x));
  CHECK_FALSE(parse_number("1e", x));
  CHECK_FALSE(parse_number("abc", x));
}

TEST_CASE("CSV round trip at 15 digits") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  CsvTable t{{"a", "b"}, {}};
  for (int i = 0; i < 100; ++i) t.rows.push_back({u(rng), std::exp(u(rng) / 20)});
  std::istringstream is(to_csv_string(t));
  const CsvTable back = parse_csv(is);
  REQUIRE(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(format_number(back.rows[i][j]) == format_number(t.rows[i][j]));
      CHECK(std::abs(back.rows[i][j] - t.rows[i][j]) <= 1e-14 * std::abs(t.rows[i][j]));
    }
}

TEST_CASE("malformed CSV is rejected") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(parse_csv(ragged), ValidationError);
  std::istringstream bad("a\nx\n");
  CHECK_THROWS_AS(parse_csv(bad), ValidationError);
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("atomic write replaces the file") {
  const auto path = std::filesystem::temp_directory_path() / "sshe_atomic_test.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream is(path);
  std::string s;
  std::getline(is, s);
  CHECK(s == "second");
  std::filesystem::remove(path);
}
