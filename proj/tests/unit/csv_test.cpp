// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>

#include "specsense/csv.hpp"
#include "specsense/rng.hpp"

using namespace specsense;

TEST_CASE("fmt_double round-trips doubles exactly") {
  Rng rng(111);
  std::vector<double> probes = {0.0,
                                -0.0,
                                1.0,
                                -1.0,
                                0.1,
                                1.0 / 3.0,
                                1e-300,
                                -1e300,
                                5e-324,  // smallest denormal
                                std::numeric_limits<double>::max(),
                                std::numeric_limits<double>::epsilon()};
  for (int i = 0; i < 500; ++i)
    probes.push_back(std::ldexp(rng.uniform(-1.0, 1.0),
                                static_cast<int>(rng.uniform_index(80)) - 40));
  for (double v : probes) {
    std::string s = fmt_double(v);
    double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("fmt_double renders non-finite values readably") {
  CHECK(fmt_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(fmt_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(fmt_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("escaping quotes exactly the fields that need it") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("with space") == "with space");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("split undoes join for awkward fields") {
  std::vector<std::string> fields = {"a", "b,c", "d\"e", "", "f\ng", "0.25"};
  std::string line = join_csv_row(fields);
  std::vector<std::string> back = split_csv_line(line);
  REQUIRE(back.size() == fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) CHECK(back[i] == fields[i]);
}

TEST_CASE("single and empty fields split correctly") {
  CHECK(split_csv_line("x").size() == 1);
  CHECK(split_csv_line("x,y").size() == 2);
  auto empties = split_csv_line(",,");
  REQUIRE(empties.size() == 3);
  for (const auto& f : empties) CHECK(f.empty());
}

TEST_CASE("csv files round-trip through write and read") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "specsense_csv_test";
  fs::create_directories(dir);
  fs::path file = dir / "t.csv";

  std::vector<std::string> header = {"id", "note", "value"};
  std::vector<std::vector<std::string>> rows = {
      {"1", "plain", fmt_double(0.1)},
      {"2", "commas, included", fmt_double(-3.25e-9)},
      {"3", "quote \" inside", fmt_double(1e300)},
  };
  write_csv_file(file.string(), header, rows);

  auto back = read_csv_file(file.string());
  REQUIRE(back.size() == 4);
  CHECK(back[0] == header);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i + 1] == rows[i]);

  CHECK_THROWS_AS((void)read_csv_file((dir / "absent.csv").string()),
                  std::runtime_error);
  CHECK_THROWS_AS(
      write_csv_file((dir / "no_such_dir" / "t.csv").string(), header, rows),
      std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("an empty row set still writes the header line") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "specsense_csv_test2";
  fs::create_directories(dir);
  fs::path file = dir / "empty.csv";
  write_csv_file(file.string(), {"a", "b"}, {});
  auto back = read_csv_file(file.string());
  REQUIRE(back.size() == 1);
  CHECK(back[0] == std::vector<std::string>{"a", "b"});
  fs::remove_all(dir);
}
