#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rqw/cli.hpp"

using rqw::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, SweepOneSided600x1000) {
  const auto r = call({"sweep", "--nl", "600", "--nr", "1000", "--ml", "10", "--epsilon", "0.1",
                       "--hmax", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# convention=reflected\n", 0), 0u);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 101u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"h", "p_robust", "p_oscillatory",
                                               "p_closed_form", "bound_h", "floor"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int h = std::stoi(rows[i][0]);
    EXPECT_EQ(h, int(i));
    EXPECT_EQ(rows[i][4], "16");
    EXPECT_EQ(rows[i][5], "0.9");
    if (h < 3) {
      EXPECT_TRUE(rows[i][1].empty());
      EXPECT_TRUE(rows[i][3].empty());
    }
    if (h >= 16) EXPECT_GE(std::stod(rows[i][1]), 0.9);
  }
}

TEST(Cli, ModeLeavesColumnsEmpty) {
  const auto r = call({"sweep", "--nl", "8", "--nr", "6", "--ml", "2", "--hmax", "6", "--mode",
                       "oscillatory"});
  ASSERT_EQ(r.code, 0);
  for (const auto& row : parse_csv(r.out)) {
    if (row[0] == "h") continue;
    EXPECT_TRUE(row[1].empty());
    EXPECT_FALSE(row[2].empty());
  }
  const auto rob = call({"sweep", "--nl", "8", "--nr", "6", "--ml", "2", "--hmax", "6", "--mode",
                         "robust"});
  for (const auto& row : parse_csv(rob.out)) {
    if (row[0] != "h") EXPECT_TRUE(row[2].empty());
  }
}

TEST(Cli, EnginesAgree) {
  const std::vector<std::string> base = {"sweep", "--nl", "5", "--nr", "4", "--ml", "1",
                                         "--hmax", "20"};
  auto full = base, reduced = base;
  full.insert(full.end(), {"--engine", "full"});
  reduced.insert(reduced.end(), {"--engine", "reduced"});
  const auto a = parse_csv(call(full).out);
  const auto b = parse_csv(call(reduced).out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    for (int c = 1; c <= 3; ++c) {
      ASSERT_EQ(a[i][c].empty(), b[i][c].empty());
      if (a[i][c].empty()) continue;
      char x[32], y[32];
      std::snprintf(x, sizeof x, "%.9f", std::stod(a[i][c]));
      std::snprintf(y, sizeof y, "%.9f", std::stod(b[i][c]));
      EXPECT_STREQ(x, y) << "row " << i << " col " << c;
    }
  }
}

TEST(Cli, ExplicitMarkedIdsFullEngine) {
  const auto a = call({"sweep", "--nl", "6", "--nr", "5", "--marked-left", "1,4", "--hmax", "9",
                       "--engine", "full"});
  const auto b = call({"sweep", "--nl", "6", "--nr", "5", "--ml", "2", "--hmax", "9",
                       "--engine", "reduced"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ra = parse_csv(a.out), rb = parse_csv(b.out);
  for (std::size_t i = 1; i < ra.size(); ++i) {
    for (int c = 1; c <= 2; ++c) {
      if (!ra[i][c].empty()) EXPECT_NEAR(std::stod(ra[i][c]), std::stod(rb[i][c]), 1e-9);
    }
  }
  EXPECT_EQ(call({"sweep", "--nl", "6", "--nr", "5", "--marked-left", "1,9"}).code, 2);
  EXPECT_EQ(call({"sweep", "--nl", "6", "--nr", "5", "--ml", "3", "--marked-left", "1,2"}).code, 2);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"sweep", "--nl", "30", "--nr", "20", "--ml", "2",
                                         "--mr", "1", "--hmax", "40"};
  EXPECT_EQ(call(args).out, call(args).out);
}

TEST(Cli, SweepErrors) {
  EXPECT_EQ(call({"sweep", "--nl", "5", "--nr", "4", "--ml", "1", "--hmax", "0"}).code, 2);
  EXPECT_EQ(call({"sweep", "--nl", "5", "--nr", "4", "--hmax", "5"}).code, 2);
  EXPECT_EQ(call({"sweep", "--nl", "5", "--nr", "4", "--ml", "1", "--epsilon", "0"}).code, 2);
  EXPECT_EQ(call({"sweep", "--nl", "5", "--nr", "4", "--ml", "1", "--engine", "gpu"}).code, 2);
  EXPECT_EQ(call({"sweep", "--nl", "0", "--nr", "4", "--ml", "1"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, SweepWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "rqwalk_cli_sweep.csv";
  const auto r = call({"sweep", "--nl", "5", "--nr", "4", "--ml", "1", "--hmax", "5", "--out",
                       path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str().rfind("# convention=", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileWithOverride) {
  const auto path = std::filesystem::temp_directory_path() / "rqwalk_cli.conf";
  {
    std::ofstream f(path);
    f << "nl=600\nnr=1000\nml=10\nepsilon=0.1\n";
  }
  const auto r = call({"bound", "--config", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bound=16"), std::string::npos);
  const auto o = call({"bound", "--config", path.string(), "--ml", "1"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.find("bound=16"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, ConventionHeader) {
  const auto r = call({"sweep", "--nl", "5", "--nr", "4", "--ml", "1", "--hmax", "4",
                       "--convention", "unnegated"});
  EXPECT_EQ(r.out.rfind("# convention=unnegated\n", 0), 0u);
}

TEST(Cli, Bound) {
  const auto r = call({"bound", "--nl", "600", "--nr", "1000", "--ml", "10", "--epsilon", "0.1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound_real=15.28"), std::string::npos);
  EXPECT_NE(r.out.find("bound=16\n"), std::string::npos);
  const auto u = call({"bound", "--unknown", "--nl", "100", "--nr", "100", "--epsilon", "1"});
  EXPECT_NE(u.out.find("bound=8\n"), std::string::npos);
  EXPECT_EQ(call({"bound", "--nl", "5", "--nr", "5", "--ml", "0", "--mr", "0"}).code, 2);
  EXPECT_EQ(call({"bound", "--unknown", "--nl", "5", "--nr", "5", "--ml", "1"}).code, 2);
}

TEST(Cli, Verify) {
  const auto ok = call({"verify", "--trials", "20", "--seed", "42"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(call({"verify", "--trials", "0"}).code, 2);
  const auto bad = call({"verify", "--trials", "5", "--inject-coin-fault", "1e-6"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("C=ARA"), std::string::npos);
}

TEST(Cli, Schedule) {
  const auto r = call({"schedule", "--h", "5", "--epsilon", "0.1", "--convention", "reflected"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "0", rows[1][2]}));
  EXPECT_EQ(rows[5][2], "0");
  EXPECT_EQ(call({"schedule", "--h", "2"}).code, 2);
  const auto o = call({"schedule", "--h", "2", "--mode", "oscillatory"});
  EXPECT_EQ(o.code, 0);
}
