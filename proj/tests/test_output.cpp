#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlcn/error.hpp"
#include "nlcn/output.hpp"

using namespace nlcn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nlcn_test_" + name);
  fs::remove_all(dir);
  return dir;
}

RunConfig small_config() {
  RunConfig c = preset_config(CaseId::Example1);
  c.k = 2;
  c.delta = 0.05;
  c.t_end = 1.0;
  return c;
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsAndInfinities) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(SweepCsv, EmptySweepIsHeaderOnly) {
  std::ostringstream os;
  write_sweep_csv(SweepResult{}, os);
  EXPECT_EQ(os.str(), "case,k,h,delta,t_end,error_l2,pairwise_rate\n");
}

TEST(SweepCsv, FirstRateEmpty) {
  const auto s = sweep_h(small_config(), {4, 8});
  std::ostringstream os;
  write_sweep_csv(s, os);
  std::istringstream in(os.str());
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(first.back(), ',');
  EXPECT_NE(second.back(), ',');
  EXPECT_EQ(first.rfind("example1,2,", 0), 0u);
}

TEST(EnergyCsv, SentinelLiteral) {
  EnergyTable t;
  t.rows.push_back({CaseId::Example2, 1.5, 0.0, -INFINITY});
  std::ostringstream os;
  write_energy_csv(t, os);
  EXPECT_EQ(os.str(), "case,t,energy,log_energy\nexample2,1.5,0,-inf\n");
}

TEST(EmitSweep, FileNamesAndDeterminism) {
  const auto c = small_config();
  const auto a = emit_sweep(sweep_h(c, {4, 8, 16}), c, scratch_dir("a"));
  const auto b = emit_sweep(sweep_h(c, {4, 8, 16}), c, scratch_dir("b"));
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a[0].filename(), "sweep_h_example1_k2.csv");
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(slurp(a[i]), slurp(b[i])) << a[i];

  // Error column decreases under refinement.
  std::istringstream in(slurp(a[0]));
  std::string line;
  std::getline(in, line);
  double prev = INFINITY;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cols.push_back(cell);
    const double e = std::stod(cols[5]);
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(EmitSweep, SvgAndMetadataWritten) {
  const auto c = small_config();
  const auto files = emit_sweep(sweep_delta(c, {0.1, 0.05}), c, scratch_dir("svg"));
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(files[1].filename(), "sweep_dt_example1_k2.svg");
  EXPECT_NE(slurp(files[1]).find("<svg"), std::string::npos);
  EXPECT_NE(slurp(files[2]).find("\"assembly_quadrature_degree\": 6"), std::string::npos);
}

TEST(EmitRun, UnwritableDirectoryIsIoFailure) {
  RunConfig c = small_config();
  c.n = 4;
  const auto report = run_solve(c);
  const auto blocker = scratch_dir("blocker");
  std::ofstream(blocker.string()) << "file";
  try {
    emit_run(report, blocker / "sub");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoFailure);
    EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos);
  }
}
