#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csnet/errors.hpp"
#include "csnet/metrics/report.hpp"
#include "csnet/netcore/rng.hpp"
#include <gtest/gtest.h>

using namespace csnet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<EvalRecord> sample_records() {
  return {{"csnet", "a", 0.1, 30.0, 0.9, 0.01},  {"csnet", "b", 0.1, 34.0, 0.8, 0.03},
          {"mmse", "a", 0.1, 28.5, 0.7, 0.002},  {"csnet", "a", 0.2, 33.25, 0.95, 0.02},
          {"spl", "with,comma", 0.3, kInf, 1.0, 1.5}};
}

}  // namespace

TEST(Aggregate, SingleRecord) {
  auto rep = aggregate({{"mmse", "x", 0.25, 27.5, 0.8, 0.5}});
  ASSERT_EQ(rep.aggregates.size(), 1u);
  const auto& row = rep.aggregates[0];
  EXPECT_EQ(row.algorithm, "mmse");
  EXPECT_EQ(row.ratio, 0.25);
  EXPECT_EQ(row.mean_psnr_db, 27.5);
  EXPECT_EQ(row.mean_ssim, 0.8);
  EXPECT_EQ(row.mean_seconds, 0.5);
  EXPECT_EQ(row.n, 1u);
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(Aggregate, MeanOfTwo) {
  auto rep = aggregate({{"csnet", "a", 0.1, 30.0, 0.5, 1.0}, {"csnet", "b", 0.1, 34.0, 0.7, 3.0}});
  ASSERT_EQ(rep.aggregates.size(), 1u);
  EXPECT_DOUBLE_EQ(rep.aggregates[0].mean_psnr_db, 32.0);
  EXPECT_DOUBLE_EQ(rep.aggregates[0].mean_ssim, 0.6);
  EXPECT_DOUBLE_EQ(rep.aggregates[0].mean_seconds, 2.0);
}

TEST(Aggregate, InfiniteMembersExcludedAndFlagged) {
  auto rep = aggregate({{"spl", "a", 1.0, kInf, 1.0, 1.0}, {"spl", "b", 1.0, 40.0, 0.9, 1.0}});
  ASSERT_EQ(rep.aggregates.size(), 1u);
  EXPECT_EQ(rep.aggregates[0].mean_psnr_db, 40.0);
  EXPECT_EQ(rep.aggregates[0].infinite_psnr, 1u);
  EXPECT_EQ(rep.warnings.size(), 1u);
  auto all_inf = aggregate({{"spl", "a", 1.0, kInf, 1.0, 1.0}});
  EXPECT_EQ(all_inf.aggregates[0].mean_psnr_db, kInf);
}

TEST(Aggregate, SortedByAlgorithmThenRatio) {
  auto rep = aggregate(sample_records());
  ASSERT_EQ(rep.aggregates.size(), 4u);
  for (std::size_t i = 1; i < rep.aggregates.size(); ++i) {
    const auto& a = rep.aggregates[i - 1];
    const auto& b = rep.aggregates[i];
    EXPECT_TRUE(a.algorithm < b.algorithm || (a.algorithm == b.algorithm && a.ratio < b.ratio));
  }
}

TEST(Aggregate, PermutationInvariant) {
  auto base = aggregate(sample_records()).aggregates;
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = sample_records();
    rng.shuffle(shuffled);
    auto rows = aggregate(shuffled).aggregates;
    ASSERT_EQ(rows.size(), base.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].algorithm, base[i].algorithm);
      EXPECT_EQ(rows[i].n, base[i].n);
      if (std::isinf(base[i].mean_psnr_db)) {
        EXPECT_EQ(rows[i].mean_psnr_db, base[i].mean_psnr_db);
      } else {
        EXPECT_NEAR(rows[i].mean_psnr_db, base[i].mean_psnr_db, 1e-12);
      }
      EXPECT_NEAR(rows[i].mean_ssim, base[i].mean_ssim, 1e-12);
    }
  }
}

TEST(ReportCsv, RecordsRoundTrip) {
  std::stringstream ss;
  write_records_csv(ss, sample_records());
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  EXPECT_EQ(header, kRecordHeader);
  EXPECT_EQ(read_records_csv(ss), sample_records());
}

TEST(ReportCsv, AggregatesRoundTrip) {
  auto rows = aggregate(sample_records()).aggregates;
  for (auto& r : rows) r.infinite_psnr = 0;
  std::stringstream ss;
  write_aggregates_csv(ss, rows);
  EXPECT_EQ(read_aggregates_csv(ss), rows);
}

TEST(ReportCsv, HeaderContract) {
  std::stringstream wrong("algorithm,image,ratio,psnr,ssim,seconds\n");
  EXPECT_THROW(read_records_csv(wrong), FormatError);
  std::stringstream short_row(std::string(kRecordHeader) + "\ncsnet,a,0.1\n");
  EXPECT_THROW(read_records_csv(short_row), FormatError);
  std::stringstream bad_number(std::string(kRecordHeader) + "\ncsnet,a,x,1,1,1\n");
  EXPECT_THROW(read_records_csv(bad_number), FormatError);
  std::stringstream empty;
  EXPECT_THROW(read_records_csv(empty), FormatError);
}

TEST(ReportCsv, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(kInf), "inf");
  EXPECT_EQ(format_number(32.0), "32");
  for (double v : {1.0 / 3.0, 2.5e-7, 12345.678901234}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(ReportCsv, QuotedFields) {
  EXPECT_EQ(split_csv_line("a,\"b,c\",\"d\"\"e\""), (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_THROW(split_csv_line("\"open"), FormatError);
}
