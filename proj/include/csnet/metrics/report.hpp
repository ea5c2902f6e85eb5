#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace csnet {

struct EvalRecord {
  std::string algorithm;
  std::string image;
  double ratio = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct AggregateRow {
  std::string algorithm;
  double ratio = 0.0;
  double mean_psnr_db = 0.0;  // over finite members; +inf if every member is infinite
  double mean_ssim = 0.0;
  double mean_seconds = 0.0;
  std::size_t n = 0;
  std::size_t infinite_psnr = 0;  // members left out of mean_psnr_db

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  std::vector<AggregateRow> aggregates;
  std::vector<std::string> warnings;
};

// Groups by (algorithm, ratio), sorted by algorithm then ratio; arithmetic
// means. Infinite PSNR values are excluded from the PSNR mean and flagged in
// the warnings.
EvalReport aggregate(std::vector<EvalRecord> records);

inline constexpr const char* kRecordHeader = "algorithm,image,ratio,psnr_db,ssim,seconds";
inline constexpr const char* kAggregateHeader = "algorithm,ratio,mean_psnr_db,mean_ssim,mean_seconds,n";

// Numbers use the shortest representation that parses back to the same
// double; infinities are written as inf.
std::string format_number(double value);

void write_records_csv(std::ostream& out, const std::vector<EvalRecord>& records);
void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
std::vector<EvalRecord> read_records_csv(std::istream& in);
std::vector<AggregateRow> read_aggregates_csv(std::istream& in);

void save_records_csv(const std::string& path, const std::vector<EvalRecord>& records);
void save_aggregates_csv(const std::string& path, const std::vector<AggregateRow>& rows);

// One RFC 4180 line split into fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace csnet
