#include "csnet/metrics/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "csnet/errors.hpp"

namespace csnet {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double parse_number(const std::string& text, const char* column) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(std::string("column ") + column + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

std::size_t parse_count(const std::string& text, const char* column) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(std::string("column ") + column + ": cannot parse '" + text + "' as a count");
  }
  return value;
}

template <typename Row, typename ParseRow>
std::vector<Row> read_csv(std::istream& in, const char* header, std::size_t columns, ParseRow parse_row) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV, expected header " + std::string(header));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("CSV header '" + line + "' does not match '" + header + "'");
  std::vector<Row> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != columns) {
      throw FormatError("CSV line " + std::to_string(number) + " has " + std::to_string(fields.size()) +
                        " fields, expected " + std::to_string(columns));
    }
    rows.push_back(parse_row(fields));
  }
  return rows;
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw FormatError("unterminated quote in CSV line");
  fields.push_back(std::move(current));
  return fields;
}

EvalReport aggregate(std::vector<EvalRecord> records) {
  EvalReport report;
  std::map<std::pair<std::string, double>, std::vector<const EvalRecord*>> groups;
  for (const auto& r : records) groups[{r.algorithm, r.ratio}].push_back(&r);

  for (const auto& [key, members] : groups) {
    AggregateRow row{key.first, key.second, 0.0, 0.0, 0.0, members.size(), 0};
    double psnr_sum = 0.0;
    std::size_t finite = 0;
    for (const EvalRecord* r : members) {
      if (std::isinf(r->psnr_db)) {
        ++row.infinite_psnr;
      } else {
        psnr_sum += r->psnr_db;
        ++finite;
      }
      row.mean_ssim += r->ssim;
      row.mean_seconds += r->seconds;
    }
    const double n = static_cast<double>(members.size());
    row.mean_ssim /= n;
    row.mean_seconds /= n;
    row.mean_psnr_db = finite > 0 ? psnr_sum / static_cast<double>(finite) : std::numeric_limits<double>::infinity();
    if (row.infinite_psnr > 0) {
      report.warnings.push_back(key.first + " at ratio " + format_number(key.second) + ": " +
                                std::to_string(row.infinite_psnr) + " of " + std::to_string(members.size()) +
                                " records have infinite PSNR and are excluded from the PSNR mean");
    }
    report.aggregates.push_back(std::move(row));
  }
  report.records = std::move(records);
  return report;
}

void write_records_csv(std::ostream& out, const std::vector<EvalRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << quote(r.algorithm) << ',' << quote(r.image) << ',' << format_number(r.ratio) << ','
        << format_number(r.psnr_db) << ',' << format_number(r.ssim) << ',' << format_number(r.seconds) << '\n';
  }
}

void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << quote(r.algorithm) << ',' << format_number(r.ratio) << ',' << format_number(r.mean_psnr_db) << ','
        << format_number(r.mean_ssim) << ',' << format_number(r.mean_seconds) << ',' << r.n << '\n';
  }
}

std::vector<EvalRecord> read_records_csv(std::istream& in) {
  return read_csv<EvalRecord>(in, kRecordHeader, 6, [](const std::vector<std::string>& f) {
    return EvalRecord{f[0],
                      f[1],
                      parse_number(f[2], "ratio"),
                      parse_number(f[3], "psnr_db"),
                      parse_number(f[4], "ssim"),
                      parse_number(f[5], "seconds")};
  });
}

std::vector<AggregateRow> read_aggregates_csv(std::istream& in) {
  return read_csv<AggregateRow>(in, kAggregateHeader, 6, [](const std::vector<std::string>& f) {
    return AggregateRow{f[0],
                        parse_number(f[1], "ratio"),
                        parse_number(f[2], "mean_psnr_db"),
                        parse_number(f[3], "mean_ssim"),
                        parse_number(f[4], "mean_seconds"),
                        parse_count(f[5], "n"),
                        0};
  });
}

void save_records_csv(const std::string& path, const std::vector<EvalRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  write_records_csv(out, records);
}

void save_aggregates_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  write_aggregates_csv(out, rows);
}

}  // namespace csnet
