#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace wrb::cli {

/// Shortest round-trip decimal form ('.' separator, locale independent).
std::string format_double(double v);

/// Comma-separated table. The first line is a `# config_hash=... seed=...`
/// provenance comment, the second the header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header, const std::string& config_hash,
            std::uint64_t seed);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(bool v) { return cell(static_cast<long long>(v ? 1 : 0)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

  [[nodiscard]] std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_ = 0;
  std::size_t filled_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace wrb::cli
