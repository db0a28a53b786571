#include "wrb_cli/csv.hpp"

#include <charconv>
#include <cmath>

#include "wrb/common.hpp"

namespace wrb::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header, const std::string& config_hash,
                     std::uint64_t seed)
    : out_(path, std::ios::trunc), path_(path), columns_(header.size()) {
  if (!out_) throw InvalidArgument("cannot write " + path);
  out_ << "# config_hash=" << config_hash << " seed=" << seed << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (filled_ == columns_) throw InvalidArgument(path_ + ": too many cells in row");
  if (v.find_first_of(",\"\n") != std::string::npos) throw InvalidArgument(path_ + ": cell needs quoting: " + v);
  out_ << (filled_ ? "," : "") << v;
  ++filled_;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw InvalidArgument(path_ + ": incomplete row");
  out_ << '\n';
  filled_ = 0;
  ++rows_;
}

}  // namespace wrb::cli
