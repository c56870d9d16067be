#include "lsqstab/csv.hpp"

#include <cmath>
#include <cstdio>

namespace lsqstab {

std::string format_real(double value) {
  if (std::isnan(value)) {
    return {};
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvRow& CsvRow::add(double value) {
  fields_.push_back(format_real(value));
  return *this;
}

CsvRow& CsvRow::add(bool value) {
  fields_.emplace_back(value ? "1" : "0");
  return *this;
}

CsvRow& CsvRow::add(std::string_view text) {
  fields_.emplace_back(text);
  return *this;
}

CsvRow& CsvRow::add_empty() {
  fields_.emplace_back();
  return *this;
}

std::string CsvRow::str() const {
  std::string out;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += fields_[i];
  }
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

}  // namespace lsqstab
