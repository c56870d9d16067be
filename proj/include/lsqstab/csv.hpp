#pragma once

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lsqstab {

/// printf("%.17g"); NaN becomes the empty string (a missing value).
std::string format_real(double value);

/// Comma-separated row builder. Fields are never quoted: every schema in
/// this project is numeric or a bare identifier.
class CsvRow {
 public:
  CsvRow& add(double value);
  CsvRow& add(bool value);
  template <std::integral T>
  CsvRow& add(T value) {
    fields_.push_back(std::to_string(value));
    return *this;
  }
  CsvRow& add(std::string_view text);
  CsvRow& add(const char* text) { return add(std::string_view(text)); }
  CsvRow& add_empty();

  std::string str() const;

 private:
  std::vector<std::string> fields_;
};

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace lsqstab
