#include "zenochain/csv.hpp"

#include <charconv>
#include <system_error>

namespace zenochain {

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write_csv_numbers(std::ostream& out, const std::vector<double>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << format_number(cells[i]);
  }
  out << '\n';
}

}  // namespace zenochain
