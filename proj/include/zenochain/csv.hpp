#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zenochain {

// Locale-independent formatting: shortest of 12 significant digits, '.' as
// the decimal separator regardless of global locale.
std::string format_number(double x);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);
void write_csv_numbers(std::ostream& out, const std::vector<double>& cells);

}  // namespace zenochain
