#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace steinlight {

// 17 significant digits, '.' decimal point, locale independent.
std::string csv_real(double x);
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace steinlight
