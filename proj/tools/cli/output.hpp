#pragma once

// CSV and JSON emission with fixed, reproducible formatting.

#include <iosfwd>
#include <string>
#include <vector>

namespace hbcli {

/// 17 significant digits; non-finite values print as nan, inf, -inf.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const CsvTable& table, std::ostream& os);

/// Parses a CSV written by write_csv (or any header + numeric rows file).
CsvTable read_csv(std::istream& is);

}  // namespace hbcli
