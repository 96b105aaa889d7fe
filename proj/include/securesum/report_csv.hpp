#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "securesum/experiment.hpp"

namespace securesum {

inline constexpr const char* kCsvVersionLine = "# securesum-csv v1";

std::string csv_header();
std::string csv_row(const ReportRow& row);

/// Version comment, header, then one line per row.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace securesum
