#include "securesum/report_csv.hpp"

#include <fmt/format.h>

#include <ostream>

namespace securesum {
namespace {

std::string field(const std::optional<double>& v) { return v ? fmt::format("{:.12g}", *v) : std::string{}; }

std::string field(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string{}; }

std::string field(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

}  // namespace

std::string csv_header() {
  return "protocol,n,m,p,seed,r12,r13,r23,rho,eps1,eps2,eps3,eps4,p_err_exact,p_err_mc,mc_ci,in_region";
}

std::string csv_row(const ReportRow& row) {
  return fmt::format("{},{},{},{:.9g},{},{},{},{},{},{},{},{},{},{},{},{},{}", row.protocol, field(row.n), field(row.m),
                     row.p, row.seed, field(row.r12), field(row.r13), field(row.r23), field(row.rho), field(row.eps1),
                     field(row.eps2), field(row.eps3), field(row.eps4), field(row.p_err_exact), field(row.p_err_mc),
                     field(row.mc_ci), field(row.in_region));
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kCsvVersionLine << '\n' << csv_header() << '\n';
  for (const auto& row : rows) out << csv_row(row) << '\n';
}

}  // namespace securesum
