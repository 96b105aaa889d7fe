#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "securesum/codes.hpp"
#include "securesum/pmf.hpp"
#include "securesum/protocol.hpp"
#include "securesum/reports.hpp"

namespace securesum {

enum class Mode { exact, monte_carlo, both };

Mode parse_mode(std::string_view text);
std::string_view mode_name(Mode mode);

/// One experiment point. The syndrome length comes from exactly one of `m`,
/// `rate` (m = ceil(n * rate)) or `epsilon` (rate = H2(p) + epsilon); the
/// one-time pad ignores all three and uses m = n.
struct ExperimentConfig {
  ProtocolId protocol = ProtocolId::secure_km;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<double> rate;
  std::optional<double> epsilon;
  double p = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  Mode mode = Mode::monte_carlo;
  /// Distinguishes repeated random codes at one point.
  std::size_t instance = 0;
  CodeLimits code_limits{};
  EnumerationLimits enumeration_limits{};

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  std::size_t resolved_m() const;
};

/// Seed for the code (and downstream sampling) of one point, mixed from the
/// master seed, protocol, n, m, p to 9 significant digits, and instance.
std::uint64_t point_seed(const ExperimentConfig& config);

/// nullopt for the one-time pad.
std::optional<LinearCode> make_code(const ExperimentConfig& config);

/// One CSV row. Missing values print as empty fields.
struct ReportRow {
  std::string protocol;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> r12, r13, r23, rho;
  std::optional<double> eps1, eps2, eps3, eps4;
  std::optional<double> p_err_exact, p_err_mc, mc_ci;
  std::optional<bool> in_region;
};

/// Error analysis: Monte Carlo and/or exact decoding error, plus link rates.
ReportRow run_simulate(const ExperimentConfig& config);

/// Exact enumeration: leakage, rates, rho, exact error and the region verdict.
/// Also runs Monte Carlo when the mode asks for it.
ReportRow run_leakage(const ExperimentConfig& config);

enum class SweepAnalysis { simulate, leakage };

struct SweepConfig {
  ExperimentConfig base;
  std::vector<ProtocolId> protocols;
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ms;
  std::vector<double> rates;
  std::vector<double> ps;
  std::size_t instances = 1;
  SweepAnalysis analysis = SweepAnalysis::simulate;
  /// When set, rows are region checks of this fixed quadruple over ps.
  std::optional<RateQuad> quad;
};

/// Cartesian product protocol x n x (m | rate | epsilon) x p, in that nesting
/// order. With instances > 1 each row averages its numeric columns over that
/// many independent codes. Points run concurrently; row order is fixed.
std::vector<ReportRow> run_sweep(const SweepConfig& config);

struct RegionVerdict {
  double min_component = 0.0;
  double entropy = 0.0;
  bool in_region = false;

  std::string explanation() const;
};

/// Throws ConfigError when a component is negative.
RegionVerdict region_verdict(const RateQuad& quad, double p);

/// Raw flag values by long name without dashes (e.g. "n", "protocol").
using FlagMap = std::map<std::string, std::string>;

/// Fills `flags` from a JSON document for every key not already present.
/// Arrays become comma-separated lists.
void merge_json_config(FlagMap& flags, const std::string& json_text);

ExperimentConfig experiment_from_flags(const FlagMap& flags);
SweepConfig sweep_from_flags(const FlagMap& flags);
RateQuad quad_from_text(std::string_view text);

}  // namespace securesum
