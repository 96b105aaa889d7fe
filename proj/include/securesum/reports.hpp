#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "securesum/codes.hpp"
#include "securesum/pmf.hpp"
#include "securesum/protocol.hpp"
#include "securesum/seeds.hpp"
#include "securesum/source.hpp"

namespace securesum {

/// Zero-test tolerance for information quantities (bits or bits/symbol).
inline constexpr double kInfoTolerance = 1e-10;
/// Tolerance for pmf normalisation.
inline constexpr double kMassTolerance = 1e-12;
/// Slack allowed by the rate-region test.
inline constexpr double kRegionSlack = 1e-9;

/// Per-symbol leakage of one protocol.
///   eps1 = I(M13,M12; Y | X) / n      what Alice learns about Y
///   eps2 = I(M23,M12; X | Y) / n      what Bob learns about X
///   eps3 = I(M13,M23; X,Y | Z) / n    what Charlie learns beyond Z
///   eps4 = H(Z | Zhat) / n            Fano-style residual uncertainty
struct LeakageReport {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
  double eps4 = 0.0;
};

/// A point (R13, R23, R12, rho) to test against the rate region.
struct RateQuad {
  double r13 = 0.0;
  double r23 = 0.0;
  double r12 = 0.0;
  double rho = 0.0;
};

struct RateReport {
  double r12 = 0.0;
  double r13 = 0.0;
  double r23 = 0.0;
  /// H(M13, M23, M12 | X, Y) / n.
  double rho = 0.0;
  /// m / n.
  double realized_r = 0.0;

  RateQuad quad() const { return {r13, r23, r12, rho}; }
};

LeakageReport leakage_report(const JointPmf& pmf, std::size_t n);
RateReport rate_report(const JointPmf& pmf, std::size_t n);

/// True iff min(R13, R23, R12, rho) >= H2(p) - 1e-9.
bool check_rate_region(const RateQuad& quad, double p);

/// Cut-set conditions every perfectly secure zero-error XOR protocol meets:
/// Alice's two links determine X, Bob's two links determine Y, and no single
/// link carries information about (X, Y).
struct CutSetReport {
  double h_x_given_m12_m13 = 0.0;
  double h_y_given_m12_m23 = 0.0;
  double i_m12_xy = 0.0;
  double i_m13_xy = 0.0;
  double i_m23_xy = 0.0;

  bool x_determined(double tol = kInfoTolerance) const;
  bool y_determined(double tol = kInfoTolerance) const;
  bool m12_independent(double tol = kInfoTolerance) const;
  bool m13_independent(double tol = kInfoTolerance) const;
  bool m23_independent(double tol = kInfoTolerance) const;
  bool all_hold(double tol = kInfoTolerance) const;
};

CutSetReport check_cut_set(const JointPmf& pmf);

/// P(Zhat != Z) summed exactly over the pmf.
double error_probability(const JointPmf& pmf);

struct McEstimate {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double rate = 0.0;
  /// 3 sqrt(rate (1 - rate) / trials).
  double half_width = 0.0;
  /// Mean link lengths over all runs, indexed 12, 13, 23.
  std::array<double, 3> mean_length{};
};

/// Number of independent Monte Carlo streams. Fixed so results do not
/// depend on the machine's core count.
inline constexpr unsigned kMonteCarloStreams = 16;

/// Runs `trials` sampled executions split over kMonteCarloStreams streams,
/// each seeded from one draw of `rng` and its stream index.
McEstimate monte_carlo_error(ProtocolId id, const LinearCode* code, const DsbsParams& params, std::uint64_t trials,
                             Rng& rng);

}  // namespace securesum
