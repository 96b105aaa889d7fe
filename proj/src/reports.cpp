#include "securesum/reports.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "securesum/errors.hpp"
#include "securesum/information.hpp"

namespace securesum {
namespace {

using V = Variable;

double per_symbol(double bits, std::size_t n) {
  detail::require(n >= 1, "report blocklength must be positive");
  return bits / static_cast<double>(n);
}

}  // namespace

LeakageReport leakage_report(const JointPmf& pmf, std::size_t n) {
  InformationEngine info(pmf);
  LeakageReport r;
  r.eps1 = per_symbol(info.conditional_mutual_information({V::m13, V::m12}, {V::y}, {V::x}), n);
  r.eps2 = per_symbol(info.conditional_mutual_information({V::m23, V::m12}, {V::x}, {V::y}), n);
  r.eps3 = per_symbol(info.conditional_mutual_information({V::m13, V::m23}, {V::x, V::y}, {V::z}), n);
  r.eps4 = per_symbol(info.conditional_entropy({V::z}, {V::z_hat}), n);
  return r;
}

RateReport rate_report(const JointPmf& pmf, std::size_t n) {
  InformationEngine info(pmf);
  RateReport r;
  r.r12 = per_symbol(pmf.expected_length[link_slot(Link::ab)], n);
  r.r13 = per_symbol(pmf.expected_length[link_slot(Link::ac)], n);
  r.r23 = per_symbol(pmf.expected_length[link_slot(Link::bc)], n);
  r.rho = per_symbol(info.conditional_entropy({V::m13, V::m23, V::m12}, {V::x, V::y}), n);
  r.realized_r = per_symbol(static_cast<double>(pmf.m), n);
  return r;
}

bool check_rate_region(const RateQuad& quad, double p) {
  detail::require(p >= 0.0 && p <= 0.5, "check_rate_region: p must lie in [0, 1/2]");
  const double lowest = std::min({quad.r13, quad.r23, quad.r12, quad.rho});
  return lowest >= binary_entropy(p) - kRegionSlack;
}

bool CutSetReport::x_determined(double tol) const { return std::abs(h_x_given_m12_m13) <= tol; }
bool CutSetReport::y_determined(double tol) const { return std::abs(h_y_given_m12_m23) <= tol; }
bool CutSetReport::m12_independent(double tol) const { return std::abs(i_m12_xy) <= tol; }
bool CutSetReport::m13_independent(double tol) const { return std::abs(i_m13_xy) <= tol; }
bool CutSetReport::m23_independent(double tol) const { return std::abs(i_m23_xy) <= tol; }
bool CutSetReport::all_hold(double tol) const {
  return x_determined(tol) && y_determined(tol) && m12_independent(tol) && m13_independent(tol) && m23_independent(tol);
}

CutSetReport check_cut_set(const JointPmf& pmf) {
  InformationEngine info(pmf);
  CutSetReport r;
  r.h_x_given_m12_m13 = info.conditional_entropy({V::x}, {V::m12, V::m13});
  r.h_y_given_m12_m23 = info.conditional_entropy({V::y}, {V::m12, V::m23});
  r.i_m12_xy = info.mutual_information({V::m12}, {V::x, V::y});
  r.i_m13_xy = info.mutual_information({V::m13}, {V::x, V::y});
  r.i_m23_xy = info.mutual_information({V::m23}, {V::x, V::y});
  return r;
}

double error_probability(const JointPmf& pmf) {
  double err = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf.value(V::z_hat, i) != pmf.value(V::z, i)) err += pmf.prob(i);
  }
  return err;
}

McEstimate monte_carlo_error(ProtocolId id, const LinearCode* code, const DsbsParams& params, std::uint64_t trials,
                             Rng& rng) {
  detail::require(trials >= 1, "monte_carlo_error: trials must be at least 1");
  params.validate();
  const std::uint64_t master = rng();

  struct Partial {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::array<std::uint64_t, 3> bits{};
  };
  std::array<Partial, kMonteCarloStreams> partial{};
  std::array<std::exception_ptr, kMonteCarloStreams> failures{};

  auto run_stream = [&](unsigned s) {
    try {
      Rng stream(derive_seed({master, s}));
      const std::uint64_t count = trials * (s + 1) / kMonteCarloStreams - trials * s / kMonteCarloStreams;
      for (std::uint64_t t = 0; t < count; ++t) {
        RunOutcome run = run_with_sampling(id, params, code, stream);
        ++partial[s].trials;
        if (!run.correct) ++partial[s].errors;
        for (Link link : kLinks) partial[s].bits[link_slot(link)] += run.transcript.total_length(link);
      }
    } catch (...) {
      failures[s] = std::current_exception();
    }
  };

  const unsigned workers = std::clamp(std::thread::hardware_concurrency(), 1U, kMonteCarloStreams);
  if (workers == 1) {
    for (unsigned s = 0; s < kMonteCarloStreams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (unsigned s = w; s < kMonteCarloStreams; s += workers) run_stream(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  McEstimate est;
  std::array<std::uint64_t, 3> bits{};
  for (const auto& part : partial) {
    est.trials += part.trials;
    est.errors += part.errors;
    for (std::size_t l = 0; l < 3; ++l) bits[l] += part.bits[l];
  }
  est.rate = static_cast<double>(est.errors) / static_cast<double>(est.trials);
  est.half_width = 3.0 * std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(est.trials));
  for (std::size_t l = 0; l < 3; ++l) {
    est.mean_length[l] = static_cast<double>(bits[l]) / static_cast<double>(est.trials);
  }
  return est;
}

}  // namespace securesum
