// Acceptance suite. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [--only N]

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "securesum/codes.hpp"
#include "securesum/experiment.hpp"
#include "securesum/information.hpp"
#include "securesum/pmf.hpp"
#include "securesum/protocol.hpp"
#include "securesum/reports.hpp"
#include "securesum/seeds.hpp"
#include "securesum/source.hpp"

namespace ss = securesum;
using V = ss::Variable;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::uint64_t code_seed(std::uint64_t criterion, std::size_t n, std::size_t m, std::uint64_t instance) {
  return ss::derive_seed({ss::hash_text("acceptance"), criterion, n, m, instance});
}

// Perfect privacy of secure-KM by exact enumeration.
Verdict criterion_1() {
  const std::vector<double> ps{0.05, 0.1, 0.25, 0.49};
  double worst = 0.0;
  std::string worst_at;
  std::size_t instances = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(n, 6); ++m) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const ss::LinearCode code = ss::build_code(n, m, code_seed(1, n, m, s));
        for (double p : ps) {
          const ss::JointPmf pmf = ss::enumerate_joint(ss::ProtocolId::secure_km, &code, {p, n});
          const ss::LeakageReport leak = ss::leakage_report(pmf, n);
          const double w = std::max({leak.eps1, leak.eps2, leak.eps3});
          if (w > worst || worst_at.empty()) {
            worst = w;
            worst_at = fmt::format("n={} m={} p={} seed#{}", n, m, p, s);
          }
          ++instances;
        }
      }
    }
  }
  return {worst <= ss::kInfoTolerance,
          fmt::format("{} instances, max(eps1,eps2,eps3) = {:.3e} at {} (tol 1e-10)", instances, worst, worst_at)};
}

// Zero-error OTP: exhaustive correctness, unit rates, cut-set conditions.
Verdict criterion_2() {
  bool ok = true;
  std::string notes;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::uint64_t wrong = 0;
    const std::uint64_t size = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < size; ++x) {
      for (std::uint64_t y = 0; y < size; ++y) {
        for (std::uint64_t k = 0; k < size; ++k) {
          const auto out = ss::run_zero_error_otp(ss::Gf2Vector::from_word(x, n), ss::Gf2Vector::from_word(y, n),
                                                  ss::Gf2Vector::from_word(k, n));
          if (!out.correct) ++wrong;
        }
      }
    }
    if (wrong != 0) {
      ok = false;
      notes += fmt::format(" n={}: {} wrong;", n, wrong);
    }
    for (double p : {0.1, 0.25, 0.5}) {
      const ss::JointPmf pmf = ss::enumerate_joint(ss::ProtocolId::zero_error_otp, nullptr, {p, n});
      const ss::RateReport rates = ss::rate_report(pmf, n);
      const ss::CutSetReport cut_set = ss::check_cut_set(pmf);
      const bool rates_ok =
          rates.r12 == 1.0 && rates.r13 == 1.0 && rates.r23 == 1.0 && std::abs(rates.rho - 1.0) <= ss::kInfoTolerance;
      const bool err_ok = ss::error_probability(pmf) == 0.0;
      if (!rates_ok || !cut_set.all_hold() || !err_ok) {
        ok = false;
        notes += fmt::format(" n={} p={}: r=({},{},{}) rho={:.12g} cut_set={} err_ok={};", n, p, rates.r12, rates.r13,
                             rates.r23, rates.rho, cut_set.all_hold(), err_ok);
      }
    }
  }
  return {ok, ok ? "all 2^(3n) triples correct for n<=4, r12=r13=r23=rho=1, five cut-set conditions within 1e-10"
                 : "failures:" + notes};
}

// Rates equal m/n and the achieved point lies in the region whenever m/n >= H2(p).
Verdict criterion_3() {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t in_region = 0;
  std::string notes;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(n, 6); ++m) {
      const ss::LinearCode code = ss::build_code(n, m, code_seed(3, n, m, 0));
      const double target = static_cast<double>(m) / static_cast<double>(n);
      for (double p : {0.05, 0.1, 0.25, 0.49}) {
        const ss::JointPmf pmf = ss::enumerate_joint(ss::ProtocolId::secure_km, &code, {p, n});
        const ss::RateReport r = ss::rate_report(pmf, n);
        ++checked;
        const bool exact =
            r.r12 == target && r.r13 == target && r.r23 == target && std::abs(r.rho - target) <= ss::kInfoTolerance;
        bool region_ok = true;
        if (target >= ss::binary_entropy(p)) {
          region_ok = ss::check_rate_region(r.quad(), p);
          ++in_region;
        }
        if (!exact || !region_ok) {
          ok = false;
          notes += fmt::format(" n={} m={} p={}: r=({},{},{}) rho={:.12g} region={};", n, m, p, r.r12, r.r13, r.r23,
                               r.rho, region_ok);
        }
      }
    }
  }
  return {ok,
          ok ? fmt::format("{} (n,m,p) points with rates = m/n; {} with m/n >= H2(p) all in region", checked, in_region)
             : "failures:" + notes};
}

// Monte Carlo agrees with the exact decoder error within 3 binomial sigma.
Verdict criterion_4() {
  constexpr std::uint64_t kTrials = 100000;
  std::size_t instances = 0;
  std::size_t agree = 0;
  double worst_z = 0.0;
  std::string notes;
  for (std::size_t n = 4; n <= 16; n += 2) {
    for (double p : {0.05, 0.1, 0.25}) {
      const std::size_t m =
          std::min(n, static_cast<std::size_t>(std::ceil(static_cast<double>(n) * (ss::binary_entropy(p) + 0.1))));
      const ss::LinearCode code = ss::build_code(n, m, code_seed(4, n, m, instances));
      const double exact = ss::exact_error_probability(code, p);
      ss::Rng rng(ss::derive_seed({code_seed(4, n, m, instances), ss::hash_text("monte-carlo")}));
      const ss::McEstimate mc = ss::monte_carlo_error(ss::ProtocolId::secure_km, &code, {p, n}, kTrials, rng);
      const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(kTrials));
      const double diff = std::abs(mc.rate - exact);
      const bool ok = sigma > 0 ? diff <= 3.0 * sigma : diff == 0.0;
      if (sigma > 0) worst_z = std::max(worst_z, diff / sigma);
      ++instances;
      if (ok) {
        ++agree;
      } else {
        notes += fmt::format(" n={} m={} p={}: exact={:.6g} mc={:.6g};", n, m, p, exact, mc.rate);
      }
    }
  }
  return {
      instances >= 20 && agree == instances,
      fmt::format("{}/{} (code,p) instances within 3 sigma, worst |z| = {:.2f}{}", agree, instances, worst_z, notes)};
}

// Error falls with blocklength at fixed rate; m = n never errs.
Verdict criterion_5() {
  const double p = 0.1;
  const double rate = ss::binary_entropy(p) + 0.15;
  auto mean_error = [&](std::size_t n, std::size_t& m_out) {
    double total = 0.0;
    for (std::size_t inst = 0; inst < 10; ++inst) {
      ss::ExperimentConfig c;
      c.n = n;
      c.rate = rate;
      c.p = p;
      c.seed = 5;
      c.instance = inst;
      m_out = c.resolved_m();
      total += ss::exact_error_probability(*ss::make_code(c), p);
    }
    return total / 10.0;
  };
  std::size_t m6 = 0;
  std::size_t m18 = 0;
  const double e6 = mean_error(6, m6);
  const double e18 = mean_error(18, m18);
  bool full_rate_ok = true;
  for (std::size_t n = 1; n <= 12; ++n) {
    const ss::LinearCode code = ss::build_code(n, n, code_seed(5, n, n, 0));
    for (double q : {0.0, 0.05, 0.1, 0.25, 0.49, 0.5})
      full_rate_ok = full_rate_ok && ss::exact_error_probability(code, q) == 0.0;
  }
  return {e18 < e6 && full_rate_ok,
          fmt::format("mean P_err n=6 (m={}) = {:.6g}, n=18 (m={}) = {:.6g}; m=n error zero for n<=12: {}", m6, e6, m18,
                      e18, full_rate_ok ? "yes" : "no")};
}

// Negative control on the unmasked baseline.
Verdict criterion_6() {
  const ss::LinearCode code = ss::build_code(2, 2, code_seed(6, 2, 2, 0));
  const ss::JointPmf pmf = ss::enumerate_joint(ss::ProtocolId::plain_km, &code, {0.25, 2});
  const ss::LeakageReport leak = ss::leakage_report(pmf, 2);
  // Pinned from the direct-formula oracle: Alice's view of the unmasked
  // baseline is (X, Hx), a function of X, so eps1 is zero; Charlie sees X and Y.
  constexpr double kPinnedEps1 = 0.0;
  constexpr double kPinnedEps3 = 1.0;
  const bool regression = std::abs(leak.eps1 - kPinnedEps1) <= ss::kInfoTolerance &&
                          std::abs(leak.eps3 - kPinnedEps3) <= ss::kInfoTolerance;
  return {leak.eps1 > 0.01,
          fmt::format("eps1 = {:.6g} (required > 0.01), eps2 = {:.6g}, eps3 = {:.6g}, eps4 = {:.6g}; "
                      "pinned oracle values eps1=0 eps3=1 {}",
                      leak.eps1, leak.eps2, leak.eps3, leak.eps4, regression ? "reproduced" : "NOT reproduced")};
}

// Information-engine identities on random pmfs.
Verdict criterion_7() {
  ss::Rng rng(ss::derive_seed({ss::hash_text("acceptance"), 7}));
  double worst = 0.0;
  auto track = [&](double err) { worst = std::max(worst, std::abs(err)); };
  double most_negative = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<std::size_t, ss::kVariableCount> widths{};
    widths.fill(1 + rng() % 3);
    ss::JointPmf pmf(widths);
    const std::size_t atoms = 1 + rng() % 64;
    std::vector<double> weights(atoms);
    double total = 0.0;
    for (auto& w : weights) total += (w = ss::uniform_unit(rng) + 1e-3);
    for (std::size_t i = 0; i < atoms; ++i) {
      ss::AtomValues values{};
      for (std::size_t v = 0; v < values.size(); ++v) {
        values[v] = static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << widths[v]) - 1));
      }
      pmf.add_atom(values, weights[i] / total);
    }
    track(pmf.total_probability() - 1.0);
    ss::InformationEngine info(pmf);
    for (int q = 0; q < 10; ++q) {
      const auto a = ss::VariableSet::from_bits(static_cast<std::uint8_t>(rng() & 0xff));
      const auto b = ss::VariableSet::from_bits(static_cast<std::uint8_t>(rng() & 0xff));
      const auto c = ss::VariableSet::from_bits(static_cast<std::uint8_t>(rng() & 0xff));
      // H(A,B) = H(A) + H(B|A)
      track(info.entropy(a | b) - info.entropy(a) - info.conditional_entropy(b, a));
      // I(A;B,C) = I(A;B) + I(A;C|B)
      track(info.mutual_information(a, b | c) - info.mutual_information(a, b) -
            info.conditional_mutual_information(a, c, b));
      for (double v : {info.entropy(a), info.conditional_entropy(a, b), info.mutual_information(a, b),
                       info.conditional_mutual_information(a, b, c)}) {
        most_negative = std::min(most_negative, v);
      }
    }
  }
  const ss::JointPmf one = ss::enumerate_joint(ss::ProtocolId::zero_error_otp, nullptr, {0.25, 1});
  ss::InformationEngine info(one);
  const double ixy = info.mutual_information({V::x}, {V::y});
  const double dsbs_err = std::abs(ixy - (1.0 - ss::binary_entropy(0.25)));
  const bool ok = worst <= ss::kInfoTolerance && most_negative >= -ss::kInfoTolerance && dsbs_err <= 1e-9;
  return {ok, fmt::format("100 pmfs: max identity error {:.3e}, min quantity {:.3e}; DSBS(0.25) I(X;Y) = {:.15f} "
                          "(error {:.3e})",
                          worst, most_negative, ixy, dsbs_err)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("criterion {}: {} ({:.1f}s) {}\n", i + 1, v.pass ? "PASS" : "FAIL", secs, v.detail);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
