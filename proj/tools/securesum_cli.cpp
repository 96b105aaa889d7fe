// securesum: experiment runner for secure modulo-two sum protocols.
//
//   securesum simulate --protocol secure-km --n 12 --rate 0.9 --p 0.1 --mode both --seed 1
//   securesum leakage  --protocol secure-km --n 4 --m 3 --p 0.25
//   securesum sweep    --protocol secure-km --n 6,9,12,15 --rate 0.62 --p 0.1 --instances 10 --mode exact
//   securesum region   --quad 1,1,1,1 --p 0.25
//
// Exit status: 0 success (region: in-region), 1 region out-of-region,
// 2 usage error, 3 size guard exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "securesum/errors.hpp"
#include "securesum/experiment.hpp"
#include "securesum/report_csv.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct FlagSpec {
  const char* name;
  const char* help;
};

// Every flag is captured as text so JSON config files and the command line
// feed the same parser.
class Flags {
 public:
  void add(CLI::App* cmd, std::initializer_list<FlagSpec> specs) {
    for (const auto& spec : specs) {
      auto& slot = values_[spec.name];
      options_.emplace_back(spec.name, cmd->add_option(std::string("--") + spec.name, slot, spec.help));
    }
    cmd->add_option("--config", config_path_, "JSON file mirroring these flags; command-line flags win");
    cmd->add_option("--out", out_path_, "Write output here instead of stdout");
  }

  securesum::FlagMap collect() const {
    securesum::FlagMap flags;
    for (const auto& [name, option] : options_) {
      if (option->count() > 0) flags[name] = values_.at(name);
    }
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw securesum::ConfigError("cannot read config file " + config_path_);
      std::stringstream text;
      text << in.rdbuf();
      securesum::merge_json_config(flags, text.str());
    }
    return flags;
  }

  std::string out_path(const securesum::FlagMap& flags) const {
    if (!out_path_.empty()) return out_path_;
    auto it = flags.find("out");
    return it == flags.end() ? std::string{} : it->second;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
  std::string config_path_;
  std::string out_path_;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw securesum::ConfigError("cannot open output file " + path);
  out << text;
}

std::string csv(const std::vector<securesum::ReportRow>& rows) {
  std::ostringstream out;
  securesum::write_csv(out, rows);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate and audit secure modulo-two sum protocols"};
  app.require_subcommand(1);

  constexpr FlagSpec kProtocol{"protocol", "secure-km | plain-km | zero-error-otp"};
  constexpr FlagSpec kSeed{"seed", "Master seed (default 0)"};
  constexpr FlagSpec kTrials{"trials", "Monte Carlo runs (default 10000)"};
  constexpr FlagSpec kMode{"mode", "exact | monte-carlo | both"};
  constexpr FlagSpec kEpsilon{"epsilon", "Pick rate = H2(p) + epsilon"};

  Flags simulate_flags;
  auto* simulate = app.add_subcommand("simulate", "Decoding error by Monte Carlo and/or exact enumeration");
  simulate_flags.add(simulate, {kProtocol,
                                {"n", "Blocklength"},
                                {"m", "Syndrome length"},
                                {"rate", "Target rate; m = ceil(n * rate)"},
                                kEpsilon,
                                {"p", "DSBS crossover probability in [0, 0.5]"},
                                kSeed,
                                kTrials,
                                kMode});

  Flags leakage_flags;
  auto* leakage = app.add_subcommand("leakage", "Exact leakage, rates and region check by full enumeration");
  leakage_flags.add(leakage, {kProtocol,
                              {"n", "Blocklength"},
                              {"m", "Syndrome length"},
                              {"rate", "Target rate; m = ceil(n * rate)"},
                              kEpsilon,
                              {"p", "DSBS crossover probability in [0, 0.5]"},
                              kSeed,
                              kTrials,
                              {"mode", "both adds a Monte Carlo error estimate"}});

  Flags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Cartesian-product sweep, one CSV row per point");
  sweep_flags.add(sweep, {{"protocol", "Comma-separated protocol list"},
                          {"n", "Comma-separated blocklengths"},
                          {"m", "Comma-separated syndrome lengths"},
                          {"rate", "Comma-separated target rates"},
                          kEpsilon,
                          {"p", "Comma-separated crossover probabilities"},
                          kSeed,
                          kTrials,
                          kMode,
                          {"instances", "Random codes averaged per point (default 1)"},
                          {"analysis", "simulate | leakage"},
                          {"quad", "Region-check this R13,R23,R12,rho over the p list instead"}});

  Flags region_flags;
  auto* region = app.add_subcommand("region", "Test a rate quadruple against the rate region");
  region_flags.add(region, {{"quad", "R13,R23,R12,rho"}, {"p", "DSBS crossover probability"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      const auto flags = simulate_flags.collect();
      emit(simulate_flags.out_path(flags), csv({securesum::run_simulate(securesum::experiment_from_flags(flags))}));
    } else if (leakage->parsed()) {
      const auto flags = leakage_flags.collect();
      emit(leakage_flags.out_path(flags), csv({securesum::run_leakage(securesum::experiment_from_flags(flags))}));
    } else if (sweep->parsed()) {
      const auto flags = sweep_flags.collect();
      emit(sweep_flags.out_path(flags), csv(securesum::run_sweep(securesum::sweep_from_flags(flags))));
    } else if (region->parsed()) {
      const auto flags = region_flags.collect();
      auto quad = flags.find("quad");
      auto p = flags.find("p");
      if (quad == flags.end() || p == flags.end()) throw securesum::ConfigError("region needs --quad and --p");
      const auto verdict = securesum::region_verdict(securesum::quad_from_text(quad->second), std::stod(p->second));
      emit(region_flags.out_path(flags), verdict.explanation() + "\n");
      return verdict.in_region ? 0 : 1;
    }
  } catch (const securesum::CapacityError& e) {
    std::cerr << "securesum: capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "securesum: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
