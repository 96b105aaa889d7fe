#include "securesum/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <thread>

#include "securesum/errors.hpp"
#include "securesum/source.hpp"

namespace securesum {
namespace {

std::string p_digits(double p) { return fmt::format("{:.9g}", p); }

bool wants_exact(Mode mode) { return mode == Mode::exact || mode == Mode::both; }
bool wants_monte_carlo(Mode mode) { return mode == Mode::monte_carlo || mode == Mode::both; }

ReportRow base_row(const ExperimentConfig& config) {
  ReportRow row;
  row.protocol = std::string(protocol_name(config.protocol));
  row.n = config.n;
  row.m = config.resolved_m();
  row.p = config.p;
  row.seed = config.seed;
  return row;
}

const LinearCode* code_ptr(const std::optional<LinearCode>& code) { return code ? &*code : nullptr; }

// --- flag parsing ---

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string token(text.substr(start, end - start));
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (!token.empty()) out.push_back(token);
    start = end + 1;
  }
  return out;
}

double to_double(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("--" + name + ": \"" + text + "\" is not a number");
}

std::uint64_t to_u64(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() != '-') {
      std::uint64_t v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("--" + name + ": \"" + text + "\" is not a non-negative integer");
}

const std::string* find(const FlagMap& flags, const std::string& name) {
  auto it = flags.find(name);
  return it == flags.end() ? nullptr : &it->second;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const FlagMap& flags, const std::string& name, Parse parse) {
  std::vector<T> out;
  if (const auto* raw = find(flags, name)) {
    for (const auto& token : split_list(*raw)) out.push_back(parse(name, token));
    if (out.empty()) throw ConfigError("--" + name + " was given an empty list");
  }
  return out;
}

ReportRow average_rows(const std::vector<ReportRow>& rows) {
  ReportRow out = rows.front();
  auto mean = [&](std::optional<double> ReportRow::* field) {
    double total = 0.0;
    for (const auto& r : rows) {
      if (!(r.*field)) return std::optional<double>{};
      total += *(r.*field);
    }
    return std::optional<double>{total / static_cast<double>(rows.size())};
  };
  for (auto field :
       {&ReportRow::r12, &ReportRow::r13, &ReportRow::r23, &ReportRow::rho, &ReportRow::eps1, &ReportRow::eps2,
        &ReportRow::eps3, &ReportRow::eps4, &ReportRow::p_err_exact, &ReportRow::p_err_mc, &ReportRow::mc_ci}) {
    out.*field = mean(field);
  }
  if (out.r12 && out.r13 && out.r23 && out.rho) {
    out.in_region = check_rate_region({*out.r13, *out.r23, *out.r12, *out.rho}, out.p);
  } else {
    out.in_region.reset();
  }
  return out;
}

void run_parallel(std::size_t jobs, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(jobs, std::max(1U, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> failures(jobs);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        job(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "monte-carlo") return Mode::monte_carlo;
  if (text == "both") return Mode::both;
  throw ConfigError("unknown mode \"" + std::string(text) + "\" (expected exact, monte-carlo or both)");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::exact:
      return "exact";
    case Mode::monte_carlo:
      return "monte-carlo";
    case Mode::both:
      return "both";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n < 1) throw ConfigError("--n must be a positive blocklength");
  if (!(p >= 0.0 && p <= 0.5)) throw ConfigError("--p must lie in [0, 0.5], got " + p_digits(p));
  if (trials < 1) throw ConfigError("--trials must be at least 1");
  if (protocol != ProtocolId::zero_error_otp) {
    const int given = int{m.has_value()} + int{rate.has_value()} + int{epsilon.has_value()};
    if (given != 1) throw ConfigError("give exactly one of --m, --rate or --epsilon");
  }
  if (rate && !(*rate >= 0.0 && *rate <= 1.0)) throw ConfigError("--rate must lie in [0, 1]");
  if (epsilon && *epsilon < 0.0) throw ConfigError("--epsilon must be non-negative");
  resolved_m();
}

std::size_t ExperimentConfig::resolved_m() const {
  if (protocol == ProtocolId::zero_error_otp) return n;
  std::size_t out = 0;
  if (m) {
    out = *m;
  } else {
    const double r = rate ? *rate : binary_entropy(p) + epsilon.value_or(0.0);
    // Tolerance keeps exact products such as 12 * 0.75 from rounding up.
    out = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * r - 1e-9));
  }
  if (out > n) throw ConfigError("syndrome length m = " + std::to_string(out) + " exceeds n = " + std::to_string(n));
  return out;
}

std::uint64_t point_seed(const ExperimentConfig& config) {
  return derive_seed({config.seed, hash_text(protocol_name(config.protocol)), config.n, config.resolved_m(),
                      hash_text(p_digits(config.p)), config.instance});
}

std::optional<LinearCode> make_code(const ExperimentConfig& config) {
  if (config.protocol == ProtocolId::zero_error_otp) return std::nullopt;
  return build_code(config.n, config.resolved_m(), point_seed(config), config.code_limits);
}

ReportRow run_simulate(const ExperimentConfig& config) {
  config.validate();
  ReportRow row = base_row(config);
  const auto code = make_code(config);
  const DsbsParams params{config.p, config.n};

  if (wants_exact(config.mode)) {
    // The pad's output is M13 ^ M23 = x ^ y identically.
    row.p_err_exact = code ? exact_error_probability(*code, config.p) : 0.0;
    std::array<double, 3> len{};
    for (const auto& slot : schedule(config.protocol, config.n, config.resolved_m())) {
      len[link_slot(link_between(slot.from, slot.to))] += static_cast<double>(slot.length);
    }
    row.r12 = len[0] / static_cast<double>(config.n);
    row.r13 = len[1] / static_cast<double>(config.n);
    row.r23 = len[2] / static_cast<double>(config.n);
  }
  if (wants_monte_carlo(config.mode)) {
    Rng rng(derive_seed({point_seed(config), hash_text("monte-carlo")}));
    const McEstimate est = monte_carlo_error(config.protocol, code_ptr(code), params, config.trials, rng);
    row.p_err_mc = est.rate;
    row.mc_ci = est.half_width;
    row.r12 = est.mean_length[0] / static_cast<double>(config.n);
    row.r13 = est.mean_length[1] / static_cast<double>(config.n);
    row.r23 = est.mean_length[2] / static_cast<double>(config.n);
  }
  return row;
}

ReportRow run_leakage(const ExperimentConfig& config) {
  config.validate();
  ReportRow row = base_row(config);
  const auto code = make_code(config);
  const DsbsParams params{config.p, config.n};

  const JointPmf pmf = enumerate_joint(config.protocol, code_ptr(code), params, config.enumeration_limits);
  const LeakageReport leak = leakage_report(pmf, config.n);
  const RateReport rates = rate_report(pmf, config.n);
  row.r12 = rates.r12;
  row.r13 = rates.r13;
  row.r23 = rates.r23;
  row.rho = rates.rho;
  row.eps1 = leak.eps1;
  row.eps2 = leak.eps2;
  row.eps3 = leak.eps3;
  row.eps4 = leak.eps4;
  row.p_err_exact = error_probability(pmf);
  row.in_region = check_rate_region(rates.quad(), config.p);

  if (config.mode == Mode::both) {
    Rng rng(derive_seed({point_seed(config), hash_text("monte-carlo")}));
    const McEstimate est = monte_carlo_error(config.protocol, code_ptr(code), params, config.trials, rng);
    row.p_err_mc = est.rate;
    row.mc_ci = est.half_width;
  }
  return row;
}

std::vector<ReportRow> run_sweep(const SweepConfig& config) {
  if (config.ps.empty()) throw ConfigError("sweep needs a non-empty --p list");

  if (config.quad) {
    std::vector<ReportRow> rows;
    for (double p : config.ps) {
      const RegionVerdict verdict = region_verdict(*config.quad, p);
      ReportRow row;
      row.protocol = "quad";
      row.p = p;
      row.seed = config.base.seed;
      row.r12 = config.quad->r12;
      row.r13 = config.quad->r13;
      row.r23 = config.quad->r23;
      row.rho = config.quad->rho;
      row.in_region = verdict.in_region;
      rows.push_back(row);
    }
    return rows;
  }

  if (config.protocols.empty()) throw ConfigError("sweep needs at least one --protocol");
  if (config.ns.empty()) throw ConfigError("sweep needs a non-empty --n list");
  if (!config.ms.empty() && !config.rates.empty()) throw ConfigError("sweep takes --m or --rate, not both");
  if (config.base.epsilon && (!config.ms.empty() || !config.rates.empty())) {
    throw ConfigError("sweep takes one of --m, --rate or --epsilon");
  }
  if (config.instances < 1) throw ConfigError("--instances must be at least 1");

  std::vector<ExperimentConfig> points;
  for (ProtocolId protocol : config.protocols) {
    for (std::size_t n : config.ns) {
      std::vector<ExperimentConfig> shapes;
      ExperimentConfig shape = config.base;
      shape.protocol = protocol;
      shape.n = n;
      shape.m.reset();
      shape.rate.reset();
      if (protocol == ProtocolId::zero_error_otp) {
        shapes.push_back(shape);
      } else if (!config.ms.empty()) {
        for (std::size_t m : config.ms) {
          shape.m = m;
          shapes.push_back(shape);
        }
      } else if (!config.rates.empty()) {
        for (double r : config.rates) {
          shape.rate = r;
          shapes.push_back(shape);
        }
      } else {
        shapes.push_back(shape);
      }
      for (const auto& s : shapes) {
        for (double p : config.ps) {
          ExperimentConfig point = s;
          point.p = p;
          point.validate();
          points.push_back(point);
        }
      }
    }
  }

  std::vector<ReportRow> rows(points.size());
  run_parallel(points.size(), [&](std::size_t i) {
    std::vector<ReportRow> samples;
    for (std::size_t inst = 0; inst < config.instances; ++inst) {
      ExperimentConfig point = points[i];
      point.instance = inst;
      samples.push_back(config.analysis == SweepAnalysis::leakage ? run_leakage(point) : run_simulate(point));
    }
    rows[i] = average_rows(samples);
  });
  return rows;
}

std::string RegionVerdict::explanation() const {
  return fmt::format("min component {:.9g}, H2(p) = {:.9g}: {}", min_component, entropy,
                     in_region ? "in-region" : "out-of-region");
}

RegionVerdict region_verdict(const RateQuad& quad, double p) {
  for (double c : {quad.r13, quad.r23, quad.r12, quad.rho}) {
    if (c < 0.0) throw ConfigError("rate components must be non-negative");
  }
  if (!(p >= 0.0 && p <= 0.5)) throw ConfigError("--p must lie in [0, 0.5]");
  RegionVerdict v;
  v.min_component = std::min({quad.r13, quad.r23, quad.r12, quad.rho});
  v.entropy = binary_entropy(p);
  v.in_region = check_rate_region(quad, p);
  return v;
}

void merge_json_config(FlagMap& flags, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    if (v.is_number()) return fmt::format("{:.17g}", v.get<double>());
    throw ConfigError("config values must be strings, numbers or arrays of them");
  };
  for (const auto& [key, value] : doc.items()) {
    if (flags.count(key) != 0) continue;
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += scalar(item);
      }
      flags[key] = joined;
    } else {
      flags[key] = scalar(value);
    }
  }
}

RateQuad quad_from_text(std::string_view text) {
  const auto parts = split_list(text);
  if (parts.size() != 4) throw ConfigError("--quad needs four comma-separated values R13,R23,R12,rho");
  RateQuad q{to_double("quad", parts[0]), to_double("quad", parts[1]), to_double("quad", parts[2]),
             to_double("quad", parts[3])};
  for (double c : {q.r13, q.r23, q.r12, q.rho}) {
    if (c < 0.0) throw ConfigError("--quad components must be non-negative");
  }
  return q;
}

ExperimentConfig experiment_from_flags(const FlagMap& flags) {
  ExperimentConfig config;
  if (const auto* v = find(flags, "protocol")) config.protocol = parse_protocol_id(*v);
  const auto* n = find(flags, "n");
  if (n == nullptr) throw ConfigError("--n is required");
  config.n = to_u64("n", *n);
  const auto* p = find(flags, "p");
  if (p == nullptr) throw ConfigError("--p is required");
  config.p = to_double("p", *p);
  if (const auto* v = find(flags, "m")) config.m = to_u64("m", *v);
  if (const auto* v = find(flags, "rate")) config.rate = to_double("rate", *v);
  if (const auto* v = find(flags, "epsilon")) config.epsilon = to_double("epsilon", *v);
  if (const auto* v = find(flags, "seed")) config.seed = to_u64("seed", *v);
  if (const auto* v = find(flags, "trials")) config.trials = to_u64("trials", *v);
  if (const auto* v = find(flags, "mode")) config.mode = parse_mode(*v);
  config.validate();
  return config;
}

SweepConfig sweep_from_flags(const FlagMap& flags) {
  SweepConfig config;
  auto as_size = [](const std::string& name, const std::string& t) {
    return static_cast<std::size_t>(to_u64(name, t));
  };
  config.ps = parse_list<double>(flags, "p", to_double);
  if (const auto* v = find(flags, "quad")) {
    config.quad = quad_from_text(*v);
    if (const auto* s = find(flags, "seed")) config.base.seed = to_u64("seed", *s);
    if (config.ps.empty()) throw ConfigError("sweep needs a non-empty --p list");
    return config;
  }
  if (const auto* v = find(flags, "protocol")) {
    for (const auto& token : split_list(*v)) config.protocols.push_back(parse_protocol_id(token));
    if (config.protocols.empty()) throw ConfigError("--protocol was given an empty list");
  } else {
    config.protocols = {ProtocolId::secure_km};
  }
  config.ns = parse_list<std::size_t>(flags, "n", as_size);
  config.ms = parse_list<std::size_t>(flags, "m", as_size);
  config.rates = parse_list<double>(flags, "rate", to_double);
  if (config.ns.empty()) throw ConfigError("sweep needs a non-empty --n list");
  if (config.ps.empty()) throw ConfigError("sweep needs a non-empty --p list");
  if (const auto* v = find(flags, "epsilon")) config.base.epsilon = to_double("epsilon", *v);
  if (const auto* v = find(flags, "seed")) config.base.seed = to_u64("seed", *v);
  if (const auto* v = find(flags, "trials")) config.base.trials = to_u64("trials", *v);
  if (const auto* v = find(flags, "mode")) config.base.mode = parse_mode(*v);
  if (const auto* v = find(flags, "instances")) config.instances = as_size("instances", *v);
  if (const auto* v = find(flags, "analysis")) {
    if (*v == "simulate") {
      config.analysis = SweepAnalysis::simulate;
    } else if (*v == "leakage") {
      config.analysis = SweepAnalysis::leakage;
    } else {
      throw ConfigError("--analysis must be simulate or leakage");
    }
  }
  return config;
}

}  // namespace securesum
