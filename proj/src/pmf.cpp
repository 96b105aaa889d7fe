#include "securesum/pmf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "securesum/errors.hpp"

namespace securesum {
namespace {

constexpr std::array<std::string_view, kVariableCount> kNames = {"X", "Y", "Z", "K", "M12", "M13", "M23", "Zhat"};

std::uint32_t pack(const Gf2Vector& v) { return static_cast<std::uint32_t>(v.to_word()); }

}  // namespace

Variable parse_variable(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Variable>(i);
  }
  throw ConfigError("unknown variable \"" + std::string(name) + "\" (expected X, Y, Z, K, M12, M13, M23 or Zhat)");
}

std::string_view variable_name(Variable v) { return kNames[static_cast<std::size_t>(v)]; }

VariableSet parse_variable_set(std::string_view names) {
  VariableSet set;
  std::size_t start = 0;
  while (start <= names.size()) {
    std::size_t end = names.find(',', start);
    if (end == std::string_view::npos) end = names.size();
    std::string_view token = names.substr(start, end - start);
    if (!token.empty()) set = set | VariableSet{parse_variable(token)};
    start = end + 1;
  }
  return set;
}

std::size_t link_slot(Link link) {
  switch (link) {
    case Link::ab:
      return 0;
    case Link::ac:
      return 1;
    case Link::bc:
      return 2;
  }
  return 0;
}

JointPmf::JointPmf(const std::array<std::size_t, kVariableCount>& widths) : widths_(widths) {
  for (std::size_t w : widths) {
    if (w > 32) throw CapacityError("pmf components are limited to 32 bits, got " + std::to_string(w));
  }
}

void JointPmf::resize(std::size_t atoms) {
  for (auto& c : columns_) c.assign(atoms, 0);
  prob_.assign(atoms, 0.0);
}

void JointPmf::set_atom(std::size_t index, const AtomValues& values, double prob) {
  for (std::size_t v = 0; v < kVariableCount; ++v) {
    detail::require(widths_[v] == 32 || values[v] < (std::uint64_t{1} << widths_[v]),
                    [&] { return "atom value exceeds the width of " + std::string(kNames[v]); });
    columns_[v][index] = values[v];
  }
  prob_[index] = prob;
}

void JointPmf::add_atom(const AtomValues& values, double prob) {
  for (auto& c : columns_) c.push_back(0);
  prob_.push_back(0.0);
  set_atom(prob_.size() - 1, values, prob);
}

Gf2Vector JointPmf::vector(Variable v, std::size_t i) const { return Gf2Vector::from_word(value(v, i), width(v)); }

double JointPmf::total_probability() const {
  double total = 0.0;
  for (double p : prob_) total += p;
  return total;
}

Gf2Vector JointPmf::digest(std::size_t i) const {
  return concat(concat(vector(Variable::m12, i), vector(Variable::m13, i)), vector(Variable::m23, i));
}

std::size_t atom_bits(ProtocolId id, std::size_t n, std::size_t m) { return 2 * n + key_length(id, n, m); }

JointPmf enumerate_joint(ProtocolId id, const LinearCode* code, const DsbsParams& params, EnumerationLimits limits) {
  params.validate();
  const std::size_t n = params.n;
  std::size_t m = n;
  if (id != ProtocolId::zero_error_otp) {
    detail::require(code != nullptr, [&] { return std::string(protocol_name(id)) + " needs a linear code"; });
    detail::require(code->n() == n, "code length differs from source blocklength");
    m = code->m();
  }
  const std::size_t bits = atom_bits(id, n, m);
  if (bits > limits.max_atom_bits) {
    throw CapacityError("exact enumeration needs 2^" + std::to_string(bits) + " atoms; guard is 2^" +
                        std::to_string(limits.max_atom_bits));
  }
  const std::size_t key_bits = key_length(id, n, m);

  // Declared lengths come from the schedule, before any execution.
  std::array<std::size_t, 3> link_len{};
  for (const auto& slot : schedule(id, n, m)) link_len[link_slot(link_between(slot.from, slot.to))] += slot.length;

  JointPmf pmf({n, n, n, key_bits, link_len[0], link_len[1], link_len[2], n});
  pmf.protocol = id;
  pmf.n = n;
  pmf.m = m;
  const std::size_t atoms = std::size_t{1} << bits;
  pmf.resize(atoms);

  std::vector<double> by_weight(n + 1);
  const double key_prob = std::ldexp(1.0, -static_cast<int>(key_bits));
  for (std::size_t w = 0; w <= n; ++w) {
    by_weight[w] = std::pow(params.p / 2.0, static_cast<double>(w)) *
                   std::pow((1.0 - params.p) / 2.0, static_cast<double>(n - w)) * key_prob;
  }

  const std::uint64_t xs = std::uint64_t{1} << n;
  unsigned workers = limits.workers != 0 ? limits.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, xs));

  auto work = [&](std::uint64_t x_begin, std::uint64_t x_end) {
    for (std::uint64_t xw = x_begin; xw < x_end; ++xw) {
      const Gf2Vector x = Gf2Vector::from_word(xw, n);
      for (std::uint64_t yw = 0; yw < xs; ++yw) {
        const Gf2Vector y = Gf2Vector::from_word(yw, n);
        const double prob = by_weight[static_cast<std::size_t>(std::popcount(xw ^ yw))];
        for (std::uint64_t kw = 0; kw < (std::uint64_t{1} << key_bits); ++kw) {
          const Gf2Vector k = Gf2Vector::from_word(kw, key_bits);
          RunOutcome run = run_protocol(id, code, x, y, k);
          AtomValues values{};
          values[static_cast<std::size_t>(Variable::x)] = static_cast<std::uint32_t>(xw);
          values[static_cast<std::size_t>(Variable::y)] = static_cast<std::uint32_t>(yw);
          values[static_cast<std::size_t>(Variable::z)] = static_cast<std::uint32_t>(xw ^ yw);
          values[static_cast<std::size_t>(Variable::k)] = static_cast<std::uint32_t>(kw);
          for (Link link : kLinks) {
            if (run.transcript.total_length(link) != link_len[link_slot(link)]) {
              throw ContractViolation("transcript length on a link differs from its schedule");
            }
          }
          values[static_cast<std::size_t>(Variable::m12)] = pack(run.transcript.link_bits(Link::ab));
          values[static_cast<std::size_t>(Variable::m13)] = pack(run.transcript.link_bits(Link::ac));
          values[static_cast<std::size_t>(Variable::m23)] = pack(run.transcript.link_bits(Link::bc));
          values[static_cast<std::size_t>(Variable::z_hat)] = pack(run.z_hat);
          const std::size_t index = static_cast<std::size_t>(((xw << n) | yw) << key_bits | kw);
          pmf.set_atom(index, values, prob);
        }
      }
    }
  };

  if (workers <= 1) {
    work(0, xs);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = xs * w / workers;
      const std::uint64_t end = xs * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Every atom was checked against the schedule, so E[L] is the declared length.
  for (std::size_t s = 0; s < 3; ++s) pmf.expected_length[s] = static_cast<double>(link_len[s]);
  return pmf;
}

}  // namespace securesum
