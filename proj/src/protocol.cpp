#include "securesum/protocol.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "securesum/errors.hpp"

namespace securesum {
namespace {

std::size_t party_index(PartyId p) { return static_cast<std::size_t>(p) - 1; }

PartyId parse_party(const std::string& field) {
  if (field == "1") return PartyId::alice;
  if (field == "2") return PartyId::bob;
  if (field == "3") return PartyId::charlie;
  throw ConfigError("transcript: unknown party \"" + field + "\"");
}

const LinearCode& require_code(const LinearCode* code, ProtocolId id) {
  if (code == nullptr) {
    throw ContractViolation(std::string(protocol_name(id)) + " needs a linear code");
  }
  return *code;
}

void require_inputs(const Gf2Vector& x, const Gf2Vector& y, std::size_t n) {
  detail::require(x.size() == n && y.size() == n, [&] {
    return "protocol inputs must both have length " + std::to_string(n) + " (got " + std::to_string(x.size()) + ", " +
           std::to_string(y.size()) + ")";
  });
}

Message make_message(const ScheduledMessage& slot, Gf2Vector payload) {
  return Message{slot.from, slot.to, slot.round, std::move(payload), slot.length};
}

// First payload sent from `from` to `to`.
const Gf2Vector& received(const Transcript& t, PartyId from, PartyId to) {
  for (const auto& msg : t.messages()) {
    if (msg.from == from && msg.to == to) return msg.payload;
  }
  throw ContractViolation("transcript has no message from " + std::string(party_name(from)) + " to " +
                          std::string(party_name(to)));
}

}  // namespace

Link link_between(PartyId a, PartyId b) {
  const int lo = std::min(static_cast<int>(a), static_cast<int>(b));
  const int hi = std::max(static_cast<int>(a), static_cast<int>(b));
  detail::require(lo != hi, "a link needs two distinct parties");
  return static_cast<Link>(lo * 10 + hi);
}

std::string_view party_name(PartyId p) {
  switch (p) {
    case PartyId::alice:
      return "alice";
    case PartyId::bob:
      return "bob";
    case PartyId::charlie:
      return "charlie";
  }
  return "?";
}

ProtocolId parse_protocol_id(std::string_view text) {
  if (text == "secure-km") return ProtocolId::secure_km;
  if (text == "plain-km") return ProtocolId::plain_km;
  if (text == "zero-error-otp") return ProtocolId::zero_error_otp;
  throw ConfigError("unknown protocol \"" + std::string(text) + "\" (expected secure-km, plain-km or zero-error-otp)");
}

std::string_view protocol_name(ProtocolId id) {
  switch (id) {
    case ProtocolId::secure_km:
      return "secure-km";
    case ProtocolId::plain_km:
      return "plain-km";
    case ProtocolId::zero_error_otp:
      return "zero-error-otp";
  }
  return "?";
}

std::vector<ScheduledMessage> schedule(ProtocolId id, std::size_t n, std::size_t m) {
  using P = PartyId;
  switch (id) {
    case ProtocolId::secure_km:
      return {{1, P::alice, P::bob, m}, {1, P::alice, P::charlie, m}, {2, P::bob, P::charlie, m}};
    case ProtocolId::zero_error_otp:
      return {{1, P::alice, P::bob, n}, {1, P::alice, P::charlie, n}, {2, P::bob, P::charlie, n}};
    case ProtocolId::plain_km:
      return {{1, P::alice, P::charlie, m}, {1, P::bob, P::charlie, m}};
  }
  return {};
}

std::size_t key_length(ProtocolId id, std::size_t n, std::size_t m) {
  switch (id) {
    case ProtocolId::secure_km:
      return m;
    case ProtocolId::zero_error_otp:
      return n;
    case ProtocolId::plain_km:
      return 0;
  }
  return 0;
}

// --- Transcript -------------------------------------------------------------

void Transcript::record(Message msg) {
  detail::require(msg.from != msg.to, "a party cannot message itself");
  detail::require(msg.payload.size() == msg.declared_length, [&] {
    return "payload length " + std::to_string(msg.payload.size()) + " differs from declared length " +
           std::to_string(msg.declared_length);
  });
  messages_.push_back(std::move(msg));
}

void Transcript::record_randomness(PartyId party, const Gf2Vector& bits) {
  randomness_[party_index(party)] = concat(randomness_[party_index(party)], bits);
}

std::vector<Message> Transcript::link_messages(Link link) const {
  std::vector<Message> out;
  for (const auto& msg : messages_) {
    if (link_between(msg.from, msg.to) == link) out.push_back(msg);
  }
  return out;
}

std::size_t Transcript::total_length(Link link) const {
  std::size_t total = 0;
  for (const auto& msg : messages_) {
    if (link_between(msg.from, msg.to) == link) total += msg.declared_length;
  }
  return total;
}

Gf2Vector Transcript::link_bits(Link link) const {
  Gf2Vector out;
  for (const auto& msg : messages_) {
    if (link_between(msg.from, msg.to) == link) out = concat(out, msg.payload);
  }
  return out;
}

Gf2Vector Transcript::digest() const {
  Gf2Vector out;
  for (const auto& msg : messages_) out = concat(out, msg.payload);
  return out;
}

const Gf2Vector& Transcript::randomness(PartyId party) const { return randomness_[party_index(party)]; }

std::size_t Transcript::randomness_total() const {
  std::size_t total = 0;
  for (const auto& r : randomness_) total += r.size();
  return total;
}

int Transcript::rounds() const {
  int last = 0;
  for (const auto& msg : messages_) last = std::max(last, msg.round);
  return last;
}

void Transcript::dump(std::ostream& out) const {
  for (const auto& msg : messages_) {
    out << msg.round << ',' << static_cast<int>(msg.from) << ',' << static_cast<int>(msg.to) << ','
        << msg.declared_length << ',' << msg.payload.to_string() << '\n';
  }
}

Transcript Transcript::parse(std::istream& in) {
  Transcript t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 5) throw ConfigError("transcript line needs 5 fields: \"" + line + "\"");
    Message msg{parse_party(fields[1]), parse_party(fields[2]), 0, Gf2Vector::from_string(fields[4]), 0};
    try {
      msg.round = std::stoi(fields[0]);
      msg.declared_length = std::stoul(fields[3]);
    } catch (const std::exception&) {
      throw ConfigError("transcript line has a malformed number: \"" + line + "\"");
    }
    if (msg.payload.size() != msg.declared_length) {
      throw ConfigError("transcript line length field disagrees with payload: \"" + line + "\"");
    }
    t.record(std::move(msg));
  }
  return t;
}

// --- party functions ---------------------------------------------------------

namespace parties {

AliceKmRound1 secure_km_alice(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& k) {
  return {k, k ^ code.syndrome(x)};
}

Gf2Vector secure_km_bob(const LinearCode& code, const Gf2Vector& y, const Gf2Vector& from_alice) {
  return from_alice ^ code.syndrome(y);
}

AliceOtpRound1 otp_alice(const Gf2Vector& x, const Gf2Vector& k) { return {k, k ^ x}; }

Gf2Vector otp_bob(const Gf2Vector& y, const Gf2Vector& from_alice) { return from_alice ^ y; }

Gf2Vector plain_km_sender(const LinearCode& code, const Gf2Vector& input) { return code.syndrome(input); }

Gf2Vector km_charlie(const LinearCode& code, const Gf2Vector& from_alice, const Gf2Vector& from_bob) {
  return code.decode_syndrome(from_alice ^ from_bob);
}

Gf2Vector otp_charlie(const Gf2Vector& from_alice, const Gf2Vector& from_bob) { return from_alice ^ from_bob; }

}  // namespace parties

// --- protocols ---------------------------------------------------------------

RunOutcome run_secure_km(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& y, const Gf2Vector& k) {
  require_inputs(x, y, code.n());
  detail::require(k.size() == code.m(),
                  [&] { return "secure-km key must have length m = " + std::to_string(code.m()); });
  const auto slots = schedule(ProtocolId::secure_km, code.n(), code.m());

  RunOutcome out;
  out.transcript.record_randomness(PartyId::alice, k);
  auto alice = parties::secure_km_alice(code, x, k);
  out.transcript.record(make_message(slots[0], alice.to_bob));
  out.transcript.record(make_message(slots[1], alice.to_charlie));
  Gf2Vector from_bob = parties::secure_km_bob(code, y, alice.to_bob);
  out.transcript.record(make_message(slots[2], from_bob));

  out.z_hat = parties::km_charlie(code, alice.to_charlie, from_bob);
  out.correct = out.z_hat == (x ^ y);
  return out;
}

RunOutcome run_zero_error_otp(const Gf2Vector& x, const Gf2Vector& y, const Gf2Vector& k) {
  require_inputs(x, y, x.size());
  detail::require(k.size() == x.size(),
                  [&] { return "one-time pad key must have length n = " + std::to_string(x.size()); });
  const auto slots = schedule(ProtocolId::zero_error_otp, x.size(), x.size());

  RunOutcome out;
  out.transcript.record_randomness(PartyId::alice, k);
  auto alice = parties::otp_alice(x, k);
  out.transcript.record(make_message(slots[0], alice.to_bob));
  out.transcript.record(make_message(slots[1], alice.to_charlie));
  Gf2Vector from_bob = parties::otp_bob(y, alice.to_bob);
  out.transcript.record(make_message(slots[2], from_bob));

  out.z_hat = parties::otp_charlie(alice.to_charlie, from_bob);
  out.correct = out.z_hat == (x ^ y);
  return out;
}

RunOutcome run_plain_km(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& y) {
  require_inputs(x, y, code.n());
  const auto slots = schedule(ProtocolId::plain_km, code.n(), code.m());

  RunOutcome out;
  Gf2Vector from_alice = parties::plain_km_sender(code, x);
  Gf2Vector from_bob = parties::plain_km_sender(code, y);
  out.transcript.record(make_message(slots[0], from_alice));
  out.transcript.record(make_message(slots[1], from_bob));

  out.z_hat = parties::km_charlie(code, from_alice, from_bob);
  out.correct = out.z_hat == (x ^ y);
  return out;
}

RunOutcome run_protocol(ProtocolId id, const LinearCode* code, const Gf2Vector& x, const Gf2Vector& y,
                        const Gf2Vector& k) {
  switch (id) {
    case ProtocolId::secure_km:
      return run_secure_km(require_code(code, id), x, y, k);
    case ProtocolId::plain_km:
      return run_plain_km(require_code(code, id), x, y);
    case ProtocolId::zero_error_otp:
      return run_zero_error_otp(x, y, k);
  }
  throw ConfigError("unknown protocol id");
}

RunOutcome run_with_sampling(ProtocolId id, const DsbsParams& params, const LinearCode* code, Rng& rng) {
  params.validate();
  if (id != ProtocolId::zero_error_otp) {
    detail::require(require_code(code, id).n() == params.n, "code length differs from source blocklength");
  }
  auto [x, y] = sample_pair(params, rng);
  Rng alice(rng());
  const std::size_t m = code != nullptr ? code->m() : params.n;
  Gf2Vector k = random_vector(key_length(id, params.n, m), alice);
  return run_protocol(id, code, x, y, k);
}

Gf2Vector charlie_output_from_transcript(ProtocolId id, const LinearCode* code, const Transcript& t) {
  const Gf2Vector& from_alice = received(t, PartyId::alice, PartyId::charlie);
  const Gf2Vector& from_bob = received(t, PartyId::bob, PartyId::charlie);
  if (id == ProtocolId::zero_error_otp) return parties::otp_charlie(from_alice, from_bob);
  return parties::km_charlie(require_code(code, id), from_alice, from_bob);
}

bool honest_replay_matches(ProtocolId id, const LinearCode* code, const Gf2Vector& x, const Gf2Vector& y,
                           const Transcript& t) {
  const Gf2Vector& k = t.randomness(PartyId::alice);
  std::vector<Gf2Vector> expected;
  switch (id) {
    case ProtocolId::secure_km: {
      const LinearCode& c = require_code(code, id);
      auto alice = parties::secure_km_alice(c, x, k);
      expected = {alice.to_bob, alice.to_charlie,
                  parties::secure_km_bob(c, y, received(t, PartyId::alice, PartyId::bob))};
      break;
    }
    case ProtocolId::zero_error_otp: {
      auto alice = parties::otp_alice(x, k);
      expected = {alice.to_bob, alice.to_charlie, parties::otp_bob(y, received(t, PartyId::alice, PartyId::bob))};
      break;
    }
    case ProtocolId::plain_km: {
      const LinearCode& c = require_code(code, id);
      expected = {parties::plain_km_sender(c, x), parties::plain_km_sender(c, y)};
      break;
    }
  }
  const auto& msgs = t.messages();
  if (msgs.size() != expected.size()) return false;
  const auto slots = schedule(id, x.size(), code != nullptr ? code->m() : x.size());
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    if (msgs[i].payload != expected[i] || msgs[i].from != slots[i].from || msgs[i].to != slots[i].to ||
        msgs[i].round != slots[i].round || msgs[i].declared_length != slots[i].length) {
      return false;
    }
  }
  return true;
}

}  // namespace securesum
