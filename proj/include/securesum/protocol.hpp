#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "securesum/codes.hpp"
#include "securesum/gf2.hpp"
#include "securesum/seeds.hpp"
#include "securesum/source.hpp"

namespace securesum {

enum class PartyId : int { alice = 1, bob = 2, charlie = 3 };

/// The three pairwise links, named by their endpoints.
enum class Link : int { ab = 12, ac = 13, bc = 23 };

inline constexpr std::array<Link, 3> kLinks = {Link::ab, Link::ac, Link::bc};

Link link_between(PartyId a, PartyId b);
std::string_view party_name(PartyId p);

enum class ProtocolId { secure_km, plain_km, zero_error_otp };

/// "secure-km", "plain-km", "zero-error-otp"; anything else is a ConfigError.
ProtocolId parse_protocol_id(std::string_view text);
std::string_view protocol_name(ProtocolId id);

struct Message {
  PartyId from;
  PartyId to;
  int round;
  Gf2Vector payload;
  std::size_t declared_length;
};

/// Declared length of one message, fixed before the round it belongs to.
struct ScheduledMessage {
  int round;
  PartyId from;
  PartyId to;
  std::size_t length;
};

/// Message schedule in send order. Every implemented protocol uses constant
/// lengths, which makes every per-link code trivially prefix-free.
std::vector<ScheduledMessage> schedule(ProtocolId id, std::size_t n, std::size_t m);

/// Ordered record of every message exchanged, plus the private randomness
/// each party consumed.
class Transcript {
 public:
  /// Throws ContractViolation if payload length differs from the declared length
  /// or a party messages itself.
  void record(Message msg);
  void record_randomness(PartyId party, const Gf2Vector& bits);

  const std::vector<Message>& messages() const { return messages_; }
  std::vector<Message> link_messages(Link link) const;

  /// L_ij: declared lengths summed over rounds and both directions.
  std::size_t total_length(Link link) const;
  /// M_ij: payloads on the link concatenated in send order.
  Gf2Vector link_bits(Link link) const;
  /// Every payload concatenated in send order.
  Gf2Vector digest() const;

  const Gf2Vector& randomness(PartyId party) const;
  std::size_t randomness_total() const;

  int rounds() const;

  /// One line per message: `round,from,to,length,payload-bits`.
  void dump(std::ostream& out) const;
  static Transcript parse(std::istream& in);

 private:
  std::vector<Message> messages_;
  std::array<Gf2Vector, 3> randomness_;
};

struct RunOutcome {
  Gf2Vector z_hat;
  Transcript transcript;
  bool correct = false;
};

// Next-message functions. Each takes only what its party holds at that point.
namespace parties {

struct AliceKmRound1 {
  Gf2Vector to_bob;      // K
  Gf2Vector to_charlie;  // K ^ H x
};
AliceKmRound1 secure_km_alice(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& k);
Gf2Vector secure_km_bob(const LinearCode& code, const Gf2Vector& y, const Gf2Vector& from_alice);

struct AliceOtpRound1 {
  Gf2Vector to_bob;      // K
  Gf2Vector to_charlie;  // K ^ x
};
AliceOtpRound1 otp_alice(const Gf2Vector& x, const Gf2Vector& k);
Gf2Vector otp_bob(const Gf2Vector& y, const Gf2Vector& from_alice);

Gf2Vector plain_km_sender(const LinearCode& code, const Gf2Vector& input);

/// Charlie's output from what he received on links 13 and 23.
Gf2Vector km_charlie(const LinearCode& code, const Gf2Vector& from_alice, const Gf2Vector& from_bob);
Gf2Vector otp_charlie(const Gf2Vector& from_alice, const Gf2Vector& from_bob);

}  // namespace parties

/// Masked syndrome protocol: Alice sends K to Bob and K ^ Hx to Charlie in
/// round 1; Bob sends K ^ Hy to Charlie in round 2.
RunOutcome run_secure_km(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& y, const Gf2Vector& k);

/// One-time pad with n key bits: K to Bob, K ^ x to Charlie, then Bob sends K ^ y.
RunOutcome run_zero_error_otp(const Gf2Vector& x, const Gf2Vector& y, const Gf2Vector& k);

/// Unmasked baseline: both users send their syndromes straight to Charlie.
RunOutcome run_plain_km(const LinearCode& code, const Gf2Vector& x, const Gf2Vector& y);

/// Dispatches on `id`. `k` is ignored for plain-km. `code` may be null only for
/// zero-error-otp.
RunOutcome run_protocol(ProtocolId id, const LinearCode* code, const Gf2Vector& x, const Gf2Vector& y,
                        const Gf2Vector& k);

/// Key length the protocol consumes for block length n and syndrome length m.
std::size_t key_length(ProtocolId id, std::size_t n, std::size_t m);

/// Samples (x, y) from the source using `rng`; Alice's private key comes from
/// her own generator, seeded by one draw from `rng`.
RunOutcome run_with_sampling(ProtocolId id, const DsbsParams& params, const LinearCode* code, Rng& rng);

/// Charlie's output recomputed from links 13 and 23 of a transcript alone.
Gf2Vector charlie_output_from_transcript(ProtocolId id, const LinearCode* code, const Transcript& t);

/// Re-runs every party's next-message function against the messages it
/// received in `t` and reports whether all recorded outgoing messages match.
bool honest_replay_matches(ProtocolId id, const LinearCode* code, const Gf2Vector& x, const Gf2Vector& y,
                           const Transcript& t);

}  // namespace securesum
