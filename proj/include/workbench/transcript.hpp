#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/natural.hpp"

namespace workbench::protocols {

enum class PartyId { alice, bob, erich };

std::string party_name(PartyId id);
PartyId party_from_name(const std::string& name);

// JSON encoding helpers: naturals travel as lowercase 0x-prefixed hex
// strings, counts likewise, rationals as "num/den".
nlohmann::json json_natural(const Natural& n);
Natural natural_from_json(const nlohmann::json& j);
nlohmann::json json_count(std::uint64_t n);
std::uint64_t count_from_json(const nlohmann::json& j);
nlohmann::json json_rational(const Rational& r);

// One protocol message as seen on the wire.
struct Message {
  std::size_t round = 0;
  PartyId sender = PartyId::alice;
  std::string label;
  nlohmann::json payload;

  friend bool operator==(const Message&, const Message&) = default;
};

// Everything the channel carried in one protocol run: public parameters,
// the ordered messages, and each party's declared final output. Private
// state never passes through here; parties hand the runner only what they
// send.
struct Transcript {
  std::string protocol;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::vector<Message> messages;
  std::map<std::string, nlohmann::json> outputs;

  // Appends a message, enforcing nondecreasing rounds.
  void send(std::size_t round, PartyId sender, std::string label, nlohmann::json payload);

  // JSON lines: one header object, then one object per message.
  std::string to_jsonl() const;
  static Transcript from_jsonl(std::istream& in);

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

void write_transcript(const Transcript& t, const std::string& path);
Transcript read_transcript(const std::string& path);

}  // namespace workbench::protocols
