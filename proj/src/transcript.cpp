#include "workbench/transcript.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "workbench/errors.hpp"

namespace workbench::protocols {

using nlohmann::json;

std::string party_name(PartyId id) {
  switch (id) {
    case PartyId::alice: return "alice";
    case PartyId::bob: return "bob";
    case PartyId::erich: return "erich";
  }
  throw std::invalid_argument("party_name: bad id");
}

PartyId party_from_name(const std::string& name) {
  if (name == "alice") return PartyId::alice;
  if (name == "bob") return PartyId::bob;
  if (name == "erich") return PartyId::erich;
  throw std::invalid_argument("party_from_name: unknown party '" + name + "'");
}

json json_natural(const Natural& n) { return n.to_hex(); }

Natural natural_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected hex-string natural");
  return Natural::from_hex(j.get<std::string>());
}

json json_count(std::uint64_t n) { return Natural(n).to_hex(); }

std::uint64_t count_from_json(const json& j) { return natural_from_json(j).to_u64(); }

json json_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

void Transcript::send(std::size_t round, PartyId sender, std::string label, json payload) {
  if (!messages.empty() && round < messages.back().round)
    throw std::invalid_argument("Transcript: rounds must be nondecreasing");
  messages.push_back(Message{round, sender, std::move(label), std::move(payload)});
}

std::string Transcript::to_jsonl() const {
  json header;
  header["protocol"] = protocol;
  header["parameters"] = parameters;
  if (seed) header["seed"] = json_count(*seed);
  if (!outputs.empty()) {
    json outs = json::object();
    for (const auto& [party, value] : outputs) outs[party] = value;
    header["outputs"] = outs;
  }
  std::string out = header.dump() + "\n";
  for (const Message& m : messages) {
    json line;
    line["round"] = json_count(m.round);
    line["sender"] = party_name(m.sender);
    line["label"] = m.label;
    line["payload"] = m.payload;
    out += line.dump() + "\n";
  }
  return out;
}

Transcript Transcript::from_jsonl(std::istream& in) {
  Transcript t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& ex) {
      throw ParseError(std::string("bad JSON: ") + ex.what(), lineno);
    }
    try {
      if (!have_header) {
        t.protocol = j.at("protocol").get<std::string>();
        t.parameters = j.value("parameters", json::object());
        if (j.contains("seed")) t.seed = count_from_json(j.at("seed"));
        if (j.contains("outputs"))
          for (const auto& [party, value] : j.at("outputs").items()) t.outputs[party] = value;
        have_header = true;
        continue;
      }
      t.send(count_from_json(j.at("round")), party_from_name(j.at("sender").get<std::string>()),
             j.at("label").get<std::string>(), j.at("payload"));
    } catch (const json::exception& ex) {
      throw ParseError(std::string("bad transcript record: ") + ex.what(), lineno);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), lineno);
    }
  }
  if (!have_header) throw ParseError("missing transcript header", lineno);
  return t;
}

void write_transcript(const Transcript& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << t.to_jsonl();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Transcript read_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return Transcript::from_jsonl(in);
}

}  // namespace workbench::protocols
