#include "u3t/record.hpp"

#include <cctype>
#include <sstream>

namespace u3t {

namespace {

Mark player_for_ply(int ply) { return ply % 2 == 1 ? Mark::X : Mark::O; }

int parse_index(const nlohmann::json& v, const char* name, std::size_t index) {
  if (!v.contains(name) || !v[name].is_number_integer()) {
    throw RecordFormatError("move " + std::to_string(index) + " (ply " + std::to_string(index + 1) +
                            "): missing integer '" + name + "'");
  }
  const auto n = v[name].get<long long>();
  if (n < 0 || n > 8) {
    throw RecordFormatError("move " + std::to_string(index) + " (ply " + std::to_string(index + 1) + "): '" + name +
                            "' out of range");
  }
  return static_cast<int>(n);
}

}  // namespace

GameRecord make_record(std::span<const CellAddr> addrs) {
  GameRecord rec;
  rec.moves.reserve(addrs.size());
  for (std::size_t i = 0; i < addrs.size(); ++i) {
    const int ply = static_cast<int>(i) + 1;
    rec.moves.push_back(Move{player_for_ply(ply), addrs[i], ply});
  }
  rec.result = replay(addrs).status();
  return rec;
}

std::vector<CellAddr> addresses(const GameRecord& record) {
  std::vector<CellAddr> out;
  out.reserve(record.moves.size());
  for (const Move& m : record.moves) out.push_back(m.addr);
  return out;
}

ReplayError::ReplayError(std::size_t index, std::string reason)
    : std::runtime_error("illegal move at ply " + std::to_string(index + 1) + " (index " + std::to_string(index) +
                         "): " + reason),
      index_(index),
      reason_(std::move(reason)) {}

BoardState replay(const GameRecord& record) {
  BoardState state;
  for (std::size_t i = 0; i < record.moves.size(); ++i) {
    const Move& m = record.moves[i];
    const int ply = static_cast<int>(i) + 1;
    if (m.player != player_for_ply(ply)) throw ReplayError(i, "wrong-player");
    if (m.ply != ply) throw ReplayError(i, "wrong-ply");
    if (auto reason = state.illegal_reason(m.addr)) throw ReplayError(i, std::string(to_string(*reason)));
    state = state.apply_unchecked(m.addr);
  }
  return state;
}

BoardState replay(std::span<const CellAddr> addrs) {
  BoardState state;
  for (std::size_t i = 0; i < addrs.size(); ++i) {
    if (auto reason = state.illegal_reason(addrs[i])) throw ReplayError(i, std::string(to_string(*reason)));
    state = state.apply_unchecked(addrs[i]);
  }
  return state;
}

nlohmann::ordered_json to_json_value(const GameRecord& record) {
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  for (const Move& m : record.moves) {
    nlohmann::ordered_json jm;
    jm["p"] = std::string(to_string(m.player));
    jm["f"] = m.addr.field;
    jm["s"] = m.addr.spot;
    moves.push_back(std::move(jm));
  }
  nlohmann::ordered_json out;
  out["moves"] = std::move(moves);
  out["result"] = std::string(to_string(record.result));
  if (!record.annotations.empty()) out["annotations"] = record.annotations;
  return out;
}

std::string to_json(const GameRecord& record) { return to_json_value(record).dump(); }

GameRecord record_from_json_value(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("moves") || !value["moves"].is_array()) {
    throw RecordFormatError("record must be an object with a 'moves' array");
  }
  GameRecord rec;
  const auto& moves = value["moves"];
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& jm = moves[i];
    if (!jm.is_object()) throw RecordFormatError("move " + std::to_string(i) + ": not an object");
    const int ply = static_cast<int>(i) + 1;
    Mark player = player_for_ply(ply);
    if (jm.contains("p")) {
      auto parsed = jm["p"].is_string() ? parse_mark(jm["p"].get<std::string>()) : std::nullopt;
      if (!parsed) throw RecordFormatError("move " + std::to_string(i) + ": 'p' must be \"X\" or \"O\"");
      player = *parsed;
    }
    rec.moves.push_back(Move{player, CellAddr(parse_index(jm, "f", i), parse_index(jm, "s", i)), ply});
  }
  if (value.contains("result")) {
    auto parsed = value["result"].is_string() ? parse_game_status(value["result"].get<std::string>()) : std::nullopt;
    if (!parsed) throw RecordFormatError("unknown result");
    rec.result = *parsed;
  } else {
    rec.result = GameStatus::InProgress;
  }
  if (value.contains("annotations")) {
    if (!value["annotations"].is_array()) throw RecordFormatError("'annotations' must be an array");
    for (const auto& a : value["annotations"]) {
      if (!a.is_string()) throw RecordFormatError("annotations must be strings");
      rec.annotations.push_back(a.get<std::string>());
    }
  }
  return rec;
}

GameRecord record_from_json(std::string_view text) {
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RecordFormatError(std::string("invalid JSON: ") + e.what());
  }
  return record_from_json_value(value);
}

std::string to_text(const GameRecord& record) {
  std::string out;
  for (const Move& m : record.moves) {
    if (!out.empty()) out += ' ';
    out += to_string(m.addr);
  }
  return out;
}

GameRecord record_from_text(std::string_view text) {
  GameRecord rec;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const std::size_t i = rec.moves.size();
    if (token.size() != 3 || token[1] != '.' || token[0] < '0' || token[0] > '8' || token[2] < '0' ||
        token[2] > '8') {
      throw RecordFormatError("move " + std::to_string(i) + " (ply " + std::to_string(i + 1) + "): bad token '" +
                              token + "'");
    }
    const int ply = static_cast<int>(i) + 1;
    rec.moves.push_back(Move{player_for_ply(ply), CellAddr(token[0] - '0', token[2] - '0'), ply});
  }
  // Text carries no result; it is whatever the moves produce.
  try {
    rec.result = replay(rec).status();
  } catch (const ReplayError&) {
    rec.result = GameStatus::InProgress;
  }
  return rec;
}

GameRecord parse_record(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? record_from_json(text) : record_from_text(text);
  }
  return GameRecord{};
}

}  // namespace u3t
