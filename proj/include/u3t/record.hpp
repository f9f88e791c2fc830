#pragma once

// Game records: an ordered move list plus the result, with two wire formats.
//
// JSON (compact, keys in this order, no whitespace):
//   {"moves":[{"p":"X","f":4,"s":4},{"p":"O","f":4,"s":7}],"result":"InProgress"}
// An optional "annotations" array of strings (one per move) follows "result"
// when the record carries phase labels.
//
// Text: space-separated "f.s" tokens, X first, e.g. "4.4 4.7 7.4".

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "u3t/engine.hpp"

namespace u3t {

struct GameRecord {
  std::vector<Move> moves;
  GameStatus result = GameStatus::InProgress;
  std::vector<std::string> annotations;  // empty, or one label per move

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

// Builds a record from bare addresses, assigning players and plies by parity.
// The result is computed by replaying.
GameRecord make_record(std::span<const CellAddr> addrs);

std::vector<CellAddr> addresses(const GameRecord& record);

// Carries the 0-based index of the first offending move.
class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, std::string reason);
  std::size_t index() const { return index_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t index_;
  std::string reason_;
};

// Applies the moves from new_game(). Throws ReplayError on the first move
// that is illegal, or whose player or ply disagrees with move parity.
BoardState replay(const GameRecord& record);
BoardState replay(std::span<const CellAddr> addrs);

class RecordFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json to_json_value(const GameRecord& record);
std::string to_json(const GameRecord& record);
GameRecord record_from_json_value(const nlohmann::json& value);
GameRecord record_from_json(std::string_view text);

std::string to_text(const GameRecord& record);
GameRecord record_from_text(std::string_view text);

// JSON if the first non-space character is '{', text notation otherwise.
GameRecord parse_record(std::string_view text);

}  // namespace u3t
