#pragma once

// Rules engine for Ultimate Tic-Tac-Toe.
//
// The board holds 9 fields of 9 spots each, both indexed 0..8 row-major
// (0 is top-left). A cell is addressed by the pair (field, spot). The spot of
// a move names the field the opponent must play in next, unless that field is
// already full, in which case the opponent may play anywhere. Field wins are
// latched: the first player to align three marks in a field owns it for the
// rest of the game.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace u3t {

inline constexpr int kFields = 9;
inline constexpr int kSpots = 9;
inline constexpr int kCells = kFields * kSpots;
inline constexpr std::uint16_t kFullField = 0x1FF;

enum class Mark : std::uint8_t { X = 0, O = 1 };

constexpr Mark opponent(Mark m) { return m == Mark::X ? Mark::O : Mark::X; }

enum class Cell : std::uint8_t { Empty, X, O };

enum class FieldStatus : std::uint8_t { Open, WonX, WonO, DrawnFull };

enum class GameStatus : std::uint8_t { InProgress, WonX, WonO, Draw };

enum class MoveError : std::uint8_t { Occupied, WrongField, Terminal };

std::string_view to_string(Mark m);
std::string_view to_string(FieldStatus s);
std::string_view to_string(GameStatus s);
std::string_view to_string(MoveError e);
std::optional<Mark> parse_mark(std::string_view s);
std::optional<GameStatus> parse_game_status(std::string_view s);

constexpr bool is_terminal(GameStatus s) { return s != GameStatus::InProgress; }

// The 8 winning lines of a 3x3 grid as 9-bit masks, bit k = spot (or field) k.
inline constexpr std::array<std::uint16_t, 8> kLines = {
    0b000'000'111, 0b000'111'000, 0b111'000'000,  // rows
    0b001'001'001, 0b010'010'010, 0b100'100'100,  // columns
    0b100'010'001, 0b001'010'100,                 // diagonals
};

namespace detail {
constexpr std::array<bool, 512> make_line_table() {
  std::array<bool, 512> table{};
  for (unsigned mask = 0; mask < 512; ++mask) {
    for (std::uint16_t line : kLines) {
      if ((mask & line) == line) table[mask] = true;
    }
  }
  return table;
}
inline constexpr std::array<bool, 512> kHasLine = make_line_table();
}  // namespace detail

// True iff the 9-bit mask contains one of the 8 lines.
constexpr bool has_line(std::uint16_t mask) { return detail::kHasLine[mask & kFullField]; }

struct CellAddr {
  std::uint8_t field = 0;
  std::uint8_t spot = 0;

  constexpr CellAddr() = default;
  constexpr CellAddr(int f, int s) : field(static_cast<std::uint8_t>(f)), spot(static_cast<std::uint8_t>(s)) {
    if (f < 0 || f >= kFields || s < 0 || s >= kSpots) throw std::out_of_range("cell address out of range");
  }

  constexpr int index() const { return field * kSpots + spot; }
  static constexpr CellAddr from_index(int idx) { return CellAddr(idx / kSpots, idx % kSpots); }

  friend constexpr bool operator==(CellAddr, CellAddr) = default;
  friend constexpr auto operator<=>(CellAddr, CellAddr) = default;
};

// "f.s" notation, e.g. "4.4".
std::string to_string(CellAddr a);

struct Move {
  Mark player = Mark::X;
  CellAddr addr;
  int ply = 1;  // 1-based; X moves at odd plies

  friend bool operator==(const Move&, const Move&) = default;
};

// Which players own at least one line in a field, ignoring latching.
struct FieldLines {
  bool x = false;
  bool o = false;
  friend bool operator==(const FieldLines&, const FieldLines&) = default;
};

FieldLines field_line_winner(const std::array<Cell, kSpots>& cells);

// Fixed-capacity list of cell addresses; legal moves never exceed 81.
class MoveList {
 public:
  void push_back(CellAddr a) { items_[size_++] = a; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  CellAddr operator[](std::size_t i) const { return items_[i]; }
  const CellAddr* begin() const { return items_.data(); }
  const CellAddr* end() const { return items_.data() + size_; }
  bool contains(CellAddr a) const;

 private:
  std::array<CellAddr, kCells> items_{};
  std::size_t size_ = 0;
};

// Perfect encoding of (cells, field statuses, forced field). The side to move
// and the ply are functions of the cells and are therefore not stored.
struct StateKey {
  std::array<std::uint64_t, 3> words{};
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept;
};

class IllegalMoveError : public std::runtime_error {
 public:
  IllegalMoveError(MoveError reason, CellAddr addr);
  MoveError reason() const { return reason_; }
  CellAddr addr() const { return addr_; }

 private:
  MoveError reason_;
  CellAddr addr_;
};

class BoardState {
 public:
  BoardState() = default;
  static BoardState new_game() { return BoardState{}; }

  Cell cell(CellAddr a) const;
  std::uint16_t marks(Mark m, int field) const { return m == Mark::X ? x_[field] : o_[field]; }
  std::uint16_t occupied(int field) const { return static_cast<std::uint16_t>(x_[field] | o_[field]); }
  bool is_empty(CellAddr a) const { return (occupied(a.field) & (1u << a.spot)) == 0; }
  bool field_full(int field) const { return occupied(field) == kFullField; }
  std::array<Cell, kSpots> field_cells(int field) const;

  FieldStatus field_status(int field) const { return fields_[field]; }
  // 9-bit mask of fields latched as won by m.
  std::uint16_t won_fields(Mark m) const { return m == Mark::X ? won_x_ : won_o_; }
  std::optional<int> forced_field() const {
    return forced_ < 0 ? std::nullopt : std::optional<int>(forced_);
  }
  Mark to_move() const { return (ply_ % 2 == 0) ? Mark::X : Mark::O; }
  int ply() const { return ply_; }
  GameStatus status() const { return status_; }
  bool terminal() const { return is_terminal(status_); }
  int count(Mark m) const;

  // Empty cells of the forced field, or of the whole board on free choice.
  // Empty on a terminal state. Ordered by (field, spot).
  MoveList legal_moves() const;
  std::optional<MoveError> illegal_reason(CellAddr a) const;
  bool is_legal(CellAddr a) const { return !illegal_reason(a).has_value(); }

  // Throws IllegalMoveError.
  BoardState apply_move(CellAddr a) const;
  // Caller guarantees legality.
  BoardState apply_unchecked(CellAddr a) const;

  StateKey key() const;

  friend bool operator==(const BoardState&, const BoardState&) = default;

 private:
  std::array<std::uint16_t, kFields> x_{};
  std::array<std::uint16_t, kFields> o_{};
  std::array<FieldStatus, kFields> fields_{};
  std::uint16_t won_x_ = 0;
  std::uint16_t won_o_ = 0;
  std::int8_t forced_ = -1;
  std::uint8_t ply_ = 0;
  GameStatus status_ = GameStatus::InProgress;
};

inline BoardState new_game() { return BoardState::new_game(); }

}  // namespace u3t
