#include "u3t/engine.hpp"

#include <bit>

namespace u3t {

std::string_view to_string(Mark m) { return m == Mark::X ? "X" : "O"; }

std::string_view to_string(FieldStatus s) {
  switch (s) {
    case FieldStatus::Open: return "Open";
    case FieldStatus::WonX: return "WonX";
    case FieldStatus::WonO: return "WonO";
    case FieldStatus::DrawnFull: return "DrawnFull";
  }
  return "?";
}

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::InProgress: return "InProgress";
    case GameStatus::WonX: return "WonX";
    case GameStatus::WonO: return "WonO";
    case GameStatus::Draw: return "Draw";
  }
  return "?";
}

std::string_view to_string(MoveError e) {
  switch (e) {
    case MoveError::Occupied: return "occupied";
    case MoveError::WrongField: return "wrong-field";
    case MoveError::Terminal: return "terminal";
  }
  return "?";
}

std::optional<Mark> parse_mark(std::string_view s) {
  if (s == "X") return Mark::X;
  if (s == "O") return Mark::O;
  return std::nullopt;
}

std::optional<GameStatus> parse_game_status(std::string_view s) {
  for (GameStatus g : {GameStatus::InProgress, GameStatus::WonX, GameStatus::WonO, GameStatus::Draw}) {
    if (s == to_string(g)) return g;
  }
  return std::nullopt;
}

std::string to_string(CellAddr a) {
  std::string out;
  out += static_cast<char>('0' + a.field);
  out += '.';
  out += static_cast<char>('0' + a.spot);
  return out;
}

FieldLines field_line_winner(const std::array<Cell, kSpots>& cells) {
  std::uint16_t xs = 0, os = 0;
  for (int s = 0; s < kSpots; ++s) {
    if (cells[s] == Cell::X) xs |= 1u << s;
    if (cells[s] == Cell::O) os |= 1u << s;
  }
  return {has_line(xs), has_line(os)};
}

bool MoveList::contains(CellAddr a) const {
  for (CellAddr m : *this) {
    if (m == a) return true;
  }
  return false;
}

std::size_t StateKeyHash::operator()(const StateKey& k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (std::uint64_t w : k.words) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

IllegalMoveError::IllegalMoveError(MoveError reason, CellAddr addr)
    : std::runtime_error("illegal move " + to_string(addr) + ": " + std::string(to_string(reason))),
      reason_(reason),
      addr_(addr) {}

Cell BoardState::cell(CellAddr a) const {
  const std::uint16_t bit = static_cast<std::uint16_t>(1u << a.spot);
  if (x_[a.field] & bit) return Cell::X;
  if (o_[a.field] & bit) return Cell::O;
  return Cell::Empty;
}

std::array<Cell, kSpots> BoardState::field_cells(int field) const {
  std::array<Cell, kSpots> out{};
  for (int s = 0; s < kSpots; ++s) out[s] = cell(CellAddr(field, s));
  return out;
}

int BoardState::count(Mark m) const {
  int n = 0;
  for (int f = 0; f < kFields; ++f) n += std::popcount(marks(m, f));
  return n;
}

MoveList BoardState::legal_moves() const {
  MoveList out;
  if (terminal()) return out;
  auto add_field = [&](int f) {
    std::uint16_t free = static_cast<std::uint16_t>(~occupied(f) & kFullField);
    while (free) {
      int s = std::countr_zero(free);
      out.push_back(CellAddr(f, s));
      free &= static_cast<std::uint16_t>(free - 1);
    }
  };
  if (forced_ >= 0) {
    add_field(forced_);
  } else {
    for (int f = 0; f < kFields; ++f) add_field(f);
  }
  return out;
}

std::optional<MoveError> BoardState::illegal_reason(CellAddr a) const {
  if (terminal()) return MoveError::Terminal;
  if (!is_empty(a)) return MoveError::Occupied;
  if (forced_ >= 0 && a.field != forced_) return MoveError::WrongField;
  return std::nullopt;
}

BoardState BoardState::apply_move(CellAddr a) const {
  if (auto reason = illegal_reason(a)) throw IllegalMoveError(*reason, a);
  return apply_unchecked(a);
}

BoardState BoardState::apply_unchecked(CellAddr a) const {
  BoardState next = *this;
  const Mark mover = to_move();
  const int f = a.field;
  auto& plane = mover == Mark::X ? next.x_ : next.o_;
  plane[f] = static_cast<std::uint16_t>(plane[f] | (1u << a.spot));

  if (next.fields_[f] == FieldStatus::Open) {
    if (has_line(plane[f])) {
      next.fields_[f] = mover == Mark::X ? FieldStatus::WonX : FieldStatus::WonO;
      auto& won = mover == Mark::X ? next.won_x_ : next.won_o_;
      won = static_cast<std::uint16_t>(won | (1u << f));
      if (has_line(won)) next.status_ = mover == Mark::X ? GameStatus::WonX : GameStatus::WonO;
    } else if (next.field_full(f)) {
      next.fields_[f] = FieldStatus::DrawnFull;
    }
  }

  next.ply_ = static_cast<std::uint8_t>(ply_ + 1);
  if (next.status_ == GameStatus::InProgress && next.ply_ == kCells) next.status_ = GameStatus::Draw;
  next.forced_ = next.field_full(a.spot) ? std::int8_t{-1} : static_cast<std::int8_t>(a.spot);
  return next;
}

StateKey BoardState::key() const {
  StateKey k;
  int bit = 0;
  auto put = [&](std::uint64_t value, int width) {
    const int word = bit / 64, offset = bit % 64;
    k.words[word] |= value << offset;
    if (offset + width > 64) k.words[word + 1] |= value >> (64 - offset);
    bit += width;
  };
  for (int f = 0; f < kFields; ++f) put(x_[f], 9);
  for (int f = 0; f < kFields; ++f) put(o_[f], 9);
  for (int f = 0; f < kFields; ++f) put(static_cast<std::uint64_t>(fields_[f]), 2);
  put(static_cast<std::uint64_t>(forced_ + 1), 4);
  return k;
}

}  // namespace u3t
