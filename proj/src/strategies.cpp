#include "u3t/strategies.hpp"

#include <bit>
#include <string>

#include "u3t/record.hpp"

namespace u3t {

namespace {

constexpr int kCentre = 4;

CellAddr lowest_empty_spot(const BoardState& state, int field) {
  const std::uint16_t free = static_cast<std::uint16_t>(~state.occupied(field) & kFullField);
  if (free == 0) throw StrategyError("field " + std::to_string(field) + " is full");
  return CellAddr(field, std::countr_zero(free));
}

std::optional<int> lowest_open_field(const BoardState& state) {
  for (int f = 0; f < kFields; ++f) {
    if (!state.field_full(f)) return f;
  }
  return std::nullopt;
}

void require_turn(const BoardState& state, Mark seat, std::string_view who) {
  if (state.terminal()) throw StrategyError(std::string(who) + ": game is over");
  if (state.to_move() != seat) throw StrategyError(std::string(who) + ": not this seat's turn");
}

bool x_at(const BoardState& s, int field, int spot) { return s.cell(CellAddr(field, spot)) == Cell::X; }

// Endgame rule inside field k: (k,f) if free, else (k,g).
std::optional<CellAddr> endgame_target(const BoardState& s, int k, AnchorPair a) {
  if (s.is_empty(CellAddr(k, a.f))) return CellAddr(k, a.f);
  if (s.is_empty(CellAddr(k, a.g))) return CellAddr(k, a.g);
  return std::nullopt;
}

CellAddr lbs_in_field(const BoardState& s, int j, std::uint16_t settled_spots) {
  const bool first_to_play = s.marks(Mark::X, j) == 0 && (s.marks(Mark::O, j) & ~settled_spots) == 0;
  if (first_to_play && s.is_empty(CellAddr(j, j))) return CellAddr(j, j);
  for (int i = 0; i < kFields; ++i) {
    if (s.marks(Mark::X, i) == 0 && s.is_empty(CellAddr(j, i))) return CellAddr(j, i);
  }
  return lowest_empty_spot(s, j);
}

std::optional<CellAddr> blocking_in_field(const BoardState& s, int field, BlockerPlan plan) {
  if (s.is_empty(CellAddr(field, plan.preferred))) return CellAddr(field, plan.preferred);
  if (s.is_empty(CellAddr(field, plan.fallback))) return CellAddr(field, plan.fallback);
  return std::nullopt;
}

// Two own marks on a line whose third cell is empty.
bool has_open_two(std::uint16_t own, std::uint16_t other) {
  for (std::uint16_t line : kLines) {
    if ((line & other) == 0 && std::popcount(static_cast<unsigned>(own & line)) == 2) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(StrategyId id) {
  switch (id) {
    case StrategyId::XavierWinning: return "xavier-winning";
    case StrategyId::Lbs: return "lbs";
    case StrategyId::BlockerAvoid: return "blocker-avoid";
    case StrategyId::BlockerAvoid2: return "blocker-avoid2";
    case StrategyId::Random: return "random";
    case StrategyId::Greedy: return "greedy";
  }
  return "?";
}

std::optional<StrategyId> parse_strategy_id(std::string_view s) {
  for (StrategyId id : kAllStrategies) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

std::optional<Mark> seat_of(StrategyId id) {
  switch (id) {
    case StrategyId::XavierWinning: return Mark::X;
    case StrategyId::Lbs:
    case StrategyId::BlockerAvoid:
    case StrategyId::BlockerAvoid2: return Mark::O;
    case StrategyId::Random:
    case StrategyId::Greedy: return std::nullopt;
  }
  return std::nullopt;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, const StateKey& key, std::uint64_t salt) {
  std::uint64_t h = mix64(seed ^ mix64(salt));
  for (std::uint64_t w : key.words) h = mix64(h ^ w);
  return h;
}

AnchorPair AnchorPair::from_untouched(int f) {
  if (f < 0 || f >= kFields || f == kCentre) throw std::invalid_argument("anchor field must be in 0..8 and not 4");
  return AnchorPair{f, 8 - f};
}

std::optional<AnchorPair> find_anchor(const BoardState& state) {
  if (!state.field_full(kCentre)) return std::nullopt;
  std::optional<int> untouched;
  for (int j = 0; j < kFields; ++j) {
    if (j == kCentre || x_at(state, j, kCentre)) continue;
    if (untouched) return std::nullopt;
    untouched = j;
  }
  if (!untouched) return std::nullopt;
  return AnchorPair::from_untouched(*untouched);
}

std::string_view to_string(XavierPhase p) {
  switch (p) {
    case XavierPhase::Opening: return "opening";
    case XavierPhase::Middlegame: return "middlegame";
    case XavierPhase::Endgame: return "endgame";
  }
  return "?";
}

XavierPhase xavier_phase(const BoardState& state) {
  auto anchor = find_anchor(state);
  if (!anchor) return XavierPhase::Opening;
  return x_at(state, anchor->g, anchor->g) ? XavierPhase::Endgame : XavierPhase::Middlegame;
}

CellAddr xavier_choose(const BoardState& state, std::span<const CellAddr> history) {
  require_turn(state, Mark::X, "xavier-winning");
  if (state.ply() == 0) return CellAddr(kCentre, kCentre);

  // Opening: O was kept in the centre field; answer (4,j) with (j,4).
  if (!state.field_full(kCentre)) {
    auto j = state.forced_field();
    if (!j || *j == kCentre || !state.is_empty(CellAddr(*j, kCentre))) {
      throw StrategyError("xavier-winning: position is not an opening line");
    }
    return CellAddr(*j, kCentre);
  }

  auto anchor = find_anchor(state);
  if (!anchor) throw StrategyError("xavier-winning: no untouched field after the opening");
  const AnchorPair a = *anchor;
  const auto legal = [&](CellAddr c) { return state.is_legal(c); };

  if (state.is_empty(CellAddr(a.f, a.f))) {
    const CellAddr first(a.f, a.f);
    if (!legal(first)) throw StrategyError("xavier-winning: cannot start the middlegame");
    return first;
  }
  if (!x_at(state, a.f, a.f)) throw StrategyError("xavier-winning: (f,f) is not X");

  if (!x_at(state, a.g, a.g)) {
    // Middlegame: O just played (f,k).
    if (history.empty() || history.back().field != a.f) {
      throw StrategyError("xavier-winning: middlegame reply expected after a move in field f");
    }
    const int k = history.back().spot;
    CellAddr reply;
    if (k != kCentre && k != a.g) {
      reply = CellAddr(k, a.f);
    } else if (state.is_empty(CellAddr(a.g, a.f))) {
      reply = CellAddr(a.g, a.f);
    } else if (x_at(state, a.g, a.f)) {
      reply = CellAddr(a.g, a.g);
    } else {
      throw StrategyError("xavier-winning: (g,f) taken by O");
    }
    if (!legal(reply)) throw StrategyError("xavier-winning: middlegame reply " + to_string(reply) + " is illegal");
    return reply;
  }

  // Endgame.
  if (auto k = state.forced_field()) {
    if (auto target = endgame_target(state, *k, a)) return *target;
    return lowest_empty_spot(state, *k);
  }
  for (int k = 0; k < kFields; ++k) {
    if (state.field_full(k)) continue;
    if (auto target = endgame_target(state, k, a)) return *target;
  }
  return state.legal_moves()[0];
}

CellAddr lbs_choose(const BoardState& state, std::uint16_t settled_spots) {
  require_turn(state, Mark::O, "lbs");
  auto j = state.forced_field();
  if (!j) j = lowest_open_field(state);
  if (!j) throw StrategyError("lbs: no legal move");
  return lbs_in_field(state, *j, settled_spots);
}

bool blocking_active(const BoardState& state, BlockerPlan plan) {
  return !(state.field_full(plan.preferred) && state.field_full(plan.fallback));
}

bool blocking_move(const BoardState& state, BlockerPlan plan, CellAddr* out) {
  if (!blocking_active(state, plan)) return false;
  std::optional<CellAddr> move;
  if (auto forced = state.forced_field()) {
    move = blocking_in_field(state, *forced, plan);
  } else {
    for (int field = 0; field < kFields && !move; ++field) {
      if (!state.field_full(field)) move = blocking_in_field(state, field, plan);
    }
  }
  if (!move) return false;
  if (out) *out = *move;
  return true;
}

CellAddr blocker_choose(const BoardState& state, BlockerPlan plan) {
  require_turn(state, Mark::O, "blocker");
  CellAddr move;
  if (blocking_move(state, plan, &move)) return move;
  return lbs_choose(state, static_cast<std::uint16_t>((1u << plan.preferred) | (1u << plan.fallback)));
}

BlockerPlan avoid_plan(CellAddr first_move) {
  if (first_move.field == first_move.spot) throw StrategyError("blocker-avoid: X opened with a double");
  return BlockerPlan{first_move.spot, first_move.field};
}

BlockerPlan avoid2_plan(std::span<const CellAddr> history) {
  if (history.size() < 3) throw StrategyError("blocker-avoid2: needs the three-move prefix");
  const CellAddr x1 = history[0], o1 = history[1], x2 = history[2];
  const int i = x1.field;
  if (x1.spot != i) throw StrategyError("blocker-avoid2: X did not open with a double");
  if (o1.field != i) throw StrategyError("blocker-avoid2: O's first move is not in field i");
  const int j = o1.spot;
  if (x2.field != j) throw StrategyError("blocker-avoid2: X's second move is not in field j");
  const int k = x2.spot;
  if (k == i) throw StrategyError("blocker-avoid2: X answered (j,i)");
  if (k == j) return BlockerPlan{j, i};
  return BlockerPlan{k, i};
}

CellAddr blocker_avoid_choose(const BoardState& state, std::span<const CellAddr> history) {
  if (history.empty()) throw StrategyError("blocker-avoid: X has not opened");
  return blocker_choose(state, avoid_plan(history[0]));
}

CellAddr blocker_avoid2_choose(const BoardState& state, std::span<const CellAddr> history) {
  if (history.size() == 1) {
    const CellAddr x1 = history[0];
    if (x1.field != x1.spot) throw StrategyError("blocker-avoid2: X did not open with a double");
    return CellAddr(x1.field, x1.field == 4 ? 0 : 4);
  }
  return blocker_choose(state, avoid2_plan(history));
}

CellAddr random_choose(const BoardState& state, std::uint64_t seed) {
  const MoveList legal = state.legal_moves();
  if (legal.empty()) throw StrategyError("random: no legal move");
  return legal[mix_seed(seed, state.key()) % legal.size()];
}

CellAddr greedy_choose(const BoardState& state, std::uint64_t seed) {
  const MoveList legal = state.legal_moves();
  if (legal.empty()) throw StrategyError("greedy: no legal move");
  const Mark me = state.to_move();
  const GameStatus my_win = me == Mark::X ? GameStatus::WonX : GameStatus::WonO;

  std::array<CellAddr, kCells> best{};
  std::size_t best_count = 0;
  int best_tier = -1;
  for (CellAddr m : legal) {
    const BoardState next = state.apply_unchecked(m);
    int tier = 0;
    if (next.status() == my_win) {
      tier = 4;
    } else if (next.won_fields(me) != state.won_fields(me)) {
      std::uint16_t blocked = next.won_fields(opponent(me));
      for (int f = 0; f < kFields; ++f) {
        if (next.field_status(f) == FieldStatus::DrawnFull) blocked = static_cast<std::uint16_t>(blocked | (1u << f));
      }
      tier = has_open_two(next.won_fields(me), blocked) ? 3 : 2;
    } else if (state.field_status(m.field) == FieldStatus::Open &&
               has_open_two(next.marks(me, m.field), next.marks(opponent(me), m.field))) {
      tier = 1;
    }
    if (tier > best_tier) {
      best_tier = tier;
      best_count = 0;
    }
    if (tier == best_tier) best[best_count++] = m;
  }
  return best[mix_seed(seed, state.key(), static_cast<std::uint64_t>(best_tier)) % best_count];
}

CellAddr choose(StrategyId id, const BoardState& state, std::span<const CellAddr> history, std::uint64_t seed) {
  switch (id) {
    case StrategyId::XavierWinning: return xavier_choose(state, history);
    case StrategyId::Lbs: return lbs_choose(state);
    case StrategyId::BlockerAvoid: return blocker_avoid_choose(state, history);
    case StrategyId::BlockerAvoid2: return blocker_avoid2_choose(state, history);
    case StrategyId::Random: return random_choose(state, seed);
    case StrategyId::Greedy: return greedy_choose(state, seed);
  }
  throw StrategyError("unknown strategy");
}

CellAddr choose(StrategyId id, const StrategyContext& ctx) {
  GameRecord record;
  record.moves = ctx.history;
  std::vector<CellAddr> addrs = addresses(record);

  BoardState state;
  for (std::size_t n = 0; n < addrs.size(); ++n) {
    const Move& m = ctx.history[n];
    const int ply = static_cast<int>(n) + 1;
    if (m.player != (ply % 2 == 1 ? Mark::X : Mark::O) || m.ply != ply) {
      throw StrategyError("history illegal at index " + std::to_string(n) + ": wrong player or ply");
    }
    if (auto reason = state.illegal_reason(m.addr)) {
      throw StrategyError("history illegal at index " + std::to_string(n) + ": " + std::string(to_string(*reason)));
    }
    if (id == StrategyId::XavierWinning && m.player == Mark::X) {
      CellAddr expected;
      try {
        expected = xavier_choose(state, std::span<const CellAddr>(addrs.data(), n));
      } catch (const StrategyError&) {
        throw StrategyError("history deviates from xavier-winning at ply " + std::to_string(ply));
      }
      if (expected != m.addr) throw StrategyError("history deviates from xavier-winning at ply " + std::to_string(ply));
    }
    state = state.apply_unchecked(m.addr);
  }

  if (state.terminal()) throw StrategyError(std::string(to_string(id)) + ": game is over");
  if (auto seat = seat_of(id); seat && *seat != state.to_move()) {
    throw StrategyError(std::string(to_string(id)) + " does not play " + std::string(to_string(state.to_move())));
  }
  return choose(id, state, addrs, ctx.seed.value_or(0));
}

}  // namespace u3t
