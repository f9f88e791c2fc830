#pragma once

// Move choosers for both seats behind one dispatch function.
//
// The four named strategies are deterministic functions of the move history:
//   xavier-winning  X: centre opening, field-f middlegame, (k,f)/(k,g) endgame
//   lbs             O: sends X to a field without X whenever possible
//   blocker-avoid   O: confines X to two fields after a non-double opening
//   blocker-avoid2  O: confines X after the prefix (i,i),(i,j),(j,k)
// random and greedy are seeded sampling adversaries for either seat.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "u3t/engine.hpp"

namespace u3t {

enum class StrategyId : std::uint8_t { XavierWinning, Lbs, BlockerAvoid, BlockerAvoid2, Random, Greedy };

inline constexpr std::array<StrategyId, 6> kAllStrategies = {
    StrategyId::XavierWinning, StrategyId::Lbs,    StrategyId::BlockerAvoid,
    StrategyId::BlockerAvoid2, StrategyId::Random, StrategyId::Greedy,
};

std::string_view to_string(StrategyId id);
std::optional<StrategyId> parse_strategy_id(std::string_view s);

// The seat a strategy is defined for; nullopt when it can play either side.
std::optional<Mark> seat_of(StrategyId id);

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StrategyContext {
  std::vector<Move> history;
  std::optional<std::uint64_t> seed;  // random/greedy only
};

// Replays and validates the history (including, for xavier-winning, that X
// followed the strategy so far), checks the seat, then dispatches.
CellAddr choose(StrategyId id, const StrategyContext& ctx);

// Unvalidated fast path for search: `state` must equal replay(history).
CellAddr choose(StrategyId id, const BoardState& state, std::span<const CellAddr> history, std::uint64_t seed = 0);

// The untouched field f at the start of the middlegame and its central
// reflection g = 8 - f. Spots {f, 4, g} form a line in every field and fields
// {f, 4, g} form a line on the board.
struct AnchorPair {
  int f = 0;
  int g = 8;

  static AnchorPair from_untouched(int f);  // throws std::invalid_argument for f == 4
  bool in_a(int i) const { return i != f && i != 4 && i != g; }
  friend bool operator==(const AnchorPair&, const AnchorPair&) = default;
};

// The anchor of a position in which X has completed the opening: field 4 is
// full and exactly one field other than 4 lacks an X at its centre.
std::optional<AnchorPair> find_anchor(const BoardState& state);

enum class XavierPhase : std::uint8_t { Opening, Middlegame, Endgame };

std::string_view to_string(XavierPhase p);

// Phase of the xavier-winning plan that the next move belongs to.
XavierPhase xavier_phase(const BoardState& state);

// X to move. Throws StrategyError when the position is not one the strategy
// can reach.
CellAddr xavier_choose(const BoardState& state, std::span<const CellAddr> history);

// O to move. In the active field j: spot j if O is the first to play there,
// else the lowest spot i with no X in field i and (j,i) free, else the lowest
// free spot. On free choice the lowest non-full field is used. O marks on
// `settled_spots` are ignored when deciding whether O is first to play in a
// field; the blocker strategies pass their two blocking spots so that fields
// holding only blocking marks count as fresh once the blocking phase is over.
CellAddr lbs_choose(const BoardState& state, std::uint16_t settled_spots = 0);

// Two-field confinement. O sends X to field `preferred` by playing that spot
// when it is free, otherwise to `fallback`. The blocking phase lasts until
// both fields are full; afterwards, and on any turn where neither spot is
// free, the move comes from lbs_choose with the two spots settled.
struct BlockerPlan {
  int preferred = 0;
  int fallback = 0;
};

bool blocking_active(const BoardState& state, BlockerPlan plan);
// True iff the blocking rule (not the lbs fall-through) produced the move.
bool blocking_move(const BoardState& state, BlockerPlan plan, CellAddr* out);
CellAddr blocker_choose(const BoardState& state, BlockerPlan plan);

// The plan after X opened (i, j), i != j: prefer spot j, then spot i.
BlockerPlan avoid_plan(CellAddr first_move);
// The plan after (i,i),(i,j),(j,k), k != i: prefer spot k, then spot i
// (for k == j this is the avoid plan of (i, j)).
BlockerPlan avoid2_plan(std::span<const CellAddr> history);

CellAddr blocker_avoid_choose(const BoardState& state, std::span<const CellAddr> history);
// O's own first reply (i, j) is not part of the blocker rule; after X's (i,i)
// this plays (i,4), or (4,0) when i = 4.
CellAddr blocker_avoid2_choose(const BoardState& state, std::span<const CellAddr> history);

CellAddr random_choose(const BoardState& state, std::uint64_t seed);

// Immediate game wins, then field wins that also create a board-level
// two-in-line, then any field win, then moves making a two-in-line inside an
// open field, then anything. Ties are broken by the seed.
CellAddr greedy_choose(const BoardState& state, std::uint64_t seed);

// 64-bit mixer used to derive per-position choices from a seed.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t seed, const StateKey& key, std::uint64_t salt = 0);

}  // namespace u3t
