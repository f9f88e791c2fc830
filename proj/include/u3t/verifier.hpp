#pragma once

// Machine checks of the strategy bounds.
//
//   verify_xavier       exhaustive: every O reply against xavier-winning,
//                       memoized; all leaves must be X wins within 43 plies
//                       and P1..P6 must hold after every X endgame move.
//   verify_lbs          exhaustive: every X line against lbs up to ply 18
//                       (one X per field), then closed by an admissible bound
//                       on how soon X can complete a board line (no X win
//                       before ply 29). Falls back to sampling on budget.
//   verify_first_move   sampled: random/greedy X after each non-double
//                       opening against blocker-avoid; no X win before ply 46.
//   verify_second_move  sampled: prefixes (i,i),(i,j),(j,k), k != i, against
//                       blocker-avoid2; no X win before ply 44 (46 if k == j).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "u3t/engine.hpp"
#include "u3t/properties.hpp"
#include "u3t/record.hpp"

namespace u3t {

inline constexpr int kXavierMaxPlies = 43;
inline constexpr int kLbsOnePerFieldPly = 18;
inline constexpr int kLbsNoWinBeforePly = 29;
inline constexpr int kAvoidNoWinBeforePly = 46;
inline constexpr int kAvoid2NoWinBeforePly = 44;
inline constexpr int kAvoidTailPlies = 14;
inline constexpr std::size_t kMaxStoredViolations = 64;

struct SearchBudget {
  std::uint64_t max_nodes = 20'000'000'000ULL;
  double max_seconds = 6 * 3600.0;
  std::uint64_t sample_count = 1000;  // per opening / prefix, or total for the lbs fallback
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument unless all positive
};

enum class VerifyMode : std::uint8_t { Exhaustive, Sampled };

std::string_view to_string(VerifyMode m);

struct PropertyViolation {
  GameRecord record;
  int ply = 0;
  PropertyVector properties;
};

// A line that breaks a claimed bound or a structural check.
struct LineViolation {
  std::string kind;
  GameRecord record;
  int ply = 0;
  std::string detail;
};

struct VerificationReport {
  std::string target;
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t nodes_explored = 0;  // apply_move calls, memo hits included
  std::uint64_t unique_states_memoized = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t lines = 0;  // closed lines of the tree, or sampled games
  int max_plies = 0;
  int min_plies = 0;
  std::vector<GameRecord> extremal_records;  // longest first, then shortest
  std::vector<PropertyViolation> property_violations;  // first kMaxStoredViolations
  std::vector<LineViolation> line_violations;          // first kMaxStoredViolations
  std::uint64_t property_violation_count = 0;
  std::uint64_t line_violation_count = 0;
  std::optional<bool> bound_satisfied;  // nullopt when the budget ran out
  bool budget_exhausted = false;
  std::vector<std::uint64_t> memo_states_by_ply;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  bool passed() const;
};

nlohmann::ordered_json to_json(const VerificationReport& report);

struct XavierSearchOptions {
  bool memoize = true;
  int ply_limit = kCells;  // lines reaching this ply are cut (counted, not judged)
  int leaf_replay_percent = 1;
};

VerificationReport verify_xavier(const SearchBudget& budget, const XavierSearchOptions& options = {});

struct LbsSearchOptions {
  bool force_sampled = false;
  int memo_max_ply = 10;
  std::optional<CellAddr> first_move;  // restrict the root, for reduced runs
};

VerificationReport verify_lbs(const SearchBudget& budget, const LbsSearchOptions& options = {});

struct FirstMoveOptions {
  std::vector<CellAddr> openings;  // empty: all 72 non-doubles
};

VerificationReport verify_first_move(const SearchBudget& budget, const FirstMoveOptions& options = {});

struct SecondMoveOptions {
  std::vector<std::array<CellAddr, 3>> prefixes;  // empty: all 576
};

VerificationReport verify_second_move(const SearchBudget& budget, const SecondMoveOptions& options = {});

// Smallest ply at which X could possibly win from `state`, counting only the
// X marks still missing on some board line. Returns a
// value above 81 when no board line is open for X.
int earliest_x_win_ply(const BoardState& state);

std::vector<CellAddr> non_double_openings();
std::vector<std::array<CellAddr, 3>> avoid2_prefixes();

}  // namespace u3t
