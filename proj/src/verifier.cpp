#include "u3t/verifier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "u3t/strategies.hpp"

namespace u3t {

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetExceeded {};

class BudgetGuard {
 public:
  explicit BudgetGuard(const SearchBudget& budget) : budget_(budget), start_(Clock::now()) {}

  void charge(VerificationReport& report) {
    ++report.nodes_explored;
    if (report.nodes_explored > budget_.max_nodes) throw BudgetExceeded{};
    if ((report.nodes_explored & 0xFFFF) == 0 && elapsed() > budget_.max_seconds) throw BudgetExceeded{};
  }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  const SearchBudget& budget_;
  Clock::time_point start_;
};

void add_line_violation(VerificationReport& report, std::string kind, std::span<const CellAddr> path, int ply,
                        std::string detail) {
  ++report.line_violation_count;
  if (report.line_violations.size() < kMaxStoredViolations) {
    GameRecord rec;
    try {
      rec = make_record(path);
    } catch (const ReplayError&) {
      rec.moves.clear();
    }
    report.line_violations.push_back({std::move(kind), std::move(rec), ply, std::move(detail)});
  }
}

void add_property_violation(VerificationReport& report, std::span<const CellAddr> path, int ply,
                            PropertyVector pv) {
  ++report.property_violation_count;
  if (report.property_violations.size() < kMaxStoredViolations) {
    report.property_violations.push_back({make_record(path), ply, std::move(pv)});
  }
}

nlohmann::ordered_json properties_json(const PropertyVector& pv) {
  nlohmann::ordered_json j;
  for (int k = 1; k <= 6; ++k) j["p" + std::to_string(k)] = pv.p(k);
  j["anchor"] = {{"f", pv.anchor.f}, {"g", pv.anchor.g}};
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (const PropertyWitness& pw : pv.witnesses) w.push_back({{"property", pw.property}, {"field", pw.field}});
  j["witnesses"] = std::move(w);
  return j;
}

// needX[x][o]: fewest X marks still missing on an O-free line of one field.
struct FieldNeedTable {
  std::vector<std::uint8_t> need;
  FieldNeedTable() : need(512 * 512, 0xFF) {
    for (unsigned x = 0; x < 512; ++x) {
      for (unsigned o = 0; o < 512; ++o) {
        if (x & o) continue;
        int best = 0xFF;
        for (std::uint16_t line : kLines) {
          if (line & o) continue;
          best = std::min(best, std::popcount(static_cast<unsigned>(line & ~x)));
        }
        need[x * 512 + o] = static_cast<std::uint8_t>(best);
      }
    }
  }
};

const FieldNeedTable& field_need_table() {
  static const FieldNeedTable table;
  return table;
}

enum class Adversary { Random, Greedy };

CellAddr adversary_move(Adversary a, const BoardState& s, std::uint64_t seed) {
  return a == Adversary::Random ? random_choose(s, seed) : greedy_choose(s, seed);
}

Adversary adversary_for(std::uint64_t sample) { return sample % 2 == 0 ? Adversary::Random : Adversary::Greedy; }

nlohmann::ordered_json ply_or_null(int ply) {
  return ply >= 1000 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(ply);
}

std::uint64_t sample_seed(std::uint64_t base, std::uint64_t position, std::uint64_t sample) {
  return mix64(base ^ mix64(position * 0x100000001B3ULL + sample));
}

}  // namespace

void SearchBudget::validate() const {
  if (max_nodes == 0 || !(max_seconds > 0) || sample_count == 0 || seed == 0) {
    throw std::invalid_argument("budget values must all be positive");
  }
}

std::string_view to_string(VerifyMode m) { return m == VerifyMode::Exhaustive ? "exhaustive" : "sampled"; }

bool VerificationReport::passed() const {
  return bound_satisfied.value_or(false) && property_violation_count == 0 && line_violation_count == 0;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["target"] = r.target;
  j["mode"] = std::string(to_string(r.mode));
  j["nodesExplored"] = r.nodes_explored;
  j["uniqueStatesMemoized"] = r.unique_states_memoized;
  j["memoHits"] = r.memo_hits;
  j["lines"] = r.lines;
  j["maxPlies"] = r.max_plies;
  j["minPlies"] = r.min_plies;
  nlohmann::ordered_json ext = nlohmann::ordered_json::array();
  for (const GameRecord& rec : r.extremal_records) ext.push_back(to_json_value(rec));
  j["extremalRecords"] = std::move(ext);
  nlohmann::ordered_json pvs = nlohmann::ordered_json::array();
  for (const PropertyViolation& v : r.property_violations) {
    pvs.push_back({{"record", to_json_value(v.record)}, {"ply", v.ply}, {"properties", properties_json(v.properties)}});
  }
  j["propertyViolations"] = std::move(pvs);
  j["propertyViolationCount"] = r.property_violation_count;
  nlohmann::ordered_json lvs = nlohmann::ordered_json::array();
  for (const LineViolation& v : r.line_violations) {
    lvs.push_back({{"kind", v.kind}, {"record", to_json_value(v.record)}, {"ply", v.ply}, {"detail", v.detail}});
  }
  j["lineViolations"] = std::move(lvs);
  j["lineViolationCount"] = r.line_violation_count;
  if (r.bound_satisfied) {
    j["boundSatisfied"] = *r.bound_satisfied;
  } else {
    j["boundSatisfied"] = nullptr;
  }
  j["budgetExhausted"] = r.budget_exhausted;
  j["memoStatesByPly"] = r.memo_states_by_ply;
  j["details"] = r.details;
  j["notes"] = r.notes;
  return j;
}

int earliest_x_win_ply(const BoardState& state) {
  constexpr int kNever = 1000;
  const auto& table = field_need_table().need;
  std::array<int, kFields> need{};
  for (int f = 0; f < kFields; ++f) {
    switch (state.field_status(f)) {
      case FieldStatus::WonX: need[f] = 0; break;
      case FieldStatus::WonO:
      case FieldStatus::DrawnFull: need[f] = kNever; break;
      case FieldStatus::Open: {
        const std::uint8_t n = table[state.marks(Mark::X, f) * 512u + state.marks(Mark::O, f)];
        need[f] = n == 0xFF ? kNever : n;
        break;
      }
    }
  }
  int best = kNever;
  for (std::uint16_t line : kLines) {
    int sum = 0;
    for (int f = 0; f < kFields; ++f) {
      if (line & (1u << f)) sum += need[f];
    }
    best = std::min(best, sum);
  }
  if (best >= kNever) return kNever;
  if (best == 0) return state.ply();
  const int first_x_ply = state.to_move() == Mark::X ? state.ply() + 1 : state.ply() + 2;
  return first_x_ply + 2 * (best - 1);
}

std::vector<CellAddr> non_double_openings() {
  std::vector<CellAddr> out;
  for (int i = 0; i < kFields; ++i) {
    for (int j = 0; j < kSpots; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::array<CellAddr, 3>> avoid2_prefixes() {
  std::vector<std::array<CellAddr, 3>> out;
  for (int i = 0; i < kFields; ++i) {
    for (int j = 0; j < kSpots; ++j) {
      if (j == i) continue;
      for (int k = 0; k < kSpots; ++k) {
        if (k == i) continue;
        out.push_back({CellAddr(i, i), CellAddr(i, j), CellAddr(j, k)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// xavier-winning against every O reply

namespace {

class XavierSearch {
 public:
  XavierSearch(const SearchBudget& budget, const XavierSearchOptions& options, VerificationReport& report)
      : guard_(budget), options_(options), report_(report) {}

  void run() {
    report_.memo_states_by_ply.assign(kCells + 1, 0);
    const Tally t = explore(BoardState{});
    report_.lines = t.lines;
    cutoff_lines_ = t.cut;
  }

  std::uint64_t cutoff_lines() const { return cutoff_lines_; }
  std::uint64_t replayed_leaves() const { return replayed_leaves_; }
  std::uint64_t audited_positions() const { return audited_; }
  bool all_leaves_won() const { return all_leaves_won_; }
  bool any_leaf() const { return any_leaf_; }

 private:
  // Lines below a node, and how many of them were cut at the ply limit.
  struct Tally {
    std::uint64_t lines = 0;
    std::uint64_t cut = 0;
    Tally& operator+=(const Tally& o) {
      lines += o.lines;
      cut += o.cut;
      return *this;
    }
  };

  Tally explore(const BoardState& s) {
    const StateKey key = s.key();
    if (options_.memoize) {
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++report_.memo_hits;
        return it->second;
      }
    }

    Tally lines;
    if (s.terminal()) {
      on_leaf(s, key);
      lines.lines = 1;
    } else if (s.ply() >= options_.ply_limit) {
      lines = Tally{1, 1};
    } else if (s.to_move() == Mark::X) {
      CellAddr m;
      try {
        m = xavier_choose(s, path_);
      } catch (const StrategyError& e) {
        add_line_violation(report_, "strategy-error", path_, s.ply(), e.what());
        all_leaves_won_ = false;
        return Tally{1, 0};
      }
      if (!s.is_legal(m)) {
        add_line_violation(report_, "illegal-strategy-move", path_, s.ply(), to_string(m));
        all_leaves_won_ = false;
        return Tally{1, 0};
      }
      lines = step(s, m);
    } else {
      if (xavier_phase(s) == XavierPhase::Endgame) {
        ++audited_;
        PropertyVector pv = check_properties(s, *find_anchor(s));
        if (!pv.all()) add_property_violation(report_, path_, s.ply(), std::move(pv));
      }
      for (CellAddr m : s.legal_moves()) lines += step(s, m);
    }

    if (options_.memoize) {
      memo_.emplace(key, lines);
      ++report_.unique_states_memoized;
      ++report_.memo_states_by_ply[s.ply()];
    }
    return lines;
  }

  Tally step(const BoardState& s, CellAddr m) {
    guard_.charge(report_);
    path_.push_back(m);
    const Tally lines = explore(s.apply_unchecked(m));
    path_.pop_back();
    return lines;
  }

  void on_leaf(const BoardState& s, const StateKey& key) {
    const int plies = s.ply();
    if (!any_leaf_ || plies > report_.max_plies) {
      report_.max_plies = plies;
      longest_ = path_;
    }
    if (!any_leaf_ || plies < report_.min_plies) {
      report_.min_plies = plies;
      shortest_ = path_;
    }
    any_leaf_ = true;
    if (s.status() != GameStatus::WonX) {
      all_leaves_won_ = false;
      add_line_violation(report_, "leaf-not-won", path_, plies, std::string(to_string(s.status())));
    }
    if (options_.leaf_replay_percent > 0 &&
        StateKeyHash{}(key) % 100 < static_cast<std::size_t>(options_.leaf_replay_percent)) {
      ++replayed_leaves_;
      bool ok = false;
      try {
        ok = replay(std::span<const CellAddr>(path_)) == s;
      } catch (const ReplayError&) {
        ok = false;
      }
      if (!ok) add_line_violation(report_, "replay-mismatch", path_, plies, "leaf does not replay");
    }
  }

 public:
  std::vector<CellAddr> longest_, shortest_;

 private:
  BudgetGuard guard_;
  const XavierSearchOptions& options_;
  VerificationReport& report_;
  std::unordered_map<StateKey, Tally, StateKeyHash> memo_;
  std::vector<CellAddr> path_;
  std::uint64_t cutoff_lines_ = 0;
  std::uint64_t replayed_leaves_ = 0;
  std::uint64_t audited_ = 0;
  bool all_leaves_won_ = true;
  bool any_leaf_ = false;
};

}  // namespace

VerificationReport verify_xavier(const SearchBudget& budget, const XavierSearchOptions& options) {
  budget.validate();
  VerificationReport report;
  report.target = "xavier";
  report.mode = VerifyMode::Exhaustive;
  XavierSearch search(budget, options, report);
  try {
    search.run();
  } catch (const BudgetExceeded&) {
    report.budget_exhausted = true;
  }
  report.details["cutoffLines"] = search.cutoff_lines();
  report.details["replayedLeaves"] = search.replayed_leaves();
  report.details["auditedPositions"] = search.audited_positions();
  report.details["plyLimit"] = options.ply_limit;
  report.details["memoize"] = options.memoize;
  report.notes.push_back("P1..P6 audited on every O-to-move position after an X endgame move");

  if (search.any_leaf()) {
    report.extremal_records.push_back(make_record(search.longest_));
    report.extremal_records.push_back(make_record(search.shortest_));
  }
  if (report.budget_exhausted) {
    report.lines = 0;
    report.notes.push_back("budget exhausted: the opponent tree was not closed");
  } else if (options.ply_limit < kCells) {
    report.notes.push_back("truncated at ply " + std::to_string(options.ply_limit) + ": bound not judged");
  } else {
    report.bound_satisfied = search.all_leaves_won() && report.max_plies <= kXavierMaxPlies &&
                             report.line_violation_count == 0;
  }
  return report;
}

// ---------------------------------------------------------------------------
// every X line against lbs

namespace {

struct LbsLineChecks {
  // Shared by the exhaustive and the sampled route. `path` ends at `s`.
  static void at_position(VerificationReport& report, const BoardState& s, std::span<const CellAddr> path,
                          std::uint64_t& full_field_anomalies) {
    if (s.ply() < kLbsOnePerFieldPly) {
      for (int f = 0; f < kFields; ++f) {
        if (s.field_full(f)) {
          ++full_field_anomalies;
          break;
        }
      }
    }
    if (s.ply() == kLbsOnePerFieldPly) {
      const auto counts = count_x_per_field(s);
      if (std::any_of(counts.begin(), counts.end(), [](int c) { return c != 1; })) {
        std::string detail;
        for (int c : counts) detail += std::to_string(c);
        add_line_violation(report, "lbs18-count", path, s.ply(), "X per field " + detail);
      }
    }
    if (s.status() == GameStatus::WonX && s.ply() < kLbsNoWinBeforePly) {
      add_line_violation(report, "lbs29-early-win", path, s.ply(), "X won at ply " + std::to_string(s.ply()));
    }
  }
};

class LbsSearch {
 public:
  LbsSearch(const SearchBudget& budget, const LbsSearchOptions& options, VerificationReport& report)
      : guard_(budget), options_(options), report_(report) {}

  void run() {
    report_.memo_states_by_ply.assign(kLbsNoWinBeforePly + 1, 0);
    path_.reserve(kCells);
    explore(BoardState{});
  }

  std::uint64_t closed_by_bound = 0;
  std::uint64_t ended_early = 0;  // lines where the game ended before ply 29
  std::uint64_t full_field_anomalies = 0;
  std::uint64_t ply18_positions = 0;
  int min_certified_win_ply = 1000;
  int deepest = 0;

 private:
  // X to move.
  void explore(const BoardState& s) {
    deepest = std::max(deepest, s.ply());
    if (s.ply() == kLbsOnePerFieldPly) ++ply18_positions;
    LbsLineChecks::at_position(report_, s, path_, full_field_anomalies);
    if (s.ply() >= kLbsOnePerFieldPly) {
      const int bound = earliest_x_win_ply(s);
      if (bound >= kLbsNoWinBeforePly) {
        min_certified_win_ply = std::min(min_certified_win_ply, bound);
        ++closed_by_bound;
        ++report_.lines;
        return;
      }
    }
    if (s.ply() <= options_.memo_max_ply) {
      if (!memo_.insert(s.key()).second) {
        ++report_.memo_hits;
        return;
      }
      ++report_.unique_states_memoized;
      ++report_.memo_states_by_ply[s.ply()];
    }

    const MoveList moves = s.legal_moves();
    for (CellAddr m : moves) {
      if (s.ply() == 0 && options_.first_move && m != *options_.first_move) continue;
      guard_.charge(report_);
      const BoardState after_x = s.apply_unchecked(m);
      path_.push_back(m);
      if (after_x.terminal()) {
        LbsLineChecks::at_position(report_, after_x, path_, full_field_anomalies);
        ++ended_early;
        ++report_.lines;
      } else {
        const CellAddr reply = lbs_choose(after_x);
        guard_.charge(report_);
        const BoardState after_o = after_x.apply_unchecked(reply);
        path_.push_back(reply);
        if (after_o.terminal()) {
          LbsLineChecks::at_position(report_, after_o, path_, full_field_anomalies);
          ++ended_early;
          ++report_.lines;
        } else {
          explore(after_o);
        }
        path_.pop_back();
      }
      path_.pop_back();
    }
  }

  BudgetGuard guard_;
  const LbsSearchOptions& options_;
  VerificationReport& report_;
  std::unordered_set<StateKey, StateKeyHash> memo_;
  std::vector<CellAddr> path_;
};

void run_lbs_samples(const SearchBudget& budget, VerificationReport& report) {
  report.mode = VerifyMode::Sampled;
  std::uint64_t anomalies = 0;
  int earliest_win = 1000;
  int longest = 0, shortest = 1000;
  std::vector<CellAddr> path;
  path.reserve(kCells);
  for (std::uint64_t sample = 0; sample < budget.sample_count; ++sample) {
    const Adversary adversary = adversary_for(sample);
    const std::uint64_t seed = sample_seed(budget.seed, 0, sample);
    BoardState s;
    path.clear();
    while (!s.terminal()) {
      const CellAddr m = s.to_move() == Mark::X ? adversary_move(adversary, s, seed) : lbs_choose(s);
      ++report.nodes_explored;
      s = s.apply_unchecked(m);
      path.push_back(m);
      LbsLineChecks::at_position(report, s, path, anomalies);
    }
    if (s.status() == GameStatus::WonX) earliest_win = std::min(earliest_win, s.ply());
    longest = std::max(longest, s.ply());
    shortest = std::min(shortest, s.ply());
    ++report.lines;
  }
  report.max_plies = longest;
  report.min_plies = shortest;
  report.details["sampledGames"] = budget.sample_count;
  report.details["earliestXWinPly"] = ply_or_null(earliest_win);
  report.details["fullFieldBefore18"] = anomalies;
  report.bound_satisfied = report.line_violation_count == 0;
}

}  // namespace

VerificationReport verify_lbs(const SearchBudget& budget, const LbsSearchOptions& options) {
  budget.validate();
  VerificationReport report;
  report.target = "lbs";
  if (!options.force_sampled) {
    LbsSearch search(budget, options, report);
    try {
      search.run();
      report.mode = VerifyMode::Exhaustive;
      report.max_plies = search.deepest;
      report.min_plies = kLbsOnePerFieldPly;
      report.details["ply18Positions"] = search.ply18_positions;
      report.details["closedByBound"] = search.closed_by_bound;
      report.details["endedBeforeBound"] = search.ended_early;
      report.details["certifiedEarliestXWinPly"] = search.min_certified_win_ply;
      report.details["fullFieldBefore18"] = search.full_field_anomalies;
      report.details["restrictedFirstMove"] =
          options.first_move ? nlohmann::ordered_json(to_string(*options.first_move)) : nullptr;
      report.bound_satisfied = report.line_violation_count == 0;
      report.notes.push_back("all X lines enumerated to ply 18; from ply 18 on a line is closed once the X marks "
                             "missing on every open board line rule out a win before ply 29");
      if (search.full_field_anomalies > 0) report.notes.push_back("a field filled up before ply 18 on some line");
      return report;
    } catch (const BudgetExceeded&) {
      report.budget_exhausted = true;
      report.notes.push_back("exhaustive search hit the budget after " + std::to_string(report.nodes_explored) +
                             " nodes; falling back to sampled adversaries");
    }
  }
  VerificationReport sampled;
  sampled.target = "lbs";
  sampled.budget_exhausted = report.budget_exhausted;
  sampled.notes = report.notes;
  run_lbs_samples(budget, sampled);
  sampled.notes.push_back("sampled: random/greedy X adversaries, not a proof");
  return sampled;
}

// ---------------------------------------------------------------------------
// blocker strategies against sampled X adversaries

namespace {

struct BlockedRun {
  std::vector<CellAddr> prefix;
  StrategyId o_strategy = StrategyId::BlockerAvoid;
  BlockerPlan plan;
  int bound = 0;
  bool tail_check = false;
};

struct PositionStats {
  std::uint64_t samples = 0;
  std::uint64_t fall_throughs = 0;
  std::uint64_t blocking_never_ended = 0;
  int earliest_x_win = 1000;
  int block_end_min = 1000;
  int block_end_max = 0;
  int shortest = 1000, longest = 0;
};

void play_blocked_game(const BlockedRun& run, Adversary adversary, std::uint64_t seed, BudgetGuard& guard,
                       VerificationReport& report, PositionStats& stats) {
  std::vector<CellAddr> path = run.prefix;
  BoardState s = replay(std::span<const CellAddr>(path));
  const int field_a = run.plan.preferred, field_b = run.plan.fallback;
  int block_end = blocking_active(s, run.plan) ? -1 : s.ply();
  bool fell_through = false;

  auto finished = [&] {
    if (s.terminal()) return true;
    if (s.ply() < run.bound || block_end < 0) return false;
    return !run.tail_check || s.ply() >= block_end + kAvoidTailPlies;
  };

  while (!finished()) {
    CellAddr m;
    if (s.to_move() == Mark::X) {
      m = adversary_move(adversary, s, seed);
    } else {
      try {
        m = choose(run.o_strategy, s, path);
      } catch (const StrategyError& e) {
        add_line_violation(report, "strategy-error", path, s.ply(), e.what());
        return;
      }
      if (blocking_active(s, run.plan)) {
        CellAddr rule;
        const bool by_rule = blocking_move(s, run.plan, &rule);
        if (by_rule && (m != rule || (m.spot != field_a && m.spot != field_b))) {
          add_line_violation(report, "blocking-spot", path, s.ply() + 1, "O played " + to_string(m));
        }
        if (!by_rule) fell_through = true;
      }
    }
    guard.charge(report);
    s = s.apply_unchecked(m);
    path.push_back(m);

    if (block_end < 0 && !blocking_active(s, run.plan)) block_end = s.ply();

    if (run.tail_check && block_end >= 0 && s.ply() <= block_end + kAvoidTailPlies) {
      const auto counts = count_x_per_field(s);
      for (int f = 0; f < kFields; ++f) {
        if (f != field_a && f != field_b && counts[f] > 1) {
          add_line_violation(report, "tail-double", path, s.ply(),
                             "field " + std::to_string(f) + " holds " + std::to_string(counts[f]) + " X");
          break;
        }
      }
    }
    if (s.status() == GameStatus::WonX && s.ply() < run.bound) {
      add_line_violation(report, "x-win-before-bound", path, s.ply(),
                         "X won at ply " + std::to_string(s.ply()) + ", bound " + std::to_string(run.bound));
    }
  }

  ++stats.samples;
  ++report.lines;
  if (fell_through) ++stats.fall_throughs;
  if (block_end < 0) {
    ++stats.blocking_never_ended;
  } else {
    stats.block_end_min = std::min(stats.block_end_min, block_end);
    stats.block_end_max = std::max(stats.block_end_max, block_end);
  }
  if (s.status() == GameStatus::WonX) stats.earliest_x_win = std::min(stats.earliest_x_win, s.ply());
  stats.shortest = std::min(stats.shortest, s.ply());
  stats.longest = std::max(stats.longest, s.ply());
}

nlohmann::ordered_json stats_json(const PositionStats& st) {
  nlohmann::ordered_json j;
  j["samples"] = st.samples;
  j["earliestXWinPly"] = ply_or_null(st.earliest_x_win);
  j["fallThroughGames"] = st.fall_throughs;
  j["blockingNeverEnded"] = st.blocking_never_ended;
  j["blockEndMin"] = ply_or_null(st.block_end_min);
  j["blockEndMax"] = st.block_end_max;
  return j;
}

void merge(PositionStats& into, const PositionStats& st) {
  into.samples += st.samples;
  into.fall_throughs += st.fall_throughs;
  into.blocking_never_ended += st.blocking_never_ended;
  into.earliest_x_win = std::min(into.earliest_x_win, st.earliest_x_win);
  into.block_end_min = std::min(into.block_end_min, st.block_end_min);
  into.block_end_max = std::max(into.block_end_max, st.block_end_max);
  into.shortest = std::min(into.shortest, st.shortest);
  into.longest = std::max(into.longest, st.longest);
}

VerificationReport run_blocked(const std::string& target, const SearchBudget& budget,
                               const std::vector<BlockedRun>& runs) {
  budget.validate();
  VerificationReport report;
  report.target = target;
  report.mode = VerifyMode::Sampled;
  BudgetGuard guard(budget);
  PositionStats total;
  nlohmann::ordered_json positions = nlohmann::ordered_json::array();
  try {
    for (std::size_t p = 0; p < runs.size(); ++p) {
      PositionStats st;
      for (std::uint64_t sample = 0; sample < budget.sample_count; ++sample) {
        play_blocked_game(runs[p], adversary_for(sample), sample_seed(budget.seed, p + 1, sample), guard, report, st);
      }
      GameRecord prefix;
      prefix.moves = make_record(runs[p].prefix).moves;
      nlohmann::ordered_json j;
      j["prefix"] = to_text(prefix);
      j["bound"] = runs[p].bound;
      j.update(stats_json(st));
      positions.push_back(std::move(j));
      merge(total, st);
    }
  } catch (const BudgetExceeded&) {
    report.budget_exhausted = true;
    report.notes.push_back("budget exhausted before every position was sampled");
  }
  report.max_plies = total.longest;
  report.min_plies = total.shortest == 1000 ? 0 : total.shortest;
  report.details["positions"] = runs.size();
  report.details["samplesPerPosition"] = budget.sample_count;
  report.details["totals"] = stats_json(total);
  report.details["perPosition"] = std::move(positions);
  if (!report.budget_exhausted) report.bound_satisfied = report.line_violation_count == 0;
  report.notes.push_back("sampled: random/greedy X adversaries, not a proof");
  return report;
}

}  // namespace

VerificationReport verify_first_move(const SearchBudget& budget, const FirstMoveOptions& options) {
  std::vector<CellAddr> openings = options.openings.empty() ? non_double_openings() : options.openings;
  std::vector<BlockedRun> runs;
  std::uint64_t skipped = 0;
  for (CellAddr opening : openings) {
    if (opening.field == opening.spot) {
      ++skipped;
      continue;
    }
    runs.push_back({{opening}, StrategyId::BlockerAvoid, avoid_plan(opening), kAvoidNoWinBeforePly, true});
  }
  VerificationReport report = run_blocked("first-move", budget, runs);
  report.details["skippedDoubles"] = skipped;
  return report;
}

VerificationReport verify_second_move(const SearchBudget& budget, const SecondMoveOptions& options) {
  auto prefixes = options.prefixes.empty() ? avoid2_prefixes() : options.prefixes;
  std::vector<BlockedRun> runs;
  std::uint64_t skipped = 0;
  for (const auto& prefix : prefixes) {
    BlockerPlan plan;
    try {
      plan = avoid2_plan(prefix);
      replay(std::span<const CellAddr>(prefix));
    } catch (const std::exception&) {
      ++skipped;
      continue;
    }
    const bool k_is_j = prefix[2].spot == prefix[1].spot;
    runs.push_back({{prefix.begin(), prefix.end()},
                    StrategyId::BlockerAvoid2,
                    plan,
                    k_is_j ? kAvoidNoWinBeforePly : kAvoid2NoWinBeforePly,
                    false});
  }
  VerificationReport report = run_blocked("second-move", budget, runs);
  report.details["skippedPrefixes"] = skipped;
  return report;
}

}  // namespace u3t
