#pragma once

// Shared helpers for the test binaries, including a deliberately naive rules
// model used as an oracle for the engine.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "u3t/engine.hpp"
#include "u3t/record.hpp"
#include "u3t/strategies.hpp"
#include "u3t/verifier.hpp"

namespace u3t::testing {

inline std::vector<CellAddr> line(const std::string& text) { return addresses(record_from_text(text)); }

inline BoardState play(const std::string& text) { return replay(line(text)); }

// Places marks without the field constraint, alternating X and O from X, then
// plays `last`. Only for hand-built positions that strategies inspect.
inline BoardState arrange(std::initializer_list<CellAddr> xs, std::initializer_list<CellAddr> os, CellAddr last) {
  std::vector<CellAddr> x(xs), o(os);
  BoardState s;
  if (x.size() != o.size() && x.size() != o.size() + 1) throw std::invalid_argument("arrange: unbalanced marks");
  std::size_t xi = 0, oi = 0;
  while (xi < x.size() || oi < o.size()) {
    if (s.to_move() == Mark::X) {
      s = s.apply_unchecked(x.at(xi++));
    } else {
      s = s.apply_unchecked(o.at(oi++));
    }
  }
  return s.apply_unchecked(last);
}

// Cells as 0 empty, 1 X, 2 O; every rule recomputed from scratch.
struct NaiveModel {
  static constexpr int kTriples[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                         {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

  std::array<int, 81> cell{};
  std::array<int, 9> owner{};  // 0 none, 1 X, 2 O; set once
  int winner = 0;
  int plies = 0;
  int last_spot = -1;

  static bool three(const std::array<int, 9>& v, int who) {
    for (const auto& t : kTriples) {
      if (v[t[0]] == who && v[t[1]] == who && v[t[2]] == who) return true;
    }
    return false;
  }

  std::array<int, 9> field(int f) const {
    std::array<int, 9> v{};
    for (int s = 0; s < 9; ++s) v[s] = cell[f * 9 + s];
    return v;
  }

  bool full(int f) const {
    for (int s = 0; s < 9; ++s) {
      if (cell[f * 9 + s] == 0) return false;
    }
    return true;
  }

  bool over() const { return winner != 0 || plies == 81; }

  std::optional<int> forced() const {
    if (last_spot < 0 || full(last_spot)) return std::nullopt;
    return last_spot;
  }

  std::vector<int> legal() const {
    std::vector<int> out;
    if (over()) return out;
    const auto fz = forced();
    for (int i = 0; i < 81; ++i) {
      if (cell[i] == 0 && (!fz || i / 9 == *fz)) out.push_back(i);
    }
    return out;
  }

  void apply(int idx) {
    const int who = plies % 2 == 0 ? 1 : 2;
    cell[idx] = who;
    ++plies;
    last_spot = idx % 9;
    for (int f = 0; f < 9; ++f) {
      if (owner[f] == 0 && three(field(f), who)) owner[f] = who;
    }
    if (winner == 0 && three(owner, who)) winner = who;
  }

  FieldStatus field_status(int f) const {
    if (owner[f] == 1) return FieldStatus::WonX;
    if (owner[f] == 2) return FieldStatus::WonO;
    return full(f) ? FieldStatus::DrawnFull : FieldStatus::Open;
  }

  GameStatus status() const {
    if (winner == 1) return GameStatus::WonX;
    if (winner == 2) return GameStatus::WonO;
    return plies == 81 ? GameStatus::Draw : GameStatus::InProgress;
  }
};

// Empty string when the engine and the naive model agree on everything
// observable, otherwise a description of the first difference.
inline std::string compare_with_naive(const BoardState& s, const NaiveModel& n) {
  for (int i = 0; i < 81; ++i) {
    const Cell c = s.cell(CellAddr::from_index(i));
    const int v = c == Cell::Empty ? 0 : (c == Cell::X ? 1 : 2);
    if (v != n.cell[i]) return "cell " + std::to_string(i);
  }
  for (int f = 0; f < 9; ++f) {
    if (s.field_status(f) != n.field_status(f)) return "field status " + std::to_string(f);
  }
  if (s.status() != n.status()) return "game status";
  if (s.forced_field() != n.forced()) return "forced field";
  const MoveList moves = s.legal_moves();
  const std::vector<int> expect = n.legal();
  if (moves.size() != expect.size()) return "legal move count";
  for (std::size_t k = 0; k < expect.size(); ++k) {
    if (moves[k].index() != expect[k]) return "legal move " + std::to_string(k);
  }
  for (int i = 0; i < 81; ++i) {
    const bool legal = std::find(expect.begin(), expect.end(), i) != expect.end();
    if (s.is_legal(CellAddr::from_index(i)) != legal) return "is_legal " + std::to_string(i);
  }
  return {};
}

// field_line_winner against the naive triples on every one of the 3^9 field
// contents. Returns the number of mismatches.
inline int field_oracle_mismatches() {
  int bad = 0;
  for (int code = 0; code < 19683; ++code) {
    std::array<Cell, 9> cells{};
    std::array<int, 9> v{};
    int c = code;
    for (int s = 0; s < 9; ++s) {
      v[s] = c % 3;
      cells[s] = static_cast<Cell>(v[s]);
      c /= 3;
    }
    const FieldLines got = field_line_winner(cells);
    if (got.x != NaiveModel::three(v, 1) || got.o != NaiveModel::three(v, 2)) ++bad;
  }
  return bad;
}

struct RandomStateCheck {
  std::uint64_t states = 0;
  std::uint64_t games = 0;
  std::string first_mismatch;  // empty when everything agreed
};

// Random playouts, comparing engine and naive model after every ply until at
// least `min_states` reachable states have been checked.
inline RandomStateCheck check_random_states(std::uint64_t min_states, std::uint64_t seed) {
  RandomStateCheck out;
  std::mt19937_64 rng(seed);
  while (out.states < min_states && out.first_mismatch.empty()) {
    BoardState s;
    NaiveModel n;
    ++out.games;
    while (true) {
      ++out.states;
      if (std::string why = compare_with_naive(s, n); !why.empty()) {
        out.first_mismatch = why + " at ply " + std::to_string(s.ply());
        break;
      }
      if (s.terminal()) break;
      const MoveList moves = s.legal_moves();
      const CellAddr a = moves[rng() % moves.size()];
      s = s.apply_move(a);
      n.apply(a.index());
    }
  }
  return out;
}

struct FuzzResult {
  std::uint64_t games = 0;
  std::uint64_t strategy_moves = 0;
  std::uint64_t digest = 1469598103934665603ULL;  // FNV-1a over every move played
  std::string first_failure;
};

// Plays `games` games of a paper strategy against alternating random and
// greedy opponents and checks every move it returns. For the blocker
// strategies the opponent's moves that belong to the lemma prefix are drawn
// to fit it: a non-double opening, or (i,i), (i,j), (j,k) with k != i.
inline FuzzResult fuzz_paper_strategy(StrategyId id, std::uint64_t games, std::uint64_t seed) {
  FuzzResult out;
  const Mark seat = seat_of(id).value();
  const std::vector<CellAddr> openings = non_double_openings();
  std::vector<CellAddr> history;
  for (std::uint64_t g = 0; g < games && out.first_failure.empty(); ++g) {
    const std::uint64_t gseed = mix64(seed * 0x100000001b3ULL + g);
    const StrategyId adversary = g % 2 == 0 ? StrategyId::Random : StrategyId::Greedy;
    BoardState s;
    history.clear();
    while (!s.terminal()) {
      CellAddr m;
      const int ply = s.ply() + 1;
      if (s.to_move() == seat && !(id == StrategyId::BlockerAvoid2 && ply == 2)) {
        try {
          m = choose(id, s, history, 0);
        } catch (const std::exception& e) {
          out.first_failure = std::string(to_string(id)) + " threw at ply " + std::to_string(ply) + ": " + e.what();
          break;
        }
        ++out.strategy_moves;
        if (!s.is_legal(m)) {
          out.first_failure = std::string(to_string(id)) + " illegal " + to_string(m) + " at ply " + std::to_string(ply);
          break;
        }
      } else if (id == StrategyId::BlockerAvoid && ply == 1) {
        m = openings[gseed % openings.size()];
      } else if (id == StrategyId::BlockerAvoid2 && ply == 1) {
        const int i = static_cast<int>(gseed % 9);
        m = CellAddr(i, i);
      } else if (id == StrategyId::BlockerAvoid2 && ply == 2) {
        const int i = history[0].field;
        const int j = static_cast<int>((i + 1 + (gseed >> 8) % 8) % 9);
        m = CellAddr(i, j);
      } else if (id == StrategyId::BlockerAvoid2 && ply == 3) {
        std::vector<CellAddr> allowed;
        for (CellAddr a : s.legal_moves()) {
          if (a.spot != history[0].field) allowed.push_back(a);
        }
        m = allowed[(gseed >> 16) % allowed.size()];
      } else {
        m = choose(adversary, s, history, gseed);
      }
      s = s.apply_move(m);
      history.push_back(m);
      out.digest = (out.digest ^ static_cast<std::uint64_t>(m.index() + 1)) * 1099511628211ULL;
    }
    out.digest = (out.digest ^ static_cast<std::uint64_t>(s.status())) * 1099511628211ULL;
    ++out.games;
  }
  return out;
}

}  // namespace u3t::testing
