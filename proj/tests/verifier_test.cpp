#include "doctest.h"
#include "support.hpp"
#include "u3t/verifier.hpp"

using namespace u3t;
using u3t::testing::play;

TEST_CASE("xavier exhaustive search") {
  const VerificationReport r = verify_xavier(SearchBudget{});
  CHECK(r.mode == VerifyMode::Exhaustive);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.bound_satisfied == true);
  CHECK(r.max_plies == 43);
  CHECK(r.min_plies == 29);
  CHECK(r.property_violation_count == 0);
  CHECK(r.line_violation_count == 0);
  REQUIRE(r.memo_states_by_ply.size() > 17);
  CHECK(r.memo_states_by_ply[17] == 8);
  REQUIRE(r.extremal_records.size() == 2);
  CHECK(r.extremal_records[0].moves.size() == 43);
  CHECK(r.extremal_records[0].result == GameStatus::WonX);
  CHECK(replay(r.extremal_records[0]).status() == GameStatus::WonX);
  CHECK(r.extremal_records[1].moves.size() == 29);
  CHECK(r.passed());
  const auto j = to_json(r);
  CHECK(j["maxPlies"] == 43);
  CHECK(j["boundSatisfied"] == true);
}

TEST_CASE("memoization does not change the truncated xavier tree") {
  XavierSearchOptions with, without;
  with.ply_limit = without.ply_limit = 22;
  without.memoize = false;
  const VerificationReport a = verify_xavier(SearchBudget{}, with);
  const VerificationReport b = verify_xavier(SearchBudget{}, without);
  CHECK_FALSE(a.bound_satisfied.has_value());
  CHECK(a.lines == b.lines);
  CHECK(a.max_plies == b.max_plies);
  CHECK(a.min_plies == b.min_plies);
  CHECK(a.property_violation_count == b.property_violation_count);
  CHECK(a.line_violation_count == b.line_violation_count);
  CHECK(a.details["cutoffLines"] == b.details["cutoffLines"]);
  CHECK(a.memo_hits > 0);
  CHECK(b.memo_hits == 0);
}

TEST_CASE("budget exhaustion is reported, never guessed") {
  SearchBudget tiny;
  tiny.max_nodes = 10;
  const VerificationReport r = verify_xavier(tiny);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.bound_satisfied.has_value());
  CHECK_FALSE(r.passed());
  CHECK(to_json(r)["boundSatisfied"].is_null());

  tiny.sample_count = 200;
  const VerificationReport l = verify_lbs(tiny);
  CHECK(l.budget_exhausted);
  CHECK(l.mode == VerifyMode::Sampled);
  CHECK(l.lines == 200);
  CHECK(l.passed());
}

TEST_CASE("budget validation") {
  SearchBudget b;
  b.max_nodes = 0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  CHECK_THROWS_AS(verify_xavier(b), std::invalid_argument);
}

TEST_CASE("lbs exhaustive search restricted to one opening") {
  LbsSearchOptions opt;
  opt.first_move = CellAddr(4, 4);
  const VerificationReport r = verify_lbs(SearchBudget{}, opt);
  CHECK(r.mode == VerifyMode::Exhaustive);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.line_violation_count == 0);
  CHECK(r.details["certifiedEarliestXWinPly"].get<int>() >= 29);
  CHECK(r.passed());
}

TEST_CASE("lbs sampled") {
  SearchBudget b;
  b.sample_count = 2000;
  LbsSearchOptions opt;
  opt.force_sampled = true;
  const VerificationReport r = verify_lbs(b, opt);
  CHECK(r.mode == VerifyMode::Sampled);
  CHECK(r.lines == 2000);
  CHECK(r.line_violation_count == 0);
  CHECK(r.passed());
}

TEST_CASE("earliest possible X win") {
  CHECK(earliest_x_win_ply(new_game()) == 17);
  const BoardState s = play("4.4 4.0 0.4");
  CHECK(earliest_x_win_ply(s) >= 17);
}

TEST_CASE("lemma scopes") {
  const auto openings = non_double_openings();
  CHECK(openings.size() == 72);
  for (CellAddr a : openings) CHECK(a.field != a.spot);
  const auto prefixes = avoid2_prefixes();
  CHECK(prefixes.size() == 576);
  for (const auto& p : prefixes) {
    CHECK(p[0].field == p[0].spot);
    CHECK(p[2].spot != p[0].field);
    CHECK_NOTHROW(replay(std::span<const CellAddr>(p)));
  }
}

TEST_CASE("first-move sampling") {
  SearchBudget b;
  b.sample_count = 100;
  FirstMoveOptions one;
  one.openings = {CellAddr(0, 8)};
  const VerificationReport r = verify_first_move(b, one);
  CHECK(r.lines == 100);
  CHECK(r.line_violation_count == 0);
  CHECK(r.passed());
  CHECK(r.details["totals"]["blockEndMin"].get<int>() >= 1);

  FirstMoveOptions dbl;
  dbl.openings = {CellAddr(0, 0)};
  const VerificationReport d = verify_first_move(b, dbl);
  CHECK(d.lines == 0);
  CHECK(d.details["skippedDoubles"] == 1);

  b.sample_count = 20;
  const VerificationReport all = verify_first_move(b);
  CHECK(all.lines == 72 * 20);
  CHECK(all.passed());
}

TEST_CASE("second-move sampling") {
  SearchBudget b;
  b.sample_count = 100;
  SecondMoveOptions fig;
  fig.prefixes = {{CellAddr(0, 0), CellAddr(0, 4), CellAddr(4, 8)}, {CellAddr(0, 0), CellAddr(0, 4), CellAddr(4, 4)}};
  const VerificationReport r = verify_second_move(b, fig);
  CHECK(r.lines == 200);
  CHECK(r.passed());
  const auto& per = r.details["perPosition"];
  REQUIRE(per.size() == 2);
  CHECK(per[0]["bound"] == 44);
  CHECK(per[1]["bound"] == 46);

  SecondMoveOptions bad;
  bad.prefixes = {{CellAddr(0, 0), CellAddr(0, 4), CellAddr(4, 0)}};
  const VerificationReport k = verify_second_move(b, bad);
  CHECK(k.lines == 0);
  CHECK(k.details["skippedPrefixes"] == 1);
}

TEST_CASE("reports serialize") {
  SearchBudget b;
  b.sample_count = 5;
  const auto j = to_json(verify_first_move(b));
  for (const char* key : {"target", "mode", "nodesExplored", "lines", "maxPlies", "minPlies", "lineViolations",
                          "lineViolationCount", "boundSatisfied", "budgetExhausted", "details", "notes"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["mode"] == "sampled");
}
