// u3t: verify strategy bounds, play strategy games, replay records, serve the API.
//
// Exit status: 0 ok, 1 a checked bound failed (or a record was bad),
// 2 usage error, 3 an exhaustive target ran out of budget.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "u3t/engine.hpp"
#include "u3t/record.hpp"
#include "u3t/render.hpp"
#include "u3t/service.hpp"
#include "u3t/strategies.hpp"
#include "u3t/verifier.hpp"

namespace {

using namespace u3t;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Sample counts when --samples is not given: per opening, per prefix, and
// total for the sampled lbs fallback.
constexpr std::uint64_t kFirstMoveSamples = 2000;
constexpr std::uint64_t kSecondMoveSamples = 200;
constexpr std::uint64_t kLbsFallbackSamples = 1'000'000;

struct Options {
  std::string target;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  double max_seconds = SearchBudget{}.max_seconds;
  std::uint64_t samples = 0;  // 0: per-target default
  std::uint64_t seed = 1;
  bool json = false;
  std::string out;

  std::string x, o;
  std::uint64_t count = 1;

  std::string path;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir = "webui/dist";
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body << '\n';
}

std::string summary(const VerificationReport& r) {
  std::ostringstream s;
  s << r.target << " [" << to_string(r.mode) << "]: ";
  if (r.budget_exhausted && !r.bound_satisfied) {
    s << "budget exhausted after " << r.nodes_explored << " nodes";
    return s.str();
  }
  if (r.target == "xavier") {
    const bool won = r.line_violation_count == 0;
    s << "max=" << r.max_plies << " min=" << r.min_plies << (won ? " leaves all WonX" : " NOT all leaves WonX");
    s << "; property violations=" << r.property_violation_count;
    if (r.memo_states_by_ply.size() > 17) s << "; memo states at ply 17=" << r.memo_states_by_ply[17];
  } else if (r.target == "lbs") {
    if (r.line_violation_count == 0) {
      s << "one X per field at ply " << kLbsOnePerFieldPly << "; no X win before ply " << kLbsNoWinBeforePly;
    } else {
      s << r.line_violation_count << " violating lines";
    }
    s << " (" << r.lines << " lines)";
  } else {
    const int bound = r.target == "first-move" ? kAvoidNoWinBeforePly : kAvoid2NoWinBeforePly;
    if (r.line_violation_count == 0) {
      s << "no X win before ply " << bound;
      if (r.target == "second-move") s << " (" << kAvoidNoWinBeforePly << " when k = j)";
    } else {
      s << r.line_violation_count << " violating games";
    }
    s << " over " << r.lines << " games";
  }
  return s.str();
}

int cmd_verify(const Options& opt) {
  SearchBudget budget;
  budget.max_nodes = opt.max_nodes;
  budget.max_seconds = opt.max_seconds;
  budget.seed = opt.seed;
  budget.sample_count = 1;
  try {
    budget.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "u3t verify: " << e.what() << '\n';
    return kExitUsage;
  }
  auto with_samples = [&](std::uint64_t fallback) {
    SearchBudget b = budget;
    b.sample_count = opt.samples ? opt.samples : fallback;
    return b;
  };

  std::vector<std::string> targets;
  if (opt.target == "all") {
    targets = {"xavier", "lbs", "first-move", "second-move"};
  } else {
    targets = {opt.target};
  }

  std::vector<VerificationReport> reports;
  int status = kExitOk;
  for (const std::string& t : targets) {
    VerificationReport r;
    if (t == "xavier") {
      r = verify_xavier(budget);
    } else if (t == "lbs") {
      r = verify_lbs(with_samples(kLbsFallbackSamples));
    } else if (t == "first-move") {
      r = verify_first_move(with_samples(kFirstMoveSamples));
    } else {
      r = verify_second_move(with_samples(kSecondMoveSamples));
    }
    const bool exhaustive_target = t == "xavier";
    if (exhaustive_target && r.budget_exhausted) {
      status = kExitBudget;
    } else if (!r.passed() && status == kExitOk) {
      status = kExitFailed;
    }
    if (!opt.json) std::cout << summary(r) << '\n';
    reports.push_back(std::move(r));
  }

  ordered_json doc;
  if (reports.size() == 1) {
    doc = to_json(reports.front());
  } else {
    doc = ordered_json::object();
    for (const auto& r : reports) doc[r.target] = to_json(r);
  }
  if (opt.json) std::cout << doc.dump(2) << '\n';
  if (!opt.out.empty()) write_file(opt.out, doc.dump(2));
  if (!opt.json) std::cout << "verdict: " << (status == kExitOk ? "PASS" : "FAIL") << '\n';
  return status;
}

std::optional<StrategyId> strategy_for_seat(const std::string& name, Mark seat) {
  const auto id = parse_strategy_id(name);
  if (!id) {
    std::cerr << "u3t play: unknown strategy \"" << name << "\"\n";
    return std::nullopt;
  }
  const auto own = seat_of(*id);
  if (own && *own != seat) {
    std::cerr << "u3t play: " << name << " only plays " << to_string(*own) << '\n';
    return std::nullopt;
  }
  return id;
}

GameRecord play_game(StrategyId x, StrategyId o, std::uint64_t seed) {
  BoardState s;
  std::vector<CellAddr> history;
  while (!s.terminal()) {
    const bool x_move = s.to_move() == Mark::X;
    const CellAddr a = choose(x_move ? x : o, s, history, mix64(seed ^ (x_move ? 0 : 0x9e3779b97f4a7c15ULL)));
    s = s.apply_move(a);
    history.push_back(a);
  }
  return make_record(history);
}

int cmd_play(const Options& opt) {
  const auto x = strategy_for_seat(opt.x, Mark::X);
  const auto o = strategy_for_seat(opt.o, Mark::O);
  if (!x || !o) return kExitUsage;
  if (opt.count == 0) {
    std::cerr << "u3t play: --count must be positive\n";
    return kExitUsage;
  }

  std::map<std::string, std::uint64_t> tally{{"WonX", 0}, {"WonO", 0}, {"Draw", 0}};
  std::map<int, std::uint64_t> lengths;
  std::vector<GameRecord> records;
  std::uint64_t total_plies = 0;
  for (std::uint64_t g = 0; g < opt.count; ++g) {
    GameRecord r = play_game(*x, *o, mix64(opt.seed + g));
    ++tally[std::string(to_string(r.result))];
    ++lengths[static_cast<int>(r.moves.size())];
    total_plies += r.moves.size();
    records.push_back(std::move(r));
  }

  std::ostringstream text;
  ordered_json doc;
  if (opt.json) {
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) recs.push_back(to_json_value(r));
    ordered_json hist = ordered_json::object();
    for (auto [len, n] : lengths) hist[std::to_string(len)] = n;
    doc["x"] = opt.x;
    doc["o"] = opt.o;
    doc["seed"] = opt.seed;
    doc["games"] = opt.count;
    doc["results"] = tally;
    doc["plyHistogram"] = hist;
    doc["records"] = recs;
  } else {
    for (const auto& r : records) text << "record " << to_string(r.result) << ' ' << to_text(r) << '\n';
    text << "x=" << opt.x << "\no=" << opt.o << "\nseed=" << opt.seed << "\ngames=" << opt.count << '\n';
    for (const auto& [k, n] : tally) text << "result." << k << '=' << n << '\n';
    text << "plies.min=" << lengths.begin()->first << "\nplies.max=" << lengths.rbegin()->first << '\n';
    text << "plies.mean=" << static_cast<double>(total_plies) / static_cast<double>(opt.count) << '\n';
    for (auto [len, n] : lengths) text << "plies.hist." << len << '=' << n << '\n';
  }
  const std::string body = opt.json ? doc.dump(2) + "\n" : text.str();
  std::cout << body;
  if (!opt.out.empty()) write_file(opt.out, opt.json ? doc.dump(2) : text.str());
  return kExitOk;
}

int cmd_replay(const Options& opt) {
  std::string input;
  if (opt.path == "-") {
    input.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(opt.path);
    if (!f) {
      std::cerr << "u3t replay: cannot read " << opt.path << '\n';
      return kExitUsage;
    }
    input.assign(std::istreambuf_iterator<char>(f), {});
  }

  GameRecord record;
  try {
    record = parse_record(input);
  } catch (const std::exception& e) {
    std::cerr << "u3t replay: " << e.what() << '\n';
    return kExitFailed;
  }

  std::optional<ReplayError> bad;
  try {
    replay(record);
  } catch (const ReplayError& e) {
    bad = e;
  }

  BoardState s;
  std::cout << render_status(s) << '\n' << render_board(s);
  for (std::size_t i = 0; i < record.moves.size(); ++i) {
    if (bad && bad->index() == i) {
      std::cerr << "u3t replay: " << bad->what() << '\n';
      return kExitFailed;
    }
    const Move& m = record.moves[i];
    s = s.apply_move(m.addr);
    std::cout << '\n' << to_string(m.player) << ' ' << to_string(m.addr) << '\n';
    std::cout << render_status(s) << '\n' << render_board(s);
  }
  return kExitOk;
}

int cmd_serve(const Options& opt) {
  std::cout << "listening on http://" << opt.host << ':' << opt.port << std::endl;
  if (!serve(opt.host, opt.port, opt.static_dir)) {
    std::cerr << "u3t serve: cannot listen on " << opt.host << ':' << opt.port << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Ultimate Tic-Tac-Toe strategy laboratory"};
  app.require_subcommand(1);

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "base seed")->envname("U3T_SEED");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "print JSON instead of text");
    sub->add_option("--out", opt.out, "also write the output to this file");
  };

  auto* verify = app.add_subcommand("verify", "check a strategy bound");
  verify->add_option("target", opt.target, "xavier, lbs, first-move, second-move or all")
      ->required()
      ->check(CLI::IsMember({"xavier", "lbs", "first-move", "second-move", "all"}));
  verify->add_option("--max-nodes", opt.max_nodes, "node budget for exhaustive searches");
  verify->add_option("--max-seconds", opt.max_seconds, "time budget in seconds");
  verify->add_option("--samples", opt.samples, "samples per opening or prefix (total for sampled lbs)");
  add_seed(verify);
  add_output(verify);

  auto* play = app.add_subcommand("play", "play strategy-vs-strategy games");
  play->add_option("--x", opt.x, "X strategy")->required();
  play->add_option("--o", opt.o, "O strategy")->required();
  play->add_option("--count", opt.count, "number of games");
  add_seed(play);
  add_output(play);

  auto* replay = app.add_subcommand("replay", "print the board after every ply of a record");
  replay->add_option("path", opt.path, "record file (JSON or text notation), - for stdin")->required();

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP API");
  serve_cmd->add_option("--port", opt.port, "port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", opt.host, "bind address");
  serve_cmd->add_option("--static", opt.static_dir, "directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (play->parsed()) return cmd_play(opt);
    if (replay->parsed()) return cmd_replay(opt);
    return cmd_serve(opt);
  } catch (const std::exception& e) {
    std::cerr << "u3t: " << e.what() << '\n';
    return kExitFailed;
  }
}
