#include "u3t/service.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>

#include "httplib.h"

namespace u3t {

using nlohmann::json;
using nlohmann::ordered_json;

std::string controller_name(const Controller& c) { return c ? std::string(to_string(*c)) : "human"; }

ServiceError::ServiceError(std::string code, std::string detail, int http_status)
    : std::runtime_error(std::move(detail)), code_(std::move(code)), http_status_(http_status) {}

namespace {

ServiceError invalid(const std::string& detail) { return ServiceError("invalid-request", detail, 400); }

Controller parse_controller(const json& body, const char* key, Mark seat) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw invalid(std::string("missing controller \"") + key + "\"");
  }
  const std::string name = body[key].get<std::string>();
  if (name == "human") return std::nullopt;
  const auto id = parse_strategy_id(name);
  if (!id) throw invalid("unknown strategy \"" + name + "\"");
  const auto own = seat_of(*id);
  if (own && *own != seat) {
    throw ServiceError("invalid-controller", name + " only plays " + std::string(to_string(*own)), 400);
  }
  return id;
}

const char* cell_char(Cell c) {
  switch (c) {
    case Cell::X:
      return "X";
    case Cell::O:
      return "O";
    default:
      return "";
  }
}

ordered_json addr_json(CellAddr a) { return ordered_json{{"f", a.field}, {"s", a.spot}}; }

}  // namespace

ordered_json state_view(const Session& s) {
  const BoardState& st = s.state;
  ordered_json cells = ordered_json::array();
  for (int i = 0; i < kCells; ++i) cells.push_back(cell_char(st.cell(CellAddr::from_index(i))));
  ordered_json fields = ordered_json::array();
  for (int f = 0; f < kFields; ++f) fields.push_back(std::string(to_string(st.field_status(f))));
  ordered_json legal = ordered_json::array();
  for (CellAddr a : st.legal_moves()) legal.push_back(addr_json(a));

  ordered_json moves = ordered_json::array();
  for (std::size_t i = 0; i < s.record.moves.size(); ++i) {
    const Move& m = s.record.moves[i];
    ordered_json mv{{"p", std::string(to_string(m.player))}, {"f", m.addr.field}, {"s", m.addr.spot}};
    if (i < s.record.annotations.size()) mv["by"] = s.record.annotations[i];
    moves.push_back(std::move(mv));
  }

  ordered_json v;
  v["id"] = s.id;
  v["x"] = controller_name(s.x);
  v["o"] = controller_name(s.o);
  v["ply"] = st.ply();
  v["status"] = std::string(to_string(st.status()));
  v["toMove"] = st.terminal() ? ordered_json(nullptr) : ordered_json(std::string(to_string(st.to_move())));
  v["forcedField"] = st.forced_field() ? ordered_json(*st.forced_field()) : ordered_json(nullptr);
  v["cells"] = std::move(cells);
  v["fields"] = std::move(fields);
  v["legalMoves"] = std::move(legal);
  v["moves"] = std::move(moves);
  return v;
}

GameService::GameService(std::chrono::seconds ttl) : ttl_(ttl) {}

std::string GameService::new_token() {
  std::random_device rd;
  std::array<unsigned, 4> words{rd(), rd(), rd(), rd()};
  std::string out;
  char buf[9];
  for (unsigned w : words) {
    std::snprintf(buf, sizeof buf, "%08x", w);
    out += buf;
  }
  return out;
}

std::shared_ptr<Session> GameService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError("not-found", "no session " + id, 404);
  return it->second;
}

std::optional<CellAddr> GameService::run_bot(Session& s) {
  std::optional<CellAddr> last;
  while (!s.state.terminal()) {
    const Controller& c = s.state.to_move() == Mark::X ? s.x : s.o;
    if (!c) break;
    std::string label(to_string(*c));
    if (*c == StrategyId::XavierWinning) label = std::string(to_string(xavier_phase(s.state)));
    StrategyContext ctx{s.record.moves, mix64(s.seed + static_cast<std::uint64_t>(s.state.ply()))};
    const CellAddr a = choose(*c, ctx);
    s.state = s.state.apply_move(a);
    s.record.moves.push_back(Move{s.state.ply() % 2 == 1 ? Mark::X : Mark::O, a, s.state.ply()});
    s.record.annotations.push_back(label);
    last = a;
  }
  s.record.result = s.state.status();
  return last;
}

ordered_json GameService::create_game(const json& body) {
  if (!body.is_object()) throw invalid("body must be a JSON object");
  const Controller x = parse_controller(body, "x", Mark::X);
  const Controller o = parse_controller(body, "o", Mark::O);
  if (x && o) throw ServiceError("invalid-controller", "both sides are bots; use the play command", 400);

  auto s = std::make_shared<Session>();
  s->x = x;
  s->o = o;
  s->created_at = s->last_used = Clock::now();
  s->seed = std::random_device{}();
  evict_expired(s->created_at);
  {
    std::lock_guard lock(mu_);
    do s->id = new_token();
    while (sessions_.count(s->id));
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mu);
  run_bot(*s);
  return ordered_json{{"id", s->id}, {"state", state_view(*s)}};
}

ordered_json GameService::get_game(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  s->last_used = Clock::now();
  return state_view(*s);
}

ordered_json GameService::post_move(const std::string& id, const json& body) {
  auto s = find(id);
  if (!body.is_object() || !body.contains("f") || !body.contains("s") || !body["f"].is_number_integer() ||
      !body["s"].is_number_integer()) {
    throw invalid("body must be {\"f\": field, \"s\": spot}");
  }
  const int f = body["f"].get<int>(), sp = body["s"].get<int>();
  if (f < 0 || f >= kFields || sp < 0 || sp >= kSpots) throw invalid("field and spot must be in 0..8");
  const CellAddr a(f, sp);

  std::lock_guard lock(s->mu);
  s->last_used = Clock::now();
  if (s->state.terminal()) throw ServiceError("terminal", "the game is over", 409);
  const Controller& mover = s->state.to_move() == Mark::X ? s->x : s->o;
  if (mover) throw ServiceError("not-your-turn", controller_name(mover) + " is to move", 409);
  if (auto why = s->state.illegal_reason(a)) {
    throw ServiceError(std::string(to_string(*why)), "illegal move " + to_string(a), 409);
  }
  const Mark player = s->state.to_move();
  const BoardState before = s->state;
  s->state = s->state.apply_move(a);
  s->record.moves.push_back(Move{player, a, s->state.ply()});
  s->record.annotations.push_back("human");
  s->record.result = s->state.status();
  std::optional<CellAddr> bot;
  try {
    bot = run_bot(*s);
  } catch (const StrategyError& e) {
    // the bot has no rule for this position: the human move is not kept
    s->state = before;
    s->record.moves.pop_back();
    s->record.annotations.pop_back();
    s->record.result = s->state.status();
    throw ServiceError("bot-cannot-reply", e.what(), 409);
  }

  ordered_json out = state_view(*s);
  out["botMove"] = bot ? addr_json(*bot) : ordered_json(nullptr);
  return out;
}

ordered_json GameService::strategies() {
  ordered_json out = ordered_json::array();
  for (StrategyId id : kAllStrategies) {
    ordered_json seats = ordered_json::array();
    const auto own = seat_of(id);
    if (!own || *own == Mark::X) seats.push_back("X");
    if (!own || *own == Mark::O) seats.push_back("O");
    out.push_back(ordered_json{{"id", std::string(to_string(id))}, {"seats", seats}});
  }
  return ordered_json{{"strategies", out}};
}

std::size_t GameService::evict_expired(Clock::time_point now) {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > ttl_) {
      it = sessions_.erase(it);
      ++n;
    } else {
      ++it;
    }
  }
  return n;
}

std::size_t GameService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

namespace {

void send_json(httplib::Response& res, const ordered_json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    send_json(res, f());
  } catch (const ServiceError& e) {
    send_json(res, ordered_json{{"error", e.code()}, {"detail", e.what()}}, e.http_status());
  } catch (const json::exception& e) {
    send_json(res, ordered_json{{"error", "invalid-request"}, {"detail", e.what()}}, 400);
  } catch (const std::exception& e) {
    send_json(res, ordered_json{{"error", "internal"}, {"detail", e.what()}}, 500);
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

void mount_routes(httplib::Server& server, GameService& service, const std::string& static_dir) {
  server.Get("/api/strategies", [](const httplib::Request&, httplib::Response& res) {
    guarded(res, [] { return GameService::strategies(); });
  });
  server.Post("/api/games", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.create_game(parse_body(req)); });
  });
  server.Get(R"(/api/games/([0-9a-zA-Z]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.get_game(req.matches[1]); });
  });
  server.Post(R"(/api/games/([0-9a-zA-Z]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.post_move(req.matches[1], parse_body(req)); });
  });
  if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
    server.set_mount_point("/", static_dir);
  }
}

bool serve(const std::string& host, int port, const std::string& static_dir) {
  GameService service;
  httplib::Server server;
  mount_routes(server, service, static_dir);
  return server.listen(host, port);
}

}  // namespace u3t
