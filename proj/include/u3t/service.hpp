#pragma once

// In-memory game sessions behind a small HTTP JSON API.
//
//   POST /api/games             {x, o}   -> {id, state}
//   GET  /api/games/{id}                 -> state view
//   POST /api/games/{id}/moves  {f, s}   -> state view, plus botMove
//   GET  /api/strategies                 -> ids with seat constraints
//
// Errors are {error, detail}. Each controller is "human" or a strategy id, and
// at least one side must be human.

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "u3t/engine.hpp"
#include "u3t/record.hpp"
#include "u3t/strategies.hpp"

namespace httplib {
class Server;
}

namespace u3t {

// nullopt is a human.
using Controller = std::optional<StrategyId>;

std::string controller_name(const Controller& c);

class ServiceError : public std::runtime_error {
 public:
  ServiceError(std::string code, std::string detail, int http_status);
  const std::string& code() const { return code_; }
  int http_status() const { return http_status_; }

 private:
  std::string code_;
  int http_status_;
};

struct Session {
  std::string id;
  Controller x;
  Controller o;
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point created_at;
  std::chrono::steady_clock::time_point last_used;

  std::mutex mu;  // guards everything below
  BoardState state;
  GameRecord record;
};

nlohmann::ordered_json state_view(const Session& session);

class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  explicit GameService(std::chrono::seconds ttl = std::chrono::hours(24));

  nlohmann::ordered_json create_game(const nlohmann::json& body);
  nlohmann::ordered_json get_game(const std::string& id);
  nlohmann::ordered_json post_move(const std::string& id, const nlohmann::json& body);
  static nlohmann::ordered_json strategies();

  // Drops sessions idle for longer than the TTL; returns how many went.
  std::size_t evict_expired(Clock::time_point now = Clock::now());
  std::size_t session_count() const;

 private:
  std::shared_ptr<Session> find(const std::string& id);
  // Plays bot moves while the side to move is a bot. Caller holds s.mu.
  std::optional<CellAddr> run_bot(Session& s);
  static std::string new_token();

  std::chrono::seconds ttl_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

// Registers the API routes, and a static mount at / when static_dir is set.
void mount_routes(httplib::Server& server, GameService& service, const std::string& static_dir = {});

// Blocks until the server stops. Returns false if the port could not be bound.
bool serve(const std::string& host, int port, const std::string& static_dir);

}  // namespace u3t
