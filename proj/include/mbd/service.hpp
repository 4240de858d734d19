#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "mbd/io.hpp"

namespace httplib {
class Server;
}

namespace mbd {

struct ServiceConfig {
  /// Default engine: "exact" or "strategy:NAME".
  std::string engine = "exact";
  /// Largest board the exact engine accepts.
  int max_exact_vertices = 16;
  /// Per-request search budget.
  int budget_ms = 2000;
  SolveConfig solve;
  std::string cors_origin = "*";
  /// Append finished GameRecords as JSON lines here when non-empty.
  std::string record_log;
};

/// Request failure with an HTTP status and a machine-readable code.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& reason)
      : std::runtime_error(reason), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  json body() const { return {{"code", code_}, {"reason", what()}}; }

 private:
  int status_;
  std::string code_;
};

struct Session {
  std::string id;
  Board board;
  Player human = Player::Staller;
  std::string engine;
  Position position;
  GameRecord record;
  std::unique_ptr<Strategy> strategy;
  /// False once an engine reply came from a fallback rather than a proof.
  bool engine_exact = true;
  std::string engine_note;
  std::mutex mu;
};

/// Result of a time-boxed solve.
struct Evaluation {
  GameValue value;
  bool exhausted = false;
  /// "exact", or "lower" when the search ran out of budget.
  std::string bound = "exact";
  std::optional<Move> best_move;
  std::uint64_t nodes = 0;
};

/// In-memory play sessions. All methods are thread safe; each session is
/// mutated under its own lock.
class Service {
 public:
  explicit Service(ServiceConfig cfg = {});

  /// {"board": spec, "human": "Dominator"|"Staller", "engine"?: ..., "first"?: ...}
  json create_session(const json& request);
  json get_session(const std::string& id);
  /// {"vertex": label or index}. Applies the human move and the engine reply together.
  json post_move(const std::string& id, const json& request);
  json eval(const std::string& id);
  /// Evaluation payload for any position on `board`: value or bound, best
  /// move, dominated set and active traps.
  json eval_position(const Board& board, const Position& pos, bool exact_engine) const;
  void delete_session(const std::string& id);
  std::size_t session_count() const;

  const ServiceConfig& config() const { return cfg_; }

  /// Budgeted solve of `pos`: repeated node-limited searches, each sized from
  /// the previous one's rate, until exact or out of time.
  Evaluation evaluate(const Position& pos) const;

 private:
  ServiceConfig cfg_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex log_mu_;

  std::shared_ptr<Session> find(const std::string& id) const;
  Move engine_move(Session& s, const Position& pos, std::optional<Move> last);
  json session_json(const Session& s) const;
  void log_if_finished(const Session& s);
};

/// Installs the REST routes and CORS handling on `server`.
void install_routes(httplib::Server& server, Service& service);

/// Blocks serving HTTP until the process stops; false if the bind fails.
bool serve(Service& service, const std::string& host, int port);

}  // namespace mbd
