#pragma once

// HTTP/JSON session service. GameService holds all state and does the
// routing on (method, path, body) so it can be driven without sockets;
// HttpServer only adapts cpp-httplib requests onto it.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>

#include "bublz/engine.hpp"
#include "bublz/json_io.hpp"

namespace httplib {
class Server;
}

namespace bublz {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
  std::string campaign_path;  // empty: generated campaign (seed 1, six levels)
  std::string trace_log_path;  // empty: completed sessions are not logged
  std::optional<std::uint64_t> seed;
  std::string static_dir;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

class SessionStore {
 public:
  std::string allocate_id();
  void insert(Session session);
  bool contains(const std::string& id) const;
  std::optional<Session> get(const std::string& id) const;

  /// Runs `fn` with exclusive access to one session. Returns false for an
  /// unknown id.
  bool with_session(const std::string& id, const std::function<void(Session&)>& fn);

  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
  };
  std::shared_ptr<Entry> find(const std::string& id) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 0;
};

/// Append-only JSON Lines writer; one complete line per append.
class TraceLog {
 public:
  explicit TraceLog(std::string path);
  void append(const TraceRecord& record);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::mutex mutex_;
};

class GameService {
 public:
  /// Throws std::invalid_argument if any level fails playability checks.
  GameService(Campaign campaign, std::optional<std::uint64_t> seed = std::nullopt,
              std::string trace_log_path = {});

  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::string& body);

  ApiResponse get_campaign() const;
  ApiResponse create_session(const std::string& body);
  ApiResponse get_session(const std::string& id) const;
  ApiResponse post_move(const std::string& id, const std::string& body);
  ApiResponse get_feedback(const std::string& id) const;
  ApiResponse post_transition(const std::string& id, const std::string& body);

  const Campaign& campaign() const { return campaign_; }
  const SessionStore& store() const { return store_; }

  /// {"id","level","triplet","target","count","moves_made","legal_moves","complete"}
  static Json state_json(const Session& session);

 private:
  Count draw_target(const LevelSpec& level);
  const OptimalTable* table_for(const LevelSpec& level) const;

  Campaign campaign_;
  std::map<int, OptimalTable> tables_;
  SessionStore store_;
  std::mutex picker_mutex_;
  std::mt19937_64 rng_;
  std::unique_ptr<TraceLog> trace_log_;
};

/// Builds the service from a config: loads or generates the campaign and
/// validates it before anything is bound.
std::unique_ptr<GameService> make_service(const ServerConfig& config);

class HttpServer {
 public:
  HttpServer(GameService& service, const ServerConfig& config);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and starts serving on a background thread; returns the bound
  /// port. Throws std::runtime_error when the address cannot be bound.
  int start();
  /// Binds and serves on the calling thread until stop().
  void run();
  void stop();
  int port() const { return port_; }

 private:
  int bind();

  GameService& service_;
  ServerConfig config_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace bublz
