#include "bublz/service.hpp"

#include <fstream>
#include <random>
#include <regex>

#include "httplib.h"

namespace bublz {

// --- SessionStore ---------------------------------------------------------

std::string SessionStore::allocate_id() {
  std::unique_lock lock(mutex_);
  return std::to_string(++next_id_);
}

void SessionStore::insert(Session session) {
  auto entry = std::make_shared<Entry>();
  const std::string id = session.id;
  entry->session = std::move(session);
  std::unique_lock lock(mutex_);
  if (!sessions_.emplace(id, std::move(entry)).second)
    throw std::logic_error("duplicate session id " + id);
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::contains(const std::string& id) const { return find(id) != nullptr; }

std::optional<Session> SessionStore::get(const std::string& id) const {
  auto entry = find(id);
  if (!entry) return std::nullopt;
  std::lock_guard lock(entry->mutex);
  return entry->session;
}

bool SessionStore::with_session(const std::string& id, const std::function<void(Session&)>& fn) {
  auto entry = find(id);
  if (!entry) return false;
  std::lock_guard lock(entry->mutex);
  fn(entry->session);
  return true;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

// --- TraceLog -------------------------------------------------------------

TraceLog::TraceLog(std::string path) : path_(std::move(path)) {
  std::ofstream probe(path_, std::ios::app);
  if (!probe) throw std::runtime_error("cannot open trace log " + path_);
}

void TraceLog::append(const TraceRecord& record) {
  const std::string line = serialize_trace(record) + "\n";
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
}

// --- GameService ----------------------------------------------------------

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message = {}) {
  Json body{{"error", code}};
  if (!message.empty()) body["message"] = message;
  return {status, std::move(body)};
}

ApiResponse not_found(const std::string& id) {
  return error(404, "not_found", "no session " + id);
}

std::optional<Json> parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) return std::nullopt;
    return j;
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

GameService::GameService(Campaign campaign, std::optional<std::uint64_t> seed,
                         std::string trace_log_path)
    : campaign_(std::move(campaign)), rng_(seed ? *seed : std::random_device{}()) {
  if (auto problems = campaign_problems(campaign_); !problems.empty()) {
    std::string msg = "invalid campaign:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  for (const auto& level : campaign_.levels) tables_.emplace(level.index, optimal_table(level));
  if (!trace_log_path.empty()) trace_log_ = std::make_unique<TraceLog>(std::move(trace_log_path));
}

const OptimalTable* GameService::table_for(const LevelSpec& level) const {
  auto it = tables_.find(level.index);
  return it == tables_.end() ? nullptr : &it->second;
}

Count GameService::draw_target(const LevelSpec& level) {
  std::lock_guard lock(picker_mutex_);
  return uniform_int(rng_, level.targets.lo, level.targets.hi);
}

Json GameService::state_json(const Session& s) {
  Json legal = Json::array();
  for (MoveKind k : legal_moves(s)) legal.push_back(std::string(to_string(k)));
  return {{"id", s.id},
          {"level", s.level.index},
          {"triplet", to_json(s.level.triplet)},
          {"target", s.state.target},
          {"count", s.state.count},
          {"moves_made", s.state.moves_made},
          {"legal_moves", std::move(legal)},
          {"complete", s.complete()}};
}

ApiResponse GameService::get_campaign() const {
  Json levels = Json::array();
  for (const auto& l : campaign_.levels)
    levels.push_back({{"index", l.index},
                      {"triplet", to_json(l.triplet)},
                      {"bounds", Json::array({l.bounds.min_count, l.bounds.max_count})},
                      {"targets", Json::array({l.targets.lo, l.targets.hi})},
                      {"scoring",
                       {{"base", l.scoring.base_score},
                        {"penalty", l.scoring.penalty_per_extra_move},
                        {"floor", l.scoring.floor}}}});
  return {200, {{"levels", std::move(levels)}}};
}

ApiResponse GameService::create_session(const std::string& body) {
  auto req = parse_body(body);
  if (!req) return error(400, "bad_request", "body must be a JSON object");
  if (!req->contains("level") || !(*req)["level"].is_number_integer())
    return error(400, "bad_request", "\"level\" must be an integer");
  const auto index = (*req)["level"].get<std::int64_t>();
  const LevelSpec* level = nullptr;
  for (const auto& l : campaign_.levels)
    if (l.index == index) level = &l;
  if (level == nullptr) return error(400, "unknown_level", "no level " + std::to_string(index));

  Count target = 0;
  if (req->contains("target")) {
    if (!(*req)["target"].is_number_integer())
      return error(400, "bad_request", "\"target\" must be an integer");
    target = (*req)["target"].get<Count>();
  } else if (req->contains("seed")) {
    if (!(*req)["seed"].is_number_unsigned())
      return error(400, "bad_request", "\"seed\" must be an unsigned integer");
    TargetPicker picker((*req)["seed"].get<std::uint64_t>(), level->targets);
    target = pick_target(picker);
  } else {
    target = draw_target(*level);
  }

  try {
    Session s = new_session(*level, target, store_.allocate_id(), table_for(*level));
    Json state = state_json(s);
    store_.insert(std::move(s));
    return {201, std::move(state)};
  } catch (const GameError& e) {
    return error(400, "target_out_of_range", e.what());
  }
}

ApiResponse GameService::get_session(const std::string& id) const {
  auto s = store_.get(id);
  if (!s) return not_found(id);
  return {200, state_json(*s)};
}

ApiResponse GameService::post_move(const std::string& id, const std::string& body) {
  auto req = parse_body(body);
  if (!req) return error(400, "bad_request", "body must be a JSON object");
  if (!req->contains("move") || !(*req)["move"].is_string())
    return error(400, "bad_request", "\"move\" must be a string");
  const auto kind = parse_move_kind((*req)["move"].get<std::string>());
  if (!kind) return error(400, "bad_request", "unknown move kind");

  ApiResponse response;
  const bool found = store_.with_session(id, [&](Session& s) {
    if (auto g = check_move(s, *kind)) {
      response = {409, {{"error", "guard_violation"},
                        {"kind", std::string(to_string(g->kind))},
                        {"message", g->message}}};
      return;
    }
    commit_move(s, *kind, wall_clock_ms() - s.started_at_ms);
    if (s.complete() && trace_log_) trace_log_->append(to_trace(s));
    response = {200, state_json(s)};
  });
  return found ? response : not_found(id);
}

ApiResponse GameService::get_feedback(const std::string& id) const {
  auto s = store_.get(id);
  if (!s) return not_found(id);
  if (!s->complete()) return error(409, "not_complete", "session " + id + " is not complete");
  return {200, to_json(feedback(*s))};
}

ApiResponse GameService::post_transition(const std::string& id, const std::string& body) {
  auto req = parse_body(body);
  if (!req) return error(400, "bad_request", "body must be a JSON object");
  if (!req->contains("choice") || !(*req)["choice"].is_string())
    return error(400, "bad_request", "\"choice\" must be a string");
  const auto choice = parse_transition_choice((*req)["choice"].get<std::string>());
  if (!choice) return error(400, "bad_request", "choice must be retry, repeat or next");

  auto current = store_.get(id);
  if (!current) return not_found(id);

  // The picker must draw from the destination level's range.
  const LevelSpec* dest = &current->level;
  if (*choice == TransitionChoice::NextLevel)
    for (const auto& l : campaign_.levels)
      if (l.index == current->level.index + 1) dest = &l;
  std::uint64_t picker_seed;
  {
    std::lock_guard lock(picker_mutex_);
    picker_seed = rng_();
  }
  TargetPicker picker(picker_seed, dest->targets);

  try {
    Session next = transition(*current, *choice, campaign_, picker, store_.allocate_id());
    Json state = state_json(next);
    store_.insert(std::move(next));
    return {201, std::move(state)};
  } catch (const GameError& e) {
    if (e.code() == GameErrorCode::NoNextLevel) return error(409, "no_next_level", e.what());
    if (e.code() == GameErrorCode::NotComplete) return error(409, "not_complete", e.what());
    return error(400, "target_out_of_range", e.what());
  }
}

ApiResponse GameService::handle(const std::string& method, const std::string& path,
                                const std::string& body) {
  static const std::regex session_re(R"(^/api/sessions/([^/]+)(/(moves|feedback|transition))?$)");
  if (path == "/api/campaign") {
    if (method == "GET") return get_campaign();
    return error(405, "method_not_allowed");
  }
  if (path == "/api/sessions") {
    if (method == "POST") return create_session(body);
    return error(405, "method_not_allowed");
  }
  std::smatch m;
  if (std::regex_match(path, m, session_re)) {
    const std::string id = m[1];
    const std::string sub = m[3];
    if (sub.empty() && method == "GET") return get_session(id);
    if (sub == "moves" && method == "POST") return post_move(id, body);
    if (sub == "feedback" && method == "GET") return get_feedback(id);
    if (sub == "transition" && method == "POST") return post_transition(id, body);
    return error(405, "method_not_allowed");
  }
  return error(404, "not_found", "no route " + path);
}

std::unique_ptr<GameService> make_service(const ServerConfig& config) {
  Campaign campaign = config.campaign_path.empty() ? generate_campaign(1, 6)
                                                   : load_campaign_file(config.campaign_path);
  return std::make_unique<GameService>(std::move(campaign), config.seed, config.trace_log_path);
}

// --- HttpServer -----------------------------------------------------------

HttpServer::HttpServer(GameService& service, const ServerConfig& config)
    : service_(service), config_(config), server_(std::make_unique<httplib::Server>()) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = service_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Get(R"(/api/.*)", dispatch);
  server_->Post(R"(/api/.*)", dispatch);
  if (!config_.static_dir.empty() && !server_->set_mount_point("/", config_.static_dir))
    throw std::runtime_error("static dir " + config_.static_dir + " does not exist");
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
  } else {
    port_ = server_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (port_ < 0)
    throw std::runtime_error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  return port_;
}

int HttpServer::start() {
  bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::run() {
  bind();
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace bublz
