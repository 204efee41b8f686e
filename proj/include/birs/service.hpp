#pragma once

// The BIRS node: newline-delimited JSON envelopes over TCP with latched
// publish/subscribe topics and semantic request ops.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birs/pipeline.hpp"
#include "json.hpp"

namespace birs::service {

using Json = nlohmann::json;

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kMaxLineBytes = 16 * 1024 * 1024;
inline constexpr std::string_view kTopoTopic = "/birs/topo_map";
inline constexpr std::string_view kGridTopic = "/birs/grid_meta";

// Error answered to the client as an `err` envelope.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Latest payload per topic with a per-topic sequence number. Thread-safe.
class TopicCache {
 public:
  struct Entry {
    std::uint64_t seq = 0;
    Json payload;
  };

  std::uint64_t publish(const std::string& topic, Json payload);
  std::optional<Entry> latest(const std::string& topic) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Entry> topics_;
};

// Request ops over read-only artifacts; network free.
class RequestHandler {
 public:
  explicit RequestHandler(std::shared_ptr<const Artifacts> artifacts);

  // Throws ServiceError (unknown_op, unknown_room, no_route, ...).
  Json handle(const std::string& op, const Json& payload) const;

  Json topo_payload() const;
  // grid_meta op result, or {"available": false} without a grid.
  Json grid_topic_payload() const;

 private:
  Json room_info(const Json& p) const;
  Json path(const Json& p) const;
  Json locate(const Json& p) const;
  Json material(const Json& p) const;
  Json grid_meta(const Json& p) const;
  Json progress_report(const Json& p) const;

  std::shared_ptr<const Artifacts> a_;
};

// Serialized envelope line without the trailing newline. Keys are sorted, so
// identical content always encodes to identical bytes.
std::string encode(const Json& envelope);

Json make_event(std::string_view topic, std::uint64_t seq, const Json& payload);
Json make_error(const Json& id, std::string_view code, std::string_view message);

// Per-connection protocol state machine, independent of the transport.
class Session {
 public:
  using Sink = std::function<void(std::string line)>;

  Session(const RequestHandler& handler, TopicCache& cache, Sink sink);

  // Handles one input line (without newline). Publishes are returned through
  // `on_publish` so the broker can fan them out.
  void on_line(std::string_view line, const std::function<void(const std::string& topic)>& on_publish);
  // Sends an event if subscribed to `topic`.
  void deliver(const std::string& topic, const Json& event_line_payload, std::uint64_t seq);
  bool subscribed(const std::string& topic) const { return subs_.contains(topic); }

 private:
  const RequestHandler& handler_;
  TopicCache& cache_;
  Sink sink_;
  std::map<std::string, std::uint64_t> subs_;  // topic -> last delivered seq
};

struct ListenAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7878;
};

// "host:port" or ":port". Throws BadAddress.
ListenAddress parse_listen_address(std::string_view text);

class Broker {
 public:
  // Binds immediately and publishes the latched topics. Throws BindFailure.
  Broker(std::shared_ptr<const Artifacts> artifacts, const ListenAddress& address);
  ~Broker();
  Broker(const Broker&) = delete;
  Broker& operator=(const Broker&) = delete;

  std::uint16_t port() const;
  // Blocks until stop().
  void run();
  // Runs on a background thread.
  void start();
  void stop();
  // Thread-safe publish from the host process.
  void publish(const std::string& topic, Json payload);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace birs::service
