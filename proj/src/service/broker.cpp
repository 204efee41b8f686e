#include <charconv>
#include <deque>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/service.hpp"

namespace birs::service {

namespace asio = boost::asio;
using asio::ip::tcp;

std::string encode(const Json& envelope) {
  // std::map-backed objects iterate in key order.
  return envelope.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Json make_event(std::string_view topic, std::uint64_t seq, const Json& payload) {
  return {{"v", kProtocolVersion}, {"type", "event"}, {"topic", topic}, {"seq", seq}, {"payload", payload}};
}

Json make_error(const Json& id, std::string_view code, std::string_view message) {
  return {{"v", kProtocolVersion},
          {"type", "err"},
          {"id", id},
          {"payload", {{"code", code}, {"message", message}}}};
}

Session::Session(const RequestHandler& handler, TopicCache& cache, Sink sink)
    : handler_(handler), cache_(cache), sink_(std::move(sink)) {}

void Session::on_line(std::string_view line, const std::function<void(const std::string&)>& on_publish) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  Json env;
  try {
    env = Json::parse(line);
  } catch (const Json::exception& e) {
    sink_(encode(make_error(nullptr, "bad_envelope", fmt::format("not a JSON document: {}", e.what()))));
    return;
  }
  Json id = env.is_object() && env.contains("id") ? env["id"] : Json(nullptr);
  auto reject = [&](std::string_view msg) { sink_(encode(make_error(id, "bad_envelope", msg))); };

  if (!env.is_object()) return reject("envelope must be an object");
  if (!env.contains("v") || !env["v"].is_number_integer()) return reject("missing protocol version 'v'");
  if (env["v"].get<long long>() != kProtocolVersion) {
    sink_(encode(make_error(id, "unsupported_version", fmt::format("protocol version {} is not supported", env["v"].dump()))));
    return;
  }
  if (!env.contains("type") || !env["type"].is_string()) return reject("missing 'type'");
  const auto type = env["type"].get<std::string>();
  Json payload = env.contains("payload") ? env["payload"] : Json::object();

  if (type == "req") {
    if (!id.is_string()) return reject("req needs a string 'id'");
    if (!env.contains("op") || !env["op"].is_string()) return reject("req needs a string 'op'");
    const auto op = env["op"].get<std::string>();
    try {
      Json result = handler_.handle(op, payload);
      sink_(encode({{"v", kProtocolVersion}, {"type", "res"}, {"id", id}, {"op", op}, {"payload", std::move(result)}}));
    } catch (const ServiceError& e) {
      sink_(encode(make_error(id, e.code(), e.what())));
    } catch (const std::exception& e) {
      sink_(encode(make_error(id, "internal", e.what())));
    }
    return;
  }
  if (type == "sub" || type == "pub") {
    if (!env.contains("topic") || !env["topic"].is_string() || env["topic"].get<std::string>().empty()) {
      return reject(fmt::format("{} needs a non-empty 'topic'", type));
    }
    const auto topic = env["topic"].get<std::string>();
    Json ack = {{"v", kProtocolVersion}, {"type", "ack"}, {"topic", topic}, {"id", id}};
    if (type == "sub") {
      auto latest = cache_.latest(topic);
      subs_[topic] = 0;
      sink_(encode(ack));
      if (latest) deliver(topic, latest->payload, latest->seq);
    } else {
      ack["seq"] = cache_.publish(topic, std::move(payload));
      sink_(encode(ack));
      on_publish(topic);
    }
    return;
  }
  reject(fmt::format("clients may not send '{}' envelopes", type));
}

void Session::deliver(const std::string& topic, const Json& payload, std::uint64_t seq) {
  auto it = subs_.find(topic);
  if (it == subs_.end() || seq <= it->second) return;
  it->second = seq;
  sink_(encode(make_event(topic, seq, payload)));
}

ListenAddress parse_listen_address(std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw Error("BadAddress", fmt::format("'{}' is not host:port", text));
  ListenAddress a;
  auto host = text.substr(0, colon);
  if (!host.empty()) a.host = std::string(host);
  if (a.host.size() > 2 && a.host.front() == '[' && a.host.back() == ']') a.host = a.host.substr(1, a.host.size() - 2);
  auto port = text.substr(colon + 1);
  unsigned v = 0;
  auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), v);
  if (port.empty() || ec != std::errc{} || p != port.data() + port.size() || v > 65535) {
    throw Error("BadAddress", fmt::format("bad port in '{}'", text));
  }
  a.port = static_cast<std::uint16_t>(v);
  return a;
}

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  using Closed = std::function<void(const std::shared_ptr<Connection>&)>;
  using Published = std::function<void(const std::string&)>;

  Connection(tcp::socket socket, const RequestHandler& handler, TopicCache& cache, Published published, Closed closed)
      : socket_(std::move(socket)),
        buf_(kMaxLineBytes + 1),
        session_(handler, cache, [this](std::string line) { send(std::move(line)); }),
        published_(std::move(published)),
        closed_(std::move(closed)) {}

  void start() { read(); }

  void deliver(const std::string& topic, const Json& payload, std::uint64_t seq) {
    session_.deliver(topic, payload, seq);
  }

  void close() {
    if (closing_) return;
    closing_ = true;
    boost::system::error_code ec;
    socket_.shutdown(tcp::socket::shutdown_both, ec);
    socket_.close(ec);
  }

 private:
  void read() {
    auto self = shared_from_this();
    asio::async_read_until(socket_, buf_, '\n', [this, self](boost::system::error_code ec, std::size_t n) {
      if (closing_) return;
      if (ec == asio::error::not_found) {
        // The line exceeds the limit; framing cannot be recovered.
        send(encode(make_error(nullptr, "line_too_long", fmt::format("line exceeds {} bytes", kMaxLineBytes))));
        close_after_write_ = true;
        return;
      }
      if (ec) {
        finish();
        return;
      }
      std::string line(asio::buffers_begin(buf_.data()), asio::buffers_begin(buf_.data()) + static_cast<std::ptrdiff_t>(n - 1));
      buf_.consume(n);
      session_.on_line(line, published_);
      read();
    });
  }

  void send(std::string line) {
    if (closing_) return;
    line.push_back('\n');
    out_.push_back(std::move(line));
    if (out_.size() == 1) write();
  }

  void write() {
    auto self = shared_from_this();
    asio::async_write(socket_, asio::buffer(out_.front()), [this, self](boost::system::error_code ec, std::size_t) {
      if (ec) {
        finish();
        return;
      }
      out_.pop_front();
      if (!out_.empty()) {
        write();
      } else if (close_after_write_) {
        finish();
      }
    });
  }

  void finish() {
    close();
    if (closed_) {
      auto cb = std::move(closed_);
      closed_ = nullptr;
      cb(shared_from_this());
    }
  }

  tcp::socket socket_;
  asio::streambuf buf_;
  Session session_;
  Published published_;
  Closed closed_;
  std::deque<std::string> out_;
  bool closing_ = false;
  bool close_after_write_ = false;
};

}  // namespace

struct Broker::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::shared_ptr<const Artifacts> artifacts;
  RequestHandler handler;
  TopicCache cache;
  std::set<std::shared_ptr<Connection>> conns;
  std::thread thread;

  explicit Impl(std::shared_ptr<const Artifacts> a) : artifacts(a), handler(std::move(a)) {}

  void fan_out(const std::string& topic) {
    auto latest = cache.latest(topic);
    if (!latest) return;
    // A delivery can close a connection and erase it from the set.
    auto snapshot = conns;
    for (const auto& c : snapshot) c->deliver(topic, latest->payload, latest->seq);
  }

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == asio::error::operation_aborted || !acceptor.is_open()) return;
        accept();
        return;
      }
      boost::system::error_code opt_ec;
      socket.set_option(tcp::no_delay(true), opt_ec);
      auto conn = std::make_shared<Connection>(
          std::move(socket), handler, cache, [this](const std::string& topic) { fan_out(topic); },
          [this](const std::shared_ptr<Connection>& c) { conns.erase(c); });
      conns.insert(conn);
      conn->start();
      accept();
    });
  }
};

Broker::Broker(std::shared_ptr<const Artifacts> artifacts, const ListenAddress& address)
    : impl_(std::make_unique<Impl>(std::move(artifacts))) {
  try {
    tcp::resolver resolver(impl_->io);
    auto results = resolver.resolve(address.host, std::to_string(address.port),
                                    tcp::resolver::passive | tcp::resolver::numeric_service);
    if (results.empty()) throw Error("BindFailure", fmt::format("cannot resolve {}", address.host));
    tcp::endpoint ep = *results.begin();
    impl_->acceptor.open(ep.protocol());
    impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
    impl_->acceptor.bind(ep);
    impl_->acceptor.listen();
  } catch (const boost::system::system_error& e) {
    throw Error("BindFailure", fmt::format("{}:{}: {}", address.host, address.port, e.what()));
  }
  impl_->cache.publish(std::string(kTopoTopic), impl_->handler.topo_payload());
  impl_->cache.publish(std::string(kGridTopic), impl_->handler.grid_topic_payload());
  impl_->accept();
}

Broker::~Broker() { stop(); }

std::uint16_t Broker::port() const { return impl_->acceptor.local_endpoint().port(); }

void Broker::run() { impl_->io.run(); }

void Broker::start() {
  if (impl_->thread.joinable()) return;
  impl_->thread = std::thread([this] { impl_->io.run(); });
}

void Broker::stop() {
  if (!impl_) return;
  asio::post(impl_->io, [this] {
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
    auto snapshot = impl_->conns;
    for (const auto& c : snapshot) c->close();
    impl_->conns.clear();
    impl_->io.stop();
  });
  if (impl_->thread.joinable() && impl_->thread.get_id() != std::this_thread::get_id()) impl_->thread.join();
}

void Broker::publish(const std::string& topic, Json payload) {
  asio::post(impl_->io, [this, topic, payload = std::move(payload)]() mutable {
    impl_->cache.publish(topic, std::move(payload));
    impl_->fan_out(topic);
  });
}

}  // namespace birs::service
