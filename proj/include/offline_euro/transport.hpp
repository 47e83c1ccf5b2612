#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "offline_euro/wire.hpp"

namespace offline_euro {

/// The peer closed the connection (or it was torn down) mid-protocol.
class ChannelClosed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reliable, ordered, bidirectional frame stream between exactly two peers.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const wire::Frame& frame) = 0;
  /// Blocks for the next frame. Throws ChannelClosed.
  virtual wire::Frame receive() = 0;
  virtual void close() = 0;

  void send_message(const wire::Message& m) { send(wire::encode(m)); }
};

/// Two connected in-process endpoints.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair();

/// Stream socket endpoint; frames are written as tag || u32 length || payload.
std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port);

class TcpListener {
 public:
  /// Binds 127.0.0.1 (or `host`); port 0 picks a free port.
  explicit TcpListener(std::uint16_t port = 0, const std::string& host = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  /// Blocks until a peer connects. Throws ChannelClosed after shutdown().
  std::unique_ptr<Channel> accept();
  void shutdown();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

struct FrameRecord {
  std::string from;
  std::string to;
  std::uint8_t tag = 0;
  Bytes payload;

  bool operator==(const FrameRecord&) const = default;
};

/// Thread-safe append-only transcript of every frame sent on the network.
class FrameLog {
 public:
  void add(FrameRecord record);
  std::vector<FrameRecord> snapshot() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::vector<FrameRecord> records_;
};

/// Named endpoints connected by either transport binding. A service handles
/// one connection at a time; each connection runs until the client closes.
/// Frames are logged on the connecting side in both directions, so a process
/// records every exchange it initiates regardless of the binding.
class Network {
 public:
  using Handler = std::function<void(Channel&)>;

  virtual ~Network() = default;

  virtual void serve(const std::string& name, Handler handler) = 0;
  /// Every frame on the returned channel (both directions) is logged.
  std::unique_ptr<Channel> connect(const std::string& from, const std::string& to);
  /// Stops all services and joins their threads.
  virtual void shutdown() = 0;

  FrameLog& log() { return log_; }
  /// Errors escaped from handlers, for diagnostics.
  std::vector<std::string> handler_errors() const;

 protected:
  virtual std::unique_ptr<Channel> open(const std::string& from, const std::string& to) = 0;
  void run_handler(const Handler& handler, Channel& channel, const std::string& service);

  FrameLog log_;

 private:
  mutable std::mutex errors_mutex_;
  std::vector<std::string> errors_;
};

/// Wraps a channel so that every frame sent or received is recorded as
/// (from, to, tag, payload).
std::unique_ptr<Channel> make_recording(std::unique_ptr<Channel> inner, std::string local,
                                        std::string remote, FrameLog& log);

class InProcNetwork : public Network {
 public:
  ~InProcNetwork() override;
  void serve(const std::string& name, Handler handler) override;
  void shutdown() override;

 protected:
  std::unique_ptr<Channel> open(const std::string& from, const std::string& to) override;

 private:
  struct Service {
    Handler handler;
    std::shared_ptr<std::mutex> busy = std::make_shared<std::mutex>();
  };
  std::mutex mutex_;
  std::map<std::string, Service> services_;
  std::vector<std::thread> threads_;
};

class TcpNetwork : public Network {
 public:
  ~TcpNetwork() override;
  /// Local service on a fresh loopback listener (or the given port).
  void serve(const std::string& name, Handler handler) override { serve_on(name, 0, handler); }
  std::uint16_t serve_on(const std::string& name, std::uint16_t port, Handler handler);
  /// Service living in another process.
  void add_remote(const std::string& name, const std::string& host, std::uint16_t port);
  std::uint16_t port_of(const std::string& name) const;
  void shutdown() override;

 protected:
  std::unique_ptr<Channel> open(const std::string& from, const std::string& to) override;

 private:
  struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
  };
  mutable std::mutex mutex_;
  std::map<std::string, Endpoint> endpoints_;
  std::vector<std::unique_ptr<TcpListener>> listeners_;
  std::vector<std::thread> threads_;
};

}  // namespace offline_euro
