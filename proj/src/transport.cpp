#include "offline_euro/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>

namespace offline_euro {

// ---------------------------------------------------------------- in-process

namespace {

struct Pipe {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<wire::Frame> queue[2];
  bool closed = false;
};

class InProcChannel : public Channel {
 public:
  InProcChannel(std::shared_ptr<Pipe> pipe, int side) : pipe_(std::move(pipe)), side_(side) {}
  ~InProcChannel() override { close(); }

  void send(const wire::Frame& frame) override {
    {
      std::lock_guard lock(pipe_->mutex);
      if (pipe_->closed) throw ChannelClosed("in-process channel closed");
      pipe_->queue[1 - side_].push_back(frame);
    }
    pipe_->ready.notify_all();
  }

  wire::Frame receive() override {
    std::unique_lock lock(pipe_->mutex);
    auto& q = pipe_->queue[side_];
    pipe_->ready.wait(lock, [&] { return !q.empty() || pipe_->closed; });
    if (q.empty()) throw ChannelClosed("in-process channel closed");
    auto f = std::move(q.front());
    q.pop_front();
    return f;
  }

  void close() override {
    {
      std::lock_guard lock(pipe_->mutex);
      pipe_->closed = true;
    }
    pipe_->ready.notify_all();
  }

 private:
  std::shared_ptr<Pipe> pipe_;
  int side_;
};

// ---------------------------------------------------------------- sockets

class SocketChannel : public Channel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~SocketChannel() override {
    close();
    if (fd_ >= 0) ::close(fd_);
  }

  void send(const wire::Frame& frame) override {
    auto bytes = frame.to_bytes();
    std::size_t off = 0;
    while (off < bytes.size()) {
      auto n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw ChannelClosed(std::string("send: ") + std::strerror(errno));
      off += static_cast<std::size_t>(n);
    }
  }

  wire::Frame receive() override {
    std::uint8_t header[wire::kFrameHeaderSize];
    read_exact(header, sizeof header);
    std::uint32_t length = (std::uint32_t{header[1]} << 24) | (std::uint32_t{header[2]} << 16) |
                           (std::uint32_t{header[3]} << 8) | std::uint32_t{header[4]};
    if (length > wire::kMaxPayload) {
      throw wire::WireError(wire::WireErrorCode::kOversized, std::to_string(length));
    }
    wire::Frame f;
    f.tag = header[0];
    f.payload.resize(length);
    read_exact(f.payload.data(), length);
    return f;
  }

  void close() override {
    if (!closed_) {
      closed_ = true;
      ::shutdown(fd_, SHUT_RDWR);
    }
  }

 private:
  void read_exact(std::uint8_t* out, std::size_t n) {
    std::size_t off = 0;
    while (off < n) {
      auto r = ::recv(fd_, out + off, n - off, 0);
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) throw ChannelClosed("peer closed the connection");
      if (r < 0) throw ChannelClosed(std::string("recv: ") + std::strerror(errno));
      off += static_cast<std::size_t>(r);
    }
  }

  int fd_;
  bool closed_ = false;
};

sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw std::invalid_argument("not an IPv4 address: " + host);
  }
  return addr;
}

// ---------------------------------------------------------------- recording

class RecordingChannel : public Channel {
 public:
  RecordingChannel(std::unique_ptr<Channel> inner, std::string local, std::string remote,
                   FrameLog& log)
      : inner_(std::move(inner)), local_(std::move(local)), remote_(std::move(remote)), log_(log) {}

  void send(const wire::Frame& frame) override {
    log_.add({local_, remote_, frame.tag, frame.payload});
    inner_->send(frame);
  }

  wire::Frame receive() override {
    auto f = inner_->receive();
    log_.add({remote_, local_, f.tag, f.payload});
    return f;
  }

  void close() override { inner_->close(); }

 private:
  std::unique_ptr<Channel> inner_;
  std::string local_;
  std::string remote_;
  FrameLog& log_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair() {
  auto pipe = std::make_shared<Pipe>();
  return {std::make_unique<InProcChannel>(pipe, 0), std::make_unique<InProcChannel>(pipe, 1)};
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  auto addr = make_addr(host, port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    int err = errno;
    ::close(fd);
    throw ChannelClosed("connect to " + host + ":" + std::to_string(port) + ": " +
                        std::strerror(err));
  }
  return std::make_unique<SocketChannel>(fd);
}

TcpListener::TcpListener(std::uint16_t port, const std::string& host) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  auto addr = make_addr(host, port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(fd_, 64) != 0) {
    int err = errno;
    ::close(fd_);
    throw std::runtime_error("listen on " + host + ":" + std::to_string(port) + ": " +
                             std::strerror(err));
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  shutdown();
  ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept() {
  for (;;) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<SocketChannel>(fd);
    if (errno == EINTR) continue;
    throw ChannelClosed(std::string("accept: ") + std::strerror(errno));
  }
}

void TcpListener::shutdown() { ::shutdown(fd_, SHUT_RDWR); }

// ---------------------------------------------------------------- FrameLog

void FrameLog::add(FrameRecord record) {
  std::lock_guard lock(mutex_);
  records_.push_back(std::move(record));
}

std::vector<FrameRecord> FrameLog::snapshot() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::size_t FrameLog::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

// ---------------------------------------------------------------- Network

std::unique_ptr<Channel> make_recording(std::unique_ptr<Channel> inner, std::string local,
                                        std::string remote, FrameLog& log) {
  return std::make_unique<RecordingChannel>(std::move(inner), std::move(local), std::move(remote),
                                            log);
}

std::unique_ptr<Channel> Network::connect(const std::string& from, const std::string& to) {
  return make_recording(open(from, to), from, to, log_);
}

std::vector<std::string> Network::handler_errors() const {
  std::lock_guard lock(errors_mutex_);
  return errors_;
}

void Network::run_handler(const Handler& handler, Channel& channel, const std::string& service) {
  try {
    handler(channel);
  } catch (const ChannelClosed&) {
    // Peer went away; the handler's session is abandoned.
  } catch (const std::exception& e) {
    std::lock_guard lock(errors_mutex_);
    errors_.push_back(service + ": " + e.what());
  }
  channel.close();
}

InProcNetwork::~InProcNetwork() { shutdown(); }

void InProcNetwork::serve(const std::string& name, Handler handler) {
  std::lock_guard lock(mutex_);
  services_[name] = Service{std::move(handler)};
}

std::unique_ptr<Channel> InProcNetwork::open(const std::string&, const std::string& to) {
  std::lock_guard lock(mutex_);
  auto it = services_.find(to);
  if (it == services_.end()) throw ChannelClosed("no service named " + to);
  auto [client, server] = make_inproc_pair();
  Service service = it->second;
  threads_.emplace_back([this, service, to, ch = std::shared_ptr<Channel>(std::move(server))] {
    std::lock_guard busy(*service.busy);
    run_handler(service.handler, *ch, to);
  });
  return std::move(client);
}

void InProcNetwork::shutdown() {
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(mutex_);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
}

TcpNetwork::~TcpNetwork() { shutdown(); }

std::uint16_t TcpNetwork::serve_on(const std::string& name, std::uint16_t port, Handler handler) {
  auto listener = std::make_unique<TcpListener>(port);
  auto* l = listener.get();
  std::lock_guard lock(mutex_);
  endpoints_[name] = {"127.0.0.1", l->port()};
  threads_.emplace_back([this, l, name, handler = std::move(handler)] {
    for (;;) {
      std::unique_ptr<Channel> ch;
      try {
        ch = l->accept();
      } catch (const ChannelClosed&) {
        return;
      }
      run_handler(handler, *ch, name);
    }
  });
  listeners_.push_back(std::move(listener));
  return l->port();
}

void TcpNetwork::add_remote(const std::string& name, const std::string& host, std::uint16_t port) {
  std::lock_guard lock(mutex_);
  endpoints_[name] = {host, port};
}

std::uint16_t TcpNetwork::port_of(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = endpoints_.find(name);
  if (it == endpoints_.end()) throw std::out_of_range("no endpoint named " + name);
  return it->second.port;
}

std::unique_ptr<Channel> TcpNetwork::open(const std::string&, const std::string& to) {
  Endpoint ep;
  {
    std::lock_guard lock(mutex_);
    auto it = endpoints_.find(to);
    if (it == endpoints_.end()) throw ChannelClosed("no endpoint named " + to);
    ep = it->second;
  }
  return tcp_connect(ep.host, ep.port);
}

void TcpNetwork::shutdown() {
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(mutex_);
    for (auto& l : listeners_) l->shutdown();
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
  std::lock_guard lock(mutex_);
  listeners_.clear();
}

}  // namespace offline_euro
