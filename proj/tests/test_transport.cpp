#include <atomic>

#include "doctest.h"
#include "offline_euro/scenario.hpp"

using namespace offline_euro;
using namespace offline_euro::wire;

namespace {

void echo_roundtrip(Channel& a, Channel& b) {
  Frame small{0x7E, {}};
  Frame big{0x21, Bytes(100000, 0xAB)};
  a.send(small);
  a.send(big);
  CHECK(b.receive() == small);
  CHECK(b.receive() == big);
  b.send(small);
  CHECK(a.receive() == small);
}

}  // namespace

TEST_CASE("in-process pair is ordered and bidirectional") {
  auto [a, b] = make_inproc_pair();
  echo_roundtrip(*a, *b);
  a->send(Frame{1, {1}});
  a->close();
  CHECK(b->receive() == Frame{1, {1}});  // queued frames survive close
  CHECK_THROWS_AS(b->receive(), ChannelClosed);
  CHECK_THROWS_AS(b->send(Frame{}), ChannelClosed);
}

TEST_CASE("socket channel carries frames byte-exactly") {
  TcpListener listener;
  CHECK(listener.port() != 0);
  std::unique_ptr<Channel> server;
  std::thread t([&] { server = listener.accept(); });
  auto client = tcp_connect("127.0.0.1", listener.port());
  t.join();
  echo_roundtrip(*client, *server);
  client->close();
  CHECK_THROWS_AS(server->receive(), ChannelClosed);
}

TEST_CASE("listener shutdown unblocks accept") {
  TcpListener listener;
  std::atomic<bool> closed{false};
  std::thread t([&] {
    try {
      listener.accept();
    } catch (const ChannelClosed&) {
      closed = true;
    }
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  listener.shutdown();
  t.join();
  CHECK(closed);
}

TEST_CASE("recording logs both directions from the connecting side") {
  for (auto kind : {TransportKind::kInProc, TransportKind::kSocket}) {
    CAPTURE(transport_name(kind));
    std::unique_ptr<Network> net;
    if (kind == TransportKind::kInProc) {
      net = std::make_unique<InProcNetwork>();
    } else {
      net = std::make_unique<TcpNetwork>();
    }
    net->serve("echo", [](Channel& ch) {
      for (;;) ch.send(ch.receive());
    });
    {
      auto ch = net->connect("client", "echo");
      ch->send(Frame{0x02, {}});
      CHECK(ch->receive() == Frame{0x02, {}});
    }
    net->shutdown();
    auto log = net->log().snapshot();
    REQUIRE(log.size() == 2);
    CHECK(log[0] == FrameRecord{"client", "echo", 0x02, {}});
    CHECK(log[1] == FrameRecord{"echo", "client", 0x02, {}});
    CHECK(net->handler_errors().empty());
  }
}

TEST_CASE("servers answer unknown tags and malformed payloads with ERR") {
  Deployment d(7, TransportKind::kInProc);
  for (const char* service : {Deployment::kTtpName, Deployment::kBankName}) {
    CAPTURE(service);
    auto ch = d.network().connect("probe", service);
    ch->send(Frame{0x55, {}});
    auto reply = decode(ch->receive());
    REQUIRE(std::holds_alternative<Err>(reply));
    CHECK(std::get<Err>(reply).code == ErrorCode::kProtocol);

    ch->send(Frame{static_cast<std::uint8_t>(Tag::kWithdrawInit), Bytes(47, 0)});
    reply = decode(ch->receive());
    REQUIRE(std::holds_alternative<Err>(reply));
    CHECK(std::get<Err>(reply).code == ErrorCode::kProtocol);

    // Still serving after the errors.
    ch->send_message(Register{"probe-" + std::string(service), G1::generator()});
    CHECK(std::holds_alternative<Ack>(decode(ch->receive())));
  }
}

TEST_CASE("bank refuses out-of-order withdrawal legs and unregistered users") {
  Deployment d(8, TransportKind::kInProc);
  auto ch = d.network().connect("probe", Deployment::kBankName);
  ch->send_message(WithdrawChallenge{Scalar::one()});
  auto reply = decode(ch->receive());
  REQUIRE(std::holds_alternative<Err>(reply));
  CHECK(std::get<Err>(reply).code == ErrorCode::kSession);

  ch->send_message(WithdrawInit{G1::generator().pow(Scalar::from_u64(5))});
  reply = decode(ch->receive());
  REQUIRE(std::holds_alternative<Err>(reply));
  CHECK(std::get<Err>(reply).code == ErrorCode::kUnregistered);
}

TEST_CASE("duplicate registration is reported over the wire") {
  Deployment d(9, TransportKind::kInProc);
  auto& u = d.add_user("U0");
  auto ch = d.network().connect("U0", Deployment::kTtpName);
  try {
    protocol::register_at(*ch, "U0-again", u.public_key());
    FAIL("duplicate registration accepted");
  } catch (const PartyError& e) {
    CHECK(e.code() == ErrorCode::kAlreadyRegistered);
  }
}

TEST_CASE("connection lost after TRANSFER_INIT leaves the spender wallet unchanged") {
  for (auto kind : {TransportKind::kInProc, TransportKind::kSocket}) {
    CAPTURE(transport_name(kind));
    Deployment d(10, kind);
    auto& a = d.add_user("A");
    auto& b = d.add_user("B");
    auto index = d.withdraw(a);

    // A payee that hangs up right after sending its randomization.
    d.network().serve("dropper", [&b](Channel& ch) {
      ch.send_message(TransferInit{b.prepare_receive()});
      ch.close();
    });
    auto before = a.wallet();
    {
      auto ch = d.network().connect("A", "dropper");
      CHECK_THROWS_AS(protocol::pay(*ch, a, index), ChannelClosed);
    }
    CHECK_FALSE(a.wallet()[index].spent);
    CHECK(a.wallet().size() == before.size());

    // The untouched entry can still be paid normally.
    d.pay(a, index, b);
    CHECK(a.wallet()[index].spent);
    CHECK(b.wallet().size() == 1);
  }
}

TEST_CASE("a rejected transfer does not mark the entry spent") {
  Deployment d(11, TransportKind::kInProc);
  auto& a = d.add_user("A");
  auto& b = d.add_user("B");
  auto index = d.withdraw(a);
  SpendOptions wrong;
  wrong.s_override = Scalar::from_u64(12345);
  try {
    d.pay(a, index, b, wrong);
    FAIL("payee accepted a broken link");
  } catch (const PartyError& e) {
    CHECK(e.code() == ErrorCode::kRejected);
    CHECK(std::string(e.what()).find("broken-link(knowledge)") != std::string::npos);
  }
  CHECK_FALSE(a.wallet()[index].spent);
  CHECK(b.wallet().empty());
}
