#include "altroute/sim.hpp"
#include "support/brute_force.hpp"

#include <doctest.h>

#include <random>
#include <tuple>

using namespace altroute;
using namespace altroute::testing;

namespace {

struct Received {
    std::uint64_t at;
    NodeId from;
    MessageKind kind;
    std::uint32_t tag;

    friend bool operator==(const Received&, const Received&) = default;
};

/// Records everything it receives; optionally answers each request once.
class Recorder final : public Actor {
public:
    explicit Recorder(NodeId self, bool replies = false) : self_(self), replies_(replies) {}

    void receive(SimNetwork& net, const Message& msg) override {
        std::uint32_t tag = 0;
        if (const auto* c = std::get_if<CountPayload>(&msg.payload)) tag = c->subtree_size;
        log.push_back({net.now(), msg.from, msg.kind, tag});
        if (replies_ && !msg.is_reply) {
            net.send(Message{self_, msg.from, MessageKind::BlueReply, BlueReplyPayload{}, true});
        }
    }

    std::vector<Received> log;

private:
    NodeId self_;
    bool replies_;
};

/// Forwards a token around the ring forever.
class Spinner final : public Actor {
public:
    explicit Spinner(NodeId self, std::size_t n) : self_(self), n_(n) {}
    void receive(SimNetwork& net, const Message&) override {
        net.send(Message{self_, static_cast<NodeId>((self_ + 1) % n_), MessageKind::Wake, {}, false});
    }

private:
    NodeId self_;
    std::size_t n_;
};

Message tagged(NodeId from, NodeId to, std::uint32_t tag) {
    return Message{from, to, MessageKind::Count, CountPayload{tag}, false};
}

struct Bench {
    Graph graph;
    SimNetwork net;
    std::vector<Recorder> actors;

    explicit Bench(Graph g, SimConfig config = {}, bool replies = false) : graph(std::move(g)), net(graph, config) {
        for (NodeId v = 0; v < graph.node_count(); ++v) actors.emplace_back(v, replies);
        for (NodeId v = 0; v < graph.node_count(); ++v) net.attach(v, actors[v]);
    }
};

}  // namespace

TEST_CASE("a sent message is handled exactly once, one tick later") {
    Bench b(ring5());
    b.net.send(tagged(0, 1, 7));
    const SimStats stats = b.net.run_until_quiescent();
    REQUIRE(b.actors[1].log.size() == 1);
    CHECK(b.actors[1].log[0] == Received{1, 0, MessageKind::Count, 7});
    CHECK(stats.total_sent() == 1);
    CHECK(stats.total_delivered() == 1);
    CHECK(stats.ticks == 1);
    for (NodeId v : {0u, 2u, 3u, 4u}) CHECK(b.actors[v].log.empty());
}

TEST_CASE("same-tick sends arrive in send order") {
    Bench b(ring5());
    for (std::uint32_t tag = 1; tag <= 4; ++tag) b.net.send(tagged(tag % 2 == 0 ? 0 : 2, 1, tag));
    b.net.run_until_quiescent();
    REQUIRE(b.actors[1].log.size() == 4);
    for (std::uint32_t i = 0; i < 4; ++i) {
        CHECK(b.actors[1].log[i].tag == i + 1);
        CHECK(b.actors[1].log[i].at == 1 + i);  // one consumption per tick
    }
}

TEST_CASE("empty run reports nothing") {
    Bench b(ring5());
    const SimStats stats = b.net.run_until_quiescent();
    CHECK(stats.total_sent() == 0);
    CHECK(stats.ticks == 0);
    CHECK(stats.max_inbox_overall() == 0);
}

TEST_CASE("request and reply total two messages") {
    Bench b(ring5(), {}, true);
    b.net.send(Message{0, 4, MessageKind::BlueFetch, {}, false});
    const SimStats stats = b.net.run_until_quiescent();
    CHECK(stats.total_sent() == 2);
    CHECK(stats.total_delivered() == 2);
    CHECK(stats.sent_of(MessageKind::BlueFetch) == 1);
    CHECK(stats.sent_of(MessageKind::BlueReply) == 1);
    REQUIRE(b.actors[0].log.size() == 1);
    CHECK(b.actors[0].log[0].at == 2);
}

TEST_CASE("only physical links and self-delivery are allowed") {
    Bench b(ring5());
    CHECK_THROWS_WITH_AS(b.net.send(tagged(0, 2, 1)), "illegal topology bypass", std::logic_error);
    CHECK_NOTHROW(b.net.send(tagged(3, 3, 1)));
    b.net.run_until_quiescent();
    CHECK(b.actors[3].log.size() == 1);
}

TEST_CASE("bounded inbox rejects and retries after the configured delay") {
    SimConfig config;
    config.inbox_capacity = 1;
    config.retry_delay = 5;
    Bench b(ring5(), config);
    b.net.send(tagged(0, 1, 1));
    b.net.send(tagged(2, 1, 2));
    const SimStats stats = b.net.run_until_quiescent();

    REQUIRE(b.actors[1].log.size() == 2);
    CHECK(b.actors[1].log[0] == Received{1, 0, MessageKind::Count, 1});
    // Second delivery bounced at tick 1 and came back at tick 6.
    CHECK(b.actors[1].log[1] == Received{6, 2, MessageKind::Count, 2});
    CHECK(stats.rejections == 1);
    CHECK(stats.retries == 1);
    CHECK(stats.total_sent() == 3);
    CHECK(stats.total_delivered() == 2);
    CHECK(stats.max_inbox[1] == 1);
    CHECK(b.net.pending(2) == 0);
}

TEST_CASE("bounded inbox still delivers everything under load") {
    SimConfig config;
    config.inbox_capacity = 1;
    config.retry_delay = 3;
    Bench b(ring5(), config);
    for (std::uint32_t tag = 0; tag < 20; ++tag) b.net.send(tagged(tag % 2 == 0 ? 0 : 2, 1, tag));
    const SimStats stats = b.net.run_until_quiescent();
    CHECK(b.actors[1].log.size() == 20);
    CHECK(stats.total_delivered() == 20);
    CHECK(stats.total_sent() == 20 + stats.retries);
    CHECK(stats.retries > 0);
    CHECK(stats.max_inbox_overall() == 1);
    CHECK(b.net.pending(0) == 0);
    CHECK(b.net.pending(2) == 0);
}

TEST_CASE("tick budget stops a livelocked protocol") {
    const Graph g = ring5();
    SimConfig config;
    config.tick_budget = 100;
    SimNetwork net(g, config);
    std::vector<Spinner> spinners;
    for (NodeId v = 0; v < 5; ++v) spinners.emplace_back(v, 5);
    for (NodeId v = 0; v < 5; ++v) net.attach(v, spinners[v]);
    net.send(Message{0, 1, MessageKind::Wake, {}, false});
    CHECK_THROWS_WITH_AS(net.run_until_quiescent(), "non-quiescent protocol", std::runtime_error);
}

TEST_CASE("replays are identical, shuffled or not") {
    auto run = [](std::uint64_t shuffle) {
        SimConfig config;
        config.shuffle_seed = shuffle;
        config.inbox_capacity = 2;
        Bench b(generate_biconnected(12, 4, 3), config, true);
        std::mt19937_64 rng(99);
        for (int i = 0; i < 60; ++i) {
            const NodeId from = static_cast<NodeId>(rng() % 12);
            const auto nbrs = b.graph.neighbors(from);
            b.net.send(Message{from, nbrs[rng() % nbrs.size()].node, MessageKind::BlueFetch, {}, false});
        }
        SimStats stats = b.net.run_until_quiescent();
        std::vector<std::vector<Received>> logs;
        for (const auto& a : b.actors) logs.push_back(a.log);
        return std::pair{stats, logs};
    };
    CHECK(run(0) == run(0));
    CHECK(run(17) == run(17));
    const auto plain = run(0);
    const auto shuffled = run(17);
    CHECK(plain.first.total_delivered() == shuffled.first.total_delivered());
    CHECK(plain.second != shuffled.second);
}

TEST_CASE("stats text is flat name/value lines") {
    Bench b(ring5());
    b.net.send(tagged(0, 1, 1));
    const std::string text = b.net.run_until_quiescent().to_text("p.");
    CHECK(text.find("p.sent.count 1\n") != std::string::npos);
    CHECK(text.find("p.delivered.total 1\n") != std::string::npos);
    CHECK(text.find("p.retries 0\n") != std::string::npos);
}
