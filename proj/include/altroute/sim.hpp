#pragma once

#include "altroute/graph.hpp"
#include "altroute/messages.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace altroute {

class SimNetwork;

/// One simulated router. Handlers run on the simulation loop only.
class Actor {
public:
    virtual ~Actor() = default;
    virtual void receive(SimNetwork& net, const Message& msg) = 0;
};

struct SimConfig {
    /// Bounded-inbox mode when set: deliveries into a full inbox are rejected
    /// and the sender retries after `retry_delay` ticks.
    std::optional<std::size_t> inbox_capacity;
    std::uint64_t retry_delay = 8;
    std::uint64_t tick_budget = 1'000'000'000;
    /// Nonzero: same-tick deliveries are ordered by a draw from this seed
    /// instead of send order.
    std::uint64_t shuffle_seed = 0;
};

/// Counters for one run_until_quiescent() call, including the sends that
/// were issued before it started.
struct SimStats {
    std::array<std::uint64_t, kMessageKindCount> sent{};
    std::array<std::uint64_t, kMessageKindCount> delivered{};
    std::uint64_t rejections = 0;
    std::uint64_t retries = 0;
    std::uint64_t ticks = 0;
    std::uint64_t events = 0;
    std::vector<std::size_t> max_inbox;

    std::uint64_t sent_of(MessageKind k) const { return sent[static_cast<std::size_t>(k)]; }
    std::uint64_t delivered_of(MessageKind k) const { return delivered[static_cast<std::size_t>(k)]; }
    std::uint64_t total_sent() const;
    std::uint64_t total_delivered() const;
    std::size_t max_inbox_overall() const;

    SimStats& operator+=(const SimStats& other);

    /// Flat "name value" lines; `prefix` is prepended to each name.
    std::string to_text(const std::string& prefix = {}) const;

    friend bool operator==(const SimStats&, const SimStats&) = default;
};

/// Deterministic discrete-event network with one-tick link latency.
///
/// Deliveries land in the recipient's inbox; each node consumes one inbox
/// message per tick. Events at equal time fire in (deliveries before
/// consumption, tie key, send sequence) order.
class SimNetwork {
public:
    SimNetwork(const Graph& topology, SimConfig config = {});

    SimNetwork(const SimNetwork&) = delete;
    SimNetwork& operator=(const SimNetwork&) = delete;

    void attach(NodeId node, Actor& actor);

    /// Throws std::logic_error("illegal topology bypass") unless the endpoints
    /// are adjacent or identical.
    void send(Message msg);

    /// Throws std::runtime_error("non-quiescent protocol") past the tick budget.
    SimStats run_until_quiescent();

    std::uint64_t now() const { return now_; }
    const SimConfig& config() const { return config_; }
    std::size_t node_count() const { return actors_.size(); }
    /// Rejected messages currently parked in the sender's pending store.
    std::size_t pending(NodeId node) const { return pending_[node]; }

private:
    enum class EventType : std::uint8_t { Deliver = 0, Consume = 1 };

    struct Event {
        std::uint64_t time = 0;
        EventType type = EventType::Deliver;
        std::uint64_t tie = 0;
        std::uint64_t seq = 0;
        NodeId node = 0;
        Message msg;
        bool retry = false;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const;
    };

    void schedule(Event ev);
    void deliver(Event& ev);
    void consume(NodeId node);

    const Graph& topology_;
    SimConfig config_;
    std::vector<Actor*> actors_;
    std::vector<std::deque<Message>> inbox_;
    std::vector<bool> consume_scheduled_;
    std::vector<std::size_t> pending_;
    std::priority_queue<Event, std::vector<Event>, Later> events_;
    std::uint64_t now_ = 0;
    std::uint64_t seq_ = 0;
    std::mt19937_64 tie_rng_;
    SimStats current_;
};

}  // namespace altroute
