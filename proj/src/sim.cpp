#include "altroute/sim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace altroute {

std::uint64_t SimStats::total_sent() const { return std::accumulate(sent.begin(), sent.end(), std::uint64_t{0}); }

std::uint64_t SimStats::total_delivered() const {
    return std::accumulate(delivered.begin(), delivered.end(), std::uint64_t{0});
}

std::size_t SimStats::max_inbox_overall() const {
    return max_inbox.empty() ? 0 : *std::max_element(max_inbox.begin(), max_inbox.end());
}

SimStats& SimStats::operator+=(const SimStats& other) {
    for (std::size_t k = 0; k < kMessageKindCount; ++k) {
        sent[k] += other.sent[k];
        delivered[k] += other.delivered[k];
    }
    rejections += other.rejections;
    retries += other.retries;
    ticks += other.ticks;
    events += other.events;
    if (max_inbox.size() < other.max_inbox.size()) max_inbox.resize(other.max_inbox.size(), 0);
    for (std::size_t i = 0; i < other.max_inbox.size(); ++i) max_inbox[i] = std::max(max_inbox[i], other.max_inbox[i]);
    return *this;
}

std::string SimStats::to_text(const std::string& prefix) const {
    std::string out;
    auto line = [&](std::string_view name, std::uint64_t value) {
        out += prefix;
        out += name;
        out += ' ';
        out += std::to_string(value);
        out += '\n';
    };
    for (std::size_t k = 0; k < kMessageKindCount; ++k) {
        std::string name(to_string(static_cast<MessageKind>(k)));
        if (sent[k] != 0) line("sent." + name, sent[k]);
        if (delivered[k] != 0) line("delivered." + name, delivered[k]);
    }
    line("sent.total", total_sent());
    line("delivered.total", total_delivered());
    line("rejections", rejections);
    line("retries", retries);
    line("ticks", ticks);
    line("max_inbox", max_inbox_overall());
    return out;
}

bool SimNetwork::Later::operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.type, a.tie, a.seq) > std::tie(b.time, b.type, b.tie, b.seq);
}

SimNetwork::SimNetwork(const Graph& topology, SimConfig config)
    : topology_(topology),
      config_(config),
      actors_(topology.node_count(), nullptr),
      inbox_(topology.node_count()),
      consume_scheduled_(topology.node_count(), false),
      pending_(topology.node_count(), 0),
      tie_rng_(config.shuffle_seed) {
    if (config_.inbox_capacity && *config_.inbox_capacity == 0) {
        throw std::invalid_argument("inbox capacity must be positive");
    }
    if (config_.retry_delay == 0) throw std::invalid_argument("retry delay must be positive");
    current_.max_inbox.assign(topology.node_count(), 0);
}

void SimNetwork::attach(NodeId node, Actor& actor) { actors_.at(node) = &actor; }

void SimNetwork::schedule(Event ev) {
    ev.seq = seq_++;
    ev.tie = config_.shuffle_seed != 0 && ev.type == EventType::Deliver ? tie_rng_() : 0;
    events_.push(std::move(ev));
}

void SimNetwork::send(Message msg) {
    if (msg.from >= actors_.size() || msg.to >= actors_.size()) throw std::out_of_range("message endpoint out of range");
    if (msg.from != msg.to && !topology_.has_edge(msg.from, msg.to)) {
        throw std::logic_error("illegal topology bypass");
    }
    ++current_.sent[static_cast<std::size_t>(msg.kind)];
    Event ev;
    ev.time = now_ + 1;
    ev.type = EventType::Deliver;
    ev.node = msg.to;
    ev.msg = std::move(msg);
    schedule(std::move(ev));
}

void SimNetwork::deliver(Event& ev) {
    const NodeId to = ev.node;
    auto& inbox = inbox_[to];
    if (config_.inbox_capacity && inbox.size() >= *config_.inbox_capacity) {
        // The sender keeps the message in its pending store and tries again later.
        ++current_.rejections;
        ++current_.retries;
        ++current_.sent[static_cast<std::size_t>(ev.msg.kind)];
        if (!ev.retry) ++pending_[ev.msg.from];
        Event again;
        again.time = now_ + config_.retry_delay;
        again.type = EventType::Deliver;
        again.node = to;
        again.msg = std::move(ev.msg);
        again.retry = true;
        schedule(std::move(again));
        return;
    }
    if (ev.retry) --pending_[ev.msg.from];
    inbox.push_back(std::move(ev.msg));
    current_.max_inbox[to] = std::max(current_.max_inbox[to], inbox.size());
    if (!consume_scheduled_[to]) {
        consume_scheduled_[to] = true;
        Event c;
        c.time = now_;
        c.type = EventType::Consume;
        c.node = to;
        schedule(std::move(c));
    }
}

void SimNetwork::consume(NodeId node) {
    auto& inbox = inbox_[node];
    Message msg = std::move(inbox.front());
    inbox.pop_front();
    ++current_.delivered[static_cast<std::size_t>(msg.kind)];
    Actor* actor = actors_[node];
    if (actor == nullptr) throw std::logic_error("no actor attached to node " + std::to_string(node));
    actor->receive(*this, msg);
    if (inbox.empty()) {
        consume_scheduled_[node] = false;
    } else {
        Event c;
        c.time = now_ + 1;
        c.type = EventType::Consume;
        c.node = node;
        schedule(std::move(c));
    }
}

SimStats SimNetwork::run_until_quiescent() {
    const std::uint64_t start = now_;
    while (!events_.empty()) {
        Event ev = events_.top();
        events_.pop();
        if (ev.time - start > config_.tick_budget) {
            throw std::runtime_error("non-quiescent protocol");
        }
        now_ = ev.time;
        ++current_.events;
        if (ev.type == EventType::Deliver) {
            deliver(ev);
        } else {
            consume(ev.node);
        }
    }
    SimStats done = std::move(current_);
    done.ticks = now_ - start;
    current_ = SimStats{};
    current_.max_inbox.assign(actors_.size(), 0);
    return done;
}

}  // namespace altroute
