#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "flipcycles/errors.hpp"

#ifdef FLIPCYCLES_HAVE_OPENMP
#include <omp.h>
#endif

namespace flipcycles {

enum class Execution { serial, parallel };

constexpr std::size_t kDefaultVertexCap = 200000;

int parallel_threads();
void set_parallel_threads(int threads);

struct FlipEdge {
    int u = 0;
    int v = 0;
    std::string label;
    friend bool operator==(const FlipEdge&, const FlipEdge&) = default;
};

// Vertices are sorted by (rank, key); edges by (u, v) with u < v.
template <class State>
struct FlipGraph {
    std::vector<State> vertices;
    std::vector<std::string> keys;
    std::vector<int> rank;
    std::vector<FlipEdge> edges;
    int min_vertex = 0;
    int max_vertex = 0;

    std::size_t size() const { return vertices.size(); }
    int find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (const auto& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }
    int max_rank() const { return rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()); }

    std::unordered_map<std::string, int> index;
};

namespace detail {

template <class State>
struct Discovered {
    std::string key;
    State state;
    std::string label;
};

class FirstError {
public:
    void capture() {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!error_) error_ = std::current_exception();
    }
    void rethrow() {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

inline std::uint64_t pair_code(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Renumbers vertices by (rank, key) so the result does not depend on the
// discovery schedule.
template <class State>
FlipGraph<State> canonicalize(std::vector<State> states, std::vector<std::string> keys, std::vector<int> ranks,
                              const std::vector<FlipEdge>& raw_edges) {
    const std::size_t count = states.size();
    std::vector<int> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
        return keys[a] < keys[b];
    });
    std::vector<int> new_id(count);
    for (std::size_t i = 0; i < count; ++i) new_id[order[i]] = static_cast<int>(i);

    FlipGraph<State> g;
    g.vertices.reserve(count);
    g.keys.reserve(count);
    g.rank.reserve(count);
    for (int old : order) {
        g.vertices.push_back(std::move(states[old]));
        g.keys.push_back(std::move(keys[old]));
        g.rank.push_back(ranks[old]);
    }
    g.edges.reserve(raw_edges.size());
    for (const auto& e : raw_edges) {
        int a = new_id[e.u], b = new_id[e.v];
        if (a > b) std::swap(a, b);
        g.edges.push_back({a, b, e.label});
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const FlipEdge& x, const FlipEdge& y) {
        return std::pair(x.u, x.v) < std::pair(y.u, y.v);
    });
    for (std::size_t i = 0; i < count; ++i) g.index.emplace(g.keys[i], static_cast<int>(i));
    g.min_vertex = 0;
    g.max_vertex = count ? static_cast<int>(count) - 1 : 0;
    return g;
}

}  // namespace detail

// Plain FIFO breadth-first search; the reference the parallel kernel is
// tested against. `expand` returns (key, state, label) triples and labels
// must not depend on the direction an edge is traversed.
template <class State, class KeyFn, class ExpandFn>
FlipGraph<State> bfs_serial(State root, KeyFn key_of, ExpandFn expand, std::size_t cap) {
    std::vector<State> states;
    std::vector<std::string> keys;
    std::vector<int> ranks;
    std::vector<FlipEdge> edges;
    std::unordered_map<std::string, int> seen;
    std::unordered_set<std::uint64_t> edge_seen;

    keys.push_back(key_of(root));
    seen.emplace(keys.back(), 0);
    states.push_back(std::move(root));
    ranks.push_back(0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        std::vector<detail::Discovered<State>> out = expand(states[u]);
        for (auto& nb : out) {
            auto [it, fresh] = seen.emplace(nb.key, static_cast<int>(states.size()));
            int v = it->second;
            if (fresh) {
                if (states.size() >= cap) throw ResourceError("vertex cap exceeded", states.size());
                keys.push_back(std::move(nb.key));
                states.push_back(std::move(nb.state));
                ranks.push_back(ranks[u] + 1);
                queue.push_back(v);
            }
            if (edge_seen.insert(detail::pair_code(u, v)).second) edges.push_back({u, v, std::move(nb.label)});
        }
    }
    return detail::canonicalize(std::move(states), std::move(keys), std::move(ranks), edges);
}

// Level-synchronous BFS. Frontier expansion runs in parallel; merging is
// serial in frontier order, so discovery ids are deterministic as well.
template <class State, class KeyFn, class ExpandFn>
FlipGraph<State> bfs_levels(State root, KeyFn key_of, ExpandFn expand, Execution exec, std::size_t cap) {
    std::vector<State> states;
    std::vector<std::string> keys;
    std::vector<int> ranks;
    std::vector<FlipEdge> edges;
    std::unordered_map<std::string, int> seen;
    std::unordered_set<std::uint64_t> edge_seen;

    keys.push_back(key_of(root));
    seen.emplace(keys.back(), 0);
    states.push_back(std::move(root));
    ranks.push_back(0);
    std::vector<int> frontier{0};
    int level = 0;
    while (!frontier.empty()) {
        const long long width = static_cast<long long>(frontier.size());
        std::vector<std::vector<detail::Discovered<State>>> found(frontier.size());
        detail::FirstError errors;
        if (exec == Execution::parallel) {
#ifdef FLIPCYCLES_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(parallel_threads())
#endif
            for (long long i = 0; i < width; ++i) {
                // Exceptions must not escape an OpenMP region.
                try {
                    found[i] = expand(states[frontier[i]]);
                } catch (...) {
                    errors.capture();
                }
            }
            errors.rethrow();
        } else {
            for (long long i = 0; i < width; ++i) found[i] = expand(states[frontier[i]]);
        }
        std::vector<int> next;
        for (long long i = 0; i < width; ++i) {
            const int u = frontier[i];
            for (auto& nb : found[i]) {
                auto [it, fresh] = seen.emplace(nb.key, static_cast<int>(states.size()));
                int v = it->second;
                if (fresh) {
                    if (states.size() >= cap) throw ResourceError("vertex cap exceeded", states.size());
                    keys.push_back(std::move(nb.key));
                    states.push_back(std::move(nb.state));
                    ranks.push_back(level + 1);
                    next.push_back(v);
                }
                if (edge_seen.insert(detail::pair_code(u, v)).second) edges.push_back({u, v, std::move(nb.label)});
            }
        }
        frontier = std::move(next);
        ++level;
    }
    return detail::canonicalize(std::move(states), std::move(keys), std::move(ranks), edges);
}

// Runs body(i) for i in [0, count) and concatenates the per-index results
// in index order.
template <class T, class Body>
std::vector<T> parallel_collect(std::size_t count, Body body, Execution exec) {
    std::vector<std::vector<T>> parts(count);
    detail::FirstError errors;
    const long long total = static_cast<long long>(count);
    if (exec == Execution::parallel) {
#ifdef FLIPCYCLES_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(parallel_threads())
#endif
        for (long long i = 0; i < total; ++i) {
            try {
                parts[i] = body(static_cast<std::size_t>(i));
            } catch (...) {
                errors.capture();
            }
        }
        errors.rethrow();
    } else {
        for (long long i = 0; i < total; ++i) parts[i] = body(static_cast<std::size_t>(i));
    }
    std::vector<T> out;
    for (auto& p : parts)
        for (auto& x : p) out.push_back(std::move(x));
    return out;
}

}  // namespace flipcycles
