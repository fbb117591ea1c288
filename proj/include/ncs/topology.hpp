// topology.hpp - seeded unit-disk wireless topologies and hop-count
// routing. Nodes are storage or sensor; an edge exists iff the Euclidean
// distance is within the transmission radius.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "ncs/errors.hpp"

namespace ncs {

enum class Role { STORAGE, SENSOR, NEWCOMER };

inline const char* to_string(Role r)
{
    switch (r) {
    case Role::STORAGE: return "storage";
    case Role::SENSOR: return "sensor";
    case Role::NEWCOMER: return "newcomer";
    }
    return "?";
}

inline Role role_from_string(const std::string& s)
{
    if (s == "storage") return Role::STORAGE;
    if (s == "sensor") return Role::SENSOR;
    if (s == "newcomer") return Role::NEWCOMER;
    throw ParseError("unknown role '" + s + "'");
}

struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    Role role = Role::STORAGE;
    bool alive = true;
    // explicit experiment slot: generator row for storage nodes, data
    // index for sensors; -1 = assign by ascending id
    int assigned_index = -1;
};

class Topology {
  public:
    Topology() = default;

    Topology(std::vector<Node> nodes, double radius, double width, double height)
        : nodes_(std::move(nodes)), radius_(radius), width_(width), height_(height)
    {
        rebuild_adjacency();
    }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double radius() const noexcept { return radius_; }
    double width() const noexcept { return width_; }
    double height() const noexcept { return height_; }

    const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    Node& node(int id) { return nodes_.at(static_cast<std::size_t>(id)); }

    // Neighbor ids in ascending order (the tie-break everywhere).
    const std::vector<int>& neighbors(int id) const
    {
        return adjacency_.at(static_cast<std::size_t>(id));
    }

    bool adjacent(int a, int b) const
    {
        const auto& nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    std::vector<int> ids_with_role(Role role) const
    {
        std::vector<int> out;
        for (const Node& n : nodes_)
            if (n.role == role) out.push_back(n.id);
        return out;
    }

    void set_alive(int id, bool alive) { node(id).alive = alive; }

    // Connectivity over alive nodes, optionally restricted to a role set.
    bool connected(bool storage_only = false) const
    {
        std::vector<int> members;
        for (const Node& n : nodes_)
            if (n.alive && (!storage_only || n.role != Role::SENSOR)) members.push_back(n.id);
        if (members.empty()) return false;
        std::vector<bool> seen(nodes_.size(), false);
        std::vector<int> stack{members[0]};
        seen[static_cast<std::size_t>(members[0])] = true;
        std::size_t visited = 0;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++visited;
            for (int v : neighbors(u)) {
                const Node& nv = node(v);
                if (seen[static_cast<std::size_t>(v)] || !nv.alive) continue;
                if (storage_only && nv.role == Role::SENSOR) continue;
                seen[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
        }
        return visited == members.size();
    }

    void rebuild_adjacency()
    {
        adjacency_.assign(nodes_.size(), {});
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
                const double dx = nodes_[i].x - nodes_[j].x;
                const double dy = nodes_[i].y - nodes_[j].y;
                if (std::sqrt(dx * dx + dy * dy) <= radius_) {
                    adjacency_[i].push_back(nodes_[j].id);
                    adjacency_[j].push_back(nodes_[i].id);
                }
            }
        for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    }

  private:
    std::vector<Node> nodes_;
    double radius_ = 0.0;
    double width_ = 0.0;
    double height_ = 0.0;
    std::vector<std::vector<int>> adjacency_;
};

constexpr int kConnectivityRetryLimit = 10000;

// Uniform random deployment, regenerated until the whole graph is
// connected. Storage nodes take ids 0..n_storage-1, sensors follow.
// Deterministic per seed. Repair experiments additionally need the
// storage-only subgraph connected (the repair stage runs without the
// sensors); require_storage_connected folds that into the retry loop.
inline Topology random_topology(std::uint64_t seed, int n_storage, int n_sensor, double width,
                                double height, double radius,
                                bool require_storage_connected = false)
{
    if (n_storage <= 0 || n_sensor < 0 || radius <= 0.0)
        throw ParseError("topology needs positive node count and radius");
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng](double lo, double hi) {
        // 53-bit mantissa draw; avoids unspecified distribution behavior.
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        return lo + u * (hi - lo);
    };
    for (int attempt = 0; attempt < kConnectivityRetryLimit; ++attempt) {
        std::vector<Node> nodes;
        nodes.reserve(static_cast<std::size_t>(n_storage + n_sensor));
        for (int i = 0; i < n_storage + n_sensor; ++i) {
            Node n;
            n.id = i;
            n.x = uniform(0.0, width);
            n.y = uniform(0.0, height);
            n.role = i < n_storage ? Role::STORAGE : Role::SENSOR;
            nodes.push_back(n);
        }
        Topology topo(std::move(nodes), radius, width, height);
        if (topo.connected() && (!require_storage_connected || topo.connected(true)))
            return topo;
    }
    throw ConnectivityRetryExhausted("no connected deployment after "
                                     + std::to_string(kConnectivityRetryLimit) + " attempts");
}

namespace detail {

// BFS distances from src over alive nodes. storage_only drops sensor
// nodes from the relay graph (the repair stage operates without them).
inline std::vector<int> bfs_distances(const Topology& topo, int src, bool storage_only)
{
    std::vector<int> dist(topo.size(), -1);
    if (!topo.node(src).alive) return dist;
    std::queue<int> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : topo.neighbors(u)) {
            const Node& nv = topo.node(v);
            if (!nv.alive || dist[static_cast<std::size_t>(v)] >= 0) continue;
            if (storage_only && nv.role == Role::SENSOR) continue;
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
            q.push(v);
        }
    }
    return dist;
}

// Lexicographically smallest shortest path from a to b (node id sequence,
// endpoints included): walk from a, always taking the smallest-id neighbor
// that still lies on some shortest path.
inline std::vector<int> lex_shortest_path(const Topology& topo, int a, int b, bool storage_only)
{
    const std::vector<int> dist_to_b = bfs_distances(topo, b, storage_only);
    if (dist_to_b[static_cast<std::size_t>(a)] < 0)
        throw Unreachable("no route from node " + std::to_string(a) + " to node "
                          + std::to_string(b));
    std::vector<int> path{a};
    int cur = a;
    while (cur != b) {
        const int need = dist_to_b[static_cast<std::size_t>(cur)] - 1;
        for (int v : topo.neighbors(cur)) { // ascending ids
            if (topo.node(v).alive && dist_to_b[static_cast<std::size_t>(v)] == need
                && (!storage_only || topo.node(v).role != Role::SENSOR)) {
                cur = v;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

} // namespace detail

inline int shortest_hops(const Topology& topo, int a, int b)
{
    if (!topo.node(a).alive || !topo.node(b).alive)
        throw Unreachable("shortest_hops over a dead endpoint");
    if (a == b) return 0;
    const int d = detail::bfs_distances(topo, a, false)[static_cast<std::size_t>(b)];
    if (d < 0) throw Unreachable("nodes " + std::to_string(a) + " and " + std::to_string(b)
                                 + " are disconnected");
    return d;
}

// --- fixed test topologies ---------------------------------------------

// Newcomer plus a chain of k survivors: newcomer(0) - 1 - 2 - ... - k.
// All nodes are storage role; spacing just under the radius.
inline Topology chain_topology(int k, double radius = 10.0)
{
    std::vector<Node> nodes;
    for (int i = 0; i <= k; ++i) {
        Node n;
        n.id = i;
        n.x = static_cast<double>(i) * (radius * 0.9);
        n.y = 0.0;
        n.role = i == 0 ? Role::NEWCOMER : Role::STORAGE;
        nodes.push_back(n);
    }
    return Topology(std::move(nodes), radius, radius * (k + 1), 1.0);
}

} // namespace ncs
