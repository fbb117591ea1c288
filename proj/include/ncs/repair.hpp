// repair.hpp - network-coding iterative repair: repair-tree construction
// over the surviving storage nodes, coefficient solving for
// beta = sum x_i * alpha_i, re-encoding along the tree, the download-k
// traditional baseline, sequential multi-failure repair, and the
// multi-share-per-node accounting.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncs/energy.hpp"
#include "ncs/storage.hpp"
#include "ncs/topology.hpp"

namespace ncs {

enum class RepairMode { EXACT, FUNCTIONAL };
enum class RepairMethod { NC_ITERATIVE, TRADITIONAL };

inline const char* to_string(RepairMode m) { return m == RepairMode::EXACT ? "exact" : "functional"; }
inline const char* to_string(RepairMethod m)
{
    return m == RepairMethod::NC_ITERATIVE ? "nc" : "traditional";
}

using ShareMap = std::map<int, Share>; // storage node id -> held share

struct RepairTree {
    // Main path; route[0] is adjacent to the newcomer, the last entry is
    // the deepest node (the streaming starts there).
    std::vector<int> route;

    struct Branch {
        int node = 0;            // contributing survivor off the main path
        int attach = 0;          // tree node (or the newcomer) folding it in
        std::vector<int> path;   // node -> ... -> attach, hop by hop
    };
    std::vector<Branch> branches;

    std::vector<int> members() const
    {
        std::vector<int> out = route;
        for (const auto& b : branches) out.push_back(b.node);
        return out;
    }
};

struct RepairPlan {
    RepairMode mode = RepairMode::EXACT;
    int newcomer = 0;
    std::size_t replaced_index = 0; // share slot being regenerated
    RepairTree tree;
    std::vector<int> participants;           // deepest -> nearest, then branch nodes
    std::vector<std::vector<gf_t>> alphas;   // aligned with participants
    std::vector<gf_t> beta;
    std::vector<gf_t> coeffs;                // aligned with participants
};

struct RepairOutcome {
    Share new_share;
    EnergyReport energy;
    int transmissions_total = 0;
    int max_buffered = 0; // simultaneous payload buffers at the busiest node
};

namespace detail {

inline std::vector<int> alive_holder_ids(const Topology& topo, const ShareMap& shares, int newcomer)
{
    std::vector<int> out;
    for (const Node& n : topo.nodes())
        if (n.alive && n.role == Role::STORAGE && n.id != newcomer && shares.count(n.id))
            out.push_back(n.id);
    return out;
}

// BFS over the alive storage subgraph with one optional excluded node.
inline std::vector<int> storage_bfs(const Topology& topo, int src, int exclude = -1)
{
    std::vector<int> dist(topo.size(), -1);
    std::vector<int> queue{src};
    dist[static_cast<std::size_t>(src)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : topo.neighbors(u)) {
            const Node& nv = topo.node(v);
            if (v == exclude || !nv.alive || nv.role == Role::SENSOR) continue;
            if (dist[static_cast<std::size_t>(v)] >= 0) continue;
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

// Lexicographically smallest shortest path src -> dst over the alive
// storage subgraph, avoiding `exclude`.
inline std::vector<int> storage_lex_path(const Topology& topo, int src, int dst, int exclude = -1)
{
    const std::vector<int> dist = storage_bfs(topo, dst, exclude);
    if (dist[static_cast<std::size_t>(src)] < 0)
        throw Unreachable("no storage route from " + std::to_string(src) + " to "
                          + std::to_string(dst));
    std::vector<int> path{src};
    int cur = src;
    while (cur != dst) {
        const int need = dist[static_cast<std::size_t>(cur)] - 1;
        for (int v : topo.neighbors(cur)) {
            const Node& nv = topo.node(v);
            if (v == exclude || !nv.alive || nv.role == Role::SENSOR) continue;
            if (dist[static_cast<std::size_t>(v)] == need) {
                cur = v;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

} // namespace detail

// Stage 1-3 of the repair-tree construction protocol, simulated centrally:
// loop-free flooding enumerates simple routes over the surviving storage
// nodes; a route with k storage nodes is taken if one exists, otherwise
// the longest route is extended with k-r further survivors attached to
// tree nodes (deepest attachment points first, ties by lowest id).
inline RepairTree build_repair_tree(const Topology& topo, int newcomer, std::size_t k,
                                    const ShareMap& shares)
{
    const std::vector<int> holders = detail::alive_holder_ids(topo, shares, newcomer);
    std::vector<bool> is_holder(topo.size(), false);
    for (int h : holders) is_holder[static_cast<std::size_t>(h)] = true;

    bool has_storage_neighbor = false;
    for (int v : topo.neighbors(newcomer))
        if (is_holder[static_cast<std::size_t>(v)]) has_storage_neighbor = true;
    if (!has_storage_neighbor)
        throw Disconnected("newcomer " + std::to_string(newcomer)
                           + " has no surviving storage neighbor");

    const std::vector<int> dist = detail::storage_bfs(topo, newcomer);
    std::size_t reachable = 0;
    for (int h : holders)
        if (dist[static_cast<std::size_t>(h)] > 0) ++reachable;
    if (reachable < k)
        throw InsufficientSurvivors("only " + std::to_string(reachable)
                                    + " surviving storage nodes reachable, need "
                                    + std::to_string(k));

    // Depth-first route enumeration in lexicographic order; the first
    // k-node route found is the lexicographically smallest one. While
    // searching, remember the first (= smallest) route of each new
    // maximal length as the fallback.
    std::vector<int> route;
    std::vector<int> best_route;
    std::vector<bool> visited(topo.size(), false);
    std::function<bool(int)> extend = [&](int u) -> bool {
        visited[static_cast<std::size_t>(u)] = true;
        route.push_back(u);
        if (route.size() > best_route.size()) best_route = route;
        if (route.size() == k) return true;
        for (int v : topo.neighbors(u)) {
            if (!is_holder[static_cast<std::size_t>(v)] || visited[static_cast<std::size_t>(v)])
                continue;
            if (extend(v)) return true;
        }
        route.pop_back();
        visited[static_cast<std::size_t>(u)] = false;
        return false;
    };
    bool complete = false;
    for (int v : topo.neighbors(newcomer)) {
        if (is_holder[static_cast<std::size_t>(v)] && extend(v)) {
            complete = true;
            break;
        }
    }

    RepairTree tree;
    tree.route = complete ? route : best_route;

    if (!complete) {
        std::vector<bool> in_tree(topo.size(), false);
        for (int r : tree.route) in_tree[static_cast<std::size_t>(r)] = true;
        std::map<int, int> depth; // tree node -> depth, newcomer = 0
        depth[newcomer] = 0;
        for (std::size_t i = 0; i < tree.route.size(); ++i)
            depth[tree.route[i]] = static_cast<int>(i) + 1;

        struct Option {
            int hops;
            int attach_depth;
            int id;
            int attach;
        };
        std::vector<Option> options;
        for (int c : holders) {
            if (in_tree[static_cast<std::size_t>(c)] || dist[static_cast<std::size_t>(c)] <= 0)
                continue;
            // Nearest attachment: route nodes measured without relaying
            // through the newcomer; the newcomer itself is the fallback.
            const std::vector<int> dc = detail::storage_bfs(topo, c, newcomer);
            std::optional<Option> best;
            for (int r : tree.route) {
                const int d = dc[static_cast<std::size_t>(r)];
                if (d <= 0) continue;
                Option o{d, depth[r], c, r};
                if (!best || o.hops < best->hops
                    || (o.hops == best->hops && o.attach_depth > best->attach_depth))
                    best = o;
            }
            const int dn = dist[static_cast<std::size_t>(c)];
            Option to_newcomer{dn, 0, c, newcomer};
            if (!best || to_newcomer.hops < best->hops) best = to_newcomer;
            options.push_back(*best);
        }
        std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
            if (a.hops != b.hops) return a.hops < b.hops;
            if (a.attach_depth != b.attach_depth) return a.attach_depth > b.attach_depth;
            return a.id < b.id;
        });
        for (const Option& o : options) {
            if (tree.route.size() + tree.branches.size() >= k) break;
            RepairTree::Branch b;
            b.node = o.id;
            b.attach = o.attach;
            b.path = o.attach == newcomer ? detail::storage_lex_path(topo, o.id, newcomer)
                                          : detail::storage_lex_path(topo, o.id, o.attach, newcomer);
            tree.branches.push_back(std::move(b));
        }
        if (tree.route.size() + tree.branches.size() < k)
            throw InsufficientSurvivors("could not attach enough survivors to the repair tree");
    }
    return tree;
}

// sum_i x_i * alpha_i = beta; the alphas must be linearly independent.
inline std::vector<gf_t> solve_coefficients(const FieldPtr& field,
                                            const std::vector<std::vector<gf_t>>& alphas,
                                            const std::vector<gf_t>& beta)
{
    const std::size_t k = beta.size();
    if (alphas.size() != k) throw DimensionMismatch("need k coding vectors");
    GfMatrix a(field, k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (alphas[i].size() != k) throw DimensionMismatch("coding vector length mismatch");
        a.set_row(i, alphas[i]);
    }
    try {
        return solve_row(a, beta);
    } catch (const SingularMatrix&) {
        throw SingularSelection("coding vectors of the repair tree are linearly dependent");
    }
}

// Target coding vector for the newcomer. EXACT reuses the failed share's
// vector; FUNCTIONAL draws the lowest unused row of the generator's
// maximal-length extension that keeps {surviving vectors, beta} MDS. A
// matrix without a carried extension (imported or random) falls back to
// the raw maximal-length row set of its field.
inline std::vector<gf_t> choose_beta(RepairMode mode, const GeneratorMatrix& g,
                                     std::size_t failed_index,
                                     const std::vector<std::vector<gf_t>>& surviving_vectors,
                                     std::set<std::size_t>& used_extension_rows)
{
    if (mode == RepairMode::EXACT) return g.mat.row(failed_index);
    const FieldPtr& field = g.mat.field();
    const GfMatrix ext = g.extension ? *g.extension : theorem4_generator(field, g.k()).mat;
    for (std::size_t i = 0; i < ext.rows(); ++i) {
        if (used_extension_rows.count(i)) continue;
        const std::vector<gf_t> candidate = ext.row(i);
        bool in_use = false;
        for (const auto& v : surviving_vectors)
            if (v == candidate) in_use = true;
        if (in_use) continue;
        GfMatrix trial(field, surviving_vectors.size() + 1, g.k());
        for (std::size_t r = 0; r < surviving_vectors.size(); ++r)
            trial.set_row(r, surviving_vectors[r]);
        trial.set_row(surviving_vectors.size(), candidate);
        if (!find_mds_violation(trial)) {
            used_extension_rows.insert(i);
            return candidate;
        }
    }
    throw NoUnusedVector("no unused extension vector keeps the share set MDS");
}

// Control traffic model: one RNC broadcast by the newcomer, one forward
// and one feedback per reachable survivor, then k coefficient
// notifications. Kept out of the headline data-transmission totals.
inline int control_packet_count(const Topology& topo, int newcomer, const ShareMap& shares,
                                std::size_t k)
{
    const std::vector<int> dist = detail::storage_bfs(topo, newcomer);
    int reachable = 0;
    for (int h : detail::alive_holder_ids(topo, shares, newcomer))
        if (dist[static_cast<std::size_t>(h)] > 0) ++reachable;
    return 1 + 2 * reachable + static_cast<int>(k);
}

inline RepairPlan plan_iterative_repair(const Topology& topo, int newcomer, const ShareMap& shares,
                                        const std::vector<gf_t>& beta, RepairMode mode,
                                        std::size_t replaced_index, const FieldPtr& field)
{
    RepairPlan plan;
    plan.mode = mode;
    plan.newcomer = newcomer;
    plan.replaced_index = replaced_index;
    plan.beta = beta;
    plan.tree = build_repair_tree(topo, newcomer, beta.size(), shares);
    for (auto it = plan.tree.route.rbegin(); it != plan.tree.route.rend(); ++it)
        plan.participants.push_back(*it);
    for (const auto& b : plan.tree.branches) plan.participants.push_back(b.node);
    for (int id : plan.participants) {
        const auto found = shares.find(id);
        if (found == shares.end())
            throw MissingShare("tree node " + std::to_string(id) + " holds no share");
        plan.alphas.push_back(found->second.coding_vector);
    }
    plan.coeffs = solve_coefficients(field, plan.alphas, beta);
    return plan;
}

// Streams the re-encoded packet along the tree: the deepest node emits
// x_i * payload_i, every main-path node folds its branch packets and its
// own x_j * payload_j before forwarding, and the newcomer receives the
// finished beta combination. One transmission per tree edge.
inline RepairOutcome execute_iterative_repair(const Topology& topo, const RepairPlan& plan,
                                              const ShareMap& shares, const FieldPtr& field)
{
    const Field& gf = *field;
    const std::size_t k = plan.beta.size();
    std::map<int, gf_t> coeff_of;
    for (std::size_t i = 0; i < plan.participants.size(); ++i)
        coeff_of[plan.participants[i]] = plan.coeffs[i];

    const auto scaled_payload = [&](int node) {
        const Share& s = shares.at(node);
        std::vector<gf_t> p(s.payload.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = gf.mul(coeff_of.at(node), s.payload[i]);
        return p;
    };
    const auto fold = [&](std::vector<gf_t>& acc, const std::vector<gf_t>& add) {
        if (acc.empty()) acc.assign(add.size(), 0);
        for (std::size_t i = 0; i < add.size(); ++i) acc[i] = Field::add(acc[i], add[i]);
    };

    RepairOutcome out;
    std::map<int, std::vector<std::vector<gf_t>>> branch_inbox; // attach node -> packets
    std::map<int, int> buffered;                                // node -> concurrent payloads
    for (const auto& b : plan.tree.branches) {
        std::vector<gf_t> packet = scaled_payload(b.node);
        buffered[b.node] = std::max(buffered[b.node], 1);
        for (std::size_t hop = 0; hop + 1 < b.path.size(); ++hop)
            out.energy.transmit(b.path[hop], b.path[hop + 1]);
        branch_inbox[b.attach].push_back(std::move(packet));
        buffered[b.attach] += 1; // parked until the main packet passes
    }

    std::vector<gf_t> packet;
    for (std::size_t i = plan.tree.route.size(); i-- > 0;) {
        const int node = plan.tree.route[i];
        buffered[node] += 1;
        for (const auto& parked : branch_inbox[node]) fold(packet, parked);
        fold(packet, scaled_payload(node));
        const int next = (i == 0) ? plan.newcomer : plan.tree.route[i - 1];
        out.energy.transmit(node, next);
    }
    buffered[plan.newcomer] += 1;
    for (const auto& parked : branch_inbox[plan.newcomer]) fold(packet, parked);

    out.new_share.index = plan.replaced_index;
    out.new_share.coding_vector = plan.beta;
    out.new_share.payload = std::move(packet);
    out.energy.control_tx = control_packet_count(topo, plan.newcomer, shares, k);
    out.energy.finalize();
    out.transmissions_total = out.energy.total_tx;
    for (const auto& [node, n] : buffered) out.max_buffered = std::max(out.max_buffered, n);
    return out;
}

inline RepairOutcome iterative_repair(const Topology& topo, int newcomer, const ShareMap& shares,
                                      const std::vector<gf_t>& beta, RepairMode mode,
                                      std::size_t replaced_index, const FieldPtr& field)
{
    const RepairPlan plan =
        plan_iterative_repair(topo, newcomer, shares, beta, mode, replaced_index, field);
    return execute_iterative_repair(topo, plan, shares, field);
}

// Baseline: the newcomer downloads the k hop-nearest shares (ties by
// lowest id), each travelling its shortest path store-and-forward, then
// decodes and re-encodes the target vector locally.
inline RepairOutcome traditional_repair(const Topology& topo, int newcomer, const ShareMap& shares,
                                        const std::vector<gf_t>& beta, std::size_t replaced_index,
                                        const FieldPtr& field)
{
    const std::size_t k = beta.size();
    const std::vector<int> holders = detail::alive_holder_ids(topo, shares, newcomer);
    const std::vector<int> dist = detail::storage_bfs(topo, newcomer);
    std::vector<int> reachable;
    for (int h : holders)
        if (dist[static_cast<std::size_t>(h)] > 0) reachable.push_back(h);
    if (reachable.size() < k)
        throw InsufficientSurvivors("only " + std::to_string(reachable.size())
                                    + " survivors reachable, need " + std::to_string(k));
    std::sort(reachable.begin(), reachable.end(), [&](int a, int b) {
        const int da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
        return da != db ? da < db : a < b;
    });
    reachable.resize(k);

    RepairOutcome out;
    std::vector<Share> downloaded;
    for (int h : reachable) {
        const std::vector<int> path = detail::storage_lex_path(topo, h, newcomer);
        for (std::size_t hop = 0; hop + 1 < path.size(); ++hop)
            out.energy.transmit(path[hop], path[hop + 1]);
        downloaded.push_back(shares.at(h));
    }
    const SourceData recovered = decode(field, downloaded);
    out.new_share.index = replaced_index;
    out.new_share.coding_vector = beta;
    out.new_share.payload = combine_blocks(*field, beta, recovered);
    out.energy.control_tx = static_cast<int>(k);
    out.energy.finalize();
    out.transmissions_total = out.energy.total_tx;
    out.max_buffered = static_cast<int>(k); // newcomer stores all k sub-files
    return out;
}

struct MultiFailureResult {
    std::vector<RepairOutcome> outcomes;
    ShareMap shares;   // final share placement
    Topology topology; // with every failed node restored
};

// Sequential repair of several failures in ascending id order; each
// completed newcomer serves as a survivor for the remaining repairs.
inline MultiFailureResult multi_failure_repair(Topology topo, std::vector<int> failed_ids,
                                               const GeneratorMatrix& g, RepairMode mode,
                                               RepairMethod method, ShareMap shares)
{
    if (failed_ids.size() > g.n() - g.k())
        throw TooManyFailures("at most n-k = " + std::to_string(g.n() - g.k())
                              + " failures are repairable, got "
                              + std::to_string(failed_ids.size()));
    std::sort(failed_ids.begin(), failed_ids.end());
    const FieldPtr& field = g.mat.field();

    for (int f : failed_ids) {
        if (!shares.count(f)) throw MissingShare("failed node " + std::to_string(f) + " holds no share");
        topo.set_alive(f, false);
        shares.erase(f);
    }

    std::set<std::size_t> used_extension;
    MultiFailureResult result;
    for (int f : failed_ids) {
        topo.set_alive(f, true); // the newcomer takes the failed node's place
        std::vector<std::vector<gf_t>> surviving;
        for (const auto& [node, share] : shares) surviving.push_back(share.coding_vector);
        const std::vector<gf_t> beta =
            choose_beta(mode, g, static_cast<std::size_t>(f), surviving, used_extension);
        RepairOutcome outcome =
            method == RepairMethod::NC_ITERATIVE
                ? iterative_repair(topo, f, shares, beta, mode, static_cast<std::size_t>(f), field)
                : traditional_repair(topo, f, shares, beta, static_cast<std::size_t>(f), field);
        shares[f] = outcome.new_share;
        result.outcomes.push_back(std::move(outcome));
    }
    result.shares = std::move(shares);
    result.topology = std::move(topo);
    return result;
}

// --- multiple shares per node -------------------------------------------

// node id -> shares held there. Used for the storage-server scenario
// where fewer than n servers hold the n sub-files.
using Assignment = std::map<int, std::vector<Share>>;

struct MultiShareOutcome {
    std::vector<Share> new_shares;
    std::map<std::size_t, int> placement; // share index -> node that now holds it
    EnergyReport energy;
    int transmissions_total = 0;
    int traditional_total = 0; // download-per-sub-file baseline, same placement
};

// Regenerates every share of the failed node. Combinations of co-located
// shares cost nothing; each participating remote server transmits one
// folded packet along a server chain ending at the regeneration target.
// New shares go to the given vacant nodes first, then to the survivors
// holding the fewest shares.
inline MultiShareOutcome multi_share_repair(const Assignment& assignment, int failed_node,
                                            const GeneratorMatrix& g,
                                            std::vector<int> vacant_newcomers = {})
{
    const auto lost_it = assignment.find(failed_node);
    if (lost_it == assignment.end() || lost_it->second.empty())
        throw MissingShare("failed node " + std::to_string(failed_node) + " holds no share");
    const std::vector<Share>& lost = lost_it->second;
    const std::size_t k = g.k();
    const FieldPtr& field = g.mat.field();

    Assignment live;
    std::size_t survivor_share_count = 0;
    for (const auto& [node, held] : assignment) {
        if (node == failed_node) continue;
        live[node] = held;
        survivor_share_count += held.size();
    }
    if (survivor_share_count < k)
        throw InsufficientShares("survivors hold " + std::to_string(survivor_share_count)
                                 + " shares, need " + std::to_string(k));

    MultiShareOutcome out;
    for (const Share& lost_share : lost) {
        // Regeneration target: vacant newcomer if available, else the
        // survivor currently holding the fewest shares (lowest id ties).
        int target;
        if (!vacant_newcomers.empty()) {
            target = vacant_newcomers.front();
            vacant_newcomers.erase(vacant_newcomers.begin());
            live[target]; // now participates with (so far) zero shares
        } else {
            target = -1;
            std::size_t best = SIZE_MAX;
            for (const auto& [node, held] : live)
                if (held.size() < best) {
                    best = held.size();
                    target = node;
                }
        }

        // Pick k independent coding vectors: local shares first (free),
        // then whole servers by descending share count, ties lowest id.
        std::vector<const Share*> chosen;
        for (const Share& s : live[target])
            if (chosen.size() < k) chosen.push_back(&s);
        std::vector<int> servers;
        for (const auto& [node, held] : live)
            if (node != target && !held.empty()) servers.push_back(node);
        std::sort(servers.begin(), servers.end(), [&](int a, int b) {
            if (live[a].size() != live[b].size()) return live[a].size() > live[b].size();
            return a < b;
        });
        std::vector<int> remote;
        for (int s : servers) {
            if (chosen.size() >= k) break;
            bool used = false;
            for (const Share& sh : live[s]) {
                if (chosen.size() >= k) break;
                chosen.push_back(&sh);
                used = true;
            }
            if (used) remote.push_back(s);
        }
        if (chosen.size() < k) throw InsufficientShares("not enough shares to regenerate");

        std::vector<std::vector<gf_t>> alphas;
        for (const Share* s : chosen) alphas.push_back(s->coding_vector);
        const std::vector<gf_t> beta = lost_share.coding_vector;
        const std::vector<gf_t> x = solve_coefficients(field, alphas, beta);

        // Payload: fold server by server along the chain remote[0] ->
        // remote[1] -> ... -> target; every server sends once.
        const Field& gf = *field;
        std::map<const Share*, gf_t> coeff;
        for (std::size_t i = 0; i < chosen.size(); ++i) coeff[chosen[i]] = x[i];
        const auto server_contribution = [&](int node) {
            std::vector<gf_t> acc;
            for (const Share& s : live[node]) {
                const auto it = coeff.find(&s);
                if (it == coeff.end()) continue;
                if (acc.empty()) acc.assign(s.payload.size(), 0);
                for (std::size_t i = 0; i < s.payload.size(); ++i)
                    acc[i] = Field::add(acc[i], gf.mul(it->second, s.payload[i]));
            }
            return acc;
        };

        std::vector<gf_t> packet;
        const auto fold = [&](std::vector<gf_t>& acc, const std::vector<gf_t>& add) {
            if (add.empty()) return;
            if (acc.empty()) acc.assign(add.size(), 0);
            for (std::size_t i = 0; i < add.size(); ++i) acc[i] = Field::add(acc[i], add[i]);
        };
        for (std::size_t i = 0; i < remote.size(); ++i) {
            fold(packet, server_contribution(remote[i]));
            const int next = (i + 1 < remote.size()) ? remote[i + 1] : target;
            out.energy.transmit(remote[i], next);
        }
        fold(packet, server_contribution(target));

        Share regenerated;
        regenerated.index = lost_share.index;
        regenerated.coding_vector = beta;
        regenerated.payload = std::move(packet);
        live[target].push_back(regenerated);
        out.placement[lost_share.index] = target;
        out.new_shares.push_back(std::move(regenerated));

        // Baseline: each of the k sub-files travels to the target on its
        // own (local ones are free, no folding en route).
        std::size_t local_available = 0;
        for (const Share& s : live[target])
            if (s.coding_vector != beta) ++local_available;
        // The baseline may choose any k shares; remote downloads needed:
        const std::size_t local_used = std::min(local_available, k);
        out.traditional_total += static_cast<int>(k - local_used);
    }
    out.energy.control_tx = static_cast<int>(k * lost.size());
    out.energy.finalize();
    out.transmissions_total = out.energy.total_tx;
    return out;
}

} // namespace ncs
