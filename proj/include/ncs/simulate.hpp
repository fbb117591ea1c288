// simulate.hpp - transmission-count experiments on seeded topologies:
// the storage (encode-and-distribute) phase, single-failure repair
// comparisons, and the CSV sweep across seeds / k / generator families.
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ncs/repair.hpp"

namespace ncs {

// Which topology nodes play which role in an (n, k) experiment: storage
// node storage_ids[j] stores the share of generator row j, sensor node
// sensor_ids[i] sources data index i.
struct RoleMap {
    std::vector<int> storage_ids;
    std::vector<int> sensor_ids;
};

// Default assignment: ascending node ids per role.
inline RoleMap default_role_map(const Topology& topo, std::size_t n, std::size_t k)
{
    RoleMap m;
    m.storage_ids = topo.ids_with_role(Role::STORAGE);
    m.sensor_ids = topo.ids_with_role(Role::SENSOR);
    if (m.storage_ids.size() < n)
        throw DimensionMismatch("topology has " + std::to_string(m.storage_ids.size())
                                + " storage nodes, need " + std::to_string(n));
    if (m.sensor_ids.size() < k)
        throw DimensionMismatch("topology has " + std::to_string(m.sensor_ids.size())
                                + " sensor nodes, need " + std::to_string(k));
    m.storage_ids.resize(n);
    m.sensor_ids.resize(k);
    return m;
}

// Distribution phase: sensor i streams its symbol to every storage node j
// with G[j][i] != 0, one transmission per hop of the (lexicographically
// smallest) shortest path. In the one-hop regime the total equals the
// nonzero count of G.
inline EnergyReport simulate_storage_phase(const Topology& topo, const GeneratorMatrix& g,
                                           const RoleMap& roles)
{
    EnergyReport report;
    for (std::size_t j = 0; j < g.n(); ++j)
        for (std::size_t i = 0; i < g.k(); ++i) {
            if (g.mat.at(j, i) == 0) continue;
            const std::vector<int> path =
                detail::lex_shortest_path(topo, roles.sensor_ids[i], roles.storage_ids[j], false);
            for (std::size_t hop = 0; hop + 1 < path.size(); ++hop)
                report.transmit(path[hop], path[hop + 1]);
        }
    report.finalize();
    return report;
}

// Places encoded shares on the storage nodes of the role map.
inline ShareMap place_shares(const GeneratorMatrix& g, const SourceData& data, const RoleMap& roles)
{
    ShareMap shares;
    const std::vector<Share> encoded = encode(g, data);
    for (std::size_t j = 0; j < encoded.size(); ++j) shares[roles.storage_ids[j]] = encoded[j];
    return shares;
}

struct RepairExperiment {
    RepairOutcome outcome;
    EnergyReport report;
};

// Fails one storage node and repairs it with the chosen method; the
// energy ledger covers the repair traffic only.
inline RepairExperiment simulate_repair_experiment(const Topology& topo, const GeneratorMatrix& g,
                                                   int failed_id, RepairMethod method,
                                                   RepairMode mode = RepairMode::EXACT,
                                                   std::uint64_t data_seed = 1,
                                                   std::size_t block_len = 4)
{
    const RoleMap roles = default_role_map(topo, g.n(), 0);
    const SourceData data = random_source(g.mat.field(), g.k(), block_len, data_seed);
    const ShareMap shares = place_shares(g, data, roles);
    MultiFailureResult r =
        multi_failure_repair(topo, {failed_id}, g, mode, method, shares);
    RepairExperiment ex;
    ex.outcome = std::move(r.outcomes.front());
    ex.report = ex.outcome.energy;
    return ex;
}

// --- the seeded comparison sweep ----------------------------------------

struct ComparisonRow {
    std::uint64_t seed = 0;
    std::size_t k = 0;
    std::string family;
    std::string method;
    int total_tx = 0;
    double stddev_tx = 0.0;
    int control_tx = 0;
};

struct ComparisonConfig {
    std::vector<std::uint64_t> seeds{1};
    std::size_t k_min = 3;
    std::size_t k_max = 8;
    std::vector<std::string> families{"sparsest", "rs", "rlnc"}; // storage-phase rows
    std::vector<RepairMethod> methods;                           // repair rows, if any
    bool storage_phase = true;

    int n_storage = 10;
    int n_sensor = 20;
    double width = 200.0;
    double height = 180.0;
    double radius = 60.0;

    int failed_index = 0; // which storage slot fails in repair rows
    RepairMode mode = RepairMode::EXACT;
};

// One generator per (family, n, k) over the minimal sufficient field.
inline GeneratorMatrix build_family(const std::string& family, std::size_t n, std::size_t k,
                                    const FieldPtr& field, std::uint64_t seed)
{
    if (family == "sparsest") return sparsest_generator(n, k, field);
    if (family == "rs") return paper_g1_g2(n, k, field);
    if (family == "rlnc") return rlnc_generator(n, k, field, seed);
    if (family == "theorem4") {
        GeneratorMatrix full = theorem4_generator(field, k);
        if (full.n() < n) throw TooLong("theorem4 family cannot reach n = " + std::to_string(n));
        GeneratorMatrix cut;
        cut.mat = GfMatrix(field, n, k);
        for (std::size_t i = 0; i < n; ++i) cut.mat.set_row(i, full.mat.row(i));
        cut.family = Family::THEOREM4;
        return cut;
    }
    throw ParseError("unknown family '" + family + "'");
}

inline FieldPtr minimal_field_for(std::size_t n, std::size_t k)
{
    const unsigned q = min_field_size(n, k);
    int m = 0;
    while ((1u << m) < q) ++m;
    return make_field(m);
}

inline std::vector<ComparisonRow> run_comparison(const ComparisonConfig& cfg)
{
    std::vector<ComparisonRow> rows;
    const bool repair_rows = !cfg.methods.empty();
    for (std::uint64_t seed : cfg.seeds) {
        const Topology topo = random_topology(seed, cfg.n_storage, cfg.n_sensor, cfg.width,
                                              cfg.height, cfg.radius, repair_rows);
        for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) {
            const std::size_t n = k + 2;
            const FieldPtr field = minimal_field_for(n, k);
            if (cfg.storage_phase) {
                const RoleMap roles = default_role_map(topo, n, k);
                for (const std::string& family : cfg.families) {
                    const GeneratorMatrix g =
                        build_family(family, n, k, field, seed * 1000003 + k);
                    const EnergyReport r = simulate_storage_phase(topo, g, roles);
                    rows.push_back({seed, k, family, "storage", r.total_tx, r.stddev_tx,
                                    r.control_tx});
                }
            }
            for (RepairMethod method : cfg.methods) {
                const GeneratorMatrix g = sparsest_generator(n, k, field);
                const RoleMap roles = default_role_map(topo, n, 0);
                const int failed = roles.storage_ids.at(static_cast<std::size_t>(cfg.failed_index));
                const RepairExperiment ex =
                    simulate_repair_experiment(topo, g, failed, method, cfg.mode, seed);
                rows.push_back({seed, k, "sparsest", to_string(method), ex.report.total_tx,
                                ex.report.stddev_tx, ex.report.control_tx});
            }
        }
    }
    return rows;
}

inline std::string to_csv(const std::vector<ComparisonRow>& rows)
{
    std::string out = "seed,k,family,method,total_tx,stddev_tx,control_tx\n";
    char buf[160];
    for (const ComparisonRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%llu,%zu,%s,%s,%d,%.6f,%d\n",
                      static_cast<unsigned long long>(r.seed), r.k, r.family.c_str(),
                      r.method.c_str(), r.total_tx, r.stddev_tx, r.control_tx);
        out += buf;
    }
    return out;
}

} // namespace ncs
