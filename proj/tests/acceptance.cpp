// acceptance.cpp - end-to-end acceptance suite. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ncs/ncs.hpp"
#include "oracle.hpp"

using namespace ncs;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define EXPECT(cond)                                                            \
    do {                                                                        \
        if (!(cond)) throw Failure("expectation failed: " #cond);               \
    } while (0)

#define EXPECT_MSG(cond, msg)                                                   \
    do {                                                                        \
        if (!(cond)) throw Failure(std::string("expectation failed: ") + (msg)); \
    } while (0)

// --- criterion 1: the worked (5, 3) sparsest generator --------------------

void criterion_sparsest_worked_example()
{
    auto f = make_field(3, 0xB);
    const GeneratorMatrix m = rs_generator(5, 3, f, {1, 2, 3, 4, 5});
    const GeneratorMatrix g = sparsify(m, {0, 1, 2}); // pivots t = 1, 2, 3
    EXPECT(g.mat.row(0) == std::vector<gf_t>({1, 0, 0}));
    EXPECT(g.mat.row(1) == std::vector<gf_t>({0, 1, 0}));
    EXPECT(g.mat.row(2) == std::vector<gf_t>({0, 0, 1}));
    const auto as_set = [&](std::size_t r) {
        const auto row = g.mat.row(r);
        return std::multiset<gf_t>(row.begin(), row.end());
    };
    EXPECT(as_set(3) == std::multiset<gf_t>({4, 2, 7}));
    EXPECT(as_set(4) == std::multiset<gf_t>({5, 3, 7}));
    EXPECT(is_mds(g));
}

// --- criterion 2: sparsity maximality over 3 <= k < n <= 10 ---------------

void criterion_sparsity_maximality()
{
    for (std::size_t n = 4; n <= 10; ++n)
        for (std::size_t k = 3; k < n; ++k) {
            const unsigned q = min_field_size(n, k);
            int m = 0;
            while ((1u << m) < q) ++m;
            const GeneratorMatrix g = sparsest_generator(n, k, make_field(m));
            const WeightProfile p = weight_profile(g);
            EXPECT_MSG(p.zero_count == k * (k - 1),
                       "zero count for (" + std::to_string(n) + "," + std::to_string(k) + ")");
            EXPECT(p.total_weight == k * (n - k + 1));
            for (std::size_t w : p.column_weights) EXPECT(w == n - k + 1);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (g.mat.at(i, j) == 0) continue;
                    GeneratorMatrix mutated = g;
                    mutated.mat.at(i, j) = 0;
                    mutated.mds = MdsStatus::UNVERIFIED;
                    EXPECT_MSG(!is_mds(mutated), "an extra zero must break the MDS property");
                }
        }
}

// --- criterion 3: maximal-length construction sizes -------------------------

void criterion_maximal_length()
{
    for (int m : {1, 2, 3, 4}) {
        auto f = make_field(m);
        const unsigned q = f->q();
        for (std::size_t k = 1; k < q; ++k) {
            const GeneratorMatrix g = theorem4_generator(f, k);
            const bool special = k >= 2 && (k == 3 || k == q - 1);
            EXPECT_MSG(g.n() == q + 1 + (special ? 1 : 0),
                       "row count over GF(" + std::to_string(q) + "), k = " + std::to_string(k));
            EXPECT_MSG(is_mds(g), "MDS over GF(" + std::to_string(q) + "), k = "
                                      + std::to_string(k));
        }
        if (q >= 4) {
            EXPECT(theorem4_generator(f, 3).n() == q + 2);
            EXPECT(theorem4_generator(f, q - 1).n() == q + 2);
        }
    }
}

// --- criterion 4: jump Vandermonde <=> point-sum equivalence ----------------

void criterion_jump_vandermonde()
{
    for (int m : {3, 4}) {
        auto f = make_field(m);
        const unsigned q = f->q();
        for (std::size_t r = 2; r <= q - 1; ++r) { // r = k - 1 points
            const std::size_t k = r + 1;
            for (const auto& s : oracle::subsets(q - 1, r)) {
                std::vector<gf_t> pts;
                for (std::size_t i : s) pts.push_back(static_cast<gf_t>(i + 1));
                const bool by_sum = jump_vandermonde_nonsingular(pts);
                const bool by_det = determinant(jump_vandermonde_matrix(f, pts)) != 0;
                EXPECT_MSG(by_sum == by_det, "sum rule vs determinant, q = " + std::to_string(q)
                                                 + ", k = " + std::to_string(k));
                if (k == 3 || k == q - 2 || k == q - 1)
                    EXPECT_MSG(by_sum, "sum must be nonzero for k = " + std::to_string(k));
            }
        }
    }
}

// --- criterion 5: the repair transmission counts -----------------------------

void criterion_repair_counts()
{
    auto f = make_field(3, 0xB);
    const GeneratorMatrix g53 = sparsest_generator(5, 3, f);
    const SourceData data = make_source(3, 2, {{1, 6}, {2, 0}, {3, 7}});
    const std::vector<Share> enc = encode(g53, data);
    const std::vector<gf_t> beta = g53.mat.row(3);

    // the published figure: survivor hop distances 1, 2, 2 with a 3-node
    // simple path available -> 5 transmissions vs 3
    std::vector<Node> fig2{{0, 0.0, 0.0, Role::NEWCOMER, true},
                           {1, 9.0, 0.0, Role::STORAGE, true},
                           {2, 18.0, 0.0, Role::STORAGE, true},
                           {3, 13.5, 7.0, Role::STORAGE, true}};
    const Topology paper_topo(std::move(fig2), 10.0, 40.0, 40.0);
    ShareMap shares;
    for (int i = 1; i <= 3; ++i) shares[i] = enc[static_cast<std::size_t>(i - 1)];
    const RepairOutcome nc_paper =
        iterative_repair(paper_topo, 0, shares, beta, RepairMode::EXACT, 3, f);
    const RepairOutcome trad_paper = traditional_repair(paper_topo, 0, shares, beta, 3, f);
    EXPECT_MSG(trad_paper.transmissions_total == 5, "figure count: traditional = 5");
    EXPECT_MSG(nc_paper.transmissions_total == 3, "figure count: iterative = 3");

    // pure relay chain: per-node loads (1,1,1) vs (3,2,1)
    const Topology chain3 = chain_topology(3);
    const RepairOutcome nc_chain =
        iterative_repair(chain3, 0, shares, beta, RepairMode::EXACT, 3, f);
    const RepairOutcome trad_chain = traditional_repair(chain3, 0, shares, beta, 3, f);
    for (int node : {1, 2, 3}) EXPECT(nc_chain.energy.per_node_tx.at(node) == 1);
    EXPECT(trad_chain.energy.per_node_tx.at(1) == 3);
    EXPECT(trad_chain.energy.per_node_tx.at(2) == 2);
    EXPECT(trad_chain.energy.per_node_tx.at(3) == 1);
    EXPECT(nc_chain.new_share.payload == combine_blocks(*f, beta, data));
    EXPECT(trad_chain.new_share.payload == combine_blocks(*f, beta, data));

    // chain generalization: k(k+1)/2 vs k for k in 2..8
    for (std::size_t k = 2; k <= 8; ++k) {
        auto fk = make_field(4);
        const GeneratorMatrix g = sparsest_generator(k + 2, k, fk);
        const SourceData d = random_source(fk, k, 2, k);
        const std::vector<Share> e = encode(g, d);
        const Topology chain = chain_topology(static_cast<int>(k));
        ShareMap sm;
        for (std::size_t i = 0; i < k; ++i) sm[static_cast<int>(i + 1)] = e[i];
        const std::vector<gf_t> b = g.mat.row(k); // regenerate an unplaced row
        const RepairOutcome nc = iterative_repair(chain, 0, sm, b, RepairMode::EXACT, k, fk);
        const RepairOutcome tr = traditional_repair(chain, 0, sm, b, k, fk);
        EXPECT_MSG(nc.transmissions_total == static_cast<int>(k), "chain NC total = k");
        EXPECT_MSG(tr.transmissions_total == static_cast<int>(k * (k + 1) / 2),
                   "chain traditional total = k(k+1)/2");
        EXPECT(nc.new_share.payload == combine_blocks(*fk, b, d));
        EXPECT(tr.new_share.payload == combine_blocks(*fk, b, d));
    }
}

// --- criterion 6: multi-share-per-node counts ---------------------------------

void criterion_multi_share_counts()
{
    auto f = make_field(4);
    const GeneratorMatrix g = sparsest_generator(6, 4, f);
    const SourceData data = random_source(f, 4, 3, 13);
    const std::vector<Share> enc = encode(g, data);
    Assignment servers;
    servers[0] = {enc[0], enc[1]};
    servers[1] = {enc[2], enc[3]};
    servers[2] = {enc[4]};
    servers[3] = {enc[5]};

    const MultiShareOutcome single = multi_share_repair(servers, 3, g, {9});
    EXPECT_MSG(single.transmissions_total == 2, "single-share failure: 2 sub-file transmissions");
    EXPECT(single.new_shares[0].payload == combine_blocks(*f, enc[5].coding_vector, data));

    const MultiShareOutcome dbl = multi_share_repair(servers, 0, g, {});
    EXPECT_MSG(dbl.transmissions_total == 4, "double-share failure: 4 sub-file transmissions");
    EXPECT_MSG(dbl.traditional_total == 6, "double-share failure: traditional baseline 6");
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT(dbl.new_shares[i].payload == combine_blocks(*f, enc[i].coding_vector, data));
}

// --- criterion 7: repair correctness across seeded topologies ------------------

void criterion_repair_correctness()
{
    auto f = make_field(4);
    const std::size_t n = 10, k = 7;
    const GeneratorMatrix g = sparsest_generator(n, k, f);
    const auto all_subsets = oracle::subsets(n, k);

    // Topologies are drawn with the storage subgraph connected (the repair
    // stage runs without the sensors). Failing 2-3 nodes can still cut the
    // survivors off; those scenarios violate the protocol's reachability
    // precondition and are skipped, not counted as correctness failures.
    int run_scenarios = 0, skipped_scenarios = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Topology topo = random_topology(seed, 10, 20, 200, 180, 60, true);
        const SourceData data = random_source(f, k, 2, seed);
        const RoleMap roles = default_role_map(topo, n, k);
        const ShareMap shares = place_shares(g, data, roles);

        const int d = static_cast<int>(seed % 10);
        for (RepairMode mode : {RepairMode::EXACT, RepairMode::FUNCTIONAL}) {
            for (std::size_t failures = 1; failures <= n - k; ++failures) {
                std::vector<int> failed;
                for (std::size_t i = 0; i < failures; ++i)
                    failed.push_back(roles.storage_ids[(d + static_cast<int>(i)) % 10]);
                MultiFailureResult r;
                try {
                    r = multi_failure_repair(topo, failed, g, mode,
                                             RepairMethod::NC_ITERATIVE, shares);
                } catch (const InsufficientSurvivors&) {
                    ++skipped_scenarios;
                    continue;
                } catch (const Disconnected&) {
                    ++skipped_scenarios;
                    continue;
                }
                std::vector<Share> live;
                for (const auto& [node, share] : r.shares) live.push_back(share);
                EXPECT(live.size() == n);
                for (const auto& subset : all_subsets) {
                    std::vector<Share> pick;
                    for (std::size_t i : subset) pick.push_back(live[i]);
                    EXPECT_MSG(decode(f, pick).blocks == data.blocks,
                               "post-repair decode mismatch, seed " + std::to_string(seed));
                }
                ++run_scenarios;
            }
        }
        // single-failure repair can never be cut off on these topologies
        EXPECT(run_scenarios >= static_cast<int>(seed) * 2);
    }
    EXPECT_MSG(run_scenarios >= 400, "most failure scenarios should be reachable");
    std::printf("        (100 topologies, %d scenarios run, %d skipped as unreachable)\n",
                run_scenarios, skipped_scenarios);
}

// --- criterion 8: storage-phase totals and balance ------------------------------

void criterion_storage_phase()
{
    const Topology topo = random_topology(1, 10, 20, 200, 180, 1000); // one-hop regime
    for (std::size_t k = 3; k <= 8; ++k) {
        const std::size_t n = k + 2;
        const FieldPtr f = minimal_field_for(n, k);
        const RoleMap roles = default_role_map(topo, n, k);

        const GeneratorMatrix sparse = sparsest_generator(n, k, f);
        const EnergyReport rs_sparse = simulate_storage_phase(topo, sparse, roles);
        EXPECT_MSG(rs_sparse.total_tx == static_cast<int>(k * (n - k + 1)),
                   "sparsest total = k(n-k+1) at k = " + std::to_string(k));
        EXPECT(rs_sparse.total_tx < static_cast<int>(n * k));
        EXPECT_MSG(rs_sparse.stddev_tx == 0.0, "sparsest load is perfectly balanced");

        const GeneratorMatrix baseline = paper_g1_g2(n, k, f);
        const EnergyReport rs_base = simulate_storage_phase(topo, baseline, roles);
        if (k >= 4)
            EXPECT_MSG(rs_base.stddev_tx > 0.0,
                       "shaped RS baseline is unbalanced for k = " + std::to_string(k));
        if (k == 3)
            EXPECT_MSG(rs_base.total_tx == rs_sparse.total_tx,
                       "k = 3: sparsest and the maximal-length RS shape coincide");
    }
}

// --- criterion 9: lookup-table memory sizes --------------------------------------

void criterion_table_memory()
{
    EXPECT(build_tables(validate_field(8, 0x11D), TableMode::LOG_ANTILOG_1D).memory_bytes == 512);
    EXPECT(build_tables(validate_field(4, 0x13), TableMode::LOG_ANTILOG_1D).memory_bytes == 32);
    EXPECT(build_tables(validate_field(4, 0x13), TableMode::MUL_DIV_2D).memory_bytes == 512);
}

// --- criterion 10: field and matrix oracle suite ----------------------------------

void criterion_field_linalg_oracles()
{
    // exhaustive field axioms for q <= 16
    for (int m = 1; m <= 4; ++m) {
        auto f = make_field(m);
        const unsigned q = f->q();
        for (unsigned a = 0; a < q; ++a) {
            if (a != 0) EXPECT(f->mul(static_cast<gf_t>(a), f->inv(static_cast<gf_t>(a))) == 1);
            for (unsigned b = 0; b < q; ++b)
                for (unsigned c = 0; c < q; ++c) {
                    const gf_t ga = static_cast<gf_t>(a), gb = static_cast<gf_t>(b),
                               gc = static_cast<gf_t>(c);
                    EXPECT(f->mul(ga, gb) == f->mul(gb, ga));
                    EXPECT(f->mul(f->mul(ga, gb), gc) == f->mul(ga, f->mul(gb, gc)));
                    EXPECT(f->mul(ga, Field::add(gb, gc))
                           == Field::add(f->mul(ga, gb), f->mul(ga, gc)));
                }
        }
    }
    // table modes against the shift-and-reduce reference, all pairs
    for (int m = 1; m <= 8; ++m) {
        const FieldSpec spec = validate_field(m, default_poly(m));
        const Field lg(spec, TableMode::LOG_ANTILOG_1D);
        const Field tb(spec, TableMode::MUL_DIV_2D);
        for (unsigned a = 0; a < spec.q; ++a)
            for (unsigned b = 0; b < spec.q; ++b) {
                const gf_t want = gf_mul_ref(spec, static_cast<gf_t>(a), static_cast<gf_t>(b));
                EXPECT(lg.mul(static_cast<gf_t>(a), static_cast<gf_t>(b)) == want);
                EXPECT(tb.mul(static_cast<gf_t>(a), static_cast<gf_t>(b)) == want);
            }
    }
    // 100 random nonsingular inverse round trips per field
    for (int m : {1, 2, 3, 4, 8}) {
        auto f = make_field(m);
        std::mt19937_64 rng(4242 + static_cast<std::uint64_t>(m));
        int done = 0;
        while (done < 100) {
            const std::size_t dim = 1 + rng() % 6;
            GfMatrix a(f, dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    a.at(i, j) = static_cast<gf_t>(rng() % f->q());
            if (determinant(a) == 0) continue;
            EXPECT(mat_mul(a, mat_inv(a)) == GfMatrix::identity(f, dim));
            ++done;
        }
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "worked (5,3) sparsest generator over GF(8)", 1.0, criterion_sparsest_worked_example},
        {2, "sparsity maximality for 3 <= k < n <= 10", 120.0, criterion_sparsity_maximality},
        {3, "maximal code length q+1 / q+2 over small fields", 300.0, criterion_maximal_length},
        {4, "jump Vandermonde nonsingularity equivalence", 60.0, criterion_jump_vandermonde},
        {5, "repair transmission counts (5 vs 3, chain scaling)", 60.0, criterion_repair_counts},
        {6, "multi-share repair counts (2 / 4 vs 6)", 60.0, criterion_multi_share_counts},
        {7, "repair correctness on 100 seeded topologies", 300.0, criterion_repair_correctness},
        {8, "storage-phase totals and load balance", 60.0, criterion_storage_phase},
        {9, "lookup-table memory: 512 / 32 / 512 bytes", 60.0, criterion_table_memory},
        {10, "field and matrix algebra oracle suite", 60.0, criterion_field_linalg_oracles},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && elapsed > c.budget_seconds)
            error = "exceeded the " + std::to_string(c.budget_seconds) + "s budget";
        if (error.empty()) {
            std::printf("PASS  criterion %2d  (%.2fs)  %s\n", c.id, elapsed, c.name);
        } else {
            std::printf("FAIL  criterion %2d  (%.2fs)  %s\n      %s\n", c.id, elapsed, c.name,
                        error.c_str());
            ++failures;
        }
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
