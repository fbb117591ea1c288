// nc-storage - command-line front end: generator construction and
// checking, share encode/decode, repair runs, and the seeded simulation
// sweeps. Every randomized command requires an explicit --seed so reruns
// are reproducible; errors leave machine-readable JSON on stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ncs/ncs.hpp"

namespace {

using ncs::json;

std::vector<std::uint8_t> read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ncs::ParseError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ncs::ParseError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void print_profile(const ncs::GeneratorMatrix& g)
{
    const ncs::WeightProfile p = ncs::weight_profile(g);
    std::string weights;
    for (std::size_t i = 0; i < p.column_weights.size(); ++i) {
        if (i) weights += ",";
        weights += std::to_string(p.column_weights[i]);
    }
    std::printf("MDS: %s; zeros: %zu; weights: %s\n",
                g.mds == ncs::MdsStatus::VERIFIED ? "yes"
                : g.mds == ncs::MdsStatus::FAILED ? "no"
                                                  : "unverified",
                p.zero_count, weights.c_str());
    std::printf("total weight: %zu; weight stddev: %.6f\n", p.total_weight, p.stddev);
}

struct GenArgs {
    std::string family = "sparsest";
    std::size_t n = 0, k = 0;
    int m = 0;
    std::string poly;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string csv;
};

int cmd_gen(const GenArgs& a)
{
    const unsigned poly = a.poly.empty() ? ncs::default_poly(a.m)
                                         : static_cast<unsigned>(std::stoul(a.poly, nullptr, 0));
    const ncs::FieldPtr field = ncs::make_field(a.m, poly);
    ncs::GeneratorMatrix g;
    if (a.family == "sparsest") {
        g = ncs::sparsest_generator(a.n, a.k, field);
    } else if (a.family == "rs") {
        g = ncs::rs_generator(a.n, a.k, field);
    } else if (a.family == "theorem4") {
        g = ncs::theorem4_generator(field, a.k);
        ncs::verify_mds(g);
    } else if (a.family == "rlnc") {
        if (!a.seed) throw ncs::ParseError("--seed is required for the rlnc family");
        g = ncs::rlnc_generator(a.n, a.k, field, *a.seed);
    } else if (a.family == "g1g2") {
        g = ncs::paper_g1_g2(a.n, a.k, field);
    } else {
        throw ncs::ParseError("unknown family '" + a.family + "'");
    }
    if (g.mds == ncs::MdsStatus::UNVERIFIED && g.n() <= ncs::kDefaultMdsCheckLimit)
        ncs::verify_mds(g);
    print_profile(g);
    if (!a.out.empty()) ncs::write_text_file(a.out, ncs::matrix_to_json(g).dump(2) + "\n");
    if (!a.csv.empty()) ncs::write_text_file(a.csv, ncs::matrix_to_csv(g));
    return 0;
}

int cmd_check(const std::string& matrix_path, bool witness, std::size_t max_n)
{
    ncs::GeneratorMatrix g = ncs::matrix_from_json(ncs::read_json_file(matrix_path));
    const auto violation = ncs::find_mds_violation(g.mat, max_n);
    g.mds = violation ? ncs::MdsStatus::FAILED : ncs::MdsStatus::VERIFIED;
    print_profile(g);
    if (violation && witness) {
        std::string rows;
        for (std::size_t r : *violation) rows += (rows.empty() ? "" : ",") + std::to_string(r);
        std::printf("failing row subset: {%s}\n", rows.c_str());
    }
    return violation ? 2 : 0;
}

int cmd_encode(const std::string& matrix_path, const std::string& in_path,
               const std::string& out_prefix)
{
    const ncs::GeneratorMatrix g = ncs::matrix_from_json(ncs::read_json_file(matrix_path));
    const ncs::FieldSpec spec = g.mat.field()->spec();
    const std::vector<std::uint8_t> bytes = read_bytes(in_path);
    const ncs::SourceData data = ncs::split_symbols(g.k(), ncs::bytes_to_symbols(spec, bytes));
    const std::vector<ncs::Share> shares = ncs::encode(g, data);
    for (const ncs::Share& s : shares) {
        const std::string path = out_prefix + std::to_string(s.index) + ".json";
        ncs::write_text_file(path, ncs::share_to_json(s, spec, bytes.size()).dump(2) + "\n");
    }
    std::printf("wrote %zu shares to %s*.json\n", shares.size(), out_prefix.c_str());
    return 0;
}

int cmd_decode(const std::vector<std::string>& share_paths, const std::string& out_path)
{
    std::vector<ncs::Share> shares;
    std::optional<ncs::FieldSpec> spec;
    std::size_t data_bytes = 0;
    for (const std::string& p : share_paths) {
        ncs::ShareFile f = ncs::share_from_json(ncs::read_json_file(p));
        if (spec && !(*spec == f.spec)) throw ncs::ParseError("shares from different fields");
        spec = f.spec;
        data_bytes = std::max(data_bytes, f.data_bytes);
        shares.push_back(std::move(f.share));
    }
    if (!spec) throw ncs::ParseError("no shares given");
    const ncs::FieldPtr field = ncs::make_field(spec->m, spec->poly);
    const ncs::SourceData data = ncs::decode(field, shares);
    const std::size_t symbols_per_byte = spec->m == 4 ? 2 : 1;
    std::vector<ncs::gf_t> syms = ncs::join_blocks(data, data_bytes * symbols_per_byte);
    write_bytes(out_path, ncs::symbols_to_bytes(*spec, syms));
    std::printf("decoded %zu bytes to %s\n", data_bytes, out_path.c_str());
    return 0;
}

int cmd_repair(const std::string& topo_path, int failed, const std::string& mode_s,
               const std::string& method_s, const std::string& matrix_path,
               std::uint64_t data_seed)
{
    const ncs::Topology topo = ncs::topology_from_json(ncs::read_json_file(topo_path));
    const ncs::GeneratorMatrix g = ncs::matrix_from_json(ncs::read_json_file(matrix_path));
    const ncs::RepairMode mode =
        mode_s == "functional" ? ncs::RepairMode::FUNCTIONAL : ncs::RepairMode::EXACT;
    const ncs::RepairMethod method =
        method_s == "traditional" ? ncs::RepairMethod::TRADITIONAL : ncs::RepairMethod::NC_ITERATIVE;

    const ncs::RoleMap roles = ncs::default_role_map(topo, g.n(), 0);
    const ncs::SourceData data = ncs::random_source(g.mat.field(), g.k(), 4, data_seed);
    const ncs::ShareMap shares = ncs::place_shares(g, data, roles);
    ncs::MultiFailureResult r =
        ncs::multi_failure_repair(topo, {failed}, g, mode, method, shares);
    const ncs::RepairOutcome& out = r.outcomes.front();

    json report{{"method", method_s.empty() ? "nc" : method_s},
                {"mode", ncs::to_string(mode)},
                {"failed", failed},
                {"transmissions_total", out.transmissions_total},
                {"max_buffered", out.max_buffered},
                {"new_coding_vector", out.new_share.coding_vector},
                {"energy", ncs::energy_to_json(out.energy)}};
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

int cmd_simulate(const std::string& config_path, std::string out_override)
{
    const ncs::ExperimentConfig cfg =
        ncs::experiment_config_from_json(ncs::read_json_file(config_path));
    const std::string out_path = out_override.empty() ? cfg.output_path : out_override;

    if (cfg.experiment == ncs::ExperimentKind::FIELD_TABLES) {
        // The three lookup-table configurations of the complexity study.
        const auto b8 = ncs::build_tables(ncs::validate_field(8, ncs::default_poly(8)),
                                          ncs::TableMode::LOG_ANTILOG_1D);
        const auto b4 = ncs::build_tables(ncs::validate_field(4, ncs::default_poly(4)),
                                          ncs::TableMode::LOG_ANTILOG_1D);
        const auto b4x = ncs::build_tables(ncs::validate_field(4, ncs::default_poly(4)),
                                           ncs::TableMode::MUL_DIV_2D);
        std::string text = "field,mode,memory_bytes\n";
        text += "GF(256),log_antilog_1d," + std::to_string(b8.memory_bytes) + "\n";
        text += "GF(16),log_antilog_1d," + std::to_string(b4.memory_bytes) + "\n";
        text += "GF(16),mul_div_2d," + std::to_string(b4x.memory_bytes) + "\n";
        std::printf("memory report: %zu/%zu/%zu bytes\n", b8.memory_bytes, b4.memory_bytes,
                    b4x.memory_bytes);
        if (!out_path.empty()) ncs::write_text_file(out_path, text);
        return 0;
    }

    ncs::ComparisonConfig cc = cfg.comparison;
    if (cfg.experiment == ncs::ExperimentKind::STORAGE) cc.methods.clear();
    if (cfg.experiment == ncs::ExperimentKind::REPAIR) {
        cc.storage_phase = false;
        if (cc.methods.empty())
            cc.methods = {ncs::RepairMethod::NC_ITERATIVE, ncs::RepairMethod::TRADITIONAL};
    }
    if (cfg.experiment == ncs::ExperimentKind::COMPARISON && cc.methods.empty())
        cc.methods = {ncs::RepairMethod::NC_ITERATIVE, ncs::RepairMethod::TRADITIONAL};

    const std::vector<ncs::ComparisonRow> rows = ncs::run_comparison(cc);
    const std::string csv = ncs::to_csv(rows);
    if (!out_path.empty()) {
        ncs::write_text_file(out_path, csv);
        std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
}

int cmd_tables(int m, const std::string& poly_s, const std::string& mode_s,
               const std::string& dump)
{
    const unsigned poly =
        poly_s.empty() ? ncs::default_poly(m) : static_cast<unsigned>(std::stoul(poly_s, nullptr, 0));
    const ncs::FieldSpec spec = ncs::validate_field(m, poly);
    const ncs::TableMode mode =
        mode_s == "2d" ? ncs::TableMode::MUL_DIV_2D : ncs::TableMode::LOG_ANTILOG_1D;
    const ncs::LookupTables t = ncs::build_tables(spec, mode);
    std::printf("GF(%u) %s: memory_bytes = %zu\n", spec.q, ncs::to_string(mode), t.memory_bytes);
    if (!dump.empty()) ncs::write_text_file(dump, ncs::tables_to_csv(t));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"network-coded distributed storage toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sc_gen = app.add_subcommand("gen", "construct a generator matrix");
    sc_gen->add_option("--family", gen.family, "sparsest|rs|theorem4|rlnc|g1g2");
    sc_gen->add_option("--n", gen.n, "code length");
    sc_gen->add_option("--k", gen.k, "data dimension")->required();
    sc_gen->add_option("--m", gen.m, "field extension degree")->required();
    sc_gen->add_option("--poly", gen.poly, "reduction polynomial (hex ok)");
    std::uint64_t gen_seed = 0;
    auto* gen_seed_opt = sc_gen->add_option("--seed", gen_seed, "seed (required for rlnc)");
    sc_gen->add_option("--out", gen.out, "output matrix JSON path");
    sc_gen->add_option("--csv", gen.csv, "debug CSV dump path");

    std::string check_matrix, check_dummy;
    bool check_witness = false;
    std::size_t check_max_n = ncs::kDefaultMdsCheckLimit;
    auto* sc_check = app.add_subcommand("check", "verify the MDS property of a matrix file");
    sc_check->add_option("--matrix", check_matrix)->required();
    sc_check->add_flag("--witness", check_witness, "print a failing row subset");
    sc_check->add_option("--max-n", check_max_n, "exhaustive-check bound override");

    std::string enc_matrix, enc_in, enc_out;
    auto* sc_encode = app.add_subcommand("encode", "encode a file into n share files");
    sc_encode->add_option("--matrix", enc_matrix)->required();
    sc_encode->add_option("--in", enc_in)->required();
    sc_encode->add_option("--out", enc_out, "output prefix")->required();

    std::vector<std::string> dec_shares;
    std::string dec_out;
    auto* sc_decode = app.add_subcommand("decode", "recover a file from any k share files");
    sc_decode->add_option("--shares", dec_shares, "k share files")->required()->expected(-1);
    sc_decode->add_option("--out", dec_out)->required();

    std::string rep_topo, rep_mode = "exact", rep_method = "nc", rep_matrix;
    int rep_failed = 0;
    std::uint64_t rep_data_seed = 1;
    auto* sc_repair = app.add_subcommand("repair", "repair one failed storage node");
    sc_repair->add_option("--topo", rep_topo)->required();
    sc_repair->add_option("--failed", rep_failed)->required();
    sc_repair->add_option("--mode", rep_mode, "exact|functional");
    sc_repair->add_option("--method", rep_method, "nc|traditional");
    sc_repair->add_option("--matrix", rep_matrix)->required();
    sc_repair->add_option("--data-seed", rep_data_seed, "seed for the synthetic payload");

    std::string sim_config, sim_out;
    auto* sc_sim = app.add_subcommand("simulate", "run a seeded experiment from a config file");
    sc_sim->add_option("--config", sim_config)->required();
    sc_sim->add_option("--out", sim_out, "override the config output path");

    int tab_m = 8;
    std::string tab_poly, tab_mode = "1d", tab_dump;
    auto* sc_tables = app.add_subcommand("tables", "build lookup tables and report memory");
    sc_tables->add_option("--m", tab_m)->required();
    sc_tables->add_option("--poly", tab_poly);
    sc_tables->add_option("--mode", tab_mode, "1d|2d");
    sc_tables->add_option("--dump", tab_dump, "CSV dump path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc_gen) {
            if (gen_seed_opt->count()) gen.seed = gen_seed;
            return cmd_gen(gen);
        }
        if (*sc_check) return cmd_check(check_matrix, check_witness, check_max_n);
        if (*sc_encode) return cmd_encode(enc_matrix, enc_in, enc_out);
        if (*sc_decode) return cmd_decode(dec_shares, dec_out);
        if (*sc_repair)
            return cmd_repair(rep_topo, rep_failed, rep_mode, rep_method, rep_matrix,
                              rep_data_seed);
        if (*sc_sim) return cmd_simulate(sim_config, sim_out);
        if (*sc_tables) return cmd_tables(tab_m, tab_poly, tab_mode, tab_dump);
    } catch (const ncs::Error& e) {
        const json err{{"error", e.code()}, {"message", e.what()}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    } catch (const std::exception& e) {
        const json err{{"error", "Internal"}, {"message", e.what()}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
    return 0;
}
