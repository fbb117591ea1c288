// json_io.hpp - file formats: generator matrices, topologies, share
// files, and the experiment config consumed by the CLI.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncs/simulate.hpp"

namespace ncs {

using json = nlohmann::json;

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

// Accepts 19, "19", "0x13".
inline unsigned parse_poly(const json& j)
{
    if (j.is_number_unsigned() || j.is_number_integer()) return j.get<unsigned>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        return static_cast<unsigned>(std::stoul(s, nullptr, 0));
    }
    throw ParseError("polynomial must be an integer or a hex string");
}

inline json field_to_json(const FieldSpec& spec)
{
    char hex[16];
    std::snprintf(hex, sizeof hex, "0x%X", spec.poly);
    return json{{"m", spec.m}, {"poly", hex}};
}

inline FieldSpec field_from_json(const json& j)
{
    if (!j.contains("m")) throw ParseError("field needs 'm'");
    const int m = j.at("m").get<int>();
    const unsigned poly = j.contains("poly") ? parse_poly(j.at("poly")) : default_poly(m);
    return validate_field(m, poly);
}

// --- generator matrices --------------------------------------------------

inline json matrix_to_json(const GeneratorMatrix& g)
{
    json rows = json::array();
    for (std::size_t i = 0; i < g.n(); ++i) rows.push_back(g.mat.row(i));
    json j{{"n", g.n()},
           {"k", g.k()},
           {"field", field_to_json(g.mat.field()->spec())},
           {"family", to_string(g.family)},
           {"rows", rows}};
    if (g.mds != MdsStatus::UNVERIFIED)
        j["mds_verified"] = g.mds == MdsStatus::VERIFIED;
    return j;
}

inline GeneratorMatrix matrix_from_json(const json& j)
{
    const FieldSpec spec = field_from_json(j.at("field"));
    const FieldPtr field = make_field(spec.m, spec.poly);
    const auto& rows = j.at("rows");
    const std::size_t n = j.value("n", rows.size());
    if (rows.size() != n) throw ParseError("row count does not match n");
    if (rows.empty()) throw ParseError("matrix needs at least one row");
    const std::size_t k = j.value("k", rows[0].size());
    std::vector<gf_t> elems;
    for (const auto& row : rows) {
        if (row.size() != k) throw ParseError("ragged matrix rows");
        for (const auto& v : row) {
            const unsigned u = v.get<unsigned>();
            if (u >= spec.q) throw ParseError("entry " + std::to_string(u) + " not in GF("
                                              + std::to_string(spec.q) + ")");
            elems.push_back(static_cast<gf_t>(u));
        }
    }
    GeneratorMatrix g;
    g.mat = GfMatrix(field, n, k, std::move(elems));
    g.family = family_from_string(j.value("family", "rs"));
    if (j.contains("mds_verified"))
        g.mds = j.at("mds_verified").get<bool>() ? MdsStatus::VERIFIED : MdsStatus::FAILED;
    return g;
}

inline std::string matrix_to_csv(const GeneratorMatrix& g)
{
    std::string out;
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = 0; j < g.k(); ++j) {
            if (j) out += ',';
            out += std::to_string(g.mat.at(i, j));
        }
        out += '\n';
    }
    return out;
}

// --- topologies -----------------------------------------------------------

inline json topology_to_json(const Topology& t)
{
    json nodes = json::array();
    for (const Node& n : t.nodes()) {
        json jn{{"id", n.id}, {"x", n.x}, {"y", n.y}, {"role", to_string(n.role)}};
        if (!n.alive) jn["alive"] = false;
        nodes.push_back(jn);
    }
    return json{{"area", {t.width(), t.height()}}, {"radius", t.radius()}, {"nodes", nodes}};
}

inline Topology topology_from_json(const json& j)
{
    const auto& area = j.at("area");
    const double width = area.at(0).get<double>();
    const double height = area.at(1).get<double>();
    const double radius = j.at("radius").get<double>();
    std::vector<Node> nodes;
    for (const auto& jn : j.at("nodes")) {
        Node n;
        n.id = jn.at("id").get<int>();
        n.x = jn.at("x").get<double>();
        n.y = jn.at("y").get<double>();
        n.role = role_from_string(jn.value("role", "storage"));
        n.alive = jn.value("alive", true);
        nodes.push_back(n);
    }
    // ids must be dense 0..N-1 (they index the adjacency table)
    std::vector<bool> seen(nodes.size(), false);
    for (const Node& n : nodes) {
        if (n.id < 0 || static_cast<std::size_t>(n.id) >= nodes.size() ||
            seen[static_cast<std::size_t>(n.id)])
            throw ParseError("node ids must be 0..N-1 without repeats");
        seen[static_cast<std::size_t>(n.id)] = true;
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    return Topology(std::move(nodes), radius, width, height);
}

// --- shares ----------------------------------------------------------------

inline std::string symbols_to_hex(const std::vector<gf_t>& syms)
{
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(syms.size() * 2);
    for (gf_t s : syms) {
        out += digits[s >> 4];
        out += digits[s & 0xF];
    }
    return out;
}

inline std::vector<gf_t> hex_to_symbols(const std::string& hex)
{
    if (hex.size() % 2) throw ParseError("odd-length hex payload");
    const auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError("bad hex digit");
    };
    std::vector<gf_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<gf_t>((nib(hex[i]) << 4) | nib(hex[i + 1])));
    return out;
}

inline json share_to_json(const Share& s, const FieldSpec& spec, std::size_t data_bytes)
{
    return json{{"index", s.index},
                {"coding_vector", s.coding_vector},
                {"field", field_to_json(spec)},
                {"k", s.coding_vector.size()},
                {"block_len", s.payload.size()},
                {"data_bytes", data_bytes},
                {"payload", symbols_to_hex(s.payload)}};
}

struct ShareFile {
    Share share;
    FieldSpec spec;
    std::size_t data_bytes = 0;
};

inline ShareFile share_from_json(const json& j)
{
    ShareFile f;
    f.spec = field_from_json(j.at("field"));
    f.share.index = j.at("index").get<std::size_t>();
    for (const auto& v : j.at("coding_vector"))
        f.share.coding_vector.push_back(static_cast<gf_t>(v.get<unsigned>()));
    f.share.payload = hex_to_symbols(j.at("payload").get<std::string>());
    f.data_bytes = j.value("data_bytes", std::size_t{0});
    return f;
}

// --- repair plan (inspection output) ---------------------------------------

inline json plan_to_json(const RepairPlan& plan)
{
    json branches = json::array();
    for (const auto& b : plan.tree.branches)
        branches.push_back(json{{"node", b.node}, {"attach", b.attach}, {"path", b.path}});
    return json{{"mode", to_string(plan.mode)},
                {"newcomer", plan.newcomer},
                {"replaced_index", plan.replaced_index},
                {"route", plan.tree.route},
                {"branches", branches},
                {"participants", plan.participants},
                {"alphas", plan.alphas},
                {"beta", plan.beta},
                {"coeffs", plan.coeffs}};
}

inline json energy_to_json(const EnergyReport& r)
{
    json tx = json::object(), rx = json::object();
    for (const auto& [node, c] : r.per_node_tx) tx[std::to_string(node)] = c;
    for (const auto& [node, c] : r.per_node_rx) rx[std::to_string(node)] = c;
    return json{{"per_node_tx", tx},
                {"per_node_rx", rx},
                {"control_tx", r.control_tx},
                {"total_tx", r.total_tx},
                {"stddev_tx", r.stddev_tx}};
}

// --- experiment config -------------------------------------------------------

enum class ExperimentKind { STORAGE, REPAIR, COMPARISON, FIELD_TABLES };

inline ExperimentKind experiment_from_string(std::string s)
{
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "storage") return ExperimentKind::STORAGE;
    if (s == "repair") return ExperimentKind::REPAIR;
    if (s == "comparison") return ExperimentKind::COMPARISON;
    if (s == "field_tables") return ExperimentKind::FIELD_TABLES;
    throw ParseError("unknown experiment '" + s + "'");
}

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::COMPARISON;
    ComparisonConfig comparison;
    std::string output_path;
    bool has_topology_file = false;
    std::string topology_file;
};

inline ExperimentConfig experiment_config_from_json(const json& j)
{
    ExperimentConfig cfg;
    cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    ComparisonConfig& c = cfg.comparison;
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("k_range")) {
        c.k_min = j.at("k_range").at(0).get<std::size_t>();
        c.k_max = j.at("k_range").at(1).get<std::size_t>();
    } else if (j.contains("code")) {
        c.k_min = c.k_max = j.at("code").at("k").get<std::size_t>();
    }
    if (j.contains("families")) c.families = j.at("families").get<std::vector<std::string>>();
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto& m : j.at("methods")) {
            const std::string s = m.get<std::string>();
            if (s == "nc") c.methods.push_back(RepairMethod::NC_ITERATIVE);
            else if (s == "traditional") c.methods.push_back(RepairMethod::TRADITIONAL);
            else throw ParseError("unknown method '" + s + "'");
        }
    }
    if (j.contains("mode"))
        c.mode = j.at("mode").get<std::string>() == "functional" ? RepairMode::FUNCTIONAL
                                                                 : RepairMode::EXACT;
    if (j.contains("failed")) c.failed_index = j.at("failed").get<int>();
    if (j.contains("topology")) {
        const auto& t = j.at("topology");
        if (t.contains("file")) {
            cfg.has_topology_file = true;
            cfg.topology_file = t.at("file").get<std::string>();
        } else {
            if (t.contains("n_storage")) c.n_storage = t.at("n_storage").get<int>();
            if (t.contains("n_sensor")) c.n_sensor = t.at("n_sensor").get<int>();
            if (t.contains("radius")) c.radius = t.at("radius").get<double>();
            if (t.contains("area")) {
                c.width = t.at("area").at(0).get<double>();
                c.height = t.at("area").at(1).get<double>();
            }
            if (t.contains("seed")) c.seeds = {t.at("seed").get<std::uint64_t>()};
        }
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.is_string()) cfg.output_path = o.get<std::string>();
        else if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
    }
    return cfg;
}

// Lookup-table CSV dump (debug aid).
inline std::string tables_to_csv(const LookupTables& t)
{
    std::string out;
    if (t.mode == TableMode::LOG_ANTILOG_1D) {
        out += "x,log,antilog\n";
        for (unsigned i = 0; i < t.spec.q; ++i) {
            out += std::to_string(i) + ",";
            out += (t.log_table[i] == LookupTables::kNoLog ? std::string("-")
                                                           : std::to_string(t.log_table[i]));
            out += "," + std::to_string(t.antilog_table[i]) + "\n";
        }
    } else {
        out += "a,b,mul,div\n";
        for (unsigned a = 0; a < t.spec.q; ++a)
            for (unsigned b = 0; b < t.spec.q; ++b) {
                out += std::to_string(a) + "," + std::to_string(b) + ","
                       + std::to_string(t.mul_table[a * t.spec.q + b]) + ",";
                out += b ? std::to_string(t.div_table[a * t.spec.q + b]) : std::string("-");
                out += "\n";
            }
    }
    return out;
}

} // namespace ncs
