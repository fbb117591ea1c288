// storage.hpp - data plane: split source data into k blocks, encode them
// into n self-describing shares under a generator matrix, and recover the
// source from any k shares with independent coding vectors.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncs/codes.hpp"

namespace ncs {

struct SourceData {
    std::size_t k = 0;
    std::size_t block_len = 0;
    std::vector<std::vector<gf_t>> blocks; // k blocks of block_len symbols
};

// One coded sub-file. Shares carry their coding vector inline, like a
// network-coding packet header.
struct Share {
    std::size_t index = 0;            // generator row that produced it
    std::vector<gf_t> coding_vector;  // length k
    std::vector<gf_t> payload;        // block_len symbols
};

inline SourceData make_source(std::size_t k, std::size_t block_len,
                              std::vector<std::vector<gf_t>> blocks)
{
    if (blocks.size() != k) throw DimensionMismatch("expected k blocks");
    for (const auto& b : blocks)
        if (b.size() != block_len) throw DimensionMismatch("blocks must have equal length");
    return SourceData{k, block_len, std::move(blocks)};
}

// Deterministic pseudo-random source, for simulations and tests.
inline SourceData random_source(const FieldPtr& field, std::size_t k, std::size_t block_len,
                                std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    SourceData d;
    d.k = k;
    d.block_len = block_len;
    d.blocks.assign(k, std::vector<gf_t>(block_len, 0));
    for (auto& block : d.blocks)
        for (auto& sym : block) sym = static_cast<gf_t>(rng() % field->q());
    return d;
}

// payload[s] = sum_i coding_vector[i] * blocks[i][s]
inline std::vector<gf_t> combine_blocks(const Field& gf, const std::vector<gf_t>& coding_vector,
                                        const SourceData& data)
{
    std::vector<gf_t> payload(data.block_len, 0);
    for (std::size_t i = 0; i < data.k; ++i) {
        const gf_t c = coding_vector[i];
        if (c == 0) continue;
        const auto& block = data.blocks[i];
        for (std::size_t s = 0; s < data.block_len; ++s)
            payload[s] = Field::add(payload[s], gf.mul(c, block[s]));
    }
    return payload;
}

inline std::vector<Share> encode(const GeneratorMatrix& g, const SourceData& data)
{
    if (g.k() != data.k)
        throw DimensionMismatch("generator k = " + std::to_string(g.k())
                                + " does not match data k = " + std::to_string(data.k));
    std::vector<Share> shares;
    shares.reserve(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        Share s;
        s.index = j;
        s.coding_vector = g.mat.row(j);
        s.payload = combine_blocks(g.mat.gf(), s.coding_vector, data);
        shares.push_back(std::move(s));
    }
    return shares;
}

// Recovers the source blocks from exactly k shares. The stacked coding
// vectors A satisfy P = A * B for the block matrix B, so B = A^-1 * P.
inline SourceData decode(const FieldPtr& field, const std::vector<Share>& shares)
{
    if (shares.empty()) throw DimensionMismatch("no shares given");
    const std::size_t k = shares[0].coding_vector.size();
    if (shares.size() != k)
        throw DimensionMismatch("need exactly k = " + std::to_string(k) + " shares, got "
                                + std::to_string(shares.size()));
    const std::size_t block_len = shares[0].payload.size();
    GfMatrix a(field, k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (shares[i].coding_vector.size() != k || shares[i].payload.size() != block_len)
            throw DimensionMismatch("inconsistent share shapes");
        a.set_row(i, shares[i].coding_vector);
    }
    GfMatrix a_inv;
    try {
        a_inv = mat_inv(a);
    } catch (const SingularMatrix&) {
        throw SingularSelection("share coding vectors are linearly dependent");
    }
    const Field& gf = *field;
    SourceData out;
    out.k = k;
    out.block_len = block_len;
    out.blocks.assign(k, std::vector<gf_t>(block_len, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const gf_t c = a_inv.at(i, l);
            if (c == 0) continue;
            for (std::size_t s = 0; s < block_len; ++s)
                out.blocks[i][s] = Field::add(out.blocks[i][s], gf.mul(c, shares[l].payload[s]));
        }
    return out;
}

// --- byte <-> symbol framing for file payloads -------------------------
//
// m = 8: one byte per symbol. m = 4: two symbols per byte, high nibble
// first. Other field sizes have no byte framing (in-memory symbols only).

inline std::vector<gf_t> bytes_to_symbols(const FieldSpec& spec, const std::vector<std::uint8_t>& bytes)
{
    if (spec.m == 8) return std::vector<gf_t>(bytes.begin(), bytes.end());
    if (spec.m == 4) {
        std::vector<gf_t> out;
        out.reserve(bytes.size() * 2);
        for (std::uint8_t b : bytes) {
            out.push_back(static_cast<gf_t>(b >> 4));
            out.push_back(static_cast<gf_t>(b & 0xF));
        }
        return out;
    }
    throw Unsupported("byte framing is defined for m = 4 and m = 8 only");
}

inline std::vector<std::uint8_t> symbols_to_bytes(const FieldSpec& spec, const std::vector<gf_t>& syms)
{
    if (spec.m == 8) return std::vector<std::uint8_t>(syms.begin(), syms.end());
    if (spec.m == 4) {
        std::vector<std::uint8_t> out;
        out.reserve((syms.size() + 1) / 2);
        for (std::size_t i = 0; i < syms.size(); i += 2) {
            const gf_t hi = syms[i];
            const gf_t lo = (i + 1 < syms.size()) ? syms[i + 1] : 0;
            out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
        }
        return out;
    }
    throw Unsupported("byte framing is defined for m = 4 and m = 8 only");
}

// Splits a symbol stream into k equal blocks, zero-padding the tail.
inline SourceData split_symbols(std::size_t k, const std::vector<gf_t>& syms)
{
    const std::size_t block_len = (syms.size() + k - 1) / k;
    SourceData d;
    d.k = k;
    d.block_len = block_len;
    d.blocks.assign(k, std::vector<gf_t>(block_len, 0));
    for (std::size_t i = 0; i < syms.size(); ++i) d.blocks[i / block_len][i % block_len] = syms[i];
    return d;
}

inline std::vector<gf_t> join_blocks(const SourceData& d, std::size_t total_symbols)
{
    std::vector<gf_t> out;
    out.reserve(total_symbols);
    for (std::size_t i = 0; i < total_symbols; ++i)
        out.push_back(d.blocks[i / d.block_len][i % d.block_len]);
    return out;
}

} // namespace ncs
