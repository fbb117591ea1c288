// galois.hpp - GF(2^m) arithmetic with table-driven multiplication, m <= 8.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncs/errors.hpp"

namespace ncs {

using gf_t = std::uint8_t; // field element value, valid range [0, q)

// Field definition: extension degree m, reduction polynomial as a bit
// pattern (bit i = coefficient of x^i), and the order q = 2^m.
struct FieldSpec {
    int m = 0;
    unsigned poly = 0;
    unsigned q = 0;

    bool operator==(const FieldSpec&) const = default;
};

namespace detail {

inline std::string hex(unsigned v)
{
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    do {
        out.insert(out.begin(), digits[v & 0xF]);
        v >>= 4;
    } while (v);
    return "0x" + out;
}

inline int poly_degree(unsigned p)
{
    int d = -1;
    for (int i = 0; i < 32; ++i)
        if (p & (1u << i)) d = i;
    return d;
}

// Remainder of GF(2)[x] division.
inline unsigned poly_mod(unsigned a, unsigned b)
{
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a))
        a ^= b << (da - db);
    return a;
}

} // namespace detail

// Checks degree and irreducibility (trial division by every polynomial of
// degree 1..m/2; a factorization always contains a factor in that range).
inline FieldSpec validate_field(int m, unsigned poly)
{
    if (m < 1 || m > 8)
        throw DegreeMismatch("extension degree m must be in [1, 8], got " + std::to_string(m));
    if (detail::poly_degree(poly) != m)
        throw DegreeMismatch("reduction polynomial " + detail::hex(poly) + " does not have degree "
                             + std::to_string(m));
    for (unsigned d = 2; detail::poly_degree(d) <= m / 2; ++d) {
        if (detail::poly_mod(poly, d) == 0)
            throw ReduciblePolynomial("polynomial " + detail::hex(poly) + " is divisible by "
                                      + detail::hex(d));
    }
    return FieldSpec{m, poly, 1u << m};
}

// Widely used reduction polynomials, one per supported degree.
inline unsigned default_poly(int m)
{
    static constexpr unsigned polys[9] = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D};
    if (m < 1 || m > 8)
        throw DegreeMismatch("no default polynomial for m = " + std::to_string(m));
    return polys[m];
}

// Reference product: shift-and-reduce polynomial multiplication mod poly.
// This is the table-free route the lookup tables are checked against.
inline gf_t gf_mul_ref(const FieldSpec& spec, gf_t a, gf_t b)
{
    unsigned acc = 0;
    unsigned aa = a;
    for (unsigned bb = b; bb; bb >>= 1) {
        if (bb & 1) acc ^= aa;
        aa <<= 1;
        if (aa & spec.q) aa ^= spec.poly;
    }
    return static_cast<gf_t>(acc);
}

enum class TableMode { LOG_ANTILOG_1D, MUL_DIV_2D };

inline const char* to_string(TableMode mode)
{
    return mode == TableMode::LOG_ANTILOG_1D ? "log_antilog_1d" : "mul_div_2d";
}

// Multiplication lookup tables for one field, either as log/antilog pairs
// (2*q bytes) or as full 2-D product/quotient tables (2*q^2 bytes).
struct LookupTables {
    static constexpr gf_t kNoLog = 0xFF; // sentinel for log[0]

    FieldSpec spec;
    TableMode mode = TableMode::LOG_ANTILOG_1D;
    std::size_t memory_bytes = 0;

    std::vector<gf_t> log_table;     // q entries, index 0 unused (sentinel)
    std::vector<gf_t> antilog_table; // q entries, index q-1 wraps to 1
    std::vector<gf_t> mul_table;     // q*q entries, row-major
    std::vector<gf_t> div_table;     // q*q entries, column b = 0 unused
};

namespace detail {

inline unsigned element_order(const FieldSpec& spec, gf_t g)
{
    unsigned order = 1;
    gf_t acc = g;
    while (acc != 1) {
        acc = gf_mul_ref(spec, acc, g);
        ++order;
    }
    return order;
}

// Smallest element of multiplicative order q-1. x (= 2) is primitive for
// every default polynomial; the search covers user-supplied ones.
inline gf_t find_primitive_element(const FieldSpec& spec)
{
    if (spec.q == 2) return 1;
    for (unsigned g = 2; g < spec.q; ++g)
        if (element_order(spec, static_cast<gf_t>(g)) == spec.q - 1) return static_cast<gf_t>(g);
    return 1; // unreachable for a valid field
}

} // namespace detail

inline LookupTables build_tables(const FieldSpec& spec, TableMode mode)
{
    LookupTables t;
    t.spec = spec;
    t.mode = mode;
    const unsigned q = spec.q;
    if (mode == TableMode::LOG_ANTILOG_1D) {
        t.log_table.assign(q, LookupTables::kNoLog);
        t.antilog_table.assign(q, 0);
        const gf_t g = detail::find_primitive_element(spec);
        gf_t acc = 1;
        for (unsigned i = 0; i + 1 < q; ++i) {
            t.antilog_table[i] = acc;
            t.log_table[acc] = static_cast<gf_t>(i);
            acc = gf_mul_ref(spec, acc, g);
        }
        t.antilog_table[q - 1] = 1; // alpha^(q-1); index unreachable via log
        t.memory_bytes = 2 * static_cast<std::size_t>(q);
    } else {
        t.mul_table.assign(static_cast<std::size_t>(q) * q, 0);
        t.div_table.assign(static_cast<std::size_t>(q) * q, 0);
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b) {
                const gf_t p = gf_mul_ref(spec, static_cast<gf_t>(a), static_cast<gf_t>(b));
                t.mul_table[a * q + b] = p;
                if (b != 0) t.div_table[static_cast<std::size_t>(p) * q + b] = static_cast<gf_t>(a);
            }
        t.memory_bytes = 2 * static_cast<std::size_t>(q) * q;
    }
    return t;
}

// A usable field: spec + tables. Immutable after construction; all
// operations are pure, so instances can be shared freely across threads.
class Field {
  public:
    explicit Field(FieldSpec spec, TableMode mode = TableMode::LOG_ANTILOG_1D)
        : spec_(spec), tables_(build_tables(spec, mode))
    {
    }

    Field(int m, unsigned poly, TableMode mode = TableMode::LOG_ANTILOG_1D)
        : Field(validate_field(m, poly), mode)
    {
    }

    const FieldSpec& spec() const noexcept { return spec_; }
    unsigned q() const noexcept { return spec_.q; }
    const LookupTables& tables() const noexcept { return tables_; }

    static gf_t add(gf_t a, gf_t b) noexcept { return a ^ b; }
    static gf_t sub(gf_t a, gf_t b) noexcept { return a ^ b; } // char 2

    gf_t mul(gf_t a, gf_t b) const
    {
        if (tables_.mode == TableMode::MUL_DIV_2D)
            return tables_.mul_table[static_cast<std::size_t>(a) * spec_.q + b];
        if (a == 0 || b == 0) return 0;
        const unsigned s = tables_.log_table[a] + tables_.log_table[b];
        return tables_.antilog_table[s % (spec_.q - 1)];
    }

    gf_t div(gf_t a, gf_t b) const
    {
        if (b == 0) throw DivisionByZero("division by zero field element");
        if (tables_.mode == TableMode::MUL_DIV_2D)
            return tables_.div_table[static_cast<std::size_t>(a) * spec_.q + b];
        if (a == 0) return 0;
        const unsigned s = tables_.log_table[a] + (spec_.q - 1) - tables_.log_table[b];
        return tables_.antilog_table[s % (spec_.q - 1)];
    }

    gf_t inv(gf_t a) const { return div(1, a); }

    gf_t pow(gf_t a, unsigned e) const
    {
        gf_t acc = 1;
        gf_t base = a;
        for (; e; e >>= 1) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
        }
        return acc;
    }

  private:
    FieldSpec spec_;
    LookupTables tables_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(int m, unsigned poly, TableMode mode = TableMode::LOG_ANTILOG_1D)
{
    return std::make_shared<const Field>(m, poly, mode);
}

inline FieldPtr make_field(int m) { return make_field(m, default_poly(m)); }

} // namespace ncs
