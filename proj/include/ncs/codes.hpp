// codes.hpp - generator-matrix construction and verification for (n, k)
// MDS codes: Vandermonde (RS) generators, the sparsification transform
// G = M * N^-1, exhaustive MDS checking, codeword weight analysis, and the
// maximal-length small-field constructor with its jump-Vandermonde test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncs/matrix.hpp"

namespace ncs {

enum class Family { RS_VANDERMONDE, SPARSEST, THEOREM4, RLNC_RANDOM };

inline const char* to_string(Family f)
{
    switch (f) {
    case Family::RS_VANDERMONDE: return "rs";
    case Family::SPARSEST: return "sparsest";
    case Family::THEOREM4: return "theorem4";
    case Family::RLNC_RANDOM: return "rlnc";
    }
    return "?";
}

inline Family family_from_string(const std::string& s)
{
    if (s == "rs") return Family::RS_VANDERMONDE;
    if (s == "sparsest") return Family::SPARSEST;
    if (s == "theorem4") return Family::THEOREM4;
    if (s == "rlnc") return Family::RLNC_RANDOM;
    throw ParseError("unknown family '" + s + "'");
}

enum class MdsStatus { UNVERIFIED, VERIFIED, FAILED };

// An (n, k) code: n coding vectors of length k, one per matrix row.
// For constructed families, `extension` holds the maximal-length matrix of
// the same family in the same coordinates (its first n rows are exactly
// `mat`); the spare rows back functional repair with provably MDS-safe
// replacement vectors. Imported or random matrices carry no extension.
struct GeneratorMatrix {
    GfMatrix mat;
    Family family = Family::RS_VANDERMONDE;
    MdsStatus mds = MdsStatus::UNVERIFIED;
    std::vector<gf_t> points; // evaluation points per row, when meaningful
    std::optional<GfMatrix> extension;

    std::size_t n() const { return mat.rows(); }
    std::size_t k() const { return mat.cols(); }
};

// Per-data-index transmission weights (column weights of the generator).
struct WeightProfile {
    std::vector<std::size_t> column_weights;
    std::size_t total_weight = 0;
    std::size_t zero_count = 0;
    double stddev = 0.0;
};

inline WeightProfile weight_profile(const GeneratorMatrix& g)
{
    WeightProfile p;
    p.column_weights.assign(g.k(), 0);
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.k(); ++j)
            if (g.mat.at(i, j) != 0) ++p.column_weights[j];
    p.total_weight = std::accumulate(p.column_weights.begin(), p.column_weights.end(),
                                     static_cast<std::size_t>(0));
    p.zero_count = g.n() * g.k() - p.total_weight;
    double mean = static_cast<double>(p.total_weight) / static_cast<double>(g.k());
    double var = 0.0;
    for (std::size_t w : p.column_weights) {
        const double d = static_cast<double>(w) - mean;
        var += d * d;
    }
    p.stddev = g.k() ? std::sqrt(var / static_cast<double>(g.k())) : 0.0;
    return p;
}

namespace detail {

// Visits all C(n, k) index subsets in lexicographic order until the
// visitor returns false. Returns false iff some visit returned false.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& visit)
{
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!visit(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

constexpr std::size_t kDefaultMdsCheckLimit = 18;

// Exhaustive MDS check: every k x k submatrix formed from k distinct rows
// must be nonsingular. Returns the first failing row subset, if any.
inline std::optional<std::vector<std::size_t>>
find_mds_violation(const GfMatrix& mat, std::size_t max_n = kDefaultMdsCheckLimit)
{
    const std::size_t n = mat.rows(), k = mat.cols();
    if (k > n) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all; // fewer rows than data dimension can never decode
    }
    if (n > max_n)
        throw TooManySubsets("exhaustive check over C(" + std::to_string(n) + ","
                             + std::to_string(k) + ") subsets exceeds the n <= "
                             + std::to_string(max_n) + " bound (raise max_n to override)");
    std::optional<std::vector<std::size_t>> witness;
    detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
        if (determinant(mat.select_rows(idx)) == 0) {
            witness = idx;
            return false;
        }
        return true;
    });
    return witness;
}

inline bool is_mds(const GeneratorMatrix& g, std::size_t max_n = kDefaultMdsCheckLimit)
{
    return !find_mds_violation(g.mat, max_n).has_value();
}

// is_mds + records the verdict on the matrix.
inline bool verify_mds(GeneratorMatrix& g, std::size_t max_n = kDefaultMdsCheckLimit)
{
    const bool ok = is_mds(g, max_n);
    g.mds = ok ? MdsStatus::VERIFIED : MdsStatus::FAILED;
    return ok;
}

// First n evaluation points in the canonical order 1, 2, ..., q-1, 0.
inline std::vector<gf_t> default_points(const FieldSpec& spec, std::size_t n)
{
    if (n > spec.q)
        throw TooLong("n = " + std::to_string(n) + " exceeds field order "
                      + std::to_string(spec.q));
    std::vector<gf_t> pts;
    pts.reserve(n);
    for (std::size_t t = 1; t < spec.q && pts.size() < n; ++t)
        pts.push_back(static_cast<gf_t>(t));
    if (pts.size() < n) pts.push_back(0);
    return pts;
}

namespace detail {

inline std::vector<gf_t> unit_row(std::size_t k, std::size_t one_at)
{
    std::vector<gf_t> r(k, 0);
    r[one_at] = 1;
    return r;
}

} // namespace detail

// Maximal-length MDS generator over GF(q): the q-1 Vandermonde rows over
// the nonzero points plus e_1 and e_k give n = q+1; for q = 2^m with k = 3
// or k = q-1, e_(k-1) can be added as well, giving n = q+2.
inline GeneratorMatrix theorem4_generator(const FieldPtr& field, std::size_t k)
{
    const unsigned q = field->q();
    if (k < 1 || k > q)
        throw KTooLarge("k = " + std::to_string(k) + " not supported over GF(" + std::to_string(q)
                        + ")");
    std::vector<gf_t> pts;
    for (unsigned t = 1; t < q; ++t) pts.push_back(static_cast<gf_t>(t));
    const GfMatrix vand = vandermonde(field, pts, k);
    const bool special = k >= 2 && (k == 3 || k == q - 1);
    const std::size_t n = q + 1 + (special ? 1 : 0);
    GeneratorMatrix g;
    g.mat = GfMatrix(field, n, k);
    for (std::size_t i = 0; i + 1 < q; ++i) g.mat.set_row(i, vand.row(i));
    g.mat.set_row(q - 1, detail::unit_row(k, 0));
    g.mat.set_row(q, detail::unit_row(k, k - 1));
    if (special) g.mat.set_row(q + 1, detail::unit_row(k, k - 2));
    g.family = Family::THEOREM4;
    g.extension = g.mat;
    return g;
}

// Attaches the maximal-length extension when every row of g is a member
// of the family row set: the extension is that full set with g's own rows
// first. Left empty otherwise (duplicate rows, foreign rows, k = 1).
inline void attach_extension(GeneratorMatrix& g)
{
    if (g.k() < 2 || g.k() > g.mat.gf().q()) return;
    const GeneratorMatrix full = theorem4_generator(g.mat.field(), g.k());
    std::vector<std::vector<gf_t>> rows;
    rows.reserve(full.n());
    for (std::size_t i = 0; i < g.n(); ++i) rows.push_back(g.mat.row(i));
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = i + 1; j < g.n(); ++j)
            if (rows[i] == rows[j]) return;
    for (std::size_t i = 0; i < full.n(); ++i) {
        const std::vector<gf_t> r = full.mat.row(i);
        if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
    }
    if (rows.size() != full.n()) return; // some row is outside the family set
    GfMatrix ext(g.mat.field(), rows.size(), g.k());
    for (std::size_t i = 0; i < rows.size(); ++i) ext.set_row(i, rows[i]);
    g.extension = std::move(ext);
}

// Vandermonde (RS) generator: row i = [1, t_i, t_i^2, ..., t_i^(k-1)].
inline GeneratorMatrix rs_generator(std::size_t n, std::size_t k, const FieldPtr& field,
                                    std::vector<gf_t> points = {})
{
    if (points.empty()) points = default_points(field->spec(), n);
    if (points.size() != n)
        throw DimensionMismatch("expected " + std::to_string(n) + " evaluation points, got "
                                + std::to_string(points.size()));
    if (n > field->q())
        throw TooLong("RS generator needs n <= q = " + std::to_string(field->q()));
    if (k > n) throw DimensionMismatch("k must not exceed n");
    GeneratorMatrix g;
    g.mat = vandermonde(field, points, k);
    g.family = Family::RS_VANDERMONDE;
    g.mds = MdsStatus::VERIFIED; // distinct points: every k-subset is Vandermonde
    g.points = std::move(points);
    attach_extension(g);
    return g;
}

// Sparsification transform G = M * N^-1 where N is the k x k submatrix of
// M at the pivot rows. The pivot rows of G become the k identity vectors;
// every remaining entry is nonzero (forced by the MDS property), so the
// zero count k*(k-1) is maximal.
inline GeneratorMatrix sparsify(const GeneratorMatrix& m, std::vector<std::size_t> pivot_rows)
{
    const std::size_t k = m.k();
    if (pivot_rows.size() != k) throw BadPivotSet("need exactly k pivot rows");
    std::vector<bool> seen(m.n(), false);
    for (std::size_t r : pivot_rows) {
        if (r >= m.n()) throw BadPivotSet("pivot row " + std::to_string(r) + " out of range");
        if (seen[r]) throw BadPivotSet("pivot row " + std::to_string(r) + " repeated");
        seen[r] = true;
    }
    if (m.mds == MdsStatus::FAILED || (m.mds == MdsStatus::UNVERIFIED && !is_mds(m)))
        throw NotMds("sparsify requires an MDS input matrix");
    const GfMatrix n_inv = mat_inv(m.mat.select_rows(pivot_rows));
    GeneratorMatrix g;
    g.mat = mat_mul(m.mat, n_inv);
    g.family = Family::SPARSEST;
    g.mds = MdsStatus::VERIFIED; // right-multiplication preserves subset determinants
    if (m.extension) g.extension = mat_mul(*m.extension, n_inv);
    return g;
}

// Default pivot choice: the k rows with the smallest evaluation points
// (row order otherwise), falling back to the first k rows.
inline GeneratorMatrix sparsify(const GeneratorMatrix& m)
{
    std::vector<std::size_t> idx(m.n());
    std::iota(idx.begin(), idx.end(), 0);
    if (m.points.size() == m.n())
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return m.points[a] < m.points[b]; });
    idx.resize(m.k());
    std::sort(idx.begin(), idx.end());
    return sparsify(m, idx);
}

// Nonsingularity test for the jump Vandermonde matrix (column powers
// 0..k-3, k-1 over k-1 points): in characteristic 2 it reduces to the sum
// of the points being nonzero.
inline bool jump_vandermonde_nonsingular(const std::vector<gf_t>& points)
{
    gf_t sum = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == 0) throw DuplicatePoint("jump Vandermonde points must be nonzero");
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw DuplicatePoint("duplicate point " + std::to_string(points[i]));
        sum = Field::add(sum, points[i]);
    }
    return sum != 0;
}

// The explicit jump Vandermonde matrix itself (for cross-checks against
// the determinant route): k-1 rows, column powers 0..k-3 then k-1.
inline GfMatrix jump_vandermonde_matrix(const FieldPtr& field, const std::vector<gf_t>& points)
{
    const std::size_t k = points.size() + 1;
    GfMatrix m(field, points.size(), points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j + 2 < k; ++j)
            m.at(i, j) = field->pow(points[i], static_cast<unsigned>(j));
        m.at(i, k - 2) = field->pow(points[i], static_cast<unsigned>(k - 1));
    }
    return m;
}

// Smallest supported field order q = 2^m able to carry an (n, k) MDS code
// by the maximal-length construction: q+1 >= n in general, q+2 >= n in the
// special cases.
inline unsigned min_field_size(std::size_t n, std::size_t k)
{
    if (k >= n) throw DimensionMismatch("min_field_size requires k < n");
    for (int m = 1; m <= 8; ++m) {
        const unsigned q = 1u << m;
        if (k > q) continue;
        const bool special = k >= 2 && (k == 3 || k == q - 1);
        if (q + 1 + (special ? 1 : 0) >= n) return q;
    }
    throw Unsupported("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k)
                      + ") needs a field larger than GF(256)");
}

constexpr int kRlncMdsRetryLimit = 1000;

// Random linear network coding generator: entries uniform over GF(q),
// regenerated (bounded) until the MDS property holds.
inline GeneratorMatrix rlnc_generator(std::size_t n, std::size_t k, const FieldPtr& field,
                                      std::uint64_t seed,
                                      std::size_t max_n = kDefaultMdsCheckLimit)
{
    std::mt19937_64 rng(seed);
    const unsigned q = field->q();
    for (int attempt = 0; attempt < kRlncMdsRetryLimit; ++attempt) {
        GeneratorMatrix g;
        g.mat = GfMatrix(field, n, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j)
                g.mat.at(i, j) = static_cast<gf_t>(rng() % q);
        g.family = Family::RLNC_RANDOM;
        if (verify_mds(g, max_n)) return g;
    }
    throw MdsRetryExhausted("no MDS matrix after " + std::to_string(kRlncMdsRetryLimit)
                            + " seeded draws");
}

// The RS-shaped baseline of the simulation study: an n x k matrix whose
// row set is {e_1, Vandermonde rows, e_k} for k > 3 and
// {e_1, Vandermonde rows, e_2, e_3} for k = 3.
inline GeneratorMatrix paper_g1_g2(std::size_t n, std::size_t k, const FieldPtr& field)
{
    if (k < 3) throw NotConstructible("baseline shapes need k >= 3");
    if (k > n) throw NotConstructible("k must not exceed n");
    GeneratorMatrix g;
    if (n == k) {
        g.mat = GfMatrix::identity(field, k);
        g.family = Family::RS_VANDERMONDE;
        g.mds = MdsStatus::VERIFIED;
        return g;
    }
    const std::size_t tail = (k == 3) ? 3 : 2; // unit rows surrounding the Vandermonde block
    if (n < tail || n - tail + 1 > field->q())
        throw NotConstructible("not enough distinct nonzero points in GF("
                               + std::to_string(field->q()) + ") for n = " + std::to_string(n));
    std::vector<gf_t> pts;
    for (std::size_t t = 1; pts.size() < n - tail; ++t) pts.push_back(static_cast<gf_t>(t));
    const GfMatrix vand = vandermonde(field, pts, k);
    g.mat = GfMatrix(field, n, k);
    g.mat.set_row(0, detail::unit_row(k, 0));
    for (std::size_t i = 0; i < pts.size(); ++i) g.mat.set_row(1 + i, vand.row(i));
    if (k == 3) {
        g.mat.set_row(n - 2, detail::unit_row(k, 1));
        g.mat.set_row(n - 1, detail::unit_row(k, 2));
    } else {
        g.mat.set_row(n - 1, detail::unit_row(k, k - 1));
    }
    g.family = Family::RS_VANDERMONDE;
    if (!verify_mds(g))
        throw NotConstructible("baseline shape is not MDS for these parameters");
    attach_extension(g);
    return g;
}

// Sparsest MDS generator for (n, k): sparsify an MDS base matrix. The base
// is a plain Vandermonde generator while n <= q and the maximal-length
// construction above for n = q+1 / q+2.
inline GeneratorMatrix sparsest_generator(std::size_t n, std::size_t k, const FieldPtr& field)
{
    const unsigned q = field->q();
    if (k > n) throw DimensionMismatch("k must not exceed n");
    GeneratorMatrix base;
    if (n <= q) {
        base = rs_generator(n, k, field);
    } else {
        base = theorem4_generator(field, k);
        if (base.n() < n)
            throw TooLong("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k)
                          + ") exceeds the q+1/q+2 bound over GF(" + std::to_string(q) + ")");
        if (base.n() > n) {
            GeneratorMatrix cut;
            cut.mat = GfMatrix(field, n, k);
            for (std::size_t i = 0; i < n; ++i) cut.mat.set_row(i, base.mat.row(i));
            cut.family = Family::THEOREM4;
            cut.extension = base.extension; // same family set; own rows lead it
            base = std::move(cut);
        }
        verify_mds(base); // desk sizes; also guards the k = q edge
        if (base.mds != MdsStatus::VERIFIED)
            throw NotMds("maximal-length base failed the MDS check");
    }
    std::vector<std::size_t> pivots(k);
    std::iota(pivots.begin(), pivots.end(), 0);
    GeneratorMatrix g = base.points.empty() ? sparsify(base, pivots) : sparsify(base);
    return g;
}

} // namespace ncs
