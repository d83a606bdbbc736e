#include "ksum/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "ksum/errors.hpp"
#include "ksum/rng.hpp"
#include "poly.hpp"

namespace ksum {

namespace {

using Vec = std::vector<std::uint32_t>;

Vec to_vec(const FieldCtx& ctx, FieldElement x) { return ctx.coeffs(x); }

FieldElement from_vec(const FieldCtx& ctx, const Vec& v) {
    std::uint64_t idx = 0, mult = 1;
    for (std::uint32_t i = 0; i < ctx.n(); ++i) {
        idx += std::uint64_t{v[i]} * mult;
        mult *= ctx.p();
    }
    return ctx.from_index(idx);
}

constexpr std::uint64_t kSat = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a >= kSat || b >= kSat || a + b >= kSat) ? kSat : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kSat || b >= kSat || a > kSat / b) return kSat;
    return a * b;
}

}  // namespace

std::uint64_t SubspaceBasis::cardinality(const FieldCtx& ctx) const {
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < dim(); ++i) c *= ctx.p();
    return c;
}

SubspaceBasis span(const FieldCtx& ctx, std::span<const FieldElement> vectors) {
    const std::uint32_t p = ctx.p();
    const std::uint32_t n = ctx.n();
    std::vector<Vec> rows;
    rows.reserve(vectors.size());
    for (FieldElement v : vectors) {
        if (v.idx != 0) rows.push_back(to_vec(ctx, v));
    }

    SubspaceBasis out;
    std::uint32_t rank = 0;
    for (std::int32_t col = static_cast<std::int32_t>(n) - 1; col >= 0; --col) {
        const auto j = static_cast<std::size_t>(col);
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][j] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint32_t s = detail::inv_mod(rows[rank][j], p);
        for (auto& c : rows[rank]) c = detail::mul_mod(c, s, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][j] == 0) continue;
            const std::uint32_t f = rows[i][j];
            for (std::size_t k = 0; k <= j; ++k) {
                rows[i][k] = detail::sub_mod(rows[i][k], detail::mul_mod(f, rows[rank][k], p), p);
            }
        }
        out.pivots_.push_back(static_cast<std::uint32_t>(col));
        ++rank;
        if (rank == rows.size() || rank == n) break;
    }
    rows.resize(rank);
    out.rows_.reserve(rank);
    for (const auto& r : rows) out.rows_.push_back(from_vec(ctx, r));
    return out;
}

FieldElement reduce_mod(const FieldCtx& ctx, const SubspaceBasis& basis, FieldElement x) {
    if (basis.dim() == 0 || x.idx == 0) return x;
    const std::uint32_t p = ctx.p();
    Vec v = to_vec(ctx, x);
    for (std::uint32_t r = 0; r < basis.dim(); ++r) {
        const std::uint32_t j = basis.pivots()[r];
        const std::uint32_t c = v[j];
        if (c == 0) continue;
        Vec row = to_vec(ctx, basis.rows()[r]);
        for (std::uint32_t k = 0; k <= j; ++k) {
            v[k] = detail::sub_mod(v[k], detail::mul_mod(c, row[k], p), p);
        }
    }
    return from_vec(ctx, v);
}

bool contains(const FieldCtx& ctx, const SubspaceBasis& basis, FieldElement x) {
    return reduce_mod(ctx, basis, x).idx == 0;
}

std::vector<FieldElement> members(const FieldCtx& ctx, const SubspaceBasis& basis,
                                  std::uint64_t cap) {
    const std::uint64_t card = basis.cardinality(ctx);
    if (card > cap) throw cap_error("subspace has too many members to enumerate");
    std::vector<FieldElement> out;
    out.reserve(card);
    for (std::uint64_t k = 0; k < card; ++k) {
        FieldElement m = ctx.zero();
        std::uint64_t v = k;
        for (std::uint32_t i = 0; i < basis.dim(); ++i) {
            const auto t = static_cast<std::uint32_t>(v % ctx.p());
            if (t != 0) m = ctx.add(m, ctx.scalar_mul(t, basis.rows()[i]));
            v /= ctx.p();
        }
        out.push_back(m);
    }
    return out;
}

SubspaceBasis orthogonal_complement(const FieldCtx& ctx, const SubspaceBasis& basis) {
    const std::uint32_t p = ctx.p();
    const std::uint32_t n = ctx.n();
    const std::uint32_t m = basis.dim();

    // pairing matrix M[i][j] = Tr(row_i * X^j)
    std::vector<Vec> mat(m, Vec(n, 0));
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint64_t basis_pow = 1;
        for (std::uint32_t j = 0; j < n; ++j) {
            FieldElement ej = ctx.from_index(basis_pow);
            mat[i][j] = ctx.trace(ctx.mul(basis.rows()[i], ej));
            basis_pow *= p;
        }
    }

    // kernel of M
    std::vector<std::int32_t> pivot_of_col(n, -1);
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < n && rank < m; ++col) {
        std::uint32_t r = rank;
        while (r < m && mat[r][col] == 0) ++r;
        if (r == m) continue;
        std::swap(mat[rank], mat[r]);
        const std::uint32_t s = detail::inv_mod(mat[rank][col], p);
        for (auto& c : mat[rank]) c = detail::mul_mod(c, s, p);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (i == rank || mat[i][col] == 0) continue;
            const std::uint32_t f = mat[i][col];
            for (std::uint32_t k = 0; k < n; ++k) {
                mat[i][k] = detail::sub_mod(mat[i][k], detail::mul_mod(f, mat[rank][k], p), p);
            }
        }
        pivot_of_col[col] = static_cast<std::int32_t>(rank);
        ++rank;
    }

    std::vector<FieldElement> kernel;
    kernel.reserve(n - rank);
    for (std::uint32_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        Vec v(n, 0);
        v[col] = 1;
        for (std::uint32_t c2 = 0; c2 < n; ++c2) {
            if (pivot_of_col[c2] >= 0) {
                const auto r = static_cast<std::uint32_t>(pivot_of_col[c2]);
                v[c2] = detail::sub_mod(0, mat[r][col], p);
            }
        }
        kernel.push_back(from_vec(ctx, v));
    }
    return span(ctx, kernel);
}

std::uint64_t count_subspaces(const FieldCtx& ctx, std::uint32_t dim) {
    const std::uint32_t n = ctx.n();
    if (dim > n) return 0;
    // Gaussian binomial via the Pascal-style recurrence, saturating well
    // above any enumeration cap.
    std::vector<std::uint64_t> row(dim + 1, 0);
    row[0] = 1;
    for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t k = std::min(i, dim); k >= 1; --k) {
            std::uint64_t pk = 1;
            for (std::uint32_t t = 0; t < k; ++t) pk = sat_mul(pk, ctx.p());
            row[k] = sat_add(row[k - 1], sat_mul(pk, row[k]));
            if (k == 1) break;
        }
    }
    return row[dim];
}

std::vector<SubspaceBasis> enumerate_subspaces(const FieldCtx& ctx, std::uint32_t dim,
                                               std::uint64_t cap) {
    const std::uint32_t n = ctx.n();
    if (dim > n) throw std::invalid_argument("subspace dimension exceeds field degree");
    const std::uint64_t total = count_subspaces(ctx, dim);
    if (total > cap) {
        throw cap_error("subspace enumeration would produce " + std::to_string(total) +
                        " bases; sample instead");
    }

    std::vector<SubspaceBasis> out;
    out.reserve(total);
    if (dim == 0) {
        out.emplace_back();
        return out;
    }

    // pivot columns as combinations of {0..n-1}, ascending lexicographic
    std::vector<std::uint32_t> comb(dim);
    for (std::uint32_t i = 0; i < dim; ++i) comb[i] = i;
    const std::uint32_t p = ctx.p();

    while (true) {
        // rows are ordered by pivot significance descending
        std::vector<std::uint32_t> pivots(comb.rbegin(), comb.rend());
        std::vector<bool> is_pivot(n, false);
        for (auto c : comb) is_pivot[c] = true;

        // free positions in fixed row-major order
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
        for (std::uint32_t r = 0; r < dim; ++r) {
            for (std::int32_t j = static_cast<std::int32_t>(pivots[r]) - 1; j >= 0; --j) {
                if (!is_pivot[static_cast<std::uint32_t>(j)]) {
                    free_pos.push_back({r, static_cast<std::uint32_t>(j)});
                }
            }
        }
        std::uint64_t assignments = 1;
        for (std::size_t i = 0; i < free_pos.size(); ++i) assignments *= p;

        for (std::uint64_t a = 0; a < assignments; ++a) {
            std::vector<Vec> rows(dim, Vec(n, 0));
            for (std::uint32_t r = 0; r < dim; ++r) rows[r][pivots[r]] = 1;
            std::uint64_t v = a;
            for (const auto& [r, j] : free_pos) {
                rows[r][j] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            SubspaceBasis b;
            b.pivots_ = pivots;
            b.rows_.reserve(dim);
            for (const auto& row : rows) b.rows_.push_back(from_vec(ctx, row));
            out.push_back(std::move(b));
        }

        // next combination
        std::int32_t i = static_cast<std::int32_t>(dim) - 1;
        while (i >= 0 && comb[static_cast<std::uint32_t>(i)] ==
                             n - dim + static_cast<std::uint32_t>(i)) {
            --i;
        }
        if (i < 0) break;
        ++comb[static_cast<std::uint32_t>(i)];
        for (auto k = static_cast<std::uint32_t>(i) + 1; k < dim; ++k) comb[k] = comb[k - 1] + 1;
    }
    return out;
}

AffineSubspace make_affine(const FieldCtx& ctx, FieldElement point, SubspaceBasis directions) {
    FieldElement base = reduce_mod(ctx, directions, point);
    return AffineSubspace{base, std::move(directions)};
}

std::vector<FieldElement> members(const FieldCtx& ctx, const AffineSubspace& space,
                                  std::uint64_t cap) {
    std::vector<FieldElement> out = members(ctx, space.directions, cap);
    if (space.base.idx != 0) {
        for (auto& m : out) m = ctx.add(m, space.base);
    }
    return out;
}

bool contains(const FieldCtx& ctx, const AffineSubspace& space, FieldElement x) {
    return contains(ctx, space.directions, ctx.sub(x, space.base));
}

AffineSubspace random_affine_subspace(const FieldCtx& ctx, std::uint32_t dim, std::uint64_t seed) {
    if (dim > ctx.n()) throw std::invalid_argument("subspace dimension exceeds field degree");
    Rng rng(seed);
    std::vector<FieldElement> picks;
    SubspaceBasis basis;
    while (basis.dim() < dim) {
        picks.push_back(ctx.from_index(rng.below(ctx.q())));
        basis = span(ctx, picks);
    }
    FieldElement point = ctx.from_index(rng.below(ctx.q()));
    return make_affine(ctx, point, std::move(basis));
}

}
