#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksum/field.hpp"

namespace ksum {

inline constexpr std::uint64_t kMemberCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kSubspaceEnumCap = 100000;

// F_p-linear subspace of F_q in reduced row echelon form. Elimination runs
// over coordinates in order of decreasing significance (highest polynomial
// degree first), so the representation is unique and coset reduction yields
// the minimum coset member in the global element order.
class SubspaceBasis {
public:
    SubspaceBasis() = default;

    std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
    const std::vector<FieldElement>& rows() const { return rows_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }
    std::uint64_t cardinality(const FieldCtx& ctx) const;

    friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

private:
    std::vector<FieldElement> rows_;      // RREF rows, pivot significance descending
    std::vector<std::uint32_t> pivots_;   // pivot coordinate of each row

    friend SubspaceBasis span(const FieldCtx&, std::span<const FieldElement>);
    friend std::vector<SubspaceBasis> enumerate_subspaces(const FieldCtx&, std::uint32_t,
                                                          std::uint64_t);
};

SubspaceBasis span(const FieldCtx& ctx, std::span<const FieldElement> vectors);

// Residual of x after clearing the pivot coordinates; zero iff x is in the
// span. For a coset x + L this is the minimum member of the coset.
FieldElement reduce_mod(const FieldCtx& ctx, const SubspaceBasis& basis, FieldElement x);
bool contains(const FieldCtx& ctx, const SubspaceBasis& basis, FieldElement x);

// All p^dim members in the deterministic combination order.
std::vector<FieldElement> members(const FieldCtx& ctx, const SubspaceBasis& basis,
                                  std::uint64_t cap = kMemberCap);

// L-perp under the trace pairing <x,y> = Tr(xy). #L * #L_perp = q.
SubspaceBasis orthogonal_complement(const FieldCtx& ctx, const SubspaceBasis& basis);

// Number of dim-dimensional subspaces (the Gaussian binomial coefficient).
std::uint64_t count_subspaces(const FieldCtx& ctx, std::uint32_t dim);

// Every subspace of the given dimension exactly once, by RREF pivot-pattern
// enumeration; throws cap_error when the count exceeds the cap.
std::vector<SubspaceBasis> enumerate_subspaces(const FieldCtx& ctx, std::uint32_t dim,
                                               std::uint64_t cap = kSubspaceEnumCap);

// Affine subspace base + directions; the base is canonicalized to the
// minimum member so equal affine sets compare equal.
struct AffineSubspace {
    FieldElement base;
    SubspaceBasis directions;

    std::uint64_t cardinality(const FieldCtx& ctx) const { return directions.cardinality(ctx); }
    friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
};

AffineSubspace make_affine(const FieldCtx& ctx, FieldElement point, SubspaceBasis directions);
std::vector<FieldElement> members(const FieldCtx& ctx, const AffineSubspace& space,
                                  std::uint64_t cap = kMemberCap);
bool contains(const FieldCtx& ctx, const AffineSubspace& space, FieldElement x);

// Seed-reproducible affine subspace of the requested dimension.
AffineSubspace random_affine_subspace(const FieldCtx& ctx, std::uint32_t dim, std::uint64_t seed);

}
