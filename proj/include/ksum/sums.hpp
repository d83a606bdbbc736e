#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ksum/character.hpp"
#include "ksum/field.hpp"
#include "ksum/subspace.hpp"

namespace ksum {

// Complex weights alpha_v on a finite support, kept sorted by element order.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<std::pair<FieldElement, std::complex<double>>> entries);

    const std::vector<std::pair<FieldElement, std::complex<double>>>& entries() const {
        return entries_;
    }
    std::size_t support_size() const { return entries_.size(); }
    std::vector<FieldElement> support() const;

    // (sum |alpha_v|^rho)^(1/rho); rho must be positive.
    double norm(double rho) const;

private:
    std::vector<std::pair<FieldElement, std::complex<double>>> entries_;
};

WeightVector ones_weights(std::span<const FieldElement> support);

// S_psi(U, V) = sum over u in U, v in V of K_psi(u, v), evaluated through
// the reordering sum_x (sum_u psi(ux)) (sum_v psi(v/x)) at cost
// O(q (#U + #V)). Each inner factor is accumulated exactly before the
// complex multiply.
std::complex<double> double_sum_direct(const FieldCtx& ctx, AdditiveCharacter chi,
                                       std::span<const FieldElement> U,
                                       std::span<const FieldElement> V,
                                       std::uint64_t budget = std::uint64_t{1} << 28);

// S = { x != 0 : x in L_perp and 1/x in M_perp }.
struct CriticalSet {
    std::vector<FieldElement> elements;
    std::uint64_t lperp_size = 0;
    std::uint64_t mperp_size = 0;
};

CriticalSet critical_set(const FieldCtx& ctx, const SubspaceBasis& L, const SubspaceBasis& M);

// #A * #B * sum over the critical set of psi(a0*x + b0/x) with a0, b0 the
// canonical base points. Equals double_sum_direct on the same member sets.
struct AffineDoubleSum {
    std::complex<double> value;
    std::uint64_t critical_size = 0;
    CyclotomicSum phases;  // histogram over the critical set, before the #A#B scale
};

AffineDoubleSum double_sum_affine(const FieldCtx& ctx, AdditiveCharacter chi,
                                  const AffineSubspace& A, const AffineSubspace& B);

// S_psi(alpha; A, V) = sum over a in A, v in V of alpha_v K_psi(a, v),
// evaluated as #A * sum over nonzero x in L_perp of
// psi(a0*x) * sum_v alpha_v psi(v/x).
std::complex<double> weighted_sum(const FieldCtx& ctx, AdditiveCharacter chi,
                                  const WeightVector& alpha, const AffineSubspace& A);

// 2 * #A * sqrt(q) * ||alpha||_1.
double trivial_bound(std::uint64_t A_size, std::uint64_t q, double alpha_norm1);

// K(0,0) = q - 1 exceeds the 2*sqrt(q) share the trivial bound charges it,
// so a sum whose index set contains (0,0) is bounded by the trivial bound
// plus this excess (times the weight on the degenerate term).
double degenerate_pair_excess(std::uint64_t q);

// max{ q^(52/153), (q/A)^(831/832), (q/A)^(761/760) q^(-1/760) };
// multiplied by A*B by the caller. Exponents applied in log space.
struct Thm1Rhs {
    double term_q;      // q^(52/153)
    double term_qa_1;   // (q/A)^(831/832)
    double term_qa_2;   // (q/A)^(761/760) * q^(-1/760)
    double max_term;
    int argmax;         // 0, 1 or 2
};

Thm1Rhs thm1_rhs(std::uint64_t q, std::uint64_t A_size);

// A * q^(1/4) * sqrt(||alpha||_1 ||alpha||_2) *
//   max{ q^(13/51), (q/A)^(935/1248), q^(-1/1140) (q/A)^(214/285) }.
double thm2_rhs(std::uint64_t q, std::uint64_t A_size, double alpha_norm1, double alpha_norm2);

// Regimes where the bounds beat the trivial one.
bool thm1_nontrivial(std::uint64_t q, std::uint64_t A_size);                       // A >= q^(415/831)
bool thm2_nontrivial(std::uint64_t q, std::uint64_t A_size, std::uint64_t V_size); // A^(935/623) V^(312/623) > q

}
