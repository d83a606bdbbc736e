#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksum/field.hpp"

namespace ksum {

// Sets are sorted, duplicate-free element vectors.
std::vector<FieldElement> normalize_set(std::vector<FieldElement> elems);

// 2S = { s + t : s, t in S }.
std::vector<FieldElement> sumset_2S(const FieldCtx& ctx, std::span<const FieldElement> S);

// S^{-1} = { 1/s : s in S }; 0 must not be in S.
std::vector<FieldElement> inverse_set(const FieldCtx& ctx, std::span<const FieldElement> S);

// Number of quadruples with s1 + s2 = s3 + s4, via the pair-sum histogram:
// E(S) = sum_w r(w)^2 with r(w) = #{(s1,s2) : s1+s2 = w}.
std::uint64_t additive_energy(const FieldCtx& ctx, std::span<const FieldElement> S,
                              std::uint64_t cap = 100000);

// Independent O(#S^4) quadruple counter for cross-validation.
std::uint64_t additive_energy_oracle(const FieldCtx& ctx, std::span<const FieldElement> S,
                                     std::uint64_t cap = 200);

// (T^(173/104) + q^(-1/285) T^(476/285)) * S^(4/3).
double energy_bound_rhs(std::uint64_t S_size, std::uint64_t T_size, std::uint64_t q);

// min{ S^(832/831), q^(1/761) S^(760/761) }, compared against max{T, U}.
struct SumsetGrowthRhs {
    double branch_plain;   // S^(832/831)
    double branch_qterm;   // q^(1/761) S^(760/761)
    double value;          // the min
    bool plain_active;     // first branch attains the min
};

SumsetGrowthRhs sumset_growth_rhs(std::uint64_t S_size, std::uint64_t q);

// S^4 <= #(2 S^{-1}) * E(S^{-1}), in exact integers.
struct CauchyCheck {
    unsigned __int128 lhs = 0;
    unsigned __int128 rhs = 0;
    bool holds = false;
    double slack = 0.0;  // rhs / lhs for nonempty S
};

CauchyCheck cauchy_check(const FieldCtx& ctx, std::span<const FieldElement> S);

// T >= G^(52/51) for the largest proper subfield G.
bool subfield_condition(const FieldCtx& ctx, std::uint64_t T_size);

// All inverse-set statistics for one set: sizes of 2S and 2S^{-1}, the
// energy of S^{-1}, the bound right-hand sides and the hypothesis flag.
struct EnergyReport {
    std::uint64_t s_size = 0;
    std::uint64_t t_size = 0;       // #(2S)
    std::uint64_t u_size = 0;       // #(2 S^{-1})
    std::uint64_t energy_inv = 0;   // E(S^{-1})
    double energy_rhs = 0.0;        // energy_bound_rhs(s_size, t_size, q)
    double growth_rhs = 0.0;        // sumset_growth_rhs(s_size, q).value
    bool subfield_ok = false;
    CauchyCheck cauchy;
};

EnergyReport make_energy_report(const FieldCtx& ctx, std::span<const FieldElement> S);

}
