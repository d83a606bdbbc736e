#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ksum/field.hpp"

namespace ksum {

// Additive character psi_a(x) = e(Tr(a*x)/p). The canonical character has
// a = 1; a = 0 is the trivial character.
struct AdditiveCharacter {
    FieldElement a{1};
    bool trivial() const { return a.idx == 0; }
};

// Exact value of a character sum: counts[j] is the multiplicity of the
// p-th root of unity e(j/p). Complex doubles only appear at evaluation.
class CyclotomicSum {
public:
    CyclotomicSum() = default;
    explicit CyclotomicSum(std::uint32_t p) : counts_(p, 0) {}

    std::uint32_t p() const { return static_cast<std::uint32_t>(counts_.size()); }
    const std::vector<std::int64_t>& counts() const { return counts_; }

    void add_exponent(std::uint32_t j, std::int64_t weight = 1) { counts_[j] += weight; }

    CyclotomicSum& operator+=(const CyclotomicSum& other);
    friend bool operator==(const CyclotomicSum&, const CyclotomicSum&) = default;

    std::int64_t total_weight() const;

    // For prime p the sum is exactly zero iff all counts coincide.
    bool is_zero_exact() const;

    std::complex<double> value() const;

private:
    std::vector<std::int64_t> counts_;
};

// Tr(a*x) as an integer in [0, p); psi_a(x) = e(result/p).
std::uint32_t psi_exponent(const FieldCtx& ctx, AdditiveCharacter chi, FieldElement x);

// Exact histogram of psi_a over a set of elements.
CyclotomicSum char_sum(const FieldCtx& ctx, AdditiveCharacter chi,
                       std::span<const FieldElement> set);

inline std::complex<double> eval_complex(const CyclotomicSum& cs) { return cs.value(); }

}
