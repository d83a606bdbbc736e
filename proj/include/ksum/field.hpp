#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ksum {

// Description of F_{p^n} = F_p[X]/f with f monic irreducible of degree n,
// coefficients listed constant term first.
struct FieldParams {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> modulus;
};

// An element of F_{p^n}, identified by the rank of its coefficient vector in
// the global element order: the constant term is the least significant
// base-p digit of idx. Rank 0 is the zero element.
struct FieldElement {
    std::uint32_t idx = 0;
    friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

struct FieldOptions {
    std::uint64_t size_cap = std::uint64_t{1} << 20;   // largest admissible q
    std::uint64_t table_cap = std::uint64_t{1} << 20;  // lookup tables built when q <= table_cap
};

class FieldCtx {
public:
    // Constructs F_{p^n} with the smallest monic irreducible modulus in the
    // global polynomial order (constant term least significant digit).
    // Deterministic across runs and platforms.
    static FieldCtx make(std::uint32_t p, std::uint32_t n, const FieldOptions& opts = {});

    std::uint32_t p() const { return params_.p; }
    std::uint32_t n() const { return params_.n; }
    std::uint64_t q() const { return q_; }
    const FieldParams& params() const { return params_; }
    bool has_tables() const { return has_tables_; }

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }

    FieldElement from_index(std::uint64_t idx) const;
    // Accepts up to n coefficients, reduces each mod p; missing high
    // coefficients are zero.
    FieldElement from_coeffs(std::span<const std::int64_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(FieldElement x) const;

    FieldElement add(FieldElement x, FieldElement y) const;
    FieldElement sub(FieldElement x, FieldElement y) const;
    FieldElement neg(FieldElement x) const;
    FieldElement mul(FieldElement x, FieldElement y) const;
    FieldElement inv(FieldElement x) const;  // throws std::domain_error on 0
    FieldElement pow(FieldElement x, std::uint64_t e) const;

    // Tr(x) = x + x^p + ... + x^{p^(n-1)}, returned as its representative
    // in [0, p).
    std::uint32_t trace(FieldElement x) const;

    // p^m for the largest proper divisor m of n; 1 when n = 1.
    std::uint64_t largest_proper_subfield_size() const;

    // All q elements in the global element order (0 first).
    std::vector<FieldElement> elements() const;

    // Scalar multiple c*x with c in the prime field.
    FieldElement scalar_mul(std::uint32_t c, FieldElement x) const;

private:
    FieldParams params_;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> ppow_;  // p^0 .. p^n

    // Tr(X^i) for i in [0, n): trace of any element is the F_p-linear
    // combination of these.
    std::vector<std::uint32_t> tr_basis_;

    bool has_tables_ = false;
    std::uint32_t generator_ = 0;           // index of a generator of F_q^*
    std::vector<std::uint32_t> exp_;         // exp_[k] = index of g^k, k in [0, 2(q-1))
    std::vector<std::uint32_t> log_;         // log_[x] for x != 0
    std::vector<std::uint32_t> inv_table_;
    std::vector<std::uint32_t> trace_table_;

    std::vector<std::uint32_t> to_poly(FieldElement x) const;
    FieldElement from_poly(const std::vector<std::uint32_t>& f) const;
    void build_tables();

    friend class FieldTestAccess;
};

// Prime-power fields (p, n) with p^n <= limit, ordered by q then p. Handy
// for exhaustive suites.
std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_power_fields(std::uint64_t limit);

}
