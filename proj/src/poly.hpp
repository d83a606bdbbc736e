#pragma once

// Internal dense polynomial arithmetic over F_p, little-endian coefficient
// vectors (coeff[i] multiplies X^i). Only what field construction needs.

#include <cstdint>
#include <vector>

namespace ksum::detail {

using Poly = std::vector<std::uint32_t>;

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

bool is_prime(std::uint64_t v);
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

int degree(const Poly& f);
void trim(Poly& f);
Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p);
// a = q*b + r with deg r < deg b; b nonzero.
void poly_divmod(const Poly& a, const Poly& b, std::uint32_t p, Poly& q, Poly& r);
Poly poly_mod(const Poly& a, const Poly& f, std::uint32_t p);
Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& f, std::uint32_t p);
Poly poly_gcd(Poly a, Poly b, std::uint32_t p);
// Inverse of a modulo f; a must be coprime to f.
Poly poly_inverse(const Poly& a, const Poly& f, std::uint32_t p);
bool poly_irreducible(const Poly& f, std::uint32_t p);

}
