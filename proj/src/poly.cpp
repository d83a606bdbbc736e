#include "poly.hpp"

#include <cassert>
#include <stdexcept>

namespace ksum::detail {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
        }
    }
    trim(out);
    return out;
}

void poly_divmod(const Poly& a, const Poly& b, std::uint32_t p, Poly& q, Poly& r) {
    int db = degree(b);
    assert(db >= 0);
    r = a;
    trim(r);
    q.clear();
    int dr = degree(r);
    if (dr < db) return;
    q.assign(static_cast<std::size_t>(dr - db + 1), 0);
    std::uint32_t lead_inv = inv_mod(b[static_cast<std::size_t>(db)], p);
    while ((dr = degree(r)) >= db) {
        std::uint32_t c = mul_mod(r[static_cast<std::size_t>(dr)], lead_inv, p);
        int shift = dr - db;
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i) {
            std::size_t ri = static_cast<std::size_t>(i + shift);
            r[ri] = sub_mod(r[ri], mul_mod(c, b[static_cast<std::size_t>(i)], p), p);
        }
    }
    trim(r);
}

Poly poly_mod(const Poly& a, const Poly& f, std::uint32_t p) {
    Poly q, r;
    poly_divmod(a, f, p, q, r);
    return r;
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly result{1};
    Poly acc = poly_mod(base, f, p);
    while (e > 0) {
        if (e & 1) result = poly_mod(poly_mul(result, acc, p), f, p);
        e >>= 1;
        if (e) acc = poly_mod(poly_mul(acc, acc, p), f, p);
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    int d = degree(a);
    if (d >= 0 && a[static_cast<std::size_t>(d)] != 1) {
        std::uint32_t s = inv_mod(a[static_cast<std::size_t>(d)], p);
        for (auto& c : a) c = mul_mod(c, s, p);
    }
    return a;
}

Poly poly_inverse(const Poly& a, const Poly& f, std::uint32_t p) {
    // extended Euclid on polynomials: maintain t with t*a = r (mod f)
    Poly r0 = f, r1 = poly_mod(a, f, p);
    Poly t0{}, t1{1};
    if (degree(r1) < 0) throw std::domain_error("poly_inverse: zero element");
    while (degree(r1) > 0) {
        Poly q, r;
        poly_divmod(r0, r1, p, q, r);
        Poly t = t0;
        Poly qt = poly_mul(q, t1, p);
        // t = t0 - q*t1
        t.resize(std::max(t.size(), qt.size()), 0);
        for (std::size_t i = 0; i < qt.size(); ++i) t[i] = sub_mod(t[i], qt[i], p);
        trim(t);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (degree(r1) != 0) throw std::domain_error("poly_inverse: not coprime");
    std::uint32_t s = inv_mod(r1[0], p);
    for (auto& c : t1) c = mul_mod(c, s, p);
    trim(t1);
    return poly_mod(t1, f, p);
}

namespace {

// Exhaustive divisor check, used for small degrees.
bool irreducible_by_trial_division(const Poly& f, std::uint32_t p) {
    int n = degree(f);
    for (int d = 1; 2 * d <= n; ++d) {
        // all monic polynomials of degree d
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t k = 0; k < count; ++k) {
            Poly g(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t v = k;
            for (int i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[static_cast<std::size_t>(d)] = 1;
            Poly q, r;
            poly_divmod(f, g, p, q, r);
            if (r.empty()) return false;
        }
    }
    return true;
}

}  // namespace

bool poly_irreducible(const Poly& f, std::uint32_t p) {
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (f[0] == 0) return false;  // divisible by X
    if (n <= 4) return irreducible_by_trial_division(f, p);

    // X^{p^n} == X (mod f) and gcd(X^{p^{n/r}} - X, f) = 1 for prime r | n.
    Poly x{0, 1};
    // frob[k] = X^{p^k} mod f, built by repeated p-th powering
    std::vector<Poly> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = x;
    for (int k = 1; k <= n; ++k) {
        frob[static_cast<std::size_t>(k)] =
            poly_powmod(frob[static_cast<std::size_t>(k - 1)], p, f, p);
    }
    Poly top = frob[static_cast<std::size_t>(n)];
    if (top != x) return false;
    for (std::uint64_t r : prime_factors(n)) {
        Poly h = frob[static_cast<std::size_t>(n / r)];
        // h - X
        Poly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        trim(diff);
        Poly g = poly_gcd(diff, f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}
