#include "ksum/field.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ksum/errors.hpp"
#include "poly.hpp"

namespace ksum {

using detail::Poly;

namespace {

std::uint32_t smallest_prime_factor(std::uint32_t v) {
    for (std::uint32_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return d;
    }
    return v;
}

}  // namespace

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t n, const FieldOptions& opts) {
    if (!detail::is_prime(p)) {
        throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    }
    if (n < 1 || n > 24) {
        throw std::invalid_argument("extension degree must be in [1, 24], got " + std::to_string(n));
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (q > opts.size_cap / p + 1) {
            throw cap_error("field size p^n exceeds the size cap");
        }
        q *= p;
    }
    if (q > opts.size_cap) {
        throw cap_error("field size p^n = " + std::to_string(q) + " exceeds the size cap");
    }

    FieldCtx ctx;
    ctx.params_.p = p;
    ctx.params_.n = n;
    ctx.q_ = q;
    ctx.ppow_.resize(n + 1);
    ctx.ppow_[0] = 1;
    for (std::uint32_t i = 1; i <= n; ++i) ctx.ppow_[i] = ctx.ppow_[i - 1] * p;

    // Smallest monic irreducible of degree n: scan lower coefficients in the
    // global element order (constant term least significant digit).
    Poly modulus;
    std::uint64_t low_count = ctx.ppow_[n];
    for (std::uint64_t k = 0; k < low_count; ++k) {
        Poly f(n + 1, 0);
        std::uint64_t v = k;
        for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[n] = 1;
        if (detail::poly_irreducible(f, p)) {
            modulus = std::move(f);
            break;
        }
    }
    assert(!modulus.empty());
    ctx.params_.modulus.assign(modulus.begin(), modulus.end());

    // Tr(X^i) for each power basis element, via the Frobenius matrix.
    Poly x{0, 1};
    Poly h = detail::poly_powmod(x, p, modulus, p);  // X^p mod f
    std::vector<std::vector<std::uint32_t>> frob(n, std::vector<std::uint32_t>(n, 0));
    Poly col{1};
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t r = 0; r < n; ++r) {
            frob[r][i] = r < col.size() ? col[r] : 0;
        }
        if (i + 1 < n) col = detail::poly_mod(detail::poly_mul(col, h, p), modulus, p);
    }
    ctx.tr_basis_.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> w(n, 0), acc(n, 0);
        w[i] = 1;
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t r = 0; r < n; ++r) acc[r] = detail::add_mod(acc[r], w[r], p);
            if (j + 1 < n) {
                std::vector<std::uint32_t> nw(n, 0);
                for (std::uint32_t r = 0; r < n; ++r) {
                    std::uint64_t s = 0;
                    for (std::uint32_t c = 0; c < n; ++c) {
                        s += std::uint64_t{frob[r][c]} * w[c];
                    }
                    nw[r] = static_cast<std::uint32_t>(s % p);
                }
                w = std::move(nw);
            }
        }
        for (std::uint32_t r = 1; r < n; ++r) {
            if (acc[r] != 0) throw std::logic_error("trace of basis element not in prime field");
        }
        ctx.tr_basis_[i] = acc[0];
    }

    // Nondegeneracy of the trace pairing: the Gram matrix of the power basis
    // must have full rank over F_p.
    {
        std::vector<std::vector<std::uint32_t>> gram(n, std::vector<std::uint32_t>(n, 0));
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j <= i; ++j) {
                Poly prod(i + j + 1, 0);
                prod[i + j] = 1;
                prod = detail::poly_mod(prod, modulus, p);
                std::uint64_t t = 0;
                for (std::size_t c = 0; c < prod.size(); ++c) {
                    t += std::uint64_t{prod[c]} * ctx.tr_basis_[c];
                }
                gram[i][j] = gram[j][i] = static_cast<std::uint32_t>(t % p);
            }
        }
        std::uint32_t rank = 0;
        for (std::uint32_t c = 0; c < n && rank < n; ++c) {
            std::uint32_t pivot = rank;
            while (pivot < n && gram[pivot][c] == 0) ++pivot;
            if (pivot == n) continue;
            std::swap(gram[rank], gram[pivot]);
            std::uint32_t s = detail::inv_mod(gram[rank][c], p);
            for (auto& v : gram[rank]) v = detail::mul_mod(v, s, p);
            for (std::uint32_t r = 0; r < n; ++r) {
                if (r != rank && gram[r][c] != 0) {
                    std::uint32_t f0 = gram[r][c];
                    for (std::uint32_t cc = 0; cc < n; ++cc) {
                        gram[r][cc] = detail::sub_mod(
                            gram[r][cc], detail::mul_mod(f0, gram[rank][cc], p), p);
                    }
                }
            }
            ++rank;
        }
        if (rank != n) throw std::logic_error("trace pairing is degenerate");
    }

    if (q <= opts.table_cap) ctx.build_tables();
    return ctx;
}

void FieldCtx::build_tables() {
    const std::uint32_t p = params_.p;
    const std::uint64_t q = q_;
    const Poly modulus(params_.modulus.begin(), params_.modulus.end());

    // Smallest generator of F_q^* in the element order.
    std::uint64_t order = q - 1;
    auto factors = detail::prime_factors(order);
    std::uint32_t gen = 1;
    for (std::uint64_t cand = 1; cand < q; ++cand) {
        Poly c = to_poly(FieldElement{static_cast<std::uint32_t>(cand)});
        bool ok = true;
        for (std::uint64_t r : factors) {
            Poly e = detail::poly_powmod(c, order / r, modulus, p);
            if (detail::degree(e) == 0 && e[0] == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = static_cast<std::uint32_t>(cand);
            break;
        }
    }
    generator_ = gen;

    exp_.assign(2 * order, 0);
    log_.assign(q, 0);
    Poly g = to_poly(FieldElement{gen});
    Poly acc{1};
    for (std::uint64_t k = 0; k < order; ++k) {
        std::uint32_t idx = from_poly(acc).idx;
        exp_[k] = idx;
        exp_[k + order] = idx;
        log_[idx] = static_cast<std::uint32_t>(k);
        if (k + 1 < order) acc = detail::poly_mod(detail::poly_mul(acc, g, p), modulus, p);
    }

    inv_table_.assign(q, 0);
    for (std::uint64_t x = 1; x < q; ++x) {
        std::uint64_t k = log_[x];
        inv_table_[x] = exp_[(order - k) % order];
    }

    trace_table_.assign(q, 0);
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t v = x, t = 0;
        for (std::uint32_t i = 0; i < params_.n; ++i) {
            t += (v % p) * tr_basis_[i];
            v /= p;
        }
        trace_table_[x] = static_cast<std::uint32_t>(t % p);
    }
    has_tables_ = true;
}

FieldElement FieldCtx::from_index(std::uint64_t idx) const {
    if (idx >= q_) throw std::out_of_range("element index out of range");
    return FieldElement{static_cast<std::uint32_t>(idx)};
}

FieldElement FieldCtx::from_coeffs(std::span<const std::int64_t> coeffs) const {
    if (coeffs.size() > params_.n) {
        throw std::invalid_argument("too many coefficients for this field");
    }
    const std::int64_t p = params_.p;
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t c = coeffs[i] % p;
        if (c < 0) c += p;
        idx += static_cast<std::uint64_t>(c) * ppow_[i];
    }
    return FieldElement{static_cast<std::uint32_t>(idx)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElement x) const {
    std::vector<std::uint32_t> out(params_.n, 0);
    std::uint64_t v = x.idx;
    for (std::uint32_t i = 0; i < params_.n; ++i) {
        out[i] = static_cast<std::uint32_t>(v % params_.p);
        v /= params_.p;
    }
    return out;
}

FieldElement FieldCtx::add(FieldElement x, FieldElement y) const {
    if (params_.p == 2) return FieldElement{x.idx ^ y.idx};
    std::uint64_t a = x.idx, b = y.idx, out = 0;
    const std::uint32_t p = params_.p;
    for (std::uint32_t i = 0; i < params_.n && (a || b); ++i) {
        std::uint32_t d = detail::add_mod(static_cast<std::uint32_t>(a % p),
                                          static_cast<std::uint32_t>(b % p), p);
        out += std::uint64_t{d} * ppow_[i];
        a /= p;
        b /= p;
    }
    return FieldElement{static_cast<std::uint32_t>(out)};
}

FieldElement FieldCtx::neg(FieldElement x) const {
    if (params_.p == 2) return x;
    std::uint64_t a = x.idx, out = 0;
    const std::uint32_t p = params_.p;
    for (std::uint32_t i = 0; i < params_.n && a; ++i) {
        std::uint32_t d = static_cast<std::uint32_t>(a % p);
        if (d != 0) out += std::uint64_t{p - d} * ppow_[i];
        a /= p;
    }
    return FieldElement{static_cast<std::uint32_t>(out)};
}

FieldElement FieldCtx::sub(FieldElement x, FieldElement y) const {
    return add(x, neg(y));
}

FieldElement FieldCtx::scalar_mul(std::uint32_t c, FieldElement x) const {
    const std::uint32_t p = params_.p;
    c %= p;
    if (c == 0) return zero();
    if (c == 1) return x;
    std::uint64_t a = x.idx, out = 0;
    for (std::uint32_t i = 0; i < params_.n && a; ++i) {
        std::uint32_t d = detail::mul_mod(static_cast<std::uint32_t>(a % p), c, p);
        out += std::uint64_t{d} * ppow_[i];
        a /= p;
    }
    return FieldElement{static_cast<std::uint32_t>(out)};
}

std::vector<std::uint32_t> FieldCtx::to_poly(FieldElement x) const {
    Poly f = coeffs(x);
    detail::trim(f);
    return f;
}

FieldElement FieldCtx::from_poly(const std::vector<std::uint32_t>& f) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < f.size(); ++i) idx += std::uint64_t{f[i]} * ppow_[i];
    return FieldElement{static_cast<std::uint32_t>(idx)};
}

FieldElement FieldCtx::mul(FieldElement x, FieldElement y) const {
    if (x.idx == 0 || y.idx == 0) return zero();
    if (has_tables_) {
        return FieldElement{exp_[std::uint64_t{log_[x.idx]} + log_[y.idx]]};
    }
    Poly modulus(params_.modulus.begin(), params_.modulus.end());
    return from_poly(
        detail::poly_mod(detail::poly_mul(to_poly(x), to_poly(y), params_.p), modulus, params_.p));
}

FieldElement FieldCtx::inv(FieldElement x) const {
    if (x.idx == 0) throw std::domain_error("inverse of zero");
    if (has_tables_) return FieldElement{inv_table_[x.idx]};
    Poly modulus(params_.modulus.begin(), params_.modulus.end());
    return from_poly(detail::poly_inverse(to_poly(x), modulus, params_.p));
}

FieldElement FieldCtx::pow(FieldElement x, std::uint64_t e) const {
    FieldElement result = one();
    FieldElement acc = x;
    while (e > 0) {
        if (e & 1) result = mul(result, acc);
        e >>= 1;
        if (e) acc = mul(acc, acc);
    }
    return result;
}

std::uint32_t FieldCtx::trace(FieldElement x) const {
    if (has_tables_) return trace_table_[x.idx];
    std::uint64_t v = x.idx, t = 0;
    const std::uint32_t p = params_.p;
    for (std::uint32_t i = 0; i < params_.n; ++i) {
        t += (v % p) * tr_basis_[i];
        v /= p;
    }
    return static_cast<std::uint32_t>(t % p);
}

std::uint64_t FieldCtx::largest_proper_subfield_size() const {
    if (params_.n == 1) return 1;
    std::uint32_t m = params_.n / smallest_prime_factor(params_.n);
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < m; ++i) s *= params_.p;
    return s;
}

std::vector<FieldElement> FieldCtx::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out.push_back(FieldElement{static_cast<std::uint32_t>(i)});
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_power_fields(std::uint64_t limit) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    std::vector<std::pair<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>> keyed;
    for (std::uint32_t p = 2; p <= limit; ++p) {
        if (!detail::is_prime(p)) continue;
        std::uint64_t q = p;
        std::uint32_t n = 1;
        while (q <= limit) {
            keyed.push_back({q, {p, n}});
            if (q > limit / p) break;
            q *= p;
            ++n;
        }
    }
    std::sort(keyed.begin(), keyed.end());
    out.reserve(keyed.size());
    for (auto& [q, pn] : keyed) out.push_back(pn);
    return out;
}

}
