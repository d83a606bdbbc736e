#include "ksum/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ksum/errors.hpp"

namespace ksum {

WeightVector::WeightVector(std::vector<std::pair<FieldElement, std::complex<double>>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].first == entries_[i - 1].first) {
            throw std::invalid_argument("duplicate support element in weight vector");
        }
    }
}

std::vector<FieldElement> WeightVector::support() const {
    std::vector<FieldElement> out;
    out.reserve(entries_.size());
    for (const auto& [v, w] : entries_) out.push_back(v);
    return out;
}

double WeightVector::norm(double rho) const {
    if (!(rho > 0.0)) throw std::domain_error("norm exponent must be positive");
    double s = 0.0;
    for (const auto& [v, w] : entries_) s += std::pow(std::abs(w), rho);
    return std::pow(s, 1.0 / rho);
}

WeightVector ones_weights(std::span<const FieldElement> support) {
    std::vector<std::pair<FieldElement, std::complex<double>>> e;
    e.reserve(support.size());
    for (FieldElement v : support) e.push_back({v, {1.0, 0.0}});
    return WeightVector(std::move(e));
}

std::complex<double> double_sum_direct(const FieldCtx& ctx, AdditiveCharacter chi,
                                       std::span<const FieldElement> U,
                                       std::span<const FieldElement> V, std::uint64_t budget) {
    const std::uint64_t q = ctx.q();
    if (q * (U.size() + V.size()) > budget) {
        throw cap_error("double sum evaluation exceeds the work budget");
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t xi = 1; xi < q; ++xi) {
        const FieldElement x{static_cast<std::uint32_t>(xi)};
        const FieldElement xin = ctx.inv(x);
        CyclotomicSum hu(ctx.p()), hv(ctx.p());
        for (FieldElement u : U) hu.add_exponent(ctx.trace(ctx.mul(chi.a, ctx.mul(u, x))));
        for (FieldElement v : V) hv.add_exponent(ctx.trace(ctx.mul(chi.a, ctx.mul(v, xin))));
        acc += hu.value() * hv.value();
    }
    return acc;
}

CriticalSet critical_set(const FieldCtx& ctx, const SubspaceBasis& L, const SubspaceBasis& M) {
    const SubspaceBasis lperp = orthogonal_complement(ctx, L);
    const SubspaceBasis mperp = orthogonal_complement(ctx, M);

    CriticalSet out;
    out.lperp_size = lperp.cardinality(ctx);
    out.mperp_size = mperp.cardinality(ctx);

    if (out.lperp_size <= out.mperp_size) {
        for (FieldElement x : members(ctx, lperp)) {
            if (x.idx == 0) continue;
            if (contains(ctx, mperp, ctx.inv(x))) out.elements.push_back(x);
        }
    } else {
        for (FieldElement y : members(ctx, mperp)) {
            if (y.idx == 0) continue;
            FieldElement x = ctx.inv(y);
            if (contains(ctx, lperp, x)) out.elements.push_back(x);
        }
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

AffineDoubleSum double_sum_affine(const FieldCtx& ctx, AdditiveCharacter chi,
                                  const AffineSubspace& A, const AffineSubspace& B) {
    const CriticalSet s = critical_set(ctx, A.directions, B.directions);
    const FieldElement a0 = ctx.mul(chi.a, A.base);
    const FieldElement b0 = ctx.mul(chi.a, B.base);
    const std::uint32_t p = ctx.p();

    CyclotomicSum phases(p);
    for (FieldElement x : s.elements) {
        std::uint32_t e = ctx.trace(ctx.mul(a0, x)) + ctx.trace(ctx.mul(b0, ctx.inv(x)));
        if (e >= p) e -= p;
        phases.add_exponent(e);
    }
    const double scale =
        static_cast<double>(A.cardinality(ctx)) * static_cast<double>(B.cardinality(ctx));

    AffineDoubleSum out;
    out.critical_size = s.elements.size();
    out.value = scale * phases.value();
    out.phases = std::move(phases);
    return out;
}

std::complex<double> weighted_sum(const FieldCtx& ctx, AdditiveCharacter chi,
                                  const WeightVector& alpha, const AffineSubspace& A) {
    const SubspaceBasis lperp = orthogonal_complement(ctx, A.directions);
    const FieldElement a0 = ctx.mul(chi.a, A.base);
    const double two_pi_over_p = 2.0 * std::numbers::pi / static_cast<double>(ctx.p());

    std::complex<double> acc{0.0, 0.0};
    for (FieldElement x : members(ctx, lperp)) {
        if (x.idx == 0) continue;  // the defining sum runs over nonzero x
        const FieldElement xin = ctx.inv(x);
        std::complex<double> inner{0.0, 0.0};
        for (const auto& [v, w] : alpha.entries()) {
            const double t =
                two_pi_over_p * static_cast<double>(ctx.trace(ctx.mul(chi.a, ctx.mul(v, xin))));
            inner += w * std::complex<double>{std::cos(t), std::sin(t)};
        }
        const double ph = two_pi_over_p * static_cast<double>(ctx.trace(ctx.mul(a0, x)));
        acc += std::complex<double>{std::cos(ph), std::sin(ph)} * inner;
    }
    return static_cast<double>(A.cardinality(ctx)) * acc;
}

double trivial_bound(std::uint64_t A_size, std::uint64_t q, double alpha_norm1) {
    return 2.0 * static_cast<double>(A_size) * std::sqrt(static_cast<double>(q)) * alpha_norm1;
}

double degenerate_pair_excess(std::uint64_t q) {
    const double qd = static_cast<double>(q);
    return std::max(0.0, qd - 1.0 - 2.0 * std::sqrt(qd));
}

namespace {

// x^(num/den) in log space; exponent ratios here differ by ~1e-3 so the
// rational form is kept explicit.
double rpow(double x, std::int64_t num, std::int64_t den) {
    return std::exp(std::log(x) * static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

Thm1Rhs thm1_rhs(std::uint64_t q, std::uint64_t A_size) {
    if (A_size == 0 || A_size > q) throw std::invalid_argument("need 0 < A <= q");
    const double qd = static_cast<double>(q);
    const double qa = qd / static_cast<double>(A_size);

    Thm1Rhs out{};
    out.term_q = rpow(qd, 52, 153);
    out.term_qa_1 = rpow(qa, 831, 832);
    out.term_qa_2 = rpow(qa, 761, 760) * rpow(qd, -1, 760);
    out.max_term = out.term_q;
    out.argmax = 0;
    if (out.term_qa_1 > out.max_term) {
        out.max_term = out.term_qa_1;
        out.argmax = 1;
    }
    if (out.term_qa_2 > out.max_term) {
        out.max_term = out.term_qa_2;
        out.argmax = 2;
    }
    return out;
}

double thm2_rhs(std::uint64_t q, std::uint64_t A_size, double alpha_norm1, double alpha_norm2) {
    if (A_size == 0 || A_size > q) throw std::invalid_argument("need 0 < A <= q");
    const double qd = static_cast<double>(q);
    const double qa = qd / static_cast<double>(A_size);
    const double m = std::max({rpow(qd, 13, 51), rpow(qa, 935, 1248),
                               rpow(qd, -1, 1140) * rpow(qa, 214, 285)});
    return static_cast<double>(A_size) * rpow(qd, 1, 4) * std::sqrt(alpha_norm1 * alpha_norm2) * m;
}

bool thm1_nontrivial(std::uint64_t q, std::uint64_t A_size) {
    return std::log(static_cast<double>(A_size)) * 831.0 >=
           std::log(static_cast<double>(q)) * 415.0;
}

bool thm2_nontrivial(std::uint64_t q, std::uint64_t A_size, std::uint64_t V_size) {
    return 935.0 * std::log(static_cast<double>(A_size)) +
               312.0 * std::log(static_cast<double>(V_size)) >
           623.0 * std::log(static_cast<double>(q));
}

}
