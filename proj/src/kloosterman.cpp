#include "ksum/kloosterman.hpp"

#include <cmath>
#include <stdexcept>

namespace ksum {

namespace {

KloostermanValue finish(const FieldCtx& ctx, CyclotomicSum cs, bool trivial) {
    KloostermanValue out;
    out.value = cs.value();
    out.exact = std::move(cs);
    out.weil_margin = 2.0 * std::sqrt(static_cast<double>(ctx.q())) - std::abs(out.value);
    out.trivial_character = trivial;
    return out;
}

}  // namespace

KloostermanValue kloosterman(const FieldCtx& ctx, AdditiveCharacter chi, FieldElement u,
                             FieldElement v) {
    const std::uint32_t p = ctx.p();
    // psi_a(ux + v/x) = psi_1((au)x + (av)/x)
    const FieldElement ua = ctx.mul(chi.a, u);
    const FieldElement va = ctx.mul(chi.a, v);
    CyclotomicSum cs(p);
    for (std::uint64_t xi = 1; xi < ctx.q(); ++xi) {
        const FieldElement x{static_cast<std::uint32_t>(xi)};
        std::uint32_t e = ctx.trace(ctx.mul(ua, x)) + ctx.trace(ctx.mul(va, ctx.inv(x)));
        if (e >= p) e -= p;
        cs.add_exponent(e);
    }
    return finish(ctx, std::move(cs), chi.trivial());
}

std::vector<KloostermanValue> kloosterman_row(const FieldCtx& ctx, AdditiveCharacter chi,
                                              FieldElement u) {
    const std::uint32_t p = ctx.p();
    const std::uint64_t q = ctx.q();
    const FieldElement ua = ctx.mul(chi.a, u);

    // shared per-row tables: exponent of the ux part and 1/x
    std::vector<std::uint32_t> ux_exp(q, 0);
    std::vector<FieldElement> xinv(q);
    for (std::uint64_t xi = 1; xi < q; ++xi) {
        const FieldElement x{static_cast<std::uint32_t>(xi)};
        ux_exp[xi] = ctx.trace(ctx.mul(ua, x));
        xinv[xi] = ctx.inv(x);
    }

    std::vector<KloostermanValue> out;
    out.reserve(q);
    for (std::uint64_t vi = 0; vi < q; ++vi) {
        const FieldElement va = ctx.mul(chi.a, FieldElement{static_cast<std::uint32_t>(vi)});
        CyclotomicSum cs(p);
        for (std::uint64_t xi = 1; xi < q; ++xi) {
            std::uint32_t e = ux_exp[xi] + ctx.trace(ctx.mul(va, xinv[xi]));
            if (e >= p) e -= p;
            cs.add_exponent(e);
        }
        out.push_back(finish(ctx, std::move(cs), chi.trivial()));
    }
    return out;
}

WeilScanReport weil_scan(const FieldCtx& ctx, AdditiveCharacter chi) {
    if (chi.trivial()) throw std::invalid_argument("weil_scan requires a nontrivial character");
    const std::uint64_t q = ctx.q();
    const double weil = 2.0 * std::sqrt(static_cast<double>(q));

    WeilScanReport rep;
    for (std::uint64_t ui = 0; ui < q; ++ui) {
        auto row = kloosterman_row(ctx, chi, FieldElement{static_cast<std::uint32_t>(ui)});
        for (std::uint64_t vi = 0; vi < q; ++vi) {
            const auto& kv = row[vi];
            const double a = std::abs(kv.value);
            const double im = std::abs(kv.value.imag());
            if (im > rep.max_im_abs) rep.max_im_abs = im;
            if (ui == 0 && vi == 0) {
                rep.k00 = kv.value.real();
                const auto& c = kv.exact.counts();
                rep.k00_exact = c[0] == static_cast<std::int64_t>(q - 1) &&
                                kv.exact.total_weight() == static_cast<std::int64_t>(q - 1);
                continue;
            }
            ++rep.pairs_scanned;
            const double ratio = a / weil;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.max_abs = a;
                rep.argmax_u = FieldElement{static_cast<std::uint32_t>(ui)};
                rep.argmax_v = FieldElement{static_cast<std::uint32_t>(vi)};
            }
            if (a > weil + 1e-9) {
                rep.violations.push_back({FieldElement{static_cast<std::uint32_t>(ui)},
                                          FieldElement{static_cast<std::uint32_t>(vi)}});
            }
        }
    }
    return rep;
}

}
