#include "ksum/additive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ksum/errors.hpp"

namespace ksum {

std::vector<FieldElement> normalize_set(std::vector<FieldElement> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return elems;
}

std::vector<FieldElement> sumset_2S(const FieldCtx& ctx, std::span<const FieldElement> S) {
    std::vector<bool> seen(ctx.q(), false);
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = i; j < S.size(); ++j) {
            seen[ctx.add(S[i], S[j]).idx] = true;
        }
    }
    std::vector<FieldElement> out;
    for (std::uint64_t k = 0; k < ctx.q(); ++k) {
        if (seen[k]) out.push_back(FieldElement{static_cast<std::uint32_t>(k)});
    }
    return out;
}

std::vector<FieldElement> inverse_set(const FieldCtx& ctx, std::span<const FieldElement> S) {
    std::vector<FieldElement> out;
    out.reserve(S.size());
    for (FieldElement s : S) {
        if (s.idx == 0) throw std::domain_error("inverse_set: 0 in the set");
        out.push_back(ctx.inv(s));
    }
    return normalize_set(std::move(out));
}

std::uint64_t additive_energy(const FieldCtx& ctx, std::span<const FieldElement> S,
                              std::uint64_t cap) {
    if (S.size() > cap) throw cap_error("set too large for energy computation");
    std::vector<std::uint32_t> r(ctx.q(), 0);
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = 0; j < S.size(); ++j) {
            ++r[ctx.add(S[i], S[j]).idx];
        }
    }
    std::uint64_t e = 0;
    for (std::uint32_t c : r) e += std::uint64_t{c} * c;
    return e;
}

std::uint64_t additive_energy_oracle(const FieldCtx& ctx, std::span<const FieldElement> S,
                                     std::uint64_t cap) {
    if (S.size() > cap) throw cap_error("set too large for the quadruple oracle");
    std::uint64_t e = 0;
    for (FieldElement s1 : S) {
        for (FieldElement s2 : S) {
            const FieldElement lhs = ctx.add(s1, s2);
            for (FieldElement s3 : S) {
                for (FieldElement s4 : S) {
                    if (lhs == ctx.add(s3, s4)) ++e;
                }
            }
        }
    }
    return e;
}

namespace {

double rpow(double x, std::int64_t num, std::int64_t den) {
    return std::exp(std::log(x) * static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

double energy_bound_rhs(std::uint64_t S_size, std::uint64_t T_size, std::uint64_t q) {
    if (S_size == 0 || T_size == 0) throw std::invalid_argument("sizes must be positive");
    const double S = static_cast<double>(S_size);
    const double T = static_cast<double>(T_size);
    const double qd = static_cast<double>(q);
    return (rpow(T, 173, 104) + rpow(qd, -1, 285) * rpow(T, 476, 285)) * rpow(S, 4, 3);
}

SumsetGrowthRhs sumset_growth_rhs(std::uint64_t S_size, std::uint64_t q) {
    if (S_size == 0) throw std::invalid_argument("size must be positive");
    const double S = static_cast<double>(S_size);
    const double qd = static_cast<double>(q);
    SumsetGrowthRhs out{};
    out.branch_plain = rpow(S, 832, 831);
    out.branch_qterm = rpow(qd, 1, 761) * rpow(S, 760, 761);
    out.plain_active = out.branch_plain <= out.branch_qterm;
    out.value = out.plain_active ? out.branch_plain : out.branch_qterm;
    return out;
}

CauchyCheck cauchy_check(const FieldCtx& ctx, std::span<const FieldElement> S) {
    const auto sinv = inverse_set(ctx, S);
    const auto two_sinv = sumset_2S(ctx, sinv);
    const std::uint64_t energy = additive_energy(ctx, sinv);

    CauchyCheck out;
    const unsigned __int128 s = S.size();
    out.lhs = s * s * s * s;
    out.rhs = static_cast<unsigned __int128>(two_sinv.size()) * energy;
    out.holds = out.lhs <= out.rhs;
    if (!S.empty()) {
        out.slack = static_cast<double>(out.rhs) / static_cast<double>(out.lhs);
    }
    return out;
}

bool subfield_condition(const FieldCtx& ctx, std::uint64_t T_size) {
    const std::uint64_t g = ctx.largest_proper_subfield_size();
    if (T_size == 0) return false;
    if (g <= 1) return true;
    // T >= G^(52/51) iff 51 log T >= 52 log G
    return 51.0 * std::log(static_cast<double>(T_size)) >=
           52.0 * std::log(static_cast<double>(g));
}

EnergyReport make_energy_report(const FieldCtx& ctx, std::span<const FieldElement> S) {
    EnergyReport rep;
    rep.s_size = S.size();
    if (S.empty()) return rep;

    const auto two_s = sumset_2S(ctx, S);
    const auto sinv = inverse_set(ctx, S);
    const auto two_sinv = sumset_2S(ctx, sinv);
    rep.t_size = two_s.size();
    rep.u_size = two_sinv.size();
    rep.energy_inv = additive_energy(ctx, sinv);
    rep.energy_rhs = energy_bound_rhs(rep.s_size, rep.t_size, ctx.q());
    rep.growth_rhs = sumset_growth_rhs(rep.s_size, ctx.q()).value;
    rep.subfield_ok = subfield_condition(ctx, rep.t_size);

    rep.cauchy.lhs = static_cast<unsigned __int128>(rep.s_size) * rep.s_size * rep.s_size *
                     rep.s_size;
    rep.cauchy.rhs = static_cast<unsigned __int128>(rep.u_size) * rep.energy_inv;
    rep.cauchy.holds = rep.cauchy.lhs <= rep.cauchy.rhs;
    rep.cauchy.slack = static_cast<double>(rep.cauchy.rhs) / static_cast<double>(rep.cauchy.lhs);
    return rep;
}

}
