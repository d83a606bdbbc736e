#include "ksum/character.hpp"

#include <cmath>
#include <numbers>

namespace ksum {

CyclotomicSum& CyclotomicSum::operator+=(const CyclotomicSum& other) {
    for (std::size_t j = 0; j < counts_.size(); ++j) counts_[j] += other.counts_[j];
    return *this;
}

std::int64_t CyclotomicSum::total_weight() const {
    std::int64_t t = 0;
    for (auto c : counts_) t += c;
    return t;
}

bool CyclotomicSum::is_zero_exact() const {
    for (std::size_t j = 1; j < counts_.size(); ++j) {
        if (counts_[j] != counts_[0]) return false;
    }
    return true;
}

std::complex<double> CyclotomicSum::value() const {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(counts_.size());
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        if (counts_[j] == 0) continue;
        const double w = static_cast<double>(counts_[j]);
        const double t = step * static_cast<double>(j);
        re += w * std::cos(t);
        im += w * std::sin(t);
    }
    return {re, im};
}

std::uint32_t psi_exponent(const FieldCtx& ctx, AdditiveCharacter chi, FieldElement x) {
    return ctx.trace(ctx.mul(chi.a, x));
}

CyclotomicSum char_sum(const FieldCtx& ctx, AdditiveCharacter chi,
                       std::span<const FieldElement> set) {
    CyclotomicSum cs(ctx.p());
    for (FieldElement s : set) cs.add_exponent(psi_exponent(ctx, chi, s));
    return cs;
}

}
