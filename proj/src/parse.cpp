#include "ksum/parse.hpp"

#include <charconv>
#include <stdexcept>

namespace ksum {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        if (pos == std::string_view::npos) {
            out.push_back(s);
            return out;
        }
        out.push_back(s.substr(0, pos));
        s.remove_prefix(pos + 1);
    }
}

std::int64_t parse_int(std::string_view s) {
    s = strip(s);
    std::int64_t v = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("bad integer in element literal: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

FieldElement parse_element(const FieldCtx& ctx, std::string_view text) {
    text = strip(text);
    if (text.empty()) throw std::invalid_argument("empty element literal");
    std::vector<std::int64_t> coeffs;
    for (auto part : split(text, ',')) coeffs.push_back(parse_int(part));
    return ctx.from_coeffs(coeffs);
}

std::string format_element(const FieldCtx& ctx, FieldElement x) {
    const auto c = ctx.coeffs(x);
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

std::vector<FieldElement> parse_element_set(const FieldCtx& ctx, std::string_view text) {
    std::vector<FieldElement> out;
    text = strip(text);
    if (text.empty()) return out;
    for (auto part : split(text, ';')) {
        part = strip(part);
        if (!part.empty()) out.push_back(parse_element(ctx, part));
    }
    return out;
}

std::string format_element_set(const FieldCtx& ctx, std::span<const FieldElement> set) {
    std::string out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out += ';';
        out += format_element(ctx, set[i]);
    }
    return out;
}

AffineSubspace parse_affine(const FieldCtx& ctx, std::string_view text) {
    const auto bpos = text.find("basis=[");
    if (bpos == std::string_view::npos) {
        throw std::invalid_argument("subspace literal must contain 'basis=[...]'");
    }
    const auto open = bpos + 6;
    const auto close = text.find(']', open);
    if (close == std::string_view::npos) {
        throw std::invalid_argument("unterminated basis list in subspace literal");
    }
    const auto basis_text = text.substr(open + 1, close - open - 1);
    std::vector<FieldElement> vectors = parse_element_set(ctx, basis_text);

    FieldElement base = ctx.zero();
    const auto kpos = text.find("base=", close);
    if (kpos != std::string_view::npos) {
        auto rest = text.substr(kpos + 5);
        const auto stop = rest.find(';');
        if (stop != std::string_view::npos) rest = rest.substr(0, stop);
        base = parse_element(ctx, rest);
    }
    return make_affine(ctx, base, span(ctx, vectors));
}

std::string format_affine(const FieldCtx& ctx, const AffineSubspace& space) {
    std::string out = "basis=[";
    out += format_element_set(ctx, space.directions.rows());
    out += "] base=";
    out += format_element(ctx, space.base);
    return out;
}

}
