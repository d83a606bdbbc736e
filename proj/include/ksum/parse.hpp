#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ksum/field.hpp"
#include "ksum/subspace.hpp"

namespace ksum {

// Element literal: comma-separated coefficients, constant term first,
// e.g. "1,0,1" is 1 + X^2 in F_8. Values are reduced mod p.
FieldElement parse_element(const FieldCtx& ctx, std::string_view text);
std::string format_element(const FieldCtx& ctx, FieldElement x);

// Set literal: elements separated by ';', e.g. "1;2;4" in F_7.
std::vector<FieldElement> parse_element_set(const FieldCtx& ctx, std::string_view text);
std::string format_element_set(const FieldCtx& ctx, std::span<const FieldElement> set);

// Subspace literal: "basis=[elem;elem;...] base=elem". The base part is
// optional (defaults to 0); ';' is also accepted between the two parts.
AffineSubspace parse_affine(const FieldCtx& ctx, std::string_view text);
std::string format_affine(const FieldCtx& ctx, const AffineSubspace& space);

}
