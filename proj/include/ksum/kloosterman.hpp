#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ksum/character.hpp"
#include "ksum/field.hpp"

namespace ksum {

// K_psi(u,v) = sum over nonzero x of psi(ux + v/x), kept exact as a root-of-
// unity histogram. Sums against psi_a are real (x -> -x conjugates terms).
struct KloostermanValue {
    CyclotomicSum exact;
    std::complex<double> value;
    double weil_margin = 0.0;  // 2*sqrt(q) - |value|
    bool trivial_character = false;
};

KloostermanValue kloosterman(const FieldCtx& ctx, AdditiveCharacter chi, FieldElement u,
                             FieldElement v);

// All of K(u, v) for v in element order, sharing the per-u exponent table.
std::vector<KloostermanValue> kloosterman_row(const FieldCtx& ctx, AdditiveCharacter chi,
                                              FieldElement u);

struct WeilScanReport {
    std::uint64_t pairs_scanned = 0;  // all (u,v) != (0,0)
    double max_ratio = 0.0;           // max |K| / (2*sqrt(q)) over scanned pairs
    double max_abs = 0.0;
    FieldElement argmax_u, argmax_v;
    std::vector<std::pair<FieldElement, FieldElement>> violations;  // |K| > 2*sqrt(q) + 1e-9
    double k00 = 0.0;       // K(0,0), reported separately (equals q-1)
    bool k00_exact = false; // histogram is exactly (q-1) ones
    double max_im_abs = 0.0;
};

// Exhaustive scan of all q^2 pairs. The degenerate pair (0,0) is excluded
// from ratio statistics and reported on its own.
WeilScanReport weil_scan(const FieldCtx& ctx, AdditiveCharacter chi);

}
