#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ksum/field.hpp"
#include "ksum/sums.hpp"

namespace ksum {

using Json = nlohmann::ordered_json;

// Configuration for the verify commands. Reports are byte-stable for a
// fixed configuration and seed; wall time is recorded only on request so
// that reruns stay byte-identical.
struct RunOptions {
    std::optional<std::uint32_t> p;
    std::optional<std::uint32_t> n;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::optional<std::uint64_t> samples;     // sampled cases per sweep
    std::optional<std::uint64_t> translates;  // translate pairs for the reduction check
    bool exhaustive = false;                  // exhaustive pair sweep where supported
    bool timings = false;
};

struct RunResult {
    Json output;  // a single check report or a suite of them
    std::uint64_t violation_count = 0;
};

// check is one of: weil, reduction, thm1, thm2, energy.
RunResult run_check(const std::string& check, const RunOptions& opts);
RunResult run_all(const RunOptions& opts);

// CSV projection of a report (or of every report in a suite): '#' comment
// lines with the report context, a header row, then the rows.
std::string to_csv(const Json& output);

// Structural validation against the published report schema.
bool validate_report_shape(const Json& output, std::string* error);

// Weight schemes for the weighted sweeps.
enum class WeightScheme { Ones, RandomPhase, RandomComplex };
WeightScheme parse_weight_scheme(const std::string& name);
std::string weight_scheme_name(WeightScheme scheme);

// Seed-reproducible sets and weights; shared by the CLI and the sweeps so
// report rows can be replayed exactly.
std::vector<FieldElement> random_subset(const FieldCtx& ctx, std::uint64_t seed,
                                        std::uint64_t size, bool nonzero);
std::pair<std::vector<FieldElement>, WeightVector> support_and_weights(const FieldCtx& ctx,
                                                                       std::uint64_t seed,
                                                                       std::uint64_t size,
                                                                       WeightScheme scheme);

}
