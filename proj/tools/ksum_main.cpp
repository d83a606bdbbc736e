// ksum: finite-field Kloosterman sums, subspace double sums and additive
// energy statistics, with a verification harness producing deterministic
// JSON/CSV reports.
//
// Exit codes: 0 all checks pass, 1 a verified bound or identity was
// violated, 2 usage or configuration error.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ksum/additive.hpp"
#include "ksum/errors.hpp"
#include "ksum/kloosterman.hpp"
#include "ksum/parse.hpp"
#include "ksum/sums.hpp"
#include "ksum/verify.hpp"
#include "ksum/version.hpp"

namespace {

using ksum::Json;

struct OutputOptions {
    std::string path;
    std::string format = "json";
};

void add_output_options(CLI::App* cmd, OutputOptions& out, bool with_format = true) {
    cmd->add_option("--out", out.path, "Write the result to this file instead of stdout");
    if (with_format) {
        cmd->add_option("--format", out.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
    }
}

void emit(const Json& value, const OutputOptions& out) {
    const std::string text =
        out.format == "csv" ? ksum::to_csv(value) : value.dump(2) + "\n";
    if (out.path.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out.path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + out.path);
        file << text;
    }
}

struct FieldArgs {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
};

void add_field_options(CLI::App* cmd, FieldArgs& args) {
    cmd->add_option("--p", args.p, "Field characteristic (prime)")->required();
    cmd->add_option("--n", args.n, "Extension degree")->required();
}

Json complex_json_fields(const char* prefix, std::complex<double> z) {
    Json j;
    j[std::string(prefix) + "_re"] = z.real();
    j[std::string(prefix) + "_im"] = z.imag();
    return j;
}

int cmd_field(const FieldArgs& fa, const OutputOptions& out) {
    const auto ctx = ksum::FieldCtx::make(fa.p, fa.n);
    Json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["q"] = ctx.q();
    j["modulus"] = ctx.params().modulus;
    j["largest_proper_subfield_size"] = ctx.largest_proper_subfield_size();
    j["trace_zero_count"] = ctx.q() / ctx.p();
    emit(j, out);
    return 0;
}

int cmd_kloosterman(const FieldArgs& fa, const std::string& a_text, const std::string& u_text,
                    const std::string& v_text, const OutputOptions& out) {
    const auto ctx = ksum::FieldCtx::make(fa.p, fa.n);
    const ksum::AdditiveCharacter chi{a_text.empty() ? ctx.one()
                                                     : ksum::parse_element(ctx, a_text)};
    const auto u = ksum::parse_element(ctx, u_text);
    const auto v = ksum::parse_element(ctx, v_text);
    const auto k = ksum::kloosterman(ctx, chi, u, v);

    Json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["a"] = ksum::format_element(ctx, chi.a);
    j["u"] = ksum::format_element(ctx, u);
    j["v"] = ksum::format_element(ctx, v);
    j["counts"] = k.exact.counts();
    j["value_re"] = k.value.real();
    j["value_im"] = k.value.imag();
    j["abs"] = std::abs(k.value);
    j["weil_margin"] = k.weil_margin;
    j["trivial_character"] = k.trivial_character;
    emit(j, out);
    return 0;
}

int cmd_dsum(const FieldArgs& fa, const std::string& a_text, const std::string& b_text,
             const OutputOptions& out) {
    const auto ctx = ksum::FieldCtx::make(fa.p, fa.n);
    const ksum::AdditiveCharacter chi{ctx.one()};
    const auto A = ksum::parse_affine(ctx, a_text);
    const auto B = ksum::parse_affine(ctx, b_text);

    const auto direct =
        ksum::double_sum_direct(ctx, chi, ksum::members(ctx, A), ksum::members(ctx, B));
    const auto red = ksum::double_sum_affine(ctx, chi, A, B);
    const std::uint64_t a_size = A.cardinality(ctx);
    const std::uint64_t b_size = B.cardinality(ctx);
    const auto rhs = ksum::thm1_rhs(ctx.q(), std::min(a_size, b_size));
    const double scale = static_cast<double>(a_size) * static_cast<double>(b_size);

    Json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["A"] = ksum::format_affine(ctx, A);
    j["B"] = ksum::format_affine(ctx, B);
    j["a_size"] = a_size;
    j["b_size"] = b_size;
    j.update(complex_json_fields("direct", direct));
    j.update(complex_json_fields("reduced", red.value));
    j["abs_err"] = std::abs(direct - red.value);
    j["critical_size"] = red.critical_size;
    Json terms;
    terms["q"] = rhs.term_q;
    terms["qa1"] = rhs.term_qa_1;
    terms["qa2"] = rhs.term_qa_2;
    terms["max"] = rhs.max_term;
    j["thm1_terms"] = terms;
    j["ratio"] = std::abs(red.value) / (scale * rhs.max_term);
    j["trivial_bound"] = 2.0 * scale * std::sqrt(static_cast<double>(ctx.q()));
    j["nontrivial_regime"] = ksum::thm1_nontrivial(ctx.q(), std::min(a_size, b_size));
    emit(j, out);
    return 0;
}

int cmd_wsum(const FieldArgs& fa, const std::string& a_text, const std::string& scheme_name,
             std::uint64_t support_size, std::uint64_t seed, const OutputOptions& out) {
    const auto ctx = ksum::FieldCtx::make(fa.p, fa.n);
    const ksum::AdditiveCharacter chi{ctx.one()};
    const auto A = ksum::parse_affine(ctx, a_text);
    const auto scheme = ksum::parse_weight_scheme(scheme_name);
    const auto [support, alpha] = ksum::support_and_weights(ctx, seed, support_size, scheme);

    const auto lhs = ksum::weighted_sum(ctx, chi, alpha, A);
    const std::uint64_t a_size = A.cardinality(ctx);
    const double n1 = alpha.norm(1.0);
    const double n2 = alpha.norm(2.0);

    Json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["A"] = ksum::format_affine(ctx, A);
    j["scheme"] = scheme_name;
    j["support_size"] = support.size();
    j["seed"] = seed;
    j["support"] = ksum::format_element_set(ctx, support);
    j.update(complex_json_fields("lhs", lhs));
    j["lhs_abs"] = std::abs(lhs);
    j["norm1"] = n1;
    j["norm2"] = n2;
    j["thm2_rhs"] = ksum::thm2_rhs(ctx.q(), a_size, n1, n2);
    j["ratio"] = std::abs(lhs) / j["thm2_rhs"].get<double>();
    j["trivial_bound"] = ksum::trivial_bound(a_size, ctx.q(), n1);
    j["nontrivial_regime"] = ksum::thm2_nontrivial(ctx.q(), a_size, support.size());
    emit(j, out);
    return 0;
}

std::vector<ksum::FieldElement> set_from_spec(const ksum::FieldCtx& ctx,
                                              const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "random") {
        const auto second = rest.find(':');
        if (second == std::string::npos) {
            throw std::invalid_argument("random set spec needs random:SIZE:SEED");
        }
        const std::uint64_t size = std::stoull(rest.substr(0, second));
        const std::uint64_t seed = std::stoull(rest.substr(second + 1));
        return ksum::random_subset(ctx, seed, size, /*nonzero=*/true);
    }
    if (kind == "subspace-critical") {
        const auto second = rest.find(':');
        if (second == std::string::npos) {
            throw std::invalid_argument("spec needs subspace-critical:L:M with subspace literals");
        }
        const auto l = ksum::parse_affine(ctx, rest.substr(0, second));
        const auto m = ksum::parse_affine(ctx, rest.substr(second + 1));
        return ksum::critical_set(ctx, l.directions, m.directions).elements;
    }
    if (kind == "literal") {
        return ksum::normalize_set(ksum::parse_element_set(ctx, rest));
    }
    throw std::invalid_argument("unknown set spec kind: " + kind);
}

int cmd_energy(const FieldArgs& fa, const std::string& spec, const OutputOptions& out) {
    const auto ctx = ksum::FieldCtx::make(fa.p, fa.n);
    const auto set = set_from_spec(ctx, spec);
    for (auto x : set) {
        if (x.idx == 0) {
            throw std::invalid_argument("the set must avoid 0 (inverses are taken)");
        }
    }
    const auto rep = ksum::make_energy_report(ctx, set);

    Json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["set_spec"] = spec;
    j["s_size"] = rep.s_size;
    j["t_size"] = rep.t_size;
    j["u_size"] = rep.u_size;
    j["energy_inv"] = rep.energy_inv;
    j["energy_rhs"] = rep.energy_rhs;
    j["growth_rhs"] = rep.growth_rhs;
    j["subfield_ok"] = rep.subfield_ok;
    j["cauchy_lhs"] = static_cast<std::uint64_t>(rep.cauchy.lhs);
    j["cauchy_rhs"] = static_cast<std::uint64_t>(rep.cauchy.rhs);
    j["cauchy_ok"] = rep.cauchy.holds;
    emit(j, out);
    return rep.cauchy.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field Kloosterman and double-sum verification toolkit"};
    app.set_version_flag("--version", ksum::kVersion);
    app.require_subcommand(1);

    // field
    FieldArgs field_args;
    OutputOptions field_out;
    auto* field_cmd = app.add_subcommand("field", "Describe the field F_{p^n}");
    add_field_options(field_cmd, field_args);
    add_output_options(field_cmd, field_out, /*with_format=*/false);

    // kloosterman
    FieldArgs kl_args;
    OutputOptions kl_out;
    std::string kl_a, kl_u, kl_v;
    auto* kl_cmd = app.add_subcommand("kloosterman",
                                      "Evaluate one Kloosterman sum exactly");
    add_field_options(kl_cmd, kl_args);
    kl_cmd->add_option("--a", kl_a, "Character twist element (default 1)");
    kl_cmd->add_option("--u", kl_u, "First parameter")->required();
    kl_cmd->add_option("--v", kl_v, "Second parameter")->required();
    add_output_options(kl_cmd, kl_out, /*with_format=*/false);

    // weil
    FieldArgs weil_args;
    OutputOptions weil_out;
    auto* weil_cmd = app.add_subcommand("weil", "Exhaustive |K| <= 2 sqrt(q) scan");
    add_field_options(weil_cmd, weil_args);
    add_output_options(weil_cmd, weil_out);

    // dsum
    FieldArgs dsum_args;
    OutputOptions dsum_out;
    std::string dsum_a, dsum_b;
    auto* dsum_cmd = app.add_subcommand(
        "dsum", "Double sum over two affine subspaces, direct and reduced");
    add_field_options(dsum_cmd, dsum_args);
    dsum_cmd->add_option("--A", dsum_a, "First subspace literal 'basis=[...] base=...'")
        ->required();
    dsum_cmd->add_option("--B", dsum_b, "Second subspace literal")->required();
    add_output_options(dsum_cmd, dsum_out, /*with_format=*/false);

    // wsum
    FieldArgs wsum_args;
    OutputOptions wsum_out;
    std::string wsum_a, wsum_scheme = "ones";
    std::uint64_t wsum_support = 10, wsum_seed = 1;
    auto* wsum_cmd =
        app.add_subcommand("wsum", "Weighted double sum with a seeded support set");
    add_field_options(wsum_cmd, wsum_args);
    wsum_cmd->add_option("--A", wsum_a, "Affine subspace literal")->required();
    wsum_cmd->add_option("--weights", wsum_scheme, "Weight scheme")
        ->check(CLI::IsMember({"ones", "random-phase", "random-complex"}));
    wsum_cmd->add_option("--support-size", wsum_support, "Size of the support set");
    wsum_cmd->add_option("--seed", wsum_seed, "Seed for the support and weights");
    add_output_options(wsum_cmd, wsum_out, /*with_format=*/false);

    // energy
    FieldArgs energy_args;
    OutputOptions energy_out;
    std::string energy_spec;
    auto* energy_cmd = app.add_subcommand("energy", "Additive energy statistics for a set");
    add_field_options(energy_cmd, energy_args);
    energy_cmd
        ->add_option("--set-spec", energy_spec,
                     "random:SIZE:SEED | subspace-critical:L:M | literal:e;e;...")
        ->required();
    add_output_options(energy_cmd, energy_out, /*with_format=*/false);

    // verify
    ksum::RunOptions run_opts;
    OutputOptions verify_out;
    std::uint32_t verify_p = 0, verify_n = 0;
    std::uint64_t verify_samples = 0, verify_translates = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification sweep");
    verify_cmd->require_subcommand(1);
    std::vector<CLI::App*> verify_subs;
    for (const char* name : {"weil", "reduction", "thm1", "thm2", "energy", "all"}) {
        auto* sub = verify_cmd->add_subcommand(name);
        sub->add_option("--p", verify_p, "Field characteristic (default: built-in field list)");
        sub->add_option("--n", verify_n, "Extension degree");
        sub->add_option("--seed", run_opts.seed, "Master seed");
        sub->add_option("--jobs", run_opts.jobs, "Worker threads (output is identical)");
        sub->add_option("--samples", verify_samples, "Sampled cases per sweep");
        sub->add_option("--translates", verify_translates,
                        "Seeded translate pairs for the reduction check");
        sub->add_flag("--exhaustive", run_opts.exhaustive,
                      "Sweep all subspace pairs instead of sampling");
        sub->add_flag("--timings", run_opts.timings,
                      "Record wall time in meta (breaks byte-identical reruns)");
        add_output_options(sub, verify_out);
        verify_subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);

        if (*field_cmd) return cmd_field(field_args, field_out);
        if (*kl_cmd) return cmd_kloosterman(kl_args, kl_a, kl_u, kl_v, kl_out);
        if (*weil_cmd) {
            ksum::RunOptions opts;
            opts.p = weil_args.p;
            opts.n = weil_args.n;
            const auto res = ksum::run_check("weil", opts);
            emit(res.output, weil_out);
            return res.violation_count == 0 ? 0 : 1;
        }
        if (*dsum_cmd) return cmd_dsum(dsum_args, dsum_a, dsum_b, dsum_out);
        if (*wsum_cmd) {
            return cmd_wsum(wsum_args, wsum_a, wsum_scheme, wsum_support, wsum_seed, wsum_out);
        }
        if (*energy_cmd) return cmd_energy(energy_args, energy_spec, energy_out);
        if (*verify_cmd) {
            if (verify_p || verify_n) {
                if (!(verify_p && verify_n)) {
                    throw std::invalid_argument("--p and --n must be given together");
                }
                run_opts.p = verify_p;
                run_opts.n = verify_n;
            }
            if (verify_samples) run_opts.samples = verify_samples;
            if (verify_translates) run_opts.translates = verify_translates;
            std::string which;
            for (std::size_t i = 0; i < verify_subs.size(); ++i) {
                if (*verify_subs[i]) {
                    which = verify_subs[i]->get_name();
                    break;
                }
            }
            const auto res = which == "all" ? ksum::run_all(run_opts)
                                            : ksum::run_check(which, run_opts);
            emit(res.output, verify_out);
            return res.violation_count == 0 ? 0 : 1;
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
