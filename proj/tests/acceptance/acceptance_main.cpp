// Acceptance suite: end-to-end checks of the exact identities, the bound
// assertions and the report pipeline, printed one line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ksum/additive.hpp"
#include "ksum/character.hpp"
#include "ksum/kloosterman.hpp"
#include "ksum/rng.hpp"
#include "ksum/subspace.hpp"
#include "ksum/sums.hpp"
#include "ksum/verify.hpp"

using namespace ksum;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
    std::string detail;
};

void require(bool cond, const std::string& detail) {
    if (!cond) throw Failure{detail};
}

std::vector<SubspaceBasis> all_subspaces(const FieldCtx& ctx) {
    std::vector<SubspaceBasis> out;
    for (std::uint32_t d = 0; d <= ctx.n(); ++d) {
        auto part = enumerate_subspaces(ctx, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<FieldElement> seeded_nonzero_set(const FieldCtx& ctx, Rng& rng,
                                             std::uint64_t max_size) {
    const std::uint64_t size = 1 + rng.below(max_size);
    std::vector<FieldElement> out;
    while (out.size() < size) {
        out.push_back(ctx.from_index(1 + rng.below(ctx.q() - 1)));
        out = normalize_set(std::move(out));
    }
    return out;
}

// ---- criterion 1: exhaustive Weil scans ------------------------------------

void criterion_weil() {
    const auto t0 = Clock::now();
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 3},
                        {2, 5}, {5, 3}, {3, 5}, {7, 3}}) {
        const auto ctx = FieldCtx::make(p, n);
        const auto rep = weil_scan(ctx, AdditiveCharacter{ctx.one()});
        require(rep.violations.empty(),
                "Weil bound violated in q=" + std::to_string(ctx.q()));
        require(rep.pairs_scanned == ctx.q() * ctx.q() - 1,
                "wrong pair count in q=" + std::to_string(ctx.q()));
        require(rep.k00_exact, "K(0,0) != q-1 in q=" + std::to_string(ctx.q()));
        require(rep.max_ratio <= 1.0 + 1e-9, "ratio above 1 in q=" + std::to_string(ctx.q()));
        require(rep.max_im_abs <= 1e-9 * static_cast<double>(ctx.q()),
                "non-real Kloosterman value in q=" + std::to_string(ctx.q()));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs <= 300.0, "scan took " + std::to_string(secs) + "s, budget is 300s");
}

// ---- criterion 2: reduction identity ---------------------------------------

void criterion_reduction() {
    {
        const auto ctx = FieldCtx::make(3, 3);
        const AdditiveCharacter psi{ctx.one()};
        const auto spaces = all_subspaces(ctx);
        require(spaces.size() == 28, "expected 28 subspaces of F_27");
        std::size_t pairs = 0;
        for (const auto& l : spaces) {
            for (const auto& m : spaces) {
                const AffineSubspace a{ctx.zero(), l};
                const AffineSubspace b{ctx.zero(), m};
                const auto direct =
                    double_sum_direct(ctx, psi, members(ctx, a), members(ctx, b));
                const auto red = double_sum_affine(ctx, psi, a, b);
                require(std::abs(direct - red.value) <=
                            1e-6 * std::max(1.0, std::abs(direct)),
                        "linear pair mismatch in F_27");
                ++pairs;
            }
        }
        require(pairs == 784, "expected 784 ordered pairs");
    }
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 3}, {2, 5}}) {
        const auto ctx = FieldCtx::make(p, n);
        const AdditiveCharacter psi{ctx.one()};
        Rng rng(1);
        for (int t = 0; t < 50; ++t) {
            const auto a = random_affine_subspace(
                ctx, static_cast<std::uint32_t>(rng.below(n + 1)), rng.next());
            const auto b = random_affine_subspace(
                ctx, static_cast<std::uint32_t>(rng.below(n + 1)), rng.next());
            const auto direct = double_sum_direct(ctx, psi, members(ctx, a), members(ctx, b));
            const auto red = double_sum_affine(ctx, psi, a, b);
            require(std::abs(direct - red.value) <= 1e-6 * std::max(1.0, std::abs(direct)),
                    "translate pair mismatch in q=" + std::to_string(ctx.q()));
        }
    }
}

// ---- criterion 3: concrete value in F_8 ------------------------------------

void criterion_f8_value() {
    const auto ctx = FieldCtx::make(2, 3);
    const AdditiveCharacter psi{ctx.one()};
    const auto line = span(ctx, std::vector<FieldElement>{ctx.one()});
    const auto hyper = orthogonal_complement(ctx, line);
    const AffineSubspace a{ctx.zero(), hyper};
    require(a.cardinality(ctx) == 4, "trace-zero hyperplane should have 4 members");

    const auto s = critical_set(ctx, hyper, hyper);
    require(s.elements == std::vector<FieldElement>{ctx.one()}, "critical set must be {1}");

    const auto red = double_sum_affine(ctx, psi, a, a);
    require(std::abs(red.value - std::complex<double>{16.0, 0.0}) <= 1e-6,
            "reduced sum != 16");

    // independent oracle: all 16 Kloosterman pairs summed term by term
    std::complex<double> oracle{0.0, 0.0};
    const auto mem = members(ctx, a);
    for (auto u : mem) {
        for (auto v : mem) oracle += kloosterman(ctx, psi, u, v).value;
    }
    require(std::abs(oracle - std::complex<double>{16.0, 0.0}) <= 1e-6,
            "16-pair oracle != 16");
}

// ---- criterion 4: trivial bound in every sweep row -------------------------

void criterion_trivial_bound() {
    RunOptions opts;
    opts.p = 3;
    opts.n = 5;
    opts.seed = 1;
    opts.samples = 500;
    const auto thm1 = run_check("thm1", opts);
    require(thm1.output["rows"].size() == 500, "thm1 sweep must have 500 rows");
    for (const auto& row : thm1.output["rows"]) {
        require(row["trivial_ok"].get<bool>(), "thm1 row violates the trivial bound");
        if (!row["degenerate_pair"].get<bool>()) {
            require(row["s_abs"].get<double>() <=
                        row["trivial_bound"].get<double>() * (1.0 + 1e-9) + 1e-9,
                    "thm1 row violates 2*A*B*sqrt(q)");
        }
    }
    require(thm1.violation_count == 0, "thm1 sweep reported violations");

    RunOptions opts2;
    opts2.p = 3;
    opts2.n = 5;
    opts2.seed = 1;
    const auto thm2 = run_check("thm2", opts2);
    for (const auto& row : thm2.output["rows"]) {
        require(row["trivial_ok"].get<bool>(), "thm2 row violates the trivial bound");
        if (!row["degenerate_pair"].get<bool>()) {
            require(row["lhs_abs"].get<double>() <=
                        row["trivial_bound"].get<double>() * (1.0 + 1e-9) + 1e-9,
                    "thm2 row violates 2*A*sqrt(q)*norm1");
        }
    }
    require(thm2.violation_count == 0, "thm2 sweep reported violations");
}

// ---- criterion 5: energy oracle equivalence --------------------------------

void criterion_energy_oracle() {
    {
        const auto ctx = FieldCtx::make(3, 5);
        Rng rng(2);
        for (int t = 0; t < 200; ++t) {
            const auto s = seeded_nonzero_set(ctx, rng, 50);
            require(additive_energy(ctx, s) == additive_energy_oracle(ctx, s, 200),
                    "histogram energy != quadruple oracle");
        }
    }
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 3}, {2, 5}}) {
        const auto ctx = FieldCtx::make(p, n);
        for (const auto& basis : all_subspaces(ctx)) {
            const auto mem = members(ctx, basis);
            const std::uint64_t a = mem.size();
            require(additive_energy(ctx, mem) == a * a * a,
                    "subspace energy != size^3 in q=" + std::to_string(ctx.q()));
        }
    }
    {
        const auto f7 = FieldCtx::make(7, 1);
        const std::vector<FieldElement> s{f7.from_index(1), f7.from_index(2), f7.from_index(3)};
        require(additive_energy_oracle(f7, s) == 19, "oracle E({1,2,3}) != 19 in F_7");
        require(additive_energy(f7, s) == 19, "E({1,2,3}) != 19 in F_7");
    }
}

// ---- criterion 6: Cauchy inequality ----------------------------------------

void criterion_cauchy() {
    const auto ctx = FieldCtx::make(3, 5);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto s = seeded_nonzero_set(ctx, rng, 50);
        const auto c = cauchy_check(ctx, s);
        require(c.holds, "S^4 <= #(2S^-1) E(S^-1) failed");
    }
}

// ---- criterion 7: orthogonality and subspace suite -------------------------

void criterion_orthogonality() {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 3}, {2, 5}}) {
        const auto ctx = FieldCtx::make(p, n);
        for (const auto& basis : all_subspaces(ctx)) {
            const auto perp = orthogonal_complement(ctx, basis);
            require(basis.cardinality(ctx) * perp.cardinality(ctx) == ctx.q(),
                    "#L * #Lperp != q");
            require(orthogonal_complement(ctx, perp) == basis, "(Lperp)perp != L");
            for (std::uint64_t ci = 0; ci < ctx.q(); ++ci) {
                const auto space = make_affine(ctx, ctx.from_index(ci), basis);
                const auto mem = members(ctx, space);
                for (std::uint64_t xi = 0; xi < ctx.q(); ++xi) {
                    const AdditiveCharacter chi{ctx.from_index(xi)};
                    const auto cs = char_sum(ctx, chi, mem);
                    const double modulus = std::abs(cs.value());
                    if (contains(ctx, perp, ctx.from_index(xi))) {
                        require(std::abs(modulus - static_cast<double>(mem.size())) <=
                                    1e-9 * static_cast<double>(mem.size()),
                                "character sum modulus != #A on the complement");
                    } else {
                        require(cs.is_zero_exact(),
                                "character sum not exactly zero off the complement");
                    }
                }
            }
        }
    }
}

// ---- criterion 8: Kloosterman identities -----------------------------------

void criterion_kloosterman_identities() {
    for (auto [p, n] : prime_power_fields(125)) {
        const auto ctx = FieldCtx::make(p, n);
        const AdditiveCharacter psi{ctx.one()};
        const std::uint64_t q = ctx.q();

        std::vector<std::vector<KloostermanValue>> table;
        table.reserve(q);
        for (std::uint64_t ui = 0; ui < q; ++ui) {
            table.push_back(kloosterman_row(ctx, psi, ctx.from_index(ui)));
        }
        for (std::uint64_t ui = 0; ui < q; ++ui) {
            CyclotomicSum row_total(ctx.p());
            for (std::uint64_t vi = 0; vi < q; ++vi) {
                const auto& kv = table[ui][vi];
                require(kv.exact == table[vi][ui].exact,
                        "K(u,v) != K(v,u) in q=" + std::to_string(q));
                if (ui != 0) {
                    const auto w = ctx.mul(ctx.from_index(ui), ctx.from_index(vi));
                    require(kv.exact == table[1][w.idx].exact,
                            "K(u,v) != K(1,uv) in q=" + std::to_string(q));
                }
                require(std::abs(kv.value.imag()) <= 1e-9 * static_cast<double>(q),
                        "Kloosterman value not real in q=" + std::to_string(q));
                row_total += kv.exact;
            }
            require(row_total.is_zero_exact(),
                    "sum over v of K(u,v) != 0 in q=" + std::to_string(q));
        }
    }
}

// ---- criterion 9: report pipeline ------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(static_cast<bool>(f), "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_command(const std::string& cmd, double* seconds) {
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    if (seconds) *seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    require(status != -1, "failed to launch: " + cmd);
    require(WIFEXITED(status), "abnormal termination: " + cmd);
    return WEXITSTATUS(status);
}

void criterion_pipeline(const std::string& ksum_path, const std::string& workdir) {
    require(!ksum_path.empty(), "path to the ksum binary is required (--ksum)");
    const std::string out1 = workdir + "/verify_all_1.json";
    const std::string out2 = workdir + "/verify_all_2.json";

    double secs = 0.0;
    int code = run_command("'" + ksum_path + "' verify all --seed 1 --out '" + out1 + "'",
                           &secs);
    require(code == 0, "verify all exited with code " + std::to_string(code));
    require(secs <= 600.0, "verify all took " + std::to_string(secs) + "s, budget is 600s");

    code = run_command("'" + ksum_path + "' verify all --seed 1 --out '" + out2 + "'", nullptr);
    require(code == 0, "second verify all run failed");
    const std::string bytes1 = slurp(out1);
    require(bytes1 == slurp(out2), "reruns with the same seed are not byte-identical");

    const Json suite = Json::parse(bytes1);
    std::string err;
    require(validate_report_shape(suite, &err), "schema validation failed: " + err);
    require(suite["summary"]["pass"].get<bool>(), "suite reports failures");

    bool saw_thm1 = false, saw_thm2 = false, saw_energy_summary = false;
    for (const auto& report : suite["reports"]) {
        const std::string check = report["check"].get<std::string>();
        if (check == "thm1" || check == "thm2") {
            (check == "thm1" ? saw_thm1 : saw_thm2) = true;
            require(!report["rows"].empty(), check + " ratio table is empty");
            const auto c = report["summary"]["empirical_constant"].get<double>();
            require(std::isfinite(c) && c > 0.0, check + " empirical constant not finite");
            for (const auto& row : report["rows"]) {
                require(std::isfinite(row["ratio"].get<double>()),
                        check + " row ratio not finite");
            }
        }
        if (check == "energy") {
            const auto& s = report["summary"];
            if (s["energy_bound_max_ratio"].is_number()) {
                saw_energy_summary = true;
                require(std::isfinite(s["energy_bound_max_ratio"].get<double>()),
                        "energy bound ratio not finite");
                require(s["growth_min_ratio"].is_number() &&
                            std::isfinite(s["growth_min_ratio"].get<double>()),
                        "growth ratio not finite");
            }
        }
    }
    require(saw_thm1 && saw_thm2, "missing ratio tables in the suite");
    require(saw_energy_summary, "missing empirical-constant summaries in the suite");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::string ksum_path;
    std::string workdir = ".";
    app.add_option("--ksum", ksum_path, "Path to the ksum CLI binary");
    app.add_option("--workdir", workdir, "Scratch directory for report files");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        std::string name;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"C1 Weil bound, exhaustive, q in {27,32,125,243,343}", criterion_weil},
        {"C2 reduction identity on 784 linear pairs and seeded translates",
         criterion_reduction},
        {"C3 F_8 trace-zero hyperplane double sum = 16, critical set {1}",
         criterion_f8_value},
        {"C4 trivial bound holds in every sweep row", criterion_trivial_bound},
        {"C5 energy histogram = quadruple oracle; subspace energy = size^3",
         criterion_energy_oracle},
        {"C6 Cauchy inequality on 100 seeded sets", criterion_cauchy},
        {"C7 orthogonality suite, exhaustive on F_27 and F_32", criterion_orthogonality},
        {"C8 Kloosterman identities, exact, all prime powers q <= 125",
         criterion_kloosterman_identities},
        {"C9 report pipeline: budget, exit code, schema, determinism",
         [&] { criterion_pipeline(ksum_path, workdir); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        std::string detail;
        bool pass = true;
        try {
            c.run();
        } catch (const Failure& f) {
            pass = false;
            detail = f.detail;
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << secs << "s)";
        if (!pass) std::cout << " -- " << detail;
        std::cout << "\n";
        failures += pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
