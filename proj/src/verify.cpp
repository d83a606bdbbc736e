#include "ksum/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ksum/additive.hpp"
#include "ksum/errors.hpp"
#include "ksum/kloosterman.hpp"
#include "ksum/parse.hpp"
#include "ksum/rng.hpp"
#include "ksum/subspace.hpp"
#include "ksum/version.hpp"

namespace ksum {

namespace {

using Clock = std::chrono::steady_clock;

Json field_json(const FieldCtx& ctx) {
    Json f;
    f["p"] = ctx.p();
    f["n"] = ctx.n();
    f["modulus"] = ctx.params().modulus;
    return f;
}

Json make_report(const std::string& check, const FieldCtx& ctx, Json rows, Json summary,
                 const RunOptions& opts, double walltime_ms) {
    Json r;
    r["check"] = check;
    r["field"] = field_json(ctx);
    r["rows"] = std::move(rows);
    r["summary"] = std::move(summary);
    Json meta;
    meta["seed"] = opts.seed;
    meta["version"] = kVersion;
    if (opts.timings) meta["walltime_ms"] = static_cast<std::int64_t>(walltime_ms);
    r["meta"] = std::move(meta);
    return r;
}

// Rows are computed into fixed slots, so the output is identical for any
// worker count.
template <typename Eval>
std::vector<Json> run_rows(std::size_t count, int jobs, Eval&& eval) {
    std::vector<Json> rows(count);
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = eval(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            rows[i] = eval(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return rows;
}

std::uint64_t total_subspaces(const FieldCtx& ctx) {
    std::uint64_t t = 0;
    for (std::uint32_t d = 0; d <= ctx.n(); ++d) t += count_subspaces(ctx, d);
    return t;
}

std::vector<SubspaceBasis> all_subspaces(const FieldCtx& ctx) {
    std::vector<SubspaceBasis> out;
    for (std::uint32_t d = 0; d <= ctx.n(); ++d) {
        auto part = enumerate_subspaces(ctx, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Json violation_entry(std::size_t row, const std::string& why) {
    Json v;
    v["row"] = row;
    v["why"] = why;
    return v;
}

// ---------------------------------------------------------------- weil ----

Json check_weil(const FieldCtx& ctx, const RunOptions& opts) {
    if (ctx.q() > 1024) {
        throw std::invalid_argument("exhaustive Kloosterman scan is limited to q <= 1024");
    }
    const auto t0 = Clock::now();
    const AdditiveCharacter chi{ctx.one()};
    const WeilScanReport scan = weil_scan(ctx, chi);

    Json row;
    row["q"] = ctx.q();
    row["pairs_scanned"] = scan.pairs_scanned;
    row["weil_bound"] = 2.0 * std::sqrt(static_cast<double>(ctx.q()));
    row["max_abs"] = scan.max_abs;
    row["max_ratio"] = scan.max_ratio;
    row["argmax_u"] = format_element(ctx, scan.argmax_u);
    row["argmax_v"] = format_element(ctx, scan.argmax_v);
    row["k00"] = scan.k00;
    row["k00_exact"] = scan.k00_exact;
    row["max_im_abs"] = scan.max_im_abs;
    Json rows = Json::array({row});

    Json violations = Json::array();
    for (const auto& [u, v] : scan.violations) {
        violations.push_back(violation_entry(
            0, "|K(" + format_element(ctx, u) + "; " + format_element(ctx, v) +
                   ")| exceeds 2*sqrt(q) + 1e-9"));
    }
    if (!scan.k00_exact) violations.push_back(violation_entry(0, "K(0,0) != q-1 exactly"));

    Json summary;
    summary["assertable"] = true;
    summary["violation_count"] = violations.size();
    summary["violations"] = violations;
    summary["pass"] = violations.empty();
    summary["max_ratio"] = scan.max_ratio;

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return make_report("weil", ctx, std::move(rows), std::move(summary), opts, ms);
}

// ----------------------------------------------------------- reduction ----

struct PairCase {
    std::string kind;
    AffineSubspace A;
    AffineSubspace B;
};

Json check_reduction(const FieldCtx& ctx, bool exhaustive_linear, const RunOptions& opts) {
    const auto t0 = Clock::now();
    const AdditiveCharacter chi{ctx.one()};

    std::vector<PairCase> cases;
    if (exhaustive_linear) {
        const auto spaces = all_subspaces(ctx);
        for (const auto& l : spaces) {
            for (const auto& m : spaces) {
                cases.push_back({"linear", AffineSubspace{ctx.zero(), l},
                                 AffineSubspace{ctx.zero(), m}});
            }
        }
    }
    const std::uint64_t translate_pairs = opts.translates.value_or(50);
    Rng master(opts.seed);
    for (std::uint64_t t = 0; t < translate_pairs; ++t) {
        const auto dl = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
        const auto dm = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
        AffineSubspace a = random_affine_subspace(ctx, dl, master.next());
        AffineSubspace b = random_affine_subspace(ctx, dm, master.next());
        cases.push_back({"translate", std::move(a), std::move(b)});
    }

    auto rows = run_rows(cases.size(), opts.jobs, [&](std::size_t i) {
        const auto& c = cases[i];
        const auto ma = members(ctx, c.A);
        const auto mb = members(ctx, c.B);
        const std::complex<double> direct = double_sum_direct(ctx, chi, ma, mb);
        const AffineDoubleSum red = double_sum_affine(ctx, chi, c.A, c.B);
        const double abs_err = std::abs(direct - red.value);
        const double tol = 1e-6 * std::max(1.0, std::abs(direct));

        Json row;
        row["kind"] = c.kind;
        row["A"] = format_affine(ctx, c.A);
        row["B"] = format_affine(ctx, c.B);
        row["dim_l"] = c.A.directions.dim();
        row["dim_m"] = c.B.directions.dim();
        row["a_size"] = c.A.cardinality(ctx);
        row["b_size"] = c.B.cardinality(ctx);
        row["direct_re"] = direct.real();
        row["direct_im"] = direct.imag();
        row["reduced_re"] = red.value.real();
        row["reduced_im"] = red.value.imag();
        row["critical_size"] = red.critical_size;
        row["abs_err"] = abs_err;
        row["ok"] = abs_err <= tol;
        return row;
    });

    Json violations = Json::array();
    double max_err = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        max_err = std::max(max_err, rows[i]["abs_err"].get<double>());
        if (!rows[i]["ok"].get<bool>()) {
            violations.push_back(violation_entry(i, "direct and reduced sums disagree"));
        }
    }

    Json summary;
    summary["assertable"] = true;
    summary["violation_count"] = violations.size();
    summary["violations"] = violations;
    summary["pass"] = violations.empty();
    summary["pairs"] = rows.size();
    summary["max_abs_err"] = max_err;

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return make_report("reduction", ctx, Json(rows), std::move(summary), opts, ms);
}

// ---------------------------------------------------------------- thm1 ----

Json check_thm1(const FieldCtx& ctx, const RunOptions& opts) {
    const auto t0 = Clock::now();
    const AdditiveCharacter chi{ctx.one()};
    const std::uint64_t q = ctx.q();

    std::vector<PairCase> cases;
    if (opts.exhaustive) {
        const auto spaces = all_subspaces(ctx);
        for (const auto& l : spaces) {
            for (const auto& m : spaces) {
                if (l.dim() > m.dim()) continue;  // the bound assumes #A <= #B
                cases.push_back({"exhaustive", AffineSubspace{ctx.zero(), l},
                                 AffineSubspace{ctx.zero(), m}});
            }
        }
    } else {
        const std::uint64_t samples = opts.samples.value_or(500);
        Rng master(opts.seed);
        for (std::uint64_t k = 0; k < samples; ++k) {
            const auto dl = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
            const auto dm = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
            AffineSubspace a = random_affine_subspace(ctx, dl, master.next());
            AffineSubspace b = random_affine_subspace(ctx, dm, master.next());
            if (a.cardinality(ctx) > b.cardinality(ctx)) std::swap(a, b);
            cases.push_back({"sample", std::move(a), std::move(b)});
        }
    }

    auto rows = run_rows(cases.size(), opts.jobs, [&](std::size_t i) {
        const auto& c = cases[i];
        const std::uint64_t a_size = c.A.cardinality(ctx);
        const std::uint64_t b_size = c.B.cardinality(ctx);
        const AffineDoubleSum res = double_sum_affine(ctx, chi, c.A, c.B);
        const double s_abs = std::abs(res.value);
        const Thm1Rhs rhs = thm1_rhs(q, a_size);
        const double scale = static_cast<double>(a_size) * static_cast<double>(b_size);
        const double trivial = 2.0 * scale * std::sqrt(static_cast<double>(q));
        // the sum contains the K(0,0) term iff both sets contain 0, i.e.
        // both canonical bases are 0
        const bool degenerate = c.A.base.idx == 0 && c.B.base.idx == 0;
        const double enforce = trivial + (degenerate ? degenerate_pair_excess(q) : 0.0);

        Json row;
        row["kind"] = c.kind;
        row["A"] = format_affine(ctx, c.A);
        row["B"] = format_affine(ctx, c.B);
        row["dim_l"] = c.A.directions.dim();
        row["dim_m"] = c.B.directions.dim();
        row["a_size"] = a_size;
        row["b_size"] = b_size;
        row["s_abs"] = s_abs;
        row["critical_size"] = res.critical_size;
        row["rhs_q"] = rhs.term_q;
        row["rhs_qa1"] = rhs.term_qa_1;
        row["rhs_qa2"] = rhs.term_qa_2;
        row["rhs_max"] = rhs.max_term;
        row["ratio"] = s_abs / (scale * rhs.max_term);
        row["trivial_bound"] = trivial;
        row["degenerate_pair"] = degenerate;
        row["trivial_ok"] = s_abs <= enforce * (1.0 + 1e-9) + 1e-9;
        row["nontrivial_regime"] = thm1_nontrivial(q, a_size);
        return row;
    });

    Json violations = Json::array();
    double max_ratio = 0.0;
    std::int64_t argmax = -1;
    std::uint64_t nontrivial_rows = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double r = rows[i]["ratio"].get<double>();
        if (r > max_ratio) {
            max_ratio = r;
            argmax = static_cast<std::int64_t>(i);
        }
        if (rows[i]["nontrivial_regime"].get<bool>()) ++nontrivial_rows;
        if (!rows[i]["trivial_ok"].get<bool>()) {
            violations.push_back(violation_entry(i, "trivial bound 2*A*B*sqrt(q) violated"));
        }
        if (!std::isfinite(r)) {
            violations.push_back(violation_entry(i, "non-finite ratio"));
        }
    }

    Json summary;
    summary["assertable"] = true;  // the trivial bound; the ratio table is report-only
    summary["violation_count"] = violations.size();
    summary["violations"] = violations;
    summary["pass"] = violations.empty();
    summary["empirical_constant"] = max_ratio;
    summary["argmax_row"] = argmax;
    summary["nontrivial_rows"] = nontrivial_rows;
    summary["n_odd"] = ctx.n() % 2 == 1;
    if (ctx.n() % 2 == 0) {
        summary["warning"] = "even extension degree: outside the bound's hypothesis";
    }

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return make_report("thm1", ctx, Json(rows), std::move(summary), opts, ms);
}

// ---------------------------------------------------------------- thm2 ----

struct WeightedCase {
    WeightScheme scheme;
    AffineSubspace A;
    std::uint64_t support_size;
    std::uint64_t seed;
};

Json check_thm2(const FieldCtx& ctx, const RunOptions& opts) {
    const auto t0 = Clock::now();
    const AdditiveCharacter chi{ctx.one()};
    const std::uint64_t q = ctx.q();
    const std::uint64_t per_scheme = opts.samples.value_or(50);
    const std::uint64_t max_support = std::min<std::uint64_t>(50, q);

    std::vector<WeightedCase> cases;
    Rng master(opts.seed);
    for (WeightScheme scheme :
         {WeightScheme::Ones, WeightScheme::RandomPhase, WeightScheme::RandomComplex}) {
        for (std::uint64_t k = 0; k < per_scheme; ++k) {
            const auto da = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
            AffineSubspace a = random_affine_subspace(ctx, da, master.next());
            const std::uint64_t s = 1 + master.below(max_support);
            cases.push_back({scheme, std::move(a), s, master.next()});
        }
    }

    auto rows = run_rows(cases.size(), opts.jobs, [&](std::size_t i) {
        const auto& c = cases[i];
        auto [support, alpha] = support_and_weights(ctx, c.seed, c.support_size, c.scheme);
        const std::complex<double> lhs = weighted_sum(ctx, chi, alpha, c.A);
        const double labs = std::abs(lhs);
        const std::uint64_t a_size = c.A.cardinality(ctx);
        const double n1 = alpha.norm(1.0);
        const double n2 = alpha.norm(2.0);
        const double rhs = thm2_rhs(q, a_size, n1, n2);
        const double trivial = trivial_bound(a_size, q, n1);
        // weight sitting on the degenerate K(0,0) term, if any
        double w00 = 0.0;
        if (c.A.base.idx == 0 && !support.empty() && support.front().idx == 0) {
            w00 = std::abs(alpha.entries().front().second);
        }
        const double enforce = trivial + w00 * degenerate_pair_excess(q);

        Json row;
        row["scheme"] = weight_scheme_name(c.scheme);
        row["A"] = format_affine(ctx, c.A);
        row["dim_a"] = c.A.directions.dim();
        row["a_size"] = a_size;
        row["support_size"] = support.size();
        row["seed"] = c.seed;
        row["lhs_re"] = lhs.real();
        row["lhs_im"] = lhs.imag();
        row["lhs_abs"] = labs;
        row["norm1"] = n1;
        row["norm2"] = n2;
        row["rhs"] = rhs;
        row["ratio"] = labs / rhs;
        row["trivial_bound"] = trivial;
        row["degenerate_pair"] = w00 > 0.0;
        row["trivial_ok"] = labs <= enforce * (1.0 + 1e-9) + 1e-9;
        row["nontrivial_regime"] = thm2_nontrivial(q, a_size, support.size());
        return row;
    });

    Json violations = Json::array();
    double max_ratio = 0.0;
    std::int64_t argmax = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double r = rows[i]["ratio"].get<double>();
        if (r > max_ratio) {
            max_ratio = r;
            argmax = static_cast<std::int64_t>(i);
        }
        if (!rows[i]["trivial_ok"].get<bool>()) {
            violations.push_back(violation_entry(i, "trivial bound violated"));
        }
        if (!std::isfinite(r)) violations.push_back(violation_entry(i, "non-finite ratio"));
    }

    Json summary;
    summary["assertable"] = true;
    summary["violation_count"] = violations.size();
    summary["violations"] = violations;
    summary["pass"] = violations.empty();
    summary["empirical_constant"] = max_ratio;
    summary["argmax_row"] = argmax;
    summary["n_odd"] = ctx.n() % 2 == 1;

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return make_report("thm2", ctx, Json(rows), std::move(summary), opts, ms);
}

// -------------------------------------------------------------- energy ----

struct EnergyCase {
    std::string kind;  // random | critical | subspace
    std::string spec;
    std::vector<FieldElement> set;
};

// Rows of all three kinds share one key order so the CSV projection lines
// up; inapplicable fields are null.
Json energy_row(const FieldCtx& ctx, const EnergyCase& c) {
    Json row;
    row["kind"] = c.kind;
    row["spec"] = c.spec;
    row["s_size"] = c.set.size();
    const std::uint64_t energy = additive_energy(ctx, c.set);
    row["energy"] = energy;
    row["energy_expected"] = nullptr;
    for (const char* k : {"oracle_checked", "oracle_ok", "t_size", "u_size", "energy_inv",
                          "energy_rhs", "growth_rhs", "energy_ratio", "growth_ratio",
                          "subfield_ok", "cauchy_lhs", "cauchy_rhs", "cauchy_ok"}) {
        row[k] = nullptr;
    }

    if (c.kind == "subspace") {
        const auto s = static_cast<std::uint64_t>(c.set.size());
        const std::uint64_t expected = s * s * s;
        row["energy_expected"] = expected;
        row["ok"] = energy == expected;
        return row;
    }

    bool ok = true;
    const bool oracle_checked = c.set.size() <= 40;
    row["oracle_checked"] = oracle_checked;
    if (oracle_checked) {
        const bool oracle_ok = additive_energy_oracle(ctx, c.set) == energy;
        row["oracle_ok"] = oracle_ok;
        ok = ok && oracle_ok;
    }

    const bool has_zero = !c.set.empty() && c.set.front().idx == 0;
    if (!c.set.empty() && !has_zero) {
        const EnergyReport rep = make_energy_report(ctx, c.set);
        row["t_size"] = rep.t_size;
        row["u_size"] = rep.u_size;
        row["energy_inv"] = rep.energy_inv;
        row["energy_rhs"] = rep.energy_rhs;
        row["growth_rhs"] = rep.growth_rhs;
        row["energy_ratio"] = static_cast<double>(rep.energy_inv) / rep.energy_rhs;
        row["growth_ratio"] =
            static_cast<double>(std::max(rep.t_size, rep.u_size)) / rep.growth_rhs;
        row["subfield_ok"] = rep.subfield_ok;
        row["cauchy_lhs"] = static_cast<std::uint64_t>(rep.cauchy.lhs);
        row["cauchy_rhs"] = static_cast<std::uint64_t>(rep.cauchy.rhs);
        row["cauchy_ok"] = rep.cauchy.holds;
        ok = ok && rep.cauchy.holds;
    }
    row["ok"] = ok;
    return row;
}

Json check_energy(const FieldCtx& ctx, const RunOptions& opts) {
    const auto t0 = Clock::now();
    const std::uint64_t q = ctx.q();

    std::vector<EnergyCase> cases;
    Rng master(opts.seed);

    const std::uint64_t random_count = opts.samples.value_or(q >= 200 ? 100 : 20);
    const std::uint64_t max_size = std::min<std::uint64_t>(50, q - 1);
    for (std::uint64_t k = 0; k < random_count; ++k) {
        const std::uint64_t size = 1 + master.below(max_size);
        const std::uint64_t seed = master.next();
        auto set = random_subset(ctx, seed, size, /*nonzero=*/true);
        cases.push_back({"random",
                         "random:" + std::to_string(size) + ":" + std::to_string(seed),
                         std::move(set)});
    }

    const std::uint64_t critical_count = q >= 200 ? 30 : 10;
    for (std::uint64_t k = 0; k < critical_count; ++k) {
        const auto dl = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
        const auto dm = static_cast<std::uint32_t>(master.below(ctx.n() + 1));
        SubspaceBasis l = random_affine_subspace(ctx, dl, master.next()).directions;
        SubspaceBasis m = random_affine_subspace(ctx, dm, master.next()).directions;
        auto s = critical_set(ctx, l, m);
        const std::string spec =
            "subspace-critical:" + format_affine(ctx, AffineSubspace{ctx.zero(), l}) + ":" +
            format_affine(ctx, AffineSubspace{ctx.zero(), m});
        cases.push_back({"critical", spec, std::move(s.elements)});
    }

    if (total_subspaces(ctx) <= 400) {
        for (const auto& basis : all_subspaces(ctx)) {
            auto mem = members(ctx, basis);
            const std::string spec = "literal:" + format_element_set(ctx, mem);
            cases.push_back({"subspace", spec, std::move(mem)});
        }
    }

    auto rows =
        run_rows(cases.size(), opts.jobs, [&](std::size_t i) { return energy_row(ctx, cases[i]); });

    Json violations = Json::array();
    double energy_max_ratio = 0.0;
    double growth_min_ratio = 0.0;
    bool have_bound_rows = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i]["ok"].get<bool>()) {
            violations.push_back(violation_entry(i, "exact energy check failed"));
        }
        if (rows[i]["subfield_ok"].is_boolean() && rows[i]["subfield_ok"].get<bool>() &&
            rows[i]["s_size"].get<std::uint64_t>() > 0) {
            const double er = rows[i]["energy_ratio"].get<double>();
            const double gr = rows[i]["growth_ratio"].get<double>();
            if (!have_bound_rows) {
                energy_max_ratio = er;
                growth_min_ratio = gr;
                have_bound_rows = true;
            } else {
                energy_max_ratio = std::max(energy_max_ratio, er);
                growth_min_ratio = std::min(growth_min_ratio, gr);
            }
        }
    }

    Json summary;
    summary["assertable"] = true;  // exact checks only; ratio summaries are report-only
    summary["violation_count"] = violations.size();
    summary["violations"] = violations;
    summary["pass"] = violations.empty();
    if (have_bound_rows) {
        summary["energy_bound_max_ratio"] = energy_max_ratio;
        summary["growth_min_ratio"] = growth_min_ratio;
    } else {
        summary["energy_bound_max_ratio"] = nullptr;
        summary["growth_min_ratio"] = nullptr;
    }

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return make_report("energy", ctx, Json(rows), std::move(summary), opts, ms);
}

// ------------------------------------------------------------- drivers ----

using FieldList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

FieldList default_fields(const std::string& check) {
    if (check == "weil") return {{2, 5}, {3, 3}, {5, 3}, {3, 5}, {7, 3}};
    if (check == "reduction") return {{3, 3}, {2, 5}};
    if (check == "thm1" || check == "thm2") return {{3, 5}};
    if (check == "energy") return {{3, 5}, {3, 3}, {2, 5}};
    throw std::invalid_argument("unknown check: " + check);
}

Json run_one(const std::string& check, const FieldCtx& ctx, const RunOptions& opts) {
    if (check == "weil") return check_weil(ctx, opts);
    if (check == "reduction") {
        const bool exhaustive = opts.exhaustive || total_subspaces(ctx) <= 100;
        return check_reduction(ctx, exhaustive, opts);
    }
    if (check == "thm1") return check_thm1(ctx, opts);
    if (check == "thm2") return check_thm2(ctx, opts);
    if (check == "energy") return check_energy(ctx, opts);
    throw std::invalid_argument("unknown check: " + check);
}

std::uint64_t report_violations(const Json& report) {
    return report["summary"]["violation_count"].get<std::uint64_t>();
}

Json suite_json(const std::string& name, std::vector<Json> reports, const RunOptions& opts,
                double walltime_ms) {
    Json out;
    out["suite"] = name;
    Json summary;
    std::uint64_t violations = 0;
    Json per_report = Json::array();
    for (const auto& r : reports) {
        violations += report_violations(r);
        Json item;
        item["check"] = r["check"];
        item["p"] = r["field"]["p"];
        item["n"] = r["field"]["n"];
        item["pass"] = r["summary"]["pass"];
        item["violation_count"] = r["summary"]["violation_count"];
        per_report.push_back(std::move(item));
    }
    out["reports"] = std::move(reports);
    summary["pass"] = violations == 0;
    summary["violation_count"] = violations;
    summary["reports"] = std::move(per_report);
    out["summary"] = std::move(summary);
    Json meta;
    meta["seed"] = opts.seed;
    meta["version"] = kVersion;
    if (opts.timings) meta["walltime_ms"] = static_cast<std::int64_t>(walltime_ms);
    out["meta"] = std::move(meta);
    return out;
}

}  // namespace

RunResult run_check(const std::string& check, const RunOptions& opts) {
    const auto t0 = Clock::now();
    FieldList fields;
    if (opts.p || opts.n) {
        if (!(opts.p && opts.n)) throw std::invalid_argument("--p and --n must be given together");
        fields = {{*opts.p, *opts.n}};
    } else {
        fields = default_fields(check);
    }

    std::vector<Json> reports;
    reports.reserve(fields.size());
    for (const auto& [p, n] : fields) {
        const FieldCtx ctx = FieldCtx::make(p, n);
        reports.push_back(run_one(check, ctx, opts));
    }

    RunResult res;
    if (reports.size() == 1) {
        res.violation_count = report_violations(reports[0]);
        res.output = std::move(reports[0]);
    } else {
        for (const auto& r : reports) res.violation_count += report_violations(r);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        res.output = suite_json(check, std::move(reports), opts, ms);
    }
    return res;
}

RunResult run_all(const RunOptions& opts) {
    const auto t0 = Clock::now();
    std::vector<Json> reports;
    for (const std::string check : {"weil", "reduction", "thm1", "thm2", "energy"}) {
        for (const auto& [p, n] : default_fields(check)) {
            const FieldCtx ctx = FieldCtx::make(p, n);
            reports.push_back(run_one(check, ctx, opts));
        }
    }
    RunResult res;
    for (const auto& r : reports) res.violation_count += report_violations(r);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    res.output = suite_json("all", std::move(reports), opts, ms);
    return res;
}

// ------------------------------------------------------------- formats ----

namespace {

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        out += "\"";
        return out;
    }
    return v.dump();
}

void csv_report(const Json& report, std::string& out) {
    out += "# check=" + report["check"].get<std::string>() +
           " p=" + report["field"]["p"].dump() + " n=" + report["field"]["n"].dump() +
           " seed=" + report["meta"]["seed"].dump() +
           " version=" + report["meta"]["version"].get<std::string>() + "\n";
    const Json& rows = report["rows"];
    if (rows.empty()) {
        out += "# no rows\n";
        return;
    }
    std::vector<std::string> header;
    for (const auto& [key, value] : rows[0].items()) {
        (void)value;
        header.push_back(key);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row.contains(header[i]) ? row[header[i]] : Json{});
        }
        out += '\n';
    }
}

}  // namespace

std::string to_csv(const Json& output) {
    std::string out;
    if (output.contains("suite")) {
        for (const auto& r : output["reports"]) csv_report(r, out);
    } else {
        csv_report(output, out);
    }
    return out;
}

namespace {

bool fail(std::string* error, const std::string& why) {
    if (error) *error = why;
    return false;
}

bool validate_check_report(const Json& r, std::string* error) {
    if (!r.is_object()) return fail(error, "report is not an object");
    if (!r.contains("check") || !r["check"].is_string()) return fail(error, "missing check name");
    if (!r.contains("field") || !r["field"].is_object()) return fail(error, "missing field");
    const Json& f = r["field"];
    if (!f.contains("p") || !f["p"].is_number_integer()) return fail(error, "field.p missing");
    if (!f.contains("n") || !f["n"].is_number_integer()) return fail(error, "field.n missing");
    if (!f.contains("modulus") || !f["modulus"].is_array()) {
        return fail(error, "field.modulus missing");
    }
    if (!r.contains("rows") || !r["rows"].is_array()) return fail(error, "rows missing");
    for (const auto& row : r["rows"]) {
        if (!row.is_object()) return fail(error, "row is not an object");
    }
    if (!r.contains("summary") || !r["summary"].is_object()) return fail(error, "summary missing");
    const Json& s = r["summary"];
    if (!s.contains("pass") || !s["pass"].is_boolean()) return fail(error, "summary.pass missing");
    if (!s.contains("assertable") || !s["assertable"].is_boolean()) {
        return fail(error, "summary.assertable missing");
    }
    if (!s.contains("violation_count") || !s["violation_count"].is_number()) {
        return fail(error, "summary.violation_count missing");
    }
    if (!r.contains("meta") || !r["meta"].is_object()) return fail(error, "meta missing");
    const Json& m = r["meta"];
    if (!m.contains("seed") || !m["seed"].is_number()) return fail(error, "meta.seed missing");
    if (!m.contains("version") || !m["version"].is_string()) {
        return fail(error, "meta.version missing");
    }
    return true;
}

}  // namespace

bool validate_report_shape(const Json& output, std::string* error) {
    if (!output.is_object()) return fail(error, "output is not an object");
    if (output.contains("suite")) {
        if (!output["suite"].is_string()) return fail(error, "suite name is not a string");
        if (!output.contains("reports") || !output["reports"].is_array()) {
            return fail(error, "suite.reports missing");
        }
        for (const auto& r : output["reports"]) {
            if (!validate_check_report(r, error)) return false;
        }
        if (!output.contains("summary") || !output["summary"].is_object()) {
            return fail(error, "suite.summary missing");
        }
        const Json& s = output["summary"];
        if (!s.contains("pass") || !s["pass"].is_boolean()) {
            return fail(error, "suite.summary.pass missing");
        }
        if (!s.contains("violation_count") || !s["violation_count"].is_number()) {
            return fail(error, "suite.summary.violation_count missing");
        }
        if (!output.contains("meta") || !output["meta"].is_object()) {
            return fail(error, "suite.meta missing");
        }
        return true;
    }
    return validate_check_report(output, error);
}

// ------------------------------------------------------------- weights ----

WeightScheme parse_weight_scheme(const std::string& name) {
    if (name == "ones") return WeightScheme::Ones;
    if (name == "random-phase") return WeightScheme::RandomPhase;
    if (name == "random-complex") return WeightScheme::RandomComplex;
    throw std::invalid_argument("unknown weight scheme: " + name);
}

std::string weight_scheme_name(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::Ones: return "ones";
        case WeightScheme::RandomPhase: return "random-phase";
        case WeightScheme::RandomComplex: return "random-complex";
    }
    return "?";
}

std::vector<FieldElement> random_subset(const FieldCtx& ctx, std::uint64_t seed,
                                        std::uint64_t size, bool nonzero) {
    const std::uint64_t universe = nonzero ? ctx.q() - 1 : ctx.q();
    if (size > universe) throw std::invalid_argument("subset size exceeds the field");
    Rng rng(seed);
    std::vector<bool> used(ctx.q(), false);
    std::vector<FieldElement> out;
    out.reserve(size);
    while (out.size() < size) {
        const std::uint64_t idx = nonzero ? 1 + rng.below(ctx.q() - 1) : rng.below(ctx.q());
        if (used[idx]) continue;
        used[idx] = true;
        out.push_back(FieldElement{static_cast<std::uint32_t>(idx)});
    }
    return normalize_set(std::move(out));
}

std::pair<std::vector<FieldElement>, WeightVector> support_and_weights(const FieldCtx& ctx,
                                                                       std::uint64_t seed,
                                                                       std::uint64_t size,
                                                                       WeightScheme scheme) {
    if (size == 0) throw std::invalid_argument("support must be nonempty");
    if (size > ctx.q()) throw std::invalid_argument("support size exceeds the field");
    Rng rng(seed);
    std::vector<bool> used(ctx.q(), false);
    std::vector<FieldElement> support;
    support.reserve(size);
    while (support.size() < size) {
        const std::uint64_t idx = rng.below(ctx.q());
        if (used[idx]) continue;
        used[idx] = true;
        support.push_back(FieldElement{static_cast<std::uint32_t>(idx)});
    }
    support = normalize_set(std::move(support));

    std::vector<std::pair<FieldElement, std::complex<double>>> entries;
    entries.reserve(support.size());
    for (FieldElement v : support) {
        std::complex<double> w;
        switch (scheme) {
            case WeightScheme::Ones:
                w = {1.0, 0.0};
                break;
            case WeightScheme::RandomPhase: {
                const double t = 2.0 * std::numbers::pi * rng.unit();
                w = {std::cos(t), std::sin(t)};
                break;
            }
            case WeightScheme::RandomComplex: {
                double re, im;
                do {
                    re = 2.0 * rng.unit() - 1.0;
                    im = 2.0 * rng.unit() - 1.0;
                } while (re * re + im * im > 1.0);
                w = {re, im};
                break;
            }
        }
        entries.push_back({v, w});
    }
    return {std::move(support), WeightVector(std::move(entries))};
}

}
