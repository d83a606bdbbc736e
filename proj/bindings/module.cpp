#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "ksum/additive.hpp"
#include "ksum/kloosterman.hpp"
#include "ksum/parse.hpp"
#include "ksum/sums.hpp"
#include "ksum/verify.hpp"
#include "ksum/version.hpp"

namespace py = pybind11;
using namespace ksum;

namespace {

using Coeffs = std::vector<std::int64_t>;

FieldElement to_elem(const FieldCtx& f, const Coeffs& c) { return f.from_coeffs(c); }

std::vector<std::uint32_t> to_coeffs(const FieldCtx& f, FieldElement x) { return f.coeffs(x); }

std::vector<FieldElement> to_set(const FieldCtx& f, const std::vector<Coeffs>& elems) {
    std::vector<FieldElement> out;
    out.reserve(elems.size());
    for (const auto& c : elems) out.push_back(to_elem(f, c));
    return out;
}

std::vector<std::vector<std::uint32_t>> from_set(const FieldCtx& f,
                                                 const std::vector<FieldElement>& elems) {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(elems.size());
    for (auto x : elems) out.push_back(to_coeffs(f, x));
    return out;
}

AffineSubspace build_affine(const FieldCtx& f, const std::vector<Coeffs>& rows,
                            const std::optional<Coeffs>& base) {
    return make_affine(f, base ? to_elem(f, *base) : f.zero(), span(f, to_set(f, rows)));
}

AdditiveCharacter build_chi(const FieldCtx& f, const std::optional<Coeffs>& a) {
    return AdditiveCharacter{a ? to_elem(f, *a) : f.one()};
}

py::dict kloosterman_dict(const FieldCtx& f, const KloostermanValue& k) {
    (void)f;
    py::dict d;
    d["value"] = k.value;
    d["counts"] = k.exact.counts();
    d["weil_margin"] = k.weil_margin;
    d["trivial_character"] = k.trivial_character;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kloosterman sums, affine-subspace double sums and additive energy over F_{p^n}";
    m.attr("__version__") = kVersion;

    py::class_<FieldCtx, std::shared_ptr<FieldCtx>>(m, "Field")
        .def_property_readonly("p", &FieldCtx::p)
        .def_property_readonly("n", &FieldCtx::n)
        .def_property_readonly("q", &FieldCtx::q)
        .def_property_readonly("modulus",
                               [](const FieldCtx& f) { return f.params().modulus; })
        .def("element",
             [](const FieldCtx& f, const Coeffs& c) { return to_coeffs(f, to_elem(f, c)); },
             py::arg("coeffs"), "Canonical (reduced) coefficient vector")
        .def("add", [](const FieldCtx& f, const Coeffs& x, const Coeffs& y) {
            return to_coeffs(f, f.add(to_elem(f, x), to_elem(f, y)));
        })
        .def("sub", [](const FieldCtx& f, const Coeffs& x, const Coeffs& y) {
            return to_coeffs(f, f.sub(to_elem(f, x), to_elem(f, y)));
        })
        .def("neg", [](const FieldCtx& f, const Coeffs& x) {
            return to_coeffs(f, f.neg(to_elem(f, x)));
        })
        .def("mul", [](const FieldCtx& f, const Coeffs& x, const Coeffs& y) {
            return to_coeffs(f, f.mul(to_elem(f, x), to_elem(f, y)));
        })
        .def("inv", [](const FieldCtx& f, const Coeffs& x) {
            return to_coeffs(f, f.inv(to_elem(f, x)));
        })
        .def("trace", [](const FieldCtx& f, const Coeffs& x) {
            return f.trace(to_elem(f, x));
        })
        .def("elements", [](const FieldCtx& f) { return from_set(f, f.elements()); },
             "All q elements in the global order (0 first)")
        .def("largest_proper_subfield_size", &FieldCtx::largest_proper_subfield_size)
        .def("__repr__", [](const FieldCtx& f) {
            return "<ksum.Field p=" + std::to_string(f.p()) + " n=" + std::to_string(f.n()) +
                   ">";
        });

    m.def("make_field", [](std::uint32_t p, std::uint32_t n) {
        return std::make_shared<FieldCtx>(FieldCtx::make(p, n));
    }, py::arg("p"), py::arg("n"), "Construct F_{p^n} with the canonical modulus");

    m.def("psi_exponent",
          [](const FieldCtx& f, const Coeffs& x, std::optional<Coeffs> a) {
              return psi_exponent(f, build_chi(f, a), to_elem(f, x));
          },
          py::arg("field"), py::arg("x"), py::arg("a") = py::none(),
          "Tr(a*x) in [0, p); the character value is e(result / p)");

    m.def("kloosterman",
          [](const FieldCtx& f, const Coeffs& u, const Coeffs& v, std::optional<Coeffs> a) {
              return kloosterman_dict(
                  f, kloosterman(f, build_chi(f, a), to_elem(f, u), to_elem(f, v)));
          },
          py::arg("field"), py::arg("u"), py::arg("v"), py::arg("a") = py::none());

    m.def("weil_scan", [](const FieldCtx& f) {
        const auto rep = weil_scan(f, AdditiveCharacter{f.one()});
        py::dict d;
        d["pairs_scanned"] = rep.pairs_scanned;
        d["max_ratio"] = rep.max_ratio;
        d["max_abs"] = rep.max_abs;
        d["argmax_u"] = to_coeffs(f, rep.argmax_u);
        d["argmax_v"] = to_coeffs(f, rep.argmax_v);
        d["violations"] = rep.violations.size();
        d["k00"] = rep.k00;
        d["k00_exact"] = rep.k00_exact;
        return d;
    }, py::arg("field"));

    m.def("span_basis",
          [](const FieldCtx& f, const std::vector<Coeffs>& vectors) {
              return from_set(f, span(f, to_set(f, vectors)).rows());
          },
          py::arg("field"), py::arg("vectors"), "Reduced row echelon basis of the span");

    m.def("orthogonal_complement",
          [](const FieldCtx& f, const std::vector<Coeffs>& rows) {
              return from_set(f, orthogonal_complement(f, span(f, to_set(f, rows))).rows());
          },
          py::arg("field"), py::arg("basis"));

    m.def("subspace_members",
          [](const FieldCtx& f, const std::vector<Coeffs>& rows, std::optional<Coeffs> base) {
              return from_set(f, members(f, build_affine(f, rows, base)));
          },
          py::arg("field"), py::arg("basis"), py::arg("base") = py::none());

    m.def("critical_set",
          [](const FieldCtx& f, const std::vector<Coeffs>& l, const std::vector<Coeffs>& mrows) {
              const auto s = critical_set(f, span(f, to_set(f, l)), span(f, to_set(f, mrows)));
              py::dict d;
              d["elements"] = from_set(f, s.elements);
              d["lperp_size"] = s.lperp_size;
              d["mperp_size"] = s.mperp_size;
              return d;
          },
          py::arg("field"), py::arg("L"), py::arg("M"));

    m.def("double_sum_direct",
          [](const FieldCtx& f, const std::vector<Coeffs>& u, const std::vector<Coeffs>& v) {
              return double_sum_direct(f, AdditiveCharacter{f.one()}, to_set(f, u),
                                       to_set(f, v));
          },
          py::arg("field"), py::arg("U"), py::arg("V"));

    m.def("double_sum_affine",
          [](const FieldCtx& f, const std::vector<Coeffs>& a_rows, std::optional<Coeffs> a_base,
             const std::vector<Coeffs>& b_rows, std::optional<Coeffs> b_base) {
              const auto res = double_sum_affine(f, AdditiveCharacter{f.one()},
                                                 build_affine(f, a_rows, a_base),
                                                 build_affine(f, b_rows, b_base));
              py::dict d;
              d["value"] = res.value;
              d["critical_size"] = res.critical_size;
              return d;
          },
          py::arg("field"), py::arg("A_basis"), py::arg("A_base"), py::arg("B_basis"),
          py::arg("B_base"));

    m.def("weighted_sum",
          [](const FieldCtx& f,
             const std::vector<std::pair<Coeffs, std::complex<double>>>& weights,
             const std::vector<Coeffs>& a_rows, std::optional<Coeffs> a_base) {
              std::vector<std::pair<FieldElement, std::complex<double>>> entries;
              entries.reserve(weights.size());
              for (const auto& [c, w] : weights) entries.push_back({to_elem(f, c), w});
              return weighted_sum(f, AdditiveCharacter{f.one()},
                                  WeightVector(std::move(entries)),
                                  build_affine(f, a_rows, a_base));
          },
          py::arg("field"), py::arg("weights"), py::arg("A_basis"),
          py::arg("A_base") = py::none());

    m.def("trivial_bound", &trivial_bound, py::arg("A_size"), py::arg("q"),
          py::arg("alpha_norm1"));

    m.def("thm1_rhs", [](std::uint64_t q, std::uint64_t a_size) {
        const auto r = thm1_rhs(q, a_size);
        py::dict d;
        d["term_q"] = r.term_q;
        d["term_qa1"] = r.term_qa_1;
        d["term_qa2"] = r.term_qa_2;
        d["max"] = r.max_term;
        d["argmax"] = r.argmax;
        return d;
    }, py::arg("q"), py::arg("A_size"));

    m.def("thm2_rhs", &thm2_rhs, py::arg("q"), py::arg("A_size"), py::arg("alpha_norm1"),
          py::arg("alpha_norm2"));
    m.def("thm1_nontrivial", &thm1_nontrivial, py::arg("q"), py::arg("A_size"));
    m.def("thm2_nontrivial", &thm2_nontrivial, py::arg("q"), py::arg("A_size"),
          py::arg("V_size"));

    m.def("sumset_2S",
          [](const FieldCtx& f, const std::vector<Coeffs>& s) {
              return from_set(f, sumset_2S(f, normalize_set(to_set(f, s))));
          },
          py::arg("field"), py::arg("S"));

    m.def("inverse_set",
          [](const FieldCtx& f, const std::vector<Coeffs>& s) {
              return from_set(f, inverse_set(f, normalize_set(to_set(f, s))));
          },
          py::arg("field"), py::arg("S"));

    m.def("additive_energy",
          [](const FieldCtx& f, const std::vector<Coeffs>& s) {
              return additive_energy(f, normalize_set(to_set(f, s)));
          },
          py::arg("field"), py::arg("S"));

    m.def("additive_energy_oracle",
          [](const FieldCtx& f, const std::vector<Coeffs>& s) {
              return additive_energy_oracle(f, normalize_set(to_set(f, s)));
          },
          py::arg("field"), py::arg("S"));

    m.def("energy_bound_rhs", &energy_bound_rhs, py::arg("S_size"), py::arg("T_size"),
          py::arg("q"));

    m.def("sumset_growth_rhs", [](std::uint64_t s, std::uint64_t q) {
        const auto r = sumset_growth_rhs(s, q);
        py::dict d;
        d["branch_plain"] = r.branch_plain;
        d["branch_qterm"] = r.branch_qterm;
        d["value"] = r.value;
        d["plain_active"] = r.plain_active;
        return d;
    }, py::arg("S_size"), py::arg("q"));

    m.def("energy_report",
          [](const FieldCtx& f, const std::vector<Coeffs>& s) {
              const auto rep = make_energy_report(f, normalize_set(to_set(f, s)));
              py::dict d;
              d["s_size"] = rep.s_size;
              d["t_size"] = rep.t_size;
              d["u_size"] = rep.u_size;
              d["energy_inv"] = rep.energy_inv;
              d["energy_rhs"] = rep.energy_rhs;
              d["growth_rhs"] = rep.growth_rhs;
              d["subfield_ok"] = rep.subfield_ok;
              d["cauchy_lhs"] = static_cast<std::uint64_t>(rep.cauchy.lhs);
              d["cauchy_rhs"] = static_cast<std::uint64_t>(rep.cauchy.rhs);
              d["cauchy_ok"] = rep.cauchy.holds;
              return d;
          },
          py::arg("field"), py::arg("S"));

    m.def("run_verify",
          [](const std::string& check, std::optional<std::uint32_t> p,
             std::optional<std::uint32_t> n, std::uint64_t seed, int jobs,
             std::optional<std::uint64_t> samples, std::optional<std::uint64_t> translates,
             bool exhaustive) {
              RunOptions opts;
              opts.p = p;
              opts.n = n;
              opts.seed = seed;
              opts.jobs = jobs;
              opts.samples = samples;
              opts.translates = translates;
              opts.exhaustive = exhaustive;
              const RunResult res = check == "all" ? run_all(opts) : run_check(check, opts);
              return py::make_tuple(res.output.dump(), res.violation_count);
          },
          py::arg("check"), py::arg("p") = py::none(), py::arg("n") = py::none(),
          py::arg("seed") = 1, py::arg("jobs") = 1, py::arg("samples") = py::none(),
          py::arg("translates") = py::none(), py::arg("exhaustive") = false,
          "Run a verification sweep; returns (report_json, violation_count)");
}
