#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "limid/generate.hpp"
#include "limid/io.hpp"
#include "limid/oracle.hpp"
#include "limid/spu.hpp"

namespace py = pybind11;
using namespace limid;

namespace {

Arch arch_from(const std::string& s) {
    if (s == "ss") return Arch::SS;
    if (s == "hugin") return Arch::Hugin;
    if (s == "lp") return Arch::LP;
    throw py::value_error("arch must be one of 'ss', 'hugin', 'lp'");
}

py::dict counter_dict(const OpCounter& c) {
    py::dict d;
    d["sums"] = c.sums;
    d["mults"] = c.mults;
    d["divs"] = c.divs;
    d["subs"] = c.subs;
    d["total"] = c.total();
    return d;
}

py::dict strategy_dict(const Limid& m, const Strategy& q) {
    py::dict out;
    for (const auto& [d, pol] : q.policies) {
        py::dict p;
        p["vars"] = pol.table.vars;
        p["values"] = pol.table.values;
        out[py::cast(m.variable(d).name)] = p;
    }
    return out;
}

py::dict result_dict(const Limid& m, const SolveResult& res) {
    py::dict out;
    out["eu"] = res.eu;
    out["iterations"] = res.iterations;
    out["messages"] = res.counters.messages;
    out["strategy"] = strategy_dict(m, res.strategy);
    out["init_ops"] = counter_dict(res.counters.init);
    out["solve_ops"] = counter_dict(res.counters.solve);
    out["readout_ops"] = counter_dict(res.counters.readout);
    return out;
}

}  // namespace

PYBIND11_MODULE(pylimid, mod) {
    mod.doc() = "junction-tree LIMID solver";

    py::class_<Limid>(mod, "Limid")
        .def_property_readonly("n_variables",
                               [](const Limid& m) { return m.variables.size(); })
        .def_property_readonly("n_values", [](const Limid& m) { return m.values.size(); })
        .def_property_readonly("decisions", [](const Limid& m) {
            std::vector<std::string> names;
            for (int d : m.decision_order()) names.push_back(m.variable(d).name);
            return names;
        });

    mod.def("parse", [](const std::string& text) { return parse_limid_string(text); });
    mod.def("load", &load_limid);
    mod.def("serialize", &serialize_limid);
    mod.def("validate", [](const Limid& m) {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& d : validate(m)) out.emplace_back(d.node_id, d.rule);
        return out;
    });
    mod.def(
        "generate",
        [](std::uint64_t seed, int chance, int decisions, int values, bool soluble,
           int max_card, int max_parents) {
            GenParams p;
            p.seed = seed;
            p.n_chance = chance;
            p.n_decisions = decisions;
            p.n_values = values;
            p.soluble = soluble;
            p.max_card = max_card;
            p.max_parents = max_parents;
            return generate_limid(p);
        },
        py::arg("seed"), py::arg("chance") = 4, py::arg("decisions") = 2,
        py::arg("values") = 2, py::arg("soluble") = false, py::arg("max_card") = 2,
        py::arg("max_parents") = 2);
    mod.def(
        "solve",
        [](const Limid& m, const std::string& arch, bool general) {
            SolveResult res =
                general ? spu_general(m, arch_from(arch)) : solve_soluble(m, arch_from(arch));
            return result_dict(reduce(m), res);
        },
        py::arg("model"), py::arg("arch") = "ss", py::arg("general") = false);
    mod.def("brute_eu_uniform",
            [](const Limid& m) { return oracle::brute_eu(m, uniform_strategy(m)); });
    mod.def("brute_optimal_eu", [](const Limid& m) { return oracle::brute_optimal(m).eu; });

    py::register_exception<ParseError>(mod, "ParseError");
    py::register_exception<SolverError>(mod, "SolverError");
}
