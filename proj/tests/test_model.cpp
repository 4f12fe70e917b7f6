#include <doctest.h>

#include "limid/model.hpp"

using namespace limid;

namespace {

Table over(std::vector<int> vars, std::vector<int> cards, std::vector<double> vals) {
    Table t = Table::zeros(std::move(vars), std::move(cards));
    t.values = std::move(vals);
    return t;
}

// r0 -> d1 -> r2, value on r2.
Limid tiny() {
    Limid m;
    m.variables = {{0, "r0", 2}, {1, "d1", 2}, {2, "r2", 2}};
    NodeDef r0{0, NodeKind::Chance, {}, over({0}, {2}, {0.4, 0.6})};
    NodeDef d1{1, NodeKind::Decision, {0}, {}};
    NodeDef r2{2, NodeKind::Chance, {1}, over({1, 2}, {2, 2}, {0.9, 0.1, 0.2, 0.8})};
    m.nodes = {r0, d1, r2};
    ValueDef u{"u", {2}, over({2}, {2}, {1.0, 5.0})};
    m.values = {u};
    return m;
}

bool has_rule(const std::vector<Diagnostic>& diags, const std::string& rule) {
    for (const auto& d : diags)
        if (d.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("valid model has no diagnostics") {
    CHECK(validate(tiny()).empty());
}

TEST_CASE("validate catches structural problems") {
    auto m = tiny();
    m.variables[1].cardinality = 0;
    CHECK(has_rule(validate(m), "cardinality-not-positive"));

    m = tiny();
    m.nodes[1].parents = {9};
    CHECK(has_rule(validate(m), "unknown-parent"));

    m = tiny();
    m.values[0].parents = {7};
    CHECK(has_rule(validate(m), "value-node-has-child"));

    m = tiny();
    m.nodes[0].parents = {2};  // r0 <-> r2 cycle through d1
    CHECK(has_rule(validate(m), "graph-not-acyclic"));

    m = tiny();
    m.nodes[2].cpt.values = {0.9, 0.3, 0.2, 0.8};
    CHECK(has_rule(validate(m), "cpt-not-normalized"));

    m = tiny();
    m.nodes[2].cpt.values = {0.9, -0.1, 0.2, 1.2};
    CHECK(has_rule(validate(m), "negative-probability"));

    m = tiny();
    m.values[0].utility.vars = {0};
    CHECK(has_rule(validate(m), "utility-domain-mismatch"));
}

TEST_CASE("decision order follows declaration order") {
    Limid m = tiny();
    CHECK(m.decision_order() == std::vector<int>{1});
    CHECK(m.family(1) == std::vector<int>{0, 1});
    CHECK(m.joint_size() == 8);
}

TEST_CASE("uniform policy and strategy") {
    Limid m = tiny();
    Policy p = uniform_policy(m, 1);
    CHECK(p.table.vars == std::vector<int>{0, 1});
    CHECK(p.table.values == std::vector<double>(4, 0.5));
    CHECK_THROWS_AS(uniform_policy(m, 0), SolverError);
    Strategy q = uniform_strategy(m);
    CHECK(q.policies.size() == 1);
}
