#include <doctest.h>

#include "limid/generate.hpp"
#include "limid/io.hpp"
#include "limid/oracle.hpp"
#include "limid/spu.hpp"

using namespace limid;

namespace {

Table over(std::vector<int> vars, std::vector<int> cards, std::vector<double> vals) {
    Table t = Table::zeros(std::move(vars), std::move(cards));
    t.values = std::move(vals);
    return t;
}

Limid soluble_instance(std::uint64_t seed) {
    GenParams p;
    p.seed = seed;
    p.n_chance = 4;
    p.n_decisions = 2;
    p.n_values = 2;
    p.soluble = true;
    return generate_limid(p);
}

// Six variables whose junction tree is a five-clique chain with the two
// decision homes two edges apart — partial collects reuse the off-path
// messages.
Limid chain_model() {
    Limid m;
    for (int i = 0; i < 6; ++i) m.variables.push_back({i, "x" + std::to_string(i), 2});
    m.nodes = {
        {0, NodeKind::Chance, {}, over({0}, {2}, {0.4, 0.6})},
        {1, NodeKind::Chance, {0}, over({0, 1}, {2, 2}, {0.7, 0.3, 0.2, 0.8})},
        {2, NodeKind::Decision, {1}, {}},
        {3, NodeKind::Chance, {2}, over({2, 3}, {2, 2}, {0.9, 0.1, 0.3, 0.7})},
        {4, NodeKind::Decision, {3}, {}},
        {5, NodeKind::Chance, {4}, over({4, 5}, {2, 2}, {0.6, 0.4, 0.1, 0.9})},
    };
    m.values = {{"u_a", {1, 2}, over({1, 2}, {2, 2}, {2, -1, -3, 4})},
                {"u_b", {3, 4}, over({3, 4}, {2, 2}, {1, 0, -2, 5})},
                {"u_c", {5}, over({5}, {2}, {3, -6})}};
    return m;
}

}  // namespace

TEST_CASE("solve plan: one root per decision, full then partial steps") {
    Limid m = reduce(chain_model());
    JunctionTree jt = compile_limid(m);
    SolvePlan plan = plan_roots(jt, m);
    REQUIRE(plan.roots.size() == 2);
    CHECK(plan.roots[0] == jt.decision_home[0]);
    CHECK(plan.steps.size() == 2);
    CHECK(plan.steps[0].size() == jt.edges.size());  // full collect
    CHECK(plan.steps[1].size() == 2);                // path between the homes
}

TEST_CASE("soluble instances: all architectures reach the oracle optimum") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Limid m = soluble_instance(seed);
        double best = oracle::brute_optimal(m).eu;
        SolveResult ss = solve_soluble(m, Arch::SS);
        SolveResult hugin = solve_soluble(m, Arch::Hugin);
        SolveResult lp = solve_soluble(m, Arch::LP);
        for (const SolveResult* r : {&ss, &hugin, &lp}) {
            CHECK(r->eu == doctest::Approx(best).epsilon(1e-9));
            CHECK(oracle::brute_eu(m, r->strategy) == doctest::Approx(best).epsilon(1e-9));
        }
        for (const auto& [d, pol] : ss.strategy.policies) {
            CHECK(hugin.strategy.policies.at(d).table.values == pol.table.values);
            CHECK(lp.strategy.policies.at(d).table.values == pol.table.values);
        }
    }
}

TEST_CASE("zero utilities give EU 0 and the first-action strategy") {
    Limid m = soluble_instance(5);
    for (auto& v : m.values) std::fill(v.utility.values.begin(), v.utility.values.end(), 0.0);
    SolveResult res = solve_soluble(m, Arch::SS);
    CHECK(res.eu == doctest::Approx(0.0));
    for (const auto& [d, pol] : res.strategy.policies) {
        const int card = pol.table.cards.back();
        for (std::size_t r = 0; r * card < pol.table.size(); ++r)
            CHECK(pol.table.values[r * card] == 1.0);
    }
}

TEST_CASE("general loop: soluble input converges in one cycle") {
    Limid m = soluble_instance(9);
    SolveResult one_pass = solve_soluble(m, Arch::LP);
    SolveResult looped = spu_general(m, Arch::LP);
    CHECK(looped.iterations == 1);
    CHECK(looped.eu == doctest::Approx(one_pass.eu).epsilon(1e-12));
    for (const auto& [d, pol] : one_pass.strategy.policies)
        CHECK(looped.strategy.policies.at(d).table.values == pol.table.values);
}

TEST_CASE("general loop refuses the HUGIN architecture") {
    Limid m = soluble_instance(2);
    try {
        spu_general(m, Arch::Hugin);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.code == "hugin-cannot-retract");
    }
}

TEST_CASE("general loop: no single-policy deviation improves the result") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams p;
        p.seed = 500 + seed;
        p.n_chance = 4;
        p.n_decisions = 2;
        p.n_values = 2;
        Limid m = generate_limid(p);

        std::vector<double> eu_trace;
        SolveOptions opt;
        opt.on_replace = [&](const Strategy& q) { eu_trace.push_back(oracle::brute_eu(m, q)); };
        SolveResult res = spu_general(m, Arch::SS, opt);

        for (std::size_t i = 1; i < eu_trace.size(); ++i)
            CHECK(eu_trace[i] >= eu_trace[i - 1] - 1e-9);

        Limid reduced = reduce(m);
        double final_eu = oracle::brute_eu(reduced, res.strategy);
        CHECK(res.eu == doctest::Approx(final_eu).epsilon(1e-9));
        for (int d : reduced.decision_order()) {
            Strategy others = res.strategy;
            others.policies.erase(d);
            Policy dev = oracle::brute_best_response(reduced, others, d);
            Strategy alt = res.strategy;
            alt.policies[d] = dev;
            CHECK(oracle::brute_eu(reduced, alt) <= final_eu + 1e-9);
        }
    }
}

TEST_CASE("partial collects reuse off-path messages") {
    Limid m = chain_model();
    const double best = oracle::brute_optimal(m).eu;
    for (Arch arch : {Arch::SS, Arch::Hugin, Arch::LP}) {
        SolveResult res = solve_soluble(m, arch);
        CHECK(res.eu == doctest::Approx(best).epsilon(1e-9));
        // A five-clique chain costs 4 messages per full collect; the partial
        // schedule reuses the two messages behind the first root.
        CHECK(res.counters.messages == 6);
    }
}

TEST_CASE("results are deterministic across runs") {
    Limid m = soluble_instance(13);
    SolveResult a = solve_soluble(m, Arch::LP);
    SolveResult b = solve_soluble(m, Arch::LP);
    CHECK(a.eu == b.eu);
    CHECK(a.counters.solve.total() == b.counters.solve.total());
    for (const auto& [d, pol] : a.strategy.policies)
        CHECK(b.strategy.policies.at(d).table.values == pol.table.values);
}
