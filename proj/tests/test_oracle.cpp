#include <doctest.h>

#include "limid/generate.hpp"
#include "limid/oracle.hpp"

using namespace limid;

namespace {

Table over(std::vector<int> vars, std::vector<int> cards, std::vector<double> vals) {
    Table t = Table::zeros(std::move(vars), std::move(cards));
    t.values = std::move(vals);
    return t;
}

// One observed coin, one decision, payoff for matching the coin.
Limid matching_game() {
    Limid m;
    m.variables = {{0, "coin", 2}, {1, "guess", 2}};
    m.nodes = {{0, NodeKind::Chance, {}, over({0}, {2}, {0.3, 0.7})},
               {1, NodeKind::Decision, {0}, {}}};
    m.values = {{"match", {0, 1}, over({0, 1}, {2, 2}, {1, 0, 0, 1})}};
    return m;
}

}  // namespace

TEST_CASE("brute_eu on a chance-only model") {
    Limid m;
    m.variables = {{0, "a", 2}};
    m.nodes = {{0, NodeKind::Chance, {}, over({0}, {2}, {0.25, 0.75})}};
    m.values = {{"u", {0}, over({0}, {2}, {4, 8})}};
    CHECK(oracle::brute_eu(m, {}) == doctest::Approx(0.25 * 4 + 0.75 * 8));
}

TEST_CASE("brute_optimal finds the observing strategy") {
    Limid m = matching_game();
    oracle::OptimalResult best = oracle::brute_optimal(m);
    CHECK(best.eu == doctest::Approx(1.0));  // always match the observed coin
    const Table& t = best.strategy.policies.at(1).table;
    CHECK(t.values == std::vector<double>{1, 0, 0, 1});
    CHECK(oracle::brute_eu(m, best.strategy) == doctest::Approx(best.eu));
}

TEST_CASE("zero utilities give the lexicographically first strategy") {
    Limid m = matching_game();
    m.values[0].utility.values = {0, 0, 0, 0};
    oracle::OptimalResult best = oracle::brute_optimal(m);
    CHECK(best.eu == doctest::Approx(0.0));
    CHECK(best.strategy.policies.at(1).table.values == std::vector<double>{1, 0, 1, 0});
}

TEST_CASE("joint distribution sums to one") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams p;
        p.seed = seed;
        p.n_chance = 3;
        p.n_decisions = 2;
        p.n_values = 1;
        Limid m = generate_limid(p);
        Table joint = oracle::joint_distribution(m, uniform_strategy(m));
        double total = 0.0;
        for (double v : joint.values) total += v;
        CHECK(total == doctest::Approx(1.0));
    }
}

TEST_CASE("policy update matches best response for the last decision") {
    GenParams p;
    p.seed = 17;
    p.n_chance = 4;
    p.n_decisions = 2;
    p.n_values = 2;
    p.soluble = true;
    Limid m = generate_limid(p);
    const int last = m.decision_order().back();
    Strategy others = uniform_strategy(m);
    others.policies.erase(last);
    Policy a = oracle::brute_policy_update(m, others, last);
    Policy b = oracle::brute_best_response(m, others, last);
    CHECK(a.table.values == b.table.values);
}

TEST_CASE("caps guard against explosion") {
    GenParams p;
    p.seed = 1;
    p.n_chance = 6;
    Limid m = generate_limid(p);
    oracle::Options tiny_cap;
    tiny_cap.cell_cap = 4;
    CHECK_THROWS_AS(oracle::brute_eu(m, uniform_strategy(m), tiny_cap), SolverError);
}
