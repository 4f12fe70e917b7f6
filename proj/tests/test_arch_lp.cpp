#include <doctest.h>

#include <algorithm>

#include "limid/arch_lp.hpp"
#include "limid/arch_ss.hpp"
#include "limid/generate.hpp"
#include "test_helpers.hpp"

using namespace limid;
using limid::testing::random_table;
using limid::testing::unit;

namespace {

Table over(std::vector<int> vars, std::vector<int> cards, std::vector<double> vals) {
    Table t = Table::zeros(std::move(vars), std::move(cards));
    t.values = std::move(vals);
    return t;
}

Limid binary_vars(int n) {
    Limid m;
    for (int i = 0; i < n; ++i) m.variables.push_back({i, "v" + std::to_string(i), 2});
    return m;
}

// Normalized conditional of `head` given the remaining variables (head last).
Table random_conditional(std::mt19937_64& rng, std::vector<int> vars, std::vector<int> cards) {
    Table t = random_table(rng, std::move(vars), std::move(cards), 0.1, 1.0);
    const int card = t.cards.back();
    for (std::size_t base = 0; base < t.size(); base += card) {
        double s = 0;
        for (int x = 0; x < card; ++x) s += t.values[base + x];
        for (int x = 0; x < card; ++x) t.values[base + x] /= s;
    }
    return t;
}

// The reconstructed clique neighborhood: ids r1=0, d2=2, r2=3, d4=5.
DecomposedPotential clique3_fixture(std::mt19937_64& rng) {
    DecomposedPotential pot;
    pot.phi.push_back({random_conditional(rng, {0, 3}, {2, 2}), FactorKind::Probability, 3});
    pot.phi.push_back(
        {random_conditional(rng, {3, 2, 5}, {2, 2, 2}), FactorKind::PolicyFactor, 5});
    pot.psi.push_back({random_table(rng, {2, 3}, {2, 2}), FactorKind::Utility, -1});
    pot.psi.push_back({random_table(rng, {3, 5}, {2, 2}), FactorKind::Utility, -1});
    pot.psi.push_back({random_table(rng, {5, 0, 2}, {2, 2, 2}), FactorKind::Utility, -1});
    return pot;
}

void check_same_function(const Table& a, const Table& b, int n_vars, double tol = 1e-9) {
    std::vector<int> state(n_vars, 0);
    for (;;) {
        CHECK(a.at_state(state) == doctest::Approx(b.at_state(state)).epsilon(tol));
        std::size_t j = state.size();
        while (j-- > 0) {
            if (++state[j] < 2) break;
            state[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
}

}  // namespace

TEST_CASE("combine is a set union with no arithmetic") {
    std::mt19937_64 rng(3);
    DecomposedPotential a, b;
    a.phi.push_back({random_table(rng, {0}, {2}), FactorKind::Probability, 0});
    a.psi.push_back({random_table(rng, {0}, {2}), FactorKind::Utility, -1});
    b.phi.push_back({random_table(rng, {1}, {2}), FactorKind::Probability, 1});
    DecomposedPotential ab = lp_combine(a, b);
    CHECK(ab.phi.size() == 2);
    CHECK(ab.psi.size() == 1);
    CHECK(lp_combine({}, a).phi.size() == 1);
    CHECK(DecomposedPotential{}.vacuous());
}

TEST_CASE("contract: product of phi times sum of psi") {
    OpCounter c;
    CHECK(lp_contract({}, c).values == std::vector<double>{0});

    DecomposedPotential pot;
    pot.phi.push_back({over({0}, {2}, {0.5, 0.5}), FactorKind::Probability, 0});
    pot.psi.push_back({over({0}, {2}, {2, 6}), FactorKind::Utility, -1});
    CHECK(lp_contract(pot, c).values == std::vector<double>{1, 3});
}

TEST_CASE("eliminating a variable with a single conditional") {
    OpCounter c;
    DecomposedPotential pot;
    pot.phi.push_back({over({0}, {2}, {0.5, 0.5}), FactorKind::Probability, 0});
    pot.psi.push_back({over({0}, {2}, {2, 6}), FactorKind::Utility, -1});
    DecomposedPotential out = lp_eliminate_var(pot, 0, 2, c);
    CHECK(out.phi.empty());  // sum of a conditional is vacuous and dropped
    REQUIRE(out.psi.size() == 1);
    CHECK(out.psi[0].table.values == std::vector<double>{4});
}

TEST_CASE("eliminating a utility-only variable keeps the contraction exact") {
    OpCounter c;
    DecomposedPotential pot;
    pot.psi.push_back({over({0}, {2}, {2, 6}), FactorKind::Utility, -1});
    DecomposedPotential out = lp_eliminate_var(pot, 0, 2, c);
    Table cont = lp_contract(out, c);
    CHECK(cont.values == std::vector<double>{8});  // = sum over the variable
}

TEST_CASE("barren variables are dropped for free") {
    std::mt19937_64 rng(6);
    OpCounter c;
    DecomposedPotential pot;
    pot.phi.push_back({random_conditional(rng, {0, 1}, {2, 2}), FactorKind::Probability, 1});
    pot.phi.push_back({random_conditional(rng, {0}, {2}), FactorKind::Probability, 0});
    BarrenSets sets = find_barren(pot, {0});
    CHECK(sets.barren == std::vector<int>{1});
    DecomposedPotential out = lp_eliminate_var(pot, 1, 2, c);
    CHECK(c.total() == 0);
    CHECK(out.phi.size() == 1);
}

TEST_CASE("reconstructed fixture: probabilistic-barren detection") {
    std::mt19937_64 rng(8);
    DecomposedPotential pot = clique3_fixture(rng);
    BarrenSets sets = find_barren(pot, {0, 2});
    CHECK(sets.barren.empty());  // both appear in utility factors
    CHECK(sets.probabilistic_barren == std::vector<int>{3, 5});
}

TEST_CASE("reconstructed fixture: on-line order and message cost") {
    std::mt19937_64 rng(9);
    DecomposedPotential pot = clique3_fixture(rng);
    Limid m = binary_vars(6);
    OpCounter c;
    std::vector<int> order;
    DecomposedPotential msg = lp_marginalize(pot, {0, 2}, m, c, &order);
    CHECK(order == std::vector<int>{5, 3});
    CHECK(msg.phi.empty());
    REQUIRE(msg.psi.size() == 1);
    std::vector<int> dom = msg.psi[0].table.vars;
    std::sort(dom.begin(), dom.end());
    CHECK(dom == std::vector<int>{0, 2});
    CHECK(c.sums == 36);
    CHECK(c.mults == 24);
    CHECK(c.divs == 0);
    CHECK(c.subs == 0);
}

TEST_CASE("marginalization commutes with contraction") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 300; ++trial) {
        DecomposedPotential pot;
        pot.phi.push_back({random_conditional(rng, {0, 1}, {2, 2}), FactorKind::Probability, 1});
        pot.phi.push_back({random_table(rng, {1, 2}, {2, 2}), FactorKind::Probability, -1});
        pot.psi.push_back({random_table(rng, {0, 2}, {2, 2}, -2.0, 2.0), FactorKind::Utility, -1});
        pot.psi.push_back({random_table(rng, {3}, {2}, -2.0, 2.0), FactorKind::Utility, -1});

        std::vector<int> keep;
        for (int v = 0; v < 4; ++v)
            if (rng() & 1) keep.push_back(v);

        Limid m = binary_vars(4);
        OpCounter c;
        DecomposedPotential marg = lp_marginalize(pot, keep, m, c);
        Table lhs = lp_contract(marg, c);

        Table rhs = lp_contract(pot, c);
        std::vector<int> elim;
        for (int v : rhs.vars)
            if (std::find(keep.begin(), keep.end(), v) == keep.end()) elim.push_back(v);
        rhs = t_sum_out(rhs, elim, c);
        check_same_function(lhs, rhs, 4);
    }
}

TEST_CASE("engine agrees with the Shafer-Shenoy architecture at the root") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams gp;
        gp.seed = 300 + seed;
        gp.n_chance = 5;
        gp.n_decisions = 2;
        gp.n_values = 2;
        Limid m = reduce(generate_limid(gp));
        JunctionTree jt = compile_limid(m);
        LpEngine lp(m, jt);
        SsEngine ss(m, jt);
        lp.collect(0);
        ss.collect(0);
        Table a = lp.contract_to(0, jt.cliques[0]);
        Table b = ss.contract_to(0, jt.cliques[0]);
        check_same_function(a, b, static_cast<int>(m.variables.size()));
    }
}

TEST_CASE("initialization performs no arithmetic") {
    GenParams gp;
    gp.seed = 77;
    gp.n_chance = 5;
    gp.n_decisions = 2;
    gp.n_values = 2;
    Limid m = reduce(generate_limid(gp));
    JunctionTree jt = compile_limid(m);
    LpEngine lp(m, jt);
    CHECK(lp.init_ops.total() == 0);
}
