#include <doctest.h>

#include "limid/arch_hugin.hpp"
#include "limid/generate.hpp"
#include "test_helpers.hpp"

using namespace limid;
using limid::testing::random_table;

namespace {

Table over(std::vector<int> vars, std::vector<int> cards, std::vector<double> vals) {
    Table t = Table::zeros(std::move(vars), std::move(cards));
    t.values = std::move(vals);
    return t;
}

}  // namespace

TEST_CASE("divide: identity, self, and zero cells") {
    OpCounter c;
    PairedPotential pi{over({0}, {2}, {0.5, 0.5}), over({0}, {2}, {1, 2})};
    PairedPotential same = hugin_divide(pi, PairedPotential::vacuous(), c);
    CHECK(same.p.values == pi.p.values);
    CHECK(same.u.values == pi.u.values);

    PairedPotential one = hugin_divide(pi, pi, c);
    CHECK(one.p.values == std::vector<double>{1, 1});
    CHECK(one.u.values == std::vector<double>{0, 0});

    PairedPotential a{over({0}, {2}, {0, 0.4}), over({0}, {2}, {1, 2})};
    PairedPotential b{over({0}, {2}, {0, 0.2}), over({0}, {2}, {1, 1})};
    PairedPotential r = hugin_divide(a, b, c);
    CHECK(r.p.values == std::vector<double>{0, 2});
    CHECK(r.u.values == std::vector<double>{0, 1});
}

TEST_CASE("passes preserve the joint contraction") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams gp;
        gp.seed = seed;
        gp.n_chance = 5;
        gp.n_decisions = 1;
        gp.n_values = 2;
        Limid m = reduce(generate_limid(gp));
        JunctionTree jt = compile_limid(m);
        HuginEngine engine(m, jt);

        OpCounter scratch;
        auto joint_cont = [&]() {
            PairedPotential num = PairedPotential::vacuous();
            for (std::size_t c = 0; c < jt.cliques.size(); ++c)
                num = ss_combine(num, engine.clique_potential(c), scratch);
            PairedPotential den = PairedPotential::vacuous();
            for (std::size_t e = 0; e < jt.edges.size(); ++e)
                den = ss_combine(den, engine.separator_potential(static_cast<int>(e)), scratch);
            return ss_contract(hugin_divide(num, den, scratch), scratch);
        };

        Table before = joint_cont();
        engine.collect(0);
        Table after = joint_cont();
        std::vector<int> state(m.variables.size(), 0);
        for (;;) {
            CHECK(before.at_state(state) ==
                  doctest::Approx(after.at_state(state)).epsilon(1e-9));
            std::size_t j = state.size();
            while (j-- > 0) {
                if (++state[j] < m.cardinality(static_cast<int>(j))) break;
                state[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
    }
}

TEST_CASE("root contraction agrees with the Shafer-Shenoy architecture") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams gp;
        gp.seed = 100 + seed;
        gp.n_chance = 5;
        gp.n_decisions = 2;
        gp.n_values = 2;
        Limid m = reduce(generate_limid(gp));
        JunctionTree jt = compile_limid(m);
        HuginEngine hugin(m, jt);
        SsEngine ss(m, jt);
        hugin.collect(0);
        ss.collect(0);
        Table a = hugin.contract_to(0, jt.cliques[0]);
        Table b = ss.contract_to(0, jt.cliques[0]);
        std::vector<int> state(m.variables.size(), 0);
        for (;;) {
            CHECK(a.at_state(state) == doctest::Approx(b.at_state(state)).epsilon(1e-9));
            std::size_t j = state.size();
            while (j-- > 0) {
                if (++state[j] < m.cardinality(static_cast<int>(j))) break;
                state[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
    }
}

TEST_CASE("policies cannot be retracted") {
    GenParams gp;
    gp.seed = 4;
    gp.n_chance = 3;
    gp.n_decisions = 1;
    gp.n_values = 1;
    Limid m = reduce(generate_limid(gp));
    JunctionTree jt = compile_limid(m);
    HuginEngine engine(m, jt);
    CHECK_FALSE(engine.supports_retraction());
    CHECK_THROWS_AS(engine.retract_policy(0), SolverError);
}

// Hand count: marginalize a 16-cell clique to a 4-cell separator, divide by
// the stored separator, multiply the ratio onto an 8-cell neighbor.
TEST_CASE("single pass cost on the four-variable clique fixture") {
    std::mt19937_64 rng(44);
    PairedPotential pa{random_table(rng, {0, 2, 3, 5}, {2, 2, 2, 2}),
                       random_table(rng, {0, 2, 3, 5}, {2, 2, 2, 2})};
    PairedPotential sep = PairedPotential::vacuous_over({0, 2}, {2, 2});
    PairedPotential pb{random_table(rng, {0, 2, 6}, {2, 2, 2}),
                       random_table(rng, {0, 2, 6}, {2, 2, 2})};

    OpCounter c;
    PairedPotential snew = ss_marginalize(pa, {0, 2}, c);
    PairedPotential ratio = hugin_divide(snew, sep, c);
    PairedPotential updated = ss_combine(pb, ratio, c);
    CHECK(updated.p.size() == 8);
    CHECK(c.sums == 32);
    CHECK(c.mults == 24);
    CHECK(c.divs == 8);
    CHECK(c.subs == 4);
}
