#include "limid/spu.hpp"

#include <algorithm>

#include "limid/arch_hugin.hpp"
#include "limid/arch_lp.hpp"
#include "limid/arch_ss.hpp"

namespace limid {

std::unique_ptr<PropagationEngine> make_engine(Arch arch, const Limid& limid,
                                               const JunctionTree& jt) {
    switch (arch) {
        case Arch::SS: return std::make_unique<SsEngine>(limid, jt);
        case Arch::Hugin: return std::make_unique<HuginEngine>(limid, jt);
        case Arch::LP: return std::make_unique<LpEngine>(limid, jt);
    }
    throw SolverError("bad-arch", "unknown architecture");
}

namespace {

// Parent pointers of the junction tree rooted at `root`, with cliques in
// discovery order (root first).
std::pair<std::vector<int>, std::vector<int>> rooted(const JunctionTree& jt, int root) {
    std::vector<int> parent(jt.cliques.size(), -2);
    std::vector<int> order;
    std::vector<int> stack{root};
    parent[root] = -1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        order.push_back(c);
        for (int e : jt.neighbors[c]) {
            int nb = jt.other_end(e, c);
            if (parent[nb] == -2) {
                parent[nb] = c;
                stack.push_back(nb);
            }
        }
    }
    return {std::move(parent), std::move(order)};
}

std::vector<std::pair<int, int>> path_passes(const JunctionTree& jt, int from, int to) {
    auto [parent, order] = rooted(jt, from);
    std::vector<int> path;
    for (int c = to; c != -1; c = parent[c]) path.push_back(c);
    std::reverse(path.begin(), path.end());  // from ... to
    std::vector<std::pair<int, int>> passes;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) passes.emplace_back(path[i], path[i + 1]);
    return passes;
}

}  // namespace

SolvePlan plan_roots(const JunctionTree& jt, const Limid& limid) {
    SolvePlan plan;
    const std::vector<int> decisions = limid.decision_order();
    for (std::size_t i = 0; i < decisions.size(); ++i) plan.roots.push_back(jt.decision_home[i]);

    const int first_root = plan.roots.empty() ? 0 : plan.roots.back();
    auto [parent, order] = rooted(jt, first_root);
    std::vector<std::pair<int, int>> full;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) full.emplace_back(*it, parent[*it]);
    plan.steps.push_back(std::move(full));

    for (std::size_t i = plan.roots.size(); i-- > 1;)
        plan.steps.push_back(path_passes(jt, plan.roots[i], plan.roots[i - 1]));
    return plan;
}

Policy optimize_policy(PropagationEngine& engine, const Limid& limid, const JunctionTree&,
                       int root, int d) {
    const std::vector<int> fa = limid.family(d);
    Table c = engine.contract_to(root, fa);
    if (!c.has_var(d)) {
        // The decision influences nothing at its home clique; every action is
        // equally good, so broadcast and let the argmax pick the first one.
        std::vector<int> fcards;
        for (int v : fa) fcards.push_back(limid.cardinality(v));
        c = t_expand(c, fa, fcards);
    }
    ArgmaxTable am = t_argmax_over(c, d);

    Policy pol;
    pol.decision = d;
    std::vector<int> vars = fa;  // parents in declared order, then d
    std::vector<int> cards;
    for (int v : vars) cards.push_back(limid.cardinality(v));
    pol.table = Table::zeros(vars, cards);

    // Per-variable state, odometer over the policy domain, last fastest.
    std::vector<int> state(vars.size(), 0);
    const int dpos = static_cast<int>(vars.size()) - 1;
    for (std::size_t cell = 0; cell < pol.table.size(); ++cell) {
        std::size_t idx = 0;
        for (int v : am.vars) {
            auto pos = std::find(vars.begin(), vars.end(), v) - vars.begin();
            idx = idx * cards[pos] + state[pos];
        }
        if (state[dpos] == am.indices[idx]) pol.table.values[cell] = 1.0;
        for (int p = dpos; p >= 0; --p) {
            if (++state[p] < cards[p]) break;
            state[p] = 0;
        }
    }
    return pol;
}

namespace {

ArchCounters snapshot(const PropagationEngine& e) {
    return {e.init_ops, e.solve_ops, e.readout_ops, e.messages_sent};
}

void notify_replace(const SolveOptions& opt, const Limid& limid, const Strategy& partial) {
    if (!opt.on_replace) return;
    Strategy full = partial;
    for (int d : limid.decision_order())
        if (!full.policies.count(d)) full.policies[d] = uniform_policy(limid, d);
    opt.on_replace(full);
}

}  // namespace

SolveResult solve_soluble(const Limid& limid, Arch arch, const SolveOptions& opt) {
    const Limid reduced = reduce(limid);
    const JunctionTree jt = compile_limid(reduced);
    auto engine = make_engine(arch, reduced, jt);
    const std::vector<int> decisions = reduced.decision_order();

    SolveResult res;
    for (std::size_t i = decisions.size(); i-- > 0;) {
        const int d = decisions[i];
        const int root = jt.decision_home[i];
        engine->collect(root);
        Policy pol = optimize_policy(*engine, reduced, jt, root, d);
        engine->install_policy(root, pol);
        res.strategy.policies[d] = std::move(pol);
        notify_replace(opt, reduced, res.strategy);
    }
    const int final_root = decisions.empty() ? 0 : jt.decision_home[0];
    engine->collect(final_root);
    res.eu = engine->read_eu(final_root);
    res.counters = snapshot(*engine);
    res.iterations = 1;
    return res;
}

SolveResult spu_general(const Limid& limid, Arch arch, const SolveOptions& opt) {
    if (arch == Arch::Hugin)
        throw SolverError("hugin-cannot-retract",
                          "policy retraction is unavailable once policies are multiplied in");

    const Limid reduced = reduce(limid);
    const JunctionTree jt = compile_limid(reduced);
    auto engine = make_engine(arch, reduced, jt);
    const std::vector<int> decisions = reduced.decision_order();

    SolveResult res;
    int cycles = 0;
    for (int cycle = 0; cycle < opt.max_cycles; ++cycle) {
        bool changed = false;
        for (std::size_t i = decisions.size(); i-- > 0;) {
            const int d = decisions[i];
            const int root = jt.decision_home[i];
            const bool installed = res.strategy.policies.count(d) != 0;
            if (installed) engine->retract_policy(d);
            engine->collect(root);
            Policy pol = optimize_policy(*engine, reduced, jt, root, d);
            engine->install_policy(root, pol);
            if (!installed || pol.table.values != res.strategy.policies[d].table.values)
                changed = true;
            res.strategy.policies[d] = std::move(pol);
            notify_replace(opt, reduced, res.strategy);
        }
        if (!changed) break;
        ++cycles;  // cycles that replaced at least one policy
    }
    const int final_root = decisions.empty() ? 0 : jt.decision_home[0];
    engine->collect(final_root);
    res.eu = engine->read_eu(final_root);
    res.counters = snapshot(*engine);
    res.iterations = cycles;
    return res;
}

}  // namespace limid
