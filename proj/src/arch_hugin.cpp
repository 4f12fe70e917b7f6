#include "limid/arch_hugin.hpp"

#include <algorithm>

namespace limid {

PairedPotential hugin_divide(const PairedPotential& a, const PairedPotential& b, OpCounter& ctr) {
    return {t_divide(a.p, b.p, ctr), t_subtract(a.u, b.u, ctr)};
}

HuginEngine::HuginEngine(const Limid& limid, const JunctionTree& jt) : limid_(limid), jt_(jt) {
    const int k = static_cast<int>(jt.cliques.size());
    clique_pot_.resize(k);
    for (int c = 0; c < k; ++c) {
        std::vector<int> cards;
        for (int v : jt.cliques[c]) cards.push_back(limid.cardinality(v));
        PairedPotential pot = PairedPotential::vacuous_over(jt.cliques[c], cards);
        for (int r : jt.chance_in_clique[c]) pot.p = t_multiply(pot.p, limid.node(r).cpt, init_ops);
        for (int ui : jt.values_in_clique[c])
            pot.u = t_add(pot.u, limid.values[ui].utility, init_ops);
        clique_pot_[c] = std::move(pot);
    }
    sep_pot_.resize(jt.edges.size());
    for (std::size_t e = 0; e < jt.edges.size(); ++e) {
        std::vector<int> cards;
        for (int v : jt.edges[e].separator) cards.push_back(limid.cardinality(v));
        sep_pot_[e] = PairedPotential::vacuous_over(jt.edges[e].separator, cards);
    }
}

void HuginEngine::pass(int a, int b) {
    const int e = jt_.edge_between(a, b);
    PairedPotential snew = ss_marginalize(clique_pot_[a], jt_.edges[e].separator, solve_ops);
    PairedPotential ratio;
    try {
        ratio = hugin_divide(snew, sep_pot_[e], solve_ops);
    } catch (const DivisionByZeroError& err) {
        throw SolverError("inconsistent-separator",
                          std::string("separator between cliques ") + std::to_string(a) + " and " +
                              std::to_string(b) + ": " + err.what());
    }
    clique_pot_[b] = ss_combine(clique_pot_[b], ratio, solve_ops);
    sep_pot_[e] = std::move(snew);
    ++messages_sent;
}

void HuginEngine::collect(int root) {
    if (last_root_ < 0) {
        // Full collect: pass along every edge toward the root, children first.
        std::vector<int> order;
        std::vector<int> parent(jt_.cliques.size(), -1);
        std::vector<int> stack{root};
        std::vector<bool> seen(jt_.cliques.size(), false);
        seen[root] = true;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            order.push_back(c);
            for (int e : jt_.neighbors[c]) {
                int nb = jt_.other_end(e, c);
                if (!seen[nb]) {
                    seen[nb] = true;
                    parent[nb] = c;
                    stack.push_back(nb);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (parent[*it] >= 0) pass(*it, parent[*it]);
    } else if (last_root_ != root) {
        // Partial collect: pass along the path from the previous root.
        std::vector<int> parent(jt_.cliques.size(), -2);
        std::vector<int> stack{last_root_};
        parent[last_root_] = -1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int e : jt_.neighbors[c]) {
                int nb = jt_.other_end(e, c);
                if (parent[nb] == -2) {
                    parent[nb] = c;
                    stack.push_back(nb);
                }
            }
        }
        std::vector<int> path;
        for (int c = root; c != -1; c = parent[c]) path.push_back(c);
        std::reverse(path.begin(), path.end());  // last_root_ ... root
        for (std::size_t i = 0; i + 1 < path.size(); ++i) pass(path[i], path[i + 1]);
    }
    last_root_ = root;
}

Table HuginEngine::contract_to(int root, const std::vector<int>& target) {
    // HUGIN order: contract the root pair first, then sum out.
    Table c = ss_contract(clique_pot_[root], solve_ops);
    std::vector<int> elim;
    for (int v : c.vars)
        if (std::find(target.begin(), target.end(), v) == target.end()) elim.push_back(v);
    return t_sum_out(c, elim, solve_ops);
}

void HuginEngine::install_policy(int root, const Policy& policy) {
    clique_pot_[root].p = t_multiply(clique_pot_[root].p, policy.table, solve_ops);
}

void HuginEngine::retract_policy(int) {
    throw SolverError("hugin-cannot-retract",
                      "the HUGIN architecture multiplies policies onto clique potentials");
}

double HuginEngine::read_eu(int root) {
    Table c = ss_contract(clique_pot_[root], readout_ops);
    Table total = t_sum_out(c, c.vars, readout_ops);
    return total.values[0];
}

}  // namespace limid
