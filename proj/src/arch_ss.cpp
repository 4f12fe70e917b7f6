#include "limid/arch_ss.hpp"

#include <algorithm>
#include <array>

namespace limid {

const char* arch_name(Arch a) {
    switch (a) {
        case Arch::SS: return "S-S";
        case Arch::Hugin: return "HUGIN";
        case Arch::LP: return "LP";
    }
    return "?";
}

PairedPotential ss_combine(const PairedPotential& a, const PairedPotential& b, OpCounter& ctr) {
    return {t_multiply(a.p, b.p, ctr), t_add(a.u, b.u, ctr)};
}

PairedPotential ss_marginalize(const PairedPotential& pot, const std::vector<int>& keep,
                               OpCounter& ctr) {
    std::vector<int> elim;
    for (int v : pot.p.vars)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) elim.push_back(v);
    if (elim.empty()) return pot;
    Table psum = t_sum_out(pot.p, elim, ctr);
    Table pu = t_multiply(pot.p, pot.u, ctr);
    Table pusum = t_sum_out(pu, elim, ctr);
    Table u = t_divide(pusum, psum, ctr);
    return {std::move(psum), std::move(u)};
}

Table ss_contract(const PairedPotential& pot, OpCounter& ctr) {
    return t_multiply(pot.p, pot.u, ctr);
}

SsEngine::SsEngine(const Limid& limid, const JunctionTree& jt) : limid_(limid), jt_(jt) {
    const int k = static_cast<int>(jt.cliques.size());
    clique_pot_.resize(k);
    clique_policies_.resize(k);
    mail_.resize(jt.edges.size());
    for (int c = 0; c < k; ++c) {
        std::vector<int> cards;
        for (int v : jt.cliques[c]) cards.push_back(limid.cardinality(v));
        PairedPotential pot = PairedPotential::vacuous_over(jt.cliques[c], cards);
        for (int r : jt.chance_in_clique[c]) pot.p = t_multiply(pot.p, limid.node(r).cpt, init_ops);
        for (int ui : jt.values_in_clique[c])
            pot.u = t_add(pot.u, limid.values[ui].utility, init_ops);
        clique_pot_[c] = std::move(pot);
    }
}

SsEngine::Mail& SsEngine::slot(int a, int b) {
    int e = jt_.edge_between(a, b);
    return mail_[e][jt_.edges[e].a == a ? 0 : 1];
}

PairedPotential SsEngine::combined_at(int clique, int excluded_neighbor, OpCounter& ctr) {
    PairedPotential acc = clique_pot_[clique];
    for (const Policy& pol : clique_policies_[clique])
        acc = ss_combine(acc, PairedPotential{pol.table, Table::scalar(0.0)}, ctr);
    for (int e : jt_.neighbors[clique]) {
        int nb = jt_.other_end(e, clique);
        if (nb == excluded_neighbor) continue;
        acc = ss_combine(acc, slot(nb, clique).pot, ctr);
    }
    return acc;
}

const PairedPotential& SsEngine::message(int a, int b) {
    Mail& m = slot(a, b);
    if (!m.valid) {
        for (int e : jt_.neighbors[a]) {
            int nb = jt_.other_end(e, a);
            if (nb != b) message(nb, a);
        }
        PairedPotential acc = combined_at(a, b, solve_ops);
        m.pot = ss_marginalize(acc, jt_.edges[jt_.edge_between(a, b)].separator, solve_ops);
        m.valid = true;
        ++messages_sent;
    }
    return m.pot;
}

void SsEngine::collect(int root) {
    for (int e : jt_.neighbors[root]) message(jt_.other_end(e, root), root);
}

Table SsEngine::contract_to(int root, const std::vector<int>& target) {
    PairedPotential acc = combined_at(root, -1, solve_ops);
    PairedPotential marg = ss_marginalize(acc, target, solve_ops);
    return ss_contract(marg, solve_ops);
}

void SsEngine::invalidate_from(int clique) {
    // Invalidate every mailbox whose message depends on this clique, i.e.
    // each directed slot a->b with the clique on a's side of the edge.
    for (std::size_t e = 0; e < jt_.edges.size(); ++e) {
        // Side test: walk from edges[e].a without crossing edge e.
        std::vector<bool> seen(jt_.cliques.size(), false);
        std::vector<int> stack{jt_.edges[e].a};
        seen[jt_.edges[e].a] = true;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int e2 : jt_.neighbors[c]) {
                if (e2 == static_cast<int>(e)) continue;
                int nb = jt_.other_end(e2, c);
                if (!seen[nb]) {
                    seen[nb] = true;
                    stack.push_back(nb);
                }
            }
        }
        if (seen[clique])
            mail_[e][0].valid = false;
        else
            mail_[e][1].valid = false;
    }
}

void SsEngine::install_policy(int root, const Policy& policy) {
    clique_policies_[root].push_back(policy);
    invalidate_from(root);
}

void SsEngine::retract_policy(int d) {
    for (std::size_t c = 0; c < clique_policies_.size(); ++c) {
        auto& pols = clique_policies_[c];
        auto it = std::find_if(pols.begin(), pols.end(),
                               [d](const Policy& p) { return p.decision == d; });
        if (it != pols.end()) {
            pols.erase(it);
            invalidate_from(static_cast<int>(c));
            return;
        }
    }
}

double SsEngine::read_eu(int root) {
    PairedPotential acc = combined_at(root, -1, readout_ops);
    PairedPotential marg = ss_marginalize(acc, {}, readout_ops);
    return marg.u.values[0];
}

}  // namespace limid
