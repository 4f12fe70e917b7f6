#include "limid/arch_lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

namespace limid {

namespace {

constexpr double kVacuousTol = 1e-12;

bool mentions(const Factor& f, int var) { return f.table.has_var(var); }

bool numerically_vacuous(const Table& t) {
    for (double v : t.values)
        if (std::fabs(v - 1.0) > kVacuousTol) return false;
    return true;
}

// Children map in the domain graph: directed edges parents -> head for
// headed factors; a headless probability factor makes its domain mutually
// adjacent (directions are lost where marginalization loses them).
std::map<int, std::set<int>> children_map(const std::vector<Factor>& phi) {
    std::map<int, std::set<int>> ch;
    for (const Factor& f : phi) {
        if (f.head >= 0) {
            for (int v : f.table.vars)
                if (v != f.head) ch[v].insert(f.head);
        } else {
            for (int a : f.table.vars)
                for (int b : f.table.vars)
                    if (a != b) ch[a].insert(b);
        }
    }
    return ch;
}

}  // namespace

std::vector<int> DecomposedPotential::domain() const {
    std::set<int> s;
    for (const Factor& f : phi) s.insert(f.table.vars.begin(), f.table.vars.end());
    for (const Factor& f : psi) s.insert(f.table.vars.begin(), f.table.vars.end());
    return {s.begin(), s.end()};
}

DecomposedPotential lp_combine(const DecomposedPotential& a, const DecomposedPotential& b) {
    DecomposedPotential out = a;
    out.phi.insert(out.phi.end(), b.phi.begin(), b.phi.end());
    out.psi.insert(out.psi.end(), b.psi.begin(), b.psi.end());
    return out;
}

BarrenSets find_barren(const DecomposedPotential& pot, const std::vector<int>& target) {
    const auto dom = pot.domain();
    const auto ch = children_map(pot.phi);

    std::set<int> in_psi;
    for (const Factor& f : pot.psi) in_psi.insert(f.table.vars.begin(), f.table.vars.end());

    auto closure = [&](bool use_psi) {
        std::set<int> cand;
        for (int v : dom) {
            if (std::find(target.begin(), target.end(), v) != target.end()) continue;
            if (use_psi && in_psi.count(v)) continue;
            cand.insert(v);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = cand.begin(); it != cand.end();) {
                bool ok = true;
                auto cit = ch.find(*it);
                if (cit != ch.end()) {
                    for (int c : cit->second)
                        if (!cand.count(c)) {
                            ok = false;
                            break;
                        }
                }
                if (!ok) {
                    it = cand.erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
        }
        return cand;
    };

    const auto barren = closure(true);
    const auto pbarren = closure(false);
    return {{barren.begin(), barren.end()}, {pbarren.begin(), pbarren.end()}};
}

DecomposedPotential lp_eliminate_var(const DecomposedPotential& pot, int var, int cardinality,
                                     OpCounter& ctr) {
    DecomposedPotential out;
    std::vector<const Factor*> phi_n, psi_n;
    for (const Factor& f : pot.phi)
        (mentions(f, var) ? phi_n.push_back(&f) : out.phi.push_back(f));
    for (const Factor& f : pot.psi)
        (mentions(f, var) ? psi_n.push_back(&f) : out.psi.push_back(f));

    if (phi_n.empty() && psi_n.empty()) return out;

    // A single conditional with head n sums to one over n: its φ* is
    // vacuous by construction and is never materialized.
    const bool structural_one = phi_n.size() == 1 && phi_n[0]->head == var;

    if (psi_n.empty()) {
        if (structural_one) return out;  // barren elimination, no arithmetic
        Table prod = phi_n.empty() ? Table::scalar(1.0) : phi_n[0]->table;
        for (std::size_t i = 1; i < phi_n.size(); ++i)
            prod = t_multiply(prod, phi_n[i]->table, ctr);
        Table phistar = t_sum_out(prod, {var}, ctr);
        if (!numerically_vacuous(phistar))
            out.phi.push_back({std::move(phistar), FactorKind::Probability, -1});
        return out;
    }

    Table psum = psi_n[0]->table;
    for (std::size_t i = 1; i < psi_n.size(); ++i) psum = t_add(psum, psi_n[i]->table, ctr);

    if (phi_n.empty()) {
        // Empty product: φ* is the constant |𝒳_n| and the utilities are
        // averaged, which keeps the contraction identity exact.
        Table phistar = t_sum_out(Table::ones({var}, {cardinality}), {var}, ctr);
        Table raw = t_sum_out(psum, {var}, ctr);
        Table avg = t_divide(raw, phistar, ctr);
        out.phi.push_back({std::move(phistar), FactorKind::Probability, -1});
        out.psi.push_back({std::move(avg), FactorKind::Utility, -1});
        return out;
    }
    if (structural_one) {
        Table weighted = t_multiply(phi_n[0]->table, psum, ctr);
        Table psistar = t_sum_out(weighted, {var}, ctr);
        out.psi.push_back({std::move(psistar), FactorKind::Utility, -1});
        return out;
    }

    Table prod = phi_n[0]->table;
    for (std::size_t i = 1; i < phi_n.size(); ++i) prod = t_multiply(prod, phi_n[i]->table, ctr);
    Table phistar = t_sum_out(prod, {var}, ctr);
    Table weighted = t_multiply(prod, psum, ctr);
    Table raw = t_sum_out(weighted, {var}, ctr);
    Table psistar = t_divide(raw, phistar, ctr);
    if (!numerically_vacuous(phistar))
        out.phi.push_back({std::move(phistar), FactorKind::Probability, -1});
    out.psi.push_back({std::move(psistar), FactorKind::Utility, -1});
    return out;
}

DecomposedPotential lp_marginalize(const DecomposedPotential& pot, const std::vector<int>& keep,
                                   const Limid& limid, OpCounter& ctr,
                                   std::vector<int>* order_out, const std::vector<int>& universe) {
    DecomposedPotential cur = pot;
    if (order_out) order_out->clear();

    std::set<int> pending;
    for (int v : pot.domain())
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) pending.insert(v);
    for (int v : universe)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) pending.insert(v);

    for (;;) {
        const auto dom = cur.domain();
        // A variable that no remaining factor mentions is summed as a
        // constant: it contributes a scalar factor of its cardinality.
        for (auto it = pending.begin(); it != pending.end();) {
            if (std::find(dom.begin(), dom.end(), *it) == dom.end()) {
                cur.phi.push_back({Table::scalar(static_cast<double>(limid.cardinality(*it))),
                                   FactorKind::Probability, -1});
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
        std::vector<int> elim(pending.begin(), pending.end());
        if (elim.empty()) break;

        const BarrenSets bs = find_barren(cur, keep);
        const auto ch = children_map(cur.phi);
        auto in = [](const std::vector<int>& xs, int v) {
            return std::binary_search(xs.begin(), xs.end(), v);
        };
        auto still_present = [&](int v) { return std::find(dom.begin(), dom.end(), v) != dom.end(); };

        auto pick_from_class = [&](const std::vector<int>& cls) -> int {
            std::vector<int> cand;
            for (int v : elim)
                if (in(cls, v)) cand.push_back(v);
            if (cand.empty()) return -1;
            // Childless members of the class go first so that each one is
            // eliminated while its conditional is still intact.
            for (int v : cand) {
                bool childless = true;
                auto cit = ch.find(v);
                if (cit != ch.end())
                    for (int c : cit->second)
                        if (c != v && still_present(c)) {
                            childless = false;
                            break;
                        }
                if (childless) return v;
            }
            return cand.front();
        };

        int next = pick_from_class(bs.barren);
        if (next < 0) next = pick_from_class(bs.probabilistic_barren);
        if (next < 0) {
            // Min-fill on the moral view of the current factors.
            std::map<int, std::set<int>> adj;
            auto link = [&](const std::vector<int>& vs) {
                for (int a : vs)
                    for (int b : vs)
                        if (a != b) adj[a].insert(b);
            };
            for (const Factor& f : cur.phi) link(f.table.vars);
            for (const Factor& f : cur.psi) link(f.table.vars);
            int best = -1, best_fill = 0;
            for (int v : elim) {
                std::vector<int> nbrs(adj[v].begin(), adj[v].end());
                int fill = 0;
                for (std::size_t i = 0; i < nbrs.size(); ++i)
                    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                        if (!adj[nbrs[i]].count(nbrs[j])) ++fill;
                if (best < 0 || fill < best_fill) {
                    best = v;
                    best_fill = fill;
                }
            }
            next = best;
        }

        if (order_out) order_out->push_back(next);
        cur = lp_eliminate_var(cur, next, limid.cardinality(next), ctr);
        pending.erase(next);
    }
    return cur;
}

Table lp_contract(const DecomposedPotential& pot, OpCounter& ctr) {
    Table prod = Table::scalar(1.0);
    bool first = true;
    for (const Factor& f : pot.phi) {
        prod = first ? f.table : t_multiply(prod, f.table, ctr);
        first = false;
    }
    Table s = Table::scalar(0.0);
    bool sfirst = true;
    for (const Factor& f : pot.psi) {
        s = sfirst ? f.table : t_add(s, f.table, ctr);
        sfirst = false;
    }
    return t_multiply(prod, s, ctr);
}

LpEngine::LpEngine(const Limid& limid, const JunctionTree& jt) : limid_(limid), jt_(jt) {
    // Initialization assigns the factors without combining them; it costs
    // no arithmetic.
    const int k = static_cast<int>(jt.cliques.size());
    clique_pot_.resize(k);
    mail_.resize(jt.edges.size());
    for (int c = 0; c < k; ++c) {
        for (int r : jt.chance_in_clique[c])
            clique_pot_[c].phi.push_back({limid.node(r).cpt, FactorKind::Probability, r});
        for (int ui : jt.values_in_clique[c])
            clique_pot_[c].psi.push_back({limid.values[ui].utility, FactorKind::Utility, -1});
    }
}

LpEngine::Mail& LpEngine::slot(int a, int b) {
    int e = jt_.edge_between(a, b);
    return mail_[e][jt_.edges[e].a == a ? 0 : 1];
}

DecomposedPotential LpEngine::combined_at(int clique, int excluded_neighbor) {
    DecomposedPotential acc = clique_pot_[clique];
    for (int e : jt_.neighbors[clique]) {
        int nb = jt_.other_end(e, clique);
        if (nb == excluded_neighbor) continue;
        acc = lp_combine(acc, slot(nb, clique).pot);
    }
    return acc;
}

const DecomposedPotential& LpEngine::message(int a, int b) {
    Mail& m = slot(a, b);
    if (!m.valid) {
        for (int e : jt_.neighbors[a]) {
            int nb = jt_.other_end(e, a);
            if (nb != b) message(nb, a);
        }
        DecomposedPotential acc = combined_at(a, b);
        m.pot = lp_marginalize(acc, jt_.edges[jt_.edge_between(a, b)].separator, limid_, solve_ops,
                               nullptr, jt_.cliques[a]);
        m.valid = true;
        ++messages_sent;
    }
    return m.pot;
}

void LpEngine::collect(int root) {
    for (int e : jt_.neighbors[root]) message(jt_.other_end(e, root), root);
}

Table LpEngine::contract_to(int root, const std::vector<int>& target) {
    DecomposedPotential acc = combined_at(root, -1);
    DecomposedPotential marg =
        lp_marginalize(acc, target, limid_, solve_ops, nullptr, jt_.cliques[root]);
    return lp_contract(marg, solve_ops);
}

void LpEngine::invalidate_from(int clique) {
    for (std::size_t e = 0; e < jt_.edges.size(); ++e) {
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

void LpEngine::install_policy(int root, const Policy& policy) {
    clique_pot_[root].phi.push_back({policy.table, FactorKind::PolicyFactor, policy.decision});
    invalidate_from(root);
}

void LpEngine::retract_policy(int d) {
    for (std::size_t c = 0; c < clique_pot_.size(); ++c) {
        auto& phi = clique_pot_[c].phi;
        auto it = std::find_if(phi.begin(), phi.end(), [d](const Factor& f) {
            return f.kind == FactorKind::PolicyFactor && f.head == d;
        });
        if (it != phi.end()) {
            phi.erase(it);
            invalidate_from(static_cast<int>(c));
            return;
        }
    }
}

double LpEngine::read_eu(int root) {
    DecomposedPotential acc = combined_at(root, -1);
    DecomposedPotential marg =
        lp_marginalize(acc, {}, limid_, readout_ops, nullptr, jt_.cliques[root]);
    Table c = lp_contract(marg, readout_ops);
    return c.values[0];
}

}  // namespace limid
