#include "limid/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace limid {

const NodeDef& Limid::node(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw SolverError("unknown-node", "no node with id " + std::to_string(id));
}

const Variable& Limid::variable(int id) const {
    for (const auto& v : variables)
        if (v.id == id) return v;
    throw SolverError("unknown-variable", "no variable with id " + std::to_string(id));
}

std::vector<int> Limid::decision_order() const {
    std::vector<int> out;
    for (const auto& n : nodes)
        if (n.kind == NodeKind::Decision) out.push_back(n.id);
    return out;
}

std::vector<int> Limid::family(int id) const {
    std::vector<int> fa = node(id).parents;
    fa.push_back(id);
    return fa;
}

std::size_t Limid::joint_size() const {
    std::size_t n = 1;
    for (const auto& v : variables) n *= static_cast<std::size_t>(v.cardinality);
    return n;
}

namespace {

constexpr double kNormTol = 1e-9;

bool has_cycle(const Limid& limid) {
    const int n = static_cast<int>(limid.variables.size());
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::vector<int>> children(n);
    for (const auto& nd : limid.nodes)
        for (int p : nd.parents)
            if (p >= 0 && p < n) children[p].push_back(nd.id);

    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int c : children[v]) {
            if (state[c] == 1) return true;
            if (state[c] == 0 && dfs(c)) return true;
        }
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0 && dfs(v)) return true;
    return false;
}

// Checks that every slice of `t` over the last variable (the conditioned
// child) is a distribution.
void check_conditional(const Table& t, int child_card, int node_id, const char* rule,
                       std::vector<Diagnostic>& diags) {
    const std::size_t n = t.size();
    const std::size_t slices = n / static_cast<std::size_t>(child_card);
    for (std::size_t s = 0; s < slices; ++s) {
        double sum = 0.0;
        bool neg = false;
        for (int x = 0; x < child_card; ++x) {
            double v = t.values[s * child_card + x];
            if (v < 0.0) neg = true;
            sum += v;
        }
        if (neg) {
            diags.push_back({node_id, "negative-probability", "slice " + std::to_string(s)});
        }
        if (std::fabs(sum - 1.0) > kNormTol) {
            diags.push_back({node_id, rule,
                             "slice " + std::to_string(s) + " sums to " + std::to_string(sum)});
            return;  // one diagnostic per table is enough
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate(const Limid& limid) {
    std::vector<Diagnostic> diags;
    const int n = static_cast<int>(limid.variables.size());

    std::set<int> seen;
    for (const auto& v : limid.variables) {
        if (v.cardinality < 1)
            diags.push_back({v.id, "cardinality-not-positive", v.name});
        if (!seen.insert(v.id).second)
            diags.push_back({v.id, "duplicate-variable-id", v.name});
        if (v.id < 0 || v.id >= n)
            diags.push_back({v.id, "variable-id-not-dense", v.name});
    }
    if (limid.nodes.size() != limid.variables.size()) {
        diags.push_back({-1, "node-variable-mismatch",
                         "each variable needs exactly one node entry"});
        return diags;
    }
    std::set<int> node_ids;
    for (const auto& nd : limid.nodes) {
        if (!seen.count(nd.id) || !node_ids.insert(nd.id).second) {
            diags.push_back({nd.id, "bad-node-id", ""});
            return diags;
        }
        for (int p : nd.parents) {
            if (!seen.count(p)) {
                diags.push_back({nd.id, "unknown-parent", "parent " + std::to_string(p)});
                return diags;
            }
        }
    }
    for (const auto& vd : limid.values) {
        for (int p : vd.parents) {
            if (!seen.count(p)) {
                // A value node can never be a parent: value nodes carry no
                // variable id, so any reference to one shows up here.
                diags.push_back({-1, "value-node-has-child",
                                 vd.name + " references unknown id " + std::to_string(p)});
                return diags;
            }
        }
    }
    if (!diags.empty()) return diags;

    if (has_cycle(limid)) {
        diags.push_back({-1, "graph-not-acyclic", ""});
        return diags;
    }

    for (const auto& nd : limid.nodes) {
        if (nd.kind == NodeKind::Chance) {
            std::vector<int> fa;
            std::vector<int> cards;
            for (int p : nd.parents) {
                fa.push_back(p);
                cards.push_back(limid.cardinality(p));
            }
            fa.push_back(nd.id);
            cards.push_back(limid.cardinality(nd.id));
            if (nd.cpt.vars != fa) {
                diags.push_back({nd.id, "cpt-domain-mismatch", ""});
                continue;
            }
            if (nd.cpt.size() != domain_size(cards)) {
                diags.push_back({nd.id, "cpt-size-mismatch", ""});
                continue;
            }
            check_conditional(nd.cpt, limid.cardinality(nd.id), nd.id, "cpt-not-normalized", diags);
        }
    }
    for (const auto& vd : limid.values) {
        std::vector<int> cards;
        for (int p : vd.parents) cards.push_back(limid.cardinality(p));
        if (vd.utility.vars != vd.parents)
            diags.push_back({-1, "utility-domain-mismatch", vd.name});
        else if (vd.utility.size() != domain_size(cards))
            diags.push_back({-1, "utility-size-mismatch", vd.name});
    }
    return diags;
}

Policy uniform_policy(const Limid& limid, int d) {
    const NodeDef& nd = limid.node(d);
    if (nd.kind != NodeKind::Decision)
        throw SolverError("unknown-decision", std::to_string(d) + " is not a decision node");
    std::vector<int> vars, cards;
    for (int p : nd.parents) {
        vars.push_back(p);
        cards.push_back(limid.cardinality(p));
    }
    vars.push_back(d);
    cards.push_back(limid.cardinality(d));
    Policy pol;
    pol.decision = d;
    pol.table = Table::zeros(vars, cards);
    const double u = 1.0 / static_cast<double>(limid.cardinality(d));
    std::fill(pol.table.values.begin(), pol.table.values.end(), u);
    return pol;
}

Strategy uniform_strategy(const Limid& limid) {
    Strategy q;
    for (int d : limid.decision_order()) q.policies[d] = uniform_policy(limid, d);
    return q;
}

}  // namespace limid
