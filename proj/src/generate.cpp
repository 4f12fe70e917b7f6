#include "limid/generate.hpp"

#include <algorithm>
#include <random>

namespace limid {

namespace {

// Portable draws straight from the engine output so identical seeds give
// identical models on every platform.
int draw_int(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % n); }

double draw_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::vector<int> draw_subset(std::mt19937_64& rng, const std::vector<int>& pool, int count) {
    std::vector<int> avail = pool;
    std::vector<int> out;
    for (int i = 0; i < count && !avail.empty(); ++i) {
        int j = draw_int(rng, static_cast<int>(avail.size()));
        out.push_back(avail[j]);
        avail.erase(avail.begin() + j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Table random_cpt(std::mt19937_64& rng, const Limid& limid, const std::vector<int>& parents,
                 int id) {
    std::vector<int> vars = parents;
    vars.push_back(id);
    std::vector<int> cards;
    for (int v : vars) cards.push_back(limid.cardinality(v));
    Table t = Table::zeros(vars, cards);
    const int card = cards.back();
    for (std::size_t base = 0; base < t.size(); base += card) {
        double total = 0.0;
        for (int s = 0; s < card; ++s) {
            t.values[base + s] = 0.05 + 0.95 * draw_unit(rng);
            total += t.values[base + s];
        }
        for (int s = 0; s < card; ++s) t.values[base + s] /= total;
    }
    return t;
}

void add_values(std::mt19937_64& rng, Limid& limid, int n_values) {
    const int n = static_cast<int>(limid.variables.size());
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < n_values; ++i) {
        ValueDef v;
        v.name = "u" + std::to_string(i);
        v.parents = draw_subset(rng, pool, 1 + draw_int(rng, std::min(2, n)));
        std::vector<int> cards;
        for (int p : v.parents) cards.push_back(limid.cardinality(p));
        v.utility = Table::zeros(v.parents, cards);
        for (double& x : v.utility.values) x = -10.0 + 20.0 * draw_unit(rng);
        limid.values.push_back(std::move(v));
    }
}

}  // namespace

Limid generate_limid(const GenParams& params) {
    std::mt19937_64 rng(params.seed);
    Limid limid;

    // Topological sequence of node kinds; ids follow sequence order so the
    // decision declaration order is automatically consistent with the DAG.
    std::vector<NodeKind> kinds;
    std::vector<int> observed;  // soluble mode: chance parents shared by all decisions
    if (params.soluble) {
        const int k = std::min(params.n_decisions, 3);
        // Segment sizes: how many chance nodes precede each decision slot.
        std::vector<int> segment(k + 1, 0);
        int chance_left = params.n_chance;
        const bool observe = k > 0 && chance_left > 0 && (rng() & 1) != 0;
        if (observe) --chance_left;
        for (int i = 0; i < chance_left; ++i) ++segment[draw_int(rng, k + 1)];
        for (int s = 0; s <= k; ++s) {
            for (int i = 0; i < segment[s]; ++i) kinds.push_back(NodeKind::Chance);
            if (s == 0 && observe) {
                observed.push_back(static_cast<int>(kinds.size()));
                kinds.push_back(NodeKind::Chance);
            }
            if (s < k) kinds.push_back(NodeKind::Decision);
        }
    } else {
        for (int i = 0; i < params.n_chance; ++i) kinds.push_back(NodeKind::Chance);
        for (int i = 0; i < params.n_decisions; ++i) kinds.push_back(NodeKind::Decision);
        for (std::size_t i = kinds.size(); i-- > 1;) std::swap(kinds[i], kinds[draw_int(rng, static_cast<int>(i) + 1)]);
    }

    const int n = static_cast<int>(kinds.size());
    for (int id = 0; id < n; ++id) {
        Variable v;
        v.id = id;
        v.cardinality =
            params.soluble || params.max_card <= 2 ? 2 : 2 + draw_int(rng, params.max_card - 1);
        v.name = (kinds[id] == NodeKind::Chance ? "c" : "d") + std::to_string(id);
        limid.variables.push_back(v);
    }

    std::vector<int> decisions_so_far;
    for (int id = 0; id < n; ++id) {
        NodeDef node;
        node.id = id;
        node.kind = kinds[id];
        if (node.kind == NodeKind::Decision && params.soluble) {
            // No forgetting: every earlier decision plus the shared observation.
            node.parents = observed;
            node.parents.insert(node.parents.end(), decisions_so_far.begin(),
                                decisions_so_far.end());
            std::sort(node.parents.begin(), node.parents.end());
        } else if (id > 0) {
            std::vector<int> pool(id);
            for (int i = 0; i < id; ++i) pool[i] = i;
            int cap = std::min(id, params.max_parents);
            node.parents = draw_subset(rng, pool, draw_int(rng, cap + 1));
        }
        if (node.kind == NodeKind::Chance) node.cpt = random_cpt(rng, limid, node.parents, id);
        if (node.kind == NodeKind::Decision) decisions_so_far.push_back(id);
        limid.nodes.push_back(std::move(node));
    }

    add_values(rng, limid, params.n_values);
    return limid;
}

}  // namespace limid
