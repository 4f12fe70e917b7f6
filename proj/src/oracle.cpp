#include "limid/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace limid {
namespace oracle {

namespace {

std::vector<int> all_cards(const Limid& limid) {
    std::vector<int> cards(limid.variables.size());
    for (const auto& v : limid.variables) cards[v.id] = v.cardinality;
    return cards;
}

void check_cap(const Limid& limid, const Options& opt) {
    if (limid.joint_size() > opt.cell_cap)
        throw SolverError("too-large", "joint state space exceeds cell cap");
}

template <typename F>
void for_each_state(const std::vector<int>& cards, F f) {
    std::vector<int> state(cards.size(), 0);
    for (;;) {
        f(state);
        std::size_t j = cards.size();
        while (j-- > 0) {
            if (++state[j] < cards[j]) break;
            state[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
}

double total_utility(const Limid& limid, const std::vector<int>& state) {
    double u = 0.0;
    for (const auto& vd : limid.values) u += vd.utility.at_state(state);
    return u;
}

double chance_weight(const Limid& limid, const std::vector<int>& state) {
    double w = 1.0;
    for (const auto& nd : limid.nodes)
        if (nd.kind == NodeKind::Chance) w *= nd.cpt.at_state(state);
    return w;
}

Table objective_over_family(const Limid& limid, const Strategy& q, int d,
                            const std::vector<int>& included_decisions) {
    std::vector<int> fa = limid.family(d);
    std::vector<int> facards;
    for (int v : fa) facards.push_back(limid.cardinality(v));
    Table obj = Table::zeros(fa, facards);

    const auto cards = all_cards(limid);
    for_each_state(cards, [&](const std::vector<int>& state) {
        double w = chance_weight(limid, state);
        for (int dj : included_decisions) w *= q.policies.at(dj).table.at_state(state);
        if (w == 0.0) return;
        double u = total_utility(limid, state);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < fa.size(); ++i)
            idx = idx * static_cast<std::size_t>(facards[i]) +
                  static_cast<std::size_t>(state[fa[i]]);
        obj.values[idx] += w * u;
    });
    return obj;
}

Policy argmax_policy(const Limid& limid, int d, const Table& obj) {
    const NodeDef& nd = limid.node(d);
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

    const int dc = limid.cardinality(d);
    const std::size_t slices = pol.table.size() / static_cast<std::size_t>(dc);
    // obj has domain (pa..., d) in the same order, so slices line up.
    for (std::size_t s = 0; s < slices; ++s) {
        int best = 0;
        double bestv = obj.values[s * dc];
        for (int x = 1; x < dc; ++x) {
            double v = obj.values[s * dc + x];
            if (v > bestv) {
                bestv = v;
                best = x;
            }
        }
        pol.table.values[s * dc + best] = 1.0;
    }
    return pol;
}

}  // namespace

Table joint_distribution(const Limid& limid, const Strategy& q, const Options& opt) {
    check_cap(limid, opt);
    std::vector<int> vars;
    for (const auto& v : limid.variables) vars.push_back(v.id);
    std::sort(vars.begin(), vars.end());
    std::vector<int> cards;
    for (int v : vars) cards.push_back(limid.cardinality(v));
    Table joint = Table::zeros(vars, cards);

    std::size_t idx = 0;
    for_each_state(cards, [&](const std::vector<int>& state) {
        double w = chance_weight(limid, state);
        for (const auto& [d, pol] : q.policies) w *= pol.table.at_state(state);
        joint.values[idx++] = w;
    });
    return joint;
}

double brute_eu(const Limid& limid, const Strategy& q, const Options& opt) {
    check_cap(limid, opt);
    const auto cards = all_cards(limid);
    double eu = 0.0;
    for_each_state(cards, [&](const std::vector<int>& state) {
        double w = chance_weight(limid, state);
        for (const auto& [d, pol] : q.policies) w *= pol.table.at_state(state);
        if (w != 0.0) eu += w * total_utility(limid, state);
    });
    return eu;
}

Policy brute_policy_update(const Limid& limid, const Strategy& q_rest, int d, const Options& opt) {
    check_cap(limid, opt);
    const auto order = limid.decision_order();
    const auto pos = std::find(order.begin(), order.end(), d);
    if (pos == order.end())
        throw SolverError("unknown-decision", std::to_string(d) + " is not a decision");
    std::vector<int> later(pos + 1, order.end());
    for (int dj : later)
        if (!q_rest.policies.count(dj))
            throw SolverError("missing-policy", "no policy for later decision " + std::to_string(dj));
    Table obj = objective_over_family(limid, q_rest, d, later);
    return argmax_policy(limid, d, obj);
}

Policy brute_best_response(const Limid& limid, const Strategy& q_rest, int d, const Options& opt) {
    check_cap(limid, opt);
    std::vector<int> others;
    for (int dj : limid.decision_order())
        if (dj != d) others.push_back(dj);
    Table obj = objective_over_family(limid, q_rest, d, others);
    return argmax_policy(limid, d, obj);
}

OptimalResult brute_optimal(const Limid& limid, const Options& opt) {
    check_cap(limid, opt);
    const auto order = limid.decision_order();
    const auto cards = all_cards(limid);

    // Precompute p_V(x) * U(x) once; each strategy then only filters.
    std::vector<double> base(limid.joint_size());
    std::vector<std::vector<int>> states;
    states.reserve(base.size());
    {
        std::size_t i = 0;
        for_each_state(cards, [&](const std::vector<int>& state) {
            base[i++] = chance_weight(limid, state) * total_utility(limid, state);
            states.push_back(state);
        });
    }

    // One digit per (decision, parent configuration), lexicographic order.
    struct Slot {
        int decision;
        std::vector<int> parents;
        std::size_t configs;
        int actions;
    };
    std::vector<Slot> slots;
    double n_strategies = 1.0;
    for (int d : order) {
        Slot s;
        s.decision = d;
        s.parents = limid.node(d).parents;
        std::size_t c = 1;
        for (int p : s.parents) c *= static_cast<std::size_t>(limid.cardinality(p));
        s.configs = c;
        s.actions = limid.cardinality(d);
        n_strategies *= std::pow(static_cast<double>(s.actions), static_cast<double>(c));
        slots.push_back(std::move(s));
    }
    if (n_strategies > static_cast<double>(opt.strategy_cap))
        throw SolverError("too-large", "deterministic strategy space exceeds cap");

    // Flat digit vector: for slot k, digits [off_k, off_k + configs).
    std::vector<int> digits;
    std::vector<std::size_t> offsets;
    std::vector<int> radix;
    for (const auto& s : slots) {
        offsets.push_back(digits.size());
        for (std::size_t c = 0; c < s.configs; ++c) {
            digits.push_back(0);
            radix.push_back(s.actions);
        }
    }

    auto eu_of_digits = [&]() {
        double eu = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (base[i] == 0.0) continue;
            const auto& state = states[i];
            bool consistent = true;
            for (std::size_t k = 0; k < slots.size() && consistent; ++k) {
                const Slot& s = slots[k];
                std::size_t cfg = 0;
                for (int p : s.parents)
                    cfg = cfg * static_cast<std::size_t>(limid.cardinality(p)) +
                          static_cast<std::size_t>(state[p]);
                consistent = digits[offsets[k] + cfg] == state[s.decision];
            }
            if (consistent) eu += base[i];
        }
        return eu;
    };

    bool first = true;
    double best_eu = 0.0;
    std::vector<int> best_digits;
    for (;;) {
        double eu = eu_of_digits();
        if (first || eu > best_eu) {
            first = false;
            best_eu = eu;
            best_digits = digits;
        }
        std::size_t j = digits.size();
        while (j-- > 0) {
            if (++digits[j] < radix[j]) break;
            digits[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }

    OptimalResult out;
    out.eu = best_eu;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const Slot& s = slots[k];
        Policy pol;
        pol.decision = s.decision;
        std::vector<int> vars, pcards;
        for (int p : s.parents) {
            vars.push_back(p);
            pcards.push_back(limid.cardinality(p));
        }
        vars.push_back(s.decision);
        pcards.push_back(s.actions);
        pol.table = Table::zeros(vars, pcards);
        for (std::size_t c = 0; c < s.configs; ++c)
            pol.table.values[c * static_cast<std::size_t>(s.actions) +
                             static_cast<std::size_t>(best_digits[offsets[k] + c])] = 1.0;
        out.strategy.policies[s.decision] = std::move(pol);
    }
    return out;
}

}  // namespace oracle
}  // namespace limid
