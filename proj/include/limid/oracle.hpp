#pragma once

#include "limid/model.hpp"

namespace limid {
namespace oracle {

// Brute-force reference implementations by exhaustive enumeration.
// Deliberately dumb: everything iterates the full joint state space.

struct Options {
    std::size_t cell_cap = std::size_t{1} << 20;
    std::size_t strategy_cap = std::size_t{1} << 22;
};

// f_q: cellwise product of every cpt and every policy in the strategy.
Table joint_distribution(const Limid& limid, const Strategy& q, const Options& opt = {});

double brute_eu(const Limid& limid, const Strategy& q, const Options& opt = {});

// Argmax policy for d given the policies of decisions after d; earlier
// decisions are omitted. Ties break to the smallest action index.
Policy brute_policy_update(const Limid& limid, const Strategy& q_rest, int d,
                           const Options& opt = {});

// Argmax policy for d given every other decision's current policy.
Policy brute_best_response(const Limid& limid, const Strategy& q_rest, int d,
                           const Options& opt = {});

struct OptimalResult {
    Strategy strategy;
    double eu = 0.0;
};

// Global maximum over all deterministic strategies, enumerated
// lexicographically over (decision index, configuration index, action).
OptimalResult brute_optimal(const Limid& limid, const Options& opt = {});

}  // namespace oracle
}  // namespace limid
