#pragma once

#include <functional>

#include "limid/engine.hpp"

namespace limid {

// Roots and message schedule: one full collect toward the last decision's
// root, then path-only partial collects toward each earlier root.
struct SolvePlan {
    std::vector<int> roots;  // per decision, temporal order (R_1..R_k)
    // step 0 = full collect toward R_k; step i = partial collect R_{k-i+1} -> R_{k-i}
    std::vector<std::vector<std::pair<int, int>>> steps;  // directed clique pairs
};

SolvePlan plan_roots(const JunctionTree& jt, const Limid& limid);

struct ArchCounters {
    OpCounter init;
    OpCounter solve;
    OpCounter readout;
    int messages = 0;
};

struct SolveResult {
    Strategy strategy;
    double eu = 0.0;
    ArchCounters counters;
    int iterations = 0;  // SPU cycles (1 for a soluble single pass)
};

struct SolveOptions {
    int max_cycles = 100;
    // Called after every Replace step with the full current strategy
    // (not-yet-updated decisions filled with uniform policies).
    std::function<void(const Strategy&)> on_replace;
};

// Local optimization at the decision's home root: marginal contraction over
// fa(d), argmax per parent configuration, ties to the smallest action.
Policy optimize_policy(PropagationEngine& engine, const Limid& limid, const JunctionTree& jt,
                       int root, int d);

// One reverse-order pass; optimal for traditional influence diagrams.
SolveResult solve_soluble(const Limid& limid, Arch arch, const SolveOptions& opt = {});

// Retract/optimize/replace cycles until no policy changes. SS and LP only.
SolveResult spu_general(const Limid& limid, Arch arch, const SolveOptions& opt = {});

}  // namespace limid
