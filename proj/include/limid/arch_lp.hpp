#pragma once

#include "limid/engine.hpp"

namespace limid {

enum class FactorKind { Probability, PolicyFactor, Utility };

// One element of a decomposed potential. Probability and policy factors may
// carry a head (the conditioned child); derived products are headless.
struct Factor {
    Table table;
    FactorKind kind = FactorKind::Probability;
    int head = -1;  // -1 for utilities and derived factors

    bool is_utility() const { return kind == FactorKind::Utility; }
};

// (Φ, Ψ): a set of probability/policy factors and a set of utility factors.
// Vacuous iff both sets are empty.
struct DecomposedPotential {
    std::vector<Factor> phi;
    std::vector<Factor> psi;

    bool vacuous() const { return phi.empty() && psi.empty(); }
    std::vector<int> domain() const;  // sorted union of factor domains
};

DecomposedPotential lp_combine(const DecomposedPotential& a, const DecomposedPotential& b);

struct BarrenSets {
    std::vector<int> barren;                // sorted
    std::vector<int> probabilistic_barren;  // sorted; superset of barren
};

// Structural analysis on the domain graph: a variable is barren wrt the
// target set if it is outside the target, appears in no utility factor, and
// has only barren descendants. Probabilistic-barren ignores Ψ entirely.
BarrenSets find_barren(const DecomposedPotential& pot, const std::vector<int>& target);

DecomposedPotential lp_eliminate_var(const DecomposedPotential& pot, int var, int cardinality,
                                     OpCounter& ctr);

// Eliminates every domain variable outside `keep`, one at a time, choosing
// the next variable on-line: barren first, then probabilistic-barren, then
// min-fill, ties by smallest id. Returns the chosen order via `order_out`.
// `universe` lists variables the potential nominally covers even when no
// factor mentions them; summing such a variable contributes a constant
// factor of its cardinality.
DecomposedPotential lp_marginalize(const DecomposedPotential& pot, const std::vector<int>& keep,
                                   const Limid& limid, OpCounter& ctr,
                                   std::vector<int>* order_out = nullptr,
                                   const std::vector<int>& universe = {});

Table lp_contract(const DecomposedPotential& pot, OpCounter& ctr);

class LpEngine : public PropagationEngine {
  public:
    LpEngine(const Limid& limid, const JunctionTree& jt);

    void collect(int root) override;
    Table contract_to(int root, const std::vector<int>& target) override;
    void install_policy(int root, const Policy& policy) override;
    bool supports_retraction() const override { return true; }
    void retract_policy(int d) override;
    double read_eu(int root) override;

    const DecomposedPotential& message(int a, int b);
    const DecomposedPotential& clique_potential(int c) const { return clique_pot_[c]; }

  private:
    struct Mail {
        DecomposedPotential pot;
        bool valid = false;
    };

    DecomposedPotential combined_at(int clique, int excluded_neighbor);
    Mail& slot(int a, int b);
    void invalidate_from(int clique);

    const Limid& limid_;
    const JunctionTree& jt_;
    std::vector<DecomposedPotential> clique_pot_;  // fixed after init
    std::vector<std::array<Mail, 2>> mail_;
};

}  // namespace limid
