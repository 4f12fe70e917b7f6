#pragma once

#include <optional>

#include "limid/engine.hpp"

namespace limid {

// Shafer-Shenoy valuation: a pair (probability part, utility part) over one
// domain. The vacuous potential is (1, 0).
struct PairedPotential {
    Table p = Table::scalar(1.0);
    Table u = Table::scalar(0.0);

    static PairedPotential vacuous() { return {}; }
    static PairedPotential vacuous_over(const std::vector<int>& vars,
                                        const std::vector<int>& cards) {
        return {Table::ones(vars, cards), Table::zeros(vars, cards)};
    }
};

PairedPotential ss_combine(const PairedPotential& a, const PairedPotential& b, OpCounter& ctr);
PairedPotential ss_marginalize(const PairedPotential& pot, const std::vector<int>& keep,
                               OpCounter& ctr);
Table ss_contract(const PairedPotential& pot, OpCounter& ctr);

class SsEngine : public PropagationEngine {
  public:
    SsEngine(const Limid& limid, const JunctionTree& jt);

    void collect(int root) override;
    Table contract_to(int root, const std::vector<int>& target) override;
    void install_policy(int root, const Policy& policy) override;
    bool supports_retraction() const override { return true; }
    void retract_policy(int d) override;
    double read_eu(int root) override;

    // Message in the A->B slot; computes it (and its inputs) if invalid.
    const PairedPotential& message(int a, int b);
    const PairedPotential& clique_potential(int c) const { return clique_pot_[c]; }

  private:
    struct Mail {
        PairedPotential pot;
        bool valid = false;
    };

    PairedPotential combined_at(int clique, int excluded_neighbor, OpCounter& ctr);
    Mail& slot(int a, int b);
    void invalidate_from(int clique);

    const Limid& limid_;
    const JunctionTree& jt_;
    std::vector<PairedPotential> clique_pot_;          // fixed after init
    std::vector<std::vector<Policy>> clique_policies_;  // stored separately
    std::vector<std::array<Mail, 2>> mail_;             // per edge, dir 0: a->b
};

}  // namespace limid
