#pragma once

#include "limid/arch_ss.hpp"

namespace limid {

// Division of paired potentials: (p_a / p_b, u_a - u_b).
PairedPotential hugin_divide(const PairedPotential& a, const PairedPotential& b, OpCounter& ctr);

class HuginEngine : public PropagationEngine {
  public:
    HuginEngine(const Limid& limid, const JunctionTree& jt);

    void collect(int root) override;
    Table contract_to(int root, const std::vector<int>& target) override;
    void install_policy(int root, const Policy& policy) override;
    bool supports_retraction() const override { return false; }
    void retract_policy(int d) override;
    double read_eu(int root) override;

    // Single message pass A -> B across their separator; updates the
    // separator store and B's clique potential, leaves A unchanged.
    void pass(int a, int b);

    const PairedPotential& clique_potential(int c) const { return clique_pot_[c]; }
    const PairedPotential& separator_potential(int edge) const { return sep_pot_[edge]; }

  private:
    const Limid& limid_;
    const JunctionTree& jt_;
    std::vector<PairedPotential> clique_pot_;  // mutated by passes
    std::vector<PairedPotential> sep_pot_;     // one store per edge
    int last_root_ = -1;
};

}  // namespace limid
