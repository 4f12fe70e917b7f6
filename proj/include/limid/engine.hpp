#pragma once

#include <memory>

#include "limid/compile.hpp"
#include "limid/model.hpp"

namespace limid {

enum class Arch { SS, Hugin, LP };

const char* arch_name(Arch a);

// One propagation engine instance per solve; confined to one thread.
class PropagationEngine {
  public:
    virtual ~PropagationEngine() = default;

    // Make every message toward `root` valid.
    virtual void collect(int root) = 0;

    // Contraction of the root potential marginalized onto `target`
    // (a subset of the root clique). Ops go to the solve counter.
    virtual Table contract_to(int root, const std::vector<int>& target) = 0;

    // Install a (degenerate) policy at the decision's home clique.
    virtual void install_policy(int root, const Policy& policy) = 0;

    virtual bool supports_retraction() const = 0;
    virtual void retract_policy(int d) = 0;

    // Expected utility readout at `root` after a collect; counted separately.
    virtual double read_eu(int root) = 0;

    OpCounter init_ops;
    OpCounter solve_ops;
    OpCounter readout_ops;
    int messages_sent = 0;
};

std::unique_ptr<PropagationEngine> make_engine(Arch arch, const Limid& limid,
                                               const JunctionTree& jt);

}  // namespace limid
