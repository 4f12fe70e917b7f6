#pragma once

#include <map>
#include <string>
#include <vector>

#include "limid/table.hpp"

namespace limid {

struct SolverError : std::runtime_error {
    std::string code;
    SolverError(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct Variable {
    int id = 0;
    std::string name;
    int cardinality = 2;
};

enum class NodeKind { Chance, Decision };

struct NodeDef {
    int id = 0;
    NodeKind kind = NodeKind::Chance;
    std::vector<int> parents;  // ordered, declaration order
    Table cpt;                 // chance only; domain = (parents..., id)
};

struct ValueDef {
    std::string name;
    std::vector<int> parents;
    Table utility;  // domain = parents in declared order
};

// A LIMID: chance/decision variables with attached numeric functions plus
// id-less value nodes. Immutable after construction; the declaration order
// of decision nodes defines the temporal order d_1..d_k.
struct Limid {
    std::vector<Variable> variables;
    std::vector<NodeDef> nodes;    // one per variable id, in file order
    std::vector<ValueDef> values;

    const NodeDef& node(int id) const;
    const Variable& variable(int id) const;
    int cardinality(int id) const { return variable(id).cardinality; }
    std::vector<int> decision_order() const;  // ids, temporal order
    std::vector<int> family(int id) const;    // parents then the node itself
    std::size_t joint_size() const;
};

// δ_d(x_d | x_pa(d)); table domain is (pa(d) in declared order, d).
struct Policy {
    int decision = 0;
    Table table;
};

struct Strategy {
    std::map<int, Policy> policies;  // decision id -> policy
};

struct Diagnostic {
    int node_id = -1;
    std::string rule;
    std::string detail;
};

std::vector<Diagnostic> validate(const Limid& limid);

Policy uniform_policy(const Limid& limid, int d);

Strategy uniform_strategy(const Limid& limid);

}  // namespace limid
