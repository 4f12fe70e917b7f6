#pragma once

#include <set>
#include <vector>

#include "limid/model.hpp"

namespace limid {

struct UndirectedGraph {
    int n = 0;
    std::vector<std::set<int>> adj;

    explicit UndirectedGraph(int nodes = 0) : n(nodes), adj(nodes) {}
    void add_edge(int a, int b) {
        if (a == b) return;
        adj[a].insert(b);
        adj[b].insert(a);
    }
    bool has_edge(int a, int b) const { return adj[a].count(b) != 0; }
};

struct JtEdge {
    int a = 0;
    int b = 0;
    std::vector<int> separator;  // sorted
};

struct JunctionTree {
    std::vector<std::vector<int>> cliques;  // sorted variable ids
    std::vector<JtEdge> edges;
    std::vector<std::vector<int>> neighbors;  // clique -> edge indices

    // Function assignment (filled by assign_functions).
    std::vector<std::vector<int>> chance_in_clique;  // clique -> chance ids
    std::vector<std::vector<int>> values_in_clique;  // clique -> value indices
    std::vector<int> decision_home;                  // decision order idx -> clique

    int edge_between(int a, int b) const;
    int other_end(int edge, int from) const;
};

// Removes non-requisite informational arcs, iterated to fixpoint over the
// decisions in reverse temporal order.
Limid reduce(const Limid& limid);

UndirectedGraph moralize(const Limid& limid);

// Min-fill triangulation, ties broken by smaller node id. Returns the
// filled graph and a perfect elimination order of it.
std::pair<UndirectedGraph, std::vector<int>> triangulate(const UndirectedGraph& g);

JunctionTree build_junction_tree(const UndirectedGraph& chordal, const std::vector<int>& order);

// Assigns every cpt and utility to its lowest-indexed qualifying clique and
// records each decision's home clique. Uniform policies are not materialized.
void assign_functions(const Limid& limid, JunctionTree& jt);

JunctionTree compile_limid(const Limid& reduced);

// d-separation of {x} from ys given zs, via the ancestral moral graph. The
// graph is the reduced LIMID's DAG with value nodes appended after the
// variables (value node i gets id n_variables + i).
bool d_separated(const Limid& limid, int x, const std::set<int>& ys, const std::set<int>& zs);

}  // namespace limid
