#include "limid/compile.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace limid {

int JunctionTree::edge_between(int a, int b) const {
    for (int e : neighbors[a]) {
        if ((edges[e].a == a && edges[e].b == b) || (edges[e].a == b && edges[e].b == a)) return e;
    }
    return -1;
}

int JunctionTree::other_end(int edge, int from) const {
    return edges[edge].a == from ? edges[edge].b : edges[edge].a;
}

namespace {

// Extended DAG over variables plus value nodes (appended as sinks).
struct ExtendedDag {
    int n_vars = 0;
    int n_total = 0;
    std::vector<std::vector<int>> parents;
    std::vector<std::vector<int>> children;
};

ExtendedDag extended_dag(const Limid& limid) {
    ExtendedDag g;
    g.n_vars = static_cast<int>(limid.variables.size());
    g.n_total = g.n_vars + static_cast<int>(limid.values.size());
    g.parents.resize(g.n_total);
    g.children.resize(g.n_total);
    for (const auto& nd : limid.nodes)
        for (int p : nd.parents) {
            g.parents[nd.id].push_back(p);
            g.children[p].push_back(nd.id);
        }
    for (std::size_t i = 0; i < limid.values.size(); ++i) {
        int vid = g.n_vars + static_cast<int>(i);
        for (int p : limid.values[i].parents) {
            g.parents[vid].push_back(p);
            g.children[p].push_back(vid);
        }
    }
    return g;
}

std::set<int> descendants(const ExtendedDag& g, int start) {
    std::set<int> out;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int c : g.children[v])
            if (out.insert(c).second) q.push(c);
    }
    return out;
}

bool d_separated_ext(const ExtendedDag& g, int x, const std::set<int>& ys,
                     const std::set<int>& zs) {
    if (ys.empty()) return true;
    if (ys.count(x)) return false;

    // Ancestral set of {x} ∪ ys ∪ zs.
    std::set<int> anc;
    std::queue<int> q;
    auto push = [&](int v) {
        if (anc.insert(v).second) q.push(v);
    };
    push(x);
    for (int y : ys) push(y);
    for (int z : zs) push(z);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int p : g.parents[v]) push(p);
    }

    // Moralize the ancestral subgraph.
    std::vector<std::set<int>> adj(g.n_total);
    for (int v : anc) {
        for (int p : g.parents[v]) {
            adj[v].insert(p);
            adj[p].insert(v);
        }
        for (std::size_t i = 0; i < g.parents[v].size(); ++i)
            for (std::size_t j = i + 1; j < g.parents[v].size(); ++j) {
                adj[g.parents[v][i]].insert(g.parents[v][j]);
                adj[g.parents[v][j]].insert(g.parents[v][i]);
            }
    }

    // Reachability from x avoiding zs.
    std::set<int> seen{x};
    std::queue<int> bfs;
    bfs.push(x);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[v]) {
            if (!anc.count(w) || zs.count(w) || seen.count(w)) continue;
            if (ys.count(w)) return false;
            seen.insert(w);
            bfs.push(w);
        }
    }
    return true;
}

}  // namespace

bool d_separated(const Limid& limid, int x, const std::set<int>& ys, const std::set<int>& zs) {
    return d_separated_ext(extended_dag(limid), x, ys, zs);
}

Limid reduce(const Limid& limid) {
    Limid cur = limid;
    const auto order = cur.decision_order();
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int d = *it;
            bool local = true;
            while (local) {
                local = false;
                const ExtendedDag g = extended_dag(cur);
                std::set<int> value_desc;
                for (int v : descendants(g, d))
                    if (v >= g.n_vars) value_desc.insert(v);

                NodeDef* nd = nullptr;
                for (auto& n : cur.nodes)
                    if (n.id == d) nd = &n;
                for (int parent : std::vector<int>(nd->parents)) {
                    std::set<int> given;
                    for (int p : nd->parents)
                        if (p != parent) given.insert(p);
                    given.insert(d);
                    if (d_separated_ext(g, parent, value_desc, given)) {
                        nd->parents.erase(
                            std::find(nd->parents.begin(), nd->parents.end(), parent));
                        local = true;
                        changed = true;
                        break;  // re-derive the graph before the next test
                    }
                }
            }
        }
    }
    return cur;
}

UndirectedGraph moralize(const Limid& limid) {
    UndirectedGraph g(static_cast<int>(limid.variables.size()));
    for (const auto& nd : limid.nodes) {
        for (int p : nd.parents) g.add_edge(p, nd.id);
        for (std::size_t i = 0; i < nd.parents.size(); ++i)
            for (std::size_t j = i + 1; j < nd.parents.size(); ++j)
                g.add_edge(nd.parents[i], nd.parents[j]);
    }
    for (const auto& vd : limid.values) {
        for (std::size_t i = 0; i < vd.parents.size(); ++i)
            for (std::size_t j = i + 1; j < vd.parents.size(); ++j)
                g.add_edge(vd.parents[i], vd.parents[j]);
    }
    return g;
}

std::pair<UndirectedGraph, std::vector<int>> triangulate(const UndirectedGraph& g) {
    UndirectedGraph work = g;
    UndirectedGraph filled = g;
    std::vector<int> order;
    std::vector<bool> gone(g.n, false);

    auto fill_count = [&](int v) {
        int fills = 0;
        std::vector<int> nbrs;
        for (int w : work.adj[v])
            if (!gone[w]) nbrs.push_back(w);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!work.has_edge(nbrs[i], nbrs[j])) ++fills;
        return fills;
    };

    for (int step = 0; step < g.n; ++step) {
        int best = -1, best_fill = 0;
        for (int v = 0; v < g.n; ++v) {
            if (gone[v]) continue;
            int f = fill_count(v);
            if (best == -1 || f < best_fill) {
                best = v;
                best_fill = f;
            }
        }
        std::vector<int> nbrs;
        for (int w : work.adj[best])
            if (!gone[w]) nbrs.push_back(w);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                work.add_edge(nbrs[i], nbrs[j]);
                filled.add_edge(nbrs[i], nbrs[j]);
            }
        gone[best] = true;
        order.push_back(best);
    }
    return {filled, order};
}

JunctionTree build_junction_tree(const UndirectedGraph& chordal, const std::vector<int>& order) {
    const int n = chordal.n;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    // Verify the order is a perfect elimination order of the input.
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int w : chordal.adj[v])
            if (pos[w] > i) later.push_back(w);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!chordal.has_edge(later[a], later[b]))
                    throw SolverError("not-chordal", "order is not a perfect elimination order");
    }

    JunctionTree jt;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> c{v};
        for (int w : chordal.adj[v])
            if (pos[w] > i) c.push_back(w);
        std::sort(c.begin(), c.end());
        bool maximal = true;
        for (const auto& existing : jt.cliques)
            if (std::includes(existing.begin(), existing.end(), c.begin(), c.end())) {
                maximal = false;
                break;
            }
        if (maximal) jt.cliques.push_back(std::move(c));
    }

    // Maximum-weight spanning tree on |intersection|, ties by (i, j).
    struct Cand {
        int w, a, b;
        std::vector<int> sep;
    };
    std::vector<Cand> cands;
    const int k = static_cast<int>(jt.cliques.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            std::vector<int> sep;
            std::set_intersection(jt.cliques[a].begin(), jt.cliques[a].end(),
                                  jt.cliques[b].begin(), jt.cliques[b].end(),
                                  std::back_inserter(sep));
            cands.push_back({static_cast<int>(sep.size()), a, b, std::move(sep)});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.w != y.w) return x.w > y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    std::vector<int> comp(k);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    jt.neighbors.resize(k);
    for (const auto& c : cands) {
        if (static_cast<int>(jt.edges.size()) == k - 1) break;
        int ra = find(c.a), rb = find(c.b);
        if (ra == rb) continue;
        comp[ra] = rb;
        JtEdge e{c.a, c.b, c.sep};
        jt.neighbors[c.a].push_back(static_cast<int>(jt.edges.size()));
        jt.neighbors[c.b].push_back(static_cast<int>(jt.edges.size()));
        jt.edges.push_back(std::move(e));
    }
    return jt;
}

void assign_functions(const Limid& limid, JunctionTree& jt) {
    const int k = static_cast<int>(jt.cliques.size());
    jt.chance_in_clique.assign(k, {});
    jt.values_in_clique.assign(k, {});

    auto home_of = [&](std::vector<int> dom) -> int {
        std::sort(dom.begin(), dom.end());
        for (int c = 0; c < k; ++c)
            if (std::includes(jt.cliques[c].begin(), jt.cliques[c].end(), dom.begin(), dom.end()))
                return c;
        return -1;
    };

    for (const auto& nd : limid.nodes) {
        if (nd.kind != NodeKind::Chance) continue;
        int c = home_of(limid.family(nd.id));
        if (c < 0) throw SolverError("no-qualifying-clique", "chance node " + std::to_string(nd.id));
        jt.chance_in_clique[c].push_back(nd.id);
    }
    for (std::size_t i = 0; i < limid.values.size(); ++i) {
        int c = home_of(limid.values[i].parents);
        if (c < 0) throw SolverError("no-qualifying-clique", "value node " + limid.values[i].name);
        jt.values_in_clique[c].push_back(static_cast<int>(i));
    }
    jt.decision_home.clear();
    for (int d : limid.decision_order()) {
        int c = home_of(limid.family(d));
        if (c < 0) throw SolverError("no-qualifying-clique", "decision " + std::to_string(d));
        jt.decision_home.push_back(c);
    }
}

JunctionTree compile_limid(const Limid& reduced) {
    auto [filled, order] = triangulate(moralize(reduced));
    JunctionTree jt = build_junction_tree(filled, order);
    assign_functions(reduced, jt);
    return jt;
}

}  // namespace limid
