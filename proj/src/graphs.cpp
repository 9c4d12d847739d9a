#include "pdl/graphs.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <set>

namespace pdl {

// ---------------------------------------------------------------------------
// Graph basics

void Graph::add_edge(int u, int v) {
    if (u == v) return; // simple graph, no loops
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

void Graph::finish() {
    for (auto& [u, v] : edges)
        if (u < 0 || v >= order()) throw Error("edge endpoint out of range");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(order());
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

int TreeDecomposition::width() const {
    size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
}

// ---------------------------------------------------------------------------
// Circuit and Gaifman graphs

Graph circuit_graph(const Formula& f, const GraphOptions& opts) {
    Circuit c = hash_cons(f);
    Graph g;
    for (const auto& n : c.nodes) g.labels.push_back(n.label);
    for (int u = 0; u < c.size(); ++u) {
        const auto& n = c.nodes[u];
        for (int v : n.children) g.add_edge(u, v);
        if (opts.triangles) {
            if (n.kind == Circuit::NodeKind::And || n.kind == Circuit::NodeKind::Or) {
                g.add_edge(n.children[0], n.children[1]);
            } else if (n.kind == Circuit::NodeKind::Dep) {
                // (atom, p, q) tuples relate each premise variable to each
                // conclusion variable
                for (int i = 0; i < n.premise_count; ++i)
                    for (size_t j = n.premise_count; j < n.children.size(); ++j)
                        g.add_edge(n.children[i], n.children[j]);
            }
        }
    }
    g.finish();
    return g;
}

Graph gaifman_graph(const Team& t, const Formula& f, const GraphOptions& opts) {
    for (const auto& v : variables_of(f))
        t.var_index(v); // UnknownVariable if the team cannot interpret f
    Circuit c = hash_cons(f);
    Graph g = circuit_graph(f, opts);
    int base = g.order();
    for (int i = 0; i < t.size(); ++i)
        g.labels.push_back("c" + std::to_string(i + 1));
    for (int u = 0; u < c.size(); ++u)
        if (c.nodes[u].kind == Circuit::NodeKind::Var)
            for (int i = 0; i < t.size(); ++i)
                g.add_edge(base + i, u);
    g.finish();
    return g;
}

// ---------------------------------------------------------------------------
// Elimination-ordering decompositions

namespace {

struct ElimState {
    int n;
    std::vector<std::set<int>> adj;
    std::vector<bool> gone;

    explicit ElimState(const Graph& g) : n(g.order()), adj(g.order()), gone(g.order(), false) {
        for (auto [u, v] : g.edges) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }

    int fill_cost(int v) const {
        int missing = 0;
        for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
            for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                if (!adj[*it].count(*jt)) ++missing;
        return missing;
    }

    void eliminate(int v) {
        for (int u : adj[v])
            for (int w : adj[v])
                if (u < w) {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
        for (int u : adj[v]) adj[u].erase(v);
        adj[v].clear();
        gone[v] = true;
    }
};

} // namespace

TreeDecomposition tree_decompose(const Graph& g, ElimMethod method) {
    TreeDecomposition d;
    int n = g.order();
    if (n == 0) {
        d.bags.push_back({});
        return d;
    }
    ElimState st(g);
    std::vector<int> order;
    std::vector<std::vector<int>> bag(n);
    std::vector<int> pos(n, -1);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long long best_score = -1;
        for (int v = 0; v < n; ++v) {
            if (st.gone[v]) continue;
            long long score = method == ElimMethod::MinDegree
                                  ? static_cast<long long>(st.adj[v].size())
                                  : static_cast<long long>(st.fill_cost(v));
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        bag[best].assign(st.adj[best].begin(), st.adj[best].end());
        bag[best].push_back(best);
        std::sort(bag[best].begin(), bag[best].end());
        pos[best] = step;
        order.push_back(best);
        st.eliminate(best);
    }

    d.bags.resize(n);
    for (int v = 0; v < n; ++v) d.bags[pos[v]] = bag[v];
    // connect the bag of v to the bag of its earliest-eliminated higher
    // neighbour; leftovers (ends of components) chain to the last bag
    for (int step = 0; step < n; ++step) {
        int v = order[step];
        int target = -1;
        for (int u : bag[v])
            if (u != v && (target < 0 || pos[u] < pos[target])) target = u;
        if (target >= 0)
            d.edges.emplace_back(step, pos[target]);
        else if (step + 1 < n)
            d.edges.emplace_back(step, step + 1);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Exact treewidth (subset dynamic programming over elimination orderings)

int exact_treewidth(const Graph& g, const TreewidthOptions& opts) {
    int n = g.order();
    if (n == 0) return -1;
    if (n > opts.max_vertices || n > 25)
        throw CapExceeded("exact treewidth capped at " +
                          std::to_string(std::min(opts.max_vertices, 25)) +
                          " vertices, graph has " + std::to_string(n));
    std::vector<uint32_t> adj(n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= uint32_t(1) << v;
        adj[v] |= uint32_t(1) << u;
    }
    uint32_t full = (n == 32) ? ~uint32_t(0) : (uint32_t(1) << n) - 1;

    // deg(v, S): neighbours of v outside S in the graph with S eliminated,
    // i.e. vertices outside S u {v} reachable from v through S
    auto elim_degree = [&](int v, uint32_t S) {
        uint32_t seen = uint32_t(1) << v;
        uint32_t frontier = adj[v] & ~seen;
        uint32_t result = 0;
        while (frontier) {
            int u = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            if (seen & (uint32_t(1) << u)) continue;
            seen |= uint32_t(1) << u;
            if (S & (uint32_t(1) << u))
                frontier |= adj[u] & ~seen;
            else
                result |= uint32_t(1) << u;
        }
        return __builtin_popcount(result);
    };

    // f[S] = best achievable max elimination degree when S is already gone
    std::vector<int8_t> best(size_t(1) << n);
    best[full] = -1;
    for (uint32_t S = full - 1;; --S) {
        uint32_t missing = full & ~S;
        int b = n; // upper bound: degree never exceeds n - 1
        uint32_t rest = missing;
        while (rest) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            int cand = std::max<int>(elim_degree(v, S), best[S | (uint32_t(1) << v)]);
            b = std::min(b, cand);
        }
        best[S] = static_cast<int8_t>(b);
        if (S == 0) break;
    }
    return best[0];
}

// ---------------------------------------------------------------------------
// Decomposition validity

DecompositionCheck validate(const TreeDecomposition& d, const Graph& g) {
    int n = g.order();
    std::vector<bool> covered(n, false);
    for (const auto& b : d.bags)
        for (int v : b) {
            if (v < 0 || v >= n) return {false, 1, "bag mentions unknown vertex"};
            covered[v] = true;
        }
    for (int v = 0; v < n; ++v)
        if (!covered[v])
            return {false, 1, "vertex " + std::to_string(v) + " is in no bag"};

    for (auto [u, v] : g.edges) {
        bool found = false;
        for (const auto& b : d.bags)
            if (std::binary_search(b.begin(), b.end(), u) &&
                std::binary_search(b.begin(), b.end(), v)) {
                found = true;
                break;
            }
        if (!found)
            return {false, 2,
                    "edge {" + std::to_string(u) + "," + std::to_string(v) + "} in no bag"};
    }

    // restriction of the decomposition tree to each vertex must be connected
    int nb = static_cast<int>(d.bags.size());
    std::vector<std::vector<int>> tree(nb);
    for (auto [a, b] : d.edges) {
        if (a < 0 || a >= nb || b < 0 || b >= nb) return {false, 3, "tree edge out of range"};
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    for (int v = 0; v < n; ++v) {
        std::vector<int> holding;
        for (int i = 0; i < nb; ++i)
            if (std::binary_search(d.bags[i].begin(), d.bags[i].end(), v)) holding.push_back(i);
        if (holding.empty()) continue;
        std::vector<bool> seen(nb, false);
        std::queue<int> q;
        q.push(holding[0]);
        seen[holding[0]] = true;
        int reached = 0;
        while (!q.empty()) {
            int b = q.front();
            q.pop();
            ++reached;
            for (int c : tree[b])
                if (!seen[c] && std::binary_search(d.bags[c].begin(), d.bags[c].end(), v)) {
                    seen[c] = true;
                    q.push(c);
                }
        }
        if (reached != static_cast<int>(holding.size()))
            return {false, 3, "occurrences of vertex " + std::to_string(v) + " are disconnected"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Parameter relations

std::vector<RelationCheck> parameter_relations(const Team& t, const Formula& f,
                                               const GraphOptions& gopts,
                                               const TreewidthOptions& topts) {
    ParameterReport p = parameters(f);
    std::vector<RelationCheck> out;
    auto pow2_at_least = [](long long e, long long x) {
        // x <= 2^e without overflow
        if (e >= 63) return true;
        return x <= (1ll << e);
    };
    auto pow2_or_minus1 = [](long long e) { return e < 62 ? (1ll << e) : -1; };

    // the counting bounds speak about teams over VAR(f): members that only
    // differ outside the formula collapse
    long long projected;
    {
        std::vector<int> positions;
        for (const auto& v : variables_of(f)) positions.push_back(t.var_index(v));
        std::set<std::vector<bool>> distinct;
        for (const auto& m : t.members()) {
            std::vector<bool> key;
            for (int pos : positions) key.push_back(m.get(pos));
            distinct.insert(std::move(key));
        }
        projected = static_cast<long long>(distinct.size());
    }
    out.push_back({"team-size <= 2^#variables", pow2_at_least(p.variable_count, projected),
                   false, projected, pow2_or_minus1(p.variable_count)});
    out.push_back({"team-size <= 2^formula-size", pow2_at_least(p.formula_size, projected),
                   false, projected, pow2_or_minus1(p.formula_size)});
    out.push_back({"formula-size <= 2^(2*formula-depth)",
                   pow2_at_least(2 * p.formula_depth, p.formula_size), false, p.formula_size,
                   pow2_or_minus1(2 * p.formula_depth)});

    RelationCheck tw{"gaifman-treewidth >= min(team-size, #variables)", false, false, 0, 0};
    Graph gg = gaifman_graph(t, f, gopts);
    if (gg.order() > topts.max_vertices) {
        tw.skipped = true;
    } else {
        tw.lhs = exact_treewidth(gg, topts);
        tw.rhs = std::min<long long>(t.size(), p.variable_count);
        tw.holds = tw.lhs >= tw.rhs;
    }
    out.push_back(tw);
    return out;
}

// ---------------------------------------------------------------------------
// Export formats

void write_graph(const Graph& g, std::ostream& out) {
    for (int v = 0; v < g.order(); ++v)
        out << "# vertex " << v << " " << g.labels[v] << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
}

void write_decomposition(const TreeDecomposition& d, std::ostream& out) {
    for (const auto& b : d.bags) {
        for (size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << "\n";
    }
    out << "\n";
    for (auto [a, b] : d.edges) out << a << " " << b << "\n";
}

} // namespace pdl
