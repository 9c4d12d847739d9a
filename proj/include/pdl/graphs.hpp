#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

/// Simple undirected graph with labelled vertices.
struct Graph {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges; // u < v, sorted, deduplicated

    int order() const { return static_cast<int>(labels.size()); }
    void add_edge(int u, int v);
    void finish(); // sort + dedup edges, validate endpoints
    std::vector<std::vector<int>> adjacency() const;
};

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;     // sorted vertex ids
    std::vector<std::pair<int, int>> edges; // tree edges between bag indices
    int width() const;
};

struct GraphOptions {
    /// Also connect the two operands of a junction and every premise variable
    /// to every conclusion variable of a dep atom (the reading where ternary
    /// relation tuples induce child-child edges).
    bool triangles = false;
};

/// Graph of the hash-consed syntax circuit: one vertex per circuit node,
/// undirected parent-child edges.
Graph circuit_graph(const Formula& f, const GraphOptions& opts = {});

/// Circuit graph plus one vertex per team member, connected to every variable
/// vertex of the formula (the assignment-variable relations); team vertices
/// are pairwise non-adjacent.
Graph gaifman_graph(const Team& t, const Formula& f, const GraphOptions& opts = {});

enum class ElimMethod { MinFill, MinDegree };

/// Elimination-ordering heuristic; ties break towards the lowest vertex
/// index. Always returns a valid decomposition; width >= true treewidth.
TreeDecomposition tree_decompose(const Graph& g, ElimMethod method);

struct TreewidthOptions {
    int max_vertices = 12;
};

/// Minimum width over all elimination orderings, by dynamic programming over
/// vertex subsets. Empty graph: -1, edgeless: 0.
int exact_treewidth(const Graph& g, const TreewidthOptions& opts = {});

struct DecompositionCheck {
    bool ok = true;
    int violated = 0; // 1 = vertex coverage, 2 = edge coverage, 3 = connectivity
    std::string detail;
};
DecompositionCheck validate(const TreeDecomposition& d, const Graph& g);

/// One parameter relation evaluated on an MC instance.
struct RelationCheck {
    std::string name;
    bool holds = false;
    bool skipped = false;
    long long lhs = 0, rhs = 0;
};

/// Lemma-style parameter relations: team size vs 2^#variables and
/// 2^formula-size, formula size vs 4^depth, and the Gaifman-treewidth lower
/// bound min(team size, #variables), the last one skipped above the exact
/// treewidth cap. The counting bounds quantify over teams of assignments to
/// VAR(f), so the team is projected onto the formula's variables first; the
/// treewidth bound uses the team as given.
std::vector<RelationCheck> parameter_relations(const Team& t, const Formula& f,
                                               const GraphOptions& gopts = {},
                                               const TreewidthOptions& topts = {});

void write_graph(const Graph& g, std::ostream& out);
void write_decomposition(const TreeDecomposition& d, std::ostream& out);

} // namespace pdl
