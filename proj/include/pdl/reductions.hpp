#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

/// CNF with clauses of up to three DIMACS-signed literals over 1..num_vars.
struct CnfInstance {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

/// Loop-free undirected graph on vertices 0..num_vertices-1.
struct SimpleGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

struct McInstance {
    Team team;
    Formula formula;
};

/// 3SAT to model checking: one team member per clause over p_j/r_j variables,
/// formula \/_j (r_j & dep(;p_j)). The team satisfies the formula iff the CNF
/// is satisfiable; every dep atom is a constancy atom, so dep-arity is 0, and
/// the syntax circuit is a tree. Clauses that contain a literal and its
/// negation are dropped up front (they hold under every assignment and the
/// per-variable encoding cannot express them).
McInstance reduce_3sat(const CnfInstance& cnf);

/// 3-colourability to model checking: one team member per vertex encoding its
/// adjacency (x variables) and edge incidences (y tuples); formula is a
/// three-way split of /\_edges dep(y_edge; x_lower_endpoint), so the split
/// count is always 2. The team satisfies the formula iff the graph is
/// 3-colourable; the parts of a satisfying split are exactly colour classes.
McInstance reduce_3col(const SimpleGraph& g);

/// Truth-table satisfiability, num_vars <= 20.
bool cnf_brute(const CnfInstance& cnf);

/// Exhaustive 3-colouring search, num_vertices <= 10.
bool col_brute(const SimpleGraph& g);

/// DIMACS subset: optional c-comment lines, "p cnf <n> <m>", clauses as
/// whitespace-separated literals terminated by 0.
CnfInstance parse_dimacs(std::istream& in);

/// First line "n m", then m lines "u v" with 1-based vertex numbers.
SimpleGraph parse_graph(std::istream& in);

/// {"formula": "<rendered>", "team": {"variables": ..., "rows": ...}}
std::string instance_to_json(const McInstance& inst);
McInstance instance_from_json(const std::string& json_text);

} // namespace pdl
