#pragma once

#include <random>
#include <vector>

#include "pdl/reductions.hpp"
#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

using Rng = std::mt19937_64;

struct FormulaGen {
    int num_vars = 4;         // variable pool v1..v<num_vars>
    int max_arity = 2;        // dep premise length
    int max_conclusion = 2;   // dep conclusion length
    bool constants = true;    // allow T / F leaves
    bool negdep = true;       // allow !dep leaves
    double dep_ratio = 0.35;  // chance of a dep-atom leaf
    double or_ratio = 0.5;    // chance an inner node is a split
};

/// Random syntax tree with exactly `size` nodes when size is odd (binary
/// trees have odd node counts); even sizes round up.
Formula random_formula(Rng& rng, int size, const FormulaGen& gen = {});

/// Random syntax tree with exactly `splits` Or nodes; size rounds up to the
/// smallest feasible odd value.
Formula random_formula_with_splits(Rng& rng, int size, int splits, const FormulaGen& gen = {});

/// Random team of up to `size` distinct members over the universe.
Team random_team(Rng& rng, std::vector<std::string> universe, int size);

/// Random CNF with clauses of exactly <= 3 distinct, non-complementary
/// literals.
CnfInstance random_cnf(Rng& rng, int num_vars, int num_clauses);

SimpleGraph random_graph(Rng& rng, int num_vertices, double edge_prob);

} // namespace pdl
