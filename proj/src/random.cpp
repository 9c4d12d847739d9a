#include "pdl/random.hpp"

#include <algorithm>

namespace pdl {

namespace {

std::string vname(int i) { return "v" + std::to_string(i + 1); }

std::vector<std::string> pick_vars(Rng& rng, int pool, int count) {
    std::vector<int> idx(pool);
    for (int i = 0; i < pool; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(vname(idx[i]));
    return out;
}

Formula random_leaf(Rng& rng, const FormulaGen& gen) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> pick_var(0, gen.num_vars - 1);
    if (coin(rng) < gen.dep_ratio) {
        std::uniform_int_distribution<int> parity(0, gen.negdep ? 7 : 8);
        std::uniform_int_distribution<int> plen(0, std::min(gen.max_arity, gen.num_vars));
        std::uniform_int_distribution<int> qlen(1, std::min(gen.max_conclusion, gen.num_vars));
        auto premise = pick_vars(rng, gen.num_vars, plen(rng));
        auto conclusion = pick_vars(rng, gen.num_vars, qlen(rng));
        if (gen.negdep && parity(rng) == 0) return negdep(premise, conclusion);
        return dep(premise, conclusion);
    }
    int r = std::uniform_int_distribution<int>(0, gen.constants ? 9 : 7)(rng);
    if (r == 8) return top();
    if (r == 9) return bot();
    std::string v = vname(pick_var(rng));
    return r % 2 ? negvar(v) : var(v);
}

// exactly `leaves` leaf slots, Or nodes forced on `or_nodes` of the inner slots
Formula build_tree(Rng& rng, int leaves, int or_nodes, const FormulaGen& gen) {
    if (leaves == 1) return random_leaf(rng, gen);
    // split leaves between the children uniformly
    std::uniform_int_distribution<int> cut(1, leaves - 1);
    int left_leaves = cut(rng);
    int right_leaves = leaves - left_leaves;
    int left_inner = left_leaves - 1, right_inner = right_leaves - 1;

    bool this_or;
    int remaining_inner = left_inner + right_inner; // not counting this node
    if (or_nodes > remaining_inner) {
        this_or = true; // must spend one here to fit the rest below
    } else if (or_nodes == 0) {
        this_or = false;
    } else {
        this_or = std::uniform_real_distribution<double>(0, 1)(rng) < gen.or_ratio;
    }
    int remaining_or = or_nodes - (this_or ? 1 : 0);

    // distribute remaining Or nodes feasibly
    int lo = std::max(0, remaining_or - right_inner);
    int hi = std::min(left_inner, remaining_or);
    int left_or = lo == hi ? lo : std::uniform_int_distribution<int>(lo, hi)(rng);
    Formula l = build_tree(rng, left_leaves, left_or, gen);
    Formula r = build_tree(rng, right_leaves, remaining_or - left_or, gen);
    return this_or ? disj(std::move(l), std::move(r)) : conj(std::move(l), std::move(r));
}

} // namespace

Formula random_formula(Rng& rng, int size, const FormulaGen& gen) {
    int leaves = std::max(1, (size + 1) / 2);
    int inner = leaves - 1;
    std::binomial_distribution<int> ors(inner, gen.or_ratio);
    return build_tree(rng, leaves, ors(rng), gen);
}

Formula random_formula_with_splits(Rng& rng, int size, int splits, const FormulaGen& gen) {
    int leaves = std::max(splits + 1, (size + 1) / 2);
    return build_tree(rng, leaves, splits, gen);
}

Team random_team(Rng& rng, std::vector<std::string> universe, int size) {
    int n = static_cast<int>(universe.size());
    if (n > 62) throw CapExceeded("random_team supports up to 62 variables");
    uint64_t total = uint64_t(1) << n;
    std::vector<Assignment> members;
    if (total <= 4096) {
        std::vector<uint64_t> all(total);
        for (uint64_t i = 0; i < total; ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        size = std::min<int>(size, static_cast<int>(total));
        for (int i = 0; i < size; ++i) members.push_back(Assignment::from_index(n, all[i]));
    } else {
        std::uniform_int_distribution<uint64_t> pick(0, total - 1);
        for (int i = 0; i < size; ++i) members.push_back(Assignment::from_index(n, pick(rng)));
    }
    return Team::from_assignments(std::move(universe), std::move(members));
}

CnfInstance random_cnf(Rng& rng, int num_vars, int num_clauses) {
    CnfInstance cnf;
    cnf.num_vars = num_vars;
    std::uniform_int_distribution<int> len(1, std::min(3, num_vars));
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < num_clauses; ++i) {
        int k = len(rng);
        std::vector<int> vars(num_vars);
        for (int v = 0; v < num_vars; ++v) vars[v] = v + 1;
        std::shuffle(vars.begin(), vars.end(), rng);
        std::vector<int> clause;
        for (int j = 0; j < k; ++j) clause.push_back(sign(rng) ? vars[j] : -vars[j]);
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

SimpleGraph random_graph(Rng& rng, int num_vertices, double edge_prob) {
    SimpleGraph g;
    g.num_vertices = num_vertices;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < num_vertices; ++u)
        for (int v = u + 1; v < num_vertices; ++v)
            if (coin(rng) < edge_prob) g.edges.emplace_back(u, v);
    return g;
}

} // namespace pdl
