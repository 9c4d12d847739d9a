#include "pdl/reductions.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pdl {

// ---------------------------------------------------------------------------
// 3SAT reduction

McInstance reduce_3sat(const CnfInstance& cnf) {
    int n = cnf.num_vars;
    if (n < 1) throw Error("CNF needs at least one variable");
    if (cnf.clauses.empty()) throw Error("empty CNF");

    std::vector<std::vector<int>> clauses;
    for (const auto& raw : cnf.clauses) {
        std::set<int> lits(raw.begin(), raw.end());
        if (lits.count(0)) throw Error("literal 0 in clause");
        for (int lit : lits)
            if (std::abs(lit) > n)
                throw Error("literal " + std::to_string(lit) + " out of range");
        if (lits.empty()) throw Error("empty clause");
        if (lits.size() > 3) throw Error("clause has more than three literals");
        bool tautology = false;
        for (int lit : lits)
            if (lits.count(-lit)) tautology = true;
        if (tautology) continue; // satisfied by every assignment
        clauses.emplace_back(lits.begin(), lits.end());
    }

    std::vector<std::string> universe;
    for (int j = 1; j <= n; ++j) universe.push_back("p" + std::to_string(j));
    for (int j = 1; j <= n; ++j) universe.push_back("r" + std::to_string(j));

    std::vector<std::vector<int>> rows;
    for (const auto& clause : clauses) {
        std::vector<int> row(2 * n, 0);
        for (int lit : clause) {
            int j = std::abs(lit);
            row[n + j - 1] = 1;            // r_j
            row[j - 1] = lit > 0 ? 1 : 0;  // p_j
        }
        rows.push_back(std::move(row));
    }

    // \/_{j=1..n} (r_j & dep(;p_j)), nested to the right
    Formula f = nullptr;
    for (int j = n; j >= 1; --j) {
        Formula part = conj(var("r" + std::to_string(j)), dep({}, {"p" + std::to_string(j)}));
        f = f ? disj(std::move(part), std::move(f)) : std::move(part);
    }
    return {Team::from_rows(std::move(universe), rows), std::move(f)};
}

// ---------------------------------------------------------------------------
// 3COL reduction

namespace {

std::string yvar(int edge, int vertex) { // 1-based pair
    return "y" + std::to_string(edge) + "_" + std::to_string(vertex);
}

} // namespace

McInstance reduce_3col(const SimpleGraph& g) {
    int n = g.num_vertices;
    int m = static_cast<int>(g.edges.size());
    if (n < 1) throw Error("graph needs at least one vertex");
    for (auto [u, v] : g.edges) {
        if (u == v) throw Error("loop edge on vertex " + std::to_string(u + 1));
        if (u < 0 || v >= n) throw Error("edge endpoint out of range");
    }

    std::vector<std::string> universe;
    for (int i = 1; i <= n; ++i) universe.push_back("x" + std::to_string(i));
    for (int l = 1; l <= m; ++l)
        for (int k = 1; k <= n; ++k) universe.push_back(yvar(l, k));

    auto x_pos = [&](int v) { return v; };                        // 0-based vertex
    auto y_pos = [&](int l, int k) { return n + l * n + k; };     // 0-based edge/vertex

    std::vector<std::vector<int>> rows(n, std::vector<int>(n + m * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < m; ++l) {
            auto [u, v] = g.edges[l];
            if (u == i || v == i) {
                for (int k = 0; k < n; ++k) rows[i][y_pos(l, k)] = 1; // incident: all ones
            } else {
                for (int k = 0; k < n; ++k) rows[i][y_pos(l, k)] = k == i ? 0 : 1;
            }
        }
    }
    for (auto [u, v] : g.edges) {
        rows[u][x_pos(v)] = 1;
        rows[v][x_pos(u)] = 1;
    }

    // one dep per edge over the y tuple and the lower endpoint, and-chained
    // to the right; three identical disjuncts give exactly two splits
    auto colour_class_formula = [&]() -> Formula {
        Formula f = nullptr;
        for (int l = m - 1; l >= 0; --l) {
            auto [u, v] = g.edges[l];
            int lower = std::min(u, v);
            std::vector<std::string> premise;
            for (int k = 1; k <= n; ++k) premise.push_back(yvar(l + 1, k));
            Formula atom = dep(std::move(premise), {"x" + std::to_string(lower + 1)});
            f = f ? conj(std::move(atom), std::move(f)) : std::move(atom);
        }
        return f ? f : top(); // edgeless graph: every split works
    };
    Formula phi = disj(colour_class_formula(),
                       disj(colour_class_formula(), colour_class_formula()));

    return {Team::from_rows(std::move(universe), rows), std::move(phi)};
}

// ---------------------------------------------------------------------------
// Oracles

bool cnf_brute(const CnfInstance& cnf) {
    if (cnf.num_vars > 20) throw CapExceeded("cnf_brute capped at 20 variables");
    for (const auto& clause : cnf.clauses)
        if (clause.empty()) return false;
    uint64_t total = uint64_t(1) << cnf.num_vars;
    for (uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (const auto& clause : cnf.clauses) {
            bool sat = false;
            for (int lit : clause) {
                bool val = (a >> (std::abs(lit) - 1)) & 1;
                if ((lit > 0) == val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

namespace {

bool colour_rec(const std::vector<std::vector<int>>& adj, std::vector<int>& colour, int v) {
    if (v == static_cast<int>(colour.size())) return true;
    for (int c = 0; c < 3; ++c) {
        bool ok = true;
        for (int u : adj[v])
            if (u < v && colour[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        colour[v] = c;
        if (colour_rec(adj, colour, v + 1)) return true;
    }
    colour[v] = -1;
    return false;
}

} // namespace

bool col_brute(const SimpleGraph& g) {
    if (g.num_vertices > 10) throw CapExceeded("col_brute capped at 10 vertices");
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (auto [u, v] : g.edges) {
        if (u == v) return false; // a loop is never colourable
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> colour(g.num_vertices, -1);
    return colour_rec(adj, colour, 0);
}

// ---------------------------------------------------------------------------
// Input formats

CnfInstance parse_dimacs(std::istream& in) {
    CnfInstance cnf;
    std::string line;
    bool have_header = false;
    int expected_clauses = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream ls(line);
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.num_vars >> expected_clauses) || fmt != "cnf")
                throw IoError("bad DIMACS header: " + line);
            have_header = true;
            continue;
        }
        if (!have_header) throw IoError("DIMACS clause before 'p cnf' header");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw IoError("missing DIMACS header");
    if (!current.empty()) throw IoError("unterminated DIMACS clause");
    if (expected_clauses >= 0 && expected_clauses != static_cast<int>(cnf.clauses.size()))
        throw IoError("DIMACS header promises " + std::to_string(expected_clauses) +
                      " clauses, file has " + std::to_string(cnf.clauses.size()));
    return cnf;
}

SimpleGraph parse_graph(std::istream& in) {
    SimpleGraph g;
    int m;
    if (!(in >> g.num_vertices >> m)) throw IoError("graph file needs 'n m' on the first line");
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw IoError("graph file ends before edge " + std::to_string(i + 1));
        if (u < 1 || u > g.num_vertices || v < 1 || v > g.num_vertices)
            throw IoError("edge endpoint out of range: " + std::to_string(u) + " " +
                          std::to_string(v));
        g.edges.emplace_back(u - 1, v - 1);
    }
    return g;
}

std::string instance_to_json(const McInstance& inst) {
    nlohmann::json j;
    j["formula"] = render(inst.formula);
    j["team"] = nlohmann::json::parse(team_to_json(inst.team));
    return j.dump(2);
}

McInstance instance_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad instance JSON: ") + e.what());
    }
    return {team_from_json(j["team"].dump()), parse(j["formula"].get<std::string>())};
}

} // namespace pdl
