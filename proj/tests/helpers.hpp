#pragma once

#include <string>
#include <vector>

#include "pdl/mc.hpp"
#include "pdl/semantics.hpp"
#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl::test {

/// Team from bit strings, e.g. team_of({"x","y"}, {"00","01","10","11"}).
inline Team team_of(std::vector<std::string> universe, const std::vector<std::string>& rows) {
    std::vector<std::vector<int>> bits;
    for (const auto& r : rows) {
        std::vector<int> row;
        for (char c : r) row.push_back(c == '1');
        bits.push_back(std::move(row));
    }
    return Team::from_rows(std::move(universe), bits);
}

inline const char* kFig2 = "(x3 | !x1) & (dep(x3;x4) | (x1 & x2))";
inline const char* kFig5 = "(x4&x1&!x2) & (((x1&x2)|dep(x3;x4)) & (x3|!x1))";

/// Fresh Formula value for a node observed through an OccurrenceList.
inline Formula reconstruct(const FormulaNode* n) {
    switch (n->kind) {
    case Kind::Top: return top();
    case Kind::Bot: return bot();
    case Kind::Var: return var(n->name);
    case Kind::NegVar: return negvar(n->name);
    case Kind::Dep: return dep(n->premise, n->conclusion);
    case Kind::NegDep: return negdep(n->premise, n->conclusion);
    case Kind::And: return conj(reconstruct(n->left.get()), reconstruct(n->right.get()));
    case Kind::Or: return disj(reconstruct(n->left.get()), reconstruct(n->right.get()));
    }
    throw Error("bad node");
}

/// All 16 teams over two variables, as subteams of the full team.
inline std::vector<Team> all_two_var_teams() {
    Team full = team_of({"x", "y"}, {"00", "01", "10", "11"});
    std::vector<Team> out;
    for (uint32_t m = 0; m < 16; ++m) out.push_back(full.subteam(m));
    return out;
}

/// Checks a split certificate: every Or part must satisfy its disjunct, parts
/// must union to the target (and be disjoint under strict semantics).
inline bool certificate_valid(const Team& t, const Formula& f,
                              const std::vector<SplitChoice>& cert, SplitMode mode,
                              BottomMode bottom = BottomMode::EmptyTeam) {
    OccurrenceList occ = flatten(f);
    size_t next = 0;
    EvalOptions opts;
    opts.mode = mode;
    opts.bottom = bottom;
    opts.max_team = std::max(12, t.size());

    // walk the tree the same way the extractor does
    struct Walker {
        const OccurrenceList& occ;
        const std::vector<SplitChoice>& cert;
        const Team& t;
        const EvalOptions& opts;
        SplitMode mode;
        size_t& next;
        bool ok = true;

        void visit(int id, uint32_t mask) {
            if (!ok) return;
            const FormulaNode* n = occ.node[id];
            if (n->kind == Kind::And) {
                visit(occ.left[id], mask);
                visit(occ.right[id], mask);
                return;
            }
            if (n->kind == Kind::Or) {
                if (next >= cert.size() || cert[next].occurrence != id) {
                    ok = false;
                    return;
                }
                SplitChoice c = cert[next++];
                if (c.target != mask || (c.left | c.right) != mask ||
                    (mode == SplitMode::Strict && (c.left & c.right))) {
                    ok = false;
                    return;
                }
                visit(occ.left[id], c.left);
                visit(occ.right[id], c.right);
                return;
            }
            // leaf: check satisfaction directly
            Formula leaf = subformulas_leaf(id);
            if (!evaluate_mask(t, leaf, mask, opts)) ok = false;
        }

        Formula subformulas_leaf(int id) const {
            const FormulaNode* n = occ.node[id];
            switch (n->kind) {
            case Kind::Top: return top();
            case Kind::Bot: return bot();
            case Kind::Var: return var(n->name);
            case Kind::NegVar: return negvar(n->name);
            case Kind::Dep: return dep(n->premise, n->conclusion);
            case Kind::NegDep: return negdep(n->premise, n->conclusion);
            default: throw Error("not a leaf");
            }
        }
    };

    uint32_t full = t.size() == 0 ? 0 : (uint32_t(1) << t.size()) - 1;
    Walker w{occ, cert, t, opts, mode, next};
    w.visit(0, full);
    return w.ok && next == cert.size();
}

} // namespace pdl::test
