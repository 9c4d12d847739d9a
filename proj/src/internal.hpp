#pragma once

// Shared helpers for the evaluators: formulas compiled against a team's
// universe (occurrence-indexed, variable names resolved to positions).

#include <cstdint>
#include <vector>

#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl::detail {

struct CompiledNode {
    Kind kind;
    int var = -1;                         // Var / NegVar
    std::vector<int> premise, conclusion; // Dep / NegDep
    int left = -1, right = -1;            // occurrence ids
};

struct Compiled {
    std::vector<CompiledNode> nodes; // pre-order; 0 is the root
    int size() const { return static_cast<int>(nodes.size()); }
};

inline Compiled compile(const Team& t, const Formula& f) {
    OccurrenceList occ = flatten(f);
    Compiled c;
    c.nodes.resize(occ.size());
    for (int i = 0; i < occ.size(); ++i) {
        const FormulaNode* n = occ.node[i];
        CompiledNode& out = c.nodes[i];
        out.kind = n->kind;
        out.left = occ.left[i];
        out.right = occ.right[i];
        switch (n->kind) {
        case Kind::Var:
        case Kind::NegVar:
            out.var = t.var_index(n->name);
            break;
        case Kind::Dep:
        case Kind::NegDep:
            for (const auto& v : n->premise) out.premise.push_back(t.var_index(v));
            for (const auto& v : n->conclusion) out.conclusion.push_back(t.var_index(v));
            break;
        default:
            break;
        }
    }
    return c;
}

/// Bitmask over team members whose assignment sets variable v to 1.
inline uint32_t ones_mask(const Team& t, int v) {
    uint32_t m = 0;
    for (int i = 0; i < t.size(); ++i)
        if (t.member(i).get(v)) m |= uint32_t(1) << i;
    return m;
}

inline bool members_agree(const Team& t, int i, int j, const std::vector<int>& vars) {
    for (int v : vars)
        if (t.member(i).get(v) != t.member(j).get(v)) return false;
    return true;
}

/// viol[i] = mask of members j that violate dep(premise; conclusion) with i.
inline std::vector<uint32_t> dep_violation_masks(const Team& t, const std::vector<int>& premise,
                                                 const std::vector<int>& conclusion) {
    int k = t.size();
    std::vector<uint32_t> viol(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (members_agree(t, i, j, premise) && !members_agree(t, i, j, conclusion)) {
                viol[i] |= uint32_t(1) << j;
                viol[j] |= uint32_t(1) << i;
            }
    return viol;
}

/// Enumerates submasks of m in ascending numeric order, including 0 and m.
template <typename F>
inline void for_each_submask(uint32_t m, F&& fn) {
    uint32_t s = 0;
    for (;;) {
        fn(s);
        if (s == m) break;
        s = (s - m) & m;
    }
}

} // namespace pdl::detail
