#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pdl/semantics.hpp"
#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

// Bottom-up model checking, fixed-parameter tractable in the team size k:
// for every occurrence a of the syntax tree the algorithm keeps the label
// L_a = { P <= T : P |= a } as a bitset over the 2^k subteam masks. Leaves
// are filled by enumeration, And intersects, Or combines unions of label
// pairs (disjoint ones under strict semantics). The answer is T in L_root.

struct McOptions {
    SplitMode mode = SplitMode::Lax;
    BottomMode bottom = BottomMode::EmptyTeam;
    int max_team = 24;     // 2^k bitsets drive the cost; twice the brute cap
    bool parallel = false; // OpenMP over subteam ranges and label pairs
};

/// One split decision: at Or occurrence `occurrence`, the subteam `target`
/// decomposes into `left` and `right` (masks over team member indices).
struct SplitChoice {
    int occurrence;
    uint32_t target, left, right;
};

struct McResult {
    bool satisfied = false;
    // per-Or choices in pre-order, present when a certificate was requested
    // and the answer is positive; canonical: numerically least left part first
    std::optional<std::vector<SplitChoice>> certificate;
};

McResult mc_teamsize(const Team& t, const Formula& f, const McOptions& opts = {},
                     bool want_certificate = false);

/// All labels, one sorted mask list per occurrence (pre-order ids).
struct LabelTable {
    std::vector<std::vector<uint32_t>> labels;
};
LabelTable label_table(const Team& t, const Formula& f, const McOptions& opts = {});

} // namespace pdl
