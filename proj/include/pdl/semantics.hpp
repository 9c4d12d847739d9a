#pragma once

#include <optional>
#include <utility>

#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

/// Split-junction semantics: lax allows the two subteams to overlap, strict
/// requires a partition. PDL is downwards closed, so the two agree on every
/// formula in this fragment; both are exposed and tested.
enum class SplitMode { Lax, Strict };

/// T |= F ("bottom"). EmptyTeam mirrors the negated-dep clause: the empty team
/// satisfies F and nothing else does. Never makes F unsatisfiable by any team,
/// the literal reading of the satisfaction definition.
enum class BottomMode { EmptyTeam, Never };

struct EvalOptions {
    SplitMode mode = SplitMode::Lax;
    BottomMode bottom = BottomMode::EmptyTeam;
    int max_team = 12; // brute-force cap: splits enumerate 2^|T| subteams
    bool memo = true;  // memoise on (occurrence id, subteam mask)
};

/// Reference satisfaction test, by direct recursion over the definition.
/// Splits enumerate T1 <= T with T2 = T \ T1 in both modes; for lax this is
/// complete because any overlapping split can be disjointified downwards.
bool evaluate(const Team& t, const Formula& f, const EvalOptions& opts = {});
bool evaluate(const Team& t, const Formula& f, SplitMode mode);

/// Same, on the subteam of t selected by mask.
bool evaluate_mask(const Team& t, const Formula& f, uint32_t mask, const EvalOptions& opts = {});

/// Reference evaluation at every subteam of t in one pass (shared memo):
/// bit P of the result is evaluate_mask(t, f, P). Requires |t| <= 5.
uint32_t satisfaction_word(const Team& t, const Formula& f, const EvalOptions& opts = {});

/// Lax evaluation with the full 3^|T| enumeration of ordered covers
/// (T1, T2) with T1 u T2 = T. Exponentially slower; kept as the independent
/// check that the subset split rule loses nothing.
bool evaluate_lax_pairs(const Team& t, const Formula& f, const EvalOptions& opts = {});

struct DepCheck {
    bool holds;
    std::optional<std::pair<Assignment, Assignment>> witness; // first violating pair
};

/// Pairwise test for dep(premise; conclusion) on t; on failure reports the
/// first violating member pair in team order.
DepCheck check_dep(const Team& t, const std::vector<std::string>& premise,
                   const std::vector<std::string>& conclusion);

/// Tests T |= f  <=>  {s} |= f for all s in T, on each probe team. A tester
/// over the provided probes, not a decision procedure.
bool is_flat(const Formula& f, const std::vector<Team>& probes, const EvalOptions& opts = {});

/// Verifies the 2-coherence of a dependence atom on t: the atom holds on t
/// iff it holds on every subteam of at most two members.
bool is_2coherent_atom(const std::vector<std::string>& premise,
                       const std::vector<std::string>& conclusion, const Team& t);

} // namespace pdl
