#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdl/semantics.hpp"
#include "pdl/syntax.hpp"
#include "pdl/team.hpp"

namespace pdl {

// Satisfiability of a PDL formula asks for a nonempty satisfying team; by
// downward closure that is the same as a satisfying singleton, so the
// procedures here hunt for one assignment.

enum class TriVal : uint8_t { False = 0, True = 1, Conflict = 2 };

/// Partial mapping VAR -> {0, 1, conflict}, the label elements of the
/// splits-parameterised SAT procedure. The bottom constant and negated dep
/// atoms produce a poisoned assignment that no join can repair.
class PartialAssignment {
public:
    PartialAssignment() = default;
    static PartialAssignment unit(const std::string& var, bool value);
    static PartialAssignment contradiction();

    bool poisoned() const { return poisoned_; }
    bool consistent() const;
    std::optional<TriVal> value(const std::string& var) const;
    const std::vector<std::pair<std::string, TriVal>>& entries() const { return entries_; }

    bool operator==(const PartialAssignment& o) const {
        return poisoned_ == o.poisoned_ && entries_ == o.entries_;
    }

    std::string to_string() const; // {x1, !x2, x3^c}

private:
    std::vector<std::pair<std::string, TriVal>> entries_; // sorted by name
    bool poisoned_ = false;
    friend PartialAssignment join_conflict(const PartialAssignment&, const PartialAssignment&);
};

/// Conflict join: agreeing values pass through, disagreeing defined values
/// become conflict, conflict absorbs everything.
PartialAssignment join_conflict(const PartialAssignment& a, const PartialAssignment& b);

struct SatLabel {
    bool trivially_true = false; // the whole-label "1" of the procedure
    std::vector<PartialAssignment> items;
    size_t size() const { return trivially_true ? 1 : items.size(); }
};

struct SatLabelTable {
    std::vector<SatLabel> labels; // per occurrence, pre-order ids
    size_t max_label_size = 0;
};

struct SatOptions {
    int max_vars = 24;             // brute-force enumeration cap
    bool prune_conflicted = false; // drop inconsistent label elements eagerly
    bool parallel = false;         // OpenMP assignment/team scans
    BottomMode bottom = BottomMode::EmptyTeam;
    uint64_t msat_budget = uint64_t(1) << 21; // candidate-team cap for msat
};

using Witness = std::map<std::string, bool>;

/// Splits-parameterised SAT: bottom-up label computation with at most
/// 2^#splits partial assignments per label. Returns the first consistent
/// root element extended by 0 to all of VAR(f), or nullopt.
std::optional<Witness> sat_splits(const Formula& f, const SatOptions& opts = {});

/// Full label table of the run, for inspection and the label-size bound.
SatLabelTable sat_splits_table(const Formula& f, const SatOptions& opts = {});

/// Truth-table scan over VAR(f) in lexicographic order; first satisfying
/// singleton wins.
std::optional<Witness> sat_brute(const Formula& f, const SatOptions& opts = {});

/// Replaces dep atoms by T and negated dep atoms by F. The result is a
/// plain propositional formula with the same singleton satisfiability.
Formula dep_eliminate(const Formula& f);

/// Satisfying team of size exactly m over the given universe (defaults to
/// VAR(f)), lexicographically least by member-index combination, or nullopt.
/// m = 0 checks the empty team and m = 1 degenerates to SAT; throws when
/// m > 2^|universe| or the candidate count exceeds the budget.
std::optional<Team> msat(const Formula& f, long long m, const SatOptions& opts = {});
std::optional<Team> msat(const Formula& f, long long m, std::vector<std::string> universe,
                         const SatOptions& opts = {});

/// Team holding exactly the witness assignment.
Team singleton_team(const Witness& w);

} // namespace pdl
