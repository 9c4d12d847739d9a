#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdl/errors.hpp"
#include "pdl/syntax.hpp"

namespace pdl {

/// Total assignment over an ordered variable universe, one bit per variable.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int width) : width_(width), blocks_((width + 63) / 64, 0) {}

    /// Assignment whose bit string, read universe-first, is the big-endian
    /// binary expansion of lex_index. Requires width <= 63.
    static Assignment from_index(int width, uint64_t lex_index);

    int width() const { return width_; }
    bool get(int i) const { return (blocks_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) blocks_[i >> 6] |= m; else blocks_[i >> 6] &= ~m;
    }

    /// Big-endian index, inverse of from_index. Requires width <= 63.
    uint64_t to_index() const;

    std::vector<int> to_row() const;
    std::string to_string() const; // e.g. "0110"

    bool operator==(const Assignment& o) const {
        return width_ == o.width_ && blocks_ == o.blocks_;
    }
    /// Lexicographic over (bit 0, bit 1, ...).
    bool operator<(const Assignment& o) const;

private:
    int width_ = 0;
    std::vector<uint64_t> blocks_;
};

/// A set of assignments over a shared universe, deduplicated and kept in
/// lexicographic order so member indices are reproducible.
class Team {
public:
    Team() = default;
    explicit Team(std::vector<std::string> universe);

    static Team from_rows(std::vector<std::string> universe,
                          const std::vector<std::vector<int>>& rows);
    static Team from_assignments(std::vector<std::string> universe,
                                 std::vector<Assignment> members);

    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<Assignment>& members() const { return members_; }
    const Assignment& member(int i) const { return members_[i]; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    int width() const { return static_cast<int>(universe_.size()); }

    /// Index of a universe variable; throws UnknownVariable.
    int var_index(const std::string& name) const;
    bool has_var(const std::string& name) const;

    /// Subteam selected by a bitmask over member indices.
    Team subteam(uint32_t mask) const;

    bool operator==(const Team& o) const {
        return universe_ == o.universe_ && members_ == o.members_;
    }

private:
    std::vector<std::string> universe_;
    std::vector<Assignment> members_;
    std::unordered_map<std::string, int> index_;
    void build_index();
};

struct TeamOptions {
    int max_universe = 24; // cap for full-universe enumeration
    int max_subteams = 20; // cap for powerset enumeration
};

/// All 2^|universe| assignments in lexicographic order.
std::vector<Assignment> all_assignments(const std::vector<std::string>& universe,
                                        const TeamOptions& opts = {});

/// All 2^|t| subteams, in ascending member-mask order.
class SubteamRange {
public:
    SubteamRange(const Team& t, const TeamOptions& opts = {});

    class iterator {
    public:
        iterator(const Team* t, uint64_t mask) : t_(t), mask_(mask) {}
        Team operator*() const { return t_->subteam(static_cast<uint32_t>(mask_)); }
        iterator& operator++() { ++mask_; return *this; }
        bool operator!=(const iterator& o) const { return mask_ != o.mask_; }
    private:
        const Team* t_;
        uint64_t mask_;
    };

    iterator begin() const { return {team_, 0}; }
    iterator end() const { return {team_, uint64_t(1) << team_->size()}; }
    uint64_t count() const { return uint64_t(1) << team_->size(); }

private:
    const Team* team_;
};
inline SubteamRange subteams(const Team& t, const TeamOptions& opts = {}) {
    return SubteamRange(t, opts);
}

// --- file formats -----------------------------------------------------------

/// {"variables": ["x","y"], "rows": [[0,1],[1,0]]}
Team team_from_json(const std::string& json_text);
std::string team_to_json(const Team& t);

/// Header line of variable names, body rows of 0/1 cells.
Team team_from_csv(std::istream& in);
void team_to_csv(const Team& t, std::ostream& out);

/// Loads by extension: .json or .csv.
Team load_team(const std::string& path);

// --- relational-table encoding ----------------------------------------------

// Binary encoding of a string-valued table: each column gets
// ceil(log2(#distinct values)) bits (at least one), codes assigned in
// first-appearance order, big-endian within the column. Rows become
// assignments; the team deduplicates repeated rows.
struct EncodedTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> codebooks; // per column, code = index
    std::vector<int> widths;                         // bits per column
    std::vector<std::string> variables;              // derived names, column-major
    std::vector<int> column_offset;                  // first variable of each column
    Team team;

    int column_index(const std::string& name) const;
    std::vector<std::string> column_variables(const std::string& name) const;
    /// Decode a team member back to its source row.
    std::vector<std::string> decode(const Assignment& a) const;
};

EncodedTable encode_table(const std::vector<std::vector<std::string>>& rows_with_header);
EncodedTable encode_table_csv(std::istream& in);

/// Single dep atom over the bit variables of the named columns.
Formula rewrite_dep_over_columns(const EncodedTable& t,
                                 const std::vector<std::string>& premise_columns,
                                 const std::vector<std::string>& conclusion_columns);

std::vector<std::vector<std::string>> read_csv(std::istream& in);

} // namespace pdl
