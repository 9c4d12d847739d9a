#include "pdl/team.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace pdl {

// ---------------------------------------------------------------------------
// Assignment

Assignment Assignment::from_index(int width, uint64_t lex_index) {
    if (width > 63) throw CapExceeded("assignment index form needs width <= 63");
    Assignment a(width);
    for (int i = 0; i < width; ++i)
        a.set(i, (lex_index >> (width - 1 - i)) & 1);
    return a;
}

uint64_t Assignment::to_index() const {
    if (width_ > 63) throw CapExceeded("assignment index form needs width <= 63");
    uint64_t v = 0;
    for (int i = 0; i < width_; ++i)
        v = (v << 1) | static_cast<uint64_t>(get(i));
    return v;
}

std::vector<int> Assignment::to_row() const {
    std::vector<int> row(width_);
    for (int i = 0; i < width_; ++i) row[i] = get(i);
    return row;
}

std::string Assignment::to_string() const {
    std::string s(width_, '0');
    for (int i = 0; i < width_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

bool Assignment::operator<(const Assignment& o) const {
    if (width_ != o.width_) return width_ < o.width_;
    for (size_t b = 0; b < blocks_.size(); ++b) {
        uint64_t diff = blocks_[b] ^ o.blocks_[b];
        if (diff) {
            // lowest differing block bit = earliest universe position
            uint64_t low = diff & (~diff + 1);
            return (blocks_[b] & low) == 0;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Team

Team::Team(std::vector<std::string> universe) : universe_(std::move(universe)) {
    build_index();
}

void Team::build_index() {
    index_.clear();
    for (size_t i = 0; i < universe_.size(); ++i) {
        if (!is_identifier(universe_[i]) || universe_[i] == "T" || universe_[i] == "F")
            throw Error("invalid team variable name: '" + universe_[i] + "'");
        if (!index_.emplace(universe_[i], static_cast<int>(i)).second)
            throw Error("duplicate team variable: '" + universe_[i] + "'");
    }
}

Team Team::from_assignments(std::vector<std::string> universe, std::vector<Assignment> members) {
    Team t(std::move(universe));
    for (const auto& a : members)
        if (a.width() != t.width())
            throw Error("assignment width does not match universe size");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    t.members_ = std::move(members);
    return t;
}

Team Team::from_rows(std::vector<std::string> universe, const std::vector<std::vector<int>>& rows) {
    int width = static_cast<int>(universe.size());
    std::vector<Assignment> members;
    members.reserve(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != width)
            throw Error("row length " + std::to_string(row.size()) +
                        " does not match universe size " + std::to_string(width));
        Assignment a(width);
        for (int i = 0; i < width; ++i) {
            if (row[i] != 0 && row[i] != 1) throw Error("row cells must be 0 or 1");
            a.set(i, row[i] == 1);
        }
        members.push_back(std::move(a));
    }
    return from_assignments(std::move(universe), std::move(members));
}

int Team::var_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw UnknownVariable("variable '" + name + "' not in team universe");
    return it->second;
}

bool Team::has_var(const std::string& name) const { return index_.count(name) > 0; }

Team Team::subteam(uint32_t mask) const {
    Team t;
    t.universe_ = universe_;
    t.index_ = index_;
    for (int i = 0; i < size(); ++i)
        if (mask & (uint32_t(1) << i)) t.members_.push_back(members_[i]);
    return t;
}

std::vector<Assignment> all_assignments(const std::vector<std::string>& universe,
                                        const TeamOptions& opts) {
    int n = static_cast<int>(universe.size());
    if (n > opts.max_universe)
        throw CapExceeded("universe of " + std::to_string(n) +
                          " variables exceeds enumeration cap " + std::to_string(opts.max_universe));
    std::vector<Assignment> out;
    out.reserve(size_t(1) << n);
    for (uint64_t v = 0; v < (uint64_t(1) << n); ++v)
        out.push_back(Assignment::from_index(n, v));
    return out;
}

SubteamRange::SubteamRange(const Team& t, const TeamOptions& opts) : team_(&t) {
    if (t.size() > opts.max_subteams)
        throw CapExceeded("team of " + std::to_string(t.size()) +
                          " members exceeds subteam enumeration cap " +
                          std::to_string(opts.max_subteams));
}

ParameterReport parameters(const Formula& f, const Team& t) {
    ParameterReport r = parameters(f);
    r.team_size = t.size();
    return r;
}

// ---------------------------------------------------------------------------
// JSON / CSV

Team team_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad team JSON: ") + e.what());
    }
    if (!j.contains("variables") || !j.contains("rows"))
        throw IoError("team JSON needs \"variables\" and \"rows\"");
    std::vector<std::string> universe = j["variables"].get<std::vector<std::string>>();
    std::vector<std::vector<int>> rows = j["rows"].get<std::vector<std::vector<int>>>();
    return Team::from_rows(std::move(universe), rows);
}

std::string team_to_json(const Team& t) {
    nlohmann::json j;
    j["variables"] = t.universe();
    auto rows = nlohmann::json::array();
    for (const auto& m : t.members())
        rows.push_back(m.to_row());
    j["rows"] = std::move(rows);
    return j.dump();
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            size_t a = cell.find_first_not_of(" \t");
            size_t b = cell.find_last_not_of(" \t");
            cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
        }
        if (line.back() == ',') cells.push_back("");
        rows.push_back(std::move(cells));
    }
    return rows;
}

Team team_from_csv(std::istream& in) {
    auto rows = read_csv(in);
    if (rows.empty()) throw IoError("empty team CSV");
    std::vector<std::string> universe = rows[0];
    std::vector<std::vector<int>> body;
    for (size_t r = 1; r < rows.size(); ++r) {
        std::vector<int> row;
        for (const auto& cell : rows[r]) {
            if (cell != "0" && cell != "1")
                throw IoError("team CSV cell must be 0 or 1, got '" + cell + "'");
            row.push_back(cell == "1");
        }
        body.push_back(std::move(row));
    }
    return Team::from_rows(std::move(universe), body);
}

void team_to_csv(const Team& t, std::ostream& out) {
    for (size_t i = 0; i < t.universe().size(); ++i)
        out << (i ? "," : "") << t.universe()[i];
    out << "\n";
    for (const auto& m : t.members()) {
        for (int i = 0; i < m.width(); ++i)
            out << (i ? "," : "") << (m.get(i) ? 1 : 0);
        out << "\n";
    }
}

Team load_team(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open team file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        std::stringstream ss;
        ss << in.rdbuf();
        return team_from_json(ss.str());
    }
    return team_from_csv(in);
}

// ---------------------------------------------------------------------------
// Table encoding

namespace {

int code_width(size_t distinct) {
    int w = 0;
    while ((size_t(1) << w) < distinct) ++w;
    return std::max(w, 1);
}

} // namespace

EncodedTable encode_table(const std::vector<std::vector<std::string>>& rows_with_header) {
    if (rows_with_header.empty()) throw Error("empty table");
    if (rows_with_header.size() < 2) throw Error("table has a header but no rows");
    EncodedTable t;
    t.columns = rows_with_header[0];
    size_t ncols = t.columns.size();
    if (ncols == 0) throw Error("table has no columns");
    for (const auto& row : rows_with_header)
        if (row.size() != ncols) throw Error("ragged table row");

    t.codebooks.resize(ncols);
    std::vector<std::unordered_map<std::string, int>> codes(ncols);
    for (size_t r = 1; r < rows_with_header.size(); ++r)
        for (size_t c = 0; c < ncols; ++c) {
            const std::string& v = rows_with_header[r][c];
            if (codes[c].emplace(v, static_cast<int>(t.codebooks[c].size())).second)
                t.codebooks[c].push_back(v);
        }

    std::vector<std::string> universe;
    for (size_t c = 0; c < ncols; ++c) {
        int w = code_width(t.codebooks[c].size());
        t.widths.push_back(w);
        t.column_offset.push_back(static_cast<int>(universe.size()));
        for (int b = 1; b <= w; ++b) {
            std::string name = t.columns[c] + std::to_string(b);
            if (!is_identifier(name))
                throw Error("column '" + t.columns[c] + "' does not yield identifier variables");
            universe.push_back(std::move(name));
        }
    }
    {
        auto sorted = universe;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error("derived variable names collide; rename table columns");
    }
    t.variables = universe;

    int width = static_cast<int>(universe.size());
    std::vector<Assignment> members;
    for (size_t r = 1; r < rows_with_header.size(); ++r) {
        Assignment a(width);
        for (size_t c = 0; c < ncols; ++c) {
            int code = codes[c][rows_with_header[r][c]];
            int w = t.widths[c];
            for (int b = 0; b < w; ++b)
                a.set(t.column_offset[c] + b, (code >> (w - 1 - b)) & 1);
        }
        members.push_back(std::move(a));
    }
    t.team = Team::from_assignments(std::move(universe), std::move(members));
    return t;
}

EncodedTable encode_table_csv(std::istream& in) {
    auto rows = read_csv(in);
    if (rows.empty()) throw IoError("empty table CSV");
    return encode_table(rows);
}

int EncodedTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    throw UnknownVariable("unknown table column: '" + name + "'");
}

std::vector<std::string> EncodedTable::column_variables(const std::string& name) const {
    int c = column_index(name);
    std::vector<std::string> out;
    for (int b = 0; b < widths[c]; ++b)
        out.push_back(variables[column_offset[c] + b]);
    return out;
}

std::vector<std::string> EncodedTable::decode(const Assignment& a) const {
    std::vector<std::string> row;
    for (size_t c = 0; c < columns.size(); ++c) {
        int code = 0;
        for (int b = 0; b < widths[c]; ++b)
            code = (code << 1) | (a.get(column_offset[c] + b) ? 1 : 0);
        if (code >= static_cast<int>(codebooks[c].size()))
            throw Error("assignment does not decode to a table row");
        row.push_back(codebooks[c][code]);
    }
    return row;
}

Formula rewrite_dep_over_columns(const EncodedTable& t,
                                 const std::vector<std::string>& premise_columns,
                                 const std::vector<std::string>& conclusion_columns) {
    std::vector<std::string> premise, conclusion;
    for (const auto& col : premise_columns) {
        auto vars = t.column_variables(col);
        premise.insert(premise.end(), vars.begin(), vars.end());
    }
    for (const auto& col : conclusion_columns) {
        auto vars = t.column_variables(col);
        conclusion.insert(conclusion.end(), vars.begin(), vars.end());
    }
    return dep(std::move(premise), std::move(conclusion));
}

} // namespace pdl
