#include "pdl/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>
#include <unordered_set>

#include "internal.hpp"

namespace pdl {

// ---------------------------------------------------------------------------
// PartialAssignment

namespace {

// merge of two sorted (key, TriVal) sequences with the conflict rule
template <typename K>
std::vector<std::pair<K, TriVal>> merge_conflict(const std::vector<std::pair<K, TriVal>>& a,
                                                 const std::vector<std::pair<K, TriVal>>& b) {
    std::vector<std::pair<K, TriVal>> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else if (b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            TriVal va = a[i].second, vb = b[j].second;
            TriVal v = (va == vb) ? va : TriVal::Conflict;
            if (va == TriVal::Conflict || vb == TriVal::Conflict) v = TriVal::Conflict;
            out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

} // namespace

PartialAssignment PartialAssignment::unit(const std::string& var, bool value) {
    PartialAssignment p;
    p.entries_.emplace_back(var, value ? TriVal::True : TriVal::False);
    return p;
}

PartialAssignment PartialAssignment::contradiction() {
    PartialAssignment p;
    p.poisoned_ = true;
    return p;
}

bool PartialAssignment::consistent() const {
    if (poisoned_) return false;
    for (const auto& [v, val] : entries_)
        if (val == TriVal::Conflict) return false;
    return true;
}

std::optional<TriVal> PartialAssignment::value(const std::string& var) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                               [](const auto& e, const std::string& v) { return e.first < v; });
    if (it == entries_.end() || it->first != var) return std::nullopt;
    return it->second;
}

std::string PartialAssignment::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, val] : entries_) {
        if (!first) s += ", ";
        first = false;
        if (val == TriVal::False) s += "!";
        s += v;
        if (val == TriVal::Conflict) s += "^c";
    }
    if (poisoned_) {
        if (!first) s += ", ";
        s += "F";
    }
    return s + "}";
}

PartialAssignment join_conflict(const PartialAssignment& a, const PartialAssignment& b) {
    PartialAssignment out;
    out.poisoned_ = a.poisoned_ || b.poisoned_;
    out.entries_ = merge_conflict(a.entries_, b.entries_);
    return out;
}

// ---------------------------------------------------------------------------
// Algorithm: SAT parameterised by the number of splits

namespace {

using detail::Compiled;
using detail::CompiledNode;

// internal label element: sorted (var id, TriVal) pairs
struct Pa {
    std::vector<std::pair<int, TriVal>> vals;
    bool poisoned = false;

    bool consistent() const {
        if (poisoned) return false;
        for (const auto& [v, x] : vals)
            if (x == TriVal::Conflict) return false;
        return true;
    }

    bool operator==(const Pa& o) const { return poisoned == o.poisoned && vals == o.vals; }

    size_t hash() const {
        size_t h = poisoned ? 0x9e3779b97f4a7c15ull : 0;
        for (const auto& [v, x] : vals)
            h = h * 1099511628211ull + (size_t(v) << 2) + static_cast<size_t>(x);
        return h;
    }
};

Pa join(const Pa& a, const Pa& b) {
    Pa out;
    out.poisoned = a.poisoned || b.poisoned;
    out.vals = merge_conflict(a.vals, b.vals);
    return out;
}

struct InternalLabel {
    bool tt = false;
    std::vector<Pa> items;
    size_t size() const { return tt ? 1 : items.size(); }
};

// label insertion with dedup: linear scan while small, hashes beyond that
struct Dedupe {
    std::vector<Pa>& items;
    std::unordered_set<size_t> hashes;

    explicit Dedupe(std::vector<Pa>& out) : items(out) {}

    void add(Pa&& p) {
        if (items.size() <= 32) {
            for (const Pa& q : items)
                if (q == p) return;
        } else {
            if (hashes.empty())
                for (const Pa& q : items) hashes.insert(q.hash());
            size_t h = p.hash();
            if (!hashes.insert(h).second) {
                for (const Pa& q : items) // hash collisions resolved exactly
                    if (q == p) return;
            }
        }
        items.push_back(std::move(p));
    }
};

struct SplitsSolver {
    std::vector<std::string> vars; // sorted VAR(f); ids are positions
    std::vector<InternalLabel> labels;
    size_t max_label_size = 0;
    const SatOptions& opts;

    explicit SplitsSolver(const SatOptions& o) : opts(o) {}

    void push_item(Pa&& p, Dedupe& seen) {
        if (opts.prune_conflicted && !p.consistent()) return;
        seen.add(std::move(p));
    }

    void run(const Formula& f) {
        vars = variables_of(f);
        std::unordered_map<std::string, int> id;
        for (size_t i = 0; i < vars.size(); ++i) id[vars[i]] = static_cast<int>(i);

        OccurrenceList occ = flatten(f);
        labels.assign(occ.size(), {});
        for (int i = occ.size() - 1; i >= 0; --i) {
            const FormulaNode* n = occ.node[i];
            InternalLabel& out = labels[i];
            switch (n->kind) {
            case Kind::Var:
            case Kind::NegVar:
                out.items.push_back(
                    {{{id[n->name], n->kind == Kind::Var ? TriVal::True : TriVal::False}}, false});
                break;
            case Kind::Top:
            case Kind::Dep:
                out.tt = true;
                break;
            case Kind::Bot:
            case Kind::NegDep:
                out.items.push_back({{}, true});
                break;
            case Kind::And:
            case Kind::Or: {
                const InternalLabel& l = labels[occ.left[i]];
                const InternalLabel& r = labels[occ.right[i]];
                bool is_and = n->kind == Kind::And;
                if (l.tt || r.tt) {
                    if (!is_and) {
                        out.tt = true; // empty split absorbs the junction
                    } else if (l.tt && r.tt) {
                        out.tt = true;
                    } else {
                        out = l.tt ? r : l;
                    }
                    break;
                }
                Dedupe seen(out.items);
                if (is_and) {
                    for (const Pa& a : l.items)
                        for (const Pa& b : r.items)
                            push_item(join(a, b), seen);
                } else {
                    for (const Pa& a : l.items) push_item(Pa(a), seen);
                    for (const Pa& b : r.items) push_item(Pa(b), seen);
                }
                break;
            }
            }
            max_label_size = std::max(max_label_size, out.size());
        }
    }

    std::optional<Witness> witness() const {
        const InternalLabel& root = labels[0];
        Witness w;
        for (const auto& v : vars) w[v] = false;
        if (root.tt) return w;
        for (const Pa& p : root.items)
            if (p.consistent()) {
                for (const auto& [v, val] : p.vals)
                    w[vars[v]] = val == TriVal::True;
                return w;
            }
        return std::nullopt;
    }

    PartialAssignment to_public(const Pa& p) const {
        PartialAssignment out = p.poisoned ? PartialAssignment::contradiction()
                                           : PartialAssignment();
        for (const auto& [v, val] : p.vals) {
            PartialAssignment u = PartialAssignment::unit(vars[v], val == TriVal::True);
            if (val == TriVal::Conflict)
                u = join_conflict(PartialAssignment::unit(vars[v], true),
                                  PartialAssignment::unit(vars[v], false));
            out = join_conflict(out, u);
        }
        return out;
    }
};

} // namespace

std::optional<Witness> sat_splits(const Formula& f, const SatOptions& opts) {
    SplitsSolver solver(opts);
    solver.run(f);
    return solver.witness();
}

SatLabelTable sat_splits_table(const Formula& f, const SatOptions& opts) {
    SplitsSolver solver(opts);
    solver.run(f);
    SatLabelTable table;
    table.max_label_size = solver.max_label_size;
    table.labels.reserve(solver.labels.size());
    for (const InternalLabel& l : solver.labels) {
        SatLabel out;
        out.trivially_true = l.tt;
        for (const Pa& p : l.items) out.items.push_back(solver.to_public(p));
        table.labels.push_back(std::move(out));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Brute-force SAT

namespace {

// Singleton-team evaluation compiled to universe bit positions. empty_true
// caches whether the empty team satisfies each occurrence, which is all the
// split rule needs on one-member teams.
struct SingletonEvaluator {
    Compiled c;
    std::vector<char> empty_true;

    SingletonEvaluator(const Team& base, const Formula& f, BottomMode bottom) {
        c = detail::compile(base, f);
        empty_true.resize(c.size());
        for (int i = c.size() - 1; i >= 0; --i) {
            const CompiledNode& n = c.nodes[i];
            switch (n.kind) {
            case Kind::Bot:
                empty_true[i] = bottom == BottomMode::EmptyTeam;
                break;
            case Kind::And:
            case Kind::Or:
                empty_true[i] = empty_true[n.left] && empty_true[n.right];
                break;
            default:
                empty_true[i] = true;
                break;
            }
        }
    }

    bool eval(const Assignment& s) const { return eval(0, s); }

    bool eval(int occ, const Assignment& s) const {
        const CompiledNode& n = c.nodes[occ];
        switch (n.kind) {
        case Kind::Top:
        case Kind::Dep:
            return true;
        case Kind::Bot:
        case Kind::NegDep:
            return false;
        case Kind::Var:
            return s.get(n.var);
        case Kind::NegVar:
            return !s.get(n.var);
        case Kind::And:
            return eval(n.left, s) && eval(n.right, s);
        case Kind::Or:
            return (empty_true[n.left] && eval(n.right, s)) ||
                   (eval(n.left, s) && empty_true[n.right]);
        }
        return false;
    }
};

} // namespace

std::optional<Witness> sat_brute(const Formula& f, const SatOptions& opts) {
    std::vector<std::string> vars = variables_of(f);
    int n = static_cast<int>(vars.size());
    if (n > opts.max_vars)
        throw CapExceeded("formula has " + std::to_string(n) + " variables, brute cap is " +
                          std::to_string(opts.max_vars));
    Team base(vars);
    SingletonEvaluator ev(base, f, opts.bottom);
    uint64_t total = uint64_t(1) << n;
    uint64_t hit = total;

    if (opts.parallel && total > 4096) {
        std::atomic<uint64_t> best{total};
        int64_t chunks = 256;
        uint64_t chunk = (total + chunks - 1) / chunks;
#pragma omp parallel for schedule(dynamic)
        for (int64_t ci = 0; ci < chunks; ++ci) {
            uint64_t lo = uint64_t(ci) * chunk, hi = std::min(total, lo + chunk);
            if (lo >= best.load(std::memory_order_relaxed)) continue;
            for (uint64_t v = lo; v < hi; ++v) {
                if (v >= best.load(std::memory_order_relaxed)) break;
                if (ev.eval(Assignment::from_index(n, v))) {
                    uint64_t cur = best.load(std::memory_order_relaxed);
                    while (v < cur && !best.compare_exchange_weak(cur, v)) {
                    }
                    break;
                }
            }
        }
        hit = best.load();
    } else {
        for (uint64_t v = 0; v < total; ++v)
            if (ev.eval(Assignment::from_index(n, v))) {
                hit = v;
                break;
            }
    }

    if (hit == total) return std::nullopt;
    Assignment a = Assignment::from_index(n, hit);
    Witness w;
    for (int i = 0; i < n; ++i) w[vars[i]] = a.get(i);
    return w;
}

Formula dep_eliminate(const Formula& f) {
    switch (f->kind) {
    case Kind::Dep:
        return top();
    case Kind::NegDep:
        return bot();
    case Kind::And:
        return conj(dep_eliminate(f->left), dep_eliminate(f->right));
    case Kind::Or:
        return disj(dep_eliminate(f->left), dep_eliminate(f->right));
    default:
        return f;
    }
}

// ---------------------------------------------------------------------------
// m-SAT

namespace {

std::optional<Team> msat_check_first(const Formula& f, const std::vector<std::string>& universe,
                                     long long m, const SatOptions& opts) {
    // lexicographically ordered index combinations over the 2^n assignments
    int n = static_cast<int>(universe.size());
    uint64_t total = uint64_t(1) << n;

    EvalOptions eopts;
    eopts.bottom = opts.bottom;
    eopts.max_team = std::max<int>(eopts.max_team, static_cast<int>(m));

    std::vector<uint64_t> idx(m);
    for (long long i = 0; i < m; ++i) idx[i] = i;
    for (;;) {
        std::vector<Assignment> members;
        members.reserve(m);
        for (uint64_t v : idx) members.push_back(Assignment::from_index(n, v));
        Team cand = Team::from_assignments(universe, std::move(members));
        if (evaluate(cand, f, eopts)) return cand;
        // next combination
        long long i = m - 1;
        while (i >= 0 && idx[i] == total - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (long long j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

uint64_t combination_count(uint64_t n, uint64_t m, uint64_t limit) {
    // C(n, m) clamped at limit to avoid overflow
    if (m > n) return 0;
    m = std::min(m, n - m);
    long double c = 1;
    for (uint64_t i = 1; i <= m; ++i) {
        c = c * static_cast<long double>(n - m + i) / static_cast<long double>(i);
        if (c > static_cast<long double>(limit) * 2) return limit + 1;
    }
    return static_cast<uint64_t>(c);
}

} // namespace

std::optional<Team> msat(const Formula& f, long long m, std::vector<std::string> universe,
                         const SatOptions& opts) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    for (const auto& v : variables_of(f))
        if (!std::binary_search(universe.begin(), universe.end(), v))
            throw UnknownVariable("universe misses formula variable '" + v + "'");
    int n = static_cast<int>(universe.size());
    if (n > opts.max_vars)
        throw CapExceeded("universe of " + std::to_string(n) + " variables exceeds cap " +
                          std::to_string(opts.max_vars));
    if (m < 0) throw Error("m must be non-negative");

    if (m == 0) {
        Team empty{universe};
        EvalOptions eopts;
        eopts.bottom = opts.bottom;
        if (evaluate(empty, f, eopts)) return empty;
        return std::nullopt;
    }
    uint64_t total = uint64_t(1) << n;
    if (static_cast<uint64_t>(m) > total)
        throw Error("no team of size " + std::to_string(m) + " exists over " + std::to_string(n) +
                    " variables");
    if (combination_count(total, static_cast<uint64_t>(m), opts.msat_budget) > opts.msat_budget)
        throw CapExceeded("m-SAT candidate count exceeds the scan budget");

    return msat_check_first(f, universe, m, opts);
}

std::optional<Team> msat(const Formula& f, long long m, const SatOptions& opts) {
    return msat(f, m, variables_of(f), opts);
}

Team singleton_team(const Witness& w) {
    std::vector<std::string> universe;
    std::vector<int> row;
    for (const auto& [v, b] : w) {
        universe.push_back(v);
        row.push_back(b ? 1 : 0);
    }
    return Team::from_rows(std::move(universe), {row});
}

} // namespace pdl
