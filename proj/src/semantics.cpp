#include "pdl/semantics.hpp"

#include "internal.hpp"

namespace pdl {

namespace {

using detail::Compiled;
using detail::CompiledNode;

struct Evaluator {
    const Team& t;
    Compiled c;
    EvalOptions opts;
    // memo[occ][mask]: -1 unknown, else 0/1
    std::vector<std::vector<int8_t>> memo;

    Evaluator(const Team& team, const Formula& f, const EvalOptions& o) : t(team), opts(o) {
        if (t.size() > opts.max_team)
            throw CapExceeded("team of " + std::to_string(t.size()) +
                              " members exceeds brute-force cap " + std::to_string(opts.max_team));
        if (t.size() > 31) throw CapExceeded("subteam masks support at most 31 members");
        c = detail::compile(t, f);
        if (opts.memo)
            memo.assign(c.size(), std::vector<int8_t>(size_t(1) << t.size(), -1));
    }

    bool leaf(const CompiledNode& n, uint32_t mask) const {
        switch (n.kind) {
        case Kind::Top:
            return true;
        case Kind::Bot:
            return opts.bottom == BottomMode::EmptyTeam && mask == 0;
        case Kind::NegDep:
            return mask == 0;
        case Kind::Var:
        case Kind::NegVar: {
            bool want = n.kind == Kind::Var;
            for (int i = 0; i < t.size(); ++i)
                if ((mask >> i) & 1)
                    if (t.member(i).get(n.var) != want) return false;
            return true;
        }
        case Kind::Dep: {
            for (int i = 0; i < t.size(); ++i) {
                if (!((mask >> i) & 1)) continue;
                for (int j = i + 1; j < t.size(); ++j) {
                    if (!((mask >> j) & 1)) continue;
                    if (detail::members_agree(t, i, j, n.premise) &&
                        !detail::members_agree(t, i, j, n.conclusion))
                        return false;
                }
            }
            return true;
        }
        default:
            throw Error("not a leaf");
        }
    }

    bool eval(int occ, uint32_t mask) {
        if (opts.memo) {
            int8_t& slot = memo[occ][mask];
            if (slot >= 0) return slot != 0;
            bool r = eval_raw(occ, mask);
            slot = r ? 1 : 0;
            return r;
        }
        return eval_raw(occ, mask);
    }

    bool eval_raw(int occ, uint32_t mask) {
        const CompiledNode& n = c.nodes[occ];
        switch (n.kind) {
        case Kind::And:
            return eval(n.left, mask) && eval(n.right, mask);
        case Kind::Or: {
            // T1 <= T, T2 = T \ T1; complete for lax by downward closure
            bool found = false;
            detail::for_each_submask(mask, [&](uint32_t sub) {
                if (!found && eval(n.left, sub) && eval(n.right, mask & ~sub)) found = true;
            });
            return found;
        }
        default:
            return leaf(n, mask);
        }
    }
};

} // namespace

bool evaluate_mask(const Team& t, const Formula& f, uint32_t mask, const EvalOptions& opts) {
    Evaluator ev(t, f, opts);
    return ev.eval(0, mask);
}

uint32_t satisfaction_word(const Team& t, const Formula& f, const EvalOptions& opts) {
    if (t.size() > 5) throw CapExceeded("satisfaction_word supports at most 5 members");
    Evaluator ev(t, f, opts);
    uint32_t word = 0;
    for (uint32_t mask = 0; mask < (uint32_t(1) << t.size()); ++mask)
        if (ev.eval(0, mask)) word |= uint32_t(1) << mask;
    return word;
}

bool evaluate(const Team& t, const Formula& f, const EvalOptions& opts) {
    uint32_t full = t.size() == 0 ? 0 : (uint32_t(1) << t.size()) - 1;
    return evaluate_mask(t, f, full, opts);
}

bool evaluate(const Team& t, const Formula& f, SplitMode mode) {
    EvalOptions opts;
    opts.mode = mode;
    return evaluate(t, f, opts);
}

bool evaluate_lax_pairs(const Team& t, const Formula& f, const EvalOptions& opts) {
    struct PairEvaluator : Evaluator {
        using Evaluator::Evaluator;

        // reuses the base memo table; eval() is never called on this type
        bool eval2(int occ, uint32_t mask) {
            if (opts.memo) {
                int8_t& slot = memo[occ][mask];
                if (slot >= 0) return slot != 0;
                bool r = eval2_raw(occ, mask);
                slot = r ? 1 : 0;
                return r;
            }
            return eval2_raw(occ, mask);
        }

        bool eval2_raw(int occ, uint32_t mask) {
            const CompiledNode& n = c.nodes[occ];
            switch (n.kind) {
            case Kind::And:
                return eval2(n.left, mask) && eval2(n.right, mask);
            case Kind::Or: {
                // every ordered cover: each member goes left, right, or both
                std::vector<int> in;
                for (int i = 0; i < t.size(); ++i)
                    if ((mask >> i) & 1) in.push_back(i);
                size_t k = in.size();
                std::vector<int> choice(k, 0);
                for (;;) {
                    uint32_t m1 = 0, m2 = 0;
                    for (size_t i = 0; i < k; ++i) {
                        if (choice[i] != 1) m1 |= uint32_t(1) << in[i];
                        if (choice[i] != 0) m2 |= uint32_t(1) << in[i];
                    }
                    if (eval2(n.left, m1) && eval2(n.right, m2)) return true;
                    size_t i = 0;
                    while (i < k && choice[i] == 2) choice[i++] = 0;
                    if (i == k) return false;
                    ++choice[i];
                }
            }
            default:
                return leaf(n, mask);
            }
        }
    };
    PairEvaluator ev(t, f, opts);
    uint32_t full = t.size() == 0 ? 0 : (uint32_t(1) << t.size()) - 1;
    return ev.eval2(0, full);
}

DepCheck check_dep(const Team& t, const std::vector<std::string>& premise,
                   const std::vector<std::string>& conclusion) {
    std::vector<int> p, q;
    for (const auto& v : premise) p.push_back(t.var_index(v));
    for (const auto& v : conclusion) q.push_back(t.var_index(v));
    for (int i = 0; i < t.size(); ++i)
        for (int j = i + 1; j < t.size(); ++j)
            if (detail::members_agree(t, i, j, p) && !detail::members_agree(t, i, j, q))
                return {false, std::make_pair(t.member(i), t.member(j))};
    return {true, std::nullopt};
}

bool is_flat(const Formula& f, const std::vector<Team>& probes, const EvalOptions& opts) {
    for (const Team& t : probes) {
        bool whole = evaluate(t, f, opts);
        bool all_singletons = true;
        for (int i = 0; i < t.size() && all_singletons; ++i)
            all_singletons = evaluate_mask(t, f, uint32_t(1) << i, opts);
        if (whole != all_singletons) return false;
    }
    return true;
}

bool is_2coherent_atom(const std::vector<std::string>& premise,
                       const std::vector<std::string>& conclusion, const Team& t) {
    Formula atom = dep(premise, conclusion);
    EvalOptions opts;
    opts.max_team = std::max(opts.max_team, t.size());
    opts.memo = false; // a single atom gains nothing from the memo table
    bool whole = evaluate(t, atom, opts);
    bool pairs = true;
    for (int i = 0; i < t.size() && pairs; ++i)
        for (int j = i; j < t.size() && pairs; ++j)
            pairs = evaluate_mask(t, atom, (uint32_t(1) << i) | (uint32_t(1) << j), opts);
    return whole == pairs;
}

} // namespace pdl
