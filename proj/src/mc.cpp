#include "pdl/mc.hpp"


#include "internal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdl {

namespace {

using detail::Compiled;
using detail::CompiledNode;

// Label of one occurrence: bit P set iff the subteam with member mask P
// satisfies the occurrence.
struct Label {
    std::vector<uint64_t> words;

    explicit Label(uint64_t num_masks) : words((num_masks + 63) / 64, 0) {}
    bool get(uint32_t mask) const { return (words[mask >> 6] >> (mask & 63)) & 1; }
    void set(uint32_t mask) { words[mask >> 6] |= uint64_t(1) << (mask & 63); }

    std::vector<uint32_t> to_masks() const {
        std::vector<uint32_t> out;
        for (size_t w = 0; w < words.size(); ++w) {
            uint64_t bits = words[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                out.push_back(static_cast<uint32_t>(w * 64 + b));
                bits &= bits - 1;
            }
        }
        return out;
    }
};

struct LabelSolver {
    const Team& t;
    Compiled c;
    McOptions opts;
    int k;
    uint64_t num_masks;
    std::vector<Label> labels;

    LabelSolver(const Team& team, const Formula& f, const McOptions& o) : t(team), opts(o) {
        k = t.size();
        if (k > opts.max_team)
            throw CapExceeded("team of " + std::to_string(k) + " members exceeds label cap " +
                              std::to_string(opts.max_team));
        if (k > 31) throw CapExceeded("subteam masks support at most 31 members");
        c = detail::compile(t, f);
        num_masks = uint64_t(1) << k;
    }

    void fill_leaf(const CompiledNode& n, Label& out) {
        switch (n.kind) {
        case Kind::Top: {
            for (auto& w : out.words) w = ~uint64_t(0);
            // clear padding beyond 2^k masks
            if (num_masks & 63) out.words.back() &= (uint64_t(1) << (num_masks & 63)) - 1;
            return;
        }
        case Kind::Bot:
            if (opts.bottom == BottomMode::EmptyTeam) out.set(0);
            return;
        case Kind::NegDep:
            out.set(0);
            return;
        case Kind::Var:
        case Kind::NegVar: {
            uint32_t good = detail::ones_mask(t, n.var);
            if (n.kind == Kind::NegVar) good = ~good & static_cast<uint32_t>(num_masks - 1);
            // P is labelled iff P <= good
            fill_filtered(out, [&](uint32_t P) { return (P & ~good) == 0; });
            return;
        }
        case Kind::Dep: {
            std::vector<uint32_t> viol = detail::dep_violation_masks(t, n.premise, n.conclusion);
            fill_filtered(out, [&](uint32_t P) {
                uint32_t rest = P;
                while (rest) {
                    int i = __builtin_ctz(rest);
                    if (viol[i] & P) return false;
                    rest &= rest - 1;
                }
                return true;
            });
            return;
        }
        default:
            throw Error("not a leaf");
        }
    }

    template <typename Pred>
    void fill_filtered(Label& out, Pred pred) {
        int64_t nwords = static_cast<int64_t>(out.words.size());
#pragma omp parallel for schedule(static) if (opts.parallel && nwords > 64)
        for (int64_t w = 0; w < nwords; ++w) {
            uint64_t bits = 0;
            uint64_t base = uint64_t(w) * 64;
            uint64_t lim = std::min<uint64_t>(64, num_masks - base);
            for (uint64_t b = 0; b < lim; ++b)
                if (pred(static_cast<uint32_t>(base + b))) bits |= uint64_t(1) << b;
            out.words[w] = bits;
        }
    }

    void combine_or(const Label& l, const Label& r, Label& out) {
        std::vector<uint32_t> lv = l.to_masks();
        std::vector<uint32_t> rv = r.to_masks();
        bool strict = opts.mode == SplitMode::Strict;
        int64_t ln = static_cast<int64_t>(lv.size());
        if (opts.parallel && ln * static_cast<int64_t>(rv.size()) > (int64_t(1) << 16)) {
            // per-thread result bitsets, merged once; unions commute so the
            // outcome does not depend on scheduling
#pragma omp parallel
            {
                std::vector<uint64_t> local(out.words.size(), 0);
#pragma omp for schedule(dynamic, 8) nowait
                for (int64_t i = 0; i < ln; ++i) {
                    uint32_t P = lv[i];
                    for (uint32_t Q : rv) {
                        if (strict && (P & Q)) continue;
                        uint32_t m = P | Q;
                        local[m >> 6] |= uint64_t(1) << (m & 63);
                    }
                }
                for (size_t w = 0; w < local.size(); ++w)
                    if (local[w]) __atomic_fetch_or(&out.words[w], local[w], __ATOMIC_RELAXED);
            }
        } else {
            for (uint32_t P : lv)
                for (uint32_t Q : rv) {
                    if (strict && (P & Q)) continue;
                    out.set(P | Q);
                }
        }
    }

    void run() {
        labels.assign(c.size(), Label(num_masks));
        // children carry larger pre-order ids, so a reverse sweep is bottom-up
        for (int occ = c.size() - 1; occ >= 0; --occ) {
            const CompiledNode& n = c.nodes[occ];
            switch (n.kind) {
            case Kind::And: {
                const Label& l = labels[n.left];
                const Label& r = labels[n.right];
                for (size_t w = 0; w < labels[occ].words.size(); ++w)
                    labels[occ].words[w] = l.words[w] & r.words[w];
                break;
            }
            case Kind::Or:
                combine_or(labels[n.left], labels[n.right], labels[occ]);
                break;
            default:
                fill_leaf(n, labels[occ]);
                break;
            }
        }
    }

    std::vector<SplitChoice> extract_certificate(uint32_t full) const {
        std::vector<SplitChoice> out;
        extract(0, full, out);
        return out;
    }

    // Labels are downward closed, so the complement of the least left part is
    // always a valid right part; this also serves lax mode.
    void extract(int occ, uint32_t target, std::vector<SplitChoice>& out) const {
        const CompiledNode& n = c.nodes[occ];
        switch (n.kind) {
        case Kind::And:
            extract(n.left, target, out);
            extract(n.right, target, out);
            return;
        case Kind::Or: {
            bool done = false;
            detail::for_each_submask(target, [&](uint32_t P) {
                if (done) return;
                uint32_t Q = target & ~P;
                if (labels[n.left].get(P) && labels[n.right].get(Q)) {
                    out.push_back({occ, target, P, Q});
                    extract(n.left, P, out);
                    extract(n.right, Q, out);
                    done = true;
                }
            });
            if (!done) throw Error("certificate extraction failed on a labelled Or node");
            return;
        }
        default:
            return;
        }
    }
};

} // namespace

McResult mc_teamsize(const Team& t, const Formula& f, const McOptions& opts,
                     bool want_certificate) {
    LabelSolver solver(t, f, opts);
    solver.run();
    uint32_t full = t.size() == 0 ? 0 : (uint32_t(1) << t.size()) - 1;
    McResult res;
    res.satisfied = solver.labels[0].get(full);
    if (res.satisfied && want_certificate)
        res.certificate = solver.extract_certificate(full);
    return res;
}

LabelTable label_table(const Team& t, const Formula& f, const McOptions& opts) {
    LabelSolver solver(t, f, opts);
    solver.run();
    LabelTable table;
    table.labels.reserve(solver.labels.size());
    for (const Label& l : solver.labels)
        table.labels.push_back(l.to_masks());
    return table;
}

} // namespace pdl
