#include "mscx/morse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mscx {

namespace {

constexpr std::int64_t kMultCap = 1000000000000000ll;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    return std::min(kMultCap, a + b);
}

CellId other_endpoint(const CellComplex& k, CellId e, CellId v) {
    std::array<CellId, 8> vs;
    k.cell_vertices(e, vs);
    return vs[0] == v ? vs[1] : vs[0];
}

/* saddle-to-minimum walk: vertices pair upward, so the path never branches */
void trace_down_to_minima(const CellComplex& k, const GradientField& gf, CellId e,
                          std::vector<Separatrix>& out) {
    std::array<CellId, 8> vs;
    k.cell_vertices(e, vs);
    for (int side = 0; side < 2; ++side) {
        Separatrix s;
        s.from = e;
        s.path.push_back(e);
        CellId u = vs[side];
        while (true) {
            s.path.push_back(u);
            if (gf.is_critical(u)) break;
            const CellId e2 = gf.partner_of(u);
            s.path.push_back(e2);
            u = other_endpoint(k, e2, u);
        }
        s.to = u;
        out.push_back(std::move(s));
    }
}

/* (top-1)-saddle-to-maximum walk: a (top-1)-cell has at most two top-cell
 * cofaces, so walking up is deterministic per side; a side that runs off the
 * domain boundary yields no separatrix. */
void trace_up_to_maxima(const CellComplex& k, const GradientField& gf, CellId s0,
                        std::vector<Separatrix>& out) {
    std::vector<CellId> starts, cof;
    k.cofaces(s0, starts);
    for (const CellId start : starts) {
        std::vector<CellId> rev{s0};
        CellId q = start;
        bool reached = false;
        while (true) {
            rev.push_back(q);
            if (gf.is_critical(q)) {
                reached = true;
                break;
            }
            const CellId t = gf.partner_of(q); /* non-critical top cell pairs down */
            rev.push_back(t);
            k.cofaces(t, cof);
            CellId next = kNoCell;
            for (CellId c : cof)
                if (c != q) next = c;
            if (!next.valid()) break; /* boundary: the path dies */
            q = next;
        }
        if (!reached) continue;
        Separatrix s;
        s.from = rev.back();
        s.to = s0;
        s.path.assign(rev.rbegin(), rev.rend());
        out.push_back(std::move(s));
    }
}

/* 2-saddle-to-1-saddle layer (3D): V-paths branch, so count the distinct
 * paths per reachable critical edge over the gradient DAG, keeping one
 * representative path per endpoint pair. */
void trace_saddle_dag(const CellComplex& k, const GradientField& gf, CellId src,
                      std::vector<Separatrix>& out) {
    std::array<CellId, 6> fc;

    /* reachable quads, in discovery order */
    std::vector<CellId> nodes{src};
    std::map<std::int32_t, int> node_of{{src.v, 0}};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int nf = k.faces(nodes[i], fc);
        for (int j = 0; j < nf; ++j) {
            const CellId t = fc[j];
            if (t == gf.partner_of(nodes[i]) || gf.is_critical(t) ||
                !gf.paired_up(k, t))
                continue;
            const CellId q = gf.partner_of(t);
            if (node_of.try_emplace(q.v, static_cast<int>(nodes.size())).second)
                nodes.push_back(q);
        }
    }

    const auto for_each_succ = [&](int i, auto&& fn) {
        const int nf = k.faces(nodes[i], fc);
        for (int j = 0; j < nf; ++j) {
            const CellId t = fc[j];
            if (t == gf.partner_of(nodes[i])) continue; /* entry edge */
            if (gf.is_critical(t))
                fn(t, -1);
            else if (gf.paired_up(k, t))
                fn(t, node_of.at(gf.partner_of(t).v));
            /* else: the edge pairs down to a vertex and the path ends there */
        }
    };

    std::vector<std::int32_t> indeg(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for_each_succ(static_cast<int>(i), [&](CellId, int q) {
            if (q >= 0) ++indeg[q];
        });

    std::vector<std::int64_t> count(nodes.size(), 0);
    std::vector<int> pred(nodes.size(), -1);
    count[0] = 1;
    std::vector<int> ready;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (indeg[i] == 0) ready.push_back(static_cast<int>(i));

    std::map<std::int32_t, std::pair<std::int64_t, int>> terminals; /* edge -> (count, via node) */
    while (!ready.empty()) {
        const int i = ready.back();
        ready.pop_back();
        for_each_succ(i, [&](CellId t, int q) {
            if (q < 0) {
                if (count[i] > 0) {
                    auto [it, fresh] = terminals.try_emplace(t.v, std::pair{count[i], i});
                    if (!fresh) it->second.first = sat_add(it->second.first, count[i]);
                }
            } else {
                if (count[i] > 0 && pred[q] < 0) pred[q] = i;
                count[q] = sat_add(count[q], count[i]);
                if (--indeg[q] == 0) ready.push_back(q);
            }
        });
    }

    for (const auto& [edge_id, hit] : terminals) {
        Separatrix s;
        s.from = src;
        s.to = CellId{edge_id};
        s.multiplicity = hit.first;
        /* representative path: walk the predecessor chain back to the source */
        std::vector<CellId> rev{s.to};
        for (int cur = hit.second; cur != 0; cur = pred[cur]) {
            rev.push_back(nodes[cur]);
            rev.push_back(gf.partner_of(nodes[cur]));
        }
        rev.push_back(src);
        s.path.assign(rev.rbegin(), rev.rend());
        out.push_back(std::move(s));
    }
}

} // namespace

std::vector<std::int64_t> MSComplex::critical_counts() const {
    std::vector<std::int64_t> counts(complex->dim() + 1, 0);
    for (const auto& c : criticals) ++counts[c.index];
    return counts;
}

std::int64_t MSComplex::euler() const {
    std::int64_t sum = 0, sign = 1;
    for (std::int64_t n : critical_counts()) {
        sum += sign * n;
        sign = -sign;
    }
    return sum;
}

const CriticalCell* MSComplex::find_critical(CellId c) const {
    const auto it = std::lower_bound(
        criticals.begin(), criticals.end(), c,
        [](const CriticalCell& a, CellId b) { return a.cell < b; });
    return it != criticals.end() && it->cell == c ? &*it : nullptr;
}

MSComplex extract(const CellComplex& k, const GradientField& gf) {
    MSComplex ms;
    ms.complex = &k;
    for (CellId c : gf.critical_cells()) {
        CriticalCell cc;
        cc.cell = c;
        cc.index = k.dim_of(c);
        cc.owner = cc.index == 0 ? c : k.max_vertex(c);
        cc.value = k.value(cc.owner);
        ms.criticals.push_back(cc);
    }
    const int top = k.dim();
    for (const auto& cc : ms.criticals) {
        if (cc.index == 1) trace_down_to_minima(k, gf, cc.cell, ms.separatrices);
        if (cc.index == top - 1) trace_up_to_maxima(k, gf, cc.cell, ms.separatrices);
        if (top == 3 && cc.index == 2) trace_saddle_dag(k, gf, cc.cell, ms.separatrices);
    }
    return ms;
}

std::vector<CancelCandidate> persistence_pairs(const CellComplex& k,
                                               const MSComplex& ms) {
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> mult;
    for (const auto& s : ms.separatrices)
        mult[{s.from.v, s.to.v}] = sat_add(mult[{s.from.v, s.to.v}], s.multiplicity);
    std::vector<CancelCandidate> out;
    for (const auto& [key, m] : mult) {
        if (m != 1) continue; /* several V-paths: reversal would close a loop */
        CancelCandidate c;
        c.hi = CellId{key.first};
        c.lo = CellId{key.second};
        c.height = ms.find_critical(c.hi)->value - ms.find_critical(c.lo)->value;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const CancelCandidate& a,
                                         const CancelCandidate& b) {
        if (a.height != b.height) return a.height < b.height;
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    (void)k;
    return out;
}

namespace {

/* Reverse the pairings along one descending V-path hi = s0, t0, s1, t1, ...,
 * sk, tk = lo: afterwards each si pairs with ti and both endpoints become
 * regular. Valid only for a pair joined by exactly this one path. */
void reverse_path(GradientField& gf, const std::vector<CellId>& path) {
    if (path.size() < 2 || path.size() % 2 != 0)
        throw std::logic_error("reverse_path: malformed V-path");
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        gf.partner[path[i].v] = path[i + 1];
        gf.partner[path[i + 1].v] = path[i];
    }
}

} // namespace

MSComplex simplify(const CellComplex& k, GradientField& gf, double threshold,
                   SimplifyStats* stats) {
    MSComplex ms = extract(k, gf);
    while (true) {
        const std::vector<CancelCandidate> cands = persistence_pairs(k, ms);
        const Separatrix* chosen = nullptr;
        for (const auto& c : cands) {
            if (c.height > threshold) break;
            for (const auto& s : ms.separatrices)
                if (s.from == c.hi && s.to == c.lo) {
                    chosen = &s;
                    break;
                }
            break; /* candidates are sorted; only the first qualifying one is used */
        }
        if (!chosen) break;
        reverse_path(gf, chosen->path);
        ms = extract(k, gf);
        if (stats) {
            ++stats->cancellations;
            std::array<std::int64_t, 4> counts{0, 0, 0, 0};
            for (const auto& cc : ms.criticals) ++counts[cc.index];
            stats->counts_after.push_back(counts);
        }
    }
    return ms;
}

} // namespace mscx
