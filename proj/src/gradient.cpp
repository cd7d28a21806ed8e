#include "mscx/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "mscx/rng.hpp"

namespace mscx {

std::vector<CellId> GradientField::critical_cells() const {
    std::vector<CellId> out;
    for (std::size_t i = 0; i < partner.size(); ++i)
        if (!partner[i].valid()) out.push_back(CellId{static_cast<std::int32_t>(i)});
    return out;
}

std::vector<std::int64_t> GradientField::critical_counts(const CellComplex& k) const {
    std::vector<std::int64_t> counts(k.dim() + 1, 0);
    for (std::size_t i = 0; i < partner.size(); ++i)
        if (!partner[i].valid()) ++counts[k.dim_of(CellId{static_cast<std::int32_t>(i)})];
    return counts;
}

namespace {

double edge_length(const CellComplex& k, CellId e) {
    std::array<CellId, 8> vs;
    k.cell_vertices(e, vs);
    const auto a = k.coord(vs[0]), b = k.coord(vs[1]);
    return std::hypot(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
}

CellId other_endpoint(const CellComplex& k, CellId e, CellId v) {
    std::array<CellId, 8> vs;
    k.cell_vertices(e, vs);
    return vs[0] == v ? vs[1] : vs[0];
}

} // namespace

CellId steepest_edge(const CellComplex& k, CellId v,
                     const std::vector<CellId>& lower_edges) {
    CellId best = kNoCell, best_u = kNoCell;
    for (CellId e : lower_edges) {
        const CellId u = other_endpoint(k, e, v);
        if (!best.valid() || k.vertex_less(u, best_u)) {
            best = e;
            best_u = u;
        }
    }
    return best;
}

CellId probabilistic_edge(const CellComplex& k, CellId v,
                          const std::vector<CellId>& lower_edges,
                          std::uint64_t seed) {
    double total = 0.0;
    std::vector<double> w(lower_edges.size());
    for (std::size_t i = 0; i < lower_edges.size(); ++i) {
        const CellId u = other_endpoint(k, lower_edges[i], v);
        const double drop = k.value(v) - k.value(u);
        w[i] = drop > 0.0 ? drop / edge_length(k, lower_edges[i]) : 0.0;
        total += w[i];
    }
    if (!(total > 0.0)) return steepest_edge(k, v, lower_edges);
    const double r = site_uniform(seed, static_cast<std::uint64_t>(v.v)) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < lower_edges.size(); ++i) {
        acc += w[i];
        if (r < acc) return lower_edges[i];
    }
    return lower_edges.back();
}

CellId first_vector(const CellComplex& k, CellId v,
                    const std::vector<CellId>& lower_edges,
                    const FirstVectorPolicy& policy) {
    if (lower_edges.empty()) return kNoCell;
    return policy.kind == FirstVectorPolicy::Kind::Steepest
               ? steepest_edge(k, v, lower_edges)
               : probabilistic_edge(k, v, lower_edges, policy.seed);
}

namespace {

/* One lower star's homotopy expansion over a precomputed, id-sorted star. */
void expand_lower_star(const CellComplex& k, CellId v,
                       const std::vector<CellId>& L, CellId first_edge,
                       GradientField& gf, const CellOrder* order) {
    if (L.empty()) {
        if (first_edge.valid())
            throw std::invalid_argument("expand_lower_star: first edge for an empty star");
        return; /* v is a minimum */
    }
    if (!first_edge.valid())
        throw std::invalid_argument("expand_lower_star: missing first edge");

    const auto idx_in = [&L](CellId c) -> int {
        const auto it = std::lower_bound(L.begin(), L.end(), c);
        return it != L.end() && *it == c ? static_cast<int>(it - L.begin()) : -1;
    };
    std::vector<char> assigned(L.size(), 0);

    const CellOrder cmp =
        order ? *order : [&k](CellId a, CellId b) { return k.cell_less(a, b); };
    const auto heap_cmp = [&cmp](CellId a, CellId b) { return cmp(b, a); };
    std::priority_queue<CellId, std::vector<CellId>, decltype(heap_cmp)>
        pq_one(heap_cmp), pq_zero(heap_cmp);

    std::array<CellId, 6> fc;
    std::vector<CellId> cof;

    /* faces inside L not yet paired or made critical */
    const auto open_faces = [&](CellId c, CellId& witness) {
        const int nf = k.faces(c, fc);
        int n = 0;
        for (int i = 0; i < nf; ++i) {
            const int j = idx_in(fc[i]);
            if (j >= 0 && !assigned[j]) {
                ++n;
                witness = fc[i];
            }
        }
        return n;
    };
    const auto push_ready_cofaces = [&](CellId c) {
        k.cofaces(c, cof);
        CellId w;
        for (CellId q : cof) {
            const int j = idx_in(q);
            if (j >= 0 && !assigned[j] && open_faces(q, w) == 1) pq_one.push(q);
        }
    };
    const auto assign_pair = [&](CellId lo, CellId hi) {
        gf.partner[lo.v] = hi;
        gf.partner[hi.v] = lo;
        assigned[idx_in(lo)] = 1;
        assigned[idx_in(hi)] = 1;
    };

    {
        const int j = idx_in(first_edge);
        if (j < 0 || k.dim_of(first_edge) != 1)
            throw std::invalid_argument("expand_lower_star: first edge not a lower-star edge");
        gf.partner[v.v] = first_edge;
        gf.partner[first_edge.v] = v;
        assigned[j] = 1;
    }
    for (CellId c : L)
        if (k.dim_of(c) == 1 && !assigned[idx_in(c)]) pq_zero.push(c);
    push_ready_cofaces(first_edge);

    while (!pq_one.empty() || !pq_zero.empty()) {
        while (!pq_one.empty()) {
            const CellId c = pq_one.top();
            pq_one.pop();
            if (assigned[idx_in(c)]) continue;
            CellId w;
            const int n = open_faces(c, w);
            if (n == 0) {
                pq_zero.push(c);
                continue;
            }
            if (n != 1) throw std::logic_error("expand_lower_star: queued cell regrew faces");
            assign_pair(w, c);
            push_ready_cofaces(c);
            push_ready_cofaces(w);
        }
        if (!pq_zero.empty()) {
            const CellId c = pq_zero.top();
            pq_zero.pop();
            if (assigned[idx_in(c)]) continue;
            assigned[idx_in(c)] = 1; /* critical; partner stays unset */
            push_ready_cofaces(c);
        }
    }
    for (std::size_t i = 0; i < L.size(); ++i)
        if (!assigned[i]) throw std::logic_error("expand_lower_star: unreached cell in star");
}

std::vector<CellId> star_edges(const CellComplex& k, const std::vector<CellId>& L) {
    std::vector<CellId> edges;
    for (CellId c : L) {
        if (k.dim_of(c) != 1) break; /* L is id-sorted, edges come first */
        edges.push_back(c);
    }
    return edges;
}

} // namespace

void process_lower_star(const CellComplex& k, CellId v, CellId first_edge,
                        GradientField& gf, const CellOrder* order) {
    if (gf.partner.empty()) gf.partner.assign(k.total_cells(), kNoCell);
    expand_lower_star(k, v, k.lower_star(v), first_edge, gf, order);
}

GradientField compute_gradient(const CellComplex& k, const FirstVectorPolicy& policy) {
    GradientField gf;
    gf.partner.assign(k.total_cells(), kNoCell);
    const std::int64_t nv = k.cells_of_dim(0);
    for (std::int64_t i = 0; i < nv; ++i) {
        const CellId v = k.id_of(0, i);
        const std::vector<CellId> L = k.lower_star(v);
        if (L.empty()) continue; /* minimum */
        expand_lower_star(k, v, L, first_vector(k, v, star_edges(k, L), policy), gf,
                          nullptr);
    }
    return gf;
}

GradientField compute_gradient_with(const CellComplex& k,
                                    const FirstVectorChooser& choose,
                                    const CellOrder* order) {
    GradientField gf;
    gf.partner.assign(k.total_cells(), kNoCell);
    const std::int64_t nv = k.cells_of_dim(0);
    for (std::int64_t i = 0; i < nv; ++i) {
        const CellId v = k.id_of(0, i);
        const std::vector<CellId> L = k.lower_star(v);
        if (L.empty()) continue;
        expand_lower_star(k, v, L, choose(k, v, star_edges(k, L)), gf, order);
    }
    return gf;
}

namespace {

std::string cell_name(const CellComplex& k, CellId c) {
    return "cell " + std::to_string(c.v) + " (dim " + std::to_string(k.dim_of(c)) + ")";
}

} // namespace

ValidationReport validate_gradient(const CellComplex& k, const GradientField& gf) {
    if (static_cast<std::int64_t>(gf.partner.size()) != k.total_cells())
        return {false, "partner table size does not match the complex"};
    std::array<CellId, 6> fc;
    for (std::int64_t i = 0; i < k.total_cells(); ++i) {
        const CellId c{static_cast<std::int32_t>(i)};
        const CellId p = gf.partner[i];
        if (!p.valid()) continue;
        if (p.v < 0 || p.v >= k.total_cells() || p == c)
            return {false, "bad partner for " + cell_name(k, c)};
        if (gf.partner[p.v] != c)
            return {false, "matching violation: " + cell_name(k, c) + " -> " +
                               cell_name(k, p) + " is not mutual"};
        const int dc = k.dim_of(c), dp = k.dim_of(p);
        if (dc + 1 == dp) {
            const int nf = k.faces(p, fc);
            bool found = false;
            for (int j = 0; j < nf; ++j) found |= fc[j] == c;
            if (!found)
                return {false, "coface violation: " + cell_name(k, c) +
                                   " is not a face of its partner " + cell_name(k, p)};
        } else if (dp + 1 != dc) {
            return {false, "dimension violation between " + cell_name(k, c) + " and " +
                               cell_name(k, p)};
        }
    }

    /* acyclicity of V-paths, one dimension layer at a time (Kahn) */
    for (int d = 0; d < k.dim(); ++d) {
        const std::int64_t n = k.cells_of_dim(d);
        std::vector<char> up(n, 0);
        for (std::int64_t i = 0; i < n; ++i) {
            const CellId c = k.id_of(d, i);
            up[i] = gf.partner[c.v].valid() && k.dim_of(gf.partner[c.v]) == d + 1;
        }
        std::vector<std::int32_t> indeg(n, 0);
        const auto for_each_succ = [&](std::int64_t i, auto&& fn) {
            const CellId c = k.id_of(d, i);
            const int nf = k.faces(gf.partner[c.v], fc);
            for (int j = 0; j < nf; ++j) {
                const std::int64_t b = k.index_of(fc[j]);
                if (fc[j] != c && up[b]) fn(b);
            }
        };
        std::int64_t up_count = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            if (!up[i]) continue;
            ++up_count;
            for_each_succ(i, [&](std::int64_t b) { ++indeg[b]; });
        }
        std::vector<std::int64_t> ready;
        for (std::int64_t i = 0; i < n; ++i)
            if (up[i] && indeg[i] == 0) ready.push_back(i);
        std::int64_t done = 0;
        std::vector<char> processed(n, 0);
        while (!ready.empty()) {
            const std::int64_t i = ready.back();
            ready.pop_back();
            processed[i] = 1;
            ++done;
            for_each_succ(i, [&](std::int64_t b) {
                if (--indeg[b] == 0) ready.push_back(b);
            });
        }
        if (done == up_count) continue;

        /* walk predecessors among leftover cells until one repeats */
        std::int64_t start = -1;
        for (std::int64_t i = 0; i < n && start < 0; ++i)
            if (up[i] && !processed[i]) start = i;
        std::vector<char> seen(n, 0);
        std::vector<CellId> cof;
        std::int64_t cur = start;
        std::string trail;
        while (!seen[cur]) {
            seen[cur] = 1;
            trail += cell_name(k, k.id_of(d, cur)) + " <- ";
            const CellId c = k.id_of(d, cur);
            k.cofaces(c, cof);
            std::int64_t prev = -1;
            for (CellId q : cof) {
                if (q == gf.partner[c.v]) continue;
                const CellId a = gf.partner[q.v];
                if (a.valid() && k.dim_of(a) == d && a != c && up[k.index_of(a)] &&
                    !processed[k.index_of(a)]) {
                    prev = k.index_of(a);
                    break;
                }
            }
            if (prev < 0) break;
            cur = prev;
        }
        return {false, "closed V-path in dimension " + std::to_string(d) + ": " + trail +
                           "..."};
    }
    return {true, ""};
}

} // namespace mscx
