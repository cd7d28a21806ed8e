#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mscx/cell_complex.hpp"

namespace mscx {

/* Discrete gradient: a matching of cells into (d, d+1) vectors. partner[c]
 * names the cell c is matched with; an unmatched cell is critical, and its
 * dimension is its Morse index. */
struct GradientField {
    std::vector<CellId> partner;

    bool is_critical(CellId c) const { return !partner[c.v].valid(); }
    CellId partner_of(CellId c) const { return partner[c.v]; }
    /* c is the tail of a vector (matched with a coface) */
    bool paired_up(const CellComplex& k, CellId c) const {
        return partner[c.v].valid() && k.dim_of(partner[c.v]) == k.dim_of(c) + 1;
    }

    std::vector<CellId> critical_cells() const;
    std::vector<std::int64_t> critical_counts(const CellComplex& k) const;
};

/* How the first vector (vertex -> lower-star edge) is chosen. Steepest pairs
 * the vertex with the edge toward its lowest neighbor; the probabilistic
 * policy draws among the lower-star edges with weight proportional to the
 * value drop per unit edge length (one draw per vertex, keyed by (seed,
 * vertex id)). Everything after the first vector is deterministic. */
struct FirstVectorPolicy {
    enum class Kind { Steepest, Probabilistic };
    Kind kind = Kind::Steepest;
    std::uint64_t seed = 0;

    static FirstVectorPolicy steepest() { return {}; }
    static FirstVectorPolicy probabilistic(std::uint64_t seed) {
        return {Kind::Probabilistic, seed};
    }
};

/* test seams: replace the first-vector rule or the queue order wholesale */
using FirstVectorChooser =
    std::function<CellId(const CellComplex&, CellId, const std::vector<CellId>&)>;
using CellOrder = std::function<bool(CellId, CellId)>;

/* The edge toward the (value, id)-smallest lower neighbor. */
CellId steepest_edge(const CellComplex& k, CellId v,
                     const std::vector<CellId>& lower_edges);
/* One weighted draw over the lower-star edges; falls back to steepest_edge
 * when every drop is zero. */
CellId probabilistic_edge(const CellComplex& k, CellId v,
                          const std::vector<CellId>& lower_edges,
                          std::uint64_t seed);
CellId first_vector(const CellComplex& k, CellId v,
                    const std::vector<CellId>& lower_edges,
                    const FirstVectorPolicy& policy);

/* Homotopy expansion of one lower star, given the already-chosen first edge
 * (kNoCell when the star is empty and v is a minimum). Pairs cells with
 * exactly one uncovered face, smallest candidate first; when stuck, the
 * smallest uncovered cell becomes critical and expansion resumes. `order`
 * overrides the queue comparison (tests shuffle it); default is the
 * complex's cell order. */
void process_lower_star(const CellComplex& k, CellId v, CellId first_edge,
                        GradientField& gf, const CellOrder* order = nullptr);

GradientField compute_gradient(const CellComplex& k,
                               const FirstVectorPolicy& policy = {});
GradientField compute_gradient_with(const CellComplex& k,
                                    const FirstVectorChooser& choose,
                                    const CellOrder* order = nullptr);

/* matching property, coface property, V-path acyclicity */
struct ValidationReport {
    bool ok = true;
    std::string message; /* witness description when !ok */
};
ValidationReport validate_gradient(const CellComplex& k, const GradientField& gf);

} // namespace mscx
