#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mscx/cell_complex.hpp"
#include "mscx/gradient.hpp"

namespace mscx {

/* A cell left unmatched by the gradient. Its Morse index is its dimension;
 * `owner` is the vertex whose lower star produced it (the cell's maximal
 * vertex), which also supplies its representative value. */
struct CriticalCell {
    CellId cell;
    int index = 0;
    CellId owner;
    double value = 0.0;
};

/* One separatrix: a descending V-path between critical cells of consecutive
 * index, stored from the higher cell to the lower. Walk-traced layers keep
 * one record per geometric path; the branching saddle-to-saddle layer in 3D
 * stores one record per endpoint pair with the number of distinct V-paths in
 * `multiplicity` and one representative path. */
struct Separatrix {
    CellId from; /* index d+1 */
    CellId to;   /* index d */
    std::int64_t multiplicity = 1;
    std::vector<CellId> path;
};

struct MSComplex {
    const CellComplex* complex = nullptr;
    std::vector<CriticalCell> criticals; /* ascending by cell id */
    std::vector<Separatrix> separatrices;

    std::vector<std::int64_t> critical_counts() const;
    std::int64_t euler() const; /* alternating sum of critical counts */
    const CriticalCell* find_critical(CellId c) const;
};

/* Critical cells plus all separatrix layers: saddle-to-minimum and
 * maximum-to-(top-1)-saddle paths by direct walks, and in 3D the branching
 * 2-saddle-to-1-saddle layer by path counting over the gradient's DAG. */
MSComplex extract(const CellComplex& k, const GradientField& gf);

/* A cancellable pair: consecutive-index criticals joined by exactly one
 * V-path. `height` is the difference of the owner-vertex values (>= 0). */
struct CancelCandidate {
    CellId hi, lo;
    double height = 0.0;
};

/* All cancellable pairs, sorted by ascending height, ties by cell ids. */
std::vector<CancelCandidate> persistence_pairs(const CellComplex& k,
                                               const MSComplex& ms);

struct SimplifyStats {
    std::int64_t cancellations = 0;
    /* per-index critical counts after each cancellation */
    std::vector<std::array<std::int64_t, 4>> counts_after;
};

/* Repeatedly cancel the lowest cancellable pair with height <= threshold by
 * reversing the single V-path joining it, then rebuild the complex. The
 * gradient is modified in place and stays valid. */
MSComplex simplify(const CellComplex& k, GradientField& gf, double threshold,
                   SimplifyStats* stats = nullptr);

} // namespace mscx
