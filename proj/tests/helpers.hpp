#pragma once
/* Shared fixtures and independent oracles for the unit tests. */

#include <cstdint>
#include <memory>
#include <vector>

#include "mscx/analysis.hpp"
#include "mscx/grids.hpp"
#include "mscx/rng.hpp"

namespace testutil {

/* A Morse-Smale complex keeps a pointer to the cell complex it was extracted
 * from, so complexes must never move afterwards. This holder hands out stable
 * references for the lifetime of a test case. */
class Cases {
  public:
    const mscx::CellComplex& add(mscx::CellComplex k) {
        keep_.push_back(std::make_unique<mscx::CellComplex>(std::move(k)));
        return *keep_.back();
    }

  private:
    std::vector<std::unique_ptr<mscx::CellComplex>> keep_;
};

/* Deterministic full shuffle of the cell priority, unrelated to the value
 * order the library uses by default. */
inline mscx::CellOrder shuffled_order(std::uint64_t seed) {
    return [seed](mscx::CellId a, mscx::CellId b) {
        const std::uint64_t ha =
            mscx::hash_site(seed, static_cast<std::uint64_t>(a.v));
        const std::uint64_t hb =
            mscx::hash_site(seed, static_cast<std::uint64_t>(b.v));
        if (ha != hb) return ha < hb;
        return a.v < b.v;
    };
}

/* Independent minima oracle computed straight from grid values: a vertex is a
 * minimum iff every axis neighbour compares greater under (value, index).
 * Returns sorted linear vertex indices. */
inline std::vector<std::int64_t> grid_minima(const mscx::ScalarGrid& g) {
    std::vector<std::int64_t> out;
    const auto less = [&g](std::int64_t i, std::int64_t j) {
        if (g.values[static_cast<std::size_t>(i)] !=
            g.values[static_cast<std::size_t>(j)])
            return g.values[static_cast<std::size_t>(i)] <
                   g.values[static_cast<std::size_t>(j)];
        return i < j;
    };
    const int nx = g.dims[0], ny = g.dims[1], nz = g.dims[2];
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                const std::int64_t i = g.index(x, y, z);
                bool is_min = true;
                const auto probe = [&](int xx, int yy, int zz) {
                    if (xx < 0 || xx >= nx || yy < 0 || yy >= ny || zz < 0 ||
                        zz >= nz)
                        return;
                    if (less(g.index(xx, yy, zz), i)) is_min = false;
                };
                probe(x - 1, y, z);
                probe(x + 1, y, z);
                probe(x, y - 1, z);
                probe(x, y + 1, z);
                probe(x, y, z - 1);
                probe(x, y, z + 1);
                if (is_min) out.push_back(i);
            }
    return out;
}

inline std::vector<mscx::CellId> lower_edges(const mscx::CellComplex& k,
                                             mscx::CellId v) {
    std::vector<mscx::CellId> out;
    for (const mscx::CellId c : k.lower_star(v))
        if (k.dim_of(c) == 1) out.push_back(c);
    return out;
}

/* 3x3x3 grid with its peak at the centre vertex: the only fixture in the
 * suite guaranteed to carry a critical 3-cell (and hence top-layer arcs). */
inline mscx::ScalarGrid peak3d() {
    mscx::ScalarGrid g;
    g.dims = {3, 3, 3};
    g.origin = {0.0, 0.0, 0.0};
    g.spacing = {1.0, 1.0, 1.0};
    g.values.resize(27);
    int next = 0;
    for (int i = 0; i < 27; ++i) g.values[i] = i == 13 ? 26.0 : next++;
    return g;
}

} // namespace testutil
