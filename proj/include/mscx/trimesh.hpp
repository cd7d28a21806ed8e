#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mscx {

/* Planar triangle mesh with per-vertex scalar values. Triangles are kept
 * positively oriented (counter-clockwise); `edges` holds every undirected
 * edge once as an (a,b) pair with a < b. A mesh with no triangles but preset
 * edges represents a bare 1-skeleton (used for grid statistics). */
struct TriMesh {
    struct Vertex {
        double x = 0.0, y = 0.0;
        double value = 0.0;
        bool boundary = false;
    };

    std::vector<Vertex> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> edges;

    /* Orient triangles CCW, rebuild the unique edge list (keeping preset
     * skeleton edges when there are no triangles), and flag every endpoint
     * of a one-triangle edge as boundary. */
    void finalize();

    std::int64_t euler_characteristic() const {
        return static_cast<std::int64_t>(vertices.size()) -
               static_cast<std::int64_t>(edges.size()) +
               static_cast<std::int64_t>(triangles.size());
    }
};

/* Histogram over contiguous bins: counts[i] covers [bin_edges[i],
 * bin_edges[i+1]). */
struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::int64_t> counts;
    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
    int nonzero_bins() const {
        int n = 0;
        for (auto c : counts) n += c > 0 ? 1 : 0;
        return n;
    }
};

} // namespace mscx
