#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mscx/fields.hpp"
#include "mscx/trimesh.hpp"

namespace mscx {

/* The grid's vertices and axis edges as a bare 1-skeleton mesh (no
 * triangles); used for grid statistics. */
TriMesh grid_skeleton(const ScalarGrid& g);

/* Split every cell along its lower-left-to-upper-right diagonal: 2(n-1)(m-1)
 * triangles, interior vertex degree 6. */
TriMesh diagonal_triangulate(const ScalarGrid& g);

/* Delaunay triangulation (incremental insertion with a ghost-vertex hull and
 * cavity retriangulation). Handles points exactly on current hull edges;
 * near-cocircular sites (in-circle determinant within 1e-12) keep the
 * triangulation already in place, which ties degeneracies to insertion
 * order. Vertex values are left at zero. Throws when all points are
 * collinear. */
TriMesh delaunay(const std::vector<std::array<double, 2>>& points);

/* Equally spaced boundary ring plus dart-thrown interior points at pairwise
 * distance >= min_dist (interior pairs only), Delaunay-triangulated, with
 * values sampled from fn. boundary_count 0 picks perimeter/min_dist rounded
 * to a multiple of 4 so the corners are hit; interior generation stops at
 * target_count points or when darts stop fitting. */
TriMesh poisson_delaunay(const std::array<double, 4>& domain, int target_count,
                         double min_dist, std::uint64_t seed, const Field2D& fn,
                         int boundary_count = 0);

/* Conversion of a uniform grid into a triangle mesh that keeps every sample:
 * per cell, the 4 corners, the 4 shared edge midpoints, and one extra point
 * placed uniformly inside the central half of the cell (stream keyed by
 * (seed, cell index)), Delaunay-triangulated cell by cell. Midpoint and
 * interior values are bilinear, so they stay within the cell's corner range.
 * A square n-by-n grid gains (n-1)(3n-1) vertices. */
TriMesh subdivide_suggested(const ScalarGrid& g, std::uint64_t seed);

/* Undirected edge angles against the x-axis, folded into [0, 180), one count
 * per edge. bin_width_deg 5 yields the 36-bin histogram used throughout. */
Histogram edge_direction_histogram(const TriMesh& mesh, double bin_width_deg);

/* Counts of vertices by incident-edge degree (bin i covers degree i). */
Histogram vertex_degree_histogram(const TriMesh& mesh);

} // namespace mscx
