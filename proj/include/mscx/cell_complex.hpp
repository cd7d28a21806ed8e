#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mscx/fields.hpp"
#include "mscx/trimesh.hpp"

namespace mscx {

/* Dense cell handle. Ids are contiguous from 0 over the whole complex, laid
 * out dimension block by dimension block, so the owning complex recovers a
 * cell's dimension with two comparisons. */
struct CellId {
    std::int32_t v = -1;
    constexpr bool valid() const { return v >= 0; }
    friend constexpr bool operator==(CellId, CellId) = default;
    friend constexpr auto operator<=>(CellId, CellId) = default;
};

inline constexpr CellId kNoCell{-1};

class CellComplex;

/* Boundary complex of one reduced lower star: each d-cell of the lower star
 * (d >= 1) maps to a (d-1)-cell here. Vertices correspond to the star's
 * edges, edges to its 2-cells, faces to its 3-cells; indices refer to the
 * `verts`/`edges` arrays. Closed under taking faces by construction. */
struct ReducedStar {
    std::vector<CellId> verts;
    struct Edge {
        int a, b;
        CellId orig;
    };
    std::vector<Edge> edges;
    struct Face {
        std::array<int, 3> v;
        std::array<int, 3> e;
        CellId orig;
    };
    std::vector<Face> faces;

    bool empty() const { return verts.empty(); }
};

/* Cell complex over a cubical grid (incidence computed from index
 * arithmetic) or a triangle mesh (incidence stored explicitly). Immutable
 * after construction. Vertices carry the scalar values; ties in the vertex
 * order are broken by vertex id, which makes all values effectively
 * distinct. */
class CellComplex {
public:
    enum class Kind { Cubical, Simplicial };

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    std::int64_t cells_of_dim(int d) const { return count_[d]; }
    std::int64_t total_cells() const { return offset_[4]; }
    CellId id_of(int d, std::int64_t index) const {
        return CellId{static_cast<std::int32_t>(offset_[d] + index)};
    }
    int dim_of(CellId c) const {
        if (c.v < offset_[1]) return 0;
        if (c.v < offset_[2]) return 1;
        if (c.v < offset_[3]) return 2;
        return 3;
    }
    std::int64_t index_of(CellId c) const { return c.v - offset_[dim_of(c)]; }

    double value(CellId vertex) const { return values_[vertex.v]; }
    std::array<double, 3> coord(CellId vertex) const;
    bool boundary_vertex(CellId vertex) const;

    /* immediate incidence; returns the count written into out */
    int faces(CellId c, std::array<CellId, 6>& out) const;
    void cofaces(CellId c, std::vector<CellId>& out) const;
    int cell_vertices(CellId c, std::array<CellId, 8>& out) const;

    /* vertex order is (value, id); a cell's key is its vertex (value, id)
     * list sorted descending, compared lexicographically (shorter prefix
     * wins ties across dimensions) */
    CellId max_vertex(CellId c) const;
    bool vertex_less(CellId a, CellId b) const {
        if (values_[a.v] != values_[b.v]) return values_[a.v] < values_[b.v];
        return a.v < b.v;
    }
    bool cell_less(CellId a, CellId b) const;

    /* all cells of dim >= 1 incident to the vertex */
    void star(CellId vertex, std::vector<CellId>& out) const;
    /* star cells whose maximal vertex is v; empty iff v is a minimum */
    std::vector<CellId> lower_star(CellId vertex) const;
    ReducedStar reduced_lower_star(CellId vertex) const;

    std::int64_t euler_characteristic() const {
        return count_[0] - count_[1] + count_[2] - count_[3];
    }

    /* structural fingerprint for "same complex" checks between runs */
    std::uint64_t descriptor_hash() const;

private:
    friend CellComplex build_cubical_2d(const ScalarGrid&);
    friend CellComplex build_cubical_3d(const ScalarGrid&);
    friend CellComplex build_simplicial(const TriMesh&);

    CellComplex() = default;
    void init_offsets();

    Kind kind_ = Kind::Cubical;
    int dim_ = 2;
    std::array<std::int64_t, 4> count_{0, 0, 0, 0};
    std::array<std::int64_t, 5> offset_{0, 0, 0, 0, 0};
    std::vector<double> values_;

    /* cubical grid geometry */
    int nx_ = 0, ny_ = 0, nz_ = 1;
    std::array<double, 3> origin_{0, 0, 0};
    std::array<double, 3> spacing_{1, 1, 1};
    /* cubical edge/quad sub-block offsets (by direction / plane) */
    std::int64_t ex_ = 0, ey_ = 0, ez_ = 0;
    std::int64_t qxy_ = 0, qxz_ = 0, qyz_ = 0;

    /* simplicial storage */
    std::vector<std::array<double, 2>> pos_;
    std::vector<std::uint8_t> on_boundary_;
    std::vector<std::array<std::int32_t, 2>> edge_verts_;
    std::vector<std::array<std::int32_t, 3>> tri_verts_;
    std::vector<std::array<std::int32_t, 3>> tri_edges_;
    std::vector<std::array<std::int32_t, 2>> edge_tris_; /* -1 padded */
    /* CSR adjacency: vertex -> incident edges / triangles */
    std::vector<std::int32_t> v2e_off_, v2e_;
    std::vector<std::int32_t> v2t_off_, v2t_;
};

/* Build the full cubical complex (vertices, edges, quads[, cubes]) over a
 * grid; rejects any axis extent < 2. */
CellComplex build_cubical_2d(const ScalarGrid& g);
CellComplex build_cubical_3d(const ScalarGrid& g);

/* Build vertices/edges/triangles from a finalized TriMesh; rejects meshes
 * where an edge has more than two incident triangles. */
CellComplex build_simplicial(const TriMesh& mesh);

} // namespace mscx
