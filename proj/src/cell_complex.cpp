#include "mscx/cell_complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mscx {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

void CellComplex::init_offsets() {
    offset_[0] = 0;
    for (int d = 0; d < 4; ++d) offset_[d + 1] = offset_[d] + count_[d];
    if (offset_[4] > INT32_MAX)
        throw std::invalid_argument("complex too large for 32-bit cell ids");
}

/* ---- cubical index arithmetic -------------------------------------------
 * Vertices: (z*ny + y)*nx + x. Edges come in three direction blocks
 * (x, then y, then z), quads in three plane blocks (xy, xz, yz), each block
 * indexed like a vertex grid shrunk by one along the spanned axes. */

CellComplex build_cubical_2d(const ScalarGrid& g) {
    if (!g.valid() || g.dim() != 2)
        throw std::invalid_argument("build_cubical_2d: need a valid 2D grid (each axis >= 2)");
    CellComplex k;
    k.kind_ = CellComplex::Kind::Cubical;
    k.dim_ = 2;
    k.nx_ = g.dims[0];
    k.ny_ = g.dims[1];
    k.nz_ = 1;
    k.origin_ = g.origin;
    k.spacing_ = g.spacing;
    k.values_ = g.values;
    const std::int64_t nx = k.nx_, ny = k.ny_;
    k.ex_ = (nx - 1) * ny;
    k.ey_ = nx * (ny - 1);
    k.ez_ = 0;
    k.qxy_ = (nx - 1) * (ny - 1);
    k.qxz_ = k.qyz_ = 0;
    k.count_ = {nx * ny, k.ex_ + k.ey_, k.qxy_, 0};
    k.init_offsets();
    return k;
}

CellComplex build_cubical_3d(const ScalarGrid& g) {
    if (!g.valid() || g.dim() != 3)
        throw std::invalid_argument("build_cubical_3d: need a valid 3D grid (each axis >= 2)");
    CellComplex k;
    k.kind_ = CellComplex::Kind::Cubical;
    k.dim_ = 3;
    k.nx_ = g.dims[0];
    k.ny_ = g.dims[1];
    k.nz_ = g.dims[2];
    k.origin_ = g.origin;
    k.spacing_ = g.spacing;
    k.values_ = g.values;
    const std::int64_t nx = k.nx_, ny = k.ny_, nz = k.nz_;
    k.ex_ = (nx - 1) * ny * nz;
    k.ey_ = nx * (ny - 1) * nz;
    k.ez_ = nx * ny * (nz - 1);
    k.qxy_ = (nx - 1) * (ny - 1) * nz;
    k.qxz_ = (nx - 1) * ny * (nz - 1);
    k.qyz_ = nx * (ny - 1) * (nz - 1);
    k.count_ = {nx * ny * nz, k.ex_ + k.ey_ + k.ez_, k.qxy_ + k.qxz_ + k.qyz_,
                (nx - 1) * (ny - 1) * (nz - 1)};
    k.init_offsets();
    return k;
}

namespace {
/* decoded cubical cell: block = direction (edges) or plane (quads) */
struct Sub {
    int block;
    int x, y, z;
};
} // namespace

static Sub decode(std::int64_t idx, int dim, const CellComplex& k, int nx, int ny,
                  int , std::int64_t ex, std::int64_t ey, std::int64_t qxy,
                  std::int64_t qxz) {
    Sub s{};
    std::int64_t i = idx;
    if (dim == 0) {
        s.x = static_cast<int>(i % nx);
        s.y = static_cast<int>((i / nx) % ny);
        s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx) * ny));
    } else if (dim == 1) {
        if (i < ex) {
            s.block = 0; /* x-edge */
            s.x = static_cast<int>(i % (nx - 1));
            s.y = static_cast<int>((i / (nx - 1)) % ny);
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx - 1) * ny));
        } else if (i < ex + ey) {
            i -= ex;
            s.block = 1; /* y-edge */
            s.x = static_cast<int>(i % nx);
            s.y = static_cast<int>((i / nx) % (ny - 1));
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx) * (ny - 1)));
        } else {
            i -= ex + ey;
            s.block = 2; /* z-edge */
            s.x = static_cast<int>(i % nx);
            s.y = static_cast<int>((i / nx) % ny);
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx) * ny));
        }
    } else if (dim == 2) {
        if (i < qxy) {
            s.block = 0; /* xy-quad */
            s.x = static_cast<int>(i % (nx - 1));
            s.y = static_cast<int>((i / (nx - 1)) % (ny - 1));
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx - 1) * (ny - 1)));
        } else if (i < qxy + qxz) {
            i -= qxy;
            s.block = 1; /* xz-quad */
            s.x = static_cast<int>(i % (nx - 1));
            s.y = static_cast<int>((i / (nx - 1)) % ny);
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx - 1) * ny));
        } else {
            i -= qxy + qxz;
            s.block = 2; /* yz-quad */
            s.x = static_cast<int>(i % nx);
            s.y = static_cast<int>((i / nx) % (ny - 1));
            s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx) * (ny - 1)));
        }
    } else {
        s.x = static_cast<int>(i % (nx - 1));
        s.y = static_cast<int>((i / (nx - 1)) % (ny - 1));
        s.z = static_cast<int>(i / (static_cast<std::int64_t>(nx - 1) * (ny - 1)));
    }
    (void)k;
    return s;
}

#define DECODE(c, d) decode(index_of(c), d, *this, nx_, ny_, nz_, ex_, ey_, qxy_, qxz_)

std::array<double, 3> CellComplex::coord(CellId vertex) const {
    if (kind_ == Kind::Simplicial) {
        const auto& p = pos_[vertex.v];
        return {p[0], p[1], 0.0};
    }
    const Sub s = DECODE(vertex, 0);
    return {origin_[0] + s.x * spacing_[0], origin_[1] + s.y * spacing_[1],
            origin_[2] + s.z * spacing_[2]};
}

bool CellComplex::boundary_vertex(CellId vertex) const {
    if (kind_ == Kind::Simplicial) return on_boundary_[vertex.v] != 0;
    const Sub s = DECODE(vertex, 0);
    if (s.x == 0 || s.x == nx_ - 1 || s.y == 0 || s.y == ny_ - 1) return true;
    return nz_ > 1 && (s.z == 0 || s.z == nz_ - 1);
}

/* local-index helpers for the cubical blocks */
#define VID(x, y, z) CellId{static_cast<std::int32_t>(offset_[0] + ((static_cast<std::int64_t>(z) * ny_ + (y)) * nx_ + (x)))}
#define EX(x, y, z) CellId{static_cast<std::int32_t>(offset_[1] + ((static_cast<std::int64_t>(z) * ny_ + (y)) * (nx_ - 1) + (x)))}
#define EY(x, y, z) CellId{static_cast<std::int32_t>(offset_[1] + ex_ + ((static_cast<std::int64_t>(z) * (ny_ - 1) + (y)) * nx_ + (x)))}
#define EZ(x, y, z) CellId{static_cast<std::int32_t>(offset_[1] + ex_ + ey_ + ((static_cast<std::int64_t>(z) * ny_ + (y)) * nx_ + (x)))}
#define QXY(x, y, z) CellId{static_cast<std::int32_t>(offset_[2] + ((static_cast<std::int64_t>(z) * (ny_ - 1) + (y)) * (nx_ - 1) + (x)))}
#define QXZ(x, y, z) CellId{static_cast<std::int32_t>(offset_[2] + qxy_ + ((static_cast<std::int64_t>(z) * ny_ + (y)) * (nx_ - 1) + (x)))}
#define QYZ(x, y, z) CellId{static_cast<std::int32_t>(offset_[2] + qxy_ + qxz_ + ((static_cast<std::int64_t>(z) * (ny_ - 1) + (y)) * nx_ + (x)))}
#define CUBE(x, y, z) CellId{static_cast<std::int32_t>(offset_[3] + ((static_cast<std::int64_t>(z) * (ny_ - 1) + (y)) * (nx_ - 1) + (x)))}

int CellComplex::faces(CellId c, std::array<CellId, 6>& out) const {
    const int d = dim_of(c);
    if (d == 0) return 0;
    if (kind_ == Kind::Simplicial) {
        if (d == 1) {
            const auto& e = edge_verts_[index_of(c)];
            out[0] = CellId{e[0]};
            out[1] = CellId{e[1]};
            return 2;
        }
        const auto& te = tri_edges_[index_of(c)];
        for (int i = 0; i < 3; ++i)
            out[i] = CellId{static_cast<std::int32_t>(offset_[1] + te[i])};
        return 3;
    }
    const Sub s = DECODE(c, d);
    if (d == 1) {
        if (s.block == 0) { out[0] = VID(s.x, s.y, s.z); out[1] = VID(s.x + 1, s.y, s.z); }
        else if (s.block == 1) { out[0] = VID(s.x, s.y, s.z); out[1] = VID(s.x, s.y + 1, s.z); }
        else { out[0] = VID(s.x, s.y, s.z); out[1] = VID(s.x, s.y, s.z + 1); }
        return 2;
    }
    if (d == 2) {
        if (s.block == 0) {
            out[0] = EX(s.x, s.y, s.z); out[1] = EX(s.x, s.y + 1, s.z);
            out[2] = EY(s.x, s.y, s.z); out[3] = EY(s.x + 1, s.y, s.z);
        } else if (s.block == 1) {
            out[0] = EX(s.x, s.y, s.z); out[1] = EX(s.x, s.y, s.z + 1);
            out[2] = EZ(s.x, s.y, s.z); out[3] = EZ(s.x + 1, s.y, s.z);
        } else {
            out[0] = EY(s.x, s.y, s.z); out[1] = EY(s.x, s.y, s.z + 1);
            out[2] = EZ(s.x, s.y, s.z); out[3] = EZ(s.x, s.y + 1, s.z);
        }
        return 4;
    }
    out[0] = QXY(s.x, s.y, s.z); out[1] = QXY(s.x, s.y, s.z + 1);
    out[2] = QXZ(s.x, s.y, s.z); out[3] = QXZ(s.x, s.y + 1, s.z);
    out[4] = QYZ(s.x, s.y, s.z); out[5] = QYZ(s.x + 1, s.y, s.z);
    return 6;
}

void CellComplex::cofaces(CellId c, std::vector<CellId>& out) const {
    out.clear();
    const int d = dim_of(c);
    if (d == dim_) return;
    if (kind_ == Kind::Simplicial) {
        const std::int64_t i = index_of(c);
        if (d == 0) {
            for (std::int32_t j = v2e_off_[i]; j < v2e_off_[i + 1]; ++j)
                out.push_back(CellId{static_cast<std::int32_t>(offset_[1] + v2e_[j])});
        } else if (d == 1) {
            for (std::int32_t t : edge_tris_[i])
                if (t >= 0) out.push_back(CellId{static_cast<std::int32_t>(offset_[2] + t)});
        }
        return;
    }
    const Sub s = DECODE(c, d);
    const int x = s.x, y = s.y, z = s.z;
    if (d == 0) {
        if (x > 0) out.push_back(EX(x - 1, y, z));
        if (x < nx_ - 1) out.push_back(EX(x, y, z));
        if (y > 0) out.push_back(EY(x, y - 1, z));
        if (y < ny_ - 1) out.push_back(EY(x, y, z));
        if (z > 0) out.push_back(EZ(x, y, z - 1));
        if (z < nz_ - 1) out.push_back(EZ(x, y, z));
    } else if (d == 1) {
        if (s.block == 0) {
            if (y > 0) out.push_back(QXY(x, y - 1, z));
            if (y < ny_ - 1) out.push_back(QXY(x, y, z));
            if (z > 0) out.push_back(QXZ(x, y, z - 1));
            if (z < nz_ - 1) out.push_back(QXZ(x, y, z));
        } else if (s.block == 1) {
            if (x > 0) out.push_back(QXY(x - 1, y, z));
            if (x < nx_ - 1) out.push_back(QXY(x, y, z));
            if (z > 0) out.push_back(QYZ(x, y, z - 1));
            if (z < nz_ - 1) out.push_back(QYZ(x, y, z));
        } else {
            if (x > 0) out.push_back(QXZ(x - 1, y, z));
            if (x < nx_ - 1) out.push_back(QXZ(x, y, z));
            if (y > 0) out.push_back(QYZ(x, y - 1, z));
            if (y < ny_ - 1) out.push_back(QYZ(x, y, z));
        }
    } else {
        if (s.block == 0) {
            if (z > 0) out.push_back(CUBE(x, y, z - 1));
            if (z < nz_ - 1) out.push_back(CUBE(x, y, z));
        } else if (s.block == 1) {
            if (y > 0) out.push_back(CUBE(x, y - 1, z));
            if (y < ny_ - 1) out.push_back(CUBE(x, y, z));
        } else {
            if (x > 0) out.push_back(CUBE(x - 1, y, z));
            if (x < nx_ - 1) out.push_back(CUBE(x, y, z));
        }
    }
}

int CellComplex::cell_vertices(CellId c, std::array<CellId, 8>& out) const {
    const int d = dim_of(c);
    if (d == 0) {
        out[0] = c;
        return 1;
    }
    if (kind_ == Kind::Simplicial) {
        if (d == 1) {
            const auto& e = edge_verts_[index_of(c)];
            out[0] = CellId{e[0]};
            out[1] = CellId{e[1]};
            return 2;
        }
        const auto& t = tri_verts_[index_of(c)];
        for (int i = 0; i < 3; ++i) out[i] = CellId{t[i]};
        return 3;
    }
    const Sub s = DECODE(c, d);
    const int x = s.x, y = s.y, z = s.z;
    if (d == 1) {
        out[0] = VID(x, y, z);
        out[1] = s.block == 0 ? VID(x + 1, y, z)
               : s.block == 1 ? VID(x, y + 1, z)
                              : VID(x, y, z + 1);
        return 2;
    }
    if (d == 2) {
        if (s.block == 0) {
            out[0] = VID(x, y, z); out[1] = VID(x + 1, y, z);
            out[2] = VID(x, y + 1, z); out[3] = VID(x + 1, y + 1, z);
        } else if (s.block == 1) {
            out[0] = VID(x, y, z); out[1] = VID(x + 1, y, z);
            out[2] = VID(x, y, z + 1); out[3] = VID(x + 1, y, z + 1);
        } else {
            out[0] = VID(x, y, z); out[1] = VID(x, y + 1, z);
            out[2] = VID(x, y, z + 1); out[3] = VID(x, y + 1, z + 1);
        }
        return 4;
    }
    int n = 0;
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) out[n++] = VID(x + dx, y + dy, z + dz);
    return 8;
}

CellId CellComplex::max_vertex(CellId c) const {
    std::array<CellId, 8> vs;
    const int n = cell_vertices(c, vs);
    CellId best = vs[0];
    for (int i = 1; i < n; ++i)
        if (vertex_less(best, vs[i])) best = vs[i];
    return best;
}

bool CellComplex::cell_less(CellId a, CellId b) const {
    if (a == b) return false;
    std::array<CellId, 8> av, bv;
    const int na = cell_vertices(a, av);
    const int nb = cell_vertices(b, bv);
    auto desc = [this](CellId x, CellId y) { return vertex_less(y, x); };
    std::sort(av.begin(), av.begin() + na, desc);
    std::sort(bv.begin(), bv.begin() + nb, desc);
    const int n = std::min(na, nb);
    for (int i = 0; i < n; ++i) {
        if (av[i] == bv[i]) continue;
        return vertex_less(av[i], bv[i]);
    }
    if (na != nb) return na < nb; /* shared prefix: lower-dimensional cell first */
    return a.v < b.v;
}

void CellComplex::star(CellId vertex, std::vector<CellId>& out) const {
    out.clear();
    if (kind_ == Kind::Simplicial) {
        const std::int64_t i = index_of(vertex);
        for (std::int32_t j = v2e_off_[i]; j < v2e_off_[i + 1]; ++j)
            out.push_back(CellId{static_cast<std::int32_t>(offset_[1] + v2e_[j])});
        for (std::int32_t j = v2t_off_[i]; j < v2t_off_[i + 1]; ++j)
            out.push_back(CellId{static_cast<std::int32_t>(offset_[2] + v2t_[j])});
        return;
    }
    const Sub s = DECODE(vertex, 0);
    const int x = s.x, y = s.y, z = s.z;
    cofaces(vertex, out); /* incident edges */
    for (int qy = y - 1; qy <= y; ++qy)
        for (int qx = x - 1; qx <= x; ++qx)
            if (qx >= 0 && qx < nx_ - 1 && qy >= 0 && qy < ny_ - 1)
                out.push_back(QXY(qx, qy, z));
    if (nz_ > 1) {
        for (int qz = z - 1; qz <= z; ++qz)
            for (int qx = x - 1; qx <= x; ++qx)
                if (qx >= 0 && qx < nx_ - 1 && qz >= 0 && qz < nz_ - 1)
                    out.push_back(QXZ(qx, y, qz));
        for (int qz = z - 1; qz <= z; ++qz)
            for (int qy = y - 1; qy <= y; ++qy)
                if (qy >= 0 && qy < ny_ - 1 && qz >= 0 && qz < nz_ - 1)
                    out.push_back(QYZ(x, qy, qz));
        for (int cz = z - 1; cz <= z; ++cz)
            for (int cy = y - 1; cy <= y; ++cy)
                for (int cx = x - 1; cx <= x; ++cx)
                    if (cx >= 0 && cx < nx_ - 1 && cy >= 0 && cy < ny_ - 1 &&
                        cz >= 0 && cz < nz_ - 1)
                        out.push_back(CUBE(cx, cy, cz));
    }
}

std::vector<CellId> CellComplex::lower_star(CellId vertex) const {
    std::vector<CellId> st;
    star(vertex, st);
    std::vector<CellId> out;
    out.reserve(st.size());
    for (CellId c : st)
        if (max_vertex(c) == vertex) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

ReducedStar CellComplex::reduced_lower_star(CellId vertex) const {
    ReducedStar r;
    const std::vector<CellId> L = lower_star(vertex);
    std::array<CellId, 6> fc;
    std::array<CellId, 8> vs;
    auto contains_v = [&](CellId cell) {
        const int n = cell_vertices(cell, vs);
        for (int i = 0; i < n; ++i)
            if (vs[i] == vertex) return true;
        return false;
    };
    std::map<std::int32_t, int> vert_index, edge_index;
    for (CellId c : L)
        if (dim_of(c) == 1) {
            vert_index[c.v] = static_cast<int>(r.verts.size());
            r.verts.push_back(c);
        }
    for (CellId c : L) {
        if (dim_of(c) != 2) continue;
        const int nf = faces(c, fc);
        int ab[2], n = 0;
        for (int i = 0; i < nf; ++i)
            if (contains_v(fc[i])) ab[n++] = vert_index.at(fc[i].v);
        if (n != 2) throw std::logic_error("reduced_lower_star: 2-cell without two star edges");
        edge_index[c.v] = static_cast<int>(r.edges.size());
        r.edges.push_back({ab[0], ab[1], c});
    }
    for (CellId c : L) {
        if (dim_of(c) != 3) continue;
        ReducedStar::Face f{};
        f.orig = c;
        const int nf = faces(c, fc);
        int ne = 0;
        for (int i = 0; i < nf; ++i)
            if (contains_v(fc[i])) f.e[ne++] = edge_index.at(fc[i].v);
        if (ne != 3) throw std::logic_error("reduced_lower_star: 3-cell without three star quads");
        /* its reduced vertices are the union of the reduced edges' endpoints */
        int vv[6], nv = 0;
        for (int i = 0; i < 3; ++i) {
            vv[nv++] = r.edges[f.e[i]].a;
            vv[nv++] = r.edges[f.e[i]].b;
        }
        std::sort(vv, vv + 6);
        int m = 0;
        for (int i = 0; i < 6; ++i)
            if (i == 0 || vv[i] != vv[i - 1]) vv[m++] = vv[i];
        if (m != 3) throw std::logic_error("reduced_lower_star: 3-cell link is not a triangle");
        f.v = {vv[0], vv[1], vv[2]};
        r.faces.push_back(f);
    }
    return r;
}

std::uint64_t CellComplex::descriptor_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(h, kind_ == Kind::Cubical ? 1 : 2);
    h = fnv1a(h, static_cast<std::uint64_t>(dim_));
    for (int d = 0; d < 4; ++d) h = fnv1a(h, static_cast<std::uint64_t>(count_[d]));
    for (double v : values_) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        h = fnv1a(h, bits);
    }
    return h;
}

CellComplex build_simplicial(const TriMesh& mesh) {
    if (mesh.vertices.empty()) throw std::invalid_argument("build_simplicial: empty mesh");
    CellComplex k;
    k.kind_ = CellComplex::Kind::Simplicial;
    k.dim_ = mesh.triangles.empty() ? 1 : 2;
    const std::int32_t nv = static_cast<std::int32_t>(mesh.vertices.size());
    k.values_.resize(nv);
    k.pos_.resize(nv);
    k.on_boundary_.resize(nv);
    for (std::int32_t i = 0; i < nv; ++i) {
        k.values_[i] = mesh.vertices[i].value;
        k.pos_[i] = {mesh.vertices[i].x, mesh.vertices[i].y};
        k.on_boundary_[i] = mesh.vertices[i].boundary ? 1 : 0;
    }

    /* unique edge list: mesh edges plus anything the triangles imply */
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> edge_id;
    auto add_edge = [&](std::int32_t a, std::int32_t b) {
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= nv || a == b)
            throw std::invalid_argument("build_simplicial: bad edge");
        auto [it, fresh] = edge_id.try_emplace({a, b},
                                               static_cast<std::int32_t>(k.edge_verts_.size()));
        if (fresh) k.edge_verts_.push_back({a, b});
        return it->second;
    };
    for (const auto& e : mesh.edges) add_edge(e[0], e[1]);
    k.tri_verts_.reserve(mesh.triangles.size());
    k.tri_edges_.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        k.tri_verts_.push_back({t[0], t[1], t[2]});
        k.tri_edges_.push_back({add_edge(t[0], t[1]), add_edge(t[1], t[2]),
                                add_edge(t[0], t[2])});
    }

    k.edge_tris_.assign(k.edge_verts_.size(), {-1, -1});
    for (std::int32_t t = 0; t < static_cast<std::int32_t>(k.tri_edges_.size()); ++t) {
        for (std::int32_t e : k.tri_edges_[t]) {
            auto& slots = k.edge_tris_[e];
            if (slots[0] < 0) slots[0] = t;
            else if (slots[1] < 0) slots[1] = t;
            else throw std::invalid_argument("build_simplicial: edge shared by more than two triangles");
        }
    }

    /* CSR vertex adjacency */
    auto build_csr = [nv](auto& off, auto& dat, auto count, auto emit) {
        off.assign(nv + 1, 0);
        count(off);
        for (std::int32_t i = 0; i < nv; ++i) off[i + 1] += off[i];
        dat.resize(off[nv]);
        std::vector<std::int32_t> cur(off.begin(), off.end() - 1);
        emit(dat, cur);
    };
    build_csr(k.v2e_off_, k.v2e_,
              [&](auto& off) {
                  for (const auto& e : k.edge_verts_) { ++off[e[0] + 1]; ++off[e[1] + 1]; }
              },
              [&](auto& dat, auto& cur) {
                  for (std::int32_t e = 0; e < static_cast<std::int32_t>(k.edge_verts_.size()); ++e) {
                      dat[cur[k.edge_verts_[e][0]]++] = e;
                      dat[cur[k.edge_verts_[e][1]]++] = e;
                  }
              });
    build_csr(k.v2t_off_, k.v2t_,
              [&](auto& off) {
                  for (const auto& t : k.tri_verts_)
                      for (std::int32_t v : t) ++off[v + 1];
              },
              [&](auto& dat, auto& cur) {
                  for (std::int32_t t = 0; t < static_cast<std::int32_t>(k.tri_verts_.size()); ++t)
                      for (std::int32_t v : k.tri_verts_[t]) dat[cur[v]++] = t;
              });

    k.count_ = {nv, static_cast<std::int64_t>(k.edge_verts_.size()),
                static_cast<std::int64_t>(k.tri_verts_.size()), 0};
    k.init_offsets();
    return k;
}

} // namespace mscx
