#include "mscx/grids.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mscx/rng.hpp"

namespace mscx {

TriMesh grid_skeleton(const ScalarGrid& g) {
    if (!g.valid() || g.dim() != 2)
        throw std::invalid_argument("grid_skeleton: need a valid 2D grid");
    const int nx = g.dims[0], ny = g.dims[1];
    TriMesh m;
    m.vertices.reserve(static_cast<std::size_t>(nx) * ny);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            const auto c = g.coord(x, y);
            m.vertices.push_back({c[0], c[1], g.at(x, y),
                                  x == 0 || x == nx - 1 || y == 0 || y == ny - 1});
        }
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x + 1 < nx; ++x)
            m.edges.push_back({g.index(x, y), g.index(x + 1, y)});
    for (int y = 0; y + 1 < ny; ++y)
        for (int x = 0; x < nx; ++x)
            m.edges.push_back({g.index(x, y), g.index(x, y + 1)});
    m.finalize();
    return m;
}

TriMesh diagonal_triangulate(const ScalarGrid& g) {
    TriMesh m = grid_skeleton(g);
    m.edges.clear();
    const int nx = g.dims[0], ny = g.dims[1];
    for (int y = 0; y + 1 < ny; ++y)
        for (int x = 0; x + 1 < nx; ++x) {
            const int v00 = g.index(x, y), v10 = g.index(x + 1, y);
            const int v01 = g.index(x, y + 1), v11 = g.index(x + 1, y + 1);
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    m.finalize();
    return m;
}

/* ---- incremental Delaunay ----------------------------------------------
 * Triangle soup with adjacency. One symbolic ghost vertex closes the hull:
 * every hull edge (a,b) of an interior CCW face carries a ghost face
 * (b,a,ghost) whose "circumcircle" is the open half-plane beyond the edge
 * (points exactly on the hull segment count as inside, which is what lets a
 * point dropped onto a hull edge split it cleanly). */
namespace {

constexpr int kGhost = -1;
constexpr double kEps = 1e-12;

struct Face {
    std::array<int, 3> v;
    std::array<int, 3> adj; /* adj[i]: face across edge (v[i], v[i+1]) */
    bool alive = true;
};

struct Triangulator {
    const std::vector<std::array<double, 2>>& pts;
    std::vector<Face> faces;
    std::vector<int> cav_mark; /* per-face epoch of cavity membership */
    int epoch = 0;
    int hint = 0;

    explicit Triangulator(const std::vector<std::array<double, 2>>& p) : pts(p) {}

    static double orient(const std::array<double, 2>& a, const std::array<double, 2>& b,
                         const std::array<double, 2>& c) {
        return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    }
    double orient(int a, int b, int c) const { return orient(pts[a], pts[b], pts[c]); }

    /* > kEps: p strictly inside the circumcircle of CCW (a,b,c) */
    double incircle(int a, int b, int c, int p) const {
        const double ax = pts[a][0] - pts[p][0], ay = pts[a][1] - pts[p][1];
        const double bx = pts[b][0] - pts[p][0], by = pts[b][1] - pts[p][1];
        const double cx = pts[c][0] - pts[p][0], cy = pts[c][1] - pts[p][1];
        const double a2 = ax * ax + ay * ay;
        const double b2 = bx * bx + by * by;
        const double c2 = cx * cx + cy * cy;
        return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
               a2 * (bx * cy - by * cx);
    }

    int ghost_slot(const Face& f) const {
        for (int i = 0; i < 3; ++i)
            if (f.v[i] == kGhost) return i;
        return -1;
    }

    bool contains(int fi, int p) const {
        const Face& f = faces[fi];
        const int g = ghost_slot(f);
        if (g < 0) return incircle(f.v[0], f.v[1], f.v[2], p) > kEps;
        const int a = f.v[(g + 1) % 3], b = f.v[(g + 2) % 3];
        const double o = orient(a, b, p);
        if (o > kEps) return true;
        if (o < -kEps) return false;
        /* on the hull line: inside only when on the closed segment */
        const double dx = pts[b][0] - pts[a][0], dy = pts[b][1] - pts[a][1];
        const double t = (pts[p][0] - pts[a][0]) * dx + (pts[p][1] - pts[a][1]) * dy;
        return t >= 0.0 && t <= dx * dx + dy * dy;
    }

    int locate(int p) {
        int fi = hint;
        if (!faces[fi].alive)
            for (fi = static_cast<int>(faces.size()) - 1; !faces[fi].alive; --fi) {}
        std::int64_t steps = 0;
        const std::int64_t cap = 4 * static_cast<std::int64_t>(faces.size()) + 64;
        while (steps++ < cap) {
            const Face& f = faces[fi];
            const int g = ghost_slot(f);
            if (g >= 0) {
                if (contains(fi, p)) return fi;
                /* walk the ghost ring until some hull edge sees the point */
                const int start = fi;
                do {
                    fi = faces[fi].adj[ghost_slot(faces[fi]) == 0 ? 2 : ghost_slot(faces[fi]) - 1];
                    /* adj across the (?, ghost) edge leads around the ring */
                    if (ghost_slot(faces[fi]) < 0) break; /* fell inside: resume walking */
                    if (contains(fi, p)) return fi;
                } while (fi != start && steps++ < cap);
                if (ghost_slot(faces[fi]) >= 0) break; /* full ring, nothing matched */
                continue;
            }
            int next = -1;
            for (int i = 0; i < 3; ++i)
                if (orient(f.v[i], f.v[(i + 1) % 3], p) < -kEps) {
                    next = f.adj[i];
                    break;
                }
            if (next < 0) return fi;
            fi = next;
        }
        /* fuzz fallback: exhaustive scan */
        for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
            if (!faces[i].alive) continue;
            if (ghost_slot(faces[i]) >= 0 ? contains(i, p) : in_triangle(i, p)) return i;
        }
        throw std::logic_error("delaunay: point location failed");
    }

    bool in_triangle(int fi, int p) const {
        const Face& f = faces[fi];
        for (int i = 0; i < 3; ++i)
            if (orient(f.v[i], f.v[(i + 1) % 3], p) < -kEps) return false;
        return true;
    }

    int slot_of(const Face& f, int a, int b) const {
        for (int i = 0; i < 3; ++i)
            if (f.v[i] == a && f.v[(i + 1) % 3] == b) return i;
        throw std::logic_error("delaunay: broken adjacency");
    }

    void insert(int p) {
        const int f0 = locate(p);
        for (int vtx : faces[f0].v)
            if (vtx >= 0 && pts[vtx] == pts[p]) return; /* duplicate site */

        /* grow the cavity of faces whose circumregion contains p */
        ++epoch;
        cav_mark.resize(faces.size(), 0);
        std::vector<int> cavity{f0};
        cav_mark[f0] = epoch;
        for (std::size_t i = 0; i < cavity.size(); ++i)
            for (int n : faces[cavity[i]].adj)
                if (cav_mark[n] != epoch && contains(n, p)) {
                    cav_mark[n] = epoch;
                    cavity.push_back(n);
                }

        /* boundary of the cavity, as directed edges with their outer face */
        struct Rim {
            int u, v, outer;
        };
        std::vector<Rim> rim;
        for (int fi : cavity) {
            const Face& f = faces[fi];
            for (int i = 0; i < 3; ++i)
                if (cav_mark[f.adj[i]] != epoch)
                    rim.push_back({f.v[i], f.v[(i + 1) % 3], f.adj[i]});
        }
        for (int fi : cavity) faces[fi].alive = false;

        /* fan the rim from p; link new faces to the outside and each other */
        std::map<std::pair<int, int>, std::pair<int, int>> open; /* (a,b) -> (face, slot) */
        for (const Rim& r : rim) {
            const int nf = static_cast<int>(faces.size());
            faces.push_back({{r.u, r.v, p}, {r.outer, -1, -1}, true});
            cav_mark.push_back(0);
            faces[r.outer].adj[slot_of(faces[r.outer], r.v, r.u)] = nf;
            const std::pair<int, int> e1{r.v, p}, e2{p, r.u};
            for (int s = 1; s <= 2; ++s) {
                const auto e = s == 1 ? e1 : e2;
                const auto rev = std::pair<int, int>{e.second, e.first};
                const auto it = open.find(rev);
                if (it == open.end()) {
                    open[e] = {nf, s};
                } else {
                    faces[nf].adj[s] = it->second.first;
                    faces[it->second.first].adj[it->second.second] = nf;
                    open.erase(it);
                }
            }
            hint = nf;
        }
        if (!open.empty()) throw std::logic_error("delaunay: cavity rim did not close");
    }
};

} // namespace

TriMesh delaunay(const std::vector<std::array<double, 2>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("delaunay: need at least 3 points");
    const int n = static_cast<int>(points.size());

    /* seed with a deterministic fat triangle */
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (std::pair(points[i][1], points[i][0]) < std::pair(points[i0][1], points[i0][0]))
            i0 = i;
    int i1 = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double dx = points[i][0] - points[i0][0];
        const double dy = points[i][1] - points[i0][1];
        const double d = dx * dx + dy * dy;
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    int i2 = -1;
    best = kEps;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(Triangulator::orient(points[i0], points[i1], points[i]));
        if (a > best) {
            best = a;
            i2 = i;
        }
    }
    if (i2 < 0) throw std::invalid_argument("delaunay: all points are collinear");
    if (Triangulator::orient(points[i0], points[i1], points[i2]) < 0) std::swap(i1, i2);

    Triangulator tr(points);
    tr.faces.push_back({{i0, i1, i2}, {1, 2, 3}, true});
    tr.faces.push_back({{i1, i0, kGhost}, {0, -1, -1}, true});
    tr.faces.push_back({{i2, i1, kGhost}, {0, -1, -1}, true});
    tr.faces.push_back({{i0, i2, kGhost}, {0, -1, -1}, true});
    /* ghost ring: face g's (v1, ghost) edge meets the ghost whose first
     * vertex is v1; its (ghost, v0) edge meets the one whose second is v0 */
    for (int g = 1; g <= 3; ++g)
        for (int h = 1; h <= 3; ++h) {
            if (tr.faces[g].v[1] == tr.faces[h].v[0]) tr.faces[g].adj[1] = h;
            if (tr.faces[g].v[0] == tr.faces[h].v[1]) tr.faces[g].adj[2] = h;
        }
    tr.cav_mark.assign(tr.faces.size(), 0);

    for (int i = 0; i < n; ++i)
        if (i != i0 && i != i1 && i != i2) tr.insert(i);

    TriMesh m;
    m.vertices.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        m.vertices[i].x = points[i][0];
        m.vertices[i].y = points[i][1];
    }
    for (const Face& f : tr.faces)
        if (f.alive && f.v[0] >= 0 && f.v[1] >= 0 && f.v[2] >= 0)
            m.triangles.push_back({f.v[0], f.v[1], f.v[2]});
    if (m.triangles.empty()) throw std::invalid_argument("delaunay: degenerate input");
    m.finalize();
    return m;
}

TriMesh poisson_delaunay(const std::array<double, 4>& domain, int target_count,
                         double min_dist, std::uint64_t seed, const Field2D& fn,
                         int boundary_count) {
    const double x0 = domain[0], x1 = domain[1], y0 = domain[2], y1 = domain[3];
    const double w = x1 - x0, h = y1 - y0;
    if (!(w > 0.0) || !(h > 0.0) || !(min_dist > 0.0) || target_count < 0)
        throw std::invalid_argument("poisson_delaunay: bad domain or parameters");
    const double perimeter = 2.0 * (w + h);
    int b = boundary_count;
    if (b <= 0) b = std::max(4, static_cast<int>(std::lround(perimeter / min_dist / 4.0)) * 4);

    std::vector<std::array<double, 2>> pts;
    const double step = perimeter / b;
    for (int i = 0; i < b; ++i) {
        double s = i * step;
        if (s < w) {
            pts.push_back({x0 + s, y0});
            continue;
        }
        s -= w;
        if (s < h) {
            pts.push_back({x1, y0 + s});
            continue;
        }
        s -= h;
        if (s < w) {
            pts.push_back({x1 - s, y1});
            continue;
        }
        s -= w;
        pts.push_back({x0, y1 - s});
    }

    /* dart throwing over a bucket grid; only interior points repel darts */
    const double cs = min_dist / std::sqrt(2.0);
    const int gx = std::max(1, static_cast<int>(w / cs));
    const int gy = std::max(1, static_cast<int>(h / cs));
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(gx) * gy);
    const auto bucket_of = [&](double x, double y) {
        const int bxi = std::min(gx - 1, static_cast<int>((x - x0) / w * gx));
        const int byi = std::min(gy - 1, static_cast<int>((y - y0) / h * gy));
        return byi * gx + bxi;
    };
    Rng rng(seed);
    int placed = 0;
    std::int64_t misses = 0;
    const std::int64_t give_up = 64ll * std::max(1, target_count) + 4096;
    while (placed < target_count && misses < give_up) {
        const double px = rng.next_range(x0, x1);
        const double py = rng.next_range(y0, y1);
        const int bxi = std::min(gx - 1, static_cast<int>((px - x0) / w * gx));
        const int byi = std::min(gy - 1, static_cast<int>((py - y0) / h * gy));
        bool ok = true;
        for (int dy = -2; dy <= 2 && ok; ++dy)
            for (int dx = -2; dx <= 2 && ok; ++dx) {
                const int cxi = bxi + dx, cyi = byi + dy;
                if (cxi < 0 || cxi >= gx || cyi < 0 || cyi >= gy) continue;
                for (int j : buckets[static_cast<std::size_t>(cyi) * gx + cxi]) {
                    const double ddx = pts[j][0] - px, ddy = pts[j][1] - py;
                    if (ddx * ddx + ddy * ddy < min_dist * min_dist) {
                        ok = false;
                        break;
                    }
                }
            }
        if (!ok) {
            ++misses;
            continue;
        }
        buckets[bucket_of(px, py)].push_back(static_cast<int>(pts.size()));
        pts.push_back({px, py});
        ++placed;
    }

    TriMesh m = delaunay(pts);
    for (auto& v : m.vertices) v.value = fn(v.x, v.y);
    return m;
}

TriMesh subdivide_suggested(const ScalarGrid& g, std::uint64_t seed) {
    if (!g.valid() || g.dim() != 2)
        throw std::invalid_argument("subdivide_suggested: need a valid 2D grid");
    const int nx = g.dims[0], ny = g.dims[1];
    const int ncx = nx - 1, ncy = ny - 1;
    const int n_vert = nx * ny;
    const int n_xmid = ncx * ny;
    const int n_ymid = nx * ncy;

    TriMesh m;
    m.vertices.reserve(static_cast<std::size_t>(n_vert) + n_xmid + n_ymid +
                       static_cast<std::size_t>(ncx) * ncy);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            const auto c = g.coord(x, y);
            m.vertices.push_back({c[0], c[1], g.at(x, y), false});
        }
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < ncx; ++x) {
            const auto c = g.coord(x, y);
            m.vertices.push_back({c[0] + 0.5 * g.spacing[0], c[1],
                                  0.5 * (g.at(x, y) + g.at(x + 1, y)), false});
        }
    for (int y = 0; y < ncy; ++y)
        for (int x = 0; x < nx; ++x) {
            const auto c = g.coord(x, y);
            m.vertices.push_back({c[0], c[1] + 0.5 * g.spacing[1],
                                  0.5 * (g.at(x, y) + g.at(x, y + 1)), false});
        }
    const auto vid = [&](int x, int y) { return y * nx + x; };
    const auto xmid = [&](int x, int y) { return n_vert + y * ncx + x; };
    const auto ymid = [&](int x, int y) { return n_vert + n_xmid + y * nx + x; };

    for (int cy = 0; cy < ncy; ++cy)
        for (int cx = 0; cx < ncx; ++cx) {
            const std::int64_t cell = static_cast<std::int64_t>(cy) * ncx + cx;
            Rng r(seed, static_cast<std::uint64_t>(cell));
            const double u = 0.25 + 0.5 * r.next_u01();
            const double v = 0.25 + 0.5 * r.next_u01();
            const double f00 = g.at(cx, cy), f10 = g.at(cx + 1, cy);
            const double f01 = g.at(cx, cy + 1), f11 = g.at(cx + 1, cy + 1);
            const auto c = g.coord(cx, cy);
            const int pid = static_cast<int>(m.vertices.size());
            m.vertices.push_back({c[0] + u * g.spacing[0], c[1] + v * g.spacing[1],
                                  (1 - u) * (1 - v) * f00 + u * (1 - v) * f10 +
                                      (1 - u) * v * f01 + u * v * f11,
                                  false});

            /* unit-square local coordinates keep the predicates well scaled */
            const std::array<int, 9> ids{vid(cx, cy),     vid(cx + 1, cy),
                                         vid(cx + 1, cy + 1), vid(cx, cy + 1),
                                         xmid(cx, cy),    ymid(cx + 1, cy),
                                         xmid(cx, cy + 1), ymid(cx, cy),
                                         pid};
            const std::vector<std::array<double, 2>> local{
                {0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0},
                {1, 0.5}, {0.5, 1}, {0, 0.5}, {u, v}};
            const TriMesh cellmesh = delaunay(local);
            for (const auto& t : cellmesh.triangles)
                m.triangles.push_back({ids[t[0]], ids[t[1]], ids[t[2]]});
        }
    m.finalize();
    return m;
}

Histogram edge_direction_histogram(const TriMesh& mesh, double bin_width_deg) {
    if (!(bin_width_deg > 0.0))
        throw std::invalid_argument("edge_direction_histogram: bad bin width");
    const int nbins = static_cast<int>(std::ceil(180.0 / bin_width_deg - 1e-9));
    Histogram hist;
    hist.bin_edges.resize(nbins + 1);
    for (int i = 0; i <= nbins; ++i) hist.bin_edges[i] = i * bin_width_deg;
    hist.counts.assign(nbins, 0);
    for (const auto& e : mesh.edges) {
        const auto& a = mesh.vertices[e[0]];
        const auto& b = mesh.vertices[e[1]];
        double deg = std::atan2(b.y - a.y, b.x - a.x) * 180.0 / M_PI;
        deg = std::fmod(deg + 360.0, 180.0);
        /* snap angles sitting a rounding error below a bin boundary upward,
         * so one true direction cannot split across two bins */
        deg += 1e-7;
        if (deg >= 180.0) deg -= 180.0;
        const int bin = std::min(nbins - 1, static_cast<int>(deg / bin_width_deg));
        ++hist.counts[bin];
    }
    return hist;
}

Histogram vertex_degree_histogram(const TriMesh& mesh) {
    std::vector<std::int64_t> deg(mesh.vertices.size(), 0);
    for (const auto& e : mesh.edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    const std::int64_t maxd =
        deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    Histogram hist;
    hist.bin_edges.resize(maxd + 2);
    for (std::int64_t i = 0; i <= maxd + 1; ++i)
        hist.bin_edges[i] = static_cast<double>(i);
    hist.counts.assign(maxd + 1, 0);
    for (std::int64_t d : deg) ++hist.counts[d];
    return hist;
}

} // namespace mscx
