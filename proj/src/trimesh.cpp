#include "mscx/trimesh.hpp"

#include <algorithm>
#include <map>

namespace mscx {

void TriMesh::finalize() {
    for (auto& t : triangles) {
        const Vertex& a = vertices[t[0]];
        const Vertex& b = vertices[t[1]];
        const Vertex& c = vertices[t[2]];
        const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        if (area2 < 0.0) std::swap(t[1], t[2]);
    }
    if (triangles.empty()) {
        /* bare skeleton: keep the preset edges, normalized */
        for (auto& e : edges)
            if (e[0] > e[1]) std::swap(e[0], e[1]);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return;
    }
    std::map<std::array<int, 2>, int> tri_count;
    for (const auto& t : triangles) {
        for (int i = 0; i < 3; ++i) {
            int a = t[i], b = t[(i + 1) % 3];
            if (a > b) std::swap(a, b);
            ++tri_count[{a, b}];
        }
    }
    edges.clear();
    edges.reserve(tri_count.size());
    for (auto& v : vertices) v.boundary = false;
    for (const auto& [e, n] : tri_count) {
        edges.push_back(e);
        if (n == 1) {
            vertices[e[0]].boundary = true;
            vertices[e[1]].boundary = true;
        }
    }
}

} // namespace mscx
