#include "mscx/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mscx/rng.hpp"

namespace mscx {

double ScalarGrid::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double ScalarGrid::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

bool ScalarGrid::valid() const {
    if (dims[0] < 2 || dims[1] < 2 || dims[2] < 1) return false;
    return static_cast<std::int64_t>(values.size()) == vertex_count();
}

double eval_ring(double x, double y) {
    const double r = std::hypot(x, y) - 1.0;
    return std::exp(-2.0 * r * r) - 0.3 * (x + y);
}

double eval_trig(double x, double y) {
    return std::sin(x * y) * std::cos(x + y);
}

ScalarGrid sample_field(const Field2D& fn, int nx, int ny,
                        const std::array<double, 4>& domain) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("sample_field: dims must be >= 2");
    const double x0 = domain[0], x1 = domain[1], y0 = domain[2], y1 = domain[3];
    ScalarGrid g;
    g.dims = {nx, ny, 1};
    g.origin = {x0, y0, 0.0};
    g.spacing = {(x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1), 1.0};
    g.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        /* evaluate positions as a lerp so the last sample hits the bound exactly */
        const double ty = static_cast<double>(j) / (ny - 1);
        const double y = y0 * (1.0 - ty) + y1 * ty;
        for (int i = 0; i < nx; ++i) {
            const double tx = static_cast<double>(i) / (nx - 1);
            const double x = x0 * (1.0 - tx) + x1 * tx;
            g.values[static_cast<std::size_t>(j) * nx + i] = fn(x, y);
        }
    }
    return g;
}

ScalarGrid builtin_grid(const std::string& name) {
    ScalarGrid g;
    if (name == "matrixA") {
        g.dims = {4, 4, 1};
        g.values = {9, 8, 7, 13,
                    1, 6, 10, 0,
                    12, 14, 2, 4,
                    3, 11, 5, 15};
    } else if (name == "tensorB") {
        g.dims = {3, 3, 3};
        g.values = {14, 18, 9, 6, 24, 15, 23, 4, 7,
                    10, 20, 0, 21, 1, 11, 2, 26, 25,
                    12, 13, 8, 19, 22, 3, 17, 5, 16};
    } else {
        throw std::invalid_argument("builtin_grid: unknown name '" + name + "'");
    }
    return g;
}

double bilinear(const ScalarGrid& g, double x, double y) {
    if (g.dim() != 2) throw std::invalid_argument("bilinear: 2D grids only");
    const int nx = g.dims[0], ny = g.dims[1];
    double u = (x - g.origin[0]) / g.spacing[0];
    double v = (y - g.origin[1]) / g.spacing[1];
    u = std::clamp(u, 0.0, static_cast<double>(nx - 1));
    v = std::clamp(v, 0.0, static_cast<double>(ny - 1));
    const int i = std::min(static_cast<int>(u), nx - 2);
    const int j = std::min(static_cast<int>(v), ny - 2);
    const double fu = u - i, fv = v - j;
    const double v00 = g.at(i, j), v10 = g.at(i + 1, j);
    const double v01 = g.at(i, j + 1), v11 = g.at(i + 1, j + 1);
    return (1 - fv) * ((1 - fu) * v00 + fu * v10) + fv * ((1 - fu) * v01 + fu * v11);
}

ScalarGrid upsample(const ScalarGrid& g, int factor) {
    if (g.dim() != 2) throw std::invalid_argument("upsample: 2D grids only");
    if (factor < 1) throw std::invalid_argument("upsample: factor must be >= 1");
    if (factor == 1) return g;
    const int nx = g.dims[0], ny = g.dims[1];
    const int mx = factor * (nx - 1) + 1, my = factor * (ny - 1) + 1;
    ScalarGrid out;
    out.dims = {mx, my, 1};
    out.origin = g.origin;
    out.spacing = {g.spacing[0] / factor, g.spacing[1] / factor, 1.0};
    out.values.resize(static_cast<std::size_t>(mx) * my);
    for (int j = 0; j < my; ++j) {
        const int cj = std::min(j / factor, ny - 2);
        const double fv = static_cast<double>(j - cj * factor) / factor;
        for (int i = 0; i < mx; ++i) {
            const int ci = std::min(i / factor, nx - 2);
            const double fu = static_cast<double>(i - ci * factor) / factor;
            const double v00 = g.at(ci, cj), v10 = g.at(ci + 1, cj);
            const double v01 = g.at(ci, cj + 1), v11 = g.at(ci + 1, cj + 1);
            out.values[static_cast<std::size_t>(j) * mx + i] =
                (1 - fv) * ((1 - fu) * v00 + fu * v10) +
                fv * ((1 - fu) * v01 + fu * v11);
        }
    }
    return out;
}

ScalarGrid resample(const ScalarGrid& g, int nx, int ny) {
    if (g.dim() != 2) throw std::invalid_argument("resample: 2D grids only");
    if (nx < 2 || ny < 2) throw std::invalid_argument("resample: dims must be >= 2");
    const int sx = g.dims[0], sy = g.dims[1];
    ScalarGrid out;
    out.dims = {nx, ny, 1};
    out.origin = g.origin;
    out.spacing = {g.spacing[0] * (sx - 1) / (nx - 1),
                   g.spacing[1] * (sy - 1) / (ny - 1), 1.0};
    out.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        /* integer products stay exact, so aligned lattices reproduce samples */
        const double v = static_cast<double>(static_cast<std::int64_t>(j) * (sy - 1)) / (ny - 1);
        const int cj = std::min(static_cast<int>(v), sy - 2);
        const double fv = v - cj;
        for (int i = 0; i < nx; ++i) {
            const double u = static_cast<double>(static_cast<std::int64_t>(i) * (sx - 1)) / (nx - 1);
            const int ci = std::min(static_cast<int>(u), sx - 2);
            const double fu = u - ci;
            const double v00 = g.at(ci, cj), v10 = g.at(ci + 1, cj);
            const double v01 = g.at(ci, cj + 1), v11 = g.at(ci + 1, cj + 1);
            out.values[static_cast<std::size_t>(j) * nx + i] =
                (1 - fv) * ((1 - fu) * v00 + fu * v10) +
                fv * ((1 - fu) * v01 + fu * v11);
        }
    }
    return out;
}

ScalarGrid add_noise(const ScalarGrid& g, double amplitude, std::uint64_t seed) {
    ScalarGrid out = g;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += (2.0 * site_uniform(seed, i) - 1.0) * amplitude;
    return out;
}

static void fill_permutation(std::vector<double>& vals, std::uint64_t seed) {
    const std::size_t n = vals.size();
    for (std::size_t i = 0; i < n; ++i) vals[i] = static_cast<double>(i);
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(vals[i], vals[rng.next_below(i + 1)]);
}

ScalarGrid random_field(int nx, int ny, std::uint64_t seed) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("random_field: dims must be >= 2");
    ScalarGrid g;
    g.dims = {nx, ny, 1};
    g.values.resize(static_cast<std::size_t>(nx) * ny);
    fill_permutation(g.values, seed);
    return g;
}

ScalarGrid random_field_3d(int nx, int ny, int nz, std::uint64_t seed) {
    if (nx < 2 || ny < 2 || nz < 2)
        throw std::invalid_argument("random_field_3d: dims must be >= 2");
    ScalarGrid g;
    g.dims = {nx, ny, nz};
    g.values.resize(static_cast<std::size_t>(nx) * ny * nz);
    fill_permutation(g.values, seed);
    return g;
}

} // namespace mscx
