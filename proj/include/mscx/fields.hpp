#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mscx {

/* Scalar samples on a regular 2D or 3D lattice. Values are stored x-fastest
 * (rows along x, then y, then z); dims[2] == 1 marks a 2D grid. */
struct ScalarGrid {
    std::array<int, 3> dims{0, 0, 1};
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<double> values;

    int dim() const { return dims[2] > 1 ? 3 : 2; }
    std::int64_t vertex_count() const {
        return static_cast<std::int64_t>(dims[0]) * dims[1] * dims[2];
    }
    int index(int x, int y, int z = 0) const {
        return (z * dims[1] + y) * dims[0] + x;
    }
    double at(int x, int y, int z = 0) const { return values[index(x, y, z)]; }
    double& at(int x, int y, int z = 0) { return values[index(x, y, z)]; }
    std::array<double, 3> coord(int x, int y, int z = 0) const {
        return {origin[0] + x * spacing[0], origin[1] + y * spacing[1],
                origin[2] + z * spacing[2]};
    }
    double min_value() const;
    double max_value() const;
    /* dims >= 2 per axis and values sized to match */
    bool valid() const;
};

using Field2D = std::function<double(double, double)>;

/* circular ridge engraved in a tilted plane */
double eval_ring(double x, double y);
/* oscillating product field, symmetric under (x,y) swap */
double eval_trig(double x, double y);

/* Sample fn on an nx-by-ny lattice over [x0,x1]x[y0,y1] (domain given as
 * {x0,x1,y0,y1}). Corner samples evaluate the bounds exactly. */
ScalarGrid sample_field(const Field2D& fn, int nx, int ny,
                        const std::array<double, 4>& domain);

/* Built-in integer fixtures: "matrixA" (4x4 permutation of 0..15) and
 * "tensorB" (3x3x3 permutation of 0..26). */
ScalarGrid builtin_grid(const std::string& name);

/* Bilinear interpolation at domain coordinates; 2D grids only. Clamps to the
 * domain box. */
double bilinear(const ScalarGrid& g, double x, double y);

/* Refine every cell by an integer factor: output dims factor*(n-1)+1 per
 * axis; all original samples appear on the fine lattice. */
ScalarGrid upsample(const ScalarGrid& g, int factor);

/* Resample to arbitrary dims covering the same domain (bilinear). Original
 * samples are reproduced wherever the lattices align, e.g. 4 -> 40 puts them
 * at fine indices {0,13,26,39}. */
ScalarGrid resample(const ScalarGrid& g, int nx, int ny);

/* Perturb every value by an independent uniform draw from [-amplitude,
 * +amplitude]. Per-site streams keyed by (seed, site index). */
ScalarGrid add_noise(const ScalarGrid& g, double amplitude, std::uint64_t seed);

/* Uniformly random permutation of 0..N-1 arranged on the lattice. */
ScalarGrid random_field(int nx, int ny, std::uint64_t seed);
ScalarGrid random_field_3d(int nx, int ny, int nz, std::uint64_t seed);

} // namespace mscx
