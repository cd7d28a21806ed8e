#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mscx/fields.hpp"

using namespace mscx;

TEST_CASE("ring field matches its closed form at pinned points") {
    /* crest point on the circle */
    CHECK(eval_ring(1.0, 0.0) == doctest::Approx(0.7).epsilon(1e-15));
    /* centre: radius term only */
    CHECK(eval_ring(0.0, 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    /* far corner: radius sqrt(8), tilt -1.2 */
    const double r = std::sqrt(8.0);
    CHECK(eval_ring(2.0, 2.0) ==
          doctest::Approx(std::exp(-2.0 * (r - 1.0) * (r - 1.0)) - 1.2)
              .epsilon(1e-15));
}

TEST_CASE("trigonometric field matches its closed form") {
    CHECK(eval_trig(1.0, 1.0) ==
          doctest::Approx(std::sin(1.0) * std::cos(2.0)).epsilon(1e-15));
    CHECK(eval_trig(0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("sampling fills dims, origin, spacing and corner values") {
    const ScalarGrid g = sample_field(eval_ring, 64, 64, {0.0, 2.0, 0.0, 2.0});
    CHECK(g.dims[0] == 64);
    CHECK(g.dims[1] == 64);
    CHECK(g.dims[2] == 1);
    CHECK(g.origin[0] == 0.0);
    CHECK(g.spacing[0] == doctest::Approx(2.0 / 63.0).epsilon(1e-15));
    CHECK(g.vertex_count() == 64 * 64);
    CHECK(g.valid());
    CHECK(g.at(0, 0) == doctest::Approx(eval_ring(0.0, 0.0)));
    CHECK(g.at(63, 63) == doctest::Approx(eval_ring(2.0, 2.0)));
    const auto p = g.coord(63, 0);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(0.0));
}

TEST_CASE("builtin grids are the pinned permutations") {
    const ScalarGrid a = builtin_grid("matrixA");
    CHECK(a.dims[0] == 4);
    CHECK(a.dims[1] == 4);
    CHECK(a.values[0] == 9.0);
    CHECK(a.values[1] == 8.0);
    CHECK(a.values[2] == 7.0);
    CHECK(a.values[3] == 13.0);
    std::vector<double> sorted = a.values;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 16; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);

    const ScalarGrid b = builtin_grid("tensorB");
    CHECK(b.dims[0] == 3);
    CHECK(b.dims[1] == 3);
    CHECK(b.dims[2] == 3);
    sorted = b.values;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 27; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);

    CHECK_THROWS((void)builtin_grid("nosuch"));
}

TEST_CASE("bilinear interpolation is exact on corners and cell centres") {
    const ScalarGrid g = builtin_grid("matrixA");
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            const auto p = g.coord(x, y);
            CHECK(bilinear(g, p[0], p[1]) == doctest::Approx(g.at(x, y)));
        }
    /* centre of the first cell averages its four corners */
    const double cx = g.origin[0] + 0.5 * g.spacing[0];
    const double cy = g.origin[1] + 0.5 * g.spacing[1];
    const double want =
        0.25 * (g.at(0, 0) + g.at(1, 0) + g.at(0, 1) + g.at(1, 1));
    CHECK(bilinear(g, cx, cy) == doctest::Approx(want));
}

TEST_CASE("bilinear interpolation clamps outside the domain") {
    const ScalarGrid g = builtin_grid("matrixA");
    const double x1 = g.origin[0] + 3 * g.spacing[0];
    CHECK(bilinear(g, g.origin[0] - 10.0, g.origin[1]) ==
          doctest::Approx(g.at(0, 0)));
    CHECK(bilinear(g, x1 + 10.0, g.origin[1]) == doctest::Approx(g.at(3, 0)));
}

TEST_CASE("upsample keeps original samples on the refined lattice") {
    const ScalarGrid g = builtin_grid("matrixA");
    const ScalarGrid u = upsample(g, 3);
    CHECK(u.dims[0] == 3 * 3 + 1);
    CHECK(u.dims[1] == 10);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            CHECK(u.at(3 * x, 3 * y) == doctest::Approx(g.at(x, y)));
    /* midpoint of a horizontal edge averages the two ends */
    CHECK(u.at(1, 0) ==
          doctest::Approx(g.at(0, 0) + (g.at(1, 0) - g.at(0, 0)) / 3.0));
}

TEST_CASE("resample covers the same domain with new sampling") {
    const ScalarGrid g = builtin_grid("matrixA");
    const ScalarGrid r = resample(g, 40, 40);
    CHECK(r.dims[0] == 40);
    CHECK(r.dims[1] == 40);
    /* 39 = 3 * 13: every original sample lands on the fine lattice */
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            CHECK(r.at(13 * x, 13 * y) == doctest::Approx(g.at(x, y)));
    CHECK(r.origin[0] == doctest::Approx(g.origin[0]));
    CHECK(r.origin[0] + 39 * r.spacing[0] ==
          doctest::Approx(g.origin[0] + 3 * g.spacing[0]));
}

TEST_CASE("noise is bounded, keyed and reproducible") {
    const ScalarGrid g = builtin_grid("matrixA");
    const ScalarGrid n1 = add_noise(g, 0.5, 9);
    const ScalarGrid n2 = add_noise(g, 0.5, 9);
    const ScalarGrid n3 = add_noise(g, 0.5, 10);
    CHECK(n1.values == n2.values);
    CHECK(n1.values != n3.values);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
        max_delta = std::max(max_delta, std::abs(n1.values[i] - g.values[i]));
    CHECK(max_delta <= 0.5);
    CHECK(max_delta > 0.0);
    CHECK(add_noise(g, 0.0, 9).values == g.values);
}

TEST_CASE("random fields are value permutations keyed by seed") {
    const ScalarGrid a = random_field(8, 8, 1);
    const ScalarGrid b = random_field(8, 8, 1);
    const ScalarGrid c = random_field(8, 8, 2);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    std::vector<double> sorted = a.values;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 64; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);

    const ScalarGrid d = random_field_3d(3, 3, 3, 5);
    CHECK(d.dim() == 3);
    sorted = d.values;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 27; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("grid accessors agree with linear indexing") {
    const ScalarGrid g = builtin_grid("tensorB");
    CHECK(g.dim() == 3);
    for (int z = 0; z < 3; ++z)
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x) {
                const std::int64_t i = g.index(x, y, z);
                CHECK(g.at(x, y, z) == g.values[static_cast<std::size_t>(i)]);
            }
    CHECK(g.min_value() == 0.0);
    CHECK(g.max_value() == 26.0);
}
