#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mscx/analysis.hpp"
#include "mscx/fields.hpp"

using namespace mscx;

namespace {

MSComplex steepest_msc(const CellComplex& k) {
    return extract(k, compute_gradient(k));
}

MSComplex seeded_msc(const CellComplex& k, std::uint64_t seed) {
    return extract(k, compute_gradient(k, FirstVectorPolicy::probabilistic(seed)));
}

} // namespace

TEST_CASE("summaries mirror the complex and its critical cells") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const MSComplex ms = steepest_msc(k);
    const MscSummary s = summarize(ms);
    CHECK(s.complex_hash == k.descriptor_hash());
    CHECK(s.top_dim == 2);
    REQUIRE(s.criticals.size() == ms.criticals.size());
    for (std::size_t i = 0; i < s.criticals.size(); ++i) {
        CHECK(s.criticals[i].cell == ms.criticals[i].cell.v);
        CHECK(s.criticals[i].index == ms.criticals[i].index);
        CHECK(s.criticals[i].owner == ms.criticals[i].owner.v);
        CHECK(s.criticals[i].value == ms.criticals[i].value);
    }
    std::int64_t mult = 0;
    for (const auto& [key, n] : s.connectivity) {
        CHECK(key.layer >= 1);
        CHECK(key.layer <= 2);
        CHECK(n >= 1);
        mult += n;
    }
    std::int64_t want = 0;
    for (const Separatrix& sep : ms.separatrices) want += sep.multiplicity;
    CHECK(mult == want);
}

TEST_CASE("identical inputs diff as identical") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const DiffReport rep =
        diff_complexes(summarize(steepest_msc(k)), summarize(steepest_msc(k)));
    CHECK(rep.identical());
    CHECK(rep.moved_saddles.empty());
    CHECK(rep.changed_separatrices.empty());
    CHECK(rep.errors.empty());
    CHECK(rep.connectivity_delta() == 0);
}

TEST_CASE("complexes with different hashes refuse to diff") {
    testutil::Cases cases;
    const CellComplex& a = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const CellComplex& b = cases.add(build_cubical_3d(builtin_grid("tensorB")));
    CHECK_THROWS(diff_complexes(summarize(steepest_msc(a)),
                                summarize(steepest_msc(b))));
}

TEST_CASE("moved saddles stay inside their owner's lower star") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const MscSummary base = summarize(steepest_msc(k));
    bool any_moved = false;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        const MSComplex msp = seeded_msc(k, s);
        const DiffReport rep = diff_complexes(base, summarize(msp));
        CHECK(rep.errors.empty());
        for (const MovedSaddle& m : rep.moved_saddles) {
            any_moved = true;
            CHECK(m.index == 1);
            CHECK(m.cell_a != m.cell_b);
            const CellId owner{static_cast<std::int32_t>(m.owner)};
            CHECK(k.max_vertex(CellId{static_cast<std::int32_t>(m.cell_a)}) ==
                  owner);
            CHECK(k.max_vertex(CellId{static_cast<std::int32_t>(m.cell_b)}) ==
                  owner);
        }
    }
    CHECK(any_moved);
}

TEST_CASE("the wrapper diffs agree with the report") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const MSComplex a = steepest_msc(k);
    const MSComplex b = seeded_msc(k, 3);
    const DiffReport rep = diff_complexes(summarize(a), summarize(b));
    const auto moved = diff_saddles(a, b);
    const auto changed = diff_connectivity(a, b);
    REQUIRE(moved.size() == rep.moved_saddles.size());
    for (std::size_t i = 0; i < moved.size(); ++i) {
        CHECK(moved[i].owner == rep.moved_saddles[i].owner);
        CHECK(moved[i].cell_a == rep.moved_saddles[i].cell_a);
        CHECK(moved[i].cell_b == rep.moved_saddles[i].cell_b);
    }
    REQUIRE(changed.size() == rep.changed_separatrices.size());
    std::int64_t delta = 0;
    for (const ConnectivityChange& c : changed)
        delta += std::abs(c.count_a - c.count_b);
    CHECK(delta == rep.connectivity_delta());
}

TEST_CASE("interpolated fields rarely rewire arcs but a pinned seed does") {
    testutil::Cases cases;
    const CellComplex& k =
        cases.add(build_cubical_2d(resample(builtin_grid("matrixA"), 40, 40)));
    const MscSummary base = summarize(steepest_msc(k));
    /* the first-vector randomisation moves saddles readily, yet the broad
     * interpolated basins pin almost every arc's endpoints */
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const DiffReport rep = diff_complexes(base, summarize(seeded_msc(k, s)));
        CHECK(rep.changed_separatrices.empty());
    }
    /* ...but not every one: this seed rewires four arcs */
    const DiffReport witness =
        diff_complexes(base, summarize(seeded_msc(k, 218)));
    CHECK(witness.moved_saddles.size() == 4);
    CHECK(witness.changed_separatrices.size() == 4);
    CHECK(witness.connectivity_delta() == 4);
}

TEST_CASE("experiments are reproducible with frozen counts") {
    const ExperimentResult r = run_experiment(4, 100, 1);
    CHECK(r.size == 4);
    CHECK(r.n_trials == 100);
    CHECK(r.seed == 1);
    CHECK(r.n_positional == 76);
    CHECK(r.n_connectivity == 31);
    CHECK(r.positional_fraction() == doctest::Approx(0.76));
    CHECK(r.connectivity_fraction() == doctest::Approx(0.31));

    const ExperimentResult ri = run_experiment_interpolated(4, 2, 50, 1);
    CHECK(ri.size == 8);
    CHECK(ri.n_positional == 31);
    CHECK(ri.n_connectivity == 12);

    const ExperimentResult r2 = run_experiment(4, 100, 1);
    CHECK(r2.n_positional == r.n_positional);
    CHECK(r2.n_connectivity == r.n_connectivity);
    CHECK_THROWS(run_experiment(1, 10, 1));
    CHECK_THROWS(run_experiment_interpolated(4, 0, 10, 1));
}

TEST_CASE("ridge deviation measures distance from the target circle") {
    /* crafted fixture: a 3x3 unit grid; the four edges at the centre vertex
     * have midpoints exactly 0.5 away from the centre point (1,1) */
    testutil::Cases cases;
    ScalarGrid g;
    g.dims = {3, 3, 1};
    g.origin = {0, 0, 0};
    g.spacing = {1, 1, 1};
    g.values.resize(9);
    for (int i = 0; i < 9; ++i) g.values[static_cast<std::size_t>(i)] = i;
    const CellComplex& k = cases.add(build_cubical_2d(g));

    std::vector<CellId> ring_edges; /* the four edges at the centre vertex */
    std::array<CellId, 8> vs;
    for (std::int64_t e = 0; e < k.cells_of_dim(1); ++e) {
        const CellId c = k.id_of(1, e);
        k.cell_vertices(c, vs);
        const auto pa = k.coord(vs[0]);
        const auto pb = k.coord(vs[1]);
        const double mx = 0.5 * (pa[0] + pb[0]);
        const double my = 0.5 * (pa[1] + pb[1]);
        if (std::abs(std::hypot(mx - 1.0, my - 1.0) - 0.5) < 1e-12)
            ring_edges.push_back(c);
    }
    REQUIRE(ring_edges.size() == 4);
    std::sort(ring_edges.begin(), ring_edges.end());

    MSComplex ms;
    ms.complex = &k;
    /* register the arc ends as criticals: the higher end plays the maximum */
    const CellId hi = ring_edges[3], lo = ring_edges[0];
    ms.criticals.push_back({lo, 1, k.max_vertex(lo), k.value(k.max_vertex(lo))});
    ms.criticals.push_back({hi, 2, k.max_vertex(hi), k.value(k.max_vertex(hi))});
    std::sort(ms.criticals.begin(), ms.criticals.end(),
              [](const CriticalCell& a, const CriticalCell& b) {
                  return a.cell < b.cell;
              });
    Separatrix sep;
    sep.from = hi;
    sep.to = lo;
    sep.path = ring_edges;
    ms.separatrices.push_back(sep);

    /* all samples sit exactly on a radius-0.5 circle */
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.5, 0.0) == doctest::Approx(0.0));
    /* against radius 0.4 every sample misses by exactly 0.1 */
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.4, 0.0) ==
          doctest::Approx(0.1).epsilon(1e-12));
    /* a far-off target drops the arc entirely: both endpoints leave the
     * half-radius annulus and the measure returns zero */
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.1, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("ridge deviation honours the layer and quantile filters") {
    testutil::Cases cases;
    ScalarGrid g;
    g.dims = {3, 3, 1};
    g.origin = {0, 0, 0};
    g.spacing = {1, 1, 1};
    g.values.resize(9);
    for (int i = 0; i < 9; ++i) g.values[static_cast<std::size_t>(i)] = i;
    const CellComplex& k = cases.add(build_cubical_2d(g));

    /* locate the edge (1,1)-(1,2): midpoint (1,1.5), its top corner is the
     * grid's value-7 vertex; and the first quad, centre (0.5,0.5) */
    CellId steep_edge = kNoCell;
    std::array<CellId, 8> vs;
    for (std::int64_t e = 0; e < k.cells_of_dim(1); ++e) {
        const CellId c = k.id_of(1, e);
        k.cell_vertices(c, vs);
        const auto pa = k.coord(vs[0]);
        const auto pb = k.coord(vs[1]);
        if (std::abs(0.5 * (pa[0] + pb[0]) - 1.0) < 1e-12 &&
            std::abs(0.5 * (pa[1] + pb[1]) - 1.5) < 1e-12)
            steep_edge = c;
    }
    REQUIRE(steep_edge.valid());
    const CellId quad = k.id_of(2, 0);
    REQUIRE(k.value(k.max_vertex(steep_edge)) == 7.0);
    REQUIRE(k.value(k.max_vertex(quad)) == 4.0);

    MSComplex ms;
    ms.complex = &k;
    CellId other = kNoCell; /* a second centre edge as the low endpoint */
    for (std::int64_t e = 0; e < k.cells_of_dim(1); ++e) {
        const CellId c = k.id_of(1, e);
        k.cell_vertices(c, vs);
        const auto pa = k.coord(vs[0]);
        const auto pb = k.coord(vs[1]);
        if (std::abs(0.5 * (pa[0] + pb[0]) - 1.0) < 1e-12 &&
            std::abs(0.5 * (pa[1] + pb[1]) - 0.5) < 1e-12)
            other = c;
    }
    REQUIRE(other.valid());
    ms.criticals.push_back(
        {other, 1, k.max_vertex(other), k.value(k.max_vertex(other))});
    ms.criticals.push_back({steep_edge, 2, k.max_vertex(steep_edge),
                            k.value(k.max_vertex(steep_edge))});
    std::sort(ms.criticals.begin(), ms.criticals.end(),
              [](const CriticalCell& a, const CriticalCell& b) {
                  return a.cell < b.cell;
              });
    Separatrix sep;
    sep.from = steep_edge;
    sep.to = other;
    sep.path = {steep_edge, quad};
    ms.separatrices.push_back(sep);

    /* top-quantile keeps only the high-valued edge sample (deviation 0);
     * quantile zero averages in the quad centre at distance sqrt(0.5) */
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.5, 1.0) == doctest::Approx(0.0));
    const double quad_dev = std::sqrt(0.5) - 0.5;
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.5, 0.0) ==
          doctest::Approx(0.5 * quad_dev));

    /* arcs below the top layer never contribute */
    ms.separatrices[0].from = other;
    ms.separatrices[0].to = steep_edge;
    CHECK(circle_deviation(ms, {1.0, 1.0}, 0.5, 0.0) == doctest::Approx(0.0));

    MSComplex detached;
    CHECK_THROWS_AS(circle_deviation(detached, {0.0, 0.0}, 1.0, 0.5),
                    std::invalid_argument);
}
