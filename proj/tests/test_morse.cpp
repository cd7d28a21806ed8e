#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "mscx/analysis.hpp"
#include "mscx/fields.hpp"

using namespace mscx;

namespace {

bool incident(const CellComplex& k, CellId a, CellId b) {
    const CellId lo = k.dim_of(a) < k.dim_of(b) ? a : b;
    const CellId hi = k.dim_of(a) < k.dim_of(b) ? b : a;
    if (k.dim_of(hi) != k.dim_of(lo) + 1) return false;
    std::array<CellId, 6> fc;
    const int nf = k.faces(hi, fc);
    return std::count(fc.begin(), fc.begin() + nf, lo) == 1;
}

void check_structure(const CellComplex& k, const MSComplex& ms) {
    CHECK(ms.complex == &k);
    /* criticals mirror the gradient and are sorted by cell id */
    for (std::size_t i = 1; i < ms.criticals.size(); ++i)
        CHECK(ms.criticals[i - 1].cell.v < ms.criticals[i].cell.v);
    for (const CriticalCell& c : ms.criticals) {
        CHECK(c.index == k.dim_of(c.cell));
        CHECK(c.owner ==
              (c.index == 0 ? c.cell : k.max_vertex(c.cell)));
        CHECK(c.value == k.value(c.owner));
        CHECK(ms.find_critical(c.cell) == &c);
    }
    for (const Separatrix& s : ms.separatrices) {
        const CriticalCell* hi = ms.find_critical(s.from);
        const CriticalCell* lo = ms.find_critical(s.to);
        REQUIRE(hi != nullptr);
        REQUIRE(lo != nullptr);
        CHECK(hi->index == lo->index + 1);
        CHECK(s.multiplicity >= 1);
        REQUIRE(!s.path.empty());
        CHECK(s.path.front() == s.from);
        CHECK(s.path.back() == s.to);
        for (std::size_t i = 0; i + 1 < s.path.size(); ++i)
            CHECK(incident(k, s.path[i], s.path[i + 1]));
    }
}

std::map<int, std::pair<std::int64_t, std::int64_t>> arc_layers(
    const MSComplex& ms) {
    std::map<int, std::pair<std::int64_t, std::int64_t>> out; /* arcs, mult */
    for (const Separatrix& s : ms.separatrices) {
        auto& [n, m] = out[ms.find_critical(s.from)->index];
        n += 1;
        m += s.multiplicity;
    }
    return out;
}

} // namespace

TEST_CASE("the pinned 4x4 complex has the frozen anatomy") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(builtin_grid("matrixA")));
    const GradientField gf = compute_gradient(k);
    const MSComplex ms = extract(k, gf);
    check_structure(k, ms);
    CHECK(ms.critical_counts() == std::vector<std::int64_t>{5, 5, 1});
    CHECK(ms.euler() == 1);
    const auto layers = arc_layers(ms);
    CHECK(layers.at(1) == std::pair<std::int64_t, std::int64_t>{10, 10});
    CHECK(layers.at(2) == std::pair<std::int64_t, std::int64_t>{4, 4});

    /* frozen connectivity: owner pairs (saddle, minimum) and (max, saddle) */
    const MscSummary s = summarize(ms);
    const std::map<SepKey, std::int64_t> want{
        {{1, 1, 2}, 1},  {{1, 1, 4}, 1},  {{1, 6, 4}, 1},  {{1, 6, 7}, 1},
        {{1, 8, 4}, 1},  {{1, 8, 12}, 1}, {{1, 11, 7}, 1}, {{1, 11, 10}, 1},
        {{1, 13, 10}, 1}, {{1, 13, 12}, 1}, {{2, 9, 6}, 1}, {{2, 9, 8}, 1},
        {{2, 9, 11}, 1}, {{2, 9, 13}, 1}};
    CHECK(s.connectivity == want);
}

TEST_CASE("the pinned 3x3x3 complex has the frozen anatomy") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_3d(builtin_grid("tensorB")));
    const GradientField gf = compute_gradient(k);
    const MSComplex ms = extract(k, gf);
    check_structure(k, ms);
    CHECK(ms.critical_counts() == std::vector<std::int64_t>{8, 10, 3, 0});
    CHECK(ms.euler() == 1);
    const auto layers = arc_layers(ms);
    CHECK(layers.at(1) == std::pair<std::int64_t, std::int64_t>{20, 20});
    CHECK(layers.at(2) == std::pair<std::int64_t, std::int64_t>{16, 25});
    CHECK(layers.count(3) == 0); /* no critical 3-cells on this field */
}

TEST_CASE("an interior peak produces a top cell with its descending arc") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_3d(testutil::peak3d()));
    const MSComplex ms = extract(k, compute_gradient(k));
    check_structure(k, ms);
    CHECK(ms.critical_counts() == std::vector<std::int64_t>{1, 0, 1, 1});
    const auto layers = arc_layers(ms);
    CHECK(layers.at(3) == std::pair<std::int64_t, std::int64_t>{1, 1});
}

TEST_CASE("ridges that exit the domain leave no interior maximum") {
    /* the engraved circle only grazes this domain corner: every ascending
     * path drains over the boundary, so no 2-cell survives as critical */
    testutil::Cases cases;
    const CellComplex& k = cases.add(
        build_cubical_2d(sample_field(eval_ring, 64, 64, {0.0, 2.0, 0.0, 2.0})));
    const MSComplex ms = extract(k, compute_gradient(k));
    check_structure(k, ms);
    CHECK(ms.critical_counts() == std::vector<std::int64_t>{3, 2, 0});
    const auto layers = arc_layers(ms);
    CHECK(layers.count(2) == 0);
    CHECK(layers.at(1) == std::pair<std::int64_t, std::int64_t>{4, 4});
}

TEST_CASE("persistence pairs are adjacent-index and sorted by height") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(random_field(8, 8, 13)));
    const GradientField gf = compute_gradient(k);
    const MSComplex ms = extract(k, gf);
    const auto pairs = persistence_pairs(k, ms);
    CHECK(!pairs.empty());
    double last = 0.0;
    for (const CancelCandidate& c : pairs) {
        const CriticalCell* hi = ms.find_critical(c.hi);
        const CriticalCell* lo = ms.find_critical(c.lo);
        REQUIRE(hi != nullptr);
        REQUIRE(lo != nullptr);
        CHECK(hi->index == lo->index + 1);
        CHECK(c.height == doctest::Approx(hi->value - lo->value));
        CHECK(c.height >= 0.0);
        CHECK(c.height >= last);
        last = c.height;
    }
}

TEST_CASE("cancellation walks the frozen threshold staircase") {
    const ScalarGrid g = resample(builtin_grid("matrixA"), 40, 40);
    const struct {
        double thr;
        std::int64_t cancels;
        std::vector<std::int64_t> counts;
    } steps[] = {{0.0, 0, {5, 6, 2}},
                 {3.0, 4, {3, 2, 0}},
                 {7.5, 5, {2, 1, 0}},
                 {9.0, 6, {1, 0, 0}}};
    for (const auto& st : steps) {
        testutil::Cases cases;
        const CellComplex& k = cases.add(build_cubical_2d(g));
        GradientField gf = compute_gradient(k);
        SimplifyStats stats;
        simplify(k, gf, st.thr, &stats);
        CHECK(stats.cancellations == st.cancels);
        CHECK(gf.critical_counts(k) == st.counts);
        CHECK(validate_gradient(k, gf).ok);
    }
}

TEST_CASE("every cancellation removes exactly one adjacent pair") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(random_field(12, 12, 17)));
    GradientField gf = compute_gradient(k);
    const auto before = gf.critical_counts(k);
    std::int64_t total = 0;
    for (const std::int64_t c : before) total += c;
    SimplifyStats stats;
    simplify(k, gf, 1e9, &stats);
    CHECK(stats.cancellations > 0);
    CHECK(static_cast<std::int64_t>(stats.counts_after.size()) ==
          stats.cancellations);
    for (const auto& counts : stats.counts_after) {
        std::int64_t now = 0, euler = 0, sign = 1;
        for (const std::int64_t c : counts) {
            now += c;
            euler += sign * c;
            sign = -sign;
        }
        CHECK(now == total - 2);
        CHECK(euler == 1);
        total = now;
    }
    CHECK(gf.critical_counts(k) == std::vector<std::int64_t>{1, 0, 0});
    CHECK(validate_gradient(k, gf).ok);
    /* the re-extracted complex agrees with the simplified gradient */
    const MSComplex ms = extract(k, gf);
    CHECK(ms.critical_counts() == std::vector<std::int64_t>{1, 0, 0});
    check_structure(k, ms);
}

TEST_CASE("volume data simplifies to a single minimum") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_3d(builtin_grid("tensorB")));
    GradientField gf = compute_gradient(k);
    SimplifyStats stats;
    simplify(k, gf, 100.0, &stats);
    CHECK(stats.cancellations == 10);
    CHECK(gf.critical_counts(k) == std::vector<std::int64_t>{1, 0, 0, 0});
    CHECK(validate_gradient(k, gf).ok);
    for (const auto& counts : stats.counts_after) {
        std::int64_t euler = 0, sign = 1;
        for (const std::int64_t c : counts) {
            euler += sign * c;
            sign = -sign;
        }
        CHECK(euler == 1);
    }
}

TEST_CASE("a zero threshold cancels nothing") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(random_field(8, 8, 19)));
    GradientField gf = compute_gradient(k);
    const auto before = gf.critical_counts(k);
    SimplifyStats stats;
    simplify(k, gf, 0.0, &stats);
    CHECK(stats.cancellations == 0);
    CHECK(gf.critical_counts(k) == before);
}

TEST_CASE("simplification only cancels pairs within the threshold") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(build_cubical_2d(random_field(10, 10, 23)));
    GradientField gf = compute_gradient(k);
    const MSComplex before = extract(k, gf);
    const double thr = 10.0;
    /* survivors of a cascade at height thr must all pair above thr */
    simplify(k, gf, thr, nullptr);
    const MSComplex after = extract(k, gf);
    const auto pairs = persistence_pairs(k, after);
    for (const CancelCandidate& c : pairs) CHECK(c.height > thr);
    /* and nothing appeared that was not critical before */
    std::set<std::int32_t> orig;
    for (const CriticalCell& c : before.criticals) orig.insert(c.cell.v);
    for (const CriticalCell& c : after.criticals)
        CHECK(orig.count(c.cell.v) == 1);
}

TEST_CASE("extraction on meshes mirrors the cubical structure checks") {
    testutil::Cases cases;
    const CellComplex& k = cases.add(
        build_simplicial(subdivide_suggested(resample(builtin_grid("matrixA"), 10, 10), 1)));
    const MSComplex ms = extract(k, compute_gradient(k));
    check_structure(k, ms);
    CHECK(ms.euler() == 1);
}
