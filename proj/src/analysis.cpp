#include "mscx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mscx/rng.hpp"

namespace mscx {

MscSummary summarize(const MSComplex& ms) {
    if (!ms.complex) throw std::invalid_argument("summarize: detached complex");
    const CellComplex& k = *ms.complex;
    MscSummary s;
    s.complex_hash = k.descriptor_hash();
    s.top_dim = k.dim();
    s.criticals.reserve(ms.criticals.size());
    for (const CriticalCell& c : ms.criticals)
        s.criticals.push_back({c.cell.v, c.index, c.owner.v, c.value});
    for (const Separatrix& sep : ms.separatrices) {
        const CriticalCell* hi = ms.find_critical(sep.from);
        const CriticalCell* lo = ms.find_critical(sep.to);
        if (!hi || !lo)
            throw std::logic_error("summarize: separatrix endpoint not critical");
        s.connectivity[{hi->index, hi->owner.v, lo->owner.v}] += sep.multiplicity;
    }
    return s;
}

std::int64_t DiffReport::connectivity_delta() const {
    std::int64_t d = 0;
    for (const ConnectivityChange& c : changed_separatrices)
        d += std::llabs(c.count_a - c.count_b);
    return d;
}

DiffReport diff_complexes(const MscSummary& a, const MscSummary& b) {
    if (a.complex_hash != b.complex_hash)
        throw std::invalid_argument(
            "diff: the two results are over different underlying complexes");

    DiffReport rep;

    /* bucket critical cells by (index, owner star), then pair in id order */
    using Bucket = std::pair<int, std::int64_t>;
    std::map<Bucket, std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
        buckets;
    for (const CriticalRecord& c : a.criticals)
        buckets[{c.index, c.owner}].first.push_back(c.cell);
    for (const CriticalRecord& c : b.criticals)
        buckets[{c.index, c.owner}].second.push_back(c.cell);
    for (auto& [key, pair] : buckets) {
        auto& [va, vb] = pair;
        std::sort(va.begin(), va.end());
        std::sort(vb.begin(), vb.end());
        if (va.size() != vb.size()) {
            rep.errors.push_back("critical bucket (index " +
                                 std::to_string(key.first) + ", owner " +
                                 std::to_string(key.second) + ") holds " +
                                 std::to_string(va.size()) + " vs " +
                                 std::to_string(vb.size()) + " cells");
            continue;
        }
        for (std::size_t i = 0; i < va.size(); ++i)
            if (va[i] != vb[i])
                rep.moved_saddles.push_back({key.first, key.second, va[i], vb[i]});
    }

    /* connectivity keys: report every multiplicity mismatch once */
    auto ia = a.connectivity.begin();
    auto ib = b.connectivity.begin();
    while (ia != a.connectivity.end() || ib != b.connectivity.end()) {
        if (ib == b.connectivity.end() ||
            (ia != a.connectivity.end() && ia->first < ib->first)) {
            rep.changed_separatrices.push_back({ia->first, ia->second, 0});
            ++ia;
        } else if (ia == a.connectivity.end() || ib->first < ia->first) {
            rep.changed_separatrices.push_back({ib->first, 0, ib->second});
            ++ib;
        } else {
            if (ia->second != ib->second)
                rep.changed_separatrices.push_back(
                    {ia->first, ia->second, ib->second});
            ++ia;
            ++ib;
        }
    }
    return rep;
}

std::vector<MovedSaddle> diff_saddles(const MSComplex& a, const MSComplex& b) {
    return diff_complexes(summarize(a), summarize(b)).moved_saddles;
}

std::vector<ConnectivityChange> diff_connectivity(const MSComplex& a,
                                                  const MSComplex& b) {
    return diff_complexes(summarize(a), summarize(b)).changed_separatrices;
}

namespace {

/* steepest vs one probabilistic draw on the given field */
void run_trial(const ScalarGrid& g, std::uint64_t policy_seed,
               ExperimentResult& out) {
    const CellComplex k =
        g.dim() == 3 ? build_cubical_3d(g) : build_cubical_2d(g);
    const GradientField gs = compute_gradient(k, FirstVectorPolicy::steepest());
    const GradientField gp =
        compute_gradient(k, FirstVectorPolicy::probabilistic(policy_seed));
    const DiffReport rep =
        diff_complexes(summarize(extract(k, gs)), summarize(extract(k, gp)));
    out.n_positional += rep.moved_saddles.empty() && rep.errors.empty() ? 0 : 1;
    out.n_connectivity += rep.changed_separatrices.empty() ? 0 : 1;
}

} // namespace

ExperimentResult run_experiment(int size, int n_trials, std::uint64_t seed) {
    return run_experiment_interpolated(size, 1, n_trials, seed);
}

ExperimentResult run_experiment_interpolated(int base_size, int factor,
                                             int n_trials, std::uint64_t seed) {
    if (base_size < 2 || factor < 1 || n_trials < 0)
        throw std::invalid_argument("experiment: bad size, factor, or trials");
    ExperimentResult res;
    res.size = base_size * factor;
    res.n_trials = n_trials;
    res.seed = seed;
    for (int t = 0; t < n_trials; ++t) {
        const std::uint64_t field_seed = hash_site(seed, 2 * t);
        const std::uint64_t policy_seed = hash_site(seed, 2 * t + 1);
        ScalarGrid g = random_field(base_size, base_size, field_seed);
        if (factor > 1) g = resample(g, res.size, res.size);
        run_trial(g, policy_seed, res);
    }
    return res;
}

double circle_deviation(const MSComplex& ms, std::array<double, 2> center,
                        double radius, double quantile) {
    if (!ms.complex) throw std::invalid_argument("circle_deviation: detached complex");
    const CellComplex& k = *ms.complex;

    /* Ridges ascend, so only the (top, top-1) layer traces them; descending
     * saddle-to-minimum paths cut across the ridge and would swamp the
     * measurement with transversal samples. Within that layer, keep the arcs
     * whose critical endpoints both sit near the target circle: arcs leaving
     * the ridge for other features (e.g. a saddle far outside the circle)
     * measure those features' geometry, not the ridge's. */
    const auto cell_center = [&k](CellId c) {
        std::array<CellId, 8> vs;
        const int n = k.cell_vertices(c, vs);
        double x = 0.0, y = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto p = k.coord(vs[i]);
            x += p[0];
            y += p[1];
        }
        return std::array<double, 2>{x / n, y / n};
    };
    const auto near_circle = [&](CellId c) {
        const auto p = cell_center(c);
        const double r = std::hypot(p[0] - center[0], p[1] - center[1]);
        return std::abs(r - radius) < 0.5 * radius;
    };
    const int top = k.dim();
    std::vector<std::array<double, 3>> pts; /* x, y, cell value */
    for (const Separatrix& sep : ms.separatrices) {
        const CriticalCell* hi = ms.find_critical(sep.from);
        if (!hi || hi->index != top) continue;
        if (!near_circle(sep.from) || !near_circle(sep.to)) continue;
        for (const CellId c : sep.path) {
            const auto p = cell_center(c);
            pts.push_back({p[0], p[1], k.value(k.max_vertex(c))});
        }
    }
    if (pts.empty()) return 0.0;

    std::vector<double> vals;
    vals.reserve(pts.size());
    for (const auto& p : pts) vals.push_back(p[2]);
    std::sort(vals.begin(), vals.end());
    const double q = std::clamp(quantile, 0.0, 1.0);
    const double cut =
        vals[static_cast<std::size_t>(q * (static_cast<double>(vals.size()) - 1))];

    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& p : pts) {
        if (p[2] < cut) continue;
        const double r = std::hypot(p[0] - center[0], p[1] - center[1]);
        sum += std::abs(r - radius);
        ++n;
    }
    return n ? sum / n : 0.0;
}

} // namespace mscx
