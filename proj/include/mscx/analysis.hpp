#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mscx/morse.hpp"

namespace mscx {

/* Owner-star digest of one Morse-Smale complex: everything needed to
 * compare two complexes positionally and by connectivity, detached from the
 * live cell complex so written files can be diffed after a round trip. */
struct CriticalRecord {
    std::int64_t cell = -1;
    int index = 0;
    std::int64_t owner = -1;
    double value = 0.0;
};

/* Connectivity key of one separatrix: the layer (index of the higher
 * endpoint) plus the endpoint owner stars. */
struct SepKey {
    int layer = 0;
    std::int64_t owner_hi = -1;
    std::int64_t owner_lo = -1;
    auto operator<=>(const SepKey&) const = default;
};

struct MscSummary {
    std::uint64_t complex_hash = 0;
    int top_dim = 2;
    std::vector<CriticalRecord> criticals;
    std::map<SepKey, std::int64_t> connectivity; /* summed multiplicity */
};

MscSummary summarize(const MSComplex& ms);

/* A critical cell that sits at a different position in the two complexes
 * while keeping its owner star (cell_a from the first complex, cell_b from
 * the second). */
struct MovedSaddle {
    int index = 0;
    std::int64_t owner = -1;
    std::int64_t cell_a = -1;
    std::int64_t cell_b = -1;
};

/* A connectivity key whose multiplicity differs between the complexes. */
struct ConnectivityChange {
    SepKey key;
    std::int64_t count_a = 0;
    std::int64_t count_b = 0;
};

struct DiffReport {
    std::vector<MovedSaddle> moved_saddles;
    std::vector<ConnectivityChange> changed_separatrices;
    /* owner buckets with unequal critical counts; empty in theory */
    std::vector<std::string> errors;

    bool identical() const {
        return moved_saddles.empty() && changed_separatrices.empty() &&
               errors.empty();
    }
    /* multiset symmetric-difference size, same counted from either side */
    std::int64_t connectivity_delta() const;
};

/* Full positional + connectivity comparison. Throws when the summaries are
 * over different underlying complexes. */
DiffReport diff_complexes(const MscSummary& a, const MscSummary& b);

std::vector<MovedSaddle> diff_saddles(const MSComplex& a, const MSComplex& b);
std::vector<ConnectivityChange> diff_connectivity(const MSComplex& a,
                                                  const MSComplex& b);

/* One batch of randomized trials: per trial, a fresh random permutation
 * field, steepest vs one probabilistic draw, counting trials with at least
 * one saddle move and trials with at least one connectivity change. */
struct ExperimentResult {
    int size = 0;
    int n_trials = 0;
    int n_positional = 0;
    int n_connectivity = 0;
    std::uint64_t seed = 0;

    double positional_fraction() const {
        return n_trials ? static_cast<double>(n_positional) / n_trials : 0.0;
    }
    double connectivity_fraction() const {
        return n_trials ? static_cast<double>(n_connectivity) / n_trials : 0.0;
    }
};

ExperimentResult run_experiment(int size, int n_trials, std::uint64_t seed);

/* Same trials, but each base_size field is first interpolated bilinearly to
 * (base_size * factor) per axis; factor 1 degenerates to run_experiment. */
ExperimentResult run_experiment_interpolated(int base_size, int factor,
                                             int n_trials, std::uint64_t seed);

/* Geometric-accuracy proxy against a circular ridge: over the cells of the
 * ascending (top, top-1) separatrix layer — the layer that traces ridges —
 * keep the arcs whose critical endpoints both lie within half a radius of
 * the target circle, drop cells whose value misses the given quantile, and
 * average | |p - center| - radius | where p is the cell's vertex-averaged
 * position. */
double circle_deviation(const MSComplex& ms, std::array<double, 2> center,
                        double radius, double quantile = 0.75);

} // namespace mscx
