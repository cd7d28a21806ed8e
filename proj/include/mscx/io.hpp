#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mscx/analysis.hpp"
#include "mscx/fields.hpp"
#include "mscx/trimesh.hpp"

namespace mscx {

/* Provenance header echoed into every output file: the command, its inputs
 * and output, and every parameter needed to regenerate the file. */
struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;
    std::vector<std::pair<std::string, std::string>> params;

    void param(const std::string& key, const std::string& value) {
        params.emplace_back(key, value);
    }
    std::string to_json_string() const;
};

/* line-oriented scalar grid file: manifest comments, then `dims`, `origin`,
 * `spacing`, `values` */
void write_grid(const std::string& path, const ScalarGrid& g, const Manifest& m);
ScalarGrid read_grid(const std::string& path);

/* counts line `mesh nv nt ne`, vertex lines `x y value boundary-flag`,
 * triangle lines, edge lines; round-trips exactly */
void write_mesh(const std::string& path, const TriMesh& mesh, const Manifest& m);
TriMesh read_mesh(const std::string& path);

enum class DataFileKind { Grid, Mesh, MscJson, Unknown };
DataFileKind sniff_data_file(const std::string& path);

/* Morse-Smale complex as JSON: complex descriptor, critical cells with
 * centers, separatrices with owner keys and coordinate polylines. */
void write_msc(const std::string& path, const MSComplex& ms, const Manifest& m);

/* geometry parsed back from an MSC file (enough to diff and render) */
struct MscFileData {
    MscSummary summary;
    std::vector<std::array<double, 3>> critical_centers;
    struct Arc {
        int layer = 1;
        std::vector<std::array<double, 3>> points;
    };
    std::vector<Arc> arcs;
};
MscFileData read_msc(const std::string& path);
MscSummary read_msc_summary(const std::string& path);

void write_diff(const std::string& path, const DiffReport& rep, const Manifest& m);

/* direction + degree histograms as one CSV: table,bin_lo,bin_hi,count */
void write_histograms_csv(const std::string& path, const Histogram& directions,
                          const Histogram& degrees, const Manifest& m);

/* one CSV row per batch: size,trials,positional,connectivity,seed */
void write_experiment_csv(const std::string& path,
                          const std::vector<ExperimentResult>& rows,
                          const Manifest& m);

/* SVG of a written complex: optional grayscale field background, separatrix
 * polylines, colored critical markers (minima blue, saddles green / 3D
 * 2-saddles yellow, maxima red). 2D only. */
std::string render_msc_svg(const MscFileData& data, const ScalarGrid* background,
                           const Manifest& m);
/* SVG of a triangle mesh: value-shaded faces plus edges */
std::string render_mesh_svg(const TriMesh& mesh, const Manifest& m);

void write_text_file(const std::string& path, const std::string& content);

} // namespace mscx
