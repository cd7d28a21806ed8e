#include <memory>
#include <stdexcept>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mscx/analysis.hpp"
#include "mscx/grids.hpp"
#include "mscx/io.hpp"

namespace py = pybind11;
using namespace mscx;

namespace {

/* The complex and its Morse-Smale data bundled so Python owns both. */
struct PyMsc {
    std::shared_ptr<CellComplex> complex;
    MSComplex ms;
};

std::shared_ptr<CellComplex> complex_of(const ScalarGrid& g) {
    return std::make_shared<CellComplex>(
        g.dim() == 3 ? build_cubical_3d(g) : build_cubical_2d(g));
}

FirstVectorPolicy make_policy(const std::string& name, std::uint64_t seed) {
    if (name == "steepest") return FirstVectorPolicy::steepest();
    if (name == "probabilistic") return FirstVectorPolicy::probabilistic(seed);
    throw std::invalid_argument("policy must be 'steepest' or 'probabilistic'");
}

PyMsc make_msc(std::shared_ptr<CellComplex> k, const std::string& policy,
               std::uint64_t seed, double persistence) {
    GradientField gf = compute_gradient(*k, make_policy(policy, seed));
    const ValidationReport rep = validate_gradient(*k, gf);
    if (!rep.ok) throw std::runtime_error("invalid gradient: " + rep.message);
    PyMsc out;
    out.complex = std::move(k);
    out.ms = persistence > 0.0 ? simplify(*out.complex, gf, persistence)
                               : extract(*out.complex, gf);
    return out;
}

py::dict report_to_dict(const DiffReport& rep) {
    py::list moved;
    for (const MovedSaddle& s : rep.moved_saddles)
        moved.append(py::make_tuple(s.index, s.owner, s.cell_a, s.cell_b));
    py::list conn;
    for (const ConnectivityChange& c : rep.changed_separatrices)
        conn.append(py::make_tuple(c.key.layer, c.key.owner_hi, c.key.owner_lo,
                                   c.count_a, c.count_b));
    py::dict d;
    d["moved_saddles"] = std::move(moved);
    d["connectivity_changes"] = std::move(conn);
    d["errors"] = rep.errors;
    d["identical"] = rep.identical();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "discrete Morse-Smale complexes of sampled scalar fields";

    py::class_<ScalarGrid>(m, "Grid")
        .def_property_readonly(
            "dims", [](const ScalarGrid& g) {
                return py::make_tuple(g.dims[0], g.dims[1], g.dims[2]);
            })
        .def_property_readonly(
            "values", [](const ScalarGrid& g) { return g.values; })
        .def("at",
             [](const ScalarGrid& g, int x, int y, int z) { return g.at(x, y, z); },
             py::arg("x"), py::arg("y"), py::arg("z") = 0)
        .def("__repr__", [](const ScalarGrid& g) {
            return "Grid(" + std::to_string(g.dims[0]) + "x" +
                   std::to_string(g.dims[1]) + "x" + std::to_string(g.dims[2]) +
                   ")";
        });

    py::class_<TriMesh>(m, "Mesh")
        .def_property_readonly(
            "vertex_count", [](const TriMesh& t) { return t.vertices.size(); })
        .def_property_readonly(
            "triangle_count", [](const TriMesh& t) { return t.triangles.size(); })
        .def_property_readonly(
            "edge_count", [](const TriMesh& t) { return t.edges.size(); })
        .def("euler", &TriMesh::euler_characteristic)
        .def("vertex",
             [](const TriMesh& t, std::size_t i) {
                 const auto& v = t.vertices.at(i);
                 return py::make_tuple(v.x, v.y, v.value, v.boundary);
             })
        .def("__repr__", [](const TriMesh& t) {
            return "Mesh(" + std::to_string(t.vertices.size()) + " vertices, " +
                   std::to_string(t.triangles.size()) + " triangles)";
        });

    py::class_<PyMsc>(m, "MorseSmale")
        .def_property_readonly(
            "critical_counts",
            [](const PyMsc& p) { return p.ms.critical_counts(); })
        .def_property_readonly("euler", [](const PyMsc& p) { return p.ms.euler(); })
        .def("criticals",
             [](const PyMsc& p) {
                 py::list out;
                 for (const CriticalCell& c : p.ms.criticals)
                     out.append(py::make_tuple(c.cell.v, c.index, c.owner.v,
                                               c.value));
                 return out;
             })
        .def("connectivity",
             [](const PyMsc& p) {
                 py::list out;
                 for (const auto& [key, count] : summarize(p.ms).connectivity)
                     out.append(py::make_tuple(key.layer, key.owner_hi,
                                               key.owner_lo, count));
                 return out;
             })
        .def("separatrix_count",
             [](const PyMsc& p) { return p.ms.separatrices.size(); })
        .def("__repr__", [](const PyMsc& p) {
            return "MorseSmale(" + std::to_string(p.ms.criticals.size()) +
                   " criticals, " + std::to_string(p.ms.separatrices.size()) +
                   " separatrices)";
        });

    m.def("builtin_grid", &builtin_grid, py::arg("name"),
          "built-in fixtures: 'matrixA' (4x4) or 'tensorB' (3x3x3)");
    m.def(
        "sample",
        [](const std::string& function, int nx, int ny,
           const std::array<double, 4>& domain) {
            if (function == "ring") return sample_field(eval_ring, nx, ny, domain);
            if (function == "trig") return sample_field(eval_trig, nx, ny, domain);
            throw std::invalid_argument("function must be 'ring' or 'trig'");
        },
        py::arg("function"), py::arg("nx"), py::arg("ny"), py::arg("domain"));
    m.def("random_field", &random_field, py::arg("nx"), py::arg("ny"),
          py::arg("seed"));
    m.def("random_field_3d", &random_field_3d, py::arg("nx"), py::arg("ny"),
          py::arg("nz"), py::arg("seed"));
    m.def("resample", &resample, py::arg("grid"), py::arg("nx"), py::arg("ny"));
    m.def("upsample", &upsample, py::arg("grid"), py::arg("factor"));
    m.def("add_noise", &add_noise, py::arg("grid"), py::arg("amplitude"),
          py::arg("seed"));

    m.def("diagonal_mesh", &diagonal_triangulate, py::arg("grid"));
    m.def("suggested_mesh", &subdivide_suggested, py::arg("grid"), py::arg("seed"));
    m.def(
        "poisson_mesh",
        [](const ScalarGrid& g, int count, double min_dist, std::uint64_t seed) {
            const auto lo = g.coord(0, 0);
            const auto hi = g.coord(g.dims[0] - 1, g.dims[1] - 1);
            return poisson_delaunay(
                {lo[0], hi[0], lo[1], hi[1]}, count, min_dist, seed,
                [&g](double x, double y) { return bilinear(g, x, y); });
        },
        py::arg("grid"), py::arg("count"), py::arg("min_dist"), py::arg("seed"),
        "Poisson-disc mesh over the grid's domain, valued by interpolation");
    m.def(
        "direction_histogram",
        [](const TriMesh& mesh, double width) {
            return edge_direction_histogram(mesh, width).counts;
        },
        py::arg("mesh"), py::arg("bin_width") = 5.0);

    m.def(
        "morse_smale",
        [](const ScalarGrid& g, const std::string& policy, std::uint64_t seed,
           double persistence) {
            return make_msc(complex_of(g), policy, seed, persistence);
        },
        py::arg("grid"), py::arg("policy") = "steepest", py::arg("seed") = 0,
        py::arg("persistence") = 0.0);
    m.def(
        "morse_smale_mesh",
        [](const TriMesh& mesh, const std::string& policy, std::uint64_t seed,
           double persistence) {
            return make_msc(std::make_shared<CellComplex>(build_simplicial(mesh)),
                            policy, seed, persistence);
        },
        py::arg("mesh"), py::arg("policy") = "steepest", py::arg("seed") = 0,
        py::arg("persistence") = 0.0);

    m.def(
        "diff",
        [](const PyMsc& a, const PyMsc& b) {
            return report_to_dict(diff_complexes(summarize(a.ms), summarize(b.ms)));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "run_experiment",
        [](int size, int trials, std::uint64_t seed) {
            const ExperimentResult r = run_experiment(size, trials, seed);
            py::dict d;
            d["size"] = r.size;
            d["trials"] = r.n_trials;
            d["positional"] = r.n_positional;
            d["connectivity"] = r.n_connectivity;
            return d;
        },
        py::arg("size"), py::arg("trials"), py::arg("seed"));
    m.def(
        "circle_deviation",
        [](const PyMsc& p, double cx, double cy, double radius, double quantile) {
            return circle_deviation(p.ms, {cx, cy}, radius, quantile);
        },
        py::arg("msc"), py::arg("cx"), py::arg("cy"), py::arg("radius"),
        py::arg("quantile") = 0.75);
}
