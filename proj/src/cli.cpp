#include "mscx/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mscx/analysis.hpp"
#include "mscx/grids.hpp"
#include "mscx/io.hpp"

namespace mscx {

namespace {

CellComplex build_complex(const ScalarGrid& g) {
    return g.dim() == 3 ? build_cubical_3d(g) : build_cubical_2d(g);
}

/* "45%" means that share of the value range; a bare number is absolute */
double parse_threshold(const std::string& s, double range) {
    try {
        if (!s.empty() && s.back() == '%') {
            std::size_t used = 0;
            const double pct = std::stod(s.substr(0, s.size() - 1), &used);
            if (used != s.size() - 1) throw std::invalid_argument(s);
            return pct / 100.0 * range;
        }
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("bad threshold '" + s +
                                 "' (use an absolute value or 'NN%')");
    }
}

double vertex_value_range(const CellComplex& k) {
    double lo = k.value(CellId{0}), hi = lo;
    for (std::int64_t i = 1; i < k.cells_of_dim(0); ++i) {
        const double v = k.value(CellId{static_cast<std::int32_t>(i)});
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

struct SampleArgs {
    std::string function, builtin, out, noise;
    std::vector<int> dims, new_dims;
    std::vector<double> domain;
    int upsample_factor = 1;
    std::uint64_t noise_seed = 0;
};

void cmd_sample(const SampleArgs& a) {
    Manifest m;
    m.command = "sample";
    m.output = a.out;
    ScalarGrid g;
    if (a.builtin.empty() == a.function.empty())
        throw std::runtime_error("sample: give exactly one of --function/--builtin");
    if (!a.builtin.empty()) {
        g = builtin_grid(a.builtin);
        m.param("builtin", a.builtin);
    } else {
        if (a.dims.size() != 2 || a.domain.size() != 4)
            throw std::runtime_error("sample: --function needs --dims NX NY and "
                                     "--domain X0 X1 Y0 Y1");
        const Field2D fn = a.function == "ring" ? Field2D(eval_ring)
                                                : Field2D(eval_trig);
        g = sample_field(fn, a.dims[0], a.dims[1],
                         {a.domain[0], a.domain[1], a.domain[2], a.domain[3]});
        m.param("function", a.function);
        m.param("dims", std::to_string(a.dims[0]) + " " + std::to_string(a.dims[1]));
        std::string dom;
        for (double d : a.domain) dom += (dom.empty() ? "" : " ") + std::to_string(d);
        m.param("domain", dom);
    }
    if (a.upsample_factor > 1) {
        g = upsample(g, a.upsample_factor);
        m.param("upsample", std::to_string(a.upsample_factor));
    }
    if (!a.new_dims.empty()) {
        if (a.new_dims.size() != 2)
            throw std::runtime_error("sample: --resample needs NX NY");
        g = resample(g, a.new_dims[0], a.new_dims[1]);
        m.param("resample", std::to_string(a.new_dims[0]) + " " +
                                std::to_string(a.new_dims[1]));
    }
    if (!a.noise.empty()) {
        const double amp =
            parse_threshold(a.noise, g.max_value() - g.min_value());
        g = add_noise(g, amp, a.noise_seed);
        m.param("noise", a.noise);
        m.param("noise_seed", std::to_string(a.noise_seed));
    }
    write_grid(a.out, g, m);
}

struct GridArgs {
    std::string kind, in, out;
    std::uint64_t seed = 0;
    int count = 0;
    double min_dist = 0.0;
};

void cmd_grid(const GridArgs& a) {
    Manifest m;
    m.command = "grid";
    m.inputs = {a.in};
    m.output = a.out;
    m.param("kind", a.kind);
    const ScalarGrid g = read_grid(a.in);
    if (a.kind == "uniform") {
        write_grid(a.out, g, m);
        return;
    }
    if (g.dim() != 2)
        throw std::runtime_error("grid: mesh conversions are 2D only");
    TriMesh mesh;
    if (a.kind == "diag") {
        mesh = diagonal_triangulate(g);
    } else if (a.kind == "suggested") {
        m.param("seed", std::to_string(a.seed));
        mesh = subdivide_suggested(g, a.seed);
    } else { /* poisson */
        const auto lo = g.coord(0, 0);
        const auto hi = g.coord(g.dims[0] - 1, g.dims[1] - 1);
        const int count = a.count > 0
                              ? a.count
                              : static_cast<int>(g.vertex_count());
        const double min_dist =
            a.min_dist > 0.0 ? a.min_dist
                             : 0.65 * std::min(g.spacing[0], g.spacing[1]);
        m.param("seed", std::to_string(a.seed));
        m.param("count", std::to_string(count));
        m.param("min_dist", std::to_string(min_dist));
        mesh = poisson_delaunay({lo[0], hi[0], lo[1], hi[1]}, count, min_dist,
                                a.seed,
                                [&g](double x, double y) { return bilinear(g, x, y); });
    }
    write_mesh(a.out, mesh, m);
}

struct MscArgs {
    std::string in, out, policy = "steepest", persistence;
    std::uint64_t seed = 0;
};

void cmd_msc(const MscArgs& a) {
    Manifest m;
    m.command = "msc";
    m.inputs = {a.in};
    m.output = a.out;
    m.param("policy", a.policy);
    if (a.policy == "probabilistic") m.param("seed", std::to_string(a.seed));

    const DataFileKind kind = sniff_data_file(a.in);
    const CellComplex k = [&]() -> CellComplex {
        if (kind == DataFileKind::Grid) return build_complex(read_grid(a.in));
        if (kind == DataFileKind::Mesh) return build_simplicial(read_mesh(a.in));
        throw std::runtime_error(a.in + ": expected a grid or mesh file");
    }();

    const FirstVectorPolicy policy = a.policy == "steepest"
                                         ? FirstVectorPolicy::steepest()
                                         : FirstVectorPolicy::probabilistic(a.seed);
    GradientField gf = compute_gradient(k, policy);
    MSComplex ms;
    if (!a.persistence.empty()) {
        const double thr = parse_threshold(a.persistence, vertex_value_range(k));
        m.param("persistence", a.persistence);
        ms = simplify(k, gf, thr);
    } else {
        ms = extract(k, gf);
    }
    write_msc(a.out, ms, m);
}

struct DiffArgs {
    std::string a, b, out;
};

void cmd_diff(const DiffArgs& a) {
    Manifest m;
    m.command = "diff";
    m.inputs = {a.a, a.b};
    m.output = a.out;
    const MscSummary sa = read_msc_summary(a.a);
    const MscSummary sb = read_msc_summary(a.b);
    const DiffReport rep = diff_complexes(sa, sb);
    write_diff(a.out, rep, m);
    std::cout << "moved_saddles " << rep.moved_saddles.size()
              << "\nconnectivity_changes " << rep.changed_separatrices.size()
              << "\nconnectivity_delta " << rep.connectivity_delta()
              << "\nerrors " << rep.errors.size() << "\n";
}

struct StatsArgs {
    std::string in, out;
    double bin_width = 5.0;
};

void cmd_stats(const StatsArgs& a) {
    Manifest m;
    m.command = "stats";
    m.inputs = {a.in};
    m.output = a.out;
    m.param("bin_width", std::to_string(a.bin_width));
    const DataFileKind kind = sniff_data_file(a.in);
    TriMesh mesh;
    if (kind == DataFileKind::Grid)
        mesh = grid_skeleton(read_grid(a.in));
    else if (kind == DataFileKind::Mesh)
        mesh = read_mesh(a.in);
    else
        throw std::runtime_error(a.in + ": expected a grid or mesh file");
    write_histograms_csv(a.out, edge_direction_histogram(mesh, a.bin_width),
                         vertex_degree_histogram(mesh), m);
}

struct ExperimentArgs {
    std::string out;
    int size = 8, trials = 100, base = 0;
    std::uint64_t seed = 0;
};

void cmd_experiment(const ExperimentArgs& a) {
    Manifest m;
    m.command = "experiment";
    m.output = a.out;
    m.param("size", std::to_string(a.size));
    m.param("trials", std::to_string(a.trials));
    m.param("seed", std::to_string(a.seed));
    ExperimentResult res;
    if (a.base > 0) {
        if (a.size % a.base != 0)
            throw std::runtime_error("experiment: --size must be a multiple of --base");
        m.param("base", std::to_string(a.base));
        res = run_experiment_interpolated(a.base, a.size / a.base, a.trials, a.seed);
    } else {
        res = run_experiment(a.size, a.trials, a.seed);
    }
    write_experiment_csv(a.out, {res}, m);
    std::cout << "size " << res.size << " trials " << res.n_trials
              << " positional " << res.n_positional << " connectivity "
              << res.n_connectivity << "\n";
}

struct RenderArgs {
    std::string in, field, out;
};

void cmd_render(const RenderArgs& a) {
    Manifest m;
    m.command = "render";
    m.inputs = {a.in};
    if (!a.field.empty()) m.inputs.push_back(a.field);
    m.output = a.out;
    const DataFileKind kind = sniff_data_file(a.in);
    if (kind == DataFileKind::MscJson) {
        const MscFileData data = read_msc(a.in);
        ScalarGrid bg;
        if (!a.field.empty()) bg = read_grid(a.field);
        write_text_file(a.out,
                        render_msc_svg(data, a.field.empty() ? nullptr : &bg, m));
    } else if (kind == DataFileKind::Mesh) {
        write_text_file(a.out, render_mesh_svg(read_mesh(a.in), m));
    } else {
        throw std::runtime_error(a.in + ": expected a complex or mesh file");
    }
}

} // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"discrete Morse-Smale complexes of sampled scalar fields"};
    app.name("mscx");
    app.require_subcommand(1);

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "write a scalar grid file");
    sample->add_option("--function", sa.function, "analytic field")
        ->check(CLI::IsMember({"ring", "trig"}));
    sample->add_option("--builtin", sa.builtin, "built-in fixture")
        ->check(CLI::IsMember({"matrixA", "tensorB"}));
    sample->add_option("--dims", sa.dims, "lattice extents NX NY")->expected(2);
    sample->add_option("--domain", sa.domain, "X0 X1 Y0 Y1")->expected(4);
    sample->add_option("--upsample", sa.upsample_factor, "refine each cell");
    sample->add_option("--resample", sa.new_dims, "bilinear resample to NX NY")
        ->expected(2);
    sample->add_option("--noise", sa.noise, "uniform noise amplitude or 'NN%'");
    sample->add_option("--noise-seed", sa.noise_seed, "noise stream seed");
    sample->add_option("--out", sa.out, "output grid file")->required();
    sample->callback([&sa] { cmd_sample(sa); });

    GridArgs ga;
    auto* grid = app.add_subcommand("grid", "convert a grid to a mesh");
    grid->add_option("--kind", ga.kind, "uniform|diag|poisson|suggested")
        ->required()
        ->check(CLI::IsMember({"uniform", "diag", "poisson", "suggested"}));
    grid->add_option("--in", ga.in, "input grid file")->required();
    grid->add_option("--seed", ga.seed, "placement seed");
    grid->add_option("--count", ga.count, "poisson interior point target");
    grid->add_option("--min-dist", ga.min_dist, "poisson minimum spacing");
    grid->add_option("--out", ga.out, "output file")->required();
    grid->callback([&ga] { cmd_grid(ga); });

    MscArgs ma;
    auto* msc = app.add_subcommand("msc", "compute a Morse-Smale complex");
    msc->add_option("--in", ma.in, "grid or mesh file")->required();
    msc->add_option("--policy", ma.policy, "first-vector policy")
        ->check(CLI::IsMember({"steepest", "probabilistic"}));
    msc->add_option("--seed", ma.seed, "probabilistic draw seed");
    msc->add_option("--persistence", ma.persistence,
                    "simplification threshold, absolute or 'NN%'");
    msc->add_option("--out", ma.out, "output complex file")->required();
    msc->callback([&ma] { cmd_msc(ma); });

    DiffArgs da;
    auto* diff = app.add_subcommand("diff", "compare two complexes");
    diff->add_option("--a", da.a, "first complex file")->required();
    diff->add_option("--b", da.b, "second complex file")->required();
    diff->add_option("--out", da.out, "output report file")->required();
    diff->callback([&da] { cmd_diff(da); });

    StatsArgs ta;
    auto* stats = app.add_subcommand("stats", "edge direction / degree histograms");
    stats->add_option("--in", ta.in, "grid or mesh file")->required();
    stats->add_option("--bin-width", ta.bin_width, "direction bin width (degrees)");
    stats->add_option("--out", ta.out, "output CSV file")->required();
    stats->callback([&ta] { cmd_stats(ta); });

    ExperimentArgs ea;
    auto* exp = app.add_subcommand("experiment", "policy-difference trial batch");
    exp->add_option("--size", ea.size, "grid edge length")->required();
    exp->add_option("--trials", ea.trials, "number of trials")->required();
    exp->add_option("--seed", ea.seed, "batch seed");
    exp->add_option("--base", ea.base,
                    "interpolate from this base size up to --size");
    exp->add_option("--out", ea.out, "output CSV file")->required();
    exp->callback([&ea] { cmd_experiment(ea); });

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "draw a complex or mesh as SVG");
    render->add_option("--in", ra.in, "complex or mesh file")->required();
    render->add_option("--field", ra.field, "grid file for the background");
    render->add_option("--out", ra.out, "output SVG file")->required();
    render->callback([&ra] { cmd_render(ra); });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace mscx
