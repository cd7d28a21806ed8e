#include "mscx/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mscx {

using json = nlohmann::ordered_json;

namespace {

/* shortest round-trip decimal form */
std::string fmt_double(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string fmt_px(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string hex_u64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json manifest_json(const Manifest& m) {
    json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["output"] = m.output;
    json p = json::object();
    for (const auto& [k, v] : m.params) p[k] = v;
    j["params"] = std::move(p);
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/* whitespace tokens with '#' comments running to end of line */
struct Tokens {
    std::string text;
    std::size_t pos = 0;
    std::string src;

    bool next(std::string& out) {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= text.size()) return false;
        const std::size_t start = pos;
        while (pos < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        out = text.substr(start, pos - start);
        return true;
    }
    std::string need(const char* what) {
        std::string t;
        if (!next(t))
            throw std::runtime_error(src + ": unexpected end of file, expected " +
                                     std::string(what));
        return t;
    }
    double need_double(const char* what) {
        const std::string t = need(what);
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error(src + ": bad number '" + t + "' for " +
                                     std::string(what));
        }
    }
    std::int64_t need_int(const char* what) {
        const std::string t = need(what);
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error(src + ": bad integer '" + t + "' for " +
                                     std::string(what));
        }
    }
};

std::array<double, 3> cell_center(const CellComplex& k, CellId c) {
    std::array<CellId, 8> vs;
    const int n = k.cell_vertices(c, vs);
    std::array<double, 3> acc{0, 0, 0};
    for (int i = 0; i < n; ++i) {
        const auto p = k.coord(vs[i]);
        for (int d = 0; d < 3; ++d) acc[d] += p[d];
    }
    for (int d = 0; d < 3; ++d) acc[d] /= n;
    return acc;
}

} // namespace

std::string Manifest::to_json_string() const { return manifest_json(*this).dump(); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_grid(const std::string& path, const ScalarGrid& g, const Manifest& m) {
    if (!g.valid()) throw std::invalid_argument("write_grid: invalid grid");
    std::string s;
    s += "# mscx grid\n# manifest ";
    s += m.to_json_string();
    s += "\n";
    s += "dims " + std::to_string(g.dims[0]) + " " + std::to_string(g.dims[1]) +
         " " + std::to_string(g.dims[2]) + "\n";
    s += "origin " + fmt_double(g.origin[0]) + " " + fmt_double(g.origin[1]) +
         " " + fmt_double(g.origin[2]) + "\n";
    s += "spacing " + fmt_double(g.spacing[0]) + " " + fmt_double(g.spacing[1]) +
         " " + fmt_double(g.spacing[2]) + "\n";
    s += "values\n";
    std::int64_t i = 0;
    for (int z = 0; z < g.dims[2]; ++z)
        for (int y = 0; y < g.dims[1]; ++y) {
            for (int x = 0; x < g.dims[0]; ++x) {
                s += fmt_double(g.values[i++]);
                s += x + 1 < g.dims[0] ? ' ' : '\n';
            }
        }
    write_text_file(path, s);
}

ScalarGrid read_grid(const std::string& path) {
    Tokens tk{slurp(path), 0, path};
    ScalarGrid g;
    bool have_dims = false, have_values = false;
    std::string t;
    while (tk.next(t)) {
        if (t == "dims") {
            for (int d = 0; d < 3; ++d)
                g.dims[d] = static_cast<int>(tk.need_int("dims"));
            have_dims = true;
        } else if (t == "origin") {
            for (int d = 0; d < 3; ++d) g.origin[d] = tk.need_double("origin");
        } else if (t == "spacing") {
            for (int d = 0; d < 3; ++d) g.spacing[d] = tk.need_double("spacing");
        } else if (t == "values") {
            if (!have_dims)
                throw std::runtime_error(path + ": values before dims");
            g.values.resize(g.vertex_count());
            for (auto& v : g.values) v = tk.need_double("value");
            have_values = true;
        } else {
            throw std::runtime_error(path + ": unknown grid keyword '" + t + "'");
        }
    }
    if (!have_dims || !have_values)
        throw std::runtime_error(path + ": incomplete grid file");
    if (!g.valid()) throw std::runtime_error(path + ": inconsistent grid file");
    return g;
}

void write_mesh(const std::string& path, const TriMesh& mesh, const Manifest& m) {
    std::string s;
    s += "# mscx mesh\n# manifest ";
    s += m.to_json_string();
    s += "\n";
    s += "mesh " + std::to_string(mesh.vertices.size()) + " " +
         std::to_string(mesh.triangles.size()) + " " +
         std::to_string(mesh.edges.size()) + "\n";
    for (const auto& v : mesh.vertices)
        s += fmt_double(v.x) + " " + fmt_double(v.y) + " " + fmt_double(v.value) +
             (v.boundary ? " 1\n" : " 0\n");
    for (const auto& t : mesh.triangles)
        s += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
             std::to_string(t[2]) + "\n";
    for (const auto& e : mesh.edges)
        s += std::to_string(e[0]) + " " + std::to_string(e[1]) + "\n";
    write_text_file(path, s);
}

TriMesh read_mesh(const std::string& path) {
    Tokens tk{slurp(path), 0, path};
    if (tk.need("mesh header") != "mesh")
        throw std::runtime_error(path + ": not a mesh file");
    const std::int64_t nv = tk.need_int("vertex count");
    const std::int64_t nt = tk.need_int("triangle count");
    const std::int64_t ne = tk.need_int("edge count");
    if (nv < 0 || nt < 0 || ne < 0)
        throw std::runtime_error(path + ": negative count");
    TriMesh mesh;
    mesh.vertices.resize(nv);
    for (auto& v : mesh.vertices) {
        v.x = tk.need_double("vertex x");
        v.y = tk.need_double("vertex y");
        v.value = tk.need_double("vertex value");
        v.boundary = tk.need_int("boundary flag") != 0;
    }
    const auto vert_id = [&](const char* what) {
        const std::int64_t i = tk.need_int(what);
        if (i < 0 || i >= nv)
            throw std::runtime_error(path + ": vertex id out of range");
        return static_cast<int>(i);
    };
    mesh.triangles.resize(nt);
    for (auto& t : mesh.triangles)
        for (int i = 0; i < 3; ++i) t[i] = vert_id("triangle vertex");
    mesh.edges.resize(ne);
    for (auto& e : mesh.edges)
        for (int i = 0; i < 2; ++i) e[i] = vert_id("edge vertex");
    std::string extra;
    if (tk.next(extra))
        throw std::runtime_error(path + ": trailing content '" + extra + "'");
    return mesh;
}

DataFileKind sniff_data_file(const std::string& path) {
    Tokens tk{slurp(path), 0, path};
    std::string t;
    if (!tk.next(t)) return DataFileKind::Unknown;
    if (t == "dims") return DataFileKind::Grid;
    if (t == "mesh") return DataFileKind::Mesh;
    if (!t.empty() && t[0] == '{') return DataFileKind::MscJson;
    return DataFileKind::Unknown;
}

void write_msc(const std::string& path, const MSComplex& ms, const Manifest& m) {
    if (!ms.complex) throw std::invalid_argument("write_msc: detached complex");
    const CellComplex& k = *ms.complex;
    json j;
    j["format"] = "msc";
    j["manifest"] = manifest_json(m);
    json cx;
    cx["kind"] = k.kind() == CellComplex::Kind::Cubical ? "cubical" : "simplicial";
    cx["dim"] = k.dim();
    cx["counts"] = {k.cells_of_dim(0), k.cells_of_dim(1), k.cells_of_dim(2),
                    k.cells_of_dim(3)};
    cx["hash"] = hex_u64(k.descriptor_hash());
    j["complex"] = std::move(cx);

    json crits = json::array();
    for (const CriticalCell& c : ms.criticals) {
        json e;
        e["cell"] = c.cell.v;
        e["index"] = c.index;
        e["owner"] = c.owner.v;
        e["value"] = c.value;
        const auto p = cell_center(k, c.cell);
        e["center"] = {p[0], p[1], p[2]};
        crits.push_back(std::move(e));
    }
    j["criticals"] = std::move(crits);

    json seps = json::array();
    for (const Separatrix& s : ms.separatrices) {
        const CriticalCell* hi = ms.find_critical(s.from);
        const CriticalCell* lo = ms.find_critical(s.to);
        if (!hi || !lo)
            throw std::logic_error("write_msc: separatrix endpoint not critical");
        json e;
        e["from"] = s.from.v;
        e["to"] = s.to.v;
        e["layer"] = hi->index;
        e["multiplicity"] = s.multiplicity;
        e["owner_from"] = hi->owner.v;
        e["owner_to"] = lo->owner.v;
        json pts = json::array();
        for (const CellId c : s.path) {
            const auto p = cell_center(k, c);
            pts.push_back({p[0], p[1], p[2]});
        }
        e["points"] = std::move(pts);
        seps.push_back(std::move(e));
    }
    j["separatrices"] = std::move(seps);
    write_text_file(path, j.dump(1, '\t') + "\n");
}

MscFileData read_msc(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": not valid JSON (" + e.what() + ")");
    }
    if (!j.is_object() || j.value("format", "") != "msc")
        throw std::runtime_error(path + ": not a Morse-Smale complex file");
    MscFileData data;
    try {
        const json& cx = j.at("complex");
        data.summary.complex_hash =
            std::stoull(cx.at("hash").get<std::string>(), nullptr, 16);
        data.summary.top_dim = cx.at("dim").get<int>();
        for (const json& e : j.at("criticals")) {
            data.summary.criticals.push_back(
                {e.at("cell").get<std::int64_t>(), e.at("index").get<int>(),
                 e.at("owner").get<std::int64_t>(), e.at("value").get<double>()});
            const json& c = e.at("center");
            data.critical_centers.push_back(
                {c.at(0).get<double>(), c.at(1).get<double>(),
                 c.at(2).get<double>()});
        }
        for (const json& e : j.at("separatrices")) {
            const SepKey key{e.at("layer").get<int>(),
                             e.at("owner_from").get<std::int64_t>(),
                             e.at("owner_to").get<std::int64_t>()};
            data.summary.connectivity[key] +=
                e.at("multiplicity").get<std::int64_t>();
            MscFileData::Arc arc;
            arc.layer = key.layer;
            for (const json& p : e.at("points"))
                arc.points.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                                      p.at(2).get<double>()});
            data.arcs.push_back(std::move(arc));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": malformed complex file (" +
                                 std::string(e.what()) + ")");
    }
    return data;
}

MscSummary read_msc_summary(const std::string& path) {
    return read_msc(path).summary;
}

void write_diff(const std::string& path, const DiffReport& rep, const Manifest& m) {
    json j;
    j["format"] = "diff";
    j["manifest"] = manifest_json(m);
    json totals;
    totals["moved_saddles"] = rep.moved_saddles.size();
    totals["connectivity_changes"] = rep.changed_separatrices.size();
    totals["connectivity_delta"] = rep.connectivity_delta();
    totals["errors"] = rep.errors.size();
    j["totals"] = std::move(totals);
    json moved = json::array();
    for (const MovedSaddle& s : rep.moved_saddles) {
        json e;
        e["index"] = s.index;
        e["owner"] = s.owner;
        e["cell_a"] = s.cell_a;
        e["cell_b"] = s.cell_b;
        moved.push_back(std::move(e));
    }
    j["moved_saddles"] = std::move(moved);
    json conn = json::array();
    for (const ConnectivityChange& c : rep.changed_separatrices) {
        json e;
        e["layer"] = c.key.layer;
        e["owner_hi"] = c.key.owner_hi;
        e["owner_lo"] = c.key.owner_lo;
        e["count_a"] = c.count_a;
        e["count_b"] = c.count_b;
        conn.push_back(std::move(e));
    }
    j["connectivity_changes"] = std::move(conn);
    j["errors"] = rep.errors;
    write_text_file(path, j.dump(1, '\t') + "\n");
}

void write_histograms_csv(const std::string& path, const Histogram& directions,
                          const Histogram& degrees, const Manifest& m) {
    std::string s = "# manifest " + m.to_json_string() + "\n";
    s += "table,bin_lo,bin_hi,count\n";
    const auto rows = [&s](const char* name, const Histogram& h) {
        for (std::size_t i = 0; i < h.counts.size(); ++i)
            s += std::string(name) + "," + fmt_double(h.bin_edges[i]) + "," +
                 fmt_double(h.bin_edges[i + 1]) + "," +
                 std::to_string(h.counts[i]) + "\n";
    };
    rows("direction", directions);
    rows("degree", degrees);
    write_text_file(path, s);
}

void write_experiment_csv(const std::string& path,
                          const std::vector<ExperimentResult>& rows,
                          const Manifest& m) {
    std::string s = "# manifest " + m.to_json_string() + "\n";
    s += "size,trials,positional,connectivity,seed\n";
    for (const ExperimentResult& r : rows)
        s += std::to_string(r.size) + "," + std::to_string(r.n_trials) + "," +
             std::to_string(r.n_positional) + "," +
             std::to_string(r.n_connectivity) + "," + std::to_string(r.seed) +
             "\n";
    write_text_file(path, s);
}

/* ---- SVG rendering ---- */
namespace {

struct Mapper {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double w = 720, h = 720;

    void fit(double pad_frac) {
        if (xmax - xmin <= 0) xmax = xmin + 1;
        if (ymax - ymin <= 0) ymax = ymin + 1;
        const double px = (xmax - xmin) * pad_frac;
        const double py = (ymax - ymin) * pad_frac;
        xmin -= px;
        xmax += px;
        ymin -= py;
        ymax += py;
        h = w * (ymax - ymin) / (xmax - xmin);
    }
    double X(double x) const { return (x - xmin) / (xmax - xmin) * w; }
    double Y(double y) const { return h - (y - ymin) / (ymax - ymin) * h; }
};

std::string gray(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int lum = static_cast<int>(std::lround(40 + 200 * t));
    char buf[10];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", lum, lum, lum);
    return buf;
}

const char* critical_color(int index, int top_dim) {
    if (index == 0) return "#2563eb";         /* minima: blue */
    if (index == top_dim) return "#dc2626";   /* maxima: red */
    if (top_dim == 3 && index == 2) return "#e0b820"; /* 2-saddles: yellow */
    return "#22a045";                         /* saddles: green */
}

std::string svg_header(const Mapper& mp, const Manifest& m) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    fmt_px(mp.w) + " " + fmt_px(mp.h) + "\">\n";
    s += "<!-- manifest " + m.to_json_string() + " -->\n";
    return s;
}

} // namespace

std::string render_msc_svg(const MscFileData& data, const ScalarGrid* background,
                           const Manifest& m) {
    if (data.summary.top_dim != 2)
        throw std::invalid_argument("rendering supports 2D complexes only");
    if (background && background->dim() != 2)
        throw std::invalid_argument("rendering supports 2D fields only");

    Mapper mp;
    bool seeded = false;
    const auto grow = [&](double x, double y) {
        if (!seeded) {
            mp.xmin = mp.xmax = x;
            mp.ymin = mp.ymax = y;
            seeded = true;
            return;
        }
        mp.xmin = std::min(mp.xmin, x);
        mp.xmax = std::max(mp.xmax, x);
        mp.ymin = std::min(mp.ymin, y);
        mp.ymax = std::max(mp.ymax, y);
    };
    if (background) {
        const auto lo = background->coord(0, 0);
        const auto hi = background->coord(background->dims[0] - 1,
                                          background->dims[1] - 1);
        grow(lo[0], lo[1]);
        grow(hi[0], hi[1]);
    }
    for (const auto& p : data.critical_centers) grow(p[0], p[1]);
    for (const auto& arc : data.arcs)
        for (const auto& p : arc.points) grow(p[0], p[1]);
    mp.fit(0.04);

    std::string s = svg_header(mp, m);
    if (background) {
        const ScalarGrid& g = *background;
        const double lo = g.min_value(), hi = g.max_value();
        const double span = hi > lo ? hi - lo : 1.0;
        for (int y = 0; y + 1 < g.dims[1]; ++y)
            for (int x = 0; x + 1 < g.dims[0]; ++x) {
                const double v = 0.25 * (g.at(x, y) + g.at(x + 1, y) +
                                         g.at(x, y + 1) + g.at(x + 1, y + 1));
                const auto c0 = g.coord(x, y);
                const auto c1 = g.coord(x + 1, y + 1);
                s += "<rect x=\"" + fmt_px(mp.X(c0[0])) + "\" y=\"" +
                     fmt_px(mp.Y(c1[1])) + "\" width=\"" +
                     fmt_px(mp.X(c1[0]) - mp.X(c0[0])) + "\" height=\"" +
                     fmt_px(mp.Y(c0[1]) - mp.Y(c1[1])) + "\" fill=\"" +
                     gray((v - lo) / span) + "\"/>\n";
            }
    }
    for (const auto& arc : data.arcs) {
        if (arc.points.empty()) continue;
        s += "<polyline fill=\"none\" stroke=\"";
        s += arc.layer == 1 ? "#404040" : "#8a8a8a";
        s += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < arc.points.size(); ++i) {
            if (i) s += ' ';
            s += fmt_px(mp.X(arc.points[i][0])) + "," +
                 fmt_px(mp.Y(arc.points[i][1]));
        }
        s += "\"/>\n";
    }
    const double r = std::max(3.0, 0.012 * std::max(mp.w, mp.h));
    for (std::size_t i = 0; i < data.summary.criticals.size(); ++i) {
        const auto& c = data.summary.criticals[i];
        const auto& p = data.critical_centers[i];
        s += "<circle cx=\"" + fmt_px(mp.X(p[0])) + "\" cy=\"" +
             fmt_px(mp.Y(p[1])) + "\" r=\"" + fmt_px(r) + "\" fill=\"" +
             critical_color(c.index, data.summary.top_dim) +
             "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string render_mesh_svg(const TriMesh& mesh, const Manifest& m) {
    Mapper mp;
    bool seeded = false;
    for (const auto& v : mesh.vertices) {
        if (!seeded) {
            mp.xmin = mp.xmax = v.x;
            mp.ymin = mp.ymax = v.y;
            seeded = true;
            continue;
        }
        mp.xmin = std::min(mp.xmin, v.x);
        mp.xmax = std::max(mp.xmax, v.x);
        mp.ymin = std::min(mp.ymin, v.y);
        mp.ymax = std::max(mp.ymax, v.y);
    }
    mp.fit(0.04);

    double lo = 0.0, hi = 0.0;
    if (!mesh.vertices.empty()) {
        lo = hi = mesh.vertices[0].value;
        for (const auto& v : mesh.vertices) {
            lo = std::min(lo, v.value);
            hi = std::max(hi, v.value);
        }
    }
    const double span = hi > lo ? hi - lo : 1.0;

    std::string s = svg_header(mp, m);
    for (const auto& t : mesh.triangles) {
        const double v = (mesh.vertices[t[0]].value + mesh.vertices[t[1]].value +
                          mesh.vertices[t[2]].value) /
                         3.0;
        s += "<polygon fill=\"" + gray((v - lo) / span) + "\" points=\"";
        for (int i = 0; i < 3; ++i) {
            if (i) s += ' ';
            s += fmt_px(mp.X(mesh.vertices[t[i]].x)) + "," +
                 fmt_px(mp.Y(mesh.vertices[t[i]].y));
        }
        s += "\"/>\n";
    }
    for (const auto& e : mesh.edges)
        s += "<line x1=\"" + fmt_px(mp.X(mesh.vertices[e[0]].x)) + "\" y1=\"" +
             fmt_px(mp.Y(mesh.vertices[e[0]].y)) + "\" x2=\"" +
             fmt_px(mp.X(mesh.vertices[e[1]].x)) + "\" y2=\"" +
             fmt_px(mp.Y(mesh.vertices[e[1]].y)) +
             "\" stroke=\"#404040\" stroke-width=\"0.6\"/>\n";
    s += "</svg>\n";
    return s;
}

} // namespace mscx
