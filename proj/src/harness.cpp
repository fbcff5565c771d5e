#include "flipcycles/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "flipcycles/errors.hpp"

namespace flipcycles::harness {

using plabic::PlabicGraph;
using plabic::PlabicTriangulation;
using zonotope::Tiling;
using combinat::Color;
using combinat::Shift;

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "dot") return Format::dot;
    if (s == "svg") return Format::svg;
    throw ArgumentError("unknown format '" + s + "'");
}

const char* format_extension(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::dot: return "dot";
        case Format::svg: return "svg";
    }
    return "";
}

void RunConfig::validate() const {
    if (vertex_cap == 0) throw ArgumentError("vertex cap must be positive");
    if (pi1_budget == 0) throw ArgumentError("pi1 budget must be positive");
    if (threads < 0) throw ArgumentError("thread count must be non-negative");
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string canonical_hash(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    return buf;
}

json subset_json(Subset s) { return elements(s); }

Subset subset_from_json(const json& j) {
    if (!j.is_array()) throw ArgumentError("subset must be an array of integers");
    std::vector<int> xs;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > 32)
            throw ArgumentError("subset element out of range: " + x.dump());
        xs.push_back(x.get<int>());
    }
    return from_elements(xs);
}

json necklace_json(const combinat::GrassmannNecklace& I) {
    json out = json::array();
    for (Subset s : I.sets()) out.push_back(subset_json(s));
    return out;
}

combinat::GrassmannNecklace necklace_from_json(int n, const json& j) {
    if (!j.is_array()) throw ArgumentError("necklace must be an array of subsets");
    std::vector<Subset> sets;
    for (const auto& s : j) sets.push_back(subset_from_json(s));
    if (n == 0) n = static_cast<int>(sets.size());
    if (static_cast<int>(sets.size()) != n) throw ArgumentError("necklace length differs from n");
    const std::string why = combinat::necklace_violation(n, sets);
    if (!why.empty()) throw ValidationError("not a Grassmann necklace: " + why);
    return combinat::GrassmannNecklace(n, sets);
}

json permutation_json(const combinat::DecoratedPermutation& p) {
    json colors = json::object();
    for (int i = 1; i <= p.n(); ++i)
        if (p.is_fixed(i)) colors[std::to_string(i)] = combinat::color_name(p.fixed_color(i));
    return json{{"image", p.image()}, {"fixed_colors", colors}};
}

json tiling_json(const Tiling& t) { return json{{"n", t.n()}, {"d", t.d()}, {"tiles", t.sign_strings()}}; }

Tiling tiling_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("d") || !j.contains("tiles")) throw ArgumentError("tiling needs n, d and tiles");
    const int n = j.at("n").get<int>(), d = j.at("d").get<int>();
    std::vector<zonotope::SignedSubset> tiles;
    for (const auto& s : j.at("tiles")) {
        const auto text = s.get<std::string>();
        if (static_cast<int>(text.size()) != n) throw ArgumentError("sign string '" + text + "' has wrong length");
        tiles.push_back(zonotope::parse_sign_string(text));
    }
    Tiling t(n, d, tiles);
    const auto report = zonotope::validate_tiling(zonotope::zonotope_spec(n, d), t);
    if (!report.ok) throw ValidationError("invalid tiling: " + (report.problems.empty() ? "" : report.problems[0]));
    return t;
}

json tiling_graph_json(const FlipGraph<Tiling>& g) {
    json vertices = json::array(), edges = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
        json v = tiling_json(g.vertices[i]);
        v["id"] = i;
        v["rank"] = g.rank[i];
        vertices.push_back(v);
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        edges.push_back(json{{"id", i}, {"u", g.edges[i].u}, {"v", g.edges[i].v}, {"flip", g.edges[i].label}});
    return json{{"vertices", vertices}, {"edges", edges}, {"min_vertex", g.min_vertex}, {"max_vertex", g.max_vertex}};
}

std::string tiling_graph_dot(const FlipGraph<Tiling>& g) {
    std::ostringstream out;
    out << "graph flips {\n  rankdir=BT;\n";
    std::map<int, std::vector<int>> by_rank;
    for (std::size_t i = 0; i < g.size(); ++i) by_rank[g.rank[i]].push_back(static_cast<int>(i));
    for (const auto& [r, vs] : by_rank) {
        out << "  { rank=same;";
        for (int v : vs) out << " v" << v << ";";
        out << " }\n";
    }
    for (std::size_t i = 0; i < g.size(); ++i) out << "  v" << i << " [label=\"" << i << "\\nrank " << g.rank[i] << "\"];\n";
    for (const auto& e : g.edges) out << "  v" << e.u << " -- v" << e.v << " [label=\"" << e.label << "\"];\n";
    out << "}\n";
    return out.str();
}

json triangulation_json(const PlabicTriangulation& s) {
    json labels = json::array(), triangles = json::array();
    for (Subset l : s.labels()) {
        const auto p = plabic::position(l);
        labels.push_back(json{{"set", subset_json(l)}, {"position", {p.x, p.y}}});
    }
    for (const auto& t : s.triangles()) {
        json ls = json::array();
        for (Subset l : t.labels) ls.push_back(subset_json(l));
        triangles.push_back(json{{"labels", ls}, {"color", combinat::color_name(t.color)}});
    }
    return json{{"n", s.n()}, {"k", s.k()}, {"boundary", necklace_json(s.boundary())}, {"labels", labels},
                {"triangles", triangles}};
}

PlabicTriangulation triangulation_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    auto boundary = necklace_from_json(n, j.at("boundary"));
    std::vector<Subset> labels;
    for (const auto& l : j.at("labels")) labels.push_back(subset_from_json(l.is_object() ? l.at("set") : l));
    std::vector<plabic::Triangle> triangles;
    for (const auto& t : j.at("triangles")) {
        const auto& ls = t.at("labels");
        if (ls.size() != 3) throw ArgumentError("triangle needs three labels");
        auto tri = plabic::make_triangle(subset_from_json(ls[0]), subset_from_json(ls[1]), subset_from_json(ls[2]));
        if (t.contains("color") && t.at("color").get<std::string>() != combinat::color_name(tri.color))
            throw ValidationError("triangle color disagrees with its labels");
        triangles.push_back(tri);
    }
    PlabicTriangulation s(boundary, labels, triangles);
    const std::string why = plabic::check(s);
    if (!why.empty()) throw ValidationError("invalid plabic triangulation: " + why);
    return s;
}

json plabic_graph_json(const PlabicGraph& g) {
    json vertices = json::array(), edges = json::array();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        json x{{"id", i}, {"rotation", v.rotation}};
        if (v.boundary)
            x["boundary"] = v.index;
        else
            x["color"] = combinat::color_name(v.color);
        vertices.push_back(x);
    }
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    return json{{"n", g.n}, {"vertices", vertices}, {"edges", edges}};
}

std::string plabic_graph_dot(const PlabicGraph& g) {
    std::ostringstream out;
    out << "graph plabic {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (v.boundary)
            out << "  v" << i << " [shape=plaintext, label=\"b" << v.index << "\"];\n";
        else
            out << "  v" << i << " [shape=circle, label=\"\", style=filled, fillcolor="
                << (v.color == Color::black ? "black" : "white") << "];\n";
    }
    for (const auto& [a, b] : g.edges) out << "  v" << a << " -- v" << b << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

struct XY {
    double x = 0;
    double y = 0;
};

XY at(Subset l) {
    const auto p = plabic::position(l);
    return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Drawing positions of the dual graph vertices.
std::vector<XY> dual_positions(const PlabicTriangulation& s, const PlabicGraph& g) {
    std::vector<XY> out(g.vertices.size());
    const auto& I = s.boundary();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (v.boundary) {
            const XY a = at(I[v.index]), b = at(I[v.index + 1]);
            out[i] = {(a.x + b.x) / 2, (a.y + b.y) / 2};
        } else if (v.triangle >= 0) {
            const auto& t = s.triangles()[v.triangle];
            XY c;
            for (Subset l : t.labels) {
                c.x += at(l).x / 3;
                c.y += at(l).y / 3;
            }
            out[i] = c;
        }
    }
    // Leaves without a triangle sit next to their boundary vertex.
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (v.boundary || v.triangle >= 0 || v.rotation.empty()) continue;
        const XY b = out[g.other(v.rotation[0], static_cast<int>(i))];
        out[i] = {b.x + 0.25, b.y + 0.25};
    }
    return out;
}

}  // namespace

std::string triangulation_svg(const PlabicTriangulation& s, bool strands) {
    double x0 = 1e18, y0 = 1e18, x1 = -1e18, y1 = -1e18;
    for (Subset l : s.labels()) {
        const XY p = at(l);
        x0 = std::min(x0, p.x), y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
    }
    if (s.labels().empty()) x0 = y0 = x1 = y1 = 0;
    const double pad = 1.0;
    const double scale = 600.0 / std::max({x1 - x0 + 2 * pad, y1 - y0 + 2 * pad, 1.0});
    auto X = [&](double x) { return fmt((x - x0 + pad) * scale); };
    auto Y = [&](double y) { return fmt((y - y0 + pad) * scale); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt((x1 - x0 + 2 * pad) * scale) << "\" height=\""
        << fmt((y1 - y0 + 2 * pad) * scale) << "\">\n";
    for (const auto& t : s.triangles()) {
        out << "  <polygon points=\"";
        for (int i = 0; i < 3; ++i) out << (i ? " " : "") << X(at(t.labels[i]).x) << "," << Y(at(t.labels[i]).y);
        out << "\" fill=\"" << (t.color == Color::black ? "#404040" : "#f4f4f4") << "\" stroke=\"#888\"/>\n";
    }
    const auto& I = s.boundary();
    for (int i = 1; i <= s.n(); ++i)
        if (I[i] != I[i + 1])
            out << "  <line x1=\"" << X(at(I[i]).x) << "\" y1=\"" << Y(at(I[i]).y) << "\" x2=\"" << X(at(I[i + 1]).x)
                << "\" y2=\"" << Y(at(I[i + 1]).y) << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    const PlabicGraph g = plabic::dual_graph(s);
    const auto pos = dual_positions(s, g);
    for (const auto& [a, b] : g.edges)
        out << "  <line x1=\"" << X(pos[a].x) << "\" y1=\"" << Y(pos[a].y) << "\" x2=\"" << X(pos[b].x) << "\" y2=\""
            << Y(pos[b].y) << "\" stroke=\"#1f6fd0\"/>\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (v.boundary) continue;
        out << "  <circle cx=\"" << X(pos[i].x) << "\" cy=\"" << Y(pos[i].y) << "\" r=\"5\" fill=\""
            << (v.color == Color::black ? "#000" : "#fff") << "\" stroke=\"#1f6fd0\"/>\n";
    }
    if (strands) {
        for (const auto& st : plabic::trace_strands(g)) {
            out << "  <polyline fill=\"none\" stroke=\"#d04a1f\" stroke-opacity=\"0.6\" points=\"";
            bool first = true;
            for (const auto& [e, forward] : st.steps) {
                const auto [a, b] = g.edges[e];
                const XY m{(pos[a].x + pos[b].x) / 2, (pos[a].y + pos[b].y) / 2};
                out << (first ? "" : " ") << X(m.x) << "," << Y(m.y);
                first = false;
                (void)forward;
            }
            out << "\"><title>" << st.start << "-&gt;" << st.end << "</title></polyline>\n";
        }
    }
    for (Subset l : s.labels())
        out << "  <text x=\"" << X(at(l).x) << "\" y=\"" << Y(at(l).y) << "\" font-size=\"11\">" << compact(l)
            << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

json complex_json(const topology::TwoComplex& k) {
    json edges = json::array(), cells = json::array();
    for (std::size_t i = 0; i < k.edges.size(); ++i)
        edges.push_back(json{{"id", i}, {"u", k.edges[i].first}, {"v", k.edges[i].second}});
    for (std::size_t c = 0; c < k.cells.size(); ++c) {
        json walk = json::array();
        for (const auto& oe : k.cells[c]) walk.push_back(oe.forward ? oe.edge + 1 : -(oe.edge + 1));
        cells.push_back(json{{"kind", k.cell_kinds[c]}, {"boundary", walk}});
    }
    return json{{"vertex_count", k.vertex_count}, {"edges", edges}, {"cells", cells}};
}

json certificate_json(const topology::Certificate& c, const std::string& input_hash, bool timing) {
    json torsion = json::array();
    for (const auto& t : c.homology.torsion) torsion.push_back(t.str());
    json out{{"input_hash", input_hash},
             {"V", c.vertices},
             {"E", c.edges},
             {"F", c.cells},
             {"betti1", c.homology.betti1},
             {"torsion", torsion},
             {"pi1", !c.pi1_attempted ? "not attempted"
                     : c.pi1.status == topology::Pi1Status::trivial ? "trivial"
                                                                     : "inconclusive"},
             {"budget", c.budget},
             {"coset_steps", c.pi1.steps}};
    if (timing) out["wall_ms"] = c.wall_ms;
    return envelope("certificate", out);
}

json envelope(const std::string& kind, json body) {
    json out{{"schema_version", kSchemaVersion}, {"kind", kind}};
    for (auto& [key, value] : body.items()) out[key] = value;
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ArgumentError("malformed JSON in " + what + ": " + e.what());
    }
}

// Inline JSON when the argument looks like JSON, otherwise a file path.
json json_argument(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return parse_json(arg, "argument");
    return parse_json(read_file(arg), arg);
}

Tiling tiling_argument(const std::string& arg, int index) {
    const json j = json_argument(arg);
    if (j.contains("vertices")) {
        const auto& vs = j.at("vertices");
        if (index < 0 || index >= static_cast<int>(vs.size())) throw ArgumentError("vertex index out of range");
        return tiling_from_json(vs[index]);
    }
    return tiling_from_json(j);
}

combinat::DecoratedPermutation permutation_argument(const std::vector<std::string>& spec) {
    if (spec.empty()) throw ArgumentError("missing connectivity: give a permutation or 'cyclic n k'");
    if (spec[0] == "cyclic") {
        if (spec.size() != 3) throw ArgumentError("usage: cyclic n k");
        try {
            return combinat::cyclic_decorated(std::stoi(spec[1]), std::stoi(spec[2]));
        } catch (const std::invalid_argument&) {
            throw ArgumentError("cyclic n k needs integers");
        }
    }
    if (spec.size() != 1) throw ArgumentError("unexpected arguments after the permutation");
    return combinat::DecoratedPermutation::parse(spec[0]);
}

Execution execution(const RunConfig& c) { return c.threads == 1 ? Execution::serial : Execution::parallel; }

class Runner {
public:
    RunConfig config;
    std::ostringstream out;
    std::string emitted;
    bool emit = false;
    bool timing = false;

    // Writes the artifact to --output or the default output directory. With
    // --emit it becomes stdout and the report moves to stderr.
    void artifact(const std::string& stem, const std::string& body) {
        std::string path = config.output;
        const char* dir = std::getenv(kOutputDirVariable);
        if (path.empty() && dir && *dir) path = stem + "." + format_extension(config.format);
        if (!path.empty()) {
            std::filesystem::path p(path);
            if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
            if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
            std::ofstream f(p);
            if (!f) throw ArgumentError("cannot write " + p.string());
            f << body;
            out << "wrote " << p.string() << "\n";
        }
        if (emit) emitted += body;
    }

    void json_artifact(const std::string& stem, const std::string& kind, const json& body) {
        if (config.format != Format::json) throw ArgumentError(std::string("format ") + format_extension(config.format) +
                                                              " is not available for " + kind);
        artifact(stem, envelope(kind, body).dump(2) + "\n");
    }

    void certify(const topology::TwoComplex& k, bool with_pi1, const std::string& input) {
        const auto cert = topology::certify(k, with_pi1, config.pi1_budget);
        out << topology::summary(cert) << "\n";
        if (!config.output.empty() || emit || std::getenv(kOutputDirVariable))
            artifact(config.command + "-certificate",
                     certificate_json(cert, canonical_hash(input), timing).dump(2) + "\n");
        certified_ok = cert.h1_trivial() && (!with_pi1 || cert.pi1_trivial());
    }

    bool certified_ok = true;
};

}  // namespace

RunResult run(const std::vector<std::string>& args) {
    Runner r;
    RunConfig& c = r.config;
    CLI::App app{"Flip graphs and two-complexes of zonotopal tilings and plabic graphs", "flipcycles"};
    app.require_subcommand(1);
    std::string format = "json";
    std::string seed_order = "colex";
    auto common = [&](CLI::App* sub) {
        sub->add_option("--cap", c.vertex_cap, "vertex cap")->capture_default_str();
        sub->add_option("--budget", c.pi1_budget, "coset enumeration budget")->capture_default_str();
        sub->add_option("--format", format, "json, dot or svg")->capture_default_str();
        sub->add_option("-o,--output", c.output, "artifact path");
        sub->add_option("--threads", c.threads, "worker threads; 1 runs the serial kernels");
        sub->add_option("--seed-order", seed_order, "colex or reverse-colex")->capture_default_str();
        sub->add_flag("--emit", r.emit, "print the artifact to stdout");
        sub->add_flag("--timing", r.timing, "include wall time in certificates");
    };
    std::vector<std::string> spec;
    std::string kind = "X", tiling_arg, from_arg, to_arg, move_label, necklace_arg, dir = "up";
    int index = 0, from_index = 0, to_index = 0, zn = 0, vertex = 0;
    bool certify = false, strands = false;

    auto* tilings = app.add_subcommand("tilings", "enumerate tilings of Z(n,d)");
    tilings->add_option("n", c.n)->required();
    tilings->add_option("d", c.d)->required();
    common(tilings);

    auto* zcomplex = app.add_subcommand("zcomplex", "build and certify the tiling complex");
    zcomplex->add_option("n", c.n)->required();
    zcomplex->add_option("d", c.d)->required();
    common(zcomplex);

    auto* plabic_cmd = app.add_subcommand("plabic", "plabic complexes X, Y or T");
    plabic_cmd->add_option("connectivity", spec, "permutation or 'cyclic n k'")->required();
    plabic_cmd->add_option("--kind", kind, "X, Y or T")->capture_default_str();
    plabic_cmd->add_flag("--certify", certify, "compute H1 and try to trivialize pi1");
    common(plabic_cmd);

    auto* tcd_cmd = app.add_subcommand("tcd", "triple crossing diagram complex");
    tcd_cmd->add_option("connectivity", spec, "permutation or 'cyclic n k'")->required();
    tcd_cmd->add_flag("--certify", certify, "compute H1 and try to trivialize pi1");
    common(tcd_cmd);

    auto tiling_source = [&](CLI::App* sub) {
        sub->add_option("--tiling", tiling_arg, "tiling or flip graph JSON (file or inline)");
        sub->add_option("--zonotope", zn, "use the tilings of Z(n,3)");
        sub->add_option("--index", index, "vertex of a flip graph")->capture_default_str();
    };
    auto* section = app.add_subcommand("cross-section", "level-k plabic triangulation of a tiling of Z(n,3)");
    tiling_source(section);
    section->add_option("--level", c.k)->required();
    common(section);

    auto* updown = app.add_subcommand("updown", "shift a Grassmann necklace");
    updown->add_option("--necklace", necklace_arg, "necklace JSON (file or inline)")->required();
    updown->add_option("--dir", dir, "up or down")->capture_default_str();
    common(updown);

    auto* realize = app.add_subcommand("realize-move", "realize M1/M3 moves by flips and verify them");
    tiling_source(realize);
    realize->add_option("--level", c.k)->required();
    realize->add_option("--move", move_label, "move label; all trivalent moves when omitted");
    common(realize);

    auto* align = app.add_subcommand("align", "connect two tilings with a common section");
    align->add_option("--from", from_arg, "tiling JSON");
    align->add_option("--to", to_arg, "tiling JSON");
    align->add_option("--zonotope", zn, "use the tilings of Z(n,3)");
    align->add_option("--from-index", from_index)->capture_default_str();
    align->add_option("--to-index", to_index)->capture_default_str();
    align->add_option("--level", c.k)->required();
    common(align);

    auto* exp = app.add_subcommand("export", "DOT, SVG and JSON exports");
    exp->require_subcommand(1);
    auto* exp_tilings = exp->add_subcommand("tilings", "flip graph of Z(n,d)");
    exp_tilings->add_option("n", c.n)->required();
    exp_tilings->add_option("d", c.d)->required();
    common(exp_tilings);
    auto* exp_plabic = exp->add_subcommand("plabic", "one plabic triangulation of a connectivity");
    exp_plabic->add_option("connectivity", spec)->required();
    exp_plabic->add_option("--vertex", vertex, "flip graph vertex")->capture_default_str();
    exp_plabic->add_flag("--strands", strands, "overlay strands in SVG");
    common(exp_plabic);
    auto* exp_tcd = exp->add_subcommand("tcd", "one triple crossing diagram of a permutation");
    exp_tcd->add_option("connectivity", spec)->required();
    exp_tcd->add_option("--vertex", vertex, "complex vertex")->capture_default_str();
    exp_tcd->add_flag("--strands", strands, "overlay strands in SVG");
    common(exp_tcd);

    RunResult result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, err;
        result.status = app.exit(e, o, err);
        result.out = o.str();
        result.err = err.str();
        if (result.status == 0) return result;
        result.status = 2;
        return result;
    }

    try {
        c.format = parse_format(format);
        if (seed_order == "colex")
            c.seed_order = plabic::SeedOrder::colex;
        else if (seed_order == "reverse-colex")
            c.seed_order = plabic::SeedOrder::reverse_colex;
        else
            throw ArgumentError("unknown seed order '" + seed_order + "'");
        c.validate();
        struct ThreadScope {
            bool active;
            ~ThreadScope() {
                if (active) set_parallel_threads(0);
            }
        } scope{c.threads > 0};
        if (scope.active) set_parallel_threads(c.threads);
        std::ostringstream& out = r.out;

        auto load_zonotope = [&](int n) {
            if (n < 4) throw ArgumentError("--zonotope needs n >= 4");
            return zonotope::enumerate_tilings(zonotope::zonotope_spec(n, 3), execution(c), c.vertex_cap);
        };
        auto pick = [&](const FlipGraph<Tiling>& g, int i) {
            if (i < 0 || i >= static_cast<int>(g.size())) throw ArgumentError("vertex index out of range");
            return g.vertices[i];
        };
        auto tiling_input = [&]() {
            if (!tiling_arg.empty()) return tiling_argument(tiling_arg, index);
            if (zn) return pick(load_zonotope(zn), index);
            throw ArgumentError("give --tiling or --zonotope");
        };
        auto print_flips = [&](const std::vector<zonotope::FlipSite>& seq) {
            for (const auto& f : seq) out << "  flip " << f.label() << "\n";
        };

        if (tilings->parsed() || exp_tilings->parsed()) {
            c.command = "tilings";
            auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(c.n, c.d), execution(c), c.vertex_cap);
            std::map<int, int> histogram;
            for (int rk : g.rank) ++histogram[rk];
            out << "Z(" << c.n << "," << c.d << "): " << g.size() << " vertices, " << g.edges.size() << " edges, ranks 0.."
                << g.max_rank() << "\n";
            out << "rank sizes:";
            for (const auto& [rk, cnt] : histogram) out << " " << cnt;
            out << "\n";
            const std::string stem = "tilings-" + std::to_string(c.n) + "-" + std::to_string(c.d);
            if (c.format == Format::dot)
                r.artifact(stem, tiling_graph_dot(g));
            else
                r.json_artifact(stem, "tiling_flip_graph", tiling_graph_json(g));
        } else if (zcomplex->parsed()) {
            c.command = "zcomplex";
            auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(c.n, c.d), execution(c), c.vertex_cap);
            auto k = zonotope::build_z_complex(g, execution(c));
            r.certify(k, true, "zcomplex n=" + std::to_string(c.n) + " d=" + std::to_string(c.d));
        } else if (plabic_cmd->parsed() || tcd_cmd->parsed()) {
            c.command = plabic_cmd->parsed() ? "plabic" : "tcd";
            const auto p = permutation_argument(spec);
            c.connectivity = p.to_string();
            const auto ck = tcd_cmd->parsed() ? plabic::ComplexKind::T : plabic::parse_complex_kind(kind);
            auto cx = plabic::build_plabic_complex(p, ck, execution(c), c.vertex_cap);
            out << plabic::complex_kind_name(ck) << "(" << c.connectivity << "): " << cx.graph.size()
                << " plabic graphs, " << cx.complex.vertex_count << " vertices, " << cx.complex.edges.size() << " edges, "
                << cx.complex.cells.size() << " cells\n";
            std::map<std::string, int> kinds;
            for (const auto& s : cx.complex.cell_kinds) ++kinds[s];
            for (const auto& [name, cnt] : kinds) out << "  " << cnt << " x " << name << "\n";
            const std::string input = c.command + " " + plabic::complex_kind_name(ck) + " " + c.connectivity;
            if (certify || tcd_cmd->parsed()) {
                r.certify(cx.complex, true, input);
            } else if (!c.output.empty() || r.emit || std::getenv(kOutputDirVariable)) {
                json configs = json::array();
                for (std::size_t v = 0; v < cx.configs.size(); ++v)
                    configs.push_back(triangulation_json(cx.graph.vertices[cx.representative[v]]));
                r.json_artifact(c.command, "plabic_complex",
                                json{{"connectivity", permutation_json(p)},
                                     {"complex_kind", plabic::complex_kind_name(ck)},
                                     {"input_hash", canonical_hash(input)},
                                     {"representatives", configs},
                                     {"complex", complex_json(cx.complex)}});
            }
        } else if (section->parsed()) {
            c.command = "cross-section";
            const Tiling t = tiling_input();
            const auto s = plabic::cross_section(t, c.k);
            int white = 0;
            for (const auto& tri : s.triangles()) white += tri.color == Color::white;
            out << "level " << c.k << ": " << s.labels().size() << " labels, " << s.triangles().size() << " triangles ("
                << white << " white, " << s.triangles().size() - white << " black), connectivity "
                << plabic::strand_permutation(plabic::dual_graph(s)).to_string() << "\n";
            if (c.format == Format::svg)
                r.artifact("cross-section", triangulation_svg(s, false));
            else if (c.format == Format::dot)
                r.artifact("cross-section", plabic_graph_dot(plabic::dual_graph(s)));
            else
                r.json_artifact("cross-section", "plabic_triangulation", triangulation_json(s));
        } else if (updown->parsed()) {
            c.command = "updown";
            Shift shift;
            if (dir == "up")
                shift = Shift::up;
            else if (dir == "down")
                shift = Shift::down;
            else
                throw ArgumentError("--dir must be up or down");
            const auto I = necklace_from_json(0, json_argument(necklace_arg));
            const auto J = combinat::necklace_shift(I, shift);
            out << necklace_json(J).dump() << "\n";
        } else if (realize->parsed()) {
            c.command = "realize-move";
            const Tiling t = tiling_input();
            const auto moves = plabic::available_moves(plabic::cross_section(t, c.k));
            int done = 0;
            bool ok = true;
            for (const auto& m : moves) {
                if (m.kind == plabic::MoveKind::square) continue;
                if (!move_label.empty() && m.label() != move_label) continue;
                const auto seq = plabic::realize_trivalent_move(t, c.k, m);
                const std::string why = plabic::verify_realization(t, c.k, m, seq);
                out << m.label() << ": " << seq.size() << " flips, " << (why.empty() ? "verified" : "FAILED: " + why)
                    << "\n";
                print_flips(seq);
                ok = ok && why.empty();
                ++done;
            }
            if (!move_label.empty() && done == 0)
                throw PreconditionError("move '" + move_label + "' is not an available trivalent move at level " +
                                        std::to_string(c.k));
            if (done == 0) out << "no trivalent moves at level " << c.k << "\n";
            if (!ok) result.status = 1;
        } else if (align->parsed()) {
            c.command = "align";
            Tiling from, to;
            if (!from_arg.empty() || !to_arg.empty()) {
                if (from_arg.empty() || to_arg.empty()) throw ArgumentError("give both --from and --to");
                from = tiling_argument(from_arg, from_index);
                to = tiling_argument(to_arg, to_index);
            } else if (zn) {
                const auto g = load_zonotope(zn);
                from = pick(g, from_index);
                to = pick(g, to_index);
            } else {
                throw ArgumentError("give --from/--to or --zonotope");
            }
            const auto seq = plabic::align_tilings(from, to, c.k);
            const std::string why = plabic::verify_alignment(from, to, c.k, seq);
            out << "alignment at level " << c.k << ": " << seq.size() << " flips, "
                << (why.empty() ? "verified" : "FAILED: " + why) << "\n";
            print_flips(seq);
            if (!why.empty()) result.status = 1;
        } else if (exp_plabic->parsed() || exp_tcd->parsed()) {
            c.command = exp_tcd->parsed() ? "export-tcd" : "export-plabic";
            const auto p = permutation_argument(spec);
            PlabicTriangulation s;
            std::optional<tcd::TripleCrossingDiagram> diagram;
            if (exp_tcd->parsed()) {
                auto cx = tcd::build_t_complex(p, execution(c), c.vertex_cap);
                if (vertex < 0 || vertex >= cx.complex.vertex_count) throw ArgumentError("vertex index out of range");
                diagram = tcd::tcd_of(cx.graph.vertices[cx.representative[vertex]]);
                s = *diagram->normal_form;
            } else {
                auto g = plabic::enumerate_plabic(p, execution(c), c.vertex_cap, c.seed_order);
                if (vertex < 0 || vertex >= static_cast<int>(g.size())) throw ArgumentError("vertex index out of range");
                s = g.vertices[vertex];
            }
            const std::string stem = c.command + "-" + std::to_string(vertex);
            out << p.to_string() << " vertex " << vertex << ": " << s.labels().size() << " labels, "
                << s.triangles().size() << " triangles\n";
            if (c.format == Format::svg) {
                r.artifact(stem, triangulation_svg(s, strands));
            } else if (c.format == Format::dot) {
                r.artifact(stem, plabic_graph_dot(diagram ? diagram->graph : plabic::dual_graph(s)));
            } else if (diagram) {
                json body = plabic_graph_json(diagram->graph);
                body["tcd"] = true;
                body["connectivity"] = permutation_json(diagram->connectivity);
                body["normal_form"] = triangulation_json(s);
                r.json_artifact(stem, "tcd", body);
            } else {
                r.json_artifact(stem, "plabic_triangulation",
                                json{{"triangulation", triangulation_json(s)},
                                     {"graph", plabic_graph_json(plabic::dual_graph(s))}});
            }
        }
        if (r.emit) {
            result.out = r.emitted;
            result.err = r.out.str();
        } else {
            result.out = r.out.str();
        }
        if (!r.certified_ok) result.status = 1;
    } catch (const ResourceError& e) {
        result.out = r.out.str();
        result.err = std::string("resource limit: ") + e.what() + "\n";
        result.status = 3;
    } catch (const std::exception& e) {
        result.out = r.out.str();
        result.err = std::string("error: ") + e.what() + "\n";
        result.status = 2;
    }
    return result;
}

}  // namespace flipcycles::harness
