#include "flipcycles/plabic_complex.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <optional>
#include <set>
#include <unordered_map>

#include "flipcycles/errors.hpp"

namespace flipcycles::plabic {

namespace {

struct Diff {
    std::vector<Subset> removed_labels, added_labels;
    std::vector<Triangle> removed_triangles, added_triangles;
};

template <class T>
std::vector<T> minus(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class T>
bool meets(const std::vector<T>& a, const std::vector<T>& b) {
    for (const auto& x : a)
        if (std::binary_search(b.begin(), b.end(), x)) return true;
    return false;
}

template <class T>
bool includes(const std::vector<T>& big, const std::vector<T>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <class T>
std::vector<T> replace(const std::vector<T>& base, const std::vector<T>& drop, const std::vector<T>& add) {
    std::vector<T> out = minus(base, drop);
    out.insert(out.end(), add.begin(), add.end());
    std::sort(out.begin(), out.end());
    return out;
}

Diff diff_of(const Config& a, const Config& b) {
    return {minus(a.labels, b.labels), minus(b.labels, a.labels), minus(a.triangles, b.triangles),
            minus(b.triangles, a.triangles)};
}

std::vector<Subset> support_labels(const Diff& d) {
    std::vector<Subset> out = d.removed_labels;
    out.insert(out.end(), d.added_labels.begin(), d.added_labels.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Triangle> support_triangles(const Diff& d) {
    std::vector<Triangle> out = d.removed_triangles;
    out.insert(out.end(), d.added_triangles.begin(), d.added_triangles.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Config> apply_diff(const Diff& d, const Config& c) {
    if (!includes(c.labels, d.removed_labels) || !includes(c.triangles, d.removed_triangles)) return std::nullopt;
    if (meets(d.added_labels, c.labels) || meets(d.added_triangles, c.triangles)) return std::nullopt;
    return Config{replace(c.labels, d.removed_labels, d.added_labels),
                  replace(c.triangles, d.removed_triangles, d.added_triangles)};
}

// Maps subsets of P ∪ A to subsets of [5] and back, A = {a_1 < ... < a_5}.
struct Chart {
    Subset prefix = 0;
    std::array<int, 5> a{};

    Subset to_local(Subset s) const {
        Subset out = 0;
        for (int r = 0; r < 5; ++r)
            if (has(s, a[r])) out |= bit(r + 1);
        return out;
    }
    Subset to_global(Subset s) const {
        Subset out = prefix;
        for (int r = 0; r < 5; ++r)
            if (has(s, r + 1)) out |= bit(a[r]);
        return out;
    }
    Triangle map(const Triangle& t, bool local) const {
        auto f = [&](Subset s) { return local ? to_local(s) : to_global(s); };
        Triangle out = make_triangle(f(t.labels[0]), f(t.labels[1]), f(t.labels[2]));
        return out;
    }
};

struct Candidate {
    std::vector<int> cycle;
    std::string kind;
};

std::string cell_name(int j, std::size_t length) {
    std::string shape = length == 4 ? "quadrilateral" : length == 5 ? "pentagon" : length == 10 ? "decagon"
                                                                                     : std::to_string(length) + "-gon";
    return shape + " pi(5," + std::to_string(j) + ")";
}

}  // namespace

const char* complex_kind_name(ComplexKind k) {
    switch (k) {
        case ComplexKind::X: return "X";
        case ComplexKind::Y: return "Y";
        case ComplexKind::T: return "T";
    }
    return "?";
}

ComplexKind parse_complex_kind(const std::string& s) {
    if (s == "X" || s == "x") return ComplexKind::X;
    if (s == "Y" || s == "y") return ComplexKind::Y;
    if (s == "T" || s == "t") return ComplexKind::T;
    throw ArgumentError("unknown complex kind '" + s + "'");
}

Config project(const PlabicTriangulation& s, ComplexKind kind) {
    Config c;
    c.labels = s.labels();
    for (const auto& t : s.triangles()) {
        if (kind == ComplexKind::X || (kind == ComplexKind::T && t.color == Color::white)) c.triangles.push_back(t);
    }
    return c;
}

std::string config_key(const Config& c) {
    std::string out;
    auto put = [&](Subset s) {
        out.push_back(static_cast<char>(s & 0xff));
        out.push_back(static_cast<char>((s >> 8) & 0xff));
        out.push_back(static_cast<char>((s >> 16) & 0xff));
    };
    for (Subset s : c.labels) put(s);
    out.push_back('|');
    for (const auto& t : c.triangles)
        for (Subset s : t.labels) put(s);
    return out;
}

const std::vector<Config>& cycle_template(ComplexKind kind, int j) {
    if (j < 1 || j > 4) throw ArgumentError("template level must lie in [1, 4]");
    static const auto table = [] {
        std::array<std::array<std::vector<Config>, 5>, 3> out;
        const auto graph = zonotope::enumerate_tilings(zonotope::zonotope_spec(5, 3), Execution::serial);
        const auto adj = graph.adjacency();
        std::vector<int> order{0};
        int prev = -1, at = 0;
        while (true) {
            int next = adj[at][0] == prev ? adj[at][1] : adj[at][0];
            if (next == 0) break;
            order.push_back(next);
            prev = at;
            at = next;
        }
        for (ComplexKind k : {ComplexKind::X, ComplexKind::Y, ComplexKind::T}) {
            for (int level = 1; level <= 4; ++level) {
                std::vector<Config> seq;
                for (int v : order) {
                    Config c = project(cross_section(graph.vertices[v], level), k);
                    if (seq.empty() || !(seq.back() == c)) seq.push_back(std::move(c));
                }
                while (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
                if (seq.size() < 3) seq.clear();
                out[static_cast<int>(k)][level] = std::move(seq);
            }
        }
        return out;
    }();
    return table[static_cast<int>(kind)][j];
}

PlabicComplex build_plabic_complex(const DecoratedPermutation& p, ComplexKind kind, Execution exec, std::size_t cap) {
    if (kind == ComplexKind::T) {
        for (int i = 1; i <= p.n(); ++i)
            if (p.is_fixed(i) && p.fixed_color(i) == Color::black)
                throw ArgumentError("triple crossing diagrams need a permutation without black fixed points");
    }
    PlabicComplex out;
    out.kind = kind;
    out.graph = enumerate_plabic(p, exec, cap);
    std::unordered_map<std::string, int> class_index;
    std::vector<std::string> class_keys;
    out.class_of.resize(out.graph.size());
    for (std::size_t i = 0; i < out.graph.size(); ++i) {
        Config c = project(out.graph.vertices[i], kind);
        std::string key = config_key(c);
        auto [it, fresh] = class_index.emplace(key, static_cast<int>(out.configs.size()));
        if (fresh) {
            out.representative.push_back(static_cast<int>(i));
            out.configs.push_back(std::move(c));
            class_keys.push_back(std::move(key));
        }
        out.class_of[i] = it->second;
    }
    auto& K = out.complex;
    K.vertex_count = static_cast<int>(out.configs.size());
    for (const auto& e : out.graph.edges) {
        const int a = out.class_of[e.u], b = out.class_of[e.v];
        if (a != b && K.find_edge(a, b) < 0) K.add_edge(a, b);
    }
    std::vector<std::vector<int>> adj(K.vertex_count);
    for (const auto& [a, b] : K.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const int n = p.n();
    const int k = combinat::helicity(p);
    auto lookup = [&](const Config& c) {
        auto it = class_index.find(config_key(c));
        return it == class_index.end() ? -1 : it->second;
    };

    auto detect = [&](std::size_t index) {
        const int c = static_cast<int>(index);
        const Config& here = out.configs[c];
        std::vector<Candidate> found;
        // Commuting pairs with disjoint supports.
        for (std::size_t x = 0; x < adj[c].size(); ++x)
            for (std::size_t y = x + 1; y < adj[c].size(); ++y) {
                const int d1 = adj[c][x], d2 = adj[c][y];
                const Diff f1 = diff_of(here, out.configs[d1]);
                const Diff f2 = diff_of(here, out.configs[d2]);
                if (meets(support_labels(f1), support_labels(f2)) || meets(support_triangles(f1), support_triangles(f2)))
                    continue;
                auto e12 = apply_diff(f2, out.configs[d1]);
                auto e21 = apply_diff(f1, out.configs[d2]);
                if (!e12 || !e21 || !(*e12 == *e21)) continue;
                const int e = lookup(*e12);
                if (e < 0 || e == c || e == d1 || e == d2) continue;
                if (K.find_edge(d1, e) < 0 || K.find_edge(d2, e) < 0) continue;
                found.push_back({{c, d1, e, d2}, "quadrilateral"});
            }
        // Copies of the Z(5,3) cycle cross-sections.
        for (int j = 1; j <= 4; ++j) {
            const auto& temp = cycle_template(kind, j);
            if (temp.empty() || k - j < 0 || n < 5 + k - j) continue;
            std::unordered_map<std::string, int> position;
            for (std::size_t i = 0; i < temp.size(); ++i) position.emplace(config_key(temp[i]), static_cast<int>(i));
            for (Subset prefix : k_subsets(n, k - j)) {
                const Subset rest = full_set(n) & ~prefix;
                for (Subset a5 : k_subsets(n, 5)) {
                    if (a5 & ~rest) continue;
                    Chart chart;
                    chart.prefix = prefix;
                    auto el = elements(a5);
                    std::copy(el.begin(), el.end(), chart.a.begin());
                    bool framed = true;
                    for (int r = 0; r < 5 && framed; ++r) {
                        Subset local = 0;
                        for (int t = 0; t < j; ++t) local |= bit((r + t) % 5 + 1);
                        if (!std::binary_search(here.labels.begin(), here.labels.end(), chart.to_global(local)))
                            framed = false;
                    }
                    if (!framed) continue;
                    Config inside_global, inside_local;
                    for (Subset l : here.labels)
                        if ((l & prefix) == prefix && (l & ~prefix & ~a5) == 0) inside_global.labels.push_back(l);
                    for (const auto& t : here.triangles) {
                        bool in = true;
                        for (Subset l : t.labels)
                            if (!std::binary_search(inside_global.labels.begin(), inside_global.labels.end(), l)) in = false;
                        if (in) inside_global.triangles.push_back(t);
                    }
                    for (Subset l : inside_global.labels) inside_local.labels.push_back(chart.to_local(l));
                    for (const auto& t : inside_global.triangles) inside_local.triangles.push_back(chart.map(t, true));
                    std::sort(inside_local.labels.begin(), inside_local.labels.end());
                    std::sort(inside_local.triangles.begin(), inside_local.triangles.end());
                    auto pos = position.find(config_key(inside_local));
                    if (pos == position.end()) continue;
                    std::vector<int> cycle;
                    for (std::size_t m = 0; m < temp.size(); ++m) {
                        const Config& local = temp[(pos->second + m) % temp.size()];
                        Diff d;
                        d.removed_labels = inside_global.labels;
                        d.removed_triangles = inside_global.triangles;
                        for (Subset l : local.labels) d.added_labels.push_back(chart.to_global(l));
                        for (const auto& t : local.triangles) d.added_triangles.push_back(chart.map(t, false));
                        std::sort(d.added_labels.begin(), d.added_labels.end());
                        std::sort(d.added_triangles.begin(), d.added_triangles.end());
                        Config next{replace(here.labels, d.removed_labels, d.added_labels),
                                    replace(here.triangles, d.removed_triangles, d.added_triangles)};
                        const int id = lookup(next);
                        if (id < 0) throw InternalError("transported cycle leaves the flip graph");
                        cycle.push_back(id);
                    }
                    for (std::size_t m = 0; m < cycle.size(); ++m)
                        if (K.find_edge(cycle[m], cycle[(m + 1) % cycle.size()]) < 0)
                            throw InternalError("transported cycle uses a missing edge");
                    found.push_back({std::move(cycle), cell_name(j, temp.size())});
                }
            }
        }
        return found;
    };
    const auto candidates = parallel_collect<Candidate>(out.configs.size(), detect, exec);
    std::set<std::vector<int>> seen;
    for (const auto& cand : candidates) {
        std::vector<int> key = cand.cycle;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        K.add_cell(cand.cycle, cand.kind);
    }
    return out;
}

}  // namespace flipcycles::plabic
