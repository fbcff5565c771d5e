#include "flipcycles/zonotope.hpp"

#include <algorithm>
#include <set>

#include "flipcycles/errors.hpp"
#include "linalg.hpp"

namespace flipcycles::zonotope {

ZonotopeSpec zonotope_spec(int n, int d) {
    if (d < 1 || d >= n) throw ArgumentError("need 1 <= d < n");
    if (n > kMaxGround) throw ArgumentError("n too large");
    ZonotopeSpec spec;
    spec.n = n;
    spec.d = d;
    for (int i = 1; i <= n; ++i) {
        spec.t.push_back(i);
        Vec v;
        Int p = 1;
        for (int e = 0; e < d; ++e) {
            v.push_back(p);
            p *= i;
        }
        spec.v.push_back(std::move(v));
    }
    return spec;
}

std::string sign_string(const SignedSubset& x, int n) {
    std::string s;
    for (int i = 1; i <= n; ++i) s += has(x.plus, i) ? '+' : has(x.minus, i) ? '-' : '0';
    return s;
}

SignedSubset parse_sign_string(const std::string& s) {
    SignedSubset x;
    for (std::size_t i = 0; i < s.size(); ++i) {
        int e = static_cast<int>(i) + 1;
        switch (s[i]) {
            case '+': x.plus |= bit(e); break;
            case '-': x.minus |= bit(e); break;
            case '0': break;
            default: throw ArgumentError("bad sign character in '" + s + "'");
        }
    }
    return x;
}

Vec point_of(const ZonotopeSpec& spec, Subset s) {
    Vec p(spec.d, 0);
    for (int i : elements(s))
        for (int c = 0; c < spec.d; ++c) p[c] += spec.v[i - 1][c];
    return p;
}

std::vector<Vec> to_tile(const ZonotopeSpec& spec, const SignedSubset& x) {
    std::vector<int> zero = elements(x.zero(spec.n));
    std::set<Vec> pts;
    Vec base = point_of(spec, x.plus);
    for (unsigned mask = 0; mask < (1u << zero.size()); ++mask) {
        Vec p = base;
        for (std::size_t b = 0; b < zero.size(); ++b)
            if ((mask >> b) & 1u)
                for (int c = 0; c < spec.d; ++c) p[c] += spec.v[zero[b] - 1][c];
        pts.insert(std::move(p));
    }
    return {pts.begin(), pts.end()};
}

Tiling::Tiling(int n, int d, std::vector<SignedSubset> tiles) : n_(n), d_(d), tiles_(std::move(tiles)) {
    for (const auto& x : tiles_)
        if ((x.plus & x.minus) || ((x.plus | x.minus) & ~full_set(n_))) throw ValidationError("invalid signed subset");
    std::sort(tiles_.begin(), tiles_.end(), [n](const SignedSubset& a, const SignedSubset& b) {
        Subset za = a.zero(n), zb = b.zero(n);
        if (za != zb) return za < zb;
        return a.plus < b.plus;
    });
    indexed_ = tiles_.size() == binomial(n_, d_);
    for (std::size_t i = 0; indexed_ && i < tiles_.size(); ++i) {
        Subset z = tiles_[i].zero(n_);
        indexed_ = card(z) == d_ && colex_rank(z) == i;
    }
}

const SignedSubset* Tiling::find(Subset zero) const {
    if (indexed_) {
        if (card(zero) != d_) return nullptr;
        return &tiles_[colex_rank(zero)];
    }
    for (const auto& x : tiles_)
        if (x.zero(n_) == zero) return &x;
    return nullptr;
}

std::string Tiling::key() const {
    std::string k;
    k.reserve(tiles_.size() * 3);
    for (const auto& x : tiles_) {
        k.push_back(static_cast<char>(x.plus & 0xff));
        k.push_back(static_cast<char>((x.plus >> 8) & 0xff));
        k.push_back(static_cast<char>((x.plus >> 16) & 0xff));
    }
    return k;
}

std::vector<std::string> Tiling::sign_strings() const {
    std::vector<std::string> out;
    for (const auto& x : tiles_) out.push_back(sign_string(x, n_));
    return out;
}

std::vector<int> FlipSite::bits() const {
    std::vector<int> out;
    for (int i : elements(set)) out.push_back(has(ones, i) ? 1 : 0);
    return out;
}

std::string FlipSite::label() const { return "S=" + compact(set) + " P=" + compact(prefix); }

Tiling minimal_tiling(const ZonotopeSpec& spec) {
    const int n = spec.n, d = spec.d;
    auto lifted = [&](int i) {
        Vec w = spec.v[i - 1];
        Int h = 1;
        for (int e = 0; e < d; ++e) h *= spec.t[i - 1];
        w.push_back(h);
        return w;
    };
    std::vector<SignedSubset> tiles;
    for (Subset s : k_subsets(n, d)) {
        linalg::Mat rows;
        for (int i : elements(s)) rows.push_back(lifted(i));
        Vec f = linalg::cofactor_null(rows);
        // Lower faces maximize a functional with negative last coordinate.
        if (f[d] > 0)
            for (auto& c : f) c = -c;
        if (f[d] == 0) throw InternalError("degenerate lifting");
        SignedSubset x;
        for (int i = 1; i <= n; ++i) {
            if (has(s, i)) continue;
            Int val = linalg::dot(f, lifted(i));
            if (val > 0) x.plus |= bit(i);
            else if (val < 0) x.minus |= bit(i);
            else throw InternalError("lifting is not generic");
        }
        tiles.push_back(x);
    }
    return Tiling(n, d, std::move(tiles));
}

bool meet_properly(const ZonotopeSpec& spec, const SignedSubset& a, const SignedSubset& b) {
    const int n = spec.n;
    SignedSubset p = a, q = b;
    while (true) {
        const Subset zp = p.zero(n), zq = q.zero(n);
        const Vec bp = point_of(spec, p.plus), bq = point_of(spec, q.plus);
        if (zp == zq && bp == bq) return true;

        // 0 lies in P - Q iff target lies in the zonotope spanned by gens.
        linalg::Mat gens;
        std::vector<int> owner;  // element index of each generator
        for (int i : elements(zp)) {
            gens.push_back(spec.v[i - 1]);
            owner.push_back(i);
        }
        for (int j : elements(zq)) {
            gens.push_back(spec.v[j - 1]);
            owner.push_back(-j);
        }
        Vec target = point_of(spec, q.plus | zq);
        for (int c = 0; c < spec.d; ++c) target[c] -= bp[c];

        const int r = linalg::rank(gens);
        linalg::Mat with_target = gens;
        with_target.push_back(target);
        if (linalg::rank(with_target) > r) return true;
        if (r == 0) return true;

        linalg::Mat basis;
        for (const auto& g : gens) {
            linalg::Mat trial = basis;
            trial.push_back(g);
            if (linalg::rank(trial) > static_cast<int>(basis.size())) basis = std::move(trial);
            if (static_cast<int>(basis.size()) == r) break;
        }

        // Facet normals of the zonotope within its span: one per (r-1)-subset
        // of generators spanning a hyperplane of the span.
        std::vector<Vec> normals;
        const int m = static_cast<int>(gens.size());
        std::vector<int> pick(r - 1);
        auto visit = [&](auto&& self, int start, int depth) -> void {
            if (depth == r - 1) {
                linalg::Mat proj;
                for (int u : pick) {
                    Vec row;
                    for (const auto& bvec : basis) row.push_back(linalg::dot(gens[u], bvec));
                    proj.push_back(std::move(row));
                }
                if (linalg::rank(proj) < r - 1) return;
                Vec y = linalg::cofactor_null(proj);
                Vec c(spec.d, 0);
                for (int j = 0; j < r; ++j)
                    for (int t = 0; t < spec.d; ++t) c[t] += y[j] * basis[j][t];
                bool zero = std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
                if (!zero) normals.push_back(std::move(c));
                return;
            }
            for (int i = start; i < m; ++i) {
                pick[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        visit(visit, 0, 0);

        const Vec* face_normal = nullptr;
        bool flip_sign = false;
        for (const auto& c : normals) {
            Int lo = 0, hi = 0;
            for (const auto& g : gens) {
                Int s = linalg::dot(c, g);
                if (s < 0) lo += s;
                else hi += s;
            }
            Int val = linalg::dot(c, target);
            if (val < lo || val > hi) return true;
            if (!face_normal && (val == hi || val == lo)) {
                face_normal = &c;
                flip_sign = val == lo;
            }
        }
        // 0 in the relative interior of P - Q with P != Q: the relative
        // interiors overlap.
        if (!face_normal) return false;

        Vec c = *face_normal;
        if (flip_sign)
            for (auto& x : c) x = -x;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            Int s = linalg::dot(c, gens[g]);
            if (s == 0) continue;
            int e = owner[g];
            if (e > 0) {
                if (s > 0) p.plus |= bit(e);
                else p.minus |= bit(e);
            } else {
                if (s > 0) q.minus |= bit(-e);
                else q.plus |= bit(-e);
            }
        }
    }
}

ValidationReport validate_tiling(const ZonotopeSpec& spec, const Tiling& t) {
    ValidationReport r;
    const int n = spec.n, d = spec.d;
    if (t.n() != n || t.d() != d) {
        r.problems.push_back("tiling dimensions differ from the zonotope");
        return r;
    }
    const auto& tiles = t.tiles();
    r.fine = std::all_of(tiles.begin(), tiles.end(), [&](const SignedSubset& x) { return card(x.zero(n)) == d; });
    if (!r.fine) r.problems.push_back("a tile does not have |X0| = d");

    std::set<Subset> zeros;
    bool dup = false;
    for (const auto& x : tiles) dup |= !zeros.insert(x.zero(n)).second;
    r.one_tile_per_subset = !dup && r.fine && zeros.size() == binomial(n, d);
    if (!r.one_tile_per_subset) r.problems.push_back("tiles are not in bijection with the d-subsets");

    auto vol = [&](Subset s) {
        linalg::Mat m;
        for (int i : elements(s)) m.push_back(spec.v[i - 1]);
        Int v = linalg::det(std::move(m));
        return v < 0 ? Int(-v) : v;
    };
    for (const auto& x : tiles)
        if (card(x.zero(n)) == d) r.total_volume += vol(x.zero(n));
    for (Subset s : k_subsets(n, d)) r.expected_volume += vol(s);
    r.volume = r.fine && r.total_volume == r.expected_volume;
    if (!r.volume) r.problems.push_back("volume " + r.total_volume.str() + " differs from " + r.expected_volume.str());

    r.faces = true;
    for (std::size_t i = 0; i < tiles.size(); ++i)
        for (std::size_t j = i + 1; j < tiles.size(); ++j)
            if (!meet_properly(spec, tiles[i], tiles[j])) {
                r.faces = false;
                r.problems.push_back("tiles " + sign_string(tiles[i], n) + " and " + sign_string(tiles[j], n) +
                                     " overlap or do not meet in a common face");
            }
    r.ok = r.fine && r.one_tile_per_subset && r.volume && r.faces;
    return r;
}

namespace {

bool site_at(const Tiling& t, Subset s, FlipSite& out) {
    const int n = t.n();
    (void)n;
    bool first = true;
    Subset prefix = 0, ones = 0;
    int prev = -1;
    for (int i : elements(s)) {
        const SignedSubset* x = t.find(s & ~bit(i));
        if (!x) return false;
        Subset pre = x->plus & ~s;
        if (first) {
            prefix = pre;
            first = false;
        } else if (pre != prefix) {
            return false;
        }
        int b = has(x->plus, i) ? 1 : 0;
        if (b == prev) return false;
        prev = b;
        if (b) ones |= bit(i);
    }
    out = FlipSite{s, prefix, ones};
    return true;
}

Tiling flip_unchecked(const Tiling& t, const FlipSite& site) {
    std::vector<SignedSubset> tiles = t.tiles();
    for (auto& x : tiles) {
        Subset z = x.zero(t.n());
        if ((z & ~site.set) != 0 || card(site.set & ~z) != 1) continue;
        Subset i = site.set & ~z;
        if (x.plus & i) {
            x.plus &= ~i;
            x.minus |= i;
        } else {
            x.minus &= ~i;
            x.plus |= i;
        }
    }
    return Tiling(t.n(), t.d(), std::move(tiles));
}

}  // namespace

std::vector<FlipSite> available_flips(const Tiling& t) {
    std::vector<FlipSite> out;
    for (Subset s : k_subsets(t.n(), t.d() + 1)) {
        FlipSite site;
        if (site_at(t, s, site)) out.push_back(site);
    }
    return out;
}

const FlipSite* find_flip(const std::vector<FlipSite>& flips, Subset set) {
    for (const auto& f : flips)
        if (f.set == set) return &f;
    return nullptr;
}

Tiling apply_flip(const Tiling& t, const FlipSite& site) {
    FlipSite actual;
    if (card(site.set) != t.d() + 1 || !site_at(t, site.set, actual) || !(actual == site))
        throw PreconditionError("flip " + site.label() + " is not available");
    return flip_unchecked(t, site);
}

namespace {

auto tiling_expander() {
    return [](const Tiling& t) {
        std::vector<detail::Discovered<Tiling>> out;
        for (const auto& f : available_flips(t)) {
            Tiling next = flip_unchecked(t, f);
            std::string key = next.key();
            out.push_back({std::move(key), std::move(next), f.label()});
        }
        return out;
    };
}

void check_graded(FlipGraph<Tiling>& g, const ZonotopeSpec& spec) {
    for (const auto& e : g.edges)
        if (std::abs(g.rank[e.u] - g.rank[e.v]) != 1) throw InternalError("flip graph is not graded");
    const int top = static_cast<int>(binomial(spec.n, spec.d + 1));
    int at_zero = 0, at_top = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.rank[i] == 0) ++at_zero;
        if (g.rank[i] == top) {
            ++at_top;
            g.max_vertex = static_cast<int>(i);
        }
    }
    if (at_zero != 1 || at_top != 1 || g.max_rank() != top) throw InternalError("flip graph extremes are not unique");
}

}  // namespace

FlipGraph<Tiling> enumerate_tilings(const ZonotopeSpec& spec, Execution exec, std::size_t cap) {
    auto g = bfs_levels(minimal_tiling(spec), [](const Tiling& t) { return t.key(); }, tiling_expander(), exec, cap);
    check_graded(g, spec);
    return g;
}

FlipGraph<Tiling> enumerate_tilings_reference(const ZonotopeSpec& spec, std::size_t cap) {
    auto g = bfs_serial(minimal_tiling(spec), [](const Tiling& t) { return t.key(); }, tiling_expander(), cap);
    check_graded(g, spec);
    return g;
}

namespace {

struct CellCandidate {
    std::vector<int> cycle;
    std::string kind;
};

std::vector<FlipSite> flips_within(const Tiling& t, Subset within) {
    std::vector<FlipSite> out;
    for (const auto& f : available_flips(t))
        if ((f.set & ~within) == 0) out.push_back(f);
    return out;
}

}  // namespace

topology::TwoComplex build_z_complex(const FlipGraph<Tiling>& graph, Execution exec) {
    topology::TwoComplex k;
    k.vertex_count = static_cast<int>(graph.size());
    for (const auto& e : graph.edges) k.add_edge(e.u, e.v);
    if (graph.size() == 0) return k;
    const int n = graph.vertices[0].n(), d = graph.vertices[0].d();
    const std::string polygon = std::to_string(2 * d + 4) + "-gon";

    auto id_of = [&](const Tiling& t) {
        int id = graph.find(t.key());
        if (id < 0) throw InternalError("flip leaves the enumerated graph");
        return id;
    };

    auto cells = parallel_collect<CellCandidate>(
        graph.size(),
        [&](std::size_t ui) {
            std::vector<CellCandidate> found;
            const int u = static_cast<int>(ui);
            const Tiling& t = graph.vertices[ui];
            const auto flips = available_flips(t);
            for (std::size_t i = 0; i < flips.size(); ++i) {
                Tiling w1 = flip_unchecked(t, flips[i]);
                const auto f1 = available_flips(w1);
                for (std::size_t j = i + 1; j < flips.size(); ++j) {
                    const FlipSite* again2 = find_flip(f1, flips[j].set);
                    if (!again2 || !(*again2 == flips[j])) continue;
                    Tiling w2 = flip_unchecked(t, flips[j]);
                    const auto f2 = available_flips(w2);
                    const FlipSite* again1 = find_flip(f2, flips[i].set);
                    if (!again1 || !(*again1 == flips[i])) continue;
                    Tiling w12 = flip_unchecked(w1, flips[j]);
                    if (!(w12 == flip_unchecked(w2, flips[i]))) continue;
                    std::vector<int> cyc{u, id_of(w1), id_of(w12), id_of(w2)};
                    if (*std::min_element(cyc.begin(), cyc.end()) == u) found.push_back({cyc, "quadrilateral"});
                }
            }
            for (Subset tset : k_subsets(n, d + 2)) {
                bool common = true, first = true;
                Subset outside = 0;
                for (Subset z : k_subsets(n, d)) {
                    if (z & ~tset) continue;
                    Subset o = t.find(z)->plus & ~tset;
                    if (first) {
                        outside = o;
                        first = false;
                    } else if (o != outside) {
                        common = false;
                        break;
                    }
                }
                if (!common) continue;
                std::vector<int> cyc{u};
                Tiling cur = t;
                Subset came_from = 0;
                while (true) {
                    auto local = flips_within(cur, tset);
                    const FlipSite* step = nullptr;
                    for (const auto& f : local)
                        if (f.set != came_from) {
                            step = &f;
                            break;
                        }
                    if (local.size() != 2 || !step) throw InternalError("restricted flip graph is not a cycle");
                    came_from = step->set;
                    cur = flip_unchecked(cur, *step);
                    if (cur == t) break;
                    cyc.push_back(id_of(cur));
                    if (static_cast<int>(cyc.size()) > 2 * d + 4) throw InternalError("restricted cycle too long");
                }
                if (static_cast<int>(cyc.size()) != 2 * d + 4) throw InternalError("restricted cycle has wrong length");
                if (*std::min_element(cyc.begin(), cyc.end()) == u) found.push_back({cyc, polygon});
            }
            return found;
        },
        exec);

    std::set<std::vector<int>> seen;
    for (const auto& c : cells) {
        std::vector<int> vs = c.cycle;
        std::sort(vs.begin(), vs.end());
        if (seen.insert(vs).second) k.add_cell(c.cycle, c.kind);
    }
    return k;
}

}  // namespace flipcycles::zonotope
