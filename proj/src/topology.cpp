#include "flipcycles/topology.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "flipcycles/errors.hpp"

namespace flipcycles::topology {

int TwoComplex::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v) throw ArgumentError("bad edge endpoints");
    auto key = std::minmax(u, v);
    auto it = lookup_.find(key);
    if (it != lookup_.end()) return it->second;
    edges.emplace_back(u, v);
    int id = static_cast<int>(edges.size()) - 1;
    lookup_.emplace(key, id);
    return id;
}

int TwoComplex::find_edge(int u, int v) const {
    if (lookup_.size() != edges.size()) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [a, b] = edges[i];
            if ((a == u && b == v) || (a == v && b == u)) return static_cast<int>(i);
        }
        return -1;
    }
    auto it = lookup_.find(std::minmax(u, v));
    return it == lookup_.end() ? -1 : it->second;
}

void TwoComplex::add_cell(const std::vector<int>& cycle, const std::string& kind) {
    std::vector<OrientedEdge> walk;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
        int e = find_edge(u, v);
        if (e < 0) throw InternalError("cell uses a missing edge");
        walk.push_back({e, edges[e].first == u});
    }
    cells.push_back(std::move(walk));
    cell_kinds.push_back(kind);
}

std::string TwoComplex::check() const {
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& walk = cells[c];
        if (walk.empty()) return "cell " + std::to_string(c) + " is empty";
        int start = -1, at = -1;
        for (const auto& oe : walk) {
            if (oe.edge < 0 || oe.edge >= static_cast<int>(edges.size()))
                return "cell " + std::to_string(c) + " references a missing edge";
            auto [a, b] = edges[oe.edge];
            int from = oe.forward ? a : b, to = oe.forward ? b : a;
            if (start < 0) start = from;
            else if (from != at) return "cell " + std::to_string(c) + " is not a walk";
            at = to;
        }
        if (at != start) return "cell " + std::to_string(c) + " is not closed";
    }
    return {};
}

int TwoComplex::components() const {
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int count = vertex_count;
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --count;
        }
    }
    return count;
}

SmithResult smith_normal_form(IntMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) goto done;
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility by pulling an offending row into row t.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
        }
    }
done:
    SmithResult r;
    const std::size_t diag = std::min(rows, cols);
    for (std::size_t i = 0; i < diag; ++i) {
        Int v = abs(m[i][i]);
        r.diagonal.push_back(v);
        if (v != 0) ++r.rank;
    }
    return r;
}

IntMatrix boundary2(const TwoComplex& k) {
    IntMatrix m(k.edges.size(), std::vector<Int>(k.cells.size(), 0));
    for (std::size_t c = 0; c < k.cells.size(); ++c)
        for (const auto& oe : k.cells[c]) m[oe.edge][c] += oe.forward ? 1 : -1;
    return m;
}

namespace {

using SparseColumn = std::map<int, Int>;

void axpy(SparseColumn& target, const Int& factor, const SparseColumn& source) {
    for (const auto& [row, value] : source) {
        auto it = target.find(row);
        if (it == target.end()) {
            target.emplace(row, -factor * value);
        } else {
            it->second -= factor * value;
            if (it->second == 0) target.erase(it);
        }
    }
}

bool is_unit(const Int& v) { return v == 1 || v == -1; }

}  // namespace

Homology h1(const TwoComplex& k) {
    if (k.vertex_count == 0) throw PreconditionError("empty complex");
    int comps = k.components();
    if (comps != 1) throw PreconditionError("complex is disconnected: " + std::to_string(comps) + " components");
    std::string why = k.check();
    if (!why.empty()) throw ValidationError(why);

    // Column reduction with unit pivots keyed by the lowest row; columns whose
    // lowest entry is not a unit are set aside for a dense Smith form.
    std::map<int, SparseColumn> pivots;
    std::vector<SparseColumn> hard;
    for (const auto& walk : k.cells) {
        SparseColumn col;
        for (const auto& oe : walk) {
            Int& v = col[oe.edge];
            v += oe.forward ? 1 : -1;
            if (v == 0) col.erase(oe.edge);
        }
        while (!col.empty()) {
            auto low = std::prev(col.end());
            auto p = pivots.find(low->first);
            if (p == pivots.end()) break;
            const Int& u = p->second.at(low->first);
            Int factor = low->second * u;  // u is +-1, so u^{-1} = u
            axpy(col, factor, p->second);
        }
        if (col.empty()) continue;
        auto low = std::prev(col.end());
        if (is_unit(low->second))
            pivots.emplace(low->first, std::move(col));
        else
            hard.push_back(std::move(col));
    }

    Homology out;
    int rank = static_cast<int>(pivots.size());
    if (!hard.empty()) {
        std::vector<int> free_rows;
        for (auto& col : hard) {
            while (true) {
                int best = -1;
                for (auto it = col.rbegin(); it != col.rend(); ++it)
                    if (pivots.count(it->first)) {
                        best = it->first;
                        break;
                    }
                if (best < 0) break;
                const SparseColumn& p = pivots.at(best);
                axpy(col, col.at(best) * p.at(best), p);
            }
            for (const auto& [row, value] : col) free_rows.push_back(row);
        }
        std::sort(free_rows.begin(), free_rows.end());
        free_rows.erase(std::unique(free_rows.begin(), free_rows.end()), free_rows.end());
        IntMatrix dense(free_rows.size(), std::vector<Int>(hard.size(), 0));
        for (std::size_t c = 0; c < hard.size(); ++c)
            for (const auto& [row, value] : hard[c]) {
                auto r = std::lower_bound(free_rows.begin(), free_rows.end(), row) - free_rows.begin();
                dense[r][c] = value;
            }
        SmithResult snf = smith_normal_form(std::move(dense));
        rank += snf.rank;
        for (const auto& d : snf.diagonal)
            if (d > 1) out.torsion.push_back(d);
    }
    out.rank_boundary2 = rank;
    const int cycle_rank = static_cast<int>(k.edges.size()) - (k.vertex_count - 1);
    out.betti1 = cycle_rank - rank;
    return out;
}

namespace {

void reduce_word(std::vector<int>& w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    // Cyclic reduction.
    std::size_t a = 0, b = out.size();
    while (b - a >= 2 && out[a] == -out[b - 1]) {
        ++a;
        --b;
    }
    w.assign(out.begin() + static_cast<long>(a), out.begin() + static_cast<long>(b));
}

}  // namespace

GroupPresentation pi1_presentation(const TwoComplex& k) {
    if (k.vertex_count == 0) throw PreconditionError("empty complex");
    if (k.components() != 1) throw PreconditionError("complex is disconnected");
    std::vector<std::vector<int>> incident(k.vertex_count);
    for (std::size_t e = 0; e < k.edges.size(); ++e) {
        incident[k.edges[e].first].push_back(static_cast<int>(e));
        incident[k.edges[e].second].push_back(static_cast<int>(e));
    }
    std::vector<bool> tree(k.edges.size(), false), seen(k.vertex_count, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int e : incident[u]) {
            int v = k.edges[e].first == u ? k.edges[e].second : k.edges[e].first;
            if (seen[v]) continue;
            seen[v] = true;
            tree[e] = true;
            queue.push_back(v);
        }
    }
    std::vector<int> generator(k.edges.size(), -1);
    GroupPresentation p;
    for (std::size_t e = 0; e < k.edges.size(); ++e)
        if (!tree[e]) generator[e] = p.generators++;
    for (const auto& walk : k.cells) {
        std::vector<int> word;
        for (const auto& oe : walk)
            if (generator[oe.edge] >= 0) word.push_back(oe.forward ? generator[oe.edge] + 1 : -(generator[oe.edge] + 1));
        reduce_word(word);
        p.relators.push_back(std::move(word));
    }
    return p;
}

GroupPresentation simplify(const GroupPresentation& input, std::uint64_t budget, std::uint64_t* steps_out) {
    std::uint64_t steps = 0;
    std::vector<std::vector<int>> rels;
    for (auto r : input.relators) {
        reduce_word(r);
        if (!r.empty()) rels.push_back(std::move(r));
    }
    std::vector<bool> alive(input.generators, true);
    int live = input.generators;
    const std::size_t length_cap = 50'000'000;

    auto gen_of = [](int letter) { return (letter > 0 ? letter : -letter) - 1; };

    while (live > 0 && steps < budget) {
        // Pick the elimination that grows the presentation least: a relator
        // in which generator x occurs exactly once.
        std::vector<std::size_t> total(input.generators, 0);
        std::size_t total_length = 0;
        for (const auto& r : rels) {
            total_length += r.size();
            for (int x : r) ++total[gen_of(x)];
        }
        steps += total_length + 1;
        if (total_length > length_cap) break;

        // A generator that appears in no relator is a free factor; nothing to do
        // for it here.
        long best_cost = -1;
        std::size_t best_rel = 0;
        int best_pos = -1;
        std::vector<int> local(input.generators, 0);
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            const auto& r = rels[ri];
            for (int x : r) ++local[gen_of(x)];
            for (std::size_t pos = 0; pos < r.size(); ++pos) {
                int g = gen_of(r[pos]);
                if (local[g] != 1) continue;
                long others = static_cast<long>(total[g]) - 1;
                long cost = (static_cast<long>(r.size()) - 2) * others;
                if (best_pos < 0 || cost < best_cost ||
                    (cost == best_cost && r.size() < rels[best_rel].size())) {
                    best_cost = cost;
                    best_rel = ri;
                    best_pos = static_cast<int>(pos);
                }
            }
            for (int x : r) local[gen_of(x)] = 0;
        }
        if (best_pos < 0) break;

        // r = w1 x^e w2 gives x = (w2 w1)^{-e}.
        const std::vector<int> r = rels[best_rel];
        const int letter = r[best_pos];
        const int g = gen_of(letter);
        std::vector<int> rest(r.begin() + best_pos + 1, r.end());
        rest.insert(rest.end(), r.begin(), r.begin() + best_pos);
        std::vector<int> image;  // word equal to x
        if (letter > 0) {
            for (auto it = rest.rbegin(); it != rest.rend(); ++it) image.push_back(-*it);
        } else {
            image = rest;
        }
        std::vector<int> image_inv;
        for (auto it = image.rbegin(); it != image.rend(); ++it) image_inv.push_back(-*it);

        rels.erase(rels.begin() + static_cast<long>(best_rel));
        std::vector<std::vector<int>> next;
        next.reserve(rels.size());
        for (auto& w : rels) {
            bool touched = false;
            for (int x : w)
                if (gen_of(x) == g) {
                    touched = true;
                    break;
                }
            if (touched) {
                std::vector<int> out;
                for (int x : w) {
                    if (gen_of(x) != g) out.push_back(x);
                    else if (x > 0) out.insert(out.end(), image.begin(), image.end());
                    else out.insert(out.end(), image_inv.begin(), image_inv.end());
                }
                steps += out.size();
                reduce_word(out);
                if (!out.empty()) next.push_back(std::move(out));
            } else {
                next.push_back(std::move(w));
            }
        }
        rels = std::move(next);
        alive[g] = false;
        --live;
    }

    // Renumber the surviving generators.
    std::vector<int> remap(input.generators, -1);
    GroupPresentation out;
    for (int g = 0; g < input.generators; ++g)
        if (alive[g]) remap[g] = out.generators++;
    for (auto& r : rels) {
        std::vector<int> w;
        for (int x : r) {
            int ng = remap[gen_of(x)];
            if (ng < 0) throw InternalError("relator mentions an eliminated generator");
            w.push_back(x > 0 ? ng + 1 : -(ng + 1));
        }
        out.relators.push_back(std::move(w));
    }
    if (steps_out) *steps_out = steps;
    return out;
}

namespace {

// HLT coset enumeration over the trivial subgroup with coincidence handling.
class CosetEnumerator {
public:
    CosetEnumerator(const GroupPresentation& p, std::uint64_t budget, std::size_t max_entries)
        : cols_(2 * p.generators), budget_(budget), max_entries_(max_entries) {
        for (const auto& r : p.relators) {
            std::vector<int> w;
            for (int x : r) w.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
            if (!w.empty()) rels_.push_back(std::move(w));
        }
        new_coset();
    }

    // Returns the index when the table closes, -1 when the budget runs out.
    long run() {
        for (std::size_t c = 0; c < parent_.size(); ++c) {
            for (const auto& w : rels_) {
                if (!live(c)) break;
                if (!scan_and_fill(static_cast<int>(c), w)) return -1;
            }
            for (int x = 0; x < cols_ && live(c); ++x)
                if (entry(static_cast<int>(c), x) < 0 && !define(static_cast<int>(c), x)) return -1;
        }
        long index = 0;
        for (std::size_t c = 0; c < parent_.size(); ++c)
            if (live(c)) ++index;
        return index;
    }

    std::uint64_t steps() const { return steps_; }
    long live_cosets() const {
        long count = 0;
        for (std::size_t c = 0; c < parent_.size(); ++c)
            if (live(c)) ++count;
        return count;
    }

private:
    bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }
    int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }

    int new_coset() {
        table_.insert(table_.end(), cols_, -1);
        parent_.push_back(static_cast<int>(parent_.size()));
        return static_cast<int>(parent_.size()) - 1;
    }

    bool define(int c, int x) {
        if (++steps_ > budget_ || table_.size() + cols_ > max_entries_) return false;
        int d = new_coset();
        entry(c, x) = d;
        entry(d, x ^ 1) = c;
        return true;
    }

    int rep(int c) {
        int r = c;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[c] != r) {
            int next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(int a, int b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        queue_.push_back(b);
    }

    void coincidence(int a, int b) {
        merge(a, b);
        while (!queue_.empty()) {
            int e = queue_.front();
            queue_.pop_front();
            for (int x = 0; x < cols_; ++x) {
                int f = entry(e, x);
                if (f < 0) continue;
                ++steps_;
                if (entry(f, x ^ 1) == e) entry(f, x ^ 1) = -1;
                int e1 = rep(e), f1 = rep(f);
                if (entry(e1, x) >= 0)
                    merge(f1, entry(e1, x));
                else if (entry(f1, x ^ 1) >= 0)
                    merge(e1, entry(f1, x ^ 1));
                else {
                    entry(e1, x) = f1;
                    entry(f1, x ^ 1) = e1;
                }
            }
        }
    }

    bool scan_and_fill(int c, const std::vector<int>& w) {
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && entry(f, w[i]) >= 0) {
                f = entry(f, w[i]);
                ++i;
                ++steps_;
            }
            if (i > j) {
                if (f != b) coincidence(f, b);
                return steps_ <= budget_;
            }
            while (j >= i && entry(b, w[j] ^ 1) >= 0) {
                b = entry(b, w[j] ^ 1);
                --j;
                ++steps_;
            }
            if (j < i) {
                coincidence(f, b);
                return steps_ <= budget_;
            }
            if (i == j) {
                entry(f, w[i]) = b;
                entry(b, w[i] ^ 1) = f;
                return steps_ <= budget_;
            }
            if (!define(f, w[i])) return false;
        }
    }

    int cols_;
    std::uint64_t budget_;
    std::size_t max_entries_;
    std::uint64_t steps_ = 0;
    std::vector<std::vector<int>> rels_;
    std::vector<int> table_;
    std::vector<int> parent_;
    std::deque<int> queue_;
};

}  // namespace

Pi1Result certify_trivial(const GroupPresentation& p, std::uint64_t budget) {
    Pi1Result out;
    std::uint64_t steps = 0;
    GroupPresentation q = simplify(p, budget, &steps);
    out.steps = steps;
    out.generators_after_tietze = q.generators;
    if (q.generators == 0) {
        out.status = Pi1Status::trivial;
        out.cosets = 1;
        return out;
    }
    if (steps >= budget) return out;
    CosetEnumerator ce(q, budget - steps, 25'000'000);
    long index = ce.run();
    out.steps += ce.steps();
    out.cosets = static_cast<int>(ce.live_cosets());
    if (index == 1) out.status = Pi1Status::trivial;
    return out;
}

Certificate certify(const TwoComplex& k, bool with_pi1, std::uint64_t budget) {
    auto start = std::chrono::steady_clock::now();
    Certificate c;
    c.vertices = k.vertex_count;
    c.edges = static_cast<int>(k.edges.size());
    c.cells = static_cast<int>(k.cells.size());
    c.homology = h1(k);
    c.budget = budget;
    if (with_pi1) {
        c.pi1_attempted = true;
        c.pi1 = certify_trivial(pi1_presentation(k), budget);
        if (c.pi1.status == Pi1Status::trivial && !c.h1_trivial())
            throw InternalError("trivial fundamental group with nonzero H1");
    }
    c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return c;
}

std::string summary(const Certificate& c) {
    std::string s = "V=" + std::to_string(c.vertices) + " E=" + std::to_string(c.edges) + " F=" + std::to_string(c.cells) +
                    " betti1=" + std::to_string(c.homology.betti1);
    if (!c.homology.torsion.empty()) {
        s += " torsion=";
        for (std::size_t i = 0; i < c.homology.torsion.size(); ++i) {
            if (i) s += ',';
            s += c.homology.torsion[i].str();
        }
    }
    if (c.pi1_attempted) s += c.pi1.status == Pi1Status::trivial ? " pi1=trivial" : " pi1=inconclusive";
    return s;
}

}  // namespace flipcycles::topology
