#include "flipcycles/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "flipcycles/errors.hpp"

namespace flipcycles::combinat {

const char* color_name(Color c) { return c == Color::white ? "white" : "black"; }

DecoratedPermutation::DecoratedPermutation(std::vector<int> image, std::vector<std::optional<Color>> decoration)
    : image_(std::move(image)), decoration_(std::move(decoration)) {
    const int n = static_cast<int>(image_.size());
    if (n > kMaxGround) throw ArgumentError("permutation too large");
    if (static_cast<int>(decoration_.size()) != n) throw ArgumentError("decoration length differs from n");
    std::vector<bool> seen(n + 1, false);
    for (int i = 1; i <= n; ++i) {
        int v = image_[i - 1];
        if (v < 1 || v > n || seen[v]) throw ValidationError("image is not a bijection on [n]");
        seen[v] = true;
        if ((v == i) != decoration_[i - 1].has_value())
            throw ValidationError("decoration must be defined exactly on fixed points");
    }
}

DecoratedPermutation DecoratedPermutation::undecorated(std::vector<int> image) {
    std::vector<std::optional<Color>> deco(image.size());
    for (std::size_t i = 0; i < image.size(); ++i)
        if (image[i] == static_cast<int>(i) + 1) deco[i] = Color::white;
    return DecoratedPermutation(std::move(image), std::move(deco));
}

Color DecoratedPermutation::fixed_color(int i) const {
    if (!decoration_[i - 1]) throw PreconditionError("not a fixed point: " + std::to_string(i));
    return *decoration_[i - 1];
}

bool DecoratedPermutation::is_identity() const {
    for (int i = 1; i <= n(); ++i)
        if (!is_fixed(i)) return false;
    return true;
}

std::string DecoratedPermutation::to_string() const {
    std::string out;
    for (int i = 1; i <= n(); ++i) {
        if (i > 1) out += ',';
        out += std::to_string(image_[i - 1]);
        if (decoration_[i - 1]) out += *decoration_[i - 1] == Color::white ? 'w' : 'b';
    }
    return out;
}

DecoratedPermutation DecoratedPermutation::parse(const std::string& text) {
    std::vector<int> image;
    std::vector<std::optional<Color>> deco;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ArgumentError("empty entry in permutation '" + text + "'");
        std::optional<Color> c;
        char last = tok.back();
        if (last == 'w' || last == 'b') {
            c = last == 'w' ? Color::white : Color::black;
            tok.pop_back();
        }
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw ArgumentError("bad permutation entry '" + tok + "'");
        }
        if (used != tok.size()) throw ArgumentError("bad permutation entry '" + tok + "'");
        image.push_back(v);
        deco.push_back(c);
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
        bool fixed = image[i] == static_cast<int>(i) + 1;
        if (fixed && !deco[i]) deco[i] = Color::white;
        if (!fixed && deco[i]) throw ArgumentError("color given on a non-fixed point");
    }
    return DecoratedPermutation(std::move(image), std::move(deco));
}

std::string necklace_violation(int n, const std::vector<Subset>& sets) {
    if (n < 1 || n > kMaxGround) return "n out of range";
    if (static_cast<int>(sets.size()) != n) return "necklace must have n sets";
    const Subset ground = full_set(n);
    const int k = card(sets[0]);
    for (int i = 1; i <= n; ++i) {
        Subset cur = sets[i - 1];
        Subset nxt = sets[i % n];
        if (cur & ~ground) return "set outside [n]";
        if (card(cur) != k) return "sets have different sizes";
        Subset kept = cur & ~bit(i);
        if ((nxt & kept) != kept) return "I_" + std::to_string(i % n + 1) + " does not contain I_" + std::to_string(i) + " minus " + std::to_string(i);
        if (card(nxt & ~kept) > 1) return "more than one element added after I_" + std::to_string(i);
    }
    return {};
}

GrassmannNecklace::GrassmannNecklace(int n, std::vector<Subset> sets) : n_(n), sets_(std::move(sets)) {
    std::string why = necklace_violation(n_, sets_);
    if (!why.empty()) throw ValidationError("malformed necklace: " + why);
}

std::vector<Subset> GrassmannNecklace::distinct_sets() const {
    std::vector<Subset> out = sets_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LabelCollection LabelCollection::from(int n, int k, std::vector<Subset> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (Subset s : labels)
        if (card(s) != k || (s & ~full_set(n))) throw ValidationError("label " + to_string(s) + " is not a k-subset of [n]");
    return LabelCollection{n, k, std::move(labels)};
}

bool LabelCollection::contains(Subset s) const { return std::binary_search(labels.begin(), labels.end(), s); }

DecoratedPermutation cyclic_decorated(int n, int k) {
    if (n < 1 || n > kMaxGround) throw ArgumentError("n out of range");
    if (k < 0 || k > n) throw ArgumentError("k must lie in [0, n]");
    std::vector<int> image(n);
    std::vector<std::optional<Color>> deco(n);
    for (int i = 1; i <= n; ++i) {
        image[i - 1] = (i - 1 + k) % n + 1;
        if (k == 0) deco[i - 1] = Color::white;
        if (k == n) deco[i - 1] = Color::black;
    }
    return DecoratedPermutation(std::move(image), std::move(deco));
}

GrassmannNecklace cyclic_necklace(int n, int k) { return necklace_of(cyclic_decorated(n, k)); }

GrassmannNecklace necklace_of(const DecoratedPermutation& p) {
    const int n = p.n();
    std::vector<int> inverse(n + 1);
    for (int i = 1; i <= n; ++i) inverse[p(i)] = i;
    std::vector<Subset> sets(n, 0);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            bool in = false;
            if (p.is_fixed(j)) {
                in = p.fixed_color(j) == Color::black;
            } else {
                // The latest event before step i decides: j enters after step
                // inverse[j] and leaves after step j.
                for (int back = 1; back <= n; ++back) {
                    int s = ((i - 1 - back) % n + n) % n + 1;
                    if (s == inverse[j]) { in = true; break; }
                    if (s == j) { in = false; break; }
                }
            }
            if (in) sets[i - 1] |= bit(j);
        }
    }
    GrassmannNecklace I(n, std::move(sets));
    if (!(decorated_of(I) == p)) throw InternalError("necklace_of does not invert decorated_of");
    return I;
}

DecoratedPermutation decorated_of(const GrassmannNecklace& I) {
    const int n = I.n();
    std::vector<int> image(n);
    std::vector<std::optional<Color>> deco(n);
    for (int i = 1; i <= n; ++i) {
        Subset cur = I[i];
        if (!has(cur, i)) {
            image[i - 1] = i;
            deco[i - 1] = Color::white;
            continue;
        }
        Subset added = I[i + 1] & ~(cur & ~bit(i));
        int j = min_elem(added);
        image[i - 1] = j;
        if (j == i) deco[i - 1] = Color::black;
    }
    return DecoratedPermutation(std::move(image), std::move(deco));
}

int helicity(const DecoratedPermutation& p) { return necklace_of(p).k(); }

int previous_distinct(const GrassmannNecklace& I, int j) {
    const int n = I.n();
    for (int back = 1; back < n; ++back) {
        int t = ((j - 1 - back) % n + n) % n + 1;
        if (I[t] != I[j]) return t;
    }
    throw PreconditionError("necklace is constant; its permutation is an identity");
}

int next_distinct(const GrassmannNecklace& I, int j) {
    const int n = I.n();
    for (int fwd = 1; fwd < n; ++fwd) {
        int t = (j - 1 + fwd) % n + 1;
        if (I[t] != I[j]) return t;
    }
    throw PreconditionError("necklace is constant; its permutation is an identity");
}

GrassmannNecklace necklace_shift(const GrassmannNecklace& I, Shift dir) {
    const int n = I.n();
    std::vector<Subset> out(n);
    for (int j = 1; j <= n; ++j) {
        if (dir == Shift::down)
            out[j - 1] = I[j] & I[previous_distinct(I, j)];
        else
            out[j - 1] = I[j] | I[next_distinct(I, j)];
    }
    return GrassmannNecklace(n, std::move(out));
}

bool is_weakly_separated(Subset a, Subset b) {
    if (card(a) != card(b)) throw ArgumentError("weak separation needs equal sizes");
    Subset only_a = a & ~b;
    Subset only_b = b & ~a;
    Subset diff = only_a | only_b;
    if (!diff) return true;
    // Count changes of side along the cyclic order of the symmetric difference.
    int changes = 0;
    bool first_side = false, prev_side = false;
    bool started = false;
    for (Subset rest = diff; rest; rest &= rest - 1) {
        int e = std::countr_zero(rest);
        bool side = (only_a >> e) & 1u;
        if (!started) {
            first_side = prev_side = side;
            started = true;
        } else if (side != prev_side) {
            ++changes;
            prev_side = side;
        }
    }
    if (prev_side != first_side) ++changes;
    return changes <= 2;
}

bool is_weakly_separated(const std::vector<Subset>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (!is_weakly_separated(labels[i], labels[j])) return false;
    return true;
}

LabelCollection extend_within(const LabelCollection& c, const std::vector<Subset>& candidates) {
    if (!is_weakly_separated(c.labels)) throw ValidationError("collection is not weakly separated");
    std::vector<Subset> out = c.labels;
    for (Subset cand : candidates) {
        if (card(cand) != c.k) continue;
        bool ok = true;
        for (Subset s : out) {
            if (s == cand || !is_weakly_separated(s, cand)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(cand);
    }
    return LabelCollection::from(c.n, c.k, std::move(out));
}

LabelCollection extend_to_maximal_ws(const LabelCollection& c) { return extend_within(c, k_subsets(c.n, c.k)); }

bool gale_leq(Subset a, Subset b, int i, int n) {
    auto shifted = [&](Subset s) {
        std::vector<int> r;
        for (int e : elements(s)) r.push_back(((e - i) % n + n) % n);
        std::sort(r.begin(), r.end());
        return r;
    };
    auto ra = shifted(a), rb = shifted(b);
    if (ra.size() != rb.size()) return false;
    for (std::size_t t = 0; t < ra.size(); ++t)
        if (ra[t] > rb[t]) return false;
    return true;
}

bool in_positroid(const GrassmannNecklace& I, Subset j) {
    if (card(j) != I.k()) return false;
    for (int i = 1; i <= I.n(); ++i)
        if (!gale_leq(I[i], j, i, I.n())) return false;
    return true;
}

std::vector<Subset> positroid_labels(const GrassmannNecklace& I) {
    std::vector<Subset> out;
    for (Subset s : k_subsets(I.n(), I.k()))
        if (in_positroid(I, s)) out.push_back(s);
    return out;
}

std::vector<DecoratedPermutation> all_decorated_permutations(int n) {
    std::vector<DecoratedPermutation> out;
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 1);
    do {
        std::vector<int> fixed;
        for (int i = 1; i <= n; ++i)
            if (image[i - 1] == i) fixed.push_back(i);
        for (unsigned mask = 0; mask < (1u << fixed.size()); ++mask) {
            std::vector<std::optional<Color>> deco(n);
            for (std::size_t f = 0; f < fixed.size(); ++f)
                deco[fixed[f] - 1] = ((mask >> f) & 1u) ? Color::black : Color::white;
            out.emplace_back(image, deco);
        }
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

std::vector<DecoratedPermutation> all_permutations(int n) {
    std::vector<DecoratedPermutation> out;
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 1);
    do {
        out.push_back(DecoratedPermutation::undecorated(image));
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

}  // namespace flipcycles::combinat
