#include "flipcycles/subset.hpp"

namespace flipcycles {

std::vector<int> elements(Subset s) {
    std::vector<int> out;
    out.reserve(card(s));
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

Subset from_elements(const std::vector<int>& xs) {
    Subset s = 0;
    for (int x : xs) s |= bit(x);
    return s;
}

std::vector<Subset> k_subsets(int n, int k) {
    std::vector<Subset> out;
    if (k < 0 || k > n) return out;
    if (k == 0) return {0};
    // Gosper's hack walks same-popcount masks in increasing order.
    Subset s = (Subset{1} << k) - 1;
    const Subset limit = full_set(n);
    while (s <= limit) {
        out.push_back(s);
        Subset c = s & (~s + 1);
        Subset r = s + c;
        if (r == 0) break;
        s = (((r ^ s) >> 2) / c) | r;
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t colex_rank(Subset s) {
    std::uint64_t r = 0;
    int j = 1;
    for (int e : elements(s)) r += binomial(e - 1, j++);
    return r;
}

std::string to_string(Subset s) {
    std::string out = "{";
    bool first = true;
    for (int e : elements(s)) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

std::string compact(Subset s) {
    if (s == 0) return "∅";
    if (max_elem(s) > 9) return to_string(s);
    std::string out;
    for (int e : elements(s)) out += static_cast<char>('0' + e);
    return out;
}

}  // namespace flipcycles
