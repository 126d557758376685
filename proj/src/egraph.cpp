#include "dp1/egraph.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

namespace dp1::egraph {

int vset::count() const {
    int n = 0;
    for (auto x : w) n += std::popcount(x);
    return n;
}

int vset::lowest() const {
    for (int i = 0; i < 4; ++i)
        if (w[i]) return 64 * i + std::countr_zero(w[i]);
    return -1;
}

std::vector<int> to_vector(const vset& s) {
    std::vector<int> out;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t word = s.w[i];
        while (word) {
            out.push_back(64 * i + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

vset from_vector(const std::vector<int>& v) {
    vset s;
    for (int x : v) {
        if (x < 0 || x >= 240) throw dp1_error("vertex index out of range");
        s.set(x);
    }
    return s;
}

graph build_graph(std::vector<int> weights) {
    std::sort(weights.begin(), weights.end());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    if (weights.empty()) throw dp1_error("empty weight set");
    for (int w : weights)
        if (w < 0 || w > 3)
            throw dp1_error("pairing weight " + std::to_string(w) +
                            " cannot occur between distinct exceptional classes");
    graph g;
    g.weights = weights;
    const auto& all = picard::exceptional_classes();
    for (int u = 0; u < 240; ++u) {
        for (int v = u + 1; v < 240; ++v) {
            int w = picard::pairing(all[u], all[v]);
            if (std::binary_search(weights.begin(), weights.end(), w)) {
                g.adj[u].set(v);
                g.adj[v].set(u);
            }
        }
    }
    return g;
}

bool adjacent(const graph& g, int u, int v) { return g.adj[u].test(v); }

bool is_clique(const graph& g, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (!adjacent(g, verts[i], verts[j])) return false;
    std::set<int> distinct(verts.begin(), verts.end());
    return distinct.size() == verts.size();
}

namespace {

struct clique_search {
    const graph& g;
    std::vector<int> best;
    std::vector<int> cur;
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;

    void expand(const vset& p) {
        if (budget && ++nodes > budget)
            throw search_exhausted("clique search exceeded its node budget");
        if (p.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        // greedy colouring, lowest vertices first
        std::vector<int> order, color;
        vset uncolored = p;
        for (int c = 1; !uncolored.empty(); ++c) {
            vset avail = uncolored;
            while (!avail.empty()) {
                int v = avail.lowest();
                order.push_back(v);
                color.push_back(c);
                uncolored.reset(v);
                avail.reset(v);
                avail = avail - g.adj[v];
            }
        }
        vset cand = p;
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (cur.size() + color[i] <= best.size()) return;
            int v = order[i];
            cur.push_back(v);
            expand(cand & g.adj[v]);
            cur.pop_back();
            cand.reset(v);
        }
    }
};

std::vector<int> greedy_warm_start(const graph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<int> best;
    for (int trial = 0; trial < 64; ++trial) {
        vset p;
        for (int v = 0; v < 240; ++v) p.set(v);
        std::vector<int> cur;
        while (!p.empty()) {
            auto verts = to_vector(p);
            int v = verts[rng() % verts.size()];
            cur.push_back(v);
            p = p & g.adj[v];
        }
        if (cur.size() > best.size()) best = cur;
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace

std::vector<int> max_clique(const graph& g, std::uint64_t seed,
                            std::uint64_t node_budget) {
    clique_search st{g};
    st.budget = node_budget;
    st.best = greedy_warm_start(g, seed);
    vset all;
    for (int v = 0; v < 240; ++v) all.set(v);
    st.expand(all);
    std::sort(st.best.begin(), st.best.end());
    return st.best;
}

bool is_Kn(const std::vector<picard::cls>& classes) {
    for (const auto& c : classes)
        if (!picard::is_exceptional(c))
            throw not_exceptional("is_Kn expects exceptional classes");
    if (classes.size() < 2 || classes.size() % 2) return false;
    std::set<picard::cls> pool(classes.begin(), classes.end());
    if (pool.size() != classes.size()) return false;
    for (const auto& c : classes) {
        if (!pool.count(picard::partner(c))) return false;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            int w = picard::pairing(classes[i], classes[j]);
            bool partners = picard::partner(classes[i]) == classes[j];
            if (w != (partners ? 3 : 1)) return false;
        }
    }
    return true;
}

vset common_neighbors(const graph& g, const std::vector<int>& verts) {
    vset p;
    for (int v = 0; v < 240; ++v) p.set(v);
    for (int v : verts) {
        if (v < 0 || v >= 240) throw dp1_error("vertex index out of range");
        p = p & g.adj[v];
    }
    return p;
}

std::vector<int> random_clique(const graph& g, int k, std::uint64_t seed,
                               int max_restarts) {
    if (k < 1 || k > 240) throw dp1_error("clique size out of range");
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
    for (int restart = 0; restart < max_restarts; ++restart) {
        vset p;
        for (int v = 0; v < 240; ++v) p.set(v);
        std::vector<int> cur;
        while (static_cast<int>(cur.size()) < k && !p.empty()) {
            auto verts = to_vector(p);
            int v = verts[rng() % verts.size()];
            cur.push_back(v);
            p = p & g.adj[v];
        }
        if (static_cast<int>(cur.size()) == k) {
            std::sort(cur.begin(), cur.end());
            return cur;
        }
    }
    throw search_exhausted("no clique of size " + std::to_string(k) +
                           " found within the restart budget");
}

std::vector<int> eleven_extends(const graph& g, const std::vector<int>& eleven) {
    if (eleven.size() != 11 || !is_clique(g, eleven))
        throw dp1_error("expected an 11-clique");
    return to_vector(common_neighbors(g, eleven));
}

namespace {

bool enum_rec(const graph& g, int k, std::vector<int>& cur, vset p,
              const std::function<bool(const std::vector<int>&)>& visit) {
    if (static_cast<int>(cur.size()) == k) return visit(cur);
    while (!p.empty()) {
        if (static_cast<int>(cur.size()) + p.count() < k) return true;
        int v = p.lowest();
        p.reset(v);
        vset next = p & g.adj[v];
        if (static_cast<int>(cur.size()) + 1 + next.count() >= k) {
            cur.push_back(v);
            bool keep = enum_rec(g, k, cur, next, visit);
            cur.pop_back();
            if (!keep) return false;
        }
    }
    return true;
}

}  // namespace

bool enumerate_cliques(const graph& g, int k,
                       const std::function<bool(const std::vector<int>&)>& visit) {
    if (k < 1) throw dp1_error("clique size must be positive");
    vset all;
    for (int v = 0; v < 240; ++v) all.set(v);
    std::vector<int> cur;
    return enum_rec(g, k, cur, all, visit);
}

}  // namespace dp1::egraph
