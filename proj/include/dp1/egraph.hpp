#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "dp1/errors.hpp"
#include "dp1/picard.hpp"

namespace dp1::egraph {

// Set of vertices out of the 240 exceptional classes.
struct vset {
    std::array<std::uint64_t, 4> w{};

    void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int count() const;
    bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }
    int lowest() const;  // -1 if empty
    bool operator==(const vset&) const = default;

    friend vset operator&(const vset& a, const vset& b) {
        vset r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    friend vset operator|(const vset& a, const vset& b) {
        vset r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }
    // a minus b
    friend vset operator-(const vset& a, const vset& b) {
        vset r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & ~b.w[i];
        return r;
    }
};

std::vector<int> to_vector(const vset& s);
vset from_vector(const std::vector<int>& v);

// Graph on the exceptional classes; u ~ v iff their pairing lies in the
// chosen weight set.
struct graph {
    std::vector<int> weights;
    std::array<vset, 240> adj{};
};

// weights must be distinct values from {0,1,2,3}
graph build_graph(std::vector<int> weights);
bool adjacent(const graph& g, int u, int v);
bool is_clique(const graph& g, const std::vector<int>& verts);

// Exact maximum clique by branch and bound with greedy colouring. The seed
// only drives the warm start; the returned witness is the first maximum
// clique encountered and is deterministic for a fixed seed. A nonzero node
// budget throws search_exhausted when exceeded before the proof completes.
std::vector<int> max_clique(const graph& g, std::uint64_t seed = 0,
                            std::uint64_t node_budget = 0);

// n partner pairs meeting pairwise with multiplicity one (2n classes).
bool is_Kn(const std::vector<picard::cls>& classes);

// Vertices adjacent to every member of the given set.
vset common_neighbors(const graph& g, const std::vector<int>& verts);

// Random k-clique by seeded greedy descent with restarts; throws
// search_exhausted when no clique is found within the restart budget.
std::vector<int> random_clique(const graph& g, int k, std::uint64_t seed,
                               int max_restarts = 100000);

// Extension vertices turning an 11-clique into 12-cliques, sorted.
// Throws dp1_error if the input is not an 11-clique.
std::vector<int> eleven_extends(const graph& g, const std::vector<int>& eleven);

// Depth-first enumeration of all k-cliques (no runtime guarantee on dense
// graphs). visit returns false to abort; enumerate_cliques returns false if
// aborted.
bool enumerate_cliques(const graph& g, int k,
                       const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace dp1::egraph
