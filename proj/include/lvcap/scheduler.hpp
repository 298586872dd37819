#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvcap/classify.hpp"
#include "lvcap/lp.hpp"
#include "lvcap/network.hpp"
#include "lvcap/rational.hpp"

namespace lvcap {

// Default cap for exhaustive subset enumeration. Above it the optimizer
// falls back to a greedy schedule and flags the result as non-optimal.
inline constexpr int kExactEnumerationCap = 12;

// ---------------------------------------------------------------------------
// Conflict graph: K vertices, an undirected edge wherever either cross
// direction exists between two user pairs.

struct ConflictGraph {
    int vertices = 0;
    std::vector<uint32_t> adj; // bitmask per vertex, no self loops

    bool edge(int i, int j) const { return (adj[i] >> j) & 1u; }
    bool independent(uint32_t mask) const {
        for (int i = 0; i < vertices; ++i)
            if ((mask >> i) & 1u)
                if (adj[i] & mask) return false;
        return true;
    }
};

inline ConflictGraph conflict_graph(const Network& net) {
    ConflictGraph g;
    g.vertices = net.users;
    g.adj.assign(net.users, 0);
    for (auto [t, r] : net.cross) {
        g.adj[t] |= 1u << r;
        g.adj[r] |= 1u << t;
    }
    return g;
}

inline bool is_bipartite(const ConflictGraph& g) {
    std::vector<int> color(g.vertices, -1);
    for (int s = 0; s < g.vertices; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < g.vertices; ++v) {
                if (!g.edge(u, v)) continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Independent subgraphs. A user subset qualifies for view h when every
// connected component of the induced subnetwork can run at full sum-capacity
// on h hops of information:
//   h = 1: no cross links at all,
//   h = 2: each component one-to-many or fully connected (tight),
//   h = 3: each component many-to-d, d-to-many, one of the certified
//          three-user classes, or small enough that three hops is already
//          the full view (sufficient conditions only).

struct IndependenceCheck {
    bool independent = false;
    bool sufficient_only = false; // h = 3 has no matching converse
    std::vector<std::string> reasons; // one per component
};

inline IndependenceCheck independence_check(const Network& net, uint32_t user_mask, int h) {
    if (h < 1 || h > 3) throw std::invalid_argument("view must be 1, 2 or 3");
    IndependenceCheck out;
    out.independent = true;
    out.sufficient_only = (h == 3);
    std::vector<int> users;
    for (int i = 0; i < net.users; ++i)
        if ((user_mask >> i) & 1u) users.push_back(i);
    if (users.empty()) return out;
    Network sub = induced_network(net, users);
    for (const auto& comp_users : components(sub)) {
        Network comp = induced_network(sub, comp_users);
        bool ok = false;
        std::string why;
        if (comp.cross.empty()) {
            ok = true;
            why = "no-cross-links";
        } else if (h >= 2 && family::is_one_to_many(comp)) {
            ok = true;
            why = "one-to-many";
        } else if (h >= 2 && family::is_fully_connected(comp)) {
            ok = true;
            why = "fully-connected";
        } else if (h == 3) {
            if (family::d_to_many_degree(comp)) {
                ok = true;
                why = "d-to-many";
            } else if (family::many_to_d_degree(comp)) {
                ok = true;
                why = "many-to-d";
            } else if (comp.users == 3 &&
                       three_user::orbit_info(three_user::mask_of(comp)).three_hop_independent) {
                ok = true;
                why = "three-user-certified";
            } else if (view_radius(comp) <= 3) {
                ok = true;
                why = "full-view-within-3";
            }
        }
        if (!ok) {
            out.independent = false;
            why = "component-not-independent";
        }
        out.reasons.push_back(why);
    }
    return out;
}

inline bool is_independent_subgraph(const Network& net, uint32_t user_mask, int h) {
    return independence_check(net, user_mask, h).independent;
}

// All maximal independent subgraphs for view h (exhaustive, K <= cap).
inline std::vector<uint32_t> maximal_independent_subgraphs(const Network& net, int h) {
    int K = net.users;
    uint32_t full = (K >= 31) ? 0 : ((1u << K) - 1);
    std::vector<char> indep(static_cast<size_t>(full) + 1, 0);
    for (uint32_t m = 1; m <= full; ++m) indep[m] = is_independent_subgraph(net, m, h);
    std::vector<uint32_t> out;
    for (uint32_t m = 1; m <= full; ++m) {
        if (!indep[m]) continue;
        bool maximal = true;
        for (int x = 0; x < K && maximal; ++x)
            if (!((m >> x) & 1u) && indep[m | (1u << x)]) maximal = false;
        if (maximal) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Schedule multisets and the d/t optimizer.

struct ScheduleMultiset {
    int t = 0;
    int d = 0;
    Rational value;              // = d/t, reduced
    std::vector<uint32_t> slots; // t user masks, repeats allowed
    bool exhaustive = true;      // false when the greedy fallback ran

    // Re-derives d = min_j (number of slots containing j). The schedule's
    // declared value must always equal d/t.
    Rational rederive_value(int users) const {
        int dmin = -1;
        for (int j = 0; j < users; ++j) {
            int c = 0;
            for (uint32_t s : slots)
                if ((s >> j) & 1u) ++c;
            if (dmin < 0 || c < dmin) dmin = c;
        }
        return Rational(dmin, static_cast<long long>(slots.size()));
    }

    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["t"] = t;
        doc["value"] = value.str();
        doc["slots"] = nlohmann::json::array();
        for (uint32_t m : slots) {
            nlohmann::json slot = nlohmann::json::array();
            for (int i = 0; i < 31; ++i)
                if ((m >> i) & 1u) slot.push_back(i + 1);
            doc["slots"].push_back(slot);
        }
        return doc;
    }
};

namespace detail {

// max lambda  s.t.  sum_A x_A = 1,  sum_{A contains j} x_A >= lambda, x >= 0
inline LpResult coverage_lp(const std::vector<uint32_t>& subgraphs, int users) {
    int m = static_cast<int>(subgraphs.size());
    int nvar = m + 1; // x_A plus lambda (last)
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int j = 0; j < users; ++j) {
        std::vector<Rational> row(nvar, Rational(0));
        for (int a = 0; a < m; ++a)
            if ((subgraphs[a] >> j) & 1u) row[a] = Rational(-1);
        row[m] = Rational(1);
        A.push_back(row);
        b.push_back(Rational(0));
    }
    std::vector<Rational> ones(nvar, Rational(1));
    ones[m] = Rational(0);
    A.push_back(ones);
    b.push_back(Rational(1));
    std::vector<Rational> neg(nvar, Rational(-1));
    neg[m] = Rational(0);
    A.push_back(neg);
    b.push_back(Rational(-1));
    std::vector<Rational> c(nvar, Rational(0));
    c[m] = Rational(1);
    return lp_max(A, b, c);
}

inline ScheduleMultiset weights_to_multiset(const std::vector<uint32_t>& subgraphs,
                                            const std::vector<Rational>& weights, int users,
                                            const Rational& lambda) {
    long long t = 1;
    for (const auto& w : weights)
        if (!w.is_zero()) t = lcm_ll(t, w.den());
    ScheduleMultiset ms;
    ms.t = static_cast<int>(t);
    for (size_t a = 0; a < weights.size(); ++a) {
        if (weights[a].is_zero()) continue;
        long long count = weights[a].num() * (t / weights[a].den());
        for (long long c = 0; c < count; ++c) ms.slots.push_back(subgraphs[a]);
    }
    std::sort(ms.slots.begin(), ms.slots.end());
    ms.value = ms.rederive_value(users);
    if (ms.value != lambda)
        throw std::logic_error("schedule multiset does not re-derive the LP optimum");
    ms.d = static_cast<int>(ms.value.num() * (t / ms.value.den()));
    return ms;
}

} // namespace detail

struct MigResult {
    ScheduleMultiset schedule;
    Rational value;
    bool exact = true; // false when the greedy fallback ran
};

// Greedy fallback above the enumeration cap: repeatedly schedules a maximal
// independent subgraph grown around the least-covered user.
inline MigResult greedy_mig(const Network& net, int h) {
    int K = net.users;
    std::vector<int> coverage(K, 0);
    ScheduleMultiset ms;
    ms.exhaustive = false;
    int slots = std::max(K, 1);
    for (int l = 0; l < slots; ++l) {
        std::vector<int> order(K);
        for (int i = 0; i < K; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return coverage[a] != coverage[b] ? coverage[a] < coverage[b] : a < b;
        });
        uint32_t mask = 0;
        for (int u : order)
            if (is_independent_subgraph(net, mask | (1u << u), h)) mask |= 1u << u;
        ms.slots.push_back(mask);
        for (int i = 0; i < K; ++i)
            if ((mask >> i) & 1u) ++coverage[i];
    }
    ms.t = static_cast<int>(ms.slots.size());
    ms.value = ms.rederive_value(K);
    ms.d = static_cast<int>(ms.value.num() * (ms.t / ms.value.den()));
    MigResult res;
    res.schedule = ms;
    res.value = ms.value;
    res.exact = false;
    return res;
}

// Maximizes d/t over schedules of independent subgraphs for view h. Exact
// (rational LP over all maximal independent subgraphs) up to the enumeration
// cap. Ties are broken toward fewer distinct subgraphs, then lexicographic
// subset order, by a deterministic pruning pass.
inline MigResult optimize_mig(const Network& net, int h, int cap = kExactEnumerationCap) {
    if (net.users > cap) return greedy_mig(net, h);
    auto subgraphs = maximal_independent_subgraphs(net, h);
    auto lp = detail::coverage_lp(subgraphs, net.users);
    if (!lp.feasible || !lp.bounded)
        throw std::logic_error("coverage LP must be solvable (singletons always qualify)");
    Rational lambda = lp.value;

    // Pruning pass: drop subgraphs (largest mask first) while the optimum
    // survives, then re-solve on the survivors.
    if (subgraphs.size() <= 64) {
        std::vector<uint32_t> kept = subgraphs;
        for (int a = static_cast<int>(kept.size()) - 1; a >= 0; --a) {
            if (kept.size() <= 1) break;
            std::vector<uint32_t> trial = kept;
            trial.erase(trial.begin() + a);
            auto t_lp = detail::coverage_lp(trial, net.users);
            if (t_lp.feasible && t_lp.bounded && t_lp.value == lambda) kept = trial;
        }
        subgraphs = kept;
        lp = detail::coverage_lp(subgraphs, net.users);
    }

    std::vector<Rational> weights(lp.x.begin(), lp.x.begin() + subgraphs.size());
    MigResult res;
    res.schedule = detail::weights_to_multiset(subgraphs, weights, net.users, lambda);
    res.value = lambda;
    res.exact = true;
    return res;
}

// ---------------------------------------------------------------------------
// Fractional coloring of the conflict graph.

struct ColoringResult {
    Rational chi_f;                 // fractional chromatic number
    Rational alpha_mis;             // 1 / chi_f
    std::map<int, int> xi;          // k-fold chromatic numbers for k <= k_max
    std::optional<int> achieving_k; // smallest k <= k_max with xi_k / k == chi_f
    bool exact = true;
};

namespace detail {

inline std::vector<uint32_t> maximal_independent_sets(const ConflictGraph& g) {
    uint32_t full = (1u << g.vertices) - 1;
    std::vector<char> indep(static_cast<size_t>(full) + 1, 0);
    for (uint32_t m = 0; m <= full; ++m) indep[m] = g.independent(m);
    std::vector<uint32_t> out;
    for (uint32_t m = 1; m <= full; ++m) {
        if (!indep[m]) continue;
        bool maximal = true;
        for (int x = 0; x < g.vertices && maximal; ++x)
            if (!((m >> x) & 1u) && indep[m | (1u << x)]) maximal = false;
        if (maximal) out.push_back(m);
    }
    return out;
}

// Least number of independent sets (with repetition) covering every vertex
// at least k times; depth-first search with a deficit bound.
inline int k_fold_chromatic(const ConflictGraph& g, const std::vector<uint32_t>& sets, int k,
                            int upper) {
    int best = upper;
    std::vector<int> deficit(g.vertices, k);
    // Sets sorted descending by size gives better early bounds.
    std::vector<uint32_t> order = sets;
    std::sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });
    std::function<void(int, int)> dfs = [&](int used, int from) {
        int max_deficit = 0;
        for (int v = 0; v < g.vertices; ++v) max_deficit = std::max(max_deficit, deficit[v]);
        if (max_deficit == 0) {
            best = std::min(best, used);
            return;
        }
        if (used + max_deficit >= best) return;
        int target = -1;
        for (int v = 0; v < g.vertices; ++v)
            if (deficit[v] == max_deficit) { target = v; break; }
        for (int s = from; s < static_cast<int>(order.size()); ++s) {
            if (!((order[s] >> target) & 1u)) continue;
            for (int v = 0; v < g.vertices; ++v)
                if ((order[s] >> v) & 1u) --deficit[v];
            dfs(used + 1, s); // non-decreasing set order kills permutations
            for (int v = 0; v < g.vertices; ++v)
                if ((order[s] >> v) & 1u) ++deficit[v];
        }
    };
    dfs(0, 0);
    return best;
}

} // namespace detail

inline ColoringResult fractional_coloring(const ConflictGraph& g, int k_max,
                                          int cap = kExactEnumerationCap) {
    ColoringResult res;
    if (g.vertices > cap) {
        res.exact = false;
        res.chi_f = Rational(g.vertices); // trivial bound; flagged approximate
        res.alpha_mis = Rational(1, g.vertices);
        return res;
    }
    auto sets = detail::maximal_independent_sets(g);
    int m = static_cast<int>(sets.size());
    // chi_f: minimize total weight subject to unit coverage.
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int j = 0; j < g.vertices; ++j) {
        std::vector<Rational> row(m, Rational(0));
        for (int a = 0; a < m; ++a)
            if ((sets[a] >> j) & 1u) row[a] = Rational(-1);
        A.push_back(row);
        b.push_back(Rational(-1));
    }
    std::vector<Rational> c(m, Rational(-1));
    auto lp = lp_max(A, b, c);
    if (!lp.feasible || !lp.bounded) throw std::logic_error("coloring LP must be solvable");
    res.chi_f = -lp.value;
    res.alpha_mis = Rational(1) / res.chi_f;

    for (int k = 1; k <= k_max; ++k) {
        // xi_k is at least ceil(k * chi_f) and at most k * xi_1.
        int upper = res.xi.count(1) ? k * res.xi[1] : k * g.vertices + 1;
        res.xi[k] = detail::k_fold_chromatic(g, sets, k, upper);
        if (!res.achieving_k && Rational(res.xi[k], k) == res.chi_f) res.achieving_k = k;
    }
    return res;
}

// True exactly when time-sharing over conflict-graph independent sets is
// capacity achieving with one-hop views; equivalent to chi_f <= 2, i.e. the
// conflict graph is edgeless or bipartite.
inline bool mis_optimality_predicate(const ConflictGraph& g) { return is_bipartite(g); }

} // namespace lvcap
