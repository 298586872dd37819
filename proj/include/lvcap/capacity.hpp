#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "lvcap/classify.hpp"
#include "lvcap/coded_sets.hpp"
#include "lvcap/network.hpp"
#include "lvcap/rational.hpp"
#include "lvcap/scheduler.hpp"

namespace lvcap {

// Two-sided estimate of the normalized sum-capacity, with the trail of
// bounds that produced it. Every lower bound carries the usual
// gain-independent constant-offset caveat.
struct AlphaResult {
    Rational lower;
    Rational upper;
    bool exact = false;
    bool sufficient_only = false; // three-hop lower bounds have no converse
    bool lower_exhaustive = true; // false when search caps forced a fallback
    std::vector<std::string> provenance;
};

struct BoundWithTag {
    Rational value;
    std::string tag;
};

namespace detail {

// --- One-hop outer bound ----------------------------------------------------
//
// All pieces are genie arguments on equal gains: a single cross link caps
// the pair at 1/2; a set of d transmitters that all cover one another plus a
// common victim forces the victim's receiver-side MAC (bound 1/(d+1)); the
// mirrored receiver-side structure does the same; and a transitive cascade
// of m users lets the last receiver peel every message (bound 1/m).

inline BoundWithTag one_hop_bound_component(const Network& comp, int cap) {
    if (comp.cross.empty()) return {Rational(1), "interference-free"};
    BoundWithTag best{Rational(1, 2), "z-pair"};
    int K = comp.users;
    if (K > cap) return best; // degraded but still sound

    std::vector<uint32_t> out_cover(K, 0), in_cover(K, 0);
    for (auto [t, r] : comp.cross) {
        out_cover[t] |= 1u << r;
        in_cover[r] |= 1u << t;
    }
    for (int i = 0; i < K; ++i) {
        out_cover[i] |= 1u << i;
        in_cover[i] |= 1u << i;
    }

    uint32_t full = (1u << K) - 1;
    int best_mac = 1;
    for (uint32_t U = 1; U <= full; ++U) {
        int d = std::popcount(U);
        if (d + 1 <= best_mac) continue;
        uint32_t inter_out = full, inter_in = full;
        bool mutual_out = true, mutual_in = true;
        for (int u = 0; u < K; ++u) {
            if (!((U >> u) & 1u)) continue;
            if ((U & ~out_cover[u]) != 0) mutual_out = false;
            if ((U & ~in_cover[u]) != 0) mutual_in = false;
            inter_out &= out_cover[u];
            inter_in &= in_cover[u];
        }
        if ((mutual_out && (inter_out & ~U)) || (mutual_in && (inter_in & ~U)))
            best_mac = d + 1;
    }
    if (best_mac >= 2 && Rational(1, best_mac) < best.value)
        best = {Rational(1, best_mac), "mac-embedding(" + std::to_string(best_mac) + ")"};

    // Longest transitive cascade: f(S) true when S orders as u1,...,um with
    // every forward link present.
    std::vector<char> f(static_cast<size_t>(full) + 1, 0);
    int best_cascade = 1;
    for (uint32_t S = 1; S <= full; ++S) {
        if (std::popcount(S) == 1) {
            f[S] = 1;
            continue;
        }
        for (int u = 0; u < K && !f[S]; ++u) {
            if (!((S >> u) & 1u)) continue;
            uint32_t rest = S & ~(1u << u);
            if ((rest & ~out_cover[u]) == 0 && f[rest]) f[S] = 1;
        }
        if (f[S]) best_cascade = std::max(best_cascade, std::popcount(S));
    }
    if (best_cascade >= 2 && Rational(1, best_cascade) < best.value)
        best = {Rational(1, best_cascade), "decode-cascade(" + std::to_string(best_cascade) + ")"};
    return best;
}

// --- Two-hop outer bound ----------------------------------------------------
//
// Zeroing all links that touch users outside a subset leaves the induced
// subnetwork with its in-subset views intact, so any induced subnetwork that
// matches a family with a known two-hop value, or any induced three-user
// pattern, caps the whole component.

inline BoundWithTag induced_two_hop_value(const Network& sub) {
    int m = sub.users;
    if (m < 3 || sub.cross.empty()) return {Rational(1), ""};
    if (family::is_fully_connected(sub) || family::is_one_to_many(sub)) return {Rational(1), ""};
    if (m == 3) {
        const auto& info = three_user::orbit_info(three_user::mask_of(sub));
        return {info.two_hop_upper, "triple:" + info.name};
    }
    if (family::is_chain(sub)) return {Rational(2, 3), "chain"};
    if (auto d = family::d_to_many_degree(sub); d && *d < m)
        return {Rational(*d, 2 * *d - 1), std::to_string(*d) + "-to-many"};
    if (family::is_many_to_one(sub))
        return {Rational(m - 1, 2 * m - 3), "many-to-one(" + std::to_string(m) + ")"};
    return {Rational(1), ""};
}

inline BoundWithTag two_hop_bound_component(const Network& comp, int cap) {
    BoundWithTag best{Rational(1), "full-cooperation"};
    int K = comp.users;
    auto consider = [&](const Network& sub) {
        auto v = induced_two_hop_value(sub);
        if (v.value < best.value) best = v;
    };
    if (K <= cap) {
        uint32_t full = (1u << K) - 1;
        for (uint32_t S = 1; S <= full; ++S) {
            if (std::popcount(S) < 3) continue;
            std::vector<int> users;
            for (int i = 0; i < K; ++i)
                if ((S >> i) & 1u) users.push_back(i);
            consider(induced_network(comp, users));
        }
    } else {
        consider(comp);
        for (int a = 0; a < K; ++a)
            for (int b = a + 1; b < K; ++b)
                for (int c = b + 1; c < K; ++c)
                    consider(induced_network(comp, {a, b, c}));
    }
    return best;
}

} // namespace detail

// Outer bound on the normalized sum-capacity from the composed genie
// recipes; h must be 1 or 2 (no converse machinery exists at three hops).
inline BoundWithTag outer_bound_recipe(const Network& net, int h,
                                       int cap = kExactEnumerationCap) {
    if (h != 1 && h != 2) throw std::invalid_argument("outer bounds exist for h = 1, 2 only");
    BoundWithTag best{Rational(1), "full-cooperation"};
    for (const auto& comp_users : components(net)) {
        Network comp = induced_network(net, comp_users);
        auto b = (h == 1) ? detail::one_hop_bound_component(comp, cap)
                          : detail::two_hop_bound_component(comp, cap);
        if (b.value < best.value) best = b;
    }
    return best;
}

struct AlphaOptions {
    int enumeration_cap = kExactEnumerationCap;
    bool enable_cs_search = true;
    int cs_t_max = kCsSearchSlotCap;
    int cs_k_max = kCsSearchCodewordCap;
    int cs_user_cap = kCsSearchUserCap;
};

namespace detail {

inline AlphaResult alpha_component(const Network& comp, int h, const AlphaOptions& opt) {
    AlphaResult res;
    res.sufficient_only = (h == 3);

    // Upper side.
    if (h <= 2) {
        auto ub = outer_bound_recipe(comp, h, opt.enumeration_cap);
        res.upper = ub.value;
        res.provenance.push_back("upper:" + ub.tag);
    } else {
        res.upper = Rational(1);
        res.provenance.push_back("upper:trivial");
    }

    // Lower side: the schedule LP at view h, plus one-hop coded-set values
    // (valid at every h >= 1 since views only grow).
    auto mig = optimize_mig(comp, h, opt.enumeration_cap);
    res.lower = mig.value;
    res.lower_exhaustive = mig.exact;
    res.provenance.push_back("lower:mig-lp(h=" + std::to_string(h) + ")=" + mig.value.str());

    if (family::is_cyclic_chain(comp) && comp.users % 2 == 1) {
        if (Rational(1, 2) > res.lower) {
            res.lower = Rational(1, 2);
            res.provenance.push_back("lower:cyclic-repetition=1/2");
        }
    }
    if (opt.enable_cs_search && comp.users <= opt.cs_user_cap) {
        auto cs = search_best_cs(comp, opt.cs_t_max, opt.cs_k_max, opt.cs_user_cap);
        if (cs.found && cs.alpha > res.lower) {
            res.lower = cs.alpha;
            res.provenance.push_back("lower:cs-search=" + cs.alpha.str());
        }
    }

    if (res.lower > res.upper)
        throw std::logic_error("achievable value exceeded the outer bound on component");
    res.exact = res.lower == res.upper;
    return res;
}

} // namespace detail

// Normalized sum-capacity estimate under an h-hop view. Multiple components
// combine as the minimum: a distributed strategy has to serve every
// component at once.
inline AlphaResult alpha(const Network& net, int h, const AlphaOptions& opt = {}) {
    if (h < 1 || h > 3) throw std::invalid_argument("view must be 1, 2 or 3");
    AlphaResult res;
    res.lower = Rational(1);
    res.upper = Rational(1);
    res.exact = true;
    res.sufficient_only = (h == 3);
    bool first = true;
    for (const auto& comp_users : components(net)) {
        Network comp = induced_network(net, comp_users);
        auto r = detail::alpha_component(comp, h, opt);
        if (first) {
            res.lower = r.lower;
            res.upper = r.upper;
            first = false;
        } else {
            res.lower = rat_min(res.lower, r.lower);
            res.upper = rat_min(res.upper, r.upper);
        }
        res.lower_exhaustive = res.lower_exhaustive && r.lower_exhaustive;
        for (auto& p : r.provenance) res.provenance.push_back(p);
    }
    res.exact = res.lower == res.upper;
    return res;
}

// One-hop normalized sum-capacity bounds via the all-gains-one model: the
// coded-set search certifies the lower side, the one-hop recipe the upper.
// For deterministic networks the result doubles as the symmetric capacity
// of that binary model.
inline AlphaResult binary_symcap_bounds(const Network& net, const AlphaOptions& opt = {}) {
    auto res = alpha(net.connectivity_only(), 1, opt);
    res.provenance.insert(res.provenance.begin(), "binary-model");
    return res;
}

// (h, alpha) pairs for h = 1, 2, 3 capped at the view radius, plus the
// radius entry where every node has the full picture and alpha = 1.
inline std::vector<std::pair<int, AlphaResult>> alpha_curve(const Network& net,
                                                            const AlphaOptions& opt = {}) {
    int radius = view_radius(net);
    std::vector<std::pair<int, AlphaResult>> out;
    for (int h = 1; h <= std::min(3, radius - 1); ++h) out.push_back({h, alpha(net, h, opt)});
    AlphaResult full;
    full.lower = Rational(1);
    full.upper = Rational(1);
    full.exact = true;
    full.provenance = {"full-view"};
    out.push_back({radius, full});
    return out;
}

} // namespace lvcap
