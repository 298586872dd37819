#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lvcap/network.hpp"
#include "lvcap/rational.hpp"

namespace lvcap {

// ---------------------------------------------------------------------------
// Family predicates. All of these look at connectivity only and expect the
// network to be a single connected component (callers split first).

namespace family {

inline bool is_isolated(const Network& c) { return c.users == 1 && c.cross.empty(); }

inline bool is_fully_connected(const Network& c) {
    return static_cast<long long>(c.cross.size()) ==
           static_cast<long long>(c.users) * (c.users - 1);
}

// d such that the cross set is exactly "first d transmitters reach every
// receiver" up to relabeling; nullopt if the component is not of that shape.
// d == users means fully connected.
inline std::optional<int> d_to_many_degree(const Network& c) {
    std::vector<int> outdeg(c.users, 0);
    for (auto [t, r] : c.cross) {
        (void)r;
        outdeg[t]++;
    }
    int d = 0;
    for (int i = 0; i < c.users; ++i)
        if (outdeg[i] == c.users - 1) ++d;
    if (d == 0) return std::nullopt;
    if (static_cast<long long>(c.cross.size()) != static_cast<long long>(d) * (c.users - 1))
        return std::nullopt;
    return d;
}

inline std::optional<int> many_to_d_degree(const Network& c) {
    std::vector<int> indeg(c.users, 0);
    for (auto [t, r] : c.cross) {
        (void)t;
        indeg[r]++;
    }
    int d = 0;
    for (int i = 0; i < c.users; ++i)
        if (indeg[i] == c.users - 1) ++d;
    if (d == 0) return std::nullopt;
    if (static_cast<long long>(c.cross.size()) != static_cast<long long>(d) * (c.users - 1))
        return std::nullopt;
    return d;
}

inline bool is_one_to_many(const Network& c) {
    if (c.users == 1) return c.cross.empty();
    auto d = d_to_many_degree(c);
    return d.has_value() && *d == 1;
}

inline bool is_many_to_one(const Network& c) {
    if (c.users == 1) return c.cross.empty();
    auto d = many_to_d_degree(c);
    return d.has_value() && *d == 1;
}

// Successor map when every user has out-degree and in-degree exactly one.
inline std::optional<std::vector<int>> successor_map(const Network& c) {
    std::vector<int> succ(c.users, -1), indeg(c.users, 0);
    for (auto [t, r] : c.cross) {
        if (succ[t] >= 0) return std::nullopt;
        succ[t] = r;
        indeg[r]++;
    }
    for (int i = 0; i < c.users; ++i)
        if (succ[i] < 0 || indeg[i] != 1) return std::nullopt;
    return succ;
}

inline bool is_cyclic_chain(const Network& c) {
    if (c.users < 3) return false;
    if (static_cast<int>(c.cross.size()) != c.users) return false;
    auto succ = successor_map(c);
    if (!succ) return false;
    int u = 0, steps = 0;
    do {
        u = (*succ)[u];
        ++steps;
    } while (u != 0 && steps <= c.users);
    return steps == c.users;
}

inline bool is_chain(const Network& c) {
    if (c.users < 2) return false;
    if (static_cast<int>(c.cross.size()) != c.users - 1) return false;
    std::vector<int> succ(c.users, -1), indeg(c.users, 0);
    for (auto [t, r] : c.cross) {
        if (succ[t] >= 0) return false;
        succ[t] = r;
        if (++indeg[r] > 1) return false;
    }
    int start = -1;
    for (int i = 0; i < c.users; ++i)
        if (indeg[i] == 0) {
            if (start >= 0) return false;
            start = i;
        }
    if (start < 0) return false;
    int u = start, seen = 1;
    while (succ[u] >= 0) {
        u = succ[u];
        ++seen;
    }
    return seen == c.users;
}

inline bool is_z_network(const Network& c) { return c.users == 2 && c.cross.size() == 1; }

} // namespace family

// ---------------------------------------------------------------------------
// Three-user canonical topologies. The six possible cross links of a 3-user
// network give 2^6 patterns; simultaneous relabeling of the users partitions
// them into 16 orbits. Everything 3-user is keyed to the orbit's canonical
// (numerically least) pattern.

namespace three_user {

// Arc order for bit positions: (1,2),(1,3),(2,1),(2,3),(3,1),(3,2), 1-based.
inline const std::array<std::pair<int, int>, 6>& arc_slots() {
    static const std::array<std::pair<int, int>, 6> slots = {
        {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
    return slots;
}

inline int mask_of(const Network& net) {
    int mask = 0;
    const auto& slots = arc_slots();
    for (int b = 0; b < 6; ++b)
        if (net.has_arc(slots[b].first, slots[b].second)) mask |= 1 << b;
    return mask;
}

inline int apply_permutation(int mask, const std::array<int, 3>& perm) {
    const auto& slots = arc_slots();
    std::map<std::pair<int, int>, int> slot_index;
    for (int b = 0; b < 6; ++b) slot_index[slots[b]] = b;
    int out = 0;
    for (int b = 0; b < 6; ++b) {
        if (!(mask & (1 << b))) continue;
        auto [t, r] = slots[b];
        out |= 1 << slot_index.at({perm[t], perm[r]});
    }
    return out;
}

inline const std::array<std::array<int, 3>, 6>& permutations() {
    static const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    return perms;
}

inline int canonical_mask(int mask) {
    int best = mask;
    for (const auto& p : permutations()) best = std::min(best, apply_permutation(mask, p));
    return best;
}

// Canonical masks of all 16 orbits, ascending. Index into this list is the
// orbit index used throughout.
inline const std::vector<int>& orbit_masks() {
    static const std::vector<int> masks = [] {
        std::vector<int> out;
        for (int m = 0; m < 64; ++m)
            if (canonical_mask(m) == m) out.push_back(m);
        return out;
    }();
    return masks;
}

inline int orbit_index_of_mask(int mask) {
    int cm = canonical_mask(mask);
    const auto& masks = orbit_masks();
    for (size_t i = 0; i < masks.size(); ++i)
        if (masks[i] == cm) return static_cast<int>(i);
    return -1;
}

inline std::vector<std::pair<int, int>> arcs_of_mask(int mask) {
    std::vector<std::pair<int, int>> arcs;
    const auto& slots = arc_slots();
    for (int b = 0; b < 6; ++b)
        if (mask & (1 << b)) arcs.push_back({slots[b].first + 1, slots[b].second + 1});
    return arcs;
}

inline Network network_of_mask(int mask) { return make_network(3, arcs_of_mask(mask)); }

// Named structures for the 16 orbits, plus the data the capacity engine
// needs: the two-hop outer-bound value of the class and whether the class is
// a certified three-hop independent component. Exactly one class (a
// two-way pair with an extra outgoing link) has no three-hop certificate.
struct OrbitInfo {
    std::string name;
    Rational two_hop_upper;   // 1, 2/3 or 4/5
    bool three_hop_independent;
};

inline const std::map<int, OrbitInfo>& orbit_table() {
    static const std::map<int, OrbitInfo> table = [] {
        auto mk = [](std::vector<std::pair<int, int>> arcs) {
            return canonical_mask(mask_of(make_network(3, std::move(arcs))));
        };
        std::map<int, OrbitInfo> t;
        t[mk({})] = {"isolated-triple", Rational(1), true};
        t[mk({{1, 2}})] = {"z-plus-isolated", Rational(1), true};
        t[mk({{1, 2}, {2, 1}})] = {"two-way-pair-plus-isolated", Rational(1), true};
        t[mk({{1, 2}, {1, 3}})] = {"one-to-many-3", Rational(1), true};
        t[mk({{1, 3}, {2, 3}})] = {"many-to-one-3", Rational(2, 3), true};
        t[mk({{1, 2}, {2, 3}})] = {"chain-3", Rational(2, 3), true};
        t[mk({{1, 2}, {2, 3}, {3, 1}})] = {"cyclic-3", Rational(2, 3), true};
        t[mk({{1, 2}, {1, 3}, {2, 3}})] = {"cascade-3", Rational(2, 3), true};
        t[mk({{1, 2}, {2, 1}, {2, 3}})] = {"two-way-pair-out", Rational(4, 5), false};
        t[mk({{1, 2}, {2, 1}, {3, 2}})] = {"two-way-pair-in", Rational(2, 3), true};
        t[mk({{1, 2}, {2, 1}, {2, 3}, {3, 2}})] = {"double-two-way-pair", Rational(4, 5), true};
        t[mk({{1, 2}, {2, 1}, {2, 3}, {3, 1}})] = {"cycle-plus-reverse", Rational(2, 3), true};
        t[mk({{1, 2}, {2, 1}, {3, 1}, {3, 2}})] = {"many-to-two-3", Rational(4, 5), true};
        t[mk({{1, 2}, {1, 3}, {2, 1}, {2, 3}})] = {"two-to-many-3", Rational(2, 3), true};
        t[mk({{1, 2}, {1, 3}, {2, 3}, {3, 1}, {3, 2}})] = {"five-link", Rational(4, 5), true};
        t[mk({{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}})] = {"fully-connected-3",
                                                                   Rational(1), true};
        return t;
    }();
    return table;
}

inline const OrbitInfo& orbit_info(int mask) {
    return orbit_table().at(canonical_mask(mask));
}

} // namespace three_user

// canonical_three_user: orbit index plus canonical arc set, for K = 3 only.
struct ThreeUserCanonical {
    int orbit = -1;
    int canonical = 0; // canonical 6-bit pattern
    std::vector<std::pair<int, int>> arcs; // 1-based canonical arcs
    std::string name;
};

inline ThreeUserCanonical canonical_three_user(const Network& net) {
    if (net.users != 3) throw std::invalid_argument("canonical_three_user requires K = 3");
    ThreeUserCanonical out;
    out.canonical = three_user::canonical_mask(three_user::mask_of(net));
    out.orbit = three_user::orbit_index_of_mask(out.canonical);
    out.arcs = three_user::arcs_of_mask(out.canonical);
    out.name = three_user::orbit_info(out.canonical).name;
    return out;
}

// ---------------------------------------------------------------------------
// Per-component classification. Families overlap (a fully-connected network
// is also d-to-many with d = K), so matching runs in a fixed priority order.

struct TopologyClass {
    enum class Kind {
        isolated,
        z_network,
        chain,
        cyclic_chain,
        d_to_many,
        many_to_d,
        fully_connected,
        three_user,
        other,
    };
    Kind kind = Kind::other;
    int users = 0;
    int d = 0;      // for d-to-many / many-to-d
    int orbit = -1; // for three_user
    std::vector<int> members; // 0-based users of the component

    std::string name() const {
        switch (kind) {
            case Kind::isolated: return "isolated";
            case Kind::z_network: return "z-network";
            case Kind::chain: return "chain(" + std::to_string(users) + ")";
            case Kind::cyclic_chain: return "cyclic-chain(" + std::to_string(users) + ")";
            case Kind::d_to_many:
                return std::to_string(d) + "-to-many(" + std::to_string(users) + ")";
            case Kind::many_to_d:
                return "many-to-" + std::to_string(d) + "(" + std::to_string(users) + ")";
            case Kind::fully_connected:
                return "fully-connected(" + std::to_string(users) + ")";
            case Kind::three_user: {
                Network rep = three_user::network_of_mask(three_user::orbit_masks()[orbit]);
                return "three-user:" + three_user::orbit_info(three_user::mask_of(rep)).name;
            }
            case Kind::other: return "other(" + std::to_string(users) + ")";
        }
        return "?";
    }
};

inline TopologyClass classify_component(const Network& comp, std::vector<int> members) {
    TopologyClass tc;
    tc.users = comp.users;
    tc.members = std::move(members);
    using Kind = TopologyClass::Kind;
    if (family::is_isolated(comp)) {
        tc.kind = Kind::isolated;
    } else if (family::is_fully_connected(comp)) {
        tc.kind = Kind::fully_connected;
    } else if (family::is_z_network(comp)) {
        tc.kind = Kind::z_network;
    } else if (auto d = family::d_to_many_degree(comp)) {
        tc.kind = Kind::d_to_many;
        tc.d = *d;
    } else if (auto d2 = family::many_to_d_degree(comp)) {
        tc.kind = Kind::many_to_d;
        tc.d = *d2;
    } else if (family::is_cyclic_chain(comp)) {
        tc.kind = Kind::cyclic_chain;
    } else if (family::is_chain(comp)) {
        tc.kind = Kind::chain;
    } else if (comp.users == 3) {
        tc.kind = Kind::three_user;
        tc.orbit = canonical_three_user(comp).orbit;
    } else {
        tc.kind = Kind::other;
    }
    return tc;
}

// One classification per connected component; gains never matter.
inline std::vector<TopologyClass> classify(const Network& net) {
    std::vector<TopologyClass> out;
    for (const auto& comp : components(net))
        out.push_back(classify_component(induced_network(net, comp), comp));
    return out;
}

} // namespace lvcap
