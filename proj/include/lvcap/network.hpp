#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lvcap {

enum class Model { deterministic, gaussian, connectivity };

inline std::string model_name(Model m) {
    switch (m) {
        case Model::deterministic: return "deterministic";
        case Model::gaussian: return "gaussian";
        case Model::connectivity: return "connectivity";
    }
    return "?";
}

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A single-hop interference network: K transmitter/receiver pairs, a direct
// link per pair, and directed cross links (tx i reaches rx j). Users and
// arcs are 0-based internally; the JSON document format is 1-based.
struct Network {
    int users = 0;
    Model model = Model::connectivity;
    std::vector<std::pair<int, int>> cross;           // sorted, unique (tx, rx)
    std::vector<double> direct_gain;                  // size = users (0 when connectivity)
    std::map<std::pair<int, int>, double> cross_gain; // empty when connectivity

    bool has_arc(int tx, int rx) const {
        return std::binary_search(cross.begin(), cross.end(), std::make_pair(tx, rx));
    }

    double gain_between(int tx, int rx) const {
        if (tx == rx) return direct_gain[tx];
        auto it = cross_gain.find({tx, rx});
        return it == cross_gain.end() ? 0.0 : it->second;
    }

    long long det_gain(int tx, int rx) const {
        double g = gain_between(tx, rx);
        long long n = static_cast<long long>(std::llround(g));
        return n;
    }

    long long max_det_gain() const {
        long long q = 0;
        for (int i = 0; i < users; ++i) q = std::max(q, det_gain(i, i));
        for (const auto& [e, g] : cross_gain) {
            (void)e;
            q = std::max(q, static_cast<long long>(std::llround(g)));
        }
        return q;
    }

    // Forgets gains; every declared link keeps only its existence.
    Network connectivity_only() const {
        Network n = *this;
        n.model = Model::connectivity;
        n.cross_gain.clear();
        n.direct_gain.assign(users, 0.0);
        return n;
    }

    // All declared links set to gain 1 (deterministic).
    Network binary_model() const {
        Network n = *this;
        n.model = Model::deterministic;
        n.direct_gain.assign(users, 1.0);
        n.cross_gain.clear();
        for (auto e : cross) n.cross_gain[e] = 1.0;
        return n;
    }

    void sort_cross() {
        std::sort(cross.begin(), cross.end());
        cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
    }
};

// ---------------------------------------------------------------------------
// Construction helpers (used all over the tests and the topology families)

inline Network make_network(int users, const std::vector<std::pair<int, int>>& arcs_1based) {
    Network n;
    n.users = users;
    n.direct_gain.assign(users, 0.0);
    for (auto [t, r] : arcs_1based) {
        if (t < 1 || t > users || r < 1 || r > users || t == r)
            throw parse_error("bad arc (" + std::to_string(t) + "," + std::to_string(r) + ")");
        n.cross.push_back({t - 1, r - 1});
    }
    n.sort_cross();
    return n;
}

inline Network chain_network(int users) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i < users; ++i) arcs.push_back({i, i + 1});
    return make_network(users, arcs);
}

inline Network cyclic_chain_network(int users) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i < users; ++i) arcs.push_back({i, i + 1});
    if (users >= 2) arcs.push_back({users, 1});
    return make_network(users, arcs);
}

inline Network d_to_many_network(int d, int users) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= users; ++j)
            if (i != j) arcs.push_back({i, j});
    return make_network(users, arcs);
}

inline Network many_to_d_network(int d, int users) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i <= users; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j) arcs.push_back({i, j});
    return make_network(users, arcs);
}

inline Network fully_connected_network(int users) {
    return d_to_many_network(users, users);
}

inline Network isolated_network(int users) { return make_network(users, {}); }

// ---------------------------------------------------------------------------
// JSON document format
//
// {"users": K, "model": "deterministic"|"gaussian"|"connectivity",
//  "cross": [{"tx": i, "rx": j, "gain": g?}, ...],
//  "direct": [{"user": i, "gain": g}, ...]?}
//
// 1-based indices. Gains are required exactly when model != "connectivity".
// Unknown keys are rejected.

inline Network parse_network(const nlohmann::json& doc) {
    if (!doc.is_object()) throw parse_error("topology document must be a JSON object");
    for (auto& [k, v] : doc.items()) {
        (void)v;
        if (k != "users" && k != "model" && k != "cross" && k != "direct")
            throw parse_error("unknown key '" + k + "' in topology document");
    }
    if (!doc.contains("users") || !doc["users"].is_number_integer())
        throw parse_error("missing integer 'users'");
    Network net;
    net.users = doc["users"].get<int>();
    if (net.users < 1) throw parse_error("'users' must be >= 1");

    std::string m = doc.value("model", std::string("connectivity"));
    if (m == "deterministic") net.model = Model::deterministic;
    else if (m == "gaussian") net.model = Model::gaussian;
    else if (m == "connectivity") net.model = Model::connectivity;
    else throw parse_error("unknown model '" + m + "'");

    bool want_gains = net.model != Model::connectivity;
    net.direct_gain.assign(net.users, 0.0);

    if (doc.contains("cross")) {
        if (!doc["cross"].is_array()) throw parse_error("'cross' must be an array");
        for (const auto& e : doc["cross"]) {
            if (!e.is_object()) throw parse_error("cross entry must be an object");
            for (auto& [k, v] : e.items()) {
                (void)v;
                if (k != "tx" && k != "rx" && k != "gain")
                    throw parse_error("unknown key '" + k + "' in cross entry");
            }
            if (!e.contains("tx") || !e.contains("rx"))
                throw parse_error("cross entry needs 'tx' and 'rx'");
            int tx = e["tx"].get<int>(), rx = e["rx"].get<int>();
            if (tx < 1 || tx > net.users || rx < 1 || rx > net.users)
                throw parse_error("cross endpoint out of range");
            if (tx == rx) throw parse_error("self link listed as cross edge");
            if (e.contains("gain")) {
                if (!want_gains)
                    throw parse_error("gain given on connectivity-only document");
                double g = e["gain"].get<double>();
                if (g < 0) throw parse_error("negative gain");
                if (net.model == Model::deterministic && g != std::floor(g))
                    throw parse_error("deterministic gains must be integers");
                net.cross_gain[{tx - 1, rx - 1}] = g;
            } else if (want_gains) {
                throw parse_error("missing gain on cross edge (model requires gains)");
            }
            net.cross.push_back({tx - 1, rx - 1});
        }
    }
    auto before = net.cross.size();
    net.sort_cross();
    if (net.cross.size() != before) throw parse_error("duplicate cross edge");

    if (doc.contains("direct")) {
        if (!want_gains) throw parse_error("'direct' gains on connectivity-only document");
        if (!doc["direct"].is_array()) throw parse_error("'direct' must be an array");
        std::vector<bool> seen(net.users, false);
        for (const auto& e : doc["direct"]) {
            for (auto& [k, v] : e.items()) {
                (void)v;
                if (k != "user" && k != "gain")
                    throw parse_error("unknown key '" + k + "' in direct entry");
            }
            if (!e.contains("user") || !e.contains("gain"))
                throw parse_error("direct entry needs 'user' and 'gain'");
            int u = e["user"].get<int>();
            if (u < 1 || u > net.users) throw parse_error("direct user out of range");
            if (seen[u - 1]) throw parse_error("duplicate direct entry");
            seen[u - 1] = true;
            double g = e["gain"].get<double>();
            if (g < 0) throw parse_error("negative gain");
            if (net.model == Model::deterministic && g != std::floor(g))
                throw parse_error("deterministic gains must be integers");
            net.direct_gain[u - 1] = g;
        }
        for (int u = 0; u < net.users; ++u)
            if (!seen[u]) throw parse_error("missing direct gain for user " + std::to_string(u + 1));
    } else if (want_gains) {
        throw parse_error("model '" + m + "' requires a 'direct' gain list");
    }
    return net;
}

inline Network parse_network(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_network(doc);
}

inline nlohmann::json network_to_json(const Network& net) {
    nlohmann::json doc;
    doc["users"] = net.users;
    doc["model"] = model_name(net.model);
    doc["cross"] = nlohmann::json::array();
    for (auto [t, r] : net.cross) {
        nlohmann::json e{{"tx", t + 1}, {"rx", r + 1}};
        if (net.model != Model::connectivity) e["gain"] = net.cross_gain.at({t, r});
        doc["cross"].push_back(e);
    }
    if (net.model != Model::connectivity) {
        doc["direct"] = nlohmann::json::array();
        for (int u = 0; u < net.users; ++u)
            doc["direct"].push_back({{"user", u + 1}, {"gain", net.direct_gain[u]}});
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Connected components, hop distances and views
//
// The network is an undirected bipartite graph on 2K nodes (T_i, D_i) whose
// edges are the direct links plus the cross links. The hop distance of a
// link from a node is one plus the number of edges traversed to reach either
// endpoint of that link.

struct NodeRef {
    bool is_tx = true;
    int user = 0; // 0-based
};

// Users grouped into connected components (each sorted ascending).
inline std::vector<std::vector<int>> components(const Network& net) {
    std::vector<int> comp(net.users, -1);
    int nc = 0;
    for (int s = 0; s < net.users; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [t, r] : net.cross) {
                int other = -1;
                if (t == u) other = r;
                else if (r == u) other = t;
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = nc;
                    q.push(other);
                }
            }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int u = 0; u < net.users; ++u) out[comp[u]].push_back(u);
    return out;
}

// Subnetwork induced by a user subset; gains restricted accordingly.
inline Network induced_network(const Network& net, const std::vector<int>& users) {
    Network sub;
    sub.users = static_cast<int>(users.size());
    sub.model = net.model;
    sub.direct_gain.assign(sub.users, 0.0);
    std::map<int, int> idx;
    for (int i = 0; i < sub.users; ++i) {
        idx[users[i]] = i;
        sub.direct_gain[i] = net.direct_gain[users[i]];
    }
    for (auto [t, r] : net.cross) {
        auto it = idx.find(t), ir = idx.find(r);
        if (it != idx.end() && ir != idx.end()) {
            sub.cross.push_back({it->second, ir->second});
            if (net.model != Model::connectivity)
                sub.cross_gain[{it->second, ir->second}] = net.cross_gain.at({t, r});
        }
    }
    sub.sort_cross();
    return sub;
}

namespace detail {

// node id: tx i -> i, rx i -> users + i
inline std::vector<std::vector<int>> node_adjacency(const Network& net) {
    std::vector<std::vector<int>> adj(2 * net.users);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int i = 0; i < net.users; ++i) link(i, net.users + i);
    for (auto [t, r] : net.cross) link(t, net.users + r);
    return adj;
}

inline std::vector<int> node_distances(const Network& net, int start) {
    auto adj = node_adjacency(net);
    std::vector<int> dist(2 * net.users, -1);
    std::queue<int> q;
    dist[start] = 0;
    q.push(start);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

} // namespace detail

struct Edge {
    int tx = 0;
    int rx = 0; // tx == rx means the direct link of that user
    bool operator<(const Edge& o) const { return std::tie(tx, rx) < std::tie(o.tx, o.rx); }
    bool operator==(const Edge& o) const { return tx == o.tx && rx == o.rx; }
};

inline std::vector<Edge> all_edges(const Network& net) {
    std::vector<Edge> es;
    for (int i = 0; i < net.users; ++i) es.push_back({i, i});
    for (auto [t, r] : net.cross) es.push_back({t, r});
    std::sort(es.begin(), es.end());
    return es;
}

// Hop distance of every link from the given node; links in other components
// are absent from the map (distance "infinity").
inline std::map<Edge, int> edge_hop_distances(const Network& net, NodeRef node) {
    if (node.user < 0 || node.user >= net.users)
        throw std::out_of_range("node index out of range");
    int start = node.is_tx ? node.user : net.users + node.user;
    auto dist = detail::node_distances(net, start);
    std::map<Edge, int> out;
    for (const auto& e : all_edges(net)) {
        int a = dist[e.tx], b = dist[net.users + e.rx];
        if (a < 0 && b < 0) continue;
        int d;
        if (a < 0) d = b;
        else if (b < 0) d = a;
        else d = std::min(a, b);
        out[e] = 1 + d;
    }
    return out;
}

// Links whose gains the node knows under an h-hop view: distance <= h for a
// transmitter, <= h+1 for a receiver.
inline std::set<Edge> local_view(const Network& net, NodeRef node, int h) {
    int budget = node.is_tx ? h : h + 1;
    std::set<Edge> out;
    for (const auto& [e, d] : edge_hop_distances(net, node))
        if (d <= budget) out.insert(e);
    return out;
}

// Smallest h at which every node has the full picture: each transmitter must
// reach every link within h hops and each receiver within h+1.
inline int view_radius(const Network& net) {
    auto comps = components(net);
    int radius = 1;
    for (const auto& comp : comps) {
        Network sub = induced_network(net, comp);
        auto edges = all_edges(sub);
        int tx_need = 1, rx_need = 0;
        for (int u = 0; u < sub.users; ++u) {
            auto dt = detail::node_distances(sub, u);
            auto dr = detail::node_distances(sub, sub.users + u);
            for (const auto& e : edges) {
                int t1 = std::min(dt[e.tx], dt[sub.users + e.rx]);
                int r1 = std::min(dr[e.tx], dr[sub.users + e.rx]);
                tx_need = std::max(tx_need, 1 + t1);
                rx_need = std::max(rx_need, 1 + r1 - 1);
            }
        }
        radius = std::max(radius, std::max(tx_need, rx_need));
    }
    return radius;
}

} // namespace lvcap
