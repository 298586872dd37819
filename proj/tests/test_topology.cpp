#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "lvcap/classify.hpp"
#include "lvcap/network.hpp"

using namespace lvcap;

TEST_CASE("topology documents parse and validate") {
    auto z = parse_network(R"({"users": 2, "model": "connectivity",
                               "cross": [{"tx": 1, "rx": 2}]})");
    CHECK(z.users == 2);
    CHECK(z.has_arc(0, 1));
    auto cls = classify(z);
    REQUIRE(cls.size() == 1);
    CHECK(cls[0].kind == TopologyClass::Kind::z_network);

    auto single = parse_network(R"({"users": 1, "model": "connectivity"})");
    CHECK(classify(single)[0].kind == TopologyClass::Kind::isolated);

    // first four transmitters reach every receiver
    nlohmann::json doc;
    doc["users"] = 6;
    doc["model"] = "connectivity";
    doc["cross"] = nlohmann::json::array();
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 6; ++j)
            if (i != j) doc["cross"].push_back({{"tx", i}, {"rx", j}});
    auto net = parse_network(doc);
    auto c = classify(net);
    REQUIRE(c.size() == 1);
    CHECK(c[0].kind == TopologyClass::Kind::d_to_many);
    CHECK(c[0].d == 4);
    CHECK(c[0].users == 6);
}

TEST_CASE("parse errors are rejected") {
    CHECK_THROWS_AS(parse_network("{"), parse_error);
    CHECK_THROWS_AS(parse_network(R"({"users": 2, "extra": 1})"), parse_error);
    CHECK_THROWS_AS(
        parse_network(R"({"users": 2, "cross": [{"tx": 1, "rx": 1}]})"), parse_error);
    CHECK_THROWS_AS(
        parse_network(R"({"users": 2, "cross": [{"tx": 1, "rx": 2, "gain": 3}]})"),
        parse_error); // gain on a connectivity document
    CHECK_THROWS_AS(parse_network(R"({"users": 2, "model": "deterministic",
        "cross": [{"tx": 1, "rx": 2, "gain": -1}],
        "direct": [{"user": 1, "gain": 1}, {"user": 2, "gain": 1}]})"),
                    parse_error);
    CHECK_THROWS_AS(parse_network(R"({"users": 2, "model": "deterministic",
        "cross": [{"tx": 1, "rx": 2}],
        "direct": [{"user": 1, "gain": 1}, {"user": 2, "gain": 1}]})"),
                    parse_error); // missing cross gain
    CHECK_THROWS_AS(parse_network(R"({"users": 2, "model": "gaussian",
        "cross": [{"tx": 1, "rx": 2, "gain": 1.5}]})"),
                    parse_error); // missing direct list
    // round trip
    auto net = parse_network(R"({"users": 2, "model": "deterministic",
        "cross": [{"tx": 1, "rx": 2, "gain": 2}],
        "direct": [{"user": 1, "gain": 3}, {"user": 2, "gain": 1}]})");
    auto again = parse_network(network_to_json(net));
    CHECK(again.cross == net.cross);
    CHECK(again.direct_gain == net.direct_gain);
}

TEST_CASE("classify matches the family definitions") {
    CHECK(classify(d_to_many_network(1, 5))[0].kind == TopologyClass::Kind::d_to_many);
    CHECK(classify(d_to_many_network(1, 5))[0].d == 1);
    CHECK(classify(cyclic_chain_network(5))[0].kind == TopologyClass::Kind::cyclic_chain);
    CHECK(classify(chain_network(4))[0].kind == TopologyClass::Kind::chain);
    CHECK(classify(fully_connected_network(3))[0].kind ==
          TopologyClass::Kind::fully_connected);
    CHECK(classify(many_to_d_network(1, 4))[0].kind == TopologyClass::Kind::many_to_d);
    auto iso = classify(isolated_network(3));
    CHECK(iso.size() == 3);
    for (const auto& t : iso) CHECK(t.kind == TopologyClass::Kind::isolated);
    // fully connected wins over d-to-many with d = K
    CHECK(classify(fully_connected_network(4))[0].kind ==
          TopologyClass::Kind::fully_connected);
}

TEST_CASE("classification ignores gains and user labels") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int K = 2 + static_cast<int>(rng() % 5);
        Network net;
        net.users = K;
        net.direct_gain.assign(K, 0.0);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                if (i != j && (rng() & 1)) net.cross.push_back({i, j});
        net.sort_cross();

        std::vector<int> perm(K);
        for (int i = 0; i < K; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Network relabeled;
        relabeled.users = K;
        relabeled.direct_gain.assign(K, 0.0);
        for (auto [t, r] : net.cross) relabeled.cross.push_back({perm[t], perm[r]});
        relabeled.sort_cross();

        auto names = [](const Network& n) {
            std::vector<std::string> out;
            for (const auto& t : classify(n)) out.push_back(t.name());
            std::sort(out.begin(), out.end());
            return out;
        };
        CHECK(names(net) == names(relabeled));

        Network gains = net;
        gains.model = Model::deterministic;
        for (int i = 0; i < K; ++i) gains.direct_gain[i] = static_cast<double>(rng() % 5);
        for (auto e : gains.cross) gains.cross_gain[e] = static_cast<double>(rng() % 5);
        CHECK(names(net) == names(gains));
    }
}

TEST_CASE("all 64 three-user patterns fall into 16 orbits") {
    std::map<int, int> orbit_sizes;
    for (int mask = 0; mask < 64; ++mask)
        orbit_sizes[three_user::canonical_mask(mask)]++;
    CHECK(orbit_sizes.size() == 16);
    int total = 0;
    for (auto& [m, sz] : orbit_sizes) total += sz;
    CHECK(total == 64);
    CHECK(orbit_sizes.at(0) == 1);                                // empty pattern
    CHECK(orbit_sizes.at(three_user::canonical_mask(63)) == 1);   // full pattern
    CHECK(three_user::orbit_table().size() == 16);
    // the named table covers exactly the canonical masks
    for (int m : three_user::orbit_masks()) CHECK(three_user::orbit_table().count(m) == 1);
}

TEST_CASE("canonical_three_user is relabeling invariant") {
    std::mt19937 rng(11);
    for (int mask = 0; mask < 64; ++mask) {
        auto base = canonical_three_user(three_user::network_of_mask(mask));
        for (const auto& perm : three_user::permutations()) {
            int pm = three_user::apply_permutation(mask, perm);
            auto other = canonical_three_user(three_user::network_of_mask(pm));
            CHECK(base.orbit == other.orbit);
            CHECK(base.canonical == other.canonical);
        }
    }
    CHECK_THROWS(canonical_three_user(isolated_network(2)));
}

TEST_CASE("hop distances follow the traversal rule") {
    // Z-network, from T_1
    auto z = make_network(2, {{1, 2}});
    auto d = edge_hop_distances(z, {true, 0});
    CHECK(d.at({0, 0}) == 1);
    CHECK(d.at({0, 1}) == 1);
    CHECK(d.at({1, 1}) == 2);

    // chain(3), from T_2
    auto c3 = chain_network(3);
    auto d2 = edge_hop_distances(c3, {true, 1});
    CHECK(d2.at({1, 1}) == 1);
    CHECK(d2.at({1, 2}) == 1);
    CHECK(d2.at({0, 1}) == 2);
    CHECK(d2.at({2, 2}) == 2);
    CHECK(d2.at({0, 0}) == 3);

    // isolated pair sees only its own component
    auto iso = isolated_network(2);
    auto d3 = edge_hop_distances(iso, {true, 0});
    CHECK(d3.count({0, 0}) == 1);
    CHECK(d3.count({1, 1}) == 0);
}

TEST_CASE("local views are nested and saturate at the view radius") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int K = 2 + static_cast<int>(rng() % 4);
        Network net;
        net.users = K;
        net.direct_gain.assign(K, 0.0);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                if (i != j && (rng() % 3 == 0)) net.cross.push_back({i, j});
        net.sort_cross();
        int radius = view_radius(net);
        for (int u = 0; u < K; ++u) {
            for (bool tx : {true, false}) {
                NodeRef node{tx, u};
                std::set<Edge> prev;
                for (int h = 1; h <= radius + 1; ++h) {
                    auto v = local_view(net, node, h);
                    CHECK(std::includes(v.begin(), v.end(), prev.begin(), prev.end()));
                    prev = v;
                }
                // at the radius every node knows every edge in its component
                auto full = local_view(net, node, radius);
                auto dists = edge_hop_distances(net, node);
                CHECK(full.size() == dists.size());
            }
        }
    }
}

TEST_CASE("view radius of the standard families") {
    CHECK(view_radius(isolated_network(1)) == 1);
    CHECK(view_radius(fully_connected_network(4)) == 2);
    CHECK(view_radius(make_network(2, {{1, 2}})) == 3);   // Z
    CHECK(view_radius(cyclic_chain_network(3)) == 3);
    CHECK(view_radius(d_to_many_network(1, 4)) == 4);     // one-to-many
    CHECK(view_radius(d_to_many_network(4, 6)) == 4);
}
