#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lvcap/classify.hpp"
#include "lvcap/det_channel.hpp"
#include "lvcap/network.hpp"
#include "lvcap/scheduler.hpp"

namespace lvcap {

// Simulation support for plain (uncoded) schedule multisets on the
// deterministic model. A scheduled subgraph whose components are isolated
// pairs, Z pairs or one-to-many stars has a one-shot strategy: leaf users
// fill their direct levels, the star's hub transmits only on levels that
// land outside every leaf's own signal range. Components that would need
// full joint decoding (fully-connected, or anything richer) are skipped and
// reported as not simulated.

enum class SlotVerdict { verified, failed, not_simulated };

// Transmit level sets (0-based, 0 = most significant) for one component that
// is isolated / Z / one-to-many; nullopt otherwise.
inline std::optional<std::vector<std::vector<int>>> one_to_many_levels(const Network& comp) {
    if (!comp.cross.empty() && !family::is_one_to_many(comp)) return std::nullopt;
    std::vector<std::vector<int>> levels(comp.users);
    int hub = -1;
    if (!comp.cross.empty()) hub = comp.cross.front().first;
    for (int i = 0; i < comp.users; ++i) {
        long long nii = comp.det_gain(i, i);
        if (i != hub) {
            for (int b = 0; b < nii; ++b) levels[i].push_back(b);
            continue;
        }
        for (int u = 1; u <= nii; ++u) {
            bool harmful = false;
            for (auto [t, r] : comp.cross) {
                if (t != hub) continue;
                long long nfr = comp.det_gain(t, r), nrr = comp.det_gain(r, r);
                if (u <= nfr && u > nfr - nrr) harmful = true;
            }
            if (!harmful) levels[i].push_back(u - 1);
        }
    }
    return levels;
}

// Verifies one slot of a multiset schedule by simulation with random
// payloads on the induced member subnetwork.
inline SlotVerdict verify_slot(const Network& net, uint32_t member_mask, std::mt19937& rng) {
    std::vector<int> users;
    for (int i = 0; i < net.users; ++i)
        if ((member_mask >> i) & 1u) users.push_back(i);
    if (users.empty()) return SlotVerdict::verified;
    Network sub = induced_network(net, users);
    if (sub.model != Model::deterministic) return SlotVerdict::not_simulated;

    int qs = static_cast<int>(sub.max_det_gain());
    if (qs == 0) return SlotVerdict::verified; // nothing to carry
    std::vector<DetSignal> inputs(sub.users, zero_signal(qs));
    std::vector<std::vector<int>> sent_levels(sub.users);
    for (const auto& comp_users : components(sub)) {
        Network comp = induced_network(sub, comp_users);
        auto levels = one_to_many_levels(comp);
        if (!levels) return SlotVerdict::not_simulated;
        for (size_t li = 0; li < comp_users.size(); ++li) {
            int u = comp_users[li];
            sent_levels[u] = (*levels)[li];
            for (int b : sent_levels[u]) inputs[u][b] = static_cast<uint8_t>(rng() & 1u);
        }
    }
    auto outputs = receive(inputs, sub);
    for (int i = 0; i < sub.users; ++i) {
        long long nii = sub.det_gain(i, i);
        for (int b : sent_levels[i]) {
            if (b >= nii) return SlotVerdict::failed;
            if (outputs[i][qs - nii + b] != inputs[i][b]) return SlotVerdict::failed;
        }
    }
    return SlotVerdict::verified;
}

struct MultisetVerifyReport {
    bool any_failure = false;
    int verified_slots = 0;
    int skipped_slots = 0; // members needing full joint decoding
};

inline MultisetVerifyReport verify_multiset(const Network& net, const ScheduleMultiset& ms,
                                            int trials, unsigned seed) {
    MultisetVerifyReport rep;
    std::mt19937 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        for (uint32_t m : ms.slots) {
            auto v = verify_slot(net, m, rng);
            if (v == SlotVerdict::failed) rep.any_failure = true;
            else if (v == SlotVerdict::verified) rep.verified_slots++;
            else rep.skipped_slots++;
        }
    }
    return rep;
}

} // namespace lvcap
