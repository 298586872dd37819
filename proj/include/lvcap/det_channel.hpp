#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "lvcap/coded_schedule.hpp"
#include "lvcap/network.hpp"

namespace lvcap {

// Bit vector over GF(2), index 0 = most significant level. Length is always
// q, the largest gain in the network.
using DetSignal = std::vector<uint8_t>;

inline DetSignal zero_signal(int q) { return DetSignal(static_cast<size_t>(q), 0); }

inline DetSignal xor_signals(const DetSignal& a, const DetSignal& b) {
    if (a.size() != b.size()) throw std::invalid_argument("signal length mismatch");
    DetSignal out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

// Applies the down-shift channel of gain n: keeps the top n bits of x and
// places them in the bottom n positions, zero elsewhere.
inline DetSignal shift_down(const DetSignal& x, int q, int n) {
    if (static_cast<int>(x.size()) != q) throw std::invalid_argument("signal length != q");
    if (n < 0 || n > q) throw std::invalid_argument("shift gain outside [0, q]");
    DetSignal y = zero_signal(q);
    for (int u = 0; u < n; ++u) y[q - n + u] = x[u];
    return y;
}

// One channel use: every receiver sees the GF(2)^q sum of the shifted inputs
// over its incoming links (direct link included; absent links have gain 0).
inline std::vector<DetSignal> receive(const std::vector<DetSignal>& inputs, const Network& net) {
    if (net.model != Model::deterministic)
        throw std::invalid_argument("receive requires a deterministic network");
    if (static_cast<int>(inputs.size()) != net.users)
        throw std::invalid_argument("need one input per transmitter");
    int q = static_cast<int>(net.max_det_gain());
    std::vector<DetSignal> out(net.users, zero_signal(q));
    for (int j = 0; j < net.users; ++j) {
        for (int k = 0; k < net.users; ++k) {
            long long n = (k == j) ? net.det_gain(j, j)
                                   : (net.has_arc(k, j) ? net.det_gain(k, j) : 0);
            if (n == 0) continue;
            out[j] = xor_signals(out[j], shift_down(inputs[k], q, static_cast<int>(n)));
        }
    }
    return out;
}

struct SlotTranscript {
    std::vector<std::vector<DetSignal>> inputs;  // [slot][tx]
    std::vector<std::vector<DetSignal>> outputs; // [slot][rx]

    nlohmann::json to_json() const {
        auto dump_sig = [](const DetSignal& s) {
            nlohmann::json a = nlohmann::json::array();
            for (auto b : s) a.push_back(static_cast<int>(b));
            return a;
        };
        nlohmann::json doc = nlohmann::json::array();
        for (size_t l = 0; l < outputs.size(); ++l) {
            nlohmann::json slot;
            slot["slot"] = l + 1;
            slot["inputs"] = nlohmann::json::array();
            for (const auto& s : inputs[l]) slot["inputs"].push_back(dump_sig(s));
            slot["outputs"] = nlohmann::json::array();
            for (const auto& s : outputs[l]) slot["outputs"].push_back(dump_sig(s));
            doc.push_back(slot);
        }
        return doc;
    }
};

// Per-user, per-codeword payloads (each of length n_ii) and per-receiver
// GF(2) recovery coefficients (one t-bit mask per codeword).
struct DecodeOutcome {
    bool all_decoded = true;
    std::vector<std::vector<bool>> decoded; // [user][codeword]
    SlotTranscript transcript;
};

// Runs the schedule on the deterministic network: user i transmits codeword
// j's payload on the top n_ii levels in every slot of S_{i,j}, receivers
// combine their slot outputs with the given coefficients and the verdict is
// exact bit equality with the payload.
inline DecodeOutcome simulate_and_decode(const Network& net, const CodedSchedule& sched,
                                         const std::vector<std::vector<DetSignal>>& payloads,
                                         const std::vector<std::vector<uint32_t>>& coeffs) {
    if (net.model != Model::deterministic)
        throw std::invalid_argument("simulate_and_decode requires a deterministic network");
    sched.validate(net.users);
    int q = static_cast<int>(net.max_det_gain());
    int t = sched.slots;

    if (static_cast<int>(payloads.size()) != net.users ||
        static_cast<int>(coeffs.size()) != net.users)
        throw std::invalid_argument("need payloads and coefficients for every user");
    for (int i = 0; i < net.users; ++i) {
        if (payloads[i].size() != sched.assign[i].size())
            throw std::invalid_argument("payload count != codeword count");
        if (coeffs[i].size() != sched.assign[i].size())
            throw std::invalid_argument("coefficient count != codeword count");
        for (const auto& p : payloads[i])
            if (static_cast<long long>(p.size()) != net.det_gain(i, i))
                throw std::invalid_argument("payload longer than the direct gain");
    }

    DecodeOutcome out;
    out.transcript.inputs.assign(t, std::vector<DetSignal>(net.users, zero_signal(q)));
    out.transcript.outputs.resize(t);
    for (int l = 0; l < t; ++l) {
        for (int i = 0; i < net.users; ++i) {
            for (size_t j = 0; j < sched.assign[i].size(); ++j) {
                if (!(sched.assign[i][j] & (1u << l))) continue;
                DetSignal x = zero_signal(q);
                for (size_t b = 0; b < payloads[i][j].size(); ++b) x[b] = payloads[i][j][b];
                out.transcript.inputs[l][i] = x;
            }
        }
        out.transcript.outputs[l] = receive(out.transcript.inputs[l], net);
    }

    out.decoded.resize(net.users);
    for (int i = 0; i < net.users; ++i) {
        int nii = static_cast<int>(net.det_gain(i, i));
        for (size_t j = 0; j < sched.assign[i].size(); ++j) {
            DetSignal combo = zero_signal(q);
            for (int l = 0; l < t; ++l)
                if (coeffs[i][j] & (1u << l))
                    combo = xor_signals(combo, out.transcript.outputs[l][i]);
            bool ok = true;
            // The combination reduces to the shifted direct signal, so the
            // payload sits in the bottom n_ii levels.
            for (int b = 0; b < nii && ok; ++b)
                if (combo[q - nii + b] != payloads[i][j][b]) ok = false;
            for (int b = 0; b < q - nii && ok; ++b)
                if (combo[b] != 0) ok = false;
            out.decoded[i].push_back(ok);
            if (!ok) out.all_decoded = false;
        }
    }
    return out;
}

inline std::vector<std::vector<DetSignal>> random_payloads(const Network& net,
                                                           const CodedSchedule& sched,
                                                           std::mt19937& rng) {
    std::vector<std::vector<DetSignal>> payloads(net.users);
    for (int i = 0; i < net.users; ++i) {
        int nii = static_cast<int>(net.det_gain(i, i));
        for (size_t j = 0; j < sched.assign[i].size(); ++j) {
            DetSignal p(nii);
            for (auto& b : p) b = static_cast<uint8_t>(rng() & 1u);
            payloads[i].push_back(p);
        }
    }
    return payloads;
}

} // namespace lvcap
