#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lvcap {

// A coded slot assignment: t slots, k codewords per active user, and for
// every user a list of pairwise-disjoint nonempty slot sets (one per
// codeword, as t-bit masks). A slot is used at a transmitter for one
// codeword only; silent users carry an empty list; receivers always listen.
struct CodedSchedule {
    int slots = 0;     // t
    int codewords = 0; // k
    std::vector<std::vector<uint32_t>> assign; // [user][codeword] -> slot mask

    void validate(int users) const {
        if (slots < 1 || slots > 31) throw std::invalid_argument("slot count out of range");
        if (static_cast<int>(assign.size()) != users)
            throw std::invalid_argument("assignment list must cover every user");
        uint32_t all = (slots == 31) ? 0x7fffffffu : ((1u << slots) - 1);
        for (const auto& per_user : assign) {
            uint32_t seen = 0;
            for (uint32_t s : per_user) {
                if (s == 0) throw std::invalid_argument("empty slot set");
                if (s & ~all) throw std::invalid_argument("slot index out of range");
                if (s & seen) throw std::invalid_argument("codeword slot sets overlap");
                seen |= s;
            }
        }
    }

    bool user_active(int i) const { return !assign[i].empty(); }

    uint32_t active_mask_in_slot(int l) const {
        uint32_t m = 0;
        for (size_t i = 0; i < assign.size(); ++i)
            for (uint32_t s : assign[i])
                if (s & (1u << l)) m |= 1u << i;
        return m;
    }

    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["t"] = slots;
        doc["k"] = codewords;
        doc["slots"] = nlohmann::json::array();
        for (int l = 0; l < slots; ++l) {
            nlohmann::json active = nlohmann::json::array();
            uint32_t m = active_mask_in_slot(l);
            for (size_t i = 0; i < assign.size(); ++i)
                if (m & (1u << i)) active.push_back(i + 1);
            doc["slots"].push_back(active);
        }
        doc["assignments"] = nlohmann::json::array();
        for (size_t i = 0; i < assign.size(); ++i) {
            for (size_t j = 0; j < assign[i].size(); ++j) {
                nlohmann::json slots_arr = nlohmann::json::array();
                for (int l = 0; l < slots; ++l)
                    if (assign[i][j] & (1u << l)) slots_arr.push_back(l + 1);
                doc["assignments"].push_back(
                    {{"user", i + 1}, {"codeword", j + 1}, {"slots", slots_arr}});
            }
        }
        return doc;
    }

    static CodedSchedule from_json(const nlohmann::json& doc, int users) {
        CodedSchedule s;
        if (!doc.contains("t")) throw std::invalid_argument("schedule needs 't'");
        s.slots = doc["t"].get<int>();
        s.assign.assign(users, {});
        if (doc.contains("assignments")) {
            s.codewords = doc.value("k", 1);
            for (const auto& a : doc["assignments"]) {
                int u = a["user"].get<int>();
                if (u < 1 || u > users) throw std::invalid_argument("assignment user out of range");
                uint32_t mask = 0;
                for (const auto& l : a["slots"]) {
                    int li = l.get<int>();
                    if (li < 1 || li > s.slots)
                        throw std::invalid_argument("assignment slot out of range");
                    mask |= 1u << (li - 1);
                }
                s.assign[u - 1].push_back(mask);
            }
            int k = 0;
            for (const auto& per : s.assign) k = std::max<int>(k, per.size());
            if (s.codewords < k) s.codewords = k;
        } else if (doc.contains("slots")) {
            // Plain multiset schedule: one codeword per (user, slot) use.
            int l = 0;
            for (const auto& slot : doc["slots"]) {
                for (const auto& u : slot) {
                    int ui = u.get<int>();
                    if (ui < 1 || ui > users) throw std::invalid_argument("slot user out of range");
                    s.assign[ui - 1].push_back(1u << l);
                }
                ++l;
            }
            if (l != s.slots) throw std::invalid_argument("slot list length != t");
            int k = 0;
            for (const auto& per : s.assign) k = std::max<int>(k, per.size());
            s.codewords = k;
            // Pad so every active user carries the same number of codewords:
            // silent repeats of the final slot are not meaningful here, so
            // uneven schedules stay uneven and the caller decides.
        } else {
            throw std::invalid_argument("schedule needs 'assignments' or 'slots'");
        }
        s.validate(users);
        return s;
    }
};

} // namespace lvcap
