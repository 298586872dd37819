#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lvcap/coded_schedule.hpp"
#include "lvcap/network.hpp"
#include "lvcap/rational.hpp"

namespace lvcap {

// Default search caps for exhaustive coded-set enumeration.
inline constexpr int kCsSearchSlotCap = 4;
inline constexpr int kCsSearchCodewordCap = 2;
inline constexpr int kCsSearchUserCap = 6;

// ---------------------------------------------------------------------------
// Constraint matrix at a receiver: one k x t block per heard transmitter
// (own transmitter first, then interferers by ascending index); row j of a
// block has ones exactly at that transmitter's slot set for codeword j.

struct ConstraintMatrix {
    int rx = 0;
    int slots = 0;
    int codewords = 0;                // k
    std::vector<int> block_owner;     // transmitter per block, block 0 = rx itself
    std::vector<uint32_t> rows;       // k rows per block, each a t-bit mask
};

inline ConstraintMatrix build_constraint_matrix(const CodedSchedule& sched, const Network& net,
                                                int rx) {
    if (rx < 0 || rx >= net.users) throw std::out_of_range("receiver index out of range");
    ConstraintMatrix F;
    F.rx = rx;
    F.slots = sched.slots;
    F.codewords = sched.codewords;
    std::vector<int> owners{rx};
    for (int tx = 0; tx < net.users; ++tx)
        if (tx != rx && net.has_arc(tx, rx)) owners.push_back(tx);
    for (int tx : owners) {
        F.block_owner.push_back(tx);
        for (int j = 0; j < sched.codewords; ++j) {
            uint32_t mask = j < static_cast<int>(sched.assign[tx].size()) ? sched.assign[tx][j] : 0;
            F.rows.push_back(mask);
        }
    }
    return F;
}

// ---------------------------------------------------------------------------
// Feasibility certificates. A receiver is feasible when every own-codeword
// target column (identity rows within the top block, zero elsewhere) lies in
// the span of the constraint-matrix columns in the relevant field.

struct Gf2Certificate {
    std::vector<uint32_t> coeffs; // k masks, one per own codeword
};

inline std::optional<Gf2Certificate> feasible_gf2(const ConstraintMatrix& F) {
    int t = F.slots, k = F.codewords;
    int nrows = static_cast<int>(F.rows.size());
    // Augment each row with the k target bits: the j-th own-codeword target
    // has a single one at row j.
    std::vector<uint64_t> work(nrows);
    for (int r = 0; r < nrows; ++r) {
        work[r] = F.rows[r];
        if (r < k) work[r] |= 1ull << (t + r);
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < t && rank < nrows; ++c) {
        int pr = -1;
        for (int r = rank; r < nrows; ++r)
            if ((work[r] >> c) & 1ull) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(work[rank], work[pr]);
        for (int r = 0; r < nrows; ++r)
            if (r != rank && ((work[r] >> c) & 1ull)) work[r] ^= work[rank];
        pivot_col.push_back(c);
        ++rank;
    }
    uint64_t fmask = (t >= 63) ? ~0ull : ((1ull << t) - 1);
    for (int r = rank; r < nrows; ++r)
        if ((work[r] & ~fmask) != 0) return std::nullopt; // 0 = nonzero target
    Gf2Certificate cert;
    cert.coeffs.assign(k, 0);
    for (int r = 0; r < rank; ++r) {
        uint64_t targets = work[r] >> t;
        for (int j = 0; j < k; ++j)
            if ((targets >> j) & 1ull) cert.coeffs[j] |= 1u << pivot_col[r];
    }
    return cert;
}

struct RealCertificate {
    std::vector<std::vector<double>> coeffs; // k vectors of length t
    double b = 1.0;                          // max_j squared norm
};

// Real-field certificate from the minimum-norm (pseudo-inverse) solution;
// exactness is checked against a 1e-9 residual.
inline std::optional<RealCertificate> feasible_real(const ConstraintMatrix& F) {
    int t = F.slots, k = F.codewords;
    int nrows = static_cast<int>(F.rows.size());
    Eigen::MatrixXd M(nrows, t);
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < t; ++c) M(r, c) = (F.rows[r] >> c) & 1u ? 1.0 : 0.0;
    auto cod = M.completeOrthogonalDecomposition();
    RealCertificate cert;
    cert.b = 0.0;
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(nrows);
        e(j) = 1.0;
        Eigen::VectorXd a = cod.solve(e);
        if ((M * a - e).lpNorm<Eigen::Infinity>() > 1e-9) return std::nullopt;
        cert.coeffs.emplace_back(a.data(), a.data() + t);
        cert.b = std::max(cert.b, a.squaredNorm());
    }
    if (cert.b <= 0) cert.b = 1.0;
    return cert;
}

// ---------------------------------------------------------------------------
// Schedule evaluation.

struct CsEvaluation {
    bool feasible = false;
    int failing_rx = -1; // 0-based receiver that broke feasibility
    Rational alpha;      // k / t
    double tau = 0.0;    // 0 deterministic; <= alpha * sum log2 b_i Gaussian
    std::vector<double> per_user_rate;
    std::vector<double> b;                  // per receiver (Gaussian branch)
    std::vector<Gf2Certificate> gf2;        // per receiver (deterministic branch)
};

// Evaluates a schedule against a model: every receiver needs a certificate
// in the model's field, the value is k/t, and the Gaussian rate penalty is
// tau <= (k/t) * sum_i log2(b_i).
inline CsEvaluation cs_value(const CodedSchedule& sched, const Network& net, Model model) {
    sched.validate(net.users);
    for (int i = 0; i < net.users; ++i)
        if (static_cast<int>(sched.assign[i].size()) != sched.codewords)
            throw std::invalid_argument("schedule must assign k codewords to every user");
    CsEvaluation ev;
    ev.alpha = Rational(sched.codewords, sched.slots);
    bool gauss = model == Model::gaussian;
    double logb_sum = 0.0;
    for (int rx = 0; rx < net.users; ++rx) {
        auto F = build_constraint_matrix(sched, net, rx);
        if (gauss) {
            auto cert = feasible_real(F);
            if (!cert) {
                ev.failing_rx = rx;
                return ev;
            }
            ev.b.push_back(cert->b);
            logb_sum += std::log2(cert->b);
        } else {
            auto cert = feasible_gf2(F);
            if (!cert) {
                ev.failing_rx = rx;
                return ev;
            }
            ev.gf2.push_back(*cert);
        }
    }
    ev.feasible = true;
    ev.tau = gauss ? ev.alpha.to_double() * logb_sum : 0.0;
    for (int i = 0; i < net.users; ++i) {
        if (gauss)
            ev.per_user_rate.push_back(std::log2(1.0 + net.direct_gain[i] / ev.b[i]));
        else
            ev.per_user_rate.push_back(static_cast<double>(net.det_gain(i, i)));
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Constructions.

// Two-slot repetition schedule for an odd cyclic chain: odd users take the
// first slot, even users the second, and the last user transmits in both,
// repeating its codeword so the victim receiver can difference the slots.
// The differencing receiver pays b = 2 in the Gaussian model.
inline CodedSchedule cyclic_chain_schedule(int users) {
    if (users < 1 || users % 2 == 0)
        throw std::invalid_argument("repetition construction needs an odd user count");
    CodedSchedule s;
    if (users == 1) {
        s.slots = 1;
        s.codewords = 1;
        s.assign = {{1u}};
        return s;
    }
    s.slots = 2;
    s.codewords = 1;
    s.assign.assign(users, {});
    for (int i = 0; i < users; ++i) s.assign[i] = {(i % 2 == 0) ? 1u : 2u};
    s.assign[users - 1] = {3u}; // both slots
    return s;
}

// One independent codeword per (user, slot) occurrence of a plain multiset
// schedule; interference-free by construction wherever the multiset slots
// are conflict-graph independent sets.
inline CodedSchedule multiset_to_coded(const std::vector<uint32_t>& slot_masks, int users) {
    CodedSchedule s;
    s.slots = static_cast<int>(slot_masks.size());
    s.assign.assign(users, {});
    for (int l = 0; l < s.slots; ++l)
        for (int i = 0; i < users; ++i)
            if ((slot_masks[l] >> i) & 1u) s.assign[i].push_back(1u << l);
    int k = 0;
    for (const auto& per : s.assign) k = std::max<int>(k, per.size());
    s.codewords = k;
    return s;
}

// ---------------------------------------------------------------------------
// Exhaustive search for the best coded schedule (deterministic field).

struct CsSearchResult {
    bool found = false;
    bool exhaustive = true;
    CodedSchedule schedule;
    Rational alpha; // k / t of the best feasible schedule
};

namespace detail {

// All canonical per-user choices for (t, k): k pairwise-disjoint nonempty
// slot sets in ascending mask order.
inline std::vector<std::vector<uint32_t>> user_choices(int t, int k) {
    std::vector<std::vector<uint32_t>> out;
    uint32_t full = (1u << t) - 1;
    std::vector<uint32_t> cur;
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t used, uint32_t min_mask) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (uint32_t m = min_mask; m <= full; ++m) {
            if (m == 0 || (m & used)) continue;
            cur.push_back(m);
            rec(used | m, m + 1);
            cur.pop_back();
        }
    };
    rec(0, 1);
    return out;
}

inline bool partial_feasible(const CodedSchedule& sched, const Network& net, int assigned_users) {
    for (int rx = 0; rx < assigned_users; ++rx) {
        // Check receivers whose full interference picture may still grow:
        // extra rows only shrink the solution set, so infeasibility of the
        // partial system is already final.
        ConstraintMatrix F;
        F.rx = rx;
        F.slots = sched.slots;
        F.codewords = sched.codewords;
        F.block_owner.push_back(rx);
        for (int j = 0; j < sched.codewords; ++j) F.rows.push_back(sched.assign[rx][j]);
        for (int tx = 0; tx < assigned_users; ++tx) {
            if (tx == rx || !net.has_arc(tx, rx)) continue;
            F.block_owner.push_back(tx);
            for (int j = 0; j < sched.codewords; ++j) F.rows.push_back(sched.assign[tx][j]);
        }
        if (!feasible_gf2(F)) return false;
    }
    return true;
}

} // namespace detail

// Enumerates slot-assignment families up to slot relabeling (new slots must
// appear in order) and keeps schedules feasible over GF(2) at every
// receiver. The result is a certified achievable value: the certificate is
// footprint-only, so it holds for every deterministic gain assignment.
inline CsSearchResult search_best_cs(const Network& net, int t_max = kCsSearchSlotCap,
                                     int k_max = kCsSearchCodewordCap,
                                     int user_cap = kCsSearchUserCap) {
    CsSearchResult best;
    if (net.users > user_cap) {
        best.exhaustive = false;
        return best;
    }
    struct Candidate {
        int t, k;
    };
    std::vector<Candidate> cands;
    for (int t = 1; t <= t_max; ++t)
        for (int k = 1; k <= std::min(k_max, t); ++k) cands.push_back({t, k});
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        Rational va(a.k, a.t), vb(b.k, b.t);
        if (va != vb) return vb < va;
        return a.t < b.t;
    });

    for (const auto& cand : cands) {
        Rational value(cand.k, cand.t);
        if (best.found && value <= best.alpha) break;
        auto choices = detail::user_choices(cand.t, cand.k);
        CodedSchedule sched;
        sched.slots = cand.t;
        sched.codewords = cand.k;
        sched.assign.assign(net.users, {});
        bool found = false;
        std::function<void(int, int)> rec = [&](int user, int slots_used) {
            if (found) return;
            if (user == net.users) {
                if (slots_used == cand.t) found = true;
                return;
            }
            for (const auto& ch : choices) {
                // Slot canonicalization: a new slot index may only appear
                // once all smaller ones are in use.
                int high = slots_used;
                bool ok = true;
                for (uint32_t m : ch)
                    for (int l = 0; l < cand.t && ok; ++l)
                        if ((m >> l) & 1u) {
                            if (l > high) ok = false;
                            else if (l == high) ++high;
                        }
                if (!ok) continue;
                sched.assign[user] = ch;
                if (detail::partial_feasible(sched, net, user + 1)) rec(user + 1, high);
                if (found) return;
                sched.assign[user].clear();
            }
        };
        rec(0, 0);
        if (found) {
            best.found = true;
            best.schedule = sched;
            best.alpha = value;
        }
    }
    return best;
}

} // namespace lvcap
