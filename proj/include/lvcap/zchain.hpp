#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvcap/lp.hpp"
#include "lvcap/rational.hpp"

namespace lvcap {

// Three-user double-Z chain: cross links (1,2) and (2,3) only. The
// deterministic variant carries five integer gains, the Gaussian variant the
// squared channel magnitudes (INR_2 at D_2 from T_1, INR_3 at D_3 from T_2).

struct ZChainDet {
    long long n11 = 0, n22 = 0, n33 = 0, n12 = 0, n23 = 0;
};

struct ZChainGauss {
    double snr1 = 0, snr2 = 0, snr3 = 0, inr2 = 0, inr3 = 0;
};

inline long long pos_ll(long long x) { return x > 0 ? x : 0; }

// ---------------------------------------------------------------------------
// Deterministic capacity region (full-view): the rate triples satisfying
//   R_i <= n_ii
//   R_1+R_2 <= max(n11, n12, n22, n11+n22-n12)
//   R_2+R_3 <= max(n22, n23, n33, n22+n33-n23)
//   R_1+R_2+R_3 <= max(n33,n23) + (n11-n12)^+ + max(n12, n22-n23)

struct DetConstraint {
    std::array<int, 3> coeff;
    long long rhs;
};

inline std::vector<DetConstraint> zchain_det_constraints(const ZChainDet& z) {
    auto& [n11, n22, n33, n12, n23] = z;
    long long b12 = std::max({n11, n12, n22, n11 + n22 - n12});
    long long b23 = std::max({n22, n23, n33, n22 + n33 - n23});
    long long b123 = std::max(n33, n23) + pos_ll(n11 - n12) + std::max(n12, n22 - n23);
    return {
        {{1, 0, 0}, n11}, {{0, 1, 0}, n22}, {{0, 0, 1}, n33},
        {{1, 1, 0}, b12}, {{0, 1, 1}, b23}, {{1, 1, 1}, b123},
    };
}

inline bool zchain_det_in_region(const ZChainDet& z, long long r1, long long r2, long long r3) {
    if (r1 < 0 || r2 < 0 || r3 < 0) return false;
    for (const auto& c : zchain_det_constraints(z)) {
        long long lhs = c.coeff[0] * r1 + c.coeff[1] * r2 + c.coeff[2] * r3;
        if (lhs > c.rhs) return false;
    }
    return true;
}

struct DetRegionMax {
    long long sum = 0;
    std::array<long long, 3> witness{0, 0, 0};
};

// Exact maximum of R1+R2+R3 over the region. The constraint matrix has
// consecutive ones, so the LP optimum is integral and the simplex vertex is
// a valid witness.
inline DetRegionMax zchain_det_region_max(const ZChainDet& z) {
    auto cons = zchain_det_constraints(z);
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& c : cons) {
        A.push_back({Rational(c.coeff[0]), Rational(c.coeff[1]), Rational(c.coeff[2])});
        b.push_back(Rational(c.rhs));
    }
    auto lp = lp_max(A, b, {Rational(1), Rational(1), Rational(1)});
    if (!lp.feasible || !lp.bounded) throw std::logic_error("region LP must be solvable");
    DetRegionMax out;
    for (int i = 0; i < 3; ++i) {
        if (lp.x[i].den() != 1) throw std::logic_error("region vertex must be integral");
        out.witness[i] = lp.x[i].num();
    }
    out.sum = lp.value.num();
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic achievability: users 1 and 3 send at full rate, user 2 backs
// off according to one of eleven gain orderings (boundary ties fall to the
// lower-numbered case).

struct DetAchievable {
    long long r1 = 0, r2 = 0, r3 = 0;
    int case_id = 0;
    long long sum() const { return r1 + r2 + r3; }
};

inline DetAchievable zchain_det_achievable(const ZChainDet& z) {
    const auto [n11, n22, n33, n12, n23] = z;
    DetAchievable out;
    out.r1 = n11;
    out.r3 = n33;
    auto z_pair_sum = [&](long long a, long long c, long long b) {
        // sum rate of a two-user Z with direct gains a (interferer), b
        // (victim) and cross gain c
        return std::max({a, b, std::min(c, a + b), a + b - c});
    };
    if (n12 <= n11) {
        out.case_id = 1;
        out.r2 = z_pair_sum(n22 - n12, n23, n33) - n33;
    } else if (n22 <= n12 - n11) {
        out.case_id = 2;
        out.r2 = z_pair_sum(n22, n23, n33) - n33;
    } else if (n22 <= n12) {
        if (n23 <= n33) {
            out.case_id = 3;
            out.r2 = std::min(n12 - n11, pos_ll(n22 - n23));
        } else {
            out.case_id = 4;
            out.r2 = std::min(n12 - n11, pos_ll(n22 - n23) + std::min(n22, n23 - n33));
        }
    } else if (n23 <= n33) {
        if (n23 <= n22 - n12) {
            out.case_id = 5;
            out.r2 = pos_ll(n22 - n11 - n23);
        } else if (n23 <= n11 + n22 - n12) {
            out.case_id = 6;
            out.r2 = n12 - n11;
        } else {
            out.case_id = 7;
            out.r2 = pos_ll(n22 - n23);
        }
    } else {
        if (n23 <= n22 - n12) {
            out.case_id = 8;
            out.r2 = n22 - n11 - n33;
        } else if (n23 <= n11 + n22 - n12) {
            out.case_id = 9;
            out.r2 = (n12 - n11) + std::min(n23 - n33, n22 - n12);
        } else if (n23 <= n22) {
            out.case_id = 10;
            out.r2 = n22 - std::max(n11, n33);
        } else {
            out.case_id = 11;
            out.r2 = n22 - std::max(n11, pos_ll(n33 + n22 - n23));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian outer bound, by gain regime. All logs base 2.

inline double lg(double x) { return std::log2(1.0 + x); }

struct GaussConstraint {
    std::array<double, 3> coeff;
    double rhs;
};

struct GaussOuter {
    double sum = 0;
    int regime = 0;
};

inline std::vector<GaussConstraint> zchain_gauss_constraints(const ZChainGauss& z, int* regime) {
    const double S1 = z.snr1, S2 = z.snr2, S3 = z.snr3, I2 = z.inr2, I3 = z.inr3;
    std::vector<GaussConstraint> cons = {
        {{1, 0, 0}, lg(S1)}, {{0, 1, 0}, lg(S2)}, {{0, 0, 1}, lg(S3)}};
    int reg;
    if (I2 >= S1 && I3 >= S2) reg = 1;
    else if (I2 >= S1) reg = 2;
    else if (I3 >= S2) reg = 3;
    else reg = 4;
    if (regime) *regime = reg;
    double pair12 = (reg <= 2) ? lg(S2 + I2) : lg(S1) + lg(S2 / (1 + I2));
    double pair23 = (reg == 1 || reg == 3) ? lg(S3 + I3) : lg(S2) + lg(S3 / (1 + I3));
    cons.push_back({{1, 1, 0}, pair12});
    cons.push_back({{0, 1, 1}, pair23});
    if (reg == 2) {
        if ((I2 + 1) * I3 <= S2)
            cons.push_back({{1, 1, 1}, lg(S3 / (1 + I3)) + lg(I2 + S2)});
        else
            cons.push_back({{1, 1, 1}, lg(I3 + S3) + lg(I2)});
    } else if (reg == 4) {
        if ((I2 + 1) * I3 <= S2)
            cons.push_back({{1, 1, 1}, lg(S1) + lg(S2 / (1 + I2)) + lg(S3 / (1 + I3))});
        else
            cons.push_back({{1, 1, 1}, lg(S1) + lg(I3 + S3)});
    }
    return cons;
}

// Maximum of R1+R2+R3 over the regime's constraint polytope, by enumerating
// basic solutions of constraint triples (the region is a bounded polytope in
// three rates).
inline GaussOuter zchain_gauss_outer(const ZChainGauss& z) {
    GaussOuter out;
    auto cons = zchain_gauss_constraints(z, &out.regime);
    for (int i = 0; i < 3; ++i) {
        GaussConstraint nn{{0, 0, 0}, 0};
        nn.coeff[i] = -1;
        cons.push_back(nn);
    }
    int m = static_cast<int>(cons.size());
    double best = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                const auto& A = cons[a].coeff;
                const auto& B = cons[b].coeff;
                const auto& C = cons[c].coeff;
                double det = A[0] * (B[1] * C[2] - B[2] * C[1]) -
                             A[1] * (B[0] * C[2] - B[2] * C[0]) +
                             A[2] * (B[0] * C[1] - B[1] * C[0]);
                if (std::fabs(det) < 1e-12) continue;
                double rhs[3] = {cons[a].rhs, cons[b].rhs, cons[c].rhs};
                double x[3];
                for (int k = 0; k < 3; ++k) {
                    std::array<std::array<double, 3>, 3> M = {A, B, C};
                    for (int r = 0; r < 3; ++r) M[r][k] = rhs[r];
                    double dk = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                                M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                                M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
                    x[k] = dk / det;
                }
                bool ok = x[0] > -1e-9 && x[1] > -1e-9 && x[2] > -1e-9;
                for (int k = 0; k < m && ok; ++k) {
                    double lhs = cons[k].coeff[0] * x[0] + cons[k].coeff[1] * x[1] +
                                 cons[k].coeff[2] * x[2];
                    if (lhs > cons[k].rhs + 1e-9) ok = false;
                }
                if (ok) best = std::max(best, x[0] + x[1] + x[2]);
            }
    out.sum = best;
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian achievability. The first user always sends at its full direct
// rate; the third treats the residual second-user signal as at most one
// extra noise unit (rate log2(1 + SNR3(1+INR3)/(1+2 INR3))); the second
// picks its codebooks from the applicable case below.
//
// Two printed formulas do not survive the sweep against the outer bound and
// the default path replaces them (strict = false):
//   * case A.2's total uses SNR3+INR3 ... the default uses the explicit
//     two-decoder rate for the second user instead of a total;
//   * the superposition cases H/I/J use INR2*INR3 where the common
//     codebook's received power at D_3 is concerned (printed: INR2^2).

struct GaussAchievable {
    double r1 = 0, r2 = 0, r3 = 0;
    std::string label;
    double sum() const { return r1 + r2 + r3; }
};

inline GaussAchievable zchain_gauss_achievable(const ZChainGauss& z, bool strict_printed = false) {
    const double S1 = z.snr1, S2 = z.snr2, S3 = z.snr3, I2 = z.inr2, I3 = z.inr3;
    auto pos = [](double x) { return x > 0 ? x : 0.0; };
    GaussAchievable out;
    out.r1 = lg(S1);
    out.r3 = lg(S3 * (1 + I3) / (1 + 2 * I3));

    // Split rate for a clean-after-cancellation channel of strength s2 at
    // D_2 with cross strength I3 at D_3: private power 1/(1+I3) stays under
    // the far receiver's noise floor, the rest rides a common codebook that
    // D_3 decodes and cancels.
    auto superposed_rate = [&](double s2) {
        double pp = 1.0 / (1 + I3);
        double pc = 1.0 - pp;
        double priv = lg(s2 * pp);
        double common = pos(std::min(lg(s2 * pc / (1 + s2 * pp)),
                                     lg(I3 * I3 * pp / (1 + S3 + I3 * pp))));
        return priv + common;
    };
    auto common_only_rate = [&](double s2) {
        return pos(std::min(lg(s2), lg(I3 / (1 + S3))));
    };

    double common_d3_cap = lg(I2 * (strict_printed ? I2 : I3) / (1 + 2 * I3 + S3 * (1 + I3)));

    if (I2 <= S1) {
        double s2p = S2 / (1 + I2);
        if (I3 <= s2p) {
            out.label = "A.1";
            if (strict_printed)
                out.r2 = pos(lg(s2p) + lg(S3 / (1 + I3)) - 2 - out.r3);
            else
                out.r2 = superposed_rate(s2p);
        } else {
            out.label = "A.2";
            if (strict_printed)
                out.r2 = pos(std::log2(1.0 + S3 * I3) - 2 - out.r3);
            else
                out.r2 = common_only_rate(s2p);
        }
    } else if (S1 <= I2 / (1 + S2)) {
        if (I3 <= S2) {
            out.label = "B.1";
            out.r2 = superposed_rate(S2);
        } else {
            out.label = "B.2";
            out.r2 = common_only_rate(S2);
        }
    } else if (S2 <= I2 && I3 <= S3) {
        out.label = "C";
        out.r2 = pos(std::min(lg(I2) - lg(S1), lg(S2 / (1 + I3))));
    } else if (S2 <= I2) {
        if (I3 >= S2) {
            out.label = "D.1";
            out.r2 = pos(std::min(lg(S2 + I2) - lg(S1), lg(I3 / (1 + S3))));
        } else if (S1 * (1 + S2 / (1 + I3)) <= I2) {
            out.label = "D.2";
            out.r2 = lg(S2 / (1 + I3));
        } else {
            out.label = "D.3";
            out.r2 = pos(std::log2(I2 / S1));
        }
    } else if (I3 <= S3) {
        if ((I2 + 1) * I3 <= S2) {
            out.label = "E";
            out.r2 = pos(lg(I2 + S2) - lg(I3) - lg(S1));
        } else if (S1 * (1 + S2 / (1 + I3)) >= I2) {
            out.label = "F";
            out.r2 = (I3 >= S2) ? 0.0 : pos(std::log2(I2 / S1));
        } else {
            out.label = "G";
            out.r2 = lg(S2 / (1 + I3));
        }
    } else {
        if ((I2 + 1) * I3 <= S2) {
            out.label = "H";
            double r2c = pos(common_d3_cap);
            double r2p = pos(lg(S2 / (1 + I3)) - lg(S1));
            out.r2 = r2c + r2p;
        } else if (S1 * (1 + S2 / (1 + I3)) >= I2) {
            out.label = "I";
            double r2c = pos(std::min(lg(S2 / (1 + I3)), common_d3_cap) - 1);
            double r2p = pos(std::log2(I2 / S1) - 1);
            out.r2 = r2c + r2p;
        } else if (I3 <= S2) {
            out.label = "J";
            double r2c = pos(std::min(lg(I3) - lg(S1), common_d3_cap) - 1);
            double r2p = lg(S2 / (1 + I3));
            out.r2 = r2c + r2p;
        } else {
            out.label = "K";
            out.r2 = lg(std::min({S2, I2 / (1 + S2), (S2 + I2 - S1) / (1 + S1)}));
        }
    }
    return out;
}

struct GaussGap {
    GaussOuter outer;
    GaussAchievable achievable;
    double gap = 0;
};

inline GaussGap zchain_gauss_gap(const ZChainGauss& z, bool strict_printed = false) {
    GaussGap g;
    g.outer = zchain_gauss_outer(z);
    g.achievable = zchain_gauss_achievable(z, strict_printed);
    g.gap = g.outer.sum - g.achievable.sum();
    return g;
}

} // namespace lvcap
