#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "protolab/de_bec.hpp"
#include "protolab/protograph.hpp"

namespace protolab {

// ---------------------------------------------------------------------------
// Bhattacharyya bound recursion
// ---------------------------------------------------------------------------

/// Per-edge Bhattacharyya bounds B_t(i), iterated as
///   B_{t+1}(i) = B_0 * prod_{j in E_v(e_i)} sum_{i' in E_c(e_j)} B_t(i').
/// Over the BEC with B_0 = eps this upper-bounds x_t(i) at every t.
struct BhattState {
    double b0 = 0;
    std::vector<double> b;
};

inline BhattState bhatt_init(const Protograph& p, double b0) {
    if (b0 < 0 || b0 > 1) throw std::invalid_argument("bhatt_init: B_0 outside [0,1]");
    return BhattState{b0, std::vector<double>(static_cast<size_t>(p.num_edges), b0)};
}

inline BhattState bhatt_step(const BhattState& s, const Protograph& p) {
    constexpr double kClamp = 1e6;  // bounds above 1 are already divergent
    BhattState out;
    out.b0 = s.b0;
    out.b.resize(p.num_edges);
    std::vector<double> sums(p.num_edges);
    for (int j = 0; j < p.num_edges; ++j) {
        double acc = 0;
        for (int i : p.ec[j]) acc += s.b[i];
        sums[j] = acc;
    }
    for (int i = 0; i < p.num_edges; ++i) {
        double prod = 1.0;
        for (int j : p.ev[i]) prod *= sums[j];
        out.b[i] = std::min(s.b0 * prod, kClamp);
    }
    return out;
}

/// Largest B_0 (to within resolution) for which the bound recursion collapses
/// to zero; a conservative proxy for the true threshold.
inline double bhatt_bound_threshold(const Protograph& p, double resolution = 1e-6) {
    if (resolution < 1e-6)
        throw std::invalid_argument("bhatt_bound_threshold: resolution must be >= 1e-6");
    auto converges = [&](double b0) {
        if (b0 == 0) return true;
        BhattState s = bhatt_init(p, b0);
        double prev_window = std::numeric_limits<double>::infinity();
        for (long t = 1; t <= 100000; ++t) {
            s = bhatt_step(s, p);
            double mx = 0;
            for (double v : s.b) mx = std::max(mx, v);
            if (mx < 1e-10) return true;
            if (mx > 1.0) return false;
            if (t % 100 == 0) {
                if ((prev_window - mx) / prev_window < 1e-12) return false;  // stalled
                prev_window = mx;
            }
        }
        return false;
    };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        if (converges(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Channel Bhattacharyya parameter of BIAWGN(+-1, sigma): exp(-1/(2 sigma^2)).
inline double awgn_b0(double sigma) {
    if (sigma <= 0) throw std::invalid_argument("awgn_b0: sigma must be positive");
    return std::exp(-1.0 / (2.0 * sigma * sigma));
}

// ---------------------------------------------------------------------------
// J-function (mutual information of a consistent Gaussian LLR message)
// ---------------------------------------------------------------------------

namespace detail {

// J(s) = 1 - E[ log2(1 + exp(-L)) ],  L ~ N(s^2/2, s^2).
// Tabulated on s in [0, 30] (step 1e-3) by Simpson quadrature over u ~ N(0,1);
// linear interpolation keeps error far below the 1e-4 contract.
struct JTable {
    static constexpr double kStep = 1e-3;
    static constexpr double kSigmaCap = 30.0;  // jinv cap as I -> 1
    std::vector<double> val;

    static double log2_1p_exp(double z) {
        constexpr double inv_ln2 = 1.4426950408889634;
        if (z > 36.0) return z * inv_ln2;
        if (z < -36.0) return std::exp(z) * inv_ln2;
        return std::log1p(std::exp(z)) * inv_ln2;
    }

    static double quad(double s) {
        if (s <= 0) return 0.0;
        constexpr int kIntervals = 512;  // Simpson over u in [-8, 8]
        constexpr double a = -8.0, b = 8.0;
        const double h = (b - a) / kIntervals;
        auto f = [&](double u) {
            double phi = std::exp(-0.5 * u * u) * 0.3989422804014327;
            return phi * log2_1p_exp(-0.5 * s * s - s * u);
        };
        double acc = f(a) + f(b);
        for (int k = 1; k < kIntervals; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
        double loss = acc * h / 3.0;
        return std::min(1.0, std::max(0.0, 1.0 - loss));
    }

    JTable() {
        int n = static_cast<int>(kSigmaCap / kStep) + 1;
        val.resize(n);
        for (int k = 0; k < n; ++k) val[k] = quad(k * kStep);
        for (int k = 1; k < n; ++k) val[k] = std::max(val[k], val[k - 1]);  // monotone
    }

    static const JTable& get() {
        static const JTable t;
        return t;
    }
};

}  // namespace detail

/// J: std-dev of a consistent Gaussian LLR -> mutual information in [0,1).
inline double jfun(double sigma_msg) {
    if (sigma_msg < 0) throw std::invalid_argument("jfun: sigma_msg must be >= 0");
    const auto& t = detail::JTable::get();
    double pos = sigma_msg / detail::JTable::kStep;
    auto n = t.val.size();
    if (pos >= static_cast<double>(n - 1)) return t.val.back();
    auto k = static_cast<size_t>(pos);
    double frac = pos - static_cast<double>(k);
    return t.val[k] + frac * (t.val[k + 1] - t.val[k]);
}

/// Numerical inverse of J; I >= J(30) returns the documented cap sigma = 30.
inline double jinv(double mutual_info) {
    if (mutual_info < 0 || mutual_info > 1) throw std::invalid_argument("jinv: I outside [0,1]");
    const auto& t = detail::JTable::get();
    if (mutual_info <= 0) return 0.0;
    if (mutual_info >= t.val.back()) return detail::JTable::kSigmaCap;
    // binary search for the cell, then invert the linear interpolant
    size_t lo = 0, hi = t.val.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (t.val[mid] < mutual_info)
            lo = mid;
        else
            hi = mid;
    }
    double j0 = t.val[lo], j1 = t.val[hi];
    double frac = j1 > j0 ? (mutual_info - j0) / (j1 - j0) : 0.0;
    return (static_cast<double>(lo) + frac) * detail::JTable::kStep;
}

// ---------------------------------------------------------------------------
// BIAWGN threshold via protograph EXIT
// ---------------------------------------------------------------------------

struct PexitOptions {
    int max_iters = 1000;
    double target = 1.0 - 1e-6;  // required APP mutual information
};

/// Runs protograph EXIT at channel LLR variance sigma_ch^2 and reports whether
/// every bit's APP mutual information reaches the target.
inline bool pexit_converges(const Protograph& p, double sigma_ch2, PexitOptions opt = {}) {
    std::vector<double> iev(p.num_edges, 0.0), iec(p.num_edges, 0.0);
    double prev_min_app = 0.0;
    int flat_iters = 0;
    for (int it = 0; it < opt.max_iters; ++it) {
        for (int j = 0; j < p.num_edges; ++j) {
            double s = 0;
            for (int i : p.ec[j]) {
                double g = jinv(1.0 - iev[i]);
                s += g * g;
            }
            iec[j] = 1.0 - jfun(std::sqrt(s));
        }
        for (int i = 0; i < p.num_edges; ++i) {
            double s = sigma_ch2;
            for (int j : p.ev[i]) {
                double g = jinv(iec[j]);
                s += g * g;
            }
            iev[i] = jfun(std::sqrt(s));
        }
        double min_app = 1.0;
        for (int v = 0; v < p.num_vars; ++v) {
            double s = sigma_ch2;
            for (int e : p.var_edges[v]) {
                double g = jinv(iec[e]);
                s += g * g;
            }
            min_app = std::min(min_app, jfun(std::sqrt(s)));
        }
        if (min_app >= opt.target) return true;
        // fixed point below target: the iteration is monotone, so a flat
        // stretch cannot recover
        if (min_app - prev_min_app < 1e-12) {
            if (++flat_iters >= 50) return false;
        } else {
            flat_iters = 0;
        }
        prev_min_app = min_app;
    }
    return false;
}

/// Threshold of the BIAWGN channel. snr_db is 10*log10(1/sigma^2), the
/// convention of the comparison tables; ebn0_db = snr_db - 10*log10(2R).
/// The channel LLR variance satisfies sigma_ch^2 = 8*R*10^(ebn0_db/10).
struct AwgnThreshold {
    double snr_db = 0;
    double ebn0_db = 0;
};

inline AwgnThreshold awgn_threshold(const Protograph& p, double resolution_db = 0.01,
                                    PexitOptions opt = {}, double lo_db = -6.0, double hi_db = 14.0) {
    if (resolution_db < 0.005)
        throw std::invalid_argument("awgn_threshold: resolution_db must be >= 0.005");
    Rational rate = design_rate(p);
    if (rate.num <= 0) throw std::invalid_argument("awgn_threshold: design rate must be positive");
    double r = rate.value();
    auto ok = [&](double ebn0_db) {
        double sigma_ch2 = 8.0 * r * std::pow(10.0, ebn0_db / 10.0);
        return pexit_converges(p, sigma_ch2, opt);
    };
    if (!ok(hi_db)) throw std::runtime_error("awgn_threshold: no convergence inside search range");
    double lo = lo_db, hi = hi_db;
    while (hi - lo > resolution_db) {
        double mid = 0.5 * (lo + hi);
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    AwgnThreshold th;
    th.ebn0_db = 0.5 * (lo + hi);
    th.snr_db = th.ebn0_db + 10.0 * std::log10(2.0 * r);
    return th;
}

/// Capacity-achieving SNR (10*log10(1/sigma^2)) for the supported rates.
inline std::optional<double> capacity_snr_db(const Rational& rate) {
    if (rate == Rational(1, 2)) return 0.187;
    if (rate == Rational(2, 3)) return 2.308;
    if (rate == Rational(3, 4)) return 3.387;
    return std::nullopt;
}

}  // namespace protolab
