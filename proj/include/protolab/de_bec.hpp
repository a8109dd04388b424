#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "protolab/protograph.hpp"

namespace protolab {

/// One density-evolution step:
///   y(j)  = 1 - prod_{i in E_c(e_j)} (1 - x(i))
///   x'(i) = eps * prod_{j in E_v(e_i)} y(j)
/// Empty products equal 1 (degree-1 conventions).
struct DeStepResult {
    std::vector<double> y;
    std::vector<double> x;
};

inline DeStepResult de_step(const std::vector<double>& x, double eps, const Protograph& p) {
    if (static_cast<int>(x.size()) != p.num_edges)
        throw std::invalid_argument("de_step: x size does not match protograph edge count");
    DeStepResult r;
    r.y.resize(p.num_edges);
    r.x.resize(p.num_edges);
    for (int j = 0; j < p.num_edges; ++j) {
        double prod = 1.0;
        for (int i : p.ec[j]) prod *= 1.0 - x[i];
        r.y[j] = 1.0 - prod;
    }
    for (int i = 0; i < p.num_edges; ++i) {
        double prod = 1.0;
        for (int j : p.ev[i]) prod *= r.y[j];
        r.x[i] = eps * prod;
    }
    return r;
}

enum class DeVerdict { Converged, Stalled, MaxIters };

inline const char* to_string(DeVerdict v) {
    switch (v) {
        case DeVerdict::Converged: return "converged";
        case DeVerdict::Stalled: return "stalled";
        default: return "max_iters";
    }
}

struct DeOptions {
    double delta_conv = 1e-10;  // converged once xbar_t drops below this
    long t_max = 100000;
    bool record_vectors = false;  // keep per-iteration x,y (memory-heavy)
    // Below this xbar the recursion runs in the log domain. The naive product
    // form loses y entirely once x < ~1e-17, and prod(y) over high-degree bits
    // flushes to zero much earlier, so the switch happens while everything is
    // still comfortably representable.
    double log_switch = 1e-6;
};

struct DeTrace {
    double epsilon = 0;
    DeVerdict verdict = DeVerdict::MaxIters;
    long iterations = 0;  // last recorded t
    std::vector<double> xbar;          // xbar_t, 0 if it underflowed
    std::vector<double> neg_log_xbar;  // -ln(xbar_t); +inf when xbar_t == 0
    std::vector<std::vector<double>> x_hist, y_hist;  // only if record_vectors
};

namespace detail {

// log-domain step on L(i) = ln x(i); check side is a logsumexp since
// 1 - prod(1 - x) -> sum x as x -> 0 (relative error O(xbar), irrelevant below 1e-6)
inline void de_step_log(const std::vector<double>& lx, double log_eps, const Protograph& p,
                        std::vector<double>& ly, std::vector<double>& lx_next) {
    const double ninf = -std::numeric_limits<double>::infinity();
    ly.assign(p.num_edges, ninf);
    for (int j = 0; j < p.num_edges; ++j) {
        double mx = ninf;
        for (int i : p.ec[j]) mx = std::max(mx, lx[i]);
        if (mx == ninf) continue;  // empty or all-zero: y = 0
        double s = 0.0;
        for (int i : p.ec[j]) s += std::exp(lx[i] - mx);
        ly[j] = mx + std::log(s);
    }
    lx_next.assign(p.num_edges, log_eps);
    for (int i = 0; i < p.num_edges; ++i)
        for (int j : p.ev[i]) lx_next[i] += ly[j];
}

}  // namespace detail

/// Iterates protograph density evolution from x_0(i) = eps.
inline DeTrace run_de(const Protograph& p, double eps, DeOptions opt = {}) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("run_de: eps outside [0,1]");
    if (opt.t_max < 1) throw std::invalid_argument("run_de: t_max must be >= 1");
    DeTrace tr;
    tr.epsilon = eps;

    const double inf = std::numeric_limits<double>::infinity();
    auto record = [&](double xb, double neg) {
        tr.xbar.push_back(xb);
        tr.neg_log_xbar.push_back(neg);
    };

    std::vector<double> x(p.num_edges, eps);
    std::vector<double> lx, ly, lx_next;
    bool log_mode = false;
    double xbar = eps;
    double neg = eps > 0 ? -std::log(eps) : inf;
    record(xbar, neg);
    if (opt.record_vectors) tr.x_hist.push_back(x);

    if (xbar < opt.delta_conv) {
        tr.verdict = DeVerdict::Converged;
        return tr;
    }

    const double log_delta = opt.delta_conv > 0 ? std::log(opt.delta_conv) : -inf;
    for (long t = 1; t <= opt.t_max; ++t) {
        if (!log_mode && xbar < opt.log_switch && eps > 0) {
            log_mode = true;
            lx.resize(p.num_edges);
            for (int i = 0; i < p.num_edges; ++i)
                lx[i] = x[i] > 0 ? std::log(x[i]) : -inf;
        }
        if (!log_mode) {
            auto r = de_step(x, eps, p);
            x = std::move(r.x);
            xbar = 0;
            for (double v : x) xbar = std::max(xbar, v);
            neg = xbar > 0 ? -std::log(xbar) : inf;
            if (opt.record_vectors) {
                tr.y_hist.push_back(std::move(r.y));
                tr.x_hist.push_back(x);
            }
        } else {
            detail::de_step_log(lx, std::log(eps), p, ly, lx_next);
            lx.swap(lx_next);
            double mx = -inf;
            for (double v : lx) mx = std::max(mx, v);
            neg = -mx;
            xbar = std::exp(mx);  // may underflow to 0; neg_log carries the value
            if (opt.record_vectors) {
                std::vector<double> xe(p.num_edges), ye(p.num_edges);
                for (int i = 0; i < p.num_edges; ++i) xe[i] = std::exp(lx[i]);
                for (int j = 0; j < p.num_edges; ++j) ye[j] = std::exp(ly[j]);
                tr.y_hist.push_back(std::move(ye));
                tr.x_hist.push_back(std::move(xe));
            }
        }
        record(xbar, neg);
        tr.iterations = t;

        bool conv = log_mode ? (-neg < log_delta) : (xbar < opt.delta_conv);
        if (conv) {
            tr.verdict = DeVerdict::Converged;
            return tr;
        }
        // stalled: relative decrease of xbar over a 100-iteration window < 1e-12
        if (t >= 100) {
            double d = tr.neg_log_xbar[t] - tr.neg_log_xbar[t - 100];
            if (-std::expm1(-d) < 1e-12) {
                tr.verdict = DeVerdict::Stalled;
                return tr;
            }
        }
    }
    tr.verdict = DeVerdict::MaxIters;
    return tr;
}

/// Threshold eps_th = sup{eps : max_i x_t(i) -> 0} by bisection; valid
/// because the recursion is monotone in eps. Returns the midpoint of the
/// final bracket, whose width is <= resolution.
inline double bec_threshold(const Protograph& p, double resolution = 1e-7, DeOptions opt = {}) {
    if (resolution < 1e-7) throw std::invalid_argument("bec_threshold: resolution must be >= 1e-7");
    opt.record_vectors = false;  // probes only need the verdict
    double lo = 0.0, hi = 1.0;
    while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        if (run_de(p, mid, opt).verdict == DeVerdict::Converged)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Least-squares slope of log2(-ln xbar_t) versus t over the tail region
/// (xbar_t < 1e-3). A positive slope certifies empirical super-exponential
/// decay; doubling (alpha-hat near 1/( |v_2|+1 ) per step group) is the
/// double-exponential signature.
inline double decay_diagnostic(const DeTrace& tr) {
    std::vector<std::pair<double, double>> pts;  // (t, log2(-ln xbar))
    for (size_t t = 0; t < tr.neg_log_xbar.size(); ++t) {
        double nl = tr.neg_log_xbar[t];
        if (!std::isfinite(nl)) break;  // underflow/exact zero ends the window
        if (nl > 6.907755278982137)     // xbar < 1e-3
            pts.push_back({static_cast<double>(t), std::log2(nl)});
    }
    if (pts.size() < 10) throw std::invalid_argument("decay_diagnostic: insufficient tail data");
    double n = static_cast<double>(pts.size());
    double st = 0, sz = 0, stt = 0, stz = 0;
    for (auto [t, z] : pts) {
        st += t;
        sz += z;
        stt += t * t;
        stz += t * z;
    }
    return (n * stz - st * sz) / (n * stt - st * st);
}

/// P_B(n) <= min(1, n * xbar): union bound on block error over n bits.
inline double union_bound_block_error(std::uint64_t n, double xbar) {
    if (n < 1) throw std::invalid_argument("union_bound_block_error: n >= 1");
    if (xbar < 0 || xbar > 1) throw std::invalid_argument("union_bound_block_error: xbar outside [0,1]");
    double b = static_cast<double>(n) * xbar;
    return b > 1.0 ? 1.0 : b;
}

}  // namespace protolab
