#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "protolab/lift.hpp"
#include "protolab/rational.hpp"
#include "protolab/rng.hpp"

namespace protolab {

/// Parity-check structure of a lifted code. Simple by construction: parallel
/// edges would cancel over GF(2), so from_lift rejects them.
struct SparseCode {
    std::int64_t n = 0;  // bits
    std::int64_t m = 0;  // checks
    std::vector<std::vector<std::int32_t>> bit_checks;
    std::vector<std::vector<std::int32_t>> check_bits;

    Rational design_rate() const { return Rational(n - m, n); }

    static SparseCode from_lift(const LiftedGraph& lg) {
        if (auto w = lg.parallel_witness())
            throw std::invalid_argument("SparseCode: lift has parallel edges (types " +
                                        std::to_string(w->type_a + 1) + "," +
                                        std::to_string(w->type_b + 1) + " at copy " +
                                        std::to_string(w->copy + 1) + ")");
        SparseCode c;
        c.n = lg.blocklength();
        c.m = lg.check_count();
        c.bit_checks = lg.expand_bit_adj();
        c.check_bits.resize(c.m);
        for (std::int64_t v = 0; v < c.n; ++v)
            for (auto ch : c.bit_checks[v]) c.check_bits[ch].push_back(static_cast<std::int32_t>(v));
        return c;
    }

    static SparseCode read_alist(std::istream& is) {
        SparseCode c;
        std::int64_t dbit, dchk;
        if (!(is >> c.n >> c.m >> dbit >> dchk)) throw std::runtime_error("alist: bad header");
        std::vector<std::int64_t> bdeg(c.n), cdeg(c.m);
        for (auto& d : bdeg)
            if (!(is >> d)) throw std::runtime_error("alist: truncated bit degrees");
        for (auto& d : cdeg)
            if (!(is >> d)) throw std::runtime_error("alist: truncated check degrees");
        c.bit_checks.resize(c.n);
        c.check_bits.resize(c.m);
        for (std::int64_t v = 0; v < c.n; ++v)
            for (std::int64_t k = 0; k < dbit; ++k) {
                std::int64_t x;
                if (!(is >> x)) {
                    if (k < bdeg[v]) throw std::runtime_error("alist: truncated bit lists");
                    break;
                }
                if (x > 0) c.bit_checks[v].push_back(static_cast<std::int32_t>(x - 1));
            }
        for (std::int64_t ch = 0; ch < c.m; ++ch)
            for (std::int64_t k = 0; k < dchk; ++k) {
                std::int64_t x;
                if (!(is >> x)) {
                    if (k < cdeg[ch]) throw std::runtime_error("alist: truncated check lists");
                    break;
                }
                if (x > 0) c.check_bits[ch].push_back(static_cast<std::int32_t>(x - 1));
            }
        for (std::int64_t v = 0; v < c.n; ++v)
            if (static_cast<std::int64_t>(c.bit_checks[v].size()) != bdeg[v])
                throw std::runtime_error("alist: bit degree mismatch");
        for (std::int64_t ch = 0; ch < c.m; ++ch)
            if (static_cast<std::int64_t>(c.check_bits[ch].size()) != cdeg[ch])
                throw std::runtime_error("alist: check degree mismatch");
        return c;
    }
};

// ---------------------------------------------------------------------------
// Decoders
// ---------------------------------------------------------------------------

struct PeelResult {
    std::vector<std::int32_t> residual;  // unresolved erasures, sorted; empty = success
    int rounds = 0;
};

/// BEC peeling: any check with exactly one erased neighbor resolves it.
/// Worklist by frontier levels; the fixed point is unique, so the result is
/// independent of processing order.
inline PeelResult bec_decode(const SparseCode& code, const std::vector<std::int32_t>& erased,
                             int max_rounds = 200) {
    if (max_rounds < 1) throw std::invalid_argument("bec_decode: max_rounds >= 1");
    std::vector<char> is_erased(code.n, 0);
    for (auto v : erased) {
        if (v < 0 || v >= code.n) throw std::invalid_argument("bec_decode: erased index out of range");
        is_erased[v] = 1;
    }
    std::vector<std::int32_t> cnt(code.m, 0);
    std::vector<std::int32_t> frontier, next;
    for (std::int64_t ch = 0; ch < code.m; ++ch) {
        for (auto v : code.check_bits[ch]) cnt[ch] += is_erased[v];
        if (cnt[ch] == 1) frontier.push_back(static_cast<std::int32_t>(ch));
    }
    PeelResult res;
    while (!frontier.empty() && res.rounds < max_rounds) {
        ++res.rounds;
        next.clear();
        for (auto ch : frontier) {
            if (cnt[ch] != 1) continue;  // may have been resolved this round
            std::int32_t hit = -1;
            for (auto v : code.check_bits[ch])
                if (is_erased[v]) {
                    hit = v;
                    break;
                }
            if (hit < 0) continue;
            is_erased[hit] = 0;
            for (auto ch2 : code.bit_checks[hit]) {
                if (--cnt[ch2] == 1) next.push_back(ch2);
            }
        }
        frontier.swap(next);
    }
    for (std::int64_t v = 0; v < code.n; ++v)
        if (is_erased[v]) res.residual.push_back(static_cast<std::int32_t>(v));
    return res;
}

struct BpResult {
    std::vector<std::uint8_t> hard;
    bool converged = false;
    int iterations = 0;
};

/// Flooding sum-product over BIAWGN LLRs. Check update is the tanh rule with
/// inputs clamped to +-30; stops early once the hard decisions satisfy every
/// check. Non-convergence is an outcome, not an error.
inline BpResult awgn_decode(const SparseCode& code, const std::vector<double>& llr_ch,
                            int max_iter = 100) {
    if (static_cast<std::int64_t>(llr_ch.size()) != code.n)
        throw std::invalid_argument("awgn_decode: llr size mismatch");
    if (max_iter < 1) throw std::invalid_argument("awgn_decode: max_iter >= 1");
    constexpr double kClamp = 30.0;

    // edge arrays in check-major order
    std::vector<std::int64_t> coff(code.m + 1, 0);
    for (std::int64_t ch = 0; ch < code.m; ++ch)
        coff[ch + 1] = coff[ch] + static_cast<std::int64_t>(code.check_bits[ch].size());
    std::int64_t ne = coff[code.m];
    std::vector<std::int32_t> ebit(ne);
    std::vector<std::vector<std::int64_t>> bit_edges(code.n);
    for (std::int64_t ch = 0; ch < code.m; ++ch)
        for (size_t k = 0; k < code.check_bits[ch].size(); ++k) {
            std::int64_t e = coff[ch] + static_cast<std::int64_t>(k);
            ebit[e] = code.check_bits[ch][k];
            bit_edges[code.check_bits[ch][k]].push_back(e);
        }

    std::vector<double> m_vc(ne), m_cv(ne, 0.0);
    for (std::int64_t e = 0; e < ne; ++e) m_vc[e] = llr_ch[ebit[e]];

    BpResult res;
    res.hard.assign(code.n, 0);
    auto decide_and_check = [&]() {
        for (std::int64_t v = 0; v < code.n; ++v) {
            double s = llr_ch[v];
            for (auto e : bit_edges[v]) s += m_cv[e];
            res.hard[v] = s < 0 ? 1 : 0;
        }
        for (std::int64_t ch = 0; ch < code.m; ++ch) {
            int par = 0;
            for (auto v : code.check_bits[ch]) par ^= res.hard[v];
            if (par) return false;
        }
        return true;
    };

    if (decide_and_check()) {
        res.converged = true;
        return res;  // iteration 0
    }
    std::vector<double> tnh;
    for (int it = 1; it <= max_iter; ++it) {
        // check pass
        for (std::int64_t ch = 0; ch < code.m; ++ch) {
            std::int64_t lo = coff[ch], hi = coff[ch + 1];
            tnh.resize(hi - lo);
            double prod = 1.0;
            for (std::int64_t e = lo; e < hi; ++e) {
                double x = std::clamp(m_vc[e], -kClamp, kClamp);
                tnh[e - lo] = std::tanh(0.5 * x);
                prod *= tnh[e - lo];
            }
            for (std::int64_t e = lo; e < hi; ++e) {
                double t = tnh[e - lo];
                double others;
                if (t != 0.0) {
                    others = prod / t;
                } else {
                    others = 1.0;
                    for (std::int64_t e2 = lo; e2 < hi; ++e2)
                        if (e2 != e) others *= tnh[e2 - lo];
                }
                others = std::clamp(others, -0.9999999999999998, 0.9999999999999998);
                m_cv[e] = 2.0 * std::atanh(others);
            }
        }
        // bit pass
        for (std::int64_t v = 0; v < code.n; ++v) {
            double total = llr_ch[v];
            for (auto e : bit_edges[v]) total += m_cv[e];
            for (auto e : bit_edges[v]) m_vc[e] = total - m_cv[e];
        }
        res.iterations = it;
        if (decide_and_check()) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Monte-Carlo harness
// ---------------------------------------------------------------------------

struct Channel {
    enum Kind { Bec, Biawgn } kind = Bec;
    double param = 0;  // erasure probability, or Eb/N0 in dB
};

struct StopRule {
    std::uint64_t max_frames = 1000000;
    std::uint64_t min_frame_errors = 100;
};

struct SimResult {
    double channel_param = 0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0, fer = 0;
    double ber_ci95 = 0, fer_ci95 = 0;  // normal-approximation half-widths
    std::uint64_t seed = 0;
    int max_iter = 0;
    bool ci_reliable = true;  // false below 20 frame errors
};

namespace detail {

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
};

inline FrameOutcome run_frame(const SparseCode& code, const Channel& ch, double sigma,
                              std::uint64_t seed, std::uint64_t frame, int max_iter) {
    SplitMix64 rng(mix_seed(seed, frame));
    FrameOutcome out;
    if (ch.kind == Channel::Bec) {
        std::vector<std::int32_t> erased;
        for (std::int64_t v = 0; v < code.n; ++v)
            if (rng.uniform() < ch.param) erased.push_back(static_cast<std::int32_t>(v));
        auto r = bec_decode(code, erased, max_iter);
        out.bit_errors = r.residual.size();
        out.frame_error = !r.residual.empty();
    } else {
        // all-(+1) transmission; LLR = 2y/sigma^2
        std::vector<double> llr(code.n);
        double scale = 2.0 / (sigma * sigma);
        for (std::int64_t v = 0; v < code.n; ++v) llr[v] = scale * (1.0 + sigma * rng.normal());
        auto r = awgn_decode(code, llr, max_iter);
        for (auto b : r.hard) out.bit_errors += b;
        out.frame_error = out.bit_errors > 0;
    }
    return out;
}

}  // namespace detail

/// Frame-parallel Monte-Carlo with per-frame RNG streams keyed by
/// (seed, frame index): results are identical for any worker count. The stop
/// rule is evaluated at fixed chunk boundaries.
inline SimResult simulate(const SparseCode& code, Channel ch, std::uint64_t seed, StopRule stop,
                          int max_iter = 0, int threads = 1) {
    if (stop.max_frames < 1 || stop.min_frame_errors < 1)
        throw std::invalid_argument("simulate: stop rule must be positive");
    if (max_iter <= 0) max_iter = ch.kind == Channel::Bec ? 200 : 100;
    if (threads < 1) threads = 1;
    double sigma = 0;
    if (ch.kind == Channel::Bec) {
        if (ch.param < 0 || ch.param > 1) throw std::invalid_argument("simulate: epsilon outside [0,1]");
    } else {
        double r = code.design_rate().value();
        if (r <= 0) throw std::invalid_argument("simulate: nonpositive design rate");
        sigma = std::sqrt(1.0 / (2.0 * r * std::pow(10.0, ch.param / 10.0)));
    }

    constexpr std::uint64_t kChunk = 1024;
    SimResult res;
    res.channel_param = ch.param;
    res.seed = seed;
    res.max_iter = max_iter;

    std::uint64_t frame = 0;
    std::vector<detail::FrameOutcome> outcomes;
    while (frame < stop.max_frames) {
        std::uint64_t batch = std::min<std::uint64_t>(kChunk, stop.max_frames - frame);
        outcomes.assign(batch, {});
        if (threads == 1) {
            for (std::uint64_t k = 0; k < batch; ++k)
                outcomes[k] = detail::run_frame(code, ch, sigma, seed, frame + k, max_iter);
        } else {
            std::vector<std::thread> pool;
            std::uint64_t per = (batch + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                std::uint64_t lo = w * per, hi = std::min(batch, lo + per);
                if (lo >= hi) break;
                pool.emplace_back([&, lo, hi]() {
                    for (std::uint64_t k = lo; k < hi; ++k)
                        outcomes[k] = detail::run_frame(code, ch, sigma, seed, frame + k, max_iter);
                });
            }
            for (auto& t : pool) t.join();
        }
        for (const auto& o : outcomes) {
            res.bit_errors += o.bit_errors;
            res.frame_errors += o.frame_error;
        }
        frame += batch;
        res.frames = frame;
        if (res.frame_errors >= stop.min_frame_errors) break;
    }

    double nf = static_cast<double>(res.frames);
    res.fer = static_cast<double>(res.frame_errors) / nf;
    res.ber = static_cast<double>(res.bit_errors) / (nf * static_cast<double>(code.n));
    res.fer_ci95 = 1.96 * std::sqrt(std::max(0.0, res.fer * (1.0 - res.fer) / nf));
    res.ber_ci95 = 1.96 * std::sqrt(std::max(0.0, res.ber * (1.0 - res.ber) / (nf * static_cast<double>(code.n))));
    res.ci_reliable = res.frame_errors >= 20;
    return res;
}

inline void write_sim_csv_header(std::ostream& os) {
    os << "channel_param,frames,bit_errors,frame_errors,ber,fer,ber_ci,fer_ci,seed\n";
}

inline void write_sim_csv_row(std::ostream& os, const SimResult& r) {
    os << r.channel_param << ',' << r.frames << ',' << r.bit_errors << ',' << r.frame_errors << ','
       << r.ber << ',' << r.fer << ',' << r.ber_ci95 << ',' << r.fer_ci95 << ',' << r.seed << '\n';
}

}  // namespace protolab
