#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "protolab/de_bec.hpp"
#include "protolab/de_bms.hpp"
#include "protolab/protograph.hpp"
#include "protolab/rng.hpp"

namespace protolab {

struct DeOptConfig {
    int rows = 0;
    int cols = 0;
    int population = 0;          // 0 -> 10 * rows * cols
    double crossover_prob = 0.88;
    double scale = 0.5;
    int max_generations = 100;
    int entry_cap = 9;
    enum Objective { Bec, Awgn } objective = Bec;
    std::uint64_t seed = 1;
    bool tree_only = false;   // only the degree-2-forest condition, no attachment repair
    int threads = 1;
    // fitness-evaluation DE settings (cheaper than reporting runs)
    double fitness_resolution = 1e-3;
    long fitness_t_max = 5000;
    double fitness_delta = 1e-8;
    double awgn_resolution_db = 0.05;

    int pop_size() const { return population > 0 ? population : 10 * rows * cols; }
    void validate() const {
        if (rows < 1 || cols < 1) throw std::invalid_argument("optimizer: bad shape");
        if (pop_size() < 4) throw std::invalid_argument("optimizer: population must be >= 4");
        if (crossover_prob < 0 || crossover_prob > 1)
            throw std::invalid_argument("optimizer: p_c outside [0,1]");
        if (entry_cap < 1) throw std::invalid_argument("optimizer: entry cap must be >= 1");
    }
};

struct Candidate {
    BaseMatrix matrix;
    double fitness = -std::numeric_limits<double>::infinity();
};

struct OptTracePoint {
    int generation = 0;
    double best = 0;
    double mean = 0;
};

struct OptResult {
    Candidate best;
    std::vector<OptTracePoint> trace;
};

/// Structural constraints every population member must satisfy.
inline bool candidate_ok(const BaseMatrix& b, bool tree_only = false) {
    for (int r = 0; r < b.rows; ++r)
        if (b.row_sum(r) == 0) return false;
    if (!b.design_ok()) return false;
    auto rep = check_decay_conditions(build_protograph(b));
    if (!rep.deg2_cycle_free) return false;
    if (!tree_only && !rep.every_deg2_touches_deg3plus) return false;
    return true;
}

/// Entrywise |r1 + scale*(r2 - r3)| rounded to nearest integer, ties away
/// from zero, clamped to the entry cap.
inline BaseMatrix mutate(const BaseMatrix& r1, const BaseMatrix& r2, const BaseMatrix& r3,
                         double scale = 0.5, int entry_cap = 9) {
    if (r1.rows != r2.rows || r1.rows != r3.rows || r1.cols != r2.cols || r1.cols != r3.cols)
        throw std::invalid_argument("mutate: shape mismatch");
    BaseMatrix m(r1.rows, r1.cols);
    for (size_t k = 0; k < m.entries.size(); ++k) {
        double x = std::fabs(r1.entries[k] + scale * (r2.entries[k] - r3.entries[k]));
        long v = std::lround(x);  // lround ties away from zero
        m.entries[k] = static_cast<int>(std::min<long>(v, entry_cap));
    }
    return m;
}

namespace detail {

// One randomized repair pass; returns true when b already satisfies
// everything. Cycle repair prefers moving one of the offending column's two
// edges to a different row; once `escalate` is set (moves have stalled, or a
// move is impossible) it adds an edge to the column instead, lifting it out
// of the degree-2 subgraph entirely.
inline bool repair_pass(BaseMatrix& b, SplitMix64& rng, int entry_cap, bool tree_only,
                        bool escalate) {
    // zero rows
    for (int r = 0; r < b.rows; ++r)
        if (b.row_sum(r) == 0) {
            int c = static_cast<int>(rng.below(b.cols));
            if (b.at(r, c) < entry_cap) ++b.at(r, c);
            return false;
        }
    // column sums below 2
    for (int c = 0; c < b.cols; ++c)
        if (b.col_sum(c) < 2) {
            int r = static_cast<int>(rng.below(b.rows));
            if (b.at(r, c) < entry_cap) ++b.at(r, c);
            return false;
        }
    auto p = build_protograph(b);
    auto rep = check_decay_conditions(p);
    if (!rep.deg2_cycle_free) {
        int e = rep.cycle_witness_edges[static_cast<size_t>(rng.below(rep.cycle_witness_edges.size()))];
        int c = p.edge_var[e];
        int r_old = p.edge_chk[e];
        if (!escalate && b.rows > 1) {
            int r_new = (r_old + 1 + static_cast<int>(rng.below(b.rows - 1))) % b.rows;
            if (b.at(r_new, c) < entry_cap) {
                --b.at(r_old, c);
                ++b.at(r_new, c);
                return false;
            }
        }
        int r_add = static_cast<int>(rng.below(b.rows));
        if (b.at(r_add, c) < entry_cap) ++b.at(r_add, c);
        return false;
    }
    if (!tree_only && !rep.every_deg2_touches_deg3plus) {
        // add one edge from a degree >= 3 column into a check adjacent to the
        // offending degree-2 bit (creating such a column if none exists)
        int v2 = rep.unattached_witness;
        int r = p.edge_chk[p.var_edges[v2][static_cast<size_t>(rng.below(2))]];
        std::vector<int> candidates;
        for (int c = 0; c < b.cols; ++c)
            if (c != v2 && b.col_sum(c) >= 3 && b.at(r, c) < entry_cap) candidates.push_back(c);
        if (candidates.empty()) {
            for (int c = 0; c < b.cols; ++c)
                if (c != v2 && b.at(r, c) < entry_cap) candidates.push_back(c);
        }
        if (candidates.empty()) return false;
        ++b.at(r, candidates[static_cast<size_t>(rng.below(candidates.size()))]);
        return false;
    }
    return true;
}

inline std::optional<BaseMatrix> repair(BaseMatrix b, SplitMix64& rng, int entry_cap,
                                        bool tree_only, int max_rounds = 100) {
    for (int round = 0; round < max_rounds; ++round)
        if (repair_pass(b, rng, entry_cap, tree_only, round >= max_rounds / 2)) return b;
    return std::nullopt;
}

inline std::string matrix_key(const BaseMatrix& b) {
    std::string k = std::to_string(b.rows) + "x" + std::to_string(b.cols) + ":";
    for (int v : b.entries) {
        k += static_cast<char>('0' + v % 10);
        if (v >= 10) k += '+';
    }
    return k;
}

}  // namespace detail

/// Crossover (each entry from the mutant with probability p_c) followed by
/// the randomized repair loop; nullopt means rejection (the target survives).
inline std::optional<BaseMatrix> crossover_and_repair(const BaseMatrix& target,
                                                      const BaseMatrix& mutant, double p_c,
                                                      SplitMix64& rng, int entry_cap = 9,
                                                      bool tree_only = false) {
    if (target.rows != mutant.rows || target.cols != mutant.cols)
        throw std::invalid_argument("crossover: shape mismatch");
    BaseMatrix b(target.rows, target.cols);
    for (size_t k = 0; k < b.entries.size(); ++k)
        b.entries[k] = rng.uniform() < p_c ? mutant.entries[k] : target.entries[k];
    return detail::repair(std::move(b), rng, entry_cap, tree_only);
}

/// Larger fitness wins; ties keep the incumbent.
inline const Candidate& select(const Candidate& old_c, const Candidate& new_c) {
    return new_c.fitness > old_c.fitness ? new_c : old_c;
}

class FitnessCache {
  public:
    double evaluate(const BaseMatrix& b, const DeOptConfig& cfg) {
        std::string key = detail::matrix_key(b);
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        double fit;
        auto p = build_protograph(b);
        if (cfg.objective == DeOptConfig::Bec) {
            DeOptions opt;
            opt.delta_conv = cfg.fitness_delta;
            opt.t_max = cfg.fitness_t_max;
            fit = bec_threshold(p, std::max(cfg.fitness_resolution, 1e-7), opt);
        } else {
            fit = -awgn_threshold(p, std::max(cfg.awgn_resolution_db, 0.005)).snr_db;
        }
        std::lock_guard<std::mutex> lk(mu_);
        cache_[key] = fit;
        return fit;
    }

  private:
    std::mutex mu_;
    std::unordered_map<std::string, double> cache_;
};

/// Population of i.i.d. uniform {0,1} matrices, each repaired to validity;
/// deterministic given the seed.
inline std::vector<BaseMatrix> init_population(const DeOptConfig& cfg) {
    cfg.validate();
    std::vector<BaseMatrix> pop;
    pop.reserve(cfg.pop_size());
    constexpr std::uint64_t kInitTag = 0x696e6974ULL;  // distinct from generation indices
    for (int k = 0; k < cfg.pop_size(); ++k) {
        SplitMix64 rng(mix_seed(cfg.seed, kInitTag, static_cast<std::uint64_t>(k)));
        std::optional<BaseMatrix> cand;
        for (int attempt = 0; attempt < 100 && !cand; ++attempt) {
            BaseMatrix b(cfg.rows, cfg.cols);
            for (auto& e : b.entries) e = rng.next() & 1;
            cand = detail::repair(std::move(b), rng, cfg.entry_cap, cfg.tree_only);
        }
        if (!cand) throw std::runtime_error("init_population: repair failed repeatedly");
        pop.push_back(std::move(*cand));
    }
    return pop;
}

/// Full differential-evolution loop. Fitness evaluations are pure and run in
/// parallel; all random draws come from per-(generation, index) streams, so
/// the result is bit-identical for any thread count.
inline OptResult optimize(const DeOptConfig& cfg) {
    cfg.validate();
    const int np = cfg.pop_size();
    FitnessCache cache;

    auto eval_all = [&](const std::vector<const BaseMatrix*>& ms, std::vector<double>& out) {
        out.assign(ms.size(), 0.0);
        int nt = std::max(1, cfg.threads);
        if (nt == 1) {
            for (size_t i = 0; i < ms.size(); ++i)
                out[i] = ms[i] ? cache.evaluate(*ms[i], cfg) : 0.0;
            return;
        }
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&]() {
                for (size_t i = next.fetch_add(1); i < ms.size(); i = next.fetch_add(1))
                    if (ms[i]) out[i] = cache.evaluate(*ms[i], cfg);
            });
        for (auto& t : pool) t.join();
    };

    auto mats = init_population(cfg);
    std::vector<Candidate> pop(np);
    {
        std::vector<const BaseMatrix*> ptrs(np);
        for (int k = 0; k < np; ++k) ptrs[k] = &mats[k];
        std::vector<double> fits;
        eval_all(ptrs, fits);
        for (int k = 0; k < np; ++k) pop[k] = Candidate{std::move(mats[k]), fits[k]};
    }

    OptResult res;
    auto record = [&](int gen) {
        double best = pop[0].fitness, sum = 0;
        int best_k = 0;
        for (int k = 0; k < np; ++k) {
            sum += pop[k].fitness;
            if (pop[k].fitness > best) {
                best = pop[k].fitness;
                best_k = k;
            }
        }
        res.trace.push_back({gen, best, sum / np});
        if (res.best.matrix.rows == 0 || best > res.best.fitness) res.best = pop[best_k];
    };
    record(0);

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        std::vector<std::optional<BaseMatrix>> offspring(np);
        for (int k = 0; k < np; ++k) {
            SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(gen),
                                    static_cast<std::uint64_t>(k)));
            int r1 = static_cast<int>(rng.below(np)), r2, r3;
            do {
                r2 = static_cast<int>(rng.below(np));
            } while (r2 == r1);
            do {
                r3 = static_cast<int>(rng.below(np));
            } while (r3 == r1 || r3 == r2);
            BaseMatrix m = mutate(pop[r1].matrix, pop[r2].matrix, pop[r3].matrix, cfg.scale,
                                  cfg.entry_cap);
            offspring[k] = crossover_and_repair(pop[k].matrix, m, cfg.crossover_prob, rng,
                                                cfg.entry_cap, cfg.tree_only);
        }
        std::vector<const BaseMatrix*> ptrs(np, nullptr);
        for (int k = 0; k < np; ++k)
            if (offspring[k]) ptrs[k] = &*offspring[k];
        std::vector<double> fits;
        eval_all(ptrs, fits);
        for (int k = 0; k < np; ++k) {
            if (!offspring[k]) continue;
            Candidate cand{std::move(*offspring[k]), fits[k]};
            if (cand.fitness > pop[k].fitness) pop[k] = std::move(cand);
        }
        record(gen);
    }
    return res;
}

}  // namespace protolab
