// protolab: protograph LDPC design pipeline CLI.
//
// Subcommands: threshold, stability, optimize, build-graph, lift, girth,
// simulate, show. Every run prints an effective-config banner (all defaults
// materialized) so results are reproducible from the output alone.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "protolab/de_bec.hpp"
#include "protolab/de_bms.hpp"
#include "protolab/graphs.hpp"
#include "protolab/lift.hpp"
#include "protolab/optimizer.hpp"
#include "protolab/registry.hpp"
#include "protolab/sim.hpp"
#include "protolab/stability.hpp"

using namespace protolab;

namespace {

int default_threads() {
    if (const char* env = std::getenv("PROTOLAB_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

Protograph load_proto(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        std::string name = spec.substr(8);
        const BuiltinProto* b = find_builtin(name);
        if (!b) throw std::runtime_error("unknown builtin protograph: " + name);
        return build_protograph(b->matrix);
    }
    return build_protograph(load_base_matrix_file(spec));
}

RegularBipartiteGraph load_graph(const std::string& spec) {
    if (spec.rfind("d2q:", 0) == 0) {
        int q = std::stoi(spec.substr(4));
        return d2q_graph(q);
    }
    std::ifstream f(spec);
    if (!f) throw std::runtime_error("cannot open graph file: " + spec);
    return read_graph(f);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

struct Banner {
    std::ostringstream os;
    Banner(const std::string& sub) { os << "# config: subcommand=" << sub; }
    template <typename T>
    Banner& kv(const std::string& k, const T& v) {
        os << ' ' << k << '=' << v;
        return *this;
    }
    void print() { std::cout << os.str() << '\n'; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"protolab: protograph LDPC thresholds, stability, lifting and simulation"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --threads after the subcommand name
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads for parallel-capable subcommands");

    // ---- threshold ----
    auto* th = app.add_subcommand("threshold", "density-evolution threshold of a protograph");
    std::string th_channel = "bec", th_proto;
    double th_resolution = 1e-7, th_resolution_db = 0.01, th_delta = 1e-10;
    long th_tmax = 100000;
    std::string th_trace_out;
    double th_trace_eps = -1;
    bool th_trace_edges = false;
    th->add_option("--channel", th_channel, "bec|awgn")->check(CLI::IsMember({"bec", "awgn"}));
    th->add_option("--proto", th_proto, "base matrix file or builtin:NAME")->required();
    th->add_option("--resolution", th_resolution, "bisection bracket width (bec, >= 1e-7)");
    th->add_option("--resolution-db", th_resolution_db, "bisection bracket width in dB (awgn, >= 0.005)");
    th->add_option("--delta-conv", th_delta, "convergence tolerance on xbar_t");
    th->add_option("--t-max", th_tmax, "iteration cap per probe");
    th->add_option("--trace-out", th_trace_out, "dump a DE trace CSV (t, xbar[, per-edge x])");
    th->add_option("--trace-epsilon", th_trace_eps, "erasure probability for --trace-out");
    th->add_flag("--trace-edges", th_trace_edges, "include per-edge columns in the trace dump");
    std::string th_csv;
    th->add_option("--csv", th_csv, "append a threshold report row to this file");

    // ---- stability ----
    auto* st = app.add_subcommand("stability", "gradient-pattern stability classification");
    std::string st_proto, st_csv;
    st->add_option("--proto", st_proto, "base matrix file or builtin:NAME")->required();
    st->add_option("--csv", st_csv, "append machine-readable row to this file");

    // ---- optimize ----
    auto* op = app.add_subcommand("optimize", "differential-evolution protograph search");
    DeOptConfig cfg;
    std::string op_objective = "bec", op_out, op_trace;
    op->add_option("--rows", cfg.rows, "check count |C|")->required();
    op->add_option("--cols", cfg.cols, "variable count |V|")->required();
    op->add_option("--objective", op_objective, "bec|awgn")->check(CLI::IsMember({"bec", "awgn"}));
    op->add_option("--generations", cfg.max_generations, "generation count");
    op->add_option("--seed", cfg.seed, "RNG seed");
    op->add_option("--population", cfg.population, "population size (default 10*|C|*|V|)");
    op->add_option("--entry-cap", cfg.entry_cap, "max base-matrix entry");
    op->add_option("--crossover-prob", cfg.crossover_prob, "p_c");
    op->add_flag("--tree-only", cfg.tree_only, "enforce only the degree-2 tree condition");
    op->add_option("--out", op_out, "write the best base matrix here");
    op->add_option("--trace", op_trace, "write per-generation fitness CSV here");

    // ---- build-graph ----
    auto* bg = app.add_subcommand("build-graph", "construct or transform a regular bipartite graph");
    std::string bg_kind, bg_double_cover, bg_graph, bg_out;
    int bg_q = 0, bg_split = 0;
    bool bg_color = false;
    bg->add_option("--kind", bg_kind, "d2q")->check(CLI::IsMember({"d2q"}));
    bg->add_option("--q", bg_q, "prime q for d2q");
    bg->add_option("--double-cover", bg_double_cover, "simple regular graph file to double-cover");
    bg->add_option("--degree-split", bg_split, "target degree t (divides d)");
    bg->add_option("--graph", bg_graph, "input bipartite graph file (for --degree-split)");
    bg->add_flag("--color", bg_color, "attach a Konig edge coloring to the output");
    bg->add_option("--out", bg_out, "output graph file")->required();

    // ---- lift ----
    auto* lf = app.add_subcommand("lift", "lift a protograph over an |E|-regular graph");
    std::string lf_proto, lf_graph, lf_out, lf_perm_out;
    bool lf_closed_form = false;
    lf->add_option("--proto", lf_proto, "base matrix file or builtin:NAME")->required();
    lf->add_option("--graph", lf_graph, "graph file or d2q:Q")->required();
    lf->add_option("--out", lf_out, "write parity-check structure (alist)");
    lf->add_option("--perm-out", lf_perm_out, "write the permutation set");
    lf->add_flag("--closed-form-coloring", lf_closed_form,
                 "keep the algebraic d2q coloring instead of recoloring (weaker codes)");

    // ---- girth ----
    auto* gi = app.add_subcommand("girth", "girth of a bipartite graph file");
    std::string gi_graph;
    int gi_lower = 0;
    gi->add_option("--graph", gi_graph, "bipartite graph file")->required();
    gi->add_option("--lower-bound-only", gi_lower, "only confirm girth >= G (cheaper)");

    // ---- simulate ----
    auto* si = app.add_subcommand("simulate", "Monte-Carlo BP simulation of a code");
    std::string si_code, si_channel = "bec", si_out;
    double si_param = 0;
    std::uint64_t si_seed = 1, si_max_frames = 1000000, si_min_errors = 100;
    int si_max_iter = 0;
    si->add_option("--code", si_code, "alist file")->required();
    si->add_option("--channel", si_channel, "bec|biawgn")->check(CLI::IsMember({"bec", "biawgn"}));
    si->add_option("--param", si_param, "erasure probability / Eb/N0 dB")->required();
    si->add_option("--seed", si_seed, "RNG seed");
    si->add_option("--max-frames", si_max_frames, "frame cap");
    si->add_option("--min-frame-errors", si_min_errors, "stop after this many frame errors");
    si->add_option("--max-iter", si_max_iter, "decoder iteration cap (default 200 bec, 100 biawgn)");
    si->add_option("--out", si_out, "append result CSV row to this file");

    // ---- show ----
    auto* sh = app.add_subcommand("show", "inspect built-in protographs");
    std::string sh_builtin = "list";
    sh->add_option("--builtin", sh_builtin, "list|NAME");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (th->parsed()) {
            Banner b("threshold");
            b.kv("channel", th_channel).kv("proto", th_proto);
            auto p = load_proto(th_proto);
            if (th_channel == "bec") {
                DeOptions opt;
                opt.delta_conv = th_delta;
                opt.t_max = th_tmax;
                b.kv("resolution", th_resolution).kv("delta_conv", th_delta).kv("t_max", th_tmax);
                b.print();
                if (!th_trace_out.empty()) {
                    if (th_trace_eps < 0) throw std::runtime_error("--trace-out needs --trace-epsilon");
                    DeOptions topt = opt;
                    topt.record_vectors = th_trace_edges;
                    auto tr = run_de(p, th_trace_eps, topt);
                    auto f = open_out(th_trace_out);
                    f << "t,xbar";
                    if (th_trace_edges)
                        for (int e = 0; e < p.num_edges; ++e) f << ",x" << e + 1;
                    f << '\n';
                    for (size_t t = 0; t < tr.xbar.size(); ++t) {
                        f << t << ',' << tr.xbar[t];
                        if (th_trace_edges && t < tr.x_hist.size())
                            for (double v : tr.x_hist[t]) f << ',' << v;
                        f << '\n';
                    }
                    std::cout << "trace: wrote " << tr.xbar.size() << " iterations (verdict "
                              << to_string(tr.verdict) << ") to " << th_trace_out << '\n';
                }
                double eps = bec_threshold(p, th_resolution, opt);
                std::cout << "rate " << design_rate(p).str() << '\n';
                std::cout << std::fixed << std::setprecision(4) << "bec_threshold " << eps << '\n';
                if (!th_csv.empty()) {
                    std::ofstream f(th_csv, std::ios::app);
                    f << th_proto << ",bec," << design_rate(p).str() << ',' << eps << ",,\n";
                }
            } else {
                b.kv("resolution_db", th_resolution_db);
                b.print();
                auto t = awgn_threshold(p, th_resolution_db);
                auto rate = design_rate(p);
                std::cout << "rate " << rate.str() << '\n';
                std::cout << std::fixed << std::setprecision(3) << "awgn_threshold_snr_db " << t.snr_db
                          << '\n'
                          << "awgn_threshold_ebn0_db " << t.ebn0_db << '\n';
                auto cap = capacity_snr_db(rate);
                if (cap) std::cout << "gap_to_capacity_db " << (t.snr_db - *cap) << '\n';
                if (!th_csv.empty()) {
                    std::ofstream f(th_csv, std::ios::app);
                    f << th_proto << ",awgn," << rate.str() << ',' << t.snr_db << ',' << t.ebn0_db
                      << ',';
                    if (cap) f << (t.snr_db - *cap);
                    f << '\n';
                }
            }
        } else if (st->parsed()) {
            Banner b("stability");
            b.kv("proto", st_proto);
            b.print();
            auto p = load_proto(st_proto);
            auto rep = classify_stability(p);
            std::cout << "case " << static_cast<int>(rep.rule) << " ("
                      << to_string(rep.rule) << ")\n";
            std::cout << "r_max " << rep.r_max << '\n';
            std::cout << std::fixed << std::setprecision(4) << "rho " << rep.rho << '\n';
            std::cout << "epsilon_star " << std::setprecision(4) << rep.epsilon_star << '\n';
            std::cout << "blocks " << rep.s_f << '\n';
            if (!st_csv.empty()) {
                std::ofstream f(st_csv, std::ios::app);
                f << static_cast<int>(rep.rule) << ',' << rep.r_max << ',' << rep.rho << ','
                  << rep.epsilon_star << '\n';
            }
        } else if (op->parsed()) {
            cfg.objective = op_objective == "awgn" ? DeOptConfig::Awgn : DeOptConfig::Bec;
            cfg.threads = threads;
            Banner b("optimize");
            b.kv("rows", cfg.rows)
                .kv("cols", cfg.cols)
                .kv("objective", op_objective)
                .kv("generations", cfg.max_generations)
                .kv("population", cfg.pop_size())
                .kv("entry_cap", cfg.entry_cap)
                .kv("pc", cfg.crossover_prob)
                .kv("tree_only", cfg.tree_only)
                .kv("seed", cfg.seed)
                .kv("threads", cfg.threads);
            b.print();
            auto res = optimize(cfg);
            std::cout << "best_fitness " << res.best.fitness << '\n';
            std::cout << "best_matrix:\n" << res.best.matrix.to_text();
            if (!op_out.empty()) open_out(op_out) << res.best.matrix.to_text();
            if (!op_trace.empty()) {
                auto f = open_out(op_trace);
                f << "generation,best_fitness,mean_fitness\n";
                for (const auto& pt : res.trace)
                    f << pt.generation << ',' << pt.best << ',' << pt.mean << '\n';
            }
        } else if (bg->parsed()) {
            Banner b("build-graph");
            RegularBipartiteGraph g;
            if (!bg_double_cover.empty()) {
                b.kv("double_cover", bg_double_cover);
                std::ifstream f(bg_double_cover);
                if (!f) throw std::runtime_error("cannot open: " + bg_double_cover);
                g = bipartite_double_cover(read_simple_graph(f));
            } else if (bg_split > 0) {
                if (bg_graph.empty()) throw std::runtime_error("--degree-split needs --graph");
                b.kv("degree_split", bg_split).kv("graph", bg_graph);
                g = degree_split(load_graph(bg_graph), bg_split);
            } else if (bg_kind == "d2q") {
                if (bg_q < 5) throw std::runtime_error("--kind d2q needs --q (prime >= 5)");
                b.kv("kind", "d2q").kv("q", bg_q);
                g = d2q_graph(bg_q);
            } else {
                throw std::runtime_error("build-graph: need --kind d2q, --double-cover or --degree-split");
            }
            if (bg_color && !g.coloring) g.coloring = edge_color(g);
            b.kv("out", bg_out);
            b.print();
            auto f = open_out(bg_out);
            write_graph(f, g);
            std::cout << "graph n_left " << g.n_left << " n_right " << g.n_right << " degree "
                      << g.degree << (g.coloring ? " colored" : "") << '\n';
        } else if (lf->parsed()) {
            Banner b("lift");
            b.kv("proto", lf_proto).kv("graph", lf_graph).kv("closed_form_coloring", lf_closed_form);
            b.print();
            auto p = load_proto(lf_proto);
            auto g = load_graph(lf_graph);
            if (g.degree != p.num_edges)
                throw std::runtime_error(
                    "lift: protograph has " + std::to_string(p.num_edges) +
                    " edges but the graph is " + std::to_string(g.degree) +
                    "-regular; use a graph whose degree equals |E| (degree-split or another q)");
            // The algebraic d2q coloring aligns parallel-edge permutations and
            // riddles the code with small stopping sets; recolor by default.
            bool from_d2q = lf_graph.rfind("d2q:", 0) == 0;
            if (!g.coloring || (from_d2q && !lf_closed_form)) g.coloring = edge_color(g);
            auto lg = node_split(p, g);
            if (auto w = lg.parallel_witness())
                throw std::runtime_error("lift: parallel lifted edges at types " +
                                         std::to_string(w->type_a + 1) + "," +
                                         std::to_string(w->type_b + 1) + " copy " +
                                         std::to_string(w->copy + 1));
            std::cout << "blocklength " << lg.blocklength() << '\n';
            std::cout << "checks " << lg.check_count() << '\n';
            std::cout << "edges " << lg.edge_count() << '\n';
            std::cout << "rate " << design_rate(p).str() << '\n';
            if (!lf_out.empty()) {
                auto f = open_out(lf_out);
                write_alist(f, lg);
                std::cout << "wrote alist to " << lf_out << '\n';
            }
            if (!lf_perm_out.empty()) {
                auto f = open_out(lf_perm_out);
                write_perms(f, lg);
                std::cout << "wrote permutation set to " << lf_perm_out << '\n';
            }
        } else if (gi->parsed()) {
            Banner b("girth");
            b.kv("graph", gi_graph).kv("lower_bound_only", gi_lower);
            b.print();
            auto g = load_graph(gi_graph);
            if (gi_lower > 0) {
                bool ok = girth_at_least(g, gi_lower);
                std::cout << "girth >= " << gi_lower << ": " << (ok ? "confirmed" : "violated") << '\n';
                return ok ? 0 : 1;
            }
            auto gv = girth(g);
            if (gv)
                std::cout << "girth " << *gv << '\n';
            else
                std::cout << "girth acyclic\n";
        } else if (si->parsed()) {
            Banner b("simulate");
            b.kv("code", si_code)
                .kv("channel", si_channel)
                .kv("param", si_param)
                .kv("seed", si_seed)
                .kv("max_frames", si_max_frames)
                .kv("min_frame_errors", si_min_errors)
                .kv("max_iter", si_max_iter)
                .kv("threads", threads);
            b.print();
            std::ifstream f(si_code);
            if (!f) throw std::runtime_error("cannot open code file: " + si_code);
            auto code = SparseCode::read_alist(f);
            Channel ch;
            ch.kind = si_channel == "bec" ? Channel::Bec : Channel::Biawgn;
            ch.param = si_param;
            auto r = simulate(code, ch, si_seed, StopRule{si_max_frames, si_min_errors}, si_max_iter,
                              threads);
            std::cout << "frames " << r.frames << " bit_errors " << r.bit_errors << " frame_errors "
                      << r.frame_errors << '\n';
            std::cout << "ber " << r.ber << " +-" << r.ber_ci95 << '\n';
            std::cout << "fer " << r.fer << " +-" << r.fer_ci95
                      << (r.ci_reliable ? "" : " (unreliable: <20 frame errors)") << '\n';
            if (!si_out.empty()) {
                bool fresh = !std::ifstream(si_out).good();
                std::ofstream out(si_out, std::ios::app);
                if (fresh) write_sim_csv_header(out);
                write_sim_csv_row(out, r);
            }
        } else if (sh->parsed()) {
            Banner b("show");
            b.kv("builtin", sh_builtin);
            b.print();
            if (sh_builtin == "list") {
                for (const auto& e : builtin_protographs()) {
                    auto p = build_protograph(e.matrix);
                    std::cout << e.name << "  " << e.matrix.rows << 'x' << e.matrix.cols << "  rate "
                              << design_rate(p).str() << "  |E| " << p.num_edges << "  "
                              << e.description << '\n';
                }
            } else {
                const BuiltinProto* e = find_builtin(sh_builtin);
                if (!e) throw std::runtime_error("unknown builtin: " + sh_builtin);
                auto p = build_protograph(e->matrix);
                std::cout << e->name << ": " << e->description << '\n';
                std::cout << "rate " << design_rate(p).str() << "  |E| " << p.num_edges << '\n';
                if (!std::isnan(e->nominal_bec_threshold))
                    std::cout << "nominal bec threshold " << e->nominal_bec_threshold << '\n';
                if (!std::isnan(e->nominal_snr_db))
                    std::cout << "nominal awgn threshold (snr dB) " << e->nominal_snr_db << '\n';
                if (!e->note.empty()) std::cout << "note: " << e->note << '\n';
                auto rep = check_decay_conditions(p);
                std::cout << "deg2_cycle_free " << (rep.deg2_cycle_free ? "yes" : "no");
                if (!rep.deg2_cycle_free)
                    std::cout << " (witness " << format_cycle(p, rep.cycle_witness_edges) << ")";
                std::cout << '\n';
                std::cout << "deg2_attached " << (rep.every_deg2_touches_deg3plus ? "yes" : "no") << '\n';
                std::cout << e->matrix.to_text();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
