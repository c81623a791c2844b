// mleap: command-line front end for the QAOA initialization workbench.

#include <omp.h>

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "mleap/errors.hpp"
#include "mleap/harness.hpp"

namespace {

using namespace mleap;

constexpr int kExitConfig = 2;

void print_bits(const CutAssignment& bits) {
    for (auto b : bits) std::cout << static_cast<int>(b);
    std::cout << "\n";
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QAOA MaxCut parameter-initialization workbench"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "Generate a random regular graph");
    int gen_n = 0, gen_degree = 3;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--degree", gen_degree, "Vertex degree")->required();
    gen->add_option("--seed", gen_seed, "Random seed")->required();
    gen->add_option("--out", gen_out, "Output edge-list path")->required();

    // maxcut
    auto* mc = app.add_subcommand("maxcut", "Exact MaxCut by brute force");
    std::string mc_graph;
    mc->add_option("--graph", mc_graph, "Edge-list file")->required();

    // run
    auto* run = app.add_subcommand("run", "Run a batch experiment");
    ExperimentConfig cfg;
    std::string run_graph, strategy, out_json, out_csv;
    run->add_option("--graph", run_graph, "Edge-list file")->required();
    run->add_option("--strategy", strategy, "ri | interp | mli | greedy-mli")->required();
    run->add_option("--p", cfg.p, "Target level")->required();
    run->add_option("--schedule", cfg.schedule, "Levels like 1,2,4,10, or 'conjectured', or 'search'");
    auto* runs_opt = run->add_option("--runs", cfg.runs, "Independent runs");
    auto* c_opt = run->add_option("--c", cfg.c, "greedy-mli starts");
    auto* tol_opt = run->add_option("--keep-tol", cfg.keep_tol, "greedy-mli relative survivor tolerance");
    run->add_option("--search-c", cfg.search_c, "Runs per trial for --schedule search");
    run->add_option("--seed", cfg.seed, "Master seed")->required();
    run->add_option("--delta", cfg.stop.delta, "Convergence tolerance");
    run->add_option("--max-iter", cfg.stop.max_iter, "Iteration cap per round");
    run->add_option("--lr", cfg.adam.learning_rate, "Adam learning rate");
    run->add_option("--out-json", out_json, "Summary JSON path")->required();
    run->add_option("--out-csv", out_csv, "Table CSV path (per-run rows go to <stem>.runs.csv)");

    // search-lstar / build-qstar
    auto* sl = app.add_subcommand("search-lstar", "Search the largest quasi-optimum-preserving depth step");
    auto* bq = app.add_subcommand("build-qstar", "Recursively build the simplified schedule");
    std::string meta_graph;
    int meta_p = 0;
    SearchConfig scfg;
    for (auto* sub : {sl, bq}) {
        sub->add_option("--graph", meta_graph, "Edge-list file")->required();
        sub->add_option("--p", meta_p, "Target level")->required();
        sub->add_option("--c", scfg.c, "Runs per trial")->required();
        sub->add_option("--seed", scfg.master_seed, "Master seed")->required();
        sub->add_option("--delta", scfg.stop.delta, "Convergence tolerance");
        sub->add_option("--max-iter", scfg.stop.max_iter, "Iteration cap per round");
        sub->add_option("--lr", scfg.adam.learning_rate, "Adam learning rate");
    }

    // conjecture-q
    auto* cq = app.add_subcommand("conjecture-q", "Closed-form schedule");
    int cq_p = 0;
    cq->add_option("--p", cq_p, "Target level")->required();

    // estimate-time
    auto* et = app.add_subcommand("estimate-time", "Runtime estimate from summaries");
    std::vector<std::string> et_paths;
    CostModel model;
    et->add_option("--summary", et_paths, "Summary JSON (repeatable)")->required();
    et->add_option("--m", model.m_shots, "Measurements per iteration");
    et->add_option("--t-us", model.t_single_us, "Duration of one repetition in microseconds");
    et->add_flag("--include-circuit", model.include_circuit, "Cost repetitions as t_prep_meas + level * (edges + 1) * t_gate");
    et->add_option("--t-gate-us", model.t_gate_us, "Gate duration in microseconds");
    et->add_option("--t-prep-meas-us", model.t_prep_meas_us, "Preparation plus measurement in microseconds");

    // landscape
    auto* ls = app.add_subcommand("landscape", "p = 1 expectation grid");
    std::string ls_graph, ls_out;
    int ls_res = 0;
    ls->add_option("--graph", ls_graph, "Edge-list file")->required();
    ls->add_option("--resolution", ls_res, "Grid points per axis")->required();
    ls->add_option("--out-csv", ls_out, "Output CSV")->required();

    // verify
    auto* vf = app.add_subcommand("verify", "Recompute aggregates of a summary");
    std::string vf_path;
    vf->add_option("--summary", vf_path, "Summary JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*gen) {
            Rng rng(gen_seed);
            save_graph(generate_regular(gen_n, gen_degree, rng), gen_out);
        } else if (*mc) {
            const auto g = load_graph(mc_graph);
            const auto best = max_cut_brute_force(g);
            std::cout << "f_max " << best.f_max << "\nwitness ";
            print_bits(best.witness);
        } else if (*run) {
            cfg.strategy = strategy_from_string(strategy);
            if (cfg.strategy != StrategyKind::greedy_mli && (c_opt->count() || tol_opt->count()))
                throw ParameterError("--c and --keep-tol apply to greedy-mli only");
            if (cfg.strategy == StrategyKind::greedy_mli && runs_opt->count())
                throw ParameterError("greedy-mli is a single run over --c starts; drop --runs");
            cfg.graph_path = run_graph;
            const auto summary = run_experiment(cfg);
            emit_summary(summary, SummaryFormat::json, out_json);
            if (!out_csv.empty()) emit_summary(summary, SummaryFormat::csv, out_csv);
            for (const auto& l : summary.levels)
                std::printf("level %d: oar %.6f aar %.6f iterations %lld\n", l.level, l.oar, l.aar, l.iterations);
            std::printf("total iterations %lld, estimated runtime %.6f s\n", summary.total_iterations,
                        summary.estimated_runtime_s);
        } else if (*sl) {
            const Problem problem(load_graph(meta_graph));
            const auto rec = search_l_star_record(problem, meta_p, scfg);
            std::printf("f_quasi %.10f\n", rec.f_quasi);
            for (const auto l : rec.visited) std::printf("trial l=%d best_f %.10f\n", l, rec.trials.at(l));
            std::cout << "s [" << join(rec.accepted) << "]\n";
            if (rec.accepted.empty())
                throw NoViableStepError("no depth step reached the INTERP quasi-optimum; use INTERP");
            std::cout << "l_star " << rec.l_star << "\nq0_star " << rec.q0_star(meta_p) << "\n";
        } else if (*bq) {
            const Problem problem(load_graph(meta_graph));
            std::cout << build_q_star(problem, meta_p, scfg).to_string() << "\n";
        } else if (*cq) {
            std::cout << conjectured_q(cq_p).to_string() << "\n";
        } else if (*et) {
            model.validate();
            double total = 0.0;
            for (const auto& path : et_paths) {
                const auto s = load_summary(path);
                const double t = estimate_runtime(s, model);
                total += t;
                std::printf("%s %s iterations %lld runtime_s %.9g\n", path.c_str(), std::string(to_string(s.strategy)).c_str(),
                            s.total_iterations, t);
            }
            if (et_paths.size() > 1) std::printf("total runtime_s %.9g\n", total);
        } else if (*ls) {
            const auto land = landscape_scan(load_graph(ls_graph), ls_res);
            std::string csv = "gamma,beta,f\n";
            char buf[96];
            for (int i = 0; i < land.resolution; ++i)
                for (int j = 0; j < land.resolution; ++j) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", land.gammas[i], land.betas[j], land.at(i, j));
                    csv += buf;
                }
            write_text_file(ls_out, csv);
        } else if (*vf) {
            const auto problems = verify_summary(load_summary(vf_path));
            for (const auto& p : problems) std::cerr << "mismatch: " << p << "\n";
            if (!problems.empty()) return VerificationError("").exit_code();
            std::cout << "ok\n";
        }
    } catch (const mleap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
