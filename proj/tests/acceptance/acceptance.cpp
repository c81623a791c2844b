// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: mleap_acceptance [path-to-mleap-cli [work-dir]]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "mleap/harness.hpp"

using namespace mleap;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        out.pass = false;
        out.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
    }
    if (!out.pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Graph random_graph(int n, Rng& rng) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < 0.5) edges.push_back({u, v});
    if (edges.empty()) edges.push_back({0, 1});
    return Graph(n, edges);
}

ParamVector random_params(int p, Rng& rng) {
    std::vector<double> g(p), b(p);
    for (auto& x : g) x = rng.uniform(-pi, pi);
    for (auto& x : b) x = rng.uniform(-pi, pi);
    return ParamVector(g, b);
}

double oar(const std::vector<StrategyResult>& runs) {
    double best = 0.0;
    for (const auto& r : runs) best = std::max(best, r.final_r);
    return best;
}

double aar(const std::vector<StrategyResult>& runs) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.final_r;
    return sum / static_cast<double>(runs.size());
}

// Shared by criteria 6 to 8.
struct BatchComparison {
    std::uint64_t graph_seed = 0;
    int f_max = 0;
    double oar_interp = 0, aar_interp = 0, oar_mli = 0, aar_mli = 0;
    long long it_interp = 0, it_mli = 0, it_greedy = 0;
    double rt_interp = 0, rt_mli = 0, rt_greedy = 0;
    double greedy_best_r = 0, greedy_survivor_mean_r = 0;
    std::size_t greedy_survivors = 0;
};

constexpr int kN = 8, kP = 8, kRuns = 50, kGreedyC = 50;
constexpr std::uint64_t kRunSeed = 2024;
constexpr double kKeepTol = 1e-6;

std::vector<BatchComparison> compare_batches() {
    std::vector<BatchComparison> out;
    const CostModel model;
    for (std::uint64_t gs = 1; gs <= 5; ++gs) {
        Rng rng(gs);
        const Problem problem(generate_regular(kN, 3, rng));
        const auto edges = problem.graph.edge_count();
        const auto interp = run_many(problem, Schedule::interp(kP), kRuns, kRunSeed);
        const auto mli = run_many(problem, conjectured_q(kP), kRuns, kRunSeed);
        const auto greedy = run_greedy_mli(problem, conjectured_q(kP), kGreedyC, kKeepTol, kRunSeed);

        BatchComparison b;
        b.graph_seed = gs;
        b.f_max = problem.f_max;
        b.oar_interp = oar(interp);
        b.aar_interp = aar(interp);
        b.oar_mli = oar(mli);
        b.aar_mli = aar(mli);
        b.it_interp = total_iterations(interp).total;
        b.it_mli = total_iterations(mli).total;
        b.it_greedy = total_iterations(greedy).total;
        b.rt_interp = estimate_runtime(interp, edges, model);
        b.rt_mli = estimate_runtime(mli, edges, model);
        b.rt_greedy = estimate_runtime(greedy, edges, model);
        b.greedy_best_r = greedy.best.final_r;
        double sum = 0.0;
        for (const auto& r : greedy.levels.back().rounds)
            if (r.survived) {
                sum += r.record.trace.best_f() / problem.f_max;
                ++b.greedy_survivors;
            }
        b.greedy_survivor_mean_r = sum / static_cast<double>(b.greedy_survivors);
        out.push_back(b);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "mleap_acceptance";

    report(1, "simulator matches dense matrix-exponential oracle", 10, [] {
        Rng rng(101);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(5));
            const int p = 1 + static_cast<int>(rng.below(3));
            const auto g = random_graph(n, rng);
            const auto params = random_params(p, rng);
            const auto ours = evolve(g, params);
            const auto ref = oracle::evolve(g, params.gammas, params.betas);
            for (std::size_t x = 0; x < ours.size(); ++x)
                worst = std::max(worst, std::abs(ours[x] - ref(static_cast<Eigen::Index>(x))));
        }
        return Outcome{worst < 1e-9, fmt("200 cases, max amplitude error %.3e < 1e-9", worst)};
    });

    report(2, "adjoint gradient matches central differences", 10, [] {
        Rng rng(202);
        double worst = 0.0;
        const double h = 1e-5;
        for (int trial = 0; trial < 50; ++trial) {
            const QaoaSimulator sim(random_graph(6, rng));
            const auto params = random_params(3, rng);
            const auto grad = sim.value_and_gradient(params).gradient;
            const auto flat = params.flatten();
            for (std::size_t k = 0; k < flat.size(); ++k) {
                auto up = flat, dn = flat;
                up[k] += h;
                dn[k] -= h;
                const double fd =
                    (sim.expectation(ParamVector::unflatten(up)) - sim.expectation(ParamVector::unflatten(dn))) / (2 * h);
                worst = std::max(worst, std::abs(grad[k] - fd) / std::abs(fd));
            }
        }
        return Outcome{worst < 1e-5, fmt("50 cases, max relative error %.3e < 1e-5", worst)};
    });

    report(3, "all-zero parameters give |E|/2", 0, [] {
        Rng rng(303);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = random_graph(2 + static_cast<int>(rng.below(9)), rng);
            const double f = QaoaSimulator(g).expectation(ParamVector({0.0}, {0.0}));
            worst = std::max(worst, std::abs(f - g.edge_count() / 2.0));
        }
        return Outcome{worst <= 1e-12, fmt("20 graphs, max deviation %.3e <= 1e-12", worst)};
    });

    report(4, "interpolation algebra", 0, [] {
        bool ok = true;
        std::string why;
        const double a = 0.37, b = -1.21;
        const auto four = interpolate_to(ParamVector({a, b}, {b, a}), 4);
        const double expect[4] = {a, (2 * a + b) / 3, (a + 2 * b) / 3, b};
        double err24 = 0.0;
        for (int i = 0; i < 4; ++i) err24 = std::max(err24, std::abs(four.gammas[i] - expect[i]));
        ok = ok && err24 <= 1e-15;

        const auto two = interpolate_one(ParamVector({a}, {b}));
        const bool dup = two.gammas == std::vector<double>{a, a} && two.betas == std::vector<double>{b, b};
        ok = ok && dup;

        Rng rng(404);
        double lin = 0.0;
        bool ends = true;
        for (int trial = 0; trial < 100; ++trial) {
            const int p = 1 + static_cast<int>(rng.below(8));
            const auto A = random_params(p, rng), B = random_params(p, rng);
            const double al = rng.uniform(-2, 2), et = rng.uniform(-2, 2);
            std::vector<double> cg(p), cb(p);
            for (int i = 0; i < p; ++i) {
                cg[i] = al * A.gammas[i] + et * B.gammas[i];
                cb[i] = al * A.betas[i] + et * B.betas[i];
            }
            const auto lhs = interpolate_one(ParamVector(cg, cb));
            const auto ia = interpolate_one(A), ib = interpolate_one(B);
            for (int i = 0; i <= p; ++i) {
                lin = std::max(lin, std::abs(lhs.gammas[i] - (al * ia.gammas[i] + et * ib.gammas[i])));
                lin = std::max(lin, std::abs(lhs.betas[i] - (al * ia.betas[i] + et * ib.betas[i])));
            }
            const auto up = interpolate_to(A, p + 1 + static_cast<int>(rng.below(6)));
            ends = ends && up.gammas.front() == A.gammas.front() && up.gammas.back() == A.gammas.back() &&
                   up.betas.front() == A.betas.front() && up.betas.back() == A.betas.back();
        }
        ok = ok && lin <= 1e-12 && ends;
        return Outcome{ok, fmt("2->4 error %.1e, 1->2 duplication %s, linearity error %.1e, endpoints %s", err24,
                               dup ? "exact" : "wrong", lin, ends ? "exact" : "changed")};
    });

    report(5, "level-1 INTERP optimum matches the 401x401 landscape maximum", 30, [] {
        Rng rng(1);
        const Problem problem(generate_regular(kN, 3, rng));
        const auto land = landscape_scan(problem.sim, 401);
        const double grid_max = *std::max_element(land.values.begin(), land.values.end());
        const auto runs = run_many(problem, Schedule::interp(1), kRuns, kRunSeed);
        double best = 0.0;
        int within = 0;
        for (const auto& r : runs) {
            const auto& tr = r.records.front().trace;
            if (tr.stop_reason != StopReason::converged) continue;
            best = std::max(best, tr.final_f());
            within += std::abs(tr.final_f() - grid_max) <= 1e-3;
        }
        const double gap = std::abs(best - grid_max);
        return Outcome{gap <= 1e-3, fmt("grid max %.6f, best converged F %.6f, gap %.2e <= 1e-3 (%d/%d runs individually within)",
                                        grid_max, best, gap, within, kRuns)};
    });

    std::vector<BatchComparison> batches;
    report(6, "MLI reaches the INTERP quasi-optimum", 600, [&] {
        batches = compare_batches();
        bool ok = true;
        std::string d;
        for (const auto& b : batches) {
            ok = ok && b.oar_mli >= b.oar_interp - 0.005;
            d += fmt("g%llu OAR %.5f vs %.5f; ", static_cast<unsigned long long>(b.graph_seed), b.oar_mli, b.oar_interp);
        }
        return Outcome{ok, d + "require MLI >= INTERP - 0.005 on every graph"};
    });

    report(7, "MLI and greedy-MLI cost reduction", 0, [&] {
        if (batches.empty()) return Outcome{false, "no batch results"};
        bool ok = true;
        std::string d;
        for (const auto& b : batches) {
            const double rm = static_cast<double>(b.it_mli) / b.it_interp;
            const double rg = static_cast<double>(b.it_greedy) / b.it_interp;
            const double tm = b.rt_mli / b.rt_interp;
            const double tg = b.rt_greedy / b.rt_interp;
            ok = ok && rm <= 0.75 && rg <= 0.5 && std::abs(tm - rm) < 1e-12 && std::abs(tg - rg) < 1e-12;
            d += fmt("g%llu MLI %.3f greedy %.3f; ", static_cast<unsigned long long>(b.graph_seed), rm, rg);
        }
        return Outcome{ok, d + "iteration and runtime ratios to INTERP, require <= 0.75 and <= 0.5"};
    });

    report(8, "greedy-MLI quality", 0, [&] {
        if (batches.empty()) return Outcome{false, "no batch results"};
        bool best_ok = true;
        int avg_ok = 0;
        std::string d, below;
        for (const auto& b : batches) {
            if (b.greedy_best_r < b.oar_interp - 0.005) {
                best_ok = false;
                below += fmt(" g%llu", static_cast<unsigned long long>(b.graph_seed));
            }
            avg_ok += b.greedy_survivor_mean_r >= b.aar_mli - 0.01;
            d += fmt("g%llu best %.5f (INTERP OAR %.5f) survivors %zu mean %.5f (MLI AAR %.5f); ",
                     static_cast<unsigned long long>(b.graph_seed), b.greedy_best_r, b.oar_interp, b.greedy_survivors,
                     b.greedy_survivor_mean_r, b.aar_mli);
        }
        d += best_ok ? "best r >= INTERP OAR - 0.005 on every graph" : "best r below INTERP OAR - 0.005 on" + below;
        return Outcome{best_ok && avg_ok >= 4, d + fmt("; average claim holds on %d/5, need 4", avg_ok)};
    });

    report(9, "conjectured schedules", 0, [] {
        const auto q10 = conjectured_q(10).to_string(), q4 = conjectured_q(4).to_string(),
                   q12 = conjectured_q(12).to_string();
        return Outcome{q10 == "1,2,4,10" && q4 == "1,2,4" && q12 == "1,2,5,12",
                       "q(10)=[" + q10 + "] q(4)=[" + q4 + "] q(12)=[" + q12 + "]"};
    });

    report(10, "runtime model spot value", 0, [] {
        const double t = round_runtime_s(32, 1, 12, CostModel{});
        return Outcome{t == 0.032, fmt("T=32, M=1000, t=1us gives %.17g s", t)};
    });

    report(11, "byte-identical summaries across repeats and pool sizes", 0, [&] {
        fs::remove_all(work);
        fs::create_directories(work);
        const auto graph_path = (work / "g.txt").string();
        Rng rng(11);
        save_graph(generate_regular(kN, 3, rng), graph_path);

        bool ok = true;
        int compared = 0;
        const int saved = omp_get_max_threads();
        for (auto kind : {StrategyKind::ri, StrategyKind::interp, StrategyKind::mli, StrategyKind::greedy_mli}) {
            ExperimentConfig cfg;
            cfg.graph_path = graph_path;
            cfg.strategy = kind;
            cfg.p = 6;
            cfg.runs = 8;
            cfg.c = 8;
            cfg.seed = 5;
            std::vector<std::string> texts;
            for (int threads : {1, 4, 4, 1}) {
                omp_set_num_threads(threads);
                texts.push_back(summary_json_text(run_experiment(cfg)));
            }
            for (const auto& t : texts) ok = ok && t == texts.front();
            ++compared;
        }
        omp_set_num_threads(saved);
        std::string d = fmt("%d strategies in process, threads 1/4/4/1", compared);

        if (!cli.empty()) {
            const std::string flags = " run --graph " + graph_path + " --strategy mli --p 6 --runs 8 --seed 5";
            std::vector<std::string> outs;
            for (int k = 0; k < 3; ++k) {
                const int threads = k == 1 ? 4 : 1;
                const auto path = (work / ("cli_" + std::to_string(k) + ".json")).string();
                const std::string cmd = "\"" + cli + "\" --threads " + std::to_string(threads) + flags + " --out-json " +
                                        path + " > /dev/null";
                if (std::system(cmd.c_str()) != 0) return Outcome{false, "cli run failed: " + cmd};
                outs.push_back(read_text_file(path));
            }
            ok = ok && outs[0] == outs[1] && outs[1] == outs[2];
            d += ", plus 3 CLI runs";
        }
        return Outcome{ok, d + (ok ? ", all identical" : ", outputs differ")};
    });

    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
