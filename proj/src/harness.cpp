#include "mleap/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <span>
#include <sstream>

#include "mleap/errors.hpp"

namespace mleap {

using nlohmann::json;

std::string_view to_string(StrategyKind s) noexcept {
    switch (s) {
        case StrategyKind::ri: return "ri";
        case StrategyKind::interp: return "interp";
        case StrategyKind::mli: return "mli";
        case StrategyKind::greedy_mli: return "greedy-mli";
    }
    return "?";
}

StrategyKind strategy_from_string(std::string_view s) {
    if (s == "ri") return StrategyKind::ri;
    if (s == "interp") return StrategyKind::interp;
    if (s == "mli") return StrategyKind::mli;
    if (s == "greedy-mli") return StrategyKind::greedy_mli;
    throw ParameterError("unknown strategy \"" + std::string(s) + "\" (expected ri, interp, mli or greedy-mli)");
}

void ExperimentConfig::validate() const {
    if (p < 1) throw ParameterError("p must be at least 1");
    if (runs < 1) throw ParameterError("runs must be at least 1");
    if (c < 1) throw ParameterError("c must be at least 1");
    if (!(keep_tol >= 0.0 && keep_tol < 1.0)) throw ParameterError("keep_tol must lie in [0, 1)");
    if (search_c < 1) throw ParameterError("search c must be at least 1");
    stop.validate();
    adam.validate();
}

void CostModel::validate() const {
    if (!(t_single_us > 0.0 && m_shots > 0.0 && t_gate_us > 0.0 && t_prep_meas_us > 0.0))
        throw ParameterError("cost model entries must be positive");
}

namespace {

Schedule resolve_schedule(const ExperimentConfig& cfg, const Problem& problem) {
    const auto& text = cfg.schedule;
    switch (cfg.strategy) {
        case StrategyKind::ri:
            if (!text.empty() && Schedule::parse(text) != Schedule::single(cfg.p))
                throw ParameterError("ri optimizes only at the target level; drop --schedule");
            return Schedule::single(cfg.p);
        case StrategyKind::interp:
            if (!text.empty() && Schedule::parse(text) != Schedule::interp(cfg.p))
                throw ParameterError("interp optimizes at every level; drop --schedule");
            return Schedule::interp(cfg.p);
        case StrategyKind::mli:
        case StrategyKind::greedy_mli: break;
    }
    if (text.empty() || text == "conjectured") return conjectured_q(cfg.p);
    if (text == "search")
        return build_q_star(problem, cfg.p, {.c = cfg.search_c, .master_seed = cfg.seed, .adam = cfg.adam, .stop = cfg.stop});
    auto q = Schedule::parse(text);
    if (q.target() != cfg.p)
        throw ParameterError("schedule " + q.to_string() + " does not end at p=" + std::to_string(cfg.p));
    return q;
}

json params_json(const ParamVector& p) { return {{"gammas", p.gammas}, {"betas", p.betas}}; }

ParamVector params_from_json(const json& j) {
    return ParamVector(j.at("gammas").get<std::vector<double>>(), j.at("betas").get<std::vector<double>>());
}

json config_json(const ExperimentConfig& cfg, const Schedule& schedule) {
    json j;
    if (cfg.graph_path)
        j["graph"] = {{"path", *cfg.graph_path}};
    else
        j["graph"] = {{"generator", {{"n", cfg.generator.n}, {"degree", cfg.generator.degree}, {"seed", cfg.generator.seed}}}};
    j["strategy"] = std::string(to_string(cfg.strategy));
    j["p"] = cfg.p;
    j["schedule_request"] = cfg.schedule;
    j["schedule"] = schedule.levels();
    j["runs"] = cfg.runs;
    if (cfg.strategy == StrategyKind::greedy_mli) {
        j["c"] = cfg.c;
        j["keep_tol"] = cfg.keep_tol;
    }
    if (cfg.schedule == "search") j["search_c"] = cfg.search_c;
    j["seed"] = cfg.seed;
    j["stop"] = {{"delta", cfg.stop.delta}, {"max_iter", cfg.stop.max_iter}};
    j["adam"] = {{"learning_rate", cfg.adam.learning_rate},
                 {"decay1", cfg.adam.decay1},
                 {"decay2", cfg.adam.decay2},
                 {"epsilon", cfg.adam.epsilon}};
    return j;
}

RoundRecord make_round(int run, int lineage, const LevelRecord& rec, int f_max, bool survived) {
    RoundRecord r;
    r.run = run;
    r.lineage = lineage;
    r.level = rec.level;
    r.init = rec.init;
    r.final_params = rec.trace.final_params;
    r.f_history = rec.trace.f_history;
    r.iterations = rec.trace.iterations;
    r.stop_reason = rec.trace.stop_reason;
    r.f_best = rec.trace.best_f();
    r.r = approximation_ratio(r.f_best, f_max);
    r.survived = survived;
    return r;
}

double level_repetition_us(int level, std::size_t edges, const CostModel& m) {
    if (!m.include_circuit) return m.t_single_us;
    return m.t_prep_meas_us + static_cast<double>(level) * static_cast<double>(edges + 1) * m.t_gate_us;
}

double round_runtime_us(int iterations, int level, std::size_t edges, const CostModel& m) {
    return level_repetition_us(level, edges, m) * m.m_shots * static_cast<double>(iterations);
}

std::string fmt_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

double round_runtime_s(int iterations, int level, std::size_t edges, const CostModel& model) {
    return round_runtime_us(iterations, level, edges, model) / 1e6;
}

double estimate_runtime(const StrategyResult& run, std::size_t edges, const CostModel& model) {
    double us = 0.0;
    for (const auto& rec : run.records) us += round_runtime_us(rec.trace.iterations, rec.level, edges, model);
    return us / 1e6;
}

double estimate_runtime(const std::vector<StrategyResult>& runs, std::size_t edges, const CostModel& model) {
    double us = 0.0;
    for (const auto& run : runs)
        for (const auto& rec : run.records) us += round_runtime_us(rec.trace.iterations, rec.level, edges, model);
    return us / 1e6;
}

double estimate_runtime(const GreedyResult& result, std::size_t edges, const CostModel& model) {
    double us = 0.0;
    for (const auto& lvl : result.levels)
        for (const auto& rnd : lvl.rounds) us += round_runtime_us(rnd.record.trace.iterations, lvl.level, edges, model);
    return us / 1e6;
}

double estimate_runtime(const ExperimentSummary& summary, const CostModel& model) {
    double us = 0.0;
    for (const auto& r : summary.rounds) us += round_runtime_us(r.iterations, r.level, summary.edges.size(), model);
    return us / 1e6;
}

namespace {

IterationTotals totals_from(const std::map<int, long long>& per_level) {
    IterationTotals t;
    for (const auto& [level, n] : per_level) {
        t.per_level.emplace_back(level, n);
        t.total += n;
    }
    return t;
}

}  // namespace

IterationTotals total_iterations(const std::vector<StrategyResult>& runs) {
    std::map<int, long long> acc;
    for (const auto& run : runs)
        for (const auto& rec : run.records) acc[rec.level] += rec.trace.iterations;
    return totals_from(acc);
}

IterationTotals total_iterations(const GreedyResult& result) {
    std::map<int, long long> acc;
    for (const auto& lvl : result.levels)
        for (const auto& rnd : lvl.rounds) acc[lvl.level] += rnd.record.trace.iterations;
    return totals_from(acc);
}

IterationTotals total_iterations(const std::vector<RoundRecord>& rounds) {
    std::map<int, long long> acc;
    for (const auto& r : rounds) acc[r.level] += r.iterations;
    return totals_from(acc);
}

std::vector<LevelSummary> aggregate_levels(const std::vector<RoundRecord>& rounds) {
    std::map<int, LevelSummary> acc;
    std::map<int, double> r_sum;
    for (const auto& r : rounds) {
        auto& s = acc[r.level];
        s.level = r.level;
        s.oar = s.rounds == 0 ? r.r : std::max(s.oar, r.r);
        ++s.rounds;
        s.iterations += r.iterations;
        r_sum[r.level] += r.r;
    }
    std::vector<LevelSummary> out;
    for (auto& [level, s] : acc) {
        s.aar = r_sum[level] / s.rounds;
        out.push_back(s);
    }
    return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const CostModel& model) {
    cfg.validate();
    Graph g = cfg.graph_path ? load_graph(*cfg.graph_path) : [&] {
        Rng rng(cfg.generator.seed);
        return generate_regular(cfg.generator.n, cfg.generator.degree, rng);
    }();
    const Problem problem(std::move(g));
    return run_experiment(cfg, problem, resolve_schedule(cfg, problem), model);
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const Problem& problem, const Schedule& schedule,
                                 const CostModel& model) {
    cfg.validate();
    model.validate();
    if (schedule.target() != cfg.p)
        throw ParameterError("schedule " + schedule.to_string() + " does not end at p=" + std::to_string(cfg.p));

    ExperimentSummary s;
    s.config = config_json(cfg, schedule);
    s.n = problem.graph.n();
    s.edges = problem.graph.edges();
    s.fingerprint = fingerprint(problem.graph);
    s.f_max = problem.f_max;
    s.strategy = cfg.strategy;
    s.schedule = schedule.levels();
    s.cost_model = model;

    if (cfg.strategy == StrategyKind::greedy_mli) {
        const auto res = run_greedy_mli(problem, schedule, cfg.c, cfg.keep_tol, cfg.seed, cfg.adam, cfg.stop);
        std::map<std::size_t, int> lineage_iters;
        for (const auto& lvl : res.levels)
            for (const auto& rnd : lvl.rounds) {
                s.rounds.push_back(make_round(0, static_cast<int>(rnd.lineage), rnd.record, problem.f_max, rnd.survived));
                lineage_iters[rnd.lineage] += rnd.record.trace.iterations;
            }
        for (const auto& rnd : res.levels.back().rounds) {
            RunRecord rr;
            rr.index = static_cast<int>(rnd.lineage);
            rr.seed = derive_seed(cfg.seed, rnd.lineage);
            rr.final_f = rnd.record.trace.best_f();
            rr.final_r = approximation_ratio(rr.final_f, problem.f_max);
            rr.iterations = lineage_iters[rnd.lineage];
            rr.final_params = rnd.record.trace.final_params;
            s.runs.push_back(std::move(rr));
        }
    } else {
        const auto runs = run_many(problem, schedule, cfg.runs, cfg.seed, cfg.adam, cfg.stop);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            RunRecord rr;
            rr.index = static_cast<int>(i);
            rr.seed = runs[i].seed;
            rr.final_f = runs[i].final_f;
            rr.final_r = runs[i].final_r;
            for (const auto& rec : runs[i].records) {
                s.rounds.push_back(make_round(static_cast<int>(i), 0, rec, problem.f_max, true));
                rr.iterations += rec.trace.iterations;
            }
            rr.final_params = runs[i].records.back().trace.final_params;
            s.runs.push_back(std::move(rr));
        }
    }

    s.levels = aggregate_levels(s.rounds);
    s.total_iterations = total_iterations(s.rounds).total;
    s.estimated_runtime_s = estimate_runtime(s, model);
    return s;
}

json to_json(const ExperimentSummary& s) {
    json j;
    j["format"] = "mleap-summary/1";
    j["config"] = s.config;
    json edges = json::array();
    for (const auto& [u, v] : s.edges) edges.push_back({u, v});
    j["graph"] = {{"n", s.n}, {"edges", edges}, {"fingerprint", s.fingerprint}, {"f_max", s.f_max}};
    j["strategy"] = std::string(to_string(s.strategy));
    j["schedule"] = s.schedule;

    json levels = json::array();
    for (const auto& l : s.levels)
        levels.push_back({{"level", l.level}, {"rounds", l.rounds}, {"oar", l.oar}, {"aar", l.aar}, {"iterations", l.iterations}});
    j["levels"] = levels;
    j["total_iterations"] = s.total_iterations;
    j["cost_model"] = {{"t_single_us", s.cost_model.t_single_us},
                       {"m_shots", s.cost_model.m_shots},
                       {"t_gate_us", s.cost_model.t_gate_us},
                       {"t_prep_meas_us", s.cost_model.t_prep_meas_us},
                       {"include_circuit", s.cost_model.include_circuit}};
    j["estimated_runtime_s"] = s.estimated_runtime_s;

    json runs = json::array();
    for (const auto& r : s.runs)
        runs.push_back({{"index", r.index},
                        {"seed", r.seed},
                        {"final_f", r.final_f},
                        {"final_r", r.final_r},
                        {"iterations", r.iterations},
                        {"final_params", params_json(r.final_params)}});
    j["runs"] = runs;

    json rounds = json::array();
    for (const auto& r : s.rounds)
        rounds.push_back({{"run", r.run},
                          {"lineage", r.lineage},
                          {"level", r.level},
                          {"iterations", r.iterations},
                          {"stop_reason", std::string(to_string(r.stop_reason))},
                          {"f_best", r.f_best},
                          {"r", r.r},
                          {"survived", r.survived},
                          {"init", params_json(r.init)},
                          {"final_params", params_json(r.final_params)},
                          {"f_history", r.f_history}});
    j["rounds"] = rounds;
    return j;
}

ExperimentSummary summary_from_json(const json& j) {
    try {
        if (j.at("format") != "mleap-summary/1") throw ParameterError("unsupported summary format");
        ExperimentSummary s;
        s.config = j.at("config");
        const auto& g = j.at("graph");
        s.n = g.at("n");
        for (const auto& e : g.at("edges")) s.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        s.fingerprint = g.at("fingerprint");
        s.f_max = g.at("f_max");
        s.strategy = strategy_from_string(j.at("strategy").get<std::string>());
        s.schedule = j.at("schedule").get<std::vector<int>>();
        for (const auto& l : j.at("levels"))
            s.levels.push_back({l.at("level"), l.at("rounds"), l.at("oar"), l.at("aar"), l.at("iterations")});
        s.total_iterations = j.at("total_iterations");
        const auto& cm = j.at("cost_model");
        s.cost_model = {cm.at("t_single_us"), cm.at("m_shots"), cm.at("t_gate_us"), cm.at("t_prep_meas_us"),
                        cm.at("include_circuit")};
        s.estimated_runtime_s = j.at("estimated_runtime_s");
        for (const auto& r : j.at("runs")) {
            RunRecord rr;
            rr.index = r.at("index");
            rr.seed = r.at("seed");
            rr.final_f = r.at("final_f");
            rr.final_r = r.at("final_r");
            rr.iterations = r.at("iterations");
            rr.final_params = params_from_json(r.at("final_params"));
            s.runs.push_back(std::move(rr));
        }
        for (const auto& r : j.at("rounds")) {
            RoundRecord rd;
            rd.run = r.at("run");
            rd.lineage = r.at("lineage");
            rd.level = r.at("level");
            rd.iterations = r.at("iterations");
            rd.stop_reason = stop_reason_from_string(r.at("stop_reason").get<std::string>());
            rd.f_best = r.at("f_best");
            rd.r = r.at("r");
            rd.survived = r.at("survived");
            rd.init = params_from_json(r.at("init"));
            rd.final_params = params_from_json(r.at("final_params"));
            rd.f_history = r.at("f_history").get<std::vector<double>>();
            s.rounds.push_back(std::move(rd));
        }
        return s;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed summary: ") + e.what());
    }
}

std::string summary_json_text(const ExperimentSummary& summary) { return to_json(summary).dump(2) + "\n"; }

std::string summary_table_csv(const ExperimentSummary& s) {
    std::string out = "level,metric,value\n";
    for (const auto& l : s.levels) {
        const auto lv = std::to_string(l.level);
        out += lv + ",oar," + fmt_double(l.oar) + "\n";
        out += lv + ",aar," + fmt_double(l.aar) + "\n";
        out += lv + ",iterations," + std::to_string(l.iterations) + "\n";
        out += lv + ",rounds," + std::to_string(l.rounds) + "\n";
    }
    out += "all,iterations," + std::to_string(s.total_iterations) + "\n";
    out += "all,estimated_runtime_s," + fmt_double(s.estimated_runtime_s) + "\n";
    return out;
}

std::string summary_runs_csv(const ExperimentSummary& s) {
    std::string out = "run,seed,final_f,final_r,iterations\n";
    for (const auto& r : s.runs)
        out += std::to_string(r.index) + "," + std::to_string(r.seed) + "," + fmt_double(r.final_f) + "," +
               fmt_double(r.final_r) + "," + std::to_string(r.iterations) + "\n";
    return out;
}

std::string runs_csv_path(const std::string& table_path) {
    const auto slash = table_path.find_last_of('/');
    const auto dot = table_path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? table_path.substr(0, dot) : table_path) + ".runs.csv";
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit_summary(const ExperimentSummary& summary, SummaryFormat format, const std::string& path) {
    if (format == SummaryFormat::json) {
        write_text_file(path, summary_json_text(summary));
        return;
    }
    write_text_file(path, summary_table_csv(summary));
    write_text_file(runs_csv_path(path), summary_runs_csv(summary));
}

ExperimentSummary load_summary(const std::string& path) {
    const auto text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(path + ": " + e.what());
    }
    return summary_from_json(j);
}

std::vector<std::string> verify_summary(const ExperimentSummary& s) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
    };

    const auto stop = s.config.value("stop", json::object());
    const double delta = stop.value("delta", StopConfig{}.delta);
    const int max_iter = stop.value("max_iter", StopConfig{}.max_iter);
    for (std::size_t i = 0; i < s.rounds.size(); ++i) {
        const auto& r = s.rounds[i];
        const auto tag = "round " + std::to_string(i) + " (level " + std::to_string(r.level) + ")";
        check(r.iterations == static_cast<int>(r.f_history.size()), tag + ": iteration count != history length");
        if (r.f_history.empty()) continue;
        check(r.f_best == *std::max_element(r.f_history.begin(), r.f_history.end()), tag + ": f_best != max history");
        check(s.f_max > 0 && r.r == r.f_best / s.f_max, tag + ": r != f_best / f_max");
        // The rule must fire exactly at the last entry for converged rounds
        // and nowhere for capped ones.
        const std::span<const double> hist(r.f_history);
        bool fired_early = false;
        for (std::size_t k = 3; k < hist.size() && !fired_early; ++k) fired_early = should_stop(hist.first(k), delta);
        check(!fired_early, tag + ": the stop rule held before the last iteration");
        if (r.stop_reason == StopReason::converged)
            check(should_stop(hist, delta), tag + ": marked converged but the stop rule does not hold");
        else
            check(!should_stop(hist, delta) && r.iterations == max_iter,
                  tag + ": marked max_iter but the stop rule holds or the cap was not reached");
        check(r.init.level() == static_cast<std::size_t>(r.level) && r.final_params.level() == r.init.level(),
              tag + ": parameter length != level");
    }

    const auto levels = aggregate_levels(s.rounds);
    check(levels.size() == s.levels.size(), "level count mismatch");
    for (std::size_t i = 0; i < std::min(levels.size(), s.levels.size()); ++i) {
        const auto& a = levels[i];
        const auto& b = s.levels[i];
        const auto tag = "level " + std::to_string(b.level);
        check(a.level == b.level && a.rounds == b.rounds, tag + ": round count mismatch");
        check(a.oar == b.oar, tag + ": OAR mismatch");
        check(a.aar == b.aar, tag + ": AAR mismatch");
        check(a.iterations == b.iterations, tag + ": iteration total mismatch");
        check(b.oar >= b.aar, tag + ": OAR below AAR");
    }
    check(total_iterations(s.rounds).total == s.total_iterations, "grand iteration total mismatch");
    check(estimate_runtime(s, s.cost_model) == s.estimated_runtime_s, "runtime estimate mismatch");

    for (const auto& run : s.runs) {
        const auto tag = "run " + std::to_string(run.index);
        int iters = 0;
        const RoundRecord* last = nullptr;
        for (const auto& r : s.rounds) {
            const bool mine = s.strategy == StrategyKind::greedy_mli ? r.lineage == run.index : r.run == run.index;
            if (!mine) continue;
            iters += r.iterations;
            last = &r;
        }
        check(iters == run.iterations, tag + ": iteration total mismatch");
        check(last && last->f_best == run.final_f && last->r == run.final_r, tag + ": final F/r mismatch");
    }
    return bad;
}

}  // namespace mleap
