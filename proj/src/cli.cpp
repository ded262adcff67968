#include "boxlab/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxlab/analysis.hpp"
#include "boxlab/grid.hpp"
#include "boxlab/lemmas.hpp"
#include "boxlab/sets.hpp"
#include "boxlab/suites.hpp"
#include "boxlab/witness.hpp"

namespace boxlab {

namespace {

using u64 = std::uint64_t;
using nlohmann::json;

std::string fixed6(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << v;
    return out.str();
}

// Relative output paths land under BOXLAB_OUT_DIR when that is set.
std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("BOXLAB_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string prefix(dir);
    if (prefix.back() != '/') prefix += '/';
    return prefix + path;
}

void write_sample_csv(const std::string& path,
                      const std::vector<std::pair<Rat, Rat>>& samples, u64 m) {
    std::string full = resolve_out_path(path);
    std::ofstream out(full);
    if (!out) throw SpecError("cannot open output file '" + full + "'");
    out << "x,height,box_column,box_row\n";
    for (const auto& [x, y] : samples) {
        out << rat_to_string(x) << ',' << rat_to_string(y) << ','
            << box_index(x, m) << ',' << row_index(y, m) << '\n';
    }
}

int cmd_dim(const std::string& set_spec, const std::string& schedule_spec,
            const std::string& counter, const std::string& format,
            double tail_fraction) {
    if (counter != "box" && counter != "gm")
        throw SpecError("counter must be box or gm");
    if (format != "csv" && format != "json")
        throw SpecError("format must be csv or json");

    CountedSet set = parse_set_spec(set_spec);
    std::vector<u64> schedule = parse_schedule(schedule_spec);
    CounterKind kind = counter == "box" ? CounterKind::Box : CounterKind::Gm;
    RatioSeries series = ratio_series(set, schedule, kind);
    DimensionEstimate est = estimate_dimension(series, tail_fraction);

    if (format == "csv") {
        std::cout << "m,value,ratio\n";
        for (const RatioEntry& row : series.rows)
            std::cout << row.m << ',' << row.value << ',' << fixed6(row.ratio) << '\n';
        std::cout << "# limsup_proxy=" << fixed6(est.limsup_proxy)
                  << " slope=" << fixed6(est.slope) << '\n';
    } else {
        json rows = json::array();
        for (const RatioEntry& row : series.rows)
            rows.push_back({{"m", row.m}, {"value", row.value}, {"ratio", row.ratio}});
        json doc = {{"counter", counter},
                    {"rows", rows},
                    {"limsup_proxy", est.limsup_proxy},
                    {"slope", est.slope},
                    {"degenerate", est.degenerate}};
        std::cout << doc.dump(2) << '\n';
    }
    return 0;
}

int cmd_witness(const std::string& set_spec, u64 m, const std::string& cap_text,
                unsigned stages, const std::string& schedule_spec,
                const std::string& out_path) {
    CountedSet set = parse_set_spec(set_spec);
    json summary;
    bool sound = true;

    if (stages > 0) {
        StackResult res =
            iterate_witness_stack(set, stages, parse_schedule(schedule_spec));
        json recs = json::array();
        for (const StageRecord& st : res.stages) {
            sound = sound && st.achieved >= st.bound;
            recs.push_back({{"stage", st.stage},
                            {"m", st.m},
                            {"height_cap", rat_to_string(st.height_cap)},
                            {"delta", rat_to_string(st.delta)},
                            {"sup_norm", rat_to_string(st.sup_norm)},
                            {"bound", st.bound},
                            {"achieved", st.achieved},
                            {"count_stack", st.count_stack},
                            {"count_final", st.count_final},
                            {"rows_prev", st.rows_prev},
                            {"ratio", st.ratio},
                            {"norm_ok", st.norm_ok},
                            {"carry_ok", st.carry_ok},
                            {"final_ok", st.final_ok},
                            {"tail_ok", st.tail_ok}});
        }
        summary = {{"stages", recs},
                   {"total_norm", rat_to_string(res.total_norm)},
                   {"total_norm_ok", res.total_norm_ok}};
        if (!out_path.empty()) {
            std::vector<std::pair<Rat, Rat>> samples;
            samples.reserve(res.samples.size());
            for (const Rat& x : res.samples) samples.emplace_back(x, res.function.eval(x));
            write_sample_csv(out_path, samples, res.stages.back().m);
        }
    } else {
        if (m == 0) throw SpecError("witness needs --m with a positive scale");
        if (cap_text.empty()) throw SpecError("witness needs --cap or --stages");
        Witness w = build_witness(set, m, parse_rational(cap_text));
        sound = w.achieved >= w.bound;
        summary = {{"m", w.m},
                   {"height_cap", rat_to_string(w.height_cap)},
                   {"bound", w.bound},
                   {"achieved", w.achieved}};
        if (!out_path.empty()) write_sample_csv(out_path, w.samples, w.m);
    }
    std::cout << summary.dump(2) << '\n';
    return sound ? 0 : 1;
}

int cmd_verify(const std::string& suite, u64 seed, bool seed_given, u64 trials,
               const std::string& p_text) {
    std::vector<SuiteReport> reports;
    if (suite == "lemmas") {
        if (!seed_given)
            throw SpecError("randomized commands require an explicit --seed");
        if (trials == 0) throw SpecError("trial count must be positive");
        if (trials > 10'000'000) throw BudgetError("trial count above the 10^7 budget");
        reports = run_lemma_suites(seed, static_cast<std::uint32_t>(trials));
    } else if (suite == "bounds") {
        reports.push_back(run_bounds_suite(seed));
    } else if (suite == "corollary2") {
        reports.push_back(run_power_crosscheck(parse_rational(p_text)));
    } else if (suite == "paperset") {
        LayeredParams params;
        params.a = make_rat(1, 2);
        params.c = make_rat(1, 3);
        params.levels = 3;
        reports.push_back(run_layered_suite(params));
    } else {
        throw SpecError("unknown suite '" + suite + "'");
    }

    json doc = json::array();
    u64 failures = 0;
    for (const SuiteReport& r : reports) {
        failures += r.failures;
        doc.push_back({{"suite", r.suite},
                       {"trials", r.trials},
                       {"passes", r.passes},
                       {"skips", r.skips},
                       {"failures", r.failures},
                       {"seed", r.seed}});
    }
    std::cout << doc.dump(2) << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"box-counting laboratory for capped box counts"};
    app.require_subcommand(1);

    std::string dim_set, dim_schedule, dim_counter = "gm", dim_format = "csv";
    double dim_tail = 0.5;
    CLI::App* dim = app.add_subcommand("dim", "scaling table and dimension estimate");
    dim->add_option("--set", dim_set, "set spec, e.g. power:p=1/2")->required();
    dim->add_option("--schedule", dim_schedule, "geo:<base>:<min>:<max> or list:...")
        ->required();
    dim->add_option("--counter", dim_counter, "box or gm (default gm)");
    dim->add_option("--format", dim_format, "csv or json (default csv)");
    dim->add_option("--tail-fraction", dim_tail, "tail share for the limsup proxy");

    std::string wit_set, wit_cap, wit_out, wit_schedule = "geo:2:16:16384";
    u64 wit_m = 0;
    unsigned wit_stages = 0;
    CLI::App* wit = app.add_subcommand("witness", "polygonal witness construction");
    wit->add_option("--set", wit_set, "set spec")->required();
    wit->add_option("--m", wit_m, "scale for the single-stage witness");
    wit->add_option("--cap", wit_cap, "height budget h (rational)");
    wit->add_option("--stages", wit_stages, "build a staged witness stack instead");
    wit->add_option("--schedule", wit_schedule, "candidate scales for --stages");
    wit->add_option("--out", wit_out, "sample CSV path (BOXLAB_OUT_DIR aware)");

    std::string ver_suite, ver_p = "1/2";
    u64 ver_seed = 0, ver_trials = 1000;
    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", ver_suite, "lemmas, bounds, corollary2 or paperset")
        ->required();
    CLI::Option* seed_opt = ver->add_option("--seed", ver_seed, "RNG seed (required for lemmas)");
    ver->add_option("--trials", ver_trials, "trials per randomized suite");
    ver->add_option("--p", ver_p, "exponent for corollary2");

    std::function<int()> action;
    dim->callback([&] {
        action = [&] { return cmd_dim(dim_set, dim_schedule, dim_counter, dim_format, dim_tail); };
    });
    wit->callback([&] {
        action = [&] {
            return cmd_witness(wit_set, wit_m, wit_cap, wit_stages, wit_schedule, wit_out);
        };
    });
    ver->callback([&] {
        action = [&] {
            return cmd_verify(ver_suite, ver_seed, seed_opt->count() > 0, ver_trials, ver_p);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!action) return 2;
        return action();
    } catch (const ResolutionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace boxlab
