#include "choicewalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "choicewalk/errors.hpp"
#include "choicewalk/estimator.hpp"
#include "choicewalk/families.hpp"
#include "choicewalk/oracle.hpp"
#include "choicewalk/process.hpp"
#include "choicewalk/report.hpp"

namespace choicewalk {

using nlohmann::ordered_json;

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["families"] = c.families;
    j["process"] = c.process;
    j["r"] = c.r;
    j["policy"] = c.policy;
    j["phase_switch"] = c.phase_switch;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["grid"] = c.grid;
    j["out"] = c.out;
    j["format"] = c.format;
    j["svg"] = c.svg;
    j["workers"] = c.workers;
    j["sizes"] = c.sizes;
    j["mode"] = c.mode;
    j["weight"] = c.weight ? ordered_json(*c.weight) : ordered_json(nullptr);
    j["samples"] = c.samples;
    j["n"] = c.n;
    j["eps"] = c.eps ? ordered_json(*c.eps) : ordered_json(nullptr);
    j["steps"] = c.steps ? ordered_json(*c.steps) : ordered_json(nullptr);
    j["reps"] = c.reps;
    j["prefixes"] = c.prefixes;
    j["trajectories"] = c.trajectories;
    j["inner_trials"] = c.inner_trials;
    return j;
}

RunConfig run_config_from_json(const ordered_json& j) {
    RunConfig c;
    try {
        j.at("command").get_to(c.command);
        j.at("families").get_to(c.families);
        j.at("process").get_to(c.process);
        j.at("r").get_to(c.r);
        j.at("policy").get_to(c.policy);
        j.at("phase_switch").get_to(c.phase_switch);
        j.at("trials").get_to(c.trials);
        j.at("seed").get_to(c.seed);
        j.at("grid").get_to(c.grid);
        j.at("out").get_to(c.out);
        j.at("format").get_to(c.format);
        j.at("svg").get_to(c.svg);
        j.at("workers").get_to(c.workers);
        j.at("sizes").get_to(c.sizes);
        j.at("mode").get_to(c.mode);
        if (!j.at("weight").is_null()) c.weight = j.at("weight").get<std::size_t>();
        j.at("samples").get_to(c.samples);
        j.at("n").get_to(c.n);
        if (!j.at("eps").is_null()) c.eps = j.at("eps").get<double>();
        if (!j.at("steps").is_null()) c.steps = j.at("steps").get<std::size_t>();
        j.at("reps").get_to(c.reps);
        j.at("prefixes").get_to(c.prefixes);
        j.at("trajectories").get_to(c.trajectories);
        j.at("inner_trials").get_to(c.inner_trials);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed run config: ") + e.what());
    }
    return c;
}

namespace {

const std::vector<std::string> kCommands = {"simulate", "curve",    "threshold", "ratio",
                                            "exact",    "census",   "diagnose",  "families"};

unsigned default_workers() {
    const char* env = std::getenv("CHOICEWALK_WORKERS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("CHOICEWALK_WORKERS must be a number, got '") + env + "'");
    return static_cast<unsigned>(v);
}

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (std::uint64_t{rd()} << 32) ^ rd();
    }
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used, 0);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("--seed takes a non-negative integer or 'random', got '" + text + "'");
}

} // namespace

std::optional<CommandLine> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    CommandLine line;
    RunConfig& c = line.config;
    c.workers = default_workers();

    CLI::App app{"Monte Carlo and exact analysis of r-choice walks on monotone Boolean functions", "choicewalk"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string seed_text;
    std::map<std::string, CLI::Option*> process_opts;
    double eps = 0;
    std::size_t steps = 0, weight = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", c.out, "Output path, '-' for standard output")->capture_default_str();
        sub->add_option("--format", c.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--seed", seed_text, "Base seed, or 'random'")->default_str(std::to_string(kDefaultSeed));
        sub->add_option("--workers", c.workers, "Worker threads, 0 for all (env CHOICEWALK_WORKERS)");
        sub->add_flag("--quiet,-q", line.quiet, "No progress on standard error");
    };
    auto family = [&](CLI::App* sub, bool many) {
        auto* opt = sub->add_option("--family,-f", c.families,
                                    many ? "Family spec kind:key=value,... (repeatable)" : "Family spec kind:key=value,...");
        opt->required();
        if (!many) opt->expected(1);
    };
    auto walk = [&](CLI::App* sub, bool with_process) {
        if (with_process)
            process_opts[sub->get_name()] = sub->add_option("--process", c.process, "solo, rchoice or rcomplete")
                                                ->check(CLI::IsMember({"solo", "rchoice", "rcomplete"}));
        sub->add_option("--r", c.r, "Proposal size / bits per step")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--policy", c.policy, "Agent policy of the r-choice walk")
            ->check(CLI::IsMember(builtin_policies()))
            ->capture_default_str();
        sub->add_option("--phase-switch", c.phase_switch, "connectivity_two_phase switch rule")
            ->check(CLI::IsMember({"adaptive", "steps"}))
            ->capture_default_str();
    };
    auto trials = [&](CLI::App* sub) {
        sub->add_option("--trials,-n", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)->capture_default_str();
    };

    auto* simulate = app.add_subcommand("simulate", "Per-trial hitting times");
    family(simulate, false), walk(simulate, true), trials(simulate), common(simulate);

    auto* curve = app.add_subcommand("curve", "Activation probability Pr[H <= t] on a grid of t");
    family(curve, false), walk(curve, true), trials(curve), common(curve);
    curve->add_option("--grid", c.grid, "t grid: 'all', a:b[:step] or a comma list (default automatic)");
    curve->add_option("--svg", c.svg, "Also write an SVG chart here");

    auto* threshold = app.add_subcommand("threshold", "Lower median of the hitting time with confidence interval");
    family(threshold, false), walk(threshold, true), trials(threshold), common(threshold);

    auto* ratio = app.add_subcommand("ratio", "rho = r T_r / T_1 across instance sizes");
    family(ratio, true), walk(ratio, false), trials(ratio), common(ratio);
    ratio->add_option("--sizes", c.sizes, "Values of the family's size parameter")->delimiter(',');
    ratio->add_option("--svg", c.svg, "Also write an SVG chart here");

    auto* exact = app.add_subcommand("exact", "Small-arity exact oracles");
    family(exact, false), walk(exact, false), common(exact);
    exact->add_option("--mode", c.mode, "solo, policy, optimal, relevant, level or monotone")
        ->check(CLI::IsMember({"solo", "policy", "optimal", "relevant", "level", "monotone"}))
        ->capture_default_str();
    auto* weight_opt = exact->add_option("--weight", weight, "level mode: a single weight (default all)");
    exact->add_option("--samples", c.samples, "Samples when the check cannot be exhaustive")->capture_default_str();
    exact->add_option("--svg", c.svg, "Also write an SVG chart here (curve modes)");

    auto* census = app.add_subcommand("census", "How often elements get proposed by the uniform r-choice walk");
    census->add_option("--n", c.n, "Number of elements")->required()->check(CLI::PositiveNumber);
    census->add_option("--r", c.r, "Proposal size")->check(CLI::PositiveNumber)->capture_default_str();
    auto* eps_opt = census->add_option("--eps", eps, "Steps as a fraction of n")->check(CLI::Range(0.0, 1.0));
    auto* steps_opt = census->add_option("--steps", steps, "Steps");
    eps_opt->excludes(steps_opt);
    census->add_option("--reps", c.reps, "Independent repetitions")->check(CLI::PositiveNumber)->capture_default_str();
    common(census);

    auto* diagnose = app.add_subcommand("diagnose", "Relevant-set size and contraction threshold of f^s along random orders");
    family(diagnose, false), common(diagnose);
    diagnose->add_option("--prefixes", c.prefixes, "Prefix lengths s (default 0, n/8, n/4, n/2)")->delimiter(',');
    diagnose->add_option("--trajectories", c.trajectories, "Random activation orders")->capture_default_str();
    diagnose->add_option("--inner-trials", c.inner_trials, "Solo trials per contraction threshold")
        ->capture_default_str();

    auto* families = app.add_subcommand("families", "List family kinds and their parameters");
    families->add_option("--out,-o", c.out, "Output path, '-' for standard output")->capture_default_str();
    families->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        std::string what = e.what();
        if (what.empty()) what = e.get_name();
        throw UsageError(what + " (see --help)");
    }

    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
    c.seed = seed_text.empty() ? kDefaultSeed : parse_seed(seed_text);
    if (weight_opt->count()) c.weight = weight;
    if (eps_opt->count()) c.eps = eps;
    if (steps_opt->count()) c.steps = steps;
    // --r above 1 without --process means the r-choice walk.
    if (auto it = process_opts.find(c.command); it != process_opts.end() && it->second->count() == 0 && c.r > 1)
        c.process = "rchoice";
    return line;
}

namespace {

FunctionHandle single_family(const RunConfig& c) {
    if (c.families.size() != 1)
        throw UsageError(c.command + " takes exactly one --family, got " + std::to_string(c.families.size()));
    return build_function(c.families.front());
}

PolicyOptions policy_options(const RunConfig& c) {
    PolicyOptions o;
    o.phase_switch = c.phase_switch == "steps" ? PhaseSwitch::step_count : PhaseSwitch::adaptive;
    return o;
}

PolicyHandle policy_of(const RunConfig& c) { return make_policy(c.policy, policy_options(c)); }

ProcessConfig process_of(const RunConfig& c) {
    if (c.process == "solo") {
        if (c.r != 1) throw UsageError("the solo walk flips one bit per step; use --process rchoice or rcomplete with --r");
        return ProcessConfig::solo();
    }
    if (c.process == "rchoice") return ProcessConfig::rchoice(c.r, policy_of(c));
    if (c.process == "rcomplete") return ProcessConfig::rcomplete(c.r);
    throw UsageError("unknown process '" + c.process + "' (solo, rchoice, rcomplete)");
}

class Progress {
public:
    Progress(std::ostream& err, std::string label, bool enabled) : err_(err), label_(std::move(label)), on_(enabled) {}

    std::function<void(std::size_t, std::size_t)> callback() {
        if (!on_) return nullptr;
        return [this](std::size_t done, std::size_t total) {
            const std::size_t tenth = total ? done * 10 / total : 10;
            if (tenth == last_) return;
            last_ = tenth;
            err_ << label_ << ": " << done << '/' << total << '\n' << std::flush;
        };
    }

    void relabel(std::string label) {
        label_ = std::move(label);
        last_ = 0;
    }

private:
    std::ostream& err_;
    std::string label_;
    bool on_;
    std::size_t last_ = 0;
};

RunOptions options_of(const RunConfig& c, Progress& progress) {
    RunOptions o;
    o.seed = c.seed;
    o.workers = c.workers;
    o.progress = progress.callback();
    return o;
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": '" + item + "' is not a non-negative integer");
        }
    }
    return out;
}

std::vector<std::size_t> grid_of(const std::string& spec, std::size_t n) {
    std::vector<std::size_t> grid;
    if (spec.empty()) {
        if (n <= 200) {
            for (std::size_t t = 0; t <= n; ++t) grid.push_back(t);
        } else {
            for (std::size_t k = 0; k <= 100; ++k) grid.push_back((k * n + 50) / 100);
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        }
        return grid;
    }
    if (spec == "all") return grid_of("0:" + std::to_string(n), n);
    if (spec.find(':') != std::string::npos) {
        std::string norm = spec;
        std::replace(norm.begin(), norm.end(), ':', ',');
        const auto parts = parse_list(norm, "--grid");
        if (parts.size() < 2 || parts.size() > 3 || parts[0] > parts[1] || (parts.size() == 3 && parts[2] == 0))
            throw UsageError("--grid range must be a:b or a:b:step with a <= b and step >= 1, got '" + spec + "'");
        const std::size_t step = parts.size() == 3 ? parts[2] : 1;
        for (std::size_t t = parts[0]; t <= parts[1]; t += step) grid.push_back(t);
    } else {
        grid = parse_list(spec, "--grid");
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    if (!grid.empty() && grid.back() > n)
        throw UsageError("--grid point " + std::to_string(grid.back()) + " exceeds the arity " + std::to_string(n));
    return grid;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string join(const std::vector<std::size_t>& v, char sep = ' ') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

void emit(const RunConfig& c, const Table& table, std::ostream& out) {
    const Metadata meta{to_json(c), c.seed, utc_timestamp()};
    const std::string content = c.format == "json" ? to_json(table, meta) : to_csv(table, meta);
    if (c.out.empty() || c.out == "-")
        out << content << std::flush;
    else
        write_file(c.out, content);
}

void emit_chart(const RunConfig& c, const Chart& chart) {
    if (!c.svg.empty()) write_file(c.svg, render_svg(chart));
}

void require_no_svg(const RunConfig& c) {
    if (!c.svg.empty()) throw UsageError("--svg is only available for curve, ratio and the exact curve modes");
}

void run_simulate(const RunConfig& c, std::ostream& out, Progress& progress) {
    const auto f = single_family(c);
    const auto samples = sample_hitting_times(*f, process_of(c), c.trials, options_of(c, progress));
    Table table({"trial", "seed", "hitting_time", "useful_steps"});
    for (std::size_t i = 0; i < samples.size(); ++i)
        table.add({as_int(i), std::to_string(samples[i].seed), as_int(samples[i].hitting_time),
                   as_int(samples[i].useful_steps)});
    emit(c, table, out);
}

void run_curve(const RunConfig& c, std::ostream& out, Progress& progress) {
    const auto f = single_family(c);
    const auto process = process_of(c);
    const auto grid = grid_of(c.grid, f->arity());
    const auto est = estimate_curve(*f, process, c.trials, grid, options_of(c, progress));
    Table table({"t", "p", "ci_lo", "ci_hi"});
    Series series{process.describe(), {}};
    for (const auto& p : est.points) {
        table.add({as_int(p.t), p.p, p.ci_lo, p.ci_hi});
        series.points.emplace_back(static_cast<double>(p.t), p.p);
    }
    emit(c, table, out);
    emit_chart(c, Chart{f->name(), "t (bits flipped)", "activation probability", {series}});
}

void run_threshold(const RunConfig& c, std::ostream& out, Progress& progress) {
    const auto f = single_family(c);
    const auto process = process_of(c);
    const auto est = estimate_threshold(*f, process, c.trials, options_of(c, progress));
    Table table({"family", "process", "r", "policy", "trials", "point", "ci_lo", "ci_hi"});
    table.add({f->name(), c.process, as_int(c.r), process.policy_name(), as_int(est.trials), as_int(est.point),
               as_int(est.ci_low), as_int(est.ci_high)});
    emit(c, table, out);
}

void run_ratio(const RunConfig& c, std::ostream& out, Progress& progress) {
    if (c.families.empty()) throw UsageError("ratio needs at least one --family");
    if (c.r < 2) throw UsageError("ratio compares r-choice against solo; use --r 2 or more");
    if (c.families.size() > 8 && !c.svg.empty()) throw UsageError("an SVG chart holds at most 8 families");
    const auto policy = policy_of(c);

    Table table({"family", "n", "r", "policy", "T1", "T1_lo", "T1_hi", "Tr", "Tr_lo", "Tr_hi", "rho", "rho_lo",
                 "rho_hi"});
    Chart chart{"rho = r T_r / T_1", "size", "rho", {}};
    std::vector<std::string> keys;
    for (const auto& text : c.families) {
        const auto spec = FamilySpec::parse(text);
        const auto key = size_key(spec.kind);
        std::vector<std::size_t> sizes = c.sizes;
        if (sizes.empty()) {
            const auto* v = spec.find(key);
            if (!v) throw UsageError("ratio: give --sizes or set " + key + " in " + text);
            sizes = parse_list(*v, "size");
        }
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        FamilySpec base = spec;
        std::erase_if(base.params, [&](const auto& kv) { return kv.first == key; });
        progress.relabel("ratio " + base.to_string());
        const auto rows = ratio_table([&](std::size_t s) { return build_function(spec.with(key, std::to_string(s))); },
                                      sizes, c.r, policy, c.trials, options_of(c, progress));
        Series series{base.to_string(), {}};
        for (const auto& row : rows) {
            table.add({row.family, as_int(row.n), as_int(row.r), row.policy, as_int(row.t1.point),
                       as_int(row.t1.ci_low), as_int(row.t1.ci_high), as_int(row.tr.point), as_int(row.tr.ci_low),
                       as_int(row.tr.ci_high), row.rho, row.rho_lo, row.rho_hi});
            series.points.emplace_back(static_cast<double>(row.n), row.rho);
        }
        chart.series.push_back(std::move(series));
    }
    emit(c, table, out);
    chart.x_label = "size";
    for (std::size_t i = 0; i < keys.size(); ++i) chart.x_label += (i ? ", " : " (") + keys[i];
    chart.x_label += ")";
    emit_chart(c, chart);
}

void run_exact(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto f = single_family(c);
    if (c.mode == "solo" || c.mode == "policy" || c.mode == "optimal") {
        ExactCurve curve;
        std::string label;
        if (c.mode == "solo") {
            curve = exact_solo_curve(*f);
            label = "solo";
        } else if (c.mode == "policy") {
            curve = exact_policy_curve(*f, *policy_of(c), c.r);
            label = "rchoice(r=" + std::to_string(c.r) + "," + c.policy + ")";
        } else {
            curve = optimal_rchoice_curve(*f, c.r);
            label = "optimal(r=" + std::to_string(c.r) + ")";
        }
        Table table({"t", "p", "exact", "error_bound"});
        Series series{label, {}};
        for (std::size_t t = 0; t < curve.values.size(); ++t) {
            table.add({as_int(t), curve.values[t], curve.is_exact() ? curve.exact[t].get_str() : std::string(),
                       curve.error_bound});
            series.points.emplace_back(static_cast<double>(t), curve.values[t]);
        }
        emit(c, table, out);
        err << f->name() << ' ' << label << ": threshold " << curve.threshold() << '\n';
        emit_chart(c, Chart{f->name(), "t (bits flipped)", "activation probability", {series}});
        return;
    }
    require_no_svg(c);
    if (c.mode == "relevant") {
        Table table({"index"});
        for (auto i : relevant_set_bruteforce(*f)) table.add({as_int(i)});
        emit(c, table, out);
    } else if (c.mode == "level") {
        Table table({"s", "p", "exact", "samples"});
        std::vector<std::size_t> weights;
        if (c.weight)
            weights.push_back(*c.weight);
        else
            for (std::size_t s = 0; s <= f->arity(); ++s) weights.push_back(s);
        for (auto s : weights) {
            const auto lp = level_probability(*f, s, c.samples, c.seed);
            table.add({as_int(s), lp.value, lp.exact ? lp.exact->get_str() : std::string(), as_int(lp.samples)});
        }
        emit(c, table, out);
    } else if (c.mode == "monotone") {
        const auto rep = monotonicity_check(*f, c.samples, c.seed);
        Table table({"monotone", "exhaustive", "witness_low", "witness_high"});
        table.add({as_int(rep.monotone), as_int(rep.exhaustive), join(rep.witness_low), join(rep.witness_high)});
        emit(c, table, out);
    } else {
        throw UsageError("unknown --mode '" + c.mode + "'");
    }
}

void run_census(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.n == 0) throw UsageError("census needs --n >= 1");
    if (c.eps.has_value() == c.steps.has_value()) throw UsageError("census needs exactly one of --eps and --steps");
    const std::size_t steps = c.steps ? *c.steps : static_cast<std::size_t>(std::floor(*c.eps * static_cast<double>(c.n)));
    Table table({"rep", "n", "r", "steps", "never", "once", "twice_plus", "never_fraction"});
    double sum = 0;
    for (std::size_t k = 0; k < c.reps; ++k) {
        Rng rng = make_stream(c.seed, k);
        const auto census = collision_census(c.n, c.r, steps, rng);
        const double frac = static_cast<double>(census.never) / static_cast<double>(c.n);
        sum += frac;
        table.add({as_int(k), as_int(c.n), as_int(c.r), as_int(steps), as_int(census.never), as_int(census.once),
                   as_int(census.twice_plus), frac});
    }
    emit(c, table, out);
    const double target = std::pow(1.0 - static_cast<double>(steps) / static_cast<double>(c.n), static_cast<double>(c.r));
    err << "census: mean never-proposed fraction " << format_number(sum / static_cast<double>(c.reps))
        << " over " << c.reps << " reps; (1 - steps/n)^r = " << format_number(target) << '\n';
}

void run_diagnose(const RunConfig& c, std::ostream& out, Progress& progress) {
    const auto f = single_family(c);
    std::vector<std::size_t> prefixes = c.prefixes;
    if (prefixes.empty()) {
        const auto n = f->arity();
        prefixes = {0, n / 8, n / 4, n / 2};
        prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
    }
    const auto rows = restriction_diagnostics(f, prefixes, c.trajectories, c.inner_trials, options_of(c, progress));
    Table table({"prefix", "trajectories", "active", "mean_relevant", "mean_contraction_threshold", "exact"});
    for (const auto& row : rows)
        table.add({as_int(row.prefix), as_int(row.trajectories), as_int(row.active), row.mean_relevant,
                   row.mean_contraction_threshold, as_int(row.exact)});
    emit(c, table, out);
}

void run_families(const RunConfig& c, std::ostream& out) {
    Table table({"kind", "parameters", "size_key", "description"});
    for (const auto& info : family_catalog())
        table.add({info.kind, info.parameters, size_key(info.kind), info.description});
    emit(c, table, out);
}

} // namespace

void execute(const RunConfig& c, std::ostream& out, std::ostream& err, bool progress_on) {
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json, got '" + c.format + "'");
    Progress progress(err, c.command, progress_on);
    if (c.command != "curve" && c.command != "ratio" && c.command != "exact") require_no_svg(c);
    if (c.command == "simulate") return run_simulate(c, out, progress);
    if (c.command == "curve") return run_curve(c, out, progress);
    if (c.command == "threshold") return run_threshold(c, out, progress);
    if (c.command == "ratio") return run_ratio(c, out, progress);
    if (c.command == "exact") return run_exact(c, out, err);
    if (c.command == "census") return run_census(c, out, err);
    if (c.command == "diagnose") return run_diagnose(c, out, progress);
    if (c.command == "families") return run_families(c, out);
    std::string known;
    for (const auto& k : kCommands) known += (known.empty() ? "" : ", ") + k;
    throw UsageError("unknown command '" + c.command + "' (" + known + ")");
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto line = parse_command_line(argc, argv, out);
        if (!line) return 0;
        execute(line->config, out, err, !line->quiet);
        return 0;
    } catch (const UsageError& e) {
        err << "choicewalk: " << e.what() << '\n';
        return 1;
    } catch (const CapacityError& e) {
        err << "choicewalk: " << e.what() << '\n';
        return 2;
    } catch (const IntegrityError& e) {
        err << "choicewalk: internal check failed: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "choicewalk: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "choicewalk: " << e.what() << '\n';
        return 2;
    }
}

} // namespace choicewalk
