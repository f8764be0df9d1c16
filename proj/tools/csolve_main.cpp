#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "csolve/harness.hpp"

namespace fs = std::filesystem;
using namespace csp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt_opt_double(const std::optional<double>& v) {
    if (!v) return "NA";
    std::ostringstream ss;
    ss << *v;
    return ss.str();
}

void print_summary(std::ostream& out, const Problem& p, const RunRecord& r,
                   const SearchReport& report) {
    out << "instance: " << r.instance << "  (" << p.num_variables() << " vars, "
        << p.num_constraints() << " cons)\n";
    out << "scheme: " << r.scheme << "  voh: " << r.voh << "  e: " << fmt_opt_double(r.e) << "\n";
    out << "verdict: " << r.verdict << "\n";
    out << "nodes: " << report.nodes << "  vc: " << report.vc << "  vc_blocked: "
        << report.vc_blocked << "  dis_mean: " << fmt_opt_double(r.dis_mean) << "\n";
    out << "dwo: " << report.dwo_count << "  deletion_events: " << report.deletion_event_count
        << "\n";
    out << "solutions: " << report.solution_count << "  time_ms: " << *r.time_ms << "\n";
    if (!report.solutions.empty()) {
        out << "solution:";
        const auto& sol = report.solutions.front();
        for (std::size_t i = 0; i < sol.size(); ++i)
            out << " " << p.variables[i].name << "=" << sol[i];
        out << "\n";
    }
}

void write_trace(const std::string& path, const Problem& p, const SearchReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const Decision& d : report.trace)
        out << d.depth << " " << (d.is_assign ? "assign" : "remove") << " "
            << p.variables[d.var].name << " " << d.value << "\n";
}

std::vector<std::string> expand_instances(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const std::string& arg : args) {
        if (fs::is_directory(arg)) {
            std::vector<std::string> files;
            for (const auto& entry : fs::directory_iterator(arg))
                if (entry.is_regular_file() && entry.path().extension() == ".cspi")
                    files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(arg);
        }
    }
    return out;
}

std::vector<double> csv_column(const std::string& path, const std::string& column,
                               std::vector<std::string>& keys) {
    auto records = read_run_records(path);
    std::vector<double> out;
    for (const RunRecord& r : records) {
        std::optional<double> v;
        if (column == "time_ms")
            v = r.time_ms ? std::optional<double>(static_cast<double>(*r.time_ms)) : std::nullopt;
        else if (column == "nodes")
            v = r.nodes ? std::optional<double>(static_cast<double>(*r.nodes)) : std::nullopt;
        else if (column == "vc")
            v = r.vc ? std::optional<double>(static_cast<double>(*r.vc)) : std::nullopt;
        else if (column == "vc_blocked")
            v = r.vc_blocked ? std::optional<double>(static_cast<double>(*r.vc_blocked))
                             : std::nullopt;
        else if (column == "dis_mean")
            v = r.dis_mean;
        else if (column == "dwo_count")
            v = r.dwo_count ? std::optional<double>(static_cast<double>(*r.dwo_count))
                            : std::nullopt;
        else if (column == "deletion_events")
            v = r.deletion_events
                    ? std::optional<double>(static_cast<double>(*r.deletion_events))
                    : std::nullopt;
        else if (column == "solutions")
            v = r.solutions ? std::optional<double>(static_cast<double>(*r.solutions))
                            : std::nullopt;
        else
            throw std::runtime_error("unknown column '" + column + "'");
        if (!v) throw std::runtime_error(path + ": NA in column '" + column + "'");
        keys.push_back(r.instance + "/" + r.scheme + "/" + r.voh);
        out.push_back(*v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"csolve - CSP solver with d-way, 2-way, restricted 2-way and adaptive branching"};
    app.require_subcommand(0, 1);

    // top-level solve
    std::string instance;
    app.add_option("instance", instance, "instance file (.cspi) or rb:/queens: spec");
    std::string branching, voh, secondary = "wdeg", mode = "first", trace_file, stats_file;
    std::optional<double> e_opt, timeout;
    std::optional<std::int64_t> node_limit;
    app.add_option("--branching", branching, "dway|2way|r2way|hsdiff|hcadv|hand|hor");
    app.add_option("--voh", voh, "lex|dom|ddeg|wdeg|alldel");
    app.add_option("--e", e_opt, "score-difference threshold (hsdiff/hand/hor; default 0.1)");
    app.add_option("--secondary", secondary, "secondary advisor wdeg|dom (hcadv/hand/hor)");
    app.add_option("--mode", mode, "first|all|count (default first)");
    app.add_option("--timeout", timeout, "wall-clock limit in seconds");
    app.add_option("--node-limit", node_limit, "node limit");
    app.add_option("--trace", trace_file, "write the decision trace to this file");
    app.add_option("--stats", stats_file, "write a one-row stats CSV to this file");

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    auto* gen_rb = gen->add_subcommand("rb", "random binary CSP (model RB, forced satisfiable)");
    int rb_n = 0;
    double rb_alpha = 0, rb_r = 0, rb_p = 0;
    std::uint64_t rb_seed = 0;
    std::string gen_out;
    gen_rb->add_option("--n", rb_n, "variables")->required();
    gen_rb->add_option("--alpha", rb_alpha, "domain size exponent")->required();
    gen_rb->add_option("--r", rb_r, "constraint density")->required();
    gen_rb->add_option("--p", rb_p, "forbidden tuple fraction")->required();
    gen_rb->add_option("--seed", rb_seed, "rng seed")->required();
    gen_rb->add_option("--out", gen_out, "output file")->required();
    auto* gen_queens = gen->add_subcommand("queens", "n-queens");
    int queens_n = 0;
    std::string queens_out;
    gen_queens->add_option("--n", queens_n, "board size")->required();
    gen_queens->add_option("--out", queens_out, "output file")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "threshold sweep for adaptive score-difference branching");
    std::string sweep_instance, sweep_voh, sweep_out;
    double e_from = 0, e_to = 0, e_step = 0;
    sweep->add_option("instance", sweep_instance, "instance file or spec")->required();
    sweep->add_option("--voh", sweep_voh, "lex|dom|ddeg|wdeg|alldel")->required();
    sweep->add_option("--e-from", e_from, "first threshold")->required();
    sweep->add_option("--e-to", e_to, "last threshold")->required();
    sweep->add_option("--step", e_step, "threshold increment")->required();
    sweep->add_option("--out", sweep_out, "output CSV")->required();

    // suite
    auto* suite = app.add_subcommand("suite", "run a config grid over a set of instances");
    std::vector<std::string> suite_instances;
    std::string grid_file, suite_out;
    int jobs = 1;
    suite->add_option("--instances", suite_instances,
                      "instance files, directories of .cspi files, or rb:/queens: specs")
        ->required();
    suite->add_option("--grid", grid_file, "config grid file")->required();
    suite->add_option("--out", suite_out, "output CSV")->required();
    suite->add_option("--jobs", jobs, "concurrent runs (default 1)");

    // ttest
    auto* ttest = app.add_subcommand("ttest", "paired t-test over a column of two run CSVs");
    std::string csv_a, csv_b, column;
    ttest->add_option("a", csv_a, "first CSV")->required();
    ttest->add_option("b", csv_b, "second CSV")->required();
    ttest->add_option("--column", column, "numeric column name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_rb) {
            Problem p = generate_rb(rb_n, rb_alpha, rb_r, rb_p, rb_seed);
            std::ofstream out(gen_out);
            if (!out) throw std::runtime_error("cannot write " + gen_out);
            out << render_instance(p);
            std::cout << "wrote " << gen_out << " (" << p.num_variables() << " vars, "
                      << p.num_constraints() << " cons)\n";
            return kExitOk;
        }
        if (*gen_queens) {
            Problem p = generate_nqueens(queens_n);
            std::ofstream out(queens_out);
            if (!out) throw std::runtime_error("cannot write " + queens_out);
            out << render_instance(p);
            std::cout << "wrote " << queens_out << " (" << p.num_variables() << " vars, "
                      << p.num_constraints() << " cons)\n";
            return kExitOk;
        }
        if (*sweep) {
            auto voh_parsed = parse_voh_token(sweep_voh);
            if (!voh_parsed) {
                std::cerr << "error: unknown voh '" << sweep_voh << "'\n";
                return kExitUsage;
            }
            Problem p = load_instance_arg(sweep_instance);
            auto points = e_sweep(p, *voh_parsed, e_from, e_to, e_step);
            write_sweep_csv(sweep_out, points);
            for (const SweepPoint& pt : points)
                std::cout << "e=" << pt.e << " nodes=" << pt.nodes << " vc=" << pt.vc
                          << " time_ms=" << pt.time_ms << "\n";
            std::cout << "wrote " << sweep_out << " (" << points.size() << " rows)\n";
            return kExitOk;
        }
        if (*suite) {
            auto configs = parse_grid_file(grid_file);
            auto paths = expand_instances(suite_instances);
            auto records = run_suite(paths, configs, suite_out, jobs);
            std::cout << "wrote " << suite_out << " (" << records.size() << " rows)\n";
            return kExitOk;
        }
        if (*ttest) {
            std::vector<std::string> keys_a, keys_b;
            auto va = csv_column(csv_a, column, keys_a);
            auto vb = csv_column(csv_b, column, keys_b);
            if (va.size() != vb.size())
                throw std::runtime_error("CSVs have different row counts");
            for (std::size_t i = 0; i < keys_a.size(); ++i)
                if (keys_a[i].substr(0, keys_a[i].find('/')) !=
                    keys_b[i].substr(0, keys_b[i].find('/')))
                    std::cerr << "warning: row " << i + 1 << " pairs different instances\n";
            TTestResult t = paired_t_test(va, vb);
            std::cout << "n: " << t.n_pairs << "\n";
            std::cout << "mean: " << t.mean << "\n";
            std::cout << "sd: " << t.sd << "\n";
            std::cout << "t: " << t.t_value << "\n";
            std::cout << "ci95: (" << t.ci_low << ", " << t.ci_high << ")\n";
            return kExitOk;
        }

        // default: solve one instance
        if (instance.empty()) {
            std::cerr << "error: expected an instance or a subcommand; see --help\n";
            return kExitUsage;
        }
        if (branching.empty() || voh.empty()) {
            std::cerr << "error: --branching and --voh are required\n";
            return kExitUsage;
        }
        NamedConfig nc;
        try {
            nc = make_named_config(branching, voh, e_opt, secondary, mode, timeout, node_limit);
        } catch (const std::invalid_argument& err) {
            std::cerr << "error: " << err.what() << "\n";
            return kExitUsage;
        }
        std::vector<std::string> warnings;
        Problem p = load_instance_arg(instance, &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
        nc.config.record_trace = !trace_file.empty();
        SearchReport report = solve(p, nc.config);
        RunRecord record = make_run_record(instance, nc.scheme, nc.voh, nc.config, report);
        print_summary(std::cout, p, record, report);
        if (!stats_file.empty()) write_run_records(stats_file, {&record, 1});
        if (!trace_file.empty()) write_trace(trace_file, p, report);
        return kExitOk;
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
}
