#include "csolve/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace csp {

const char* const kRunRecordHeader =
    "instance,scheme,voh,e,verdict,time_ms,nodes,vc,vc_blocked,dis_mean,dwo_count,"
    "deletion_events,solutions";

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

template <class T>
std::string opt_field(const std::optional<T>& v) {
    if (!v) return "NA";
    if constexpr (std::is_same_v<T, double>)
        return fmt_double(*v);
    else
        return std::to_string(*v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::optional<double> parse_opt_double(const std::string& s) {
    if (s == "NA") return std::nullopt;
    return std::stod(s);
}

std::optional<std::int64_t> parse_opt_int(const std::string& s) {
    if (s == "NA") return std::nullopt;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("bad integer field '" + s + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SearchMode parse_mode_token(const std::string& token) {
    if (token == "first") return SearchMode::FirstSolution;
    if (token == "all") return SearchMode::AllSolutions;
    if (token == "count") return SearchMode::CountSolutions;
    throw std::invalid_argument("unknown mode '" + token + "' (expected first|all|count)");
}

}  // namespace

std::string to_csv_row(const RunRecord& r) {
    std::string out;
    out += r.instance + "," + r.scheme + "," + r.voh + ",";
    out += r.e ? fmt_double(*r.e) : "NA";
    out += "," + r.verdict;
    out += "," + opt_field(r.time_ms);
    out += "," + opt_field(r.nodes);
    out += "," + opt_field(r.vc);
    out += "," + opt_field(r.vc_blocked);
    out += "," + opt_field(r.dis_mean);
    out += "," + opt_field(r.dwo_count);
    out += "," + opt_field(r.deletion_events);
    out += "," + opt_field(r.solutions);
    return out;
}

std::vector<RunRecord> read_run_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty CSV");
    if (line != kRunRecordHeader) throw std::runtime_error(path + ": unexpected CSV header");
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 13) throw std::runtime_error(path + ": bad CSV row: " + line);
        RunRecord r;
        r.instance = f[0];
        r.scheme = f[1];
        r.voh = f[2];
        r.e = parse_opt_double(f[3]);
        r.verdict = f[4];
        r.time_ms = parse_opt_int(f[5]);
        r.nodes = parse_opt_int(f[6]);
        r.vc = parse_opt_int(f[7]);
        r.vc_blocked = parse_opt_int(f[8]);
        r.dis_mean = parse_opt_double(f[9]);
        r.dwo_count = parse_opt_int(f[10]);
        r.deletion_events = parse_opt_int(f[11]);
        r.solutions = parse_opt_int(f[12]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_run_records(const std::string& path, std::span<const RunRecord> records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kRunRecordHeader << "\n";
    for (const RunRecord& r : records) out << to_csv_row(r) << "\n";
}

RunRecord make_run_record(const std::string& instance, const std::string& scheme_tok,
                          const std::string& voh_tok, const SearchConfig& cfg,
                          const SearchReport& report) {
    RunRecord r;
    r.instance = instance;
    r.scheme = scheme_tok;
    r.voh = voh_tok;
    const bool uses_e = cfg.policy.scheme == Scheme::Adaptive &&
                        cfg.policy.rule != AdaptiveRule::Cadv;
    if (uses_e) r.e = cfg.policy.e;
    r.verdict = verdict_name(report.verdict);
    r.time_ms = static_cast<std::int64_t>(std::llround(report.wall_time_ms));
    r.nodes = report.nodes;
    r.vc = report.vc;
    r.vc_blocked = report.vc_blocked;
    if (!report.dis_samples.empty()) {
        double sum = 0;
        for (int d : report.dis_samples) sum += d;
        r.dis_mean = sum / static_cast<double>(report.dis_samples.size());
    }
    r.dwo_count = report.dwo_count;
    r.deletion_events = report.deletion_event_count;
    r.solutions = report.solution_count;
    return r;
}

std::optional<Heuristic> parse_voh_token(const std::string& token) {
    if (token == "lex") return Heuristic::Lex;
    if (token == "dom") return Heuristic::Dom;
    if (token == "ddeg") return Heuristic::DomDdeg;
    if (token == "wdeg") return Heuristic::DomWdeg;
    if (token == "alldel") return Heuristic::DomAlldel;
    return std::nullopt;
}

std::optional<Heuristic> parse_secondary_token(const std::string& token) {
    if (token == "wdeg") return Heuristic::Wdeg;
    if (token == "dom") return Heuristic::DomAdvisor;
    return std::nullopt;
}

std::optional<BranchingPolicy> parse_scheme_token(const std::string& token) {
    BranchingPolicy p;
    if (token == "dway") {
        p.scheme = Scheme::DWay;
    } else if (token == "2way") {
        p.scheme = Scheme::TwoWay;
    } else if (token == "r2way") {
        p.scheme = Scheme::RestrictedTwoWay;
    } else if (token == "hsdiff") {
        p.scheme = Scheme::Adaptive;
        p.rule = AdaptiveRule::Sdiff;
    } else if (token == "hcadv") {
        p.scheme = Scheme::Adaptive;
        p.rule = AdaptiveRule::Cadv;
    } else if (token == "hand") {
        p.scheme = Scheme::Adaptive;
        p.rule = AdaptiveRule::Conj;
    } else if (token == "hor") {
        p.scheme = Scheme::Adaptive;
        p.rule = AdaptiveRule::Disj;
    } else {
        return std::nullopt;
    }
    return p;
}

std::string scheme_token(const BranchingPolicy& policy) {
    switch (policy.scheme) {
        case Scheme::DWay: return "dway";
        case Scheme::TwoWay: return "2way";
        case Scheme::RestrictedTwoWay: return "r2way";
        case Scheme::Adaptive: break;
    }
    switch (policy.rule) {
        case AdaptiveRule::Sdiff: return "hsdiff";
        case AdaptiveRule::Cadv: return "hcadv";
        case AdaptiveRule::Conj: return "hand";
        case AdaptiveRule::Disj: return "hor";
    }
    return "?";
}

NamedConfig make_named_config(const std::string& scheme_tok, const std::string& voh_tok,
                              std::optional<double> e, const std::string& secondary_tok,
                              const std::string& mode_tok, std::optional<double> timeout_s,
                              std::optional<std::int64_t> node_limit) {
    auto policy = parse_scheme_token(scheme_tok);
    if (!policy)
        throw std::invalid_argument("unknown branching scheme '" + scheme_tok +
                                    "' (expected dway|2way|r2way|hsdiff|hcadv|hand|hor)");
    auto voh = parse_voh_token(voh_tok);
    if (!voh)
        throw std::invalid_argument("unknown voh '" + voh_tok +
                                    "' (expected lex|dom|ddeg|wdeg|alldel)");
    if (e) {
        if (*e < 0) throw std::invalid_argument("threshold e must be >= 0");
        policy->e = *e;
    }
    if (!secondary_tok.empty()) {
        auto sec = parse_secondary_token(secondary_tok);
        if (!sec)
            throw std::invalid_argument("unknown secondary advisor '" + secondary_tok +
                                        "' (expected wdeg|dom)");
        policy->secondary = *sec;
    }
    NamedConfig named;
    named.scheme = scheme_tok;
    named.voh = voh_tok;
    named.config.voh = *voh;
    named.config.policy = *policy;
    named.config.mode = parse_mode_token(mode_tok.empty() ? "first" : mode_tok);
    named.config.time_limit_s = timeout_s;
    named.config.node_limit = node_limit;
    return named;
}

std::vector<NamedConfig> parse_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file " + path);
    std::vector<NamedConfig> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string scheme, voh;
        if (!(ss >> scheme)) continue;
        if (!(ss >> voh))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected '<scheme> <voh> [key=value]...'");
        std::optional<double> e;
        std::optional<std::int64_t> node_limit;
        std::optional<double> timeout;
        std::string secondary, mode;
        std::string kv;
        while (ss >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": expected key=value, got '" + kv + "'");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "e")
                e = std::stod(val);
            else if (key == "secondary")
                secondary = val;
            else if (key == "mode")
                mode = val;
            else if (key == "timeout")
                timeout = std::stod(val);
            else if (key == "node-limit")
                node_limit = std::stoll(val);
            else
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
        }
        out.push_back(make_named_config(scheme, voh, e, secondary, mode, timeout, node_limit));
    }
    return out;
}

Problem load_instance_arg(const std::string& arg, std::vector<std::string>* warnings) {
    auto get_params = [&](const std::string& spec) {
        std::vector<std::pair<std::string, std::string>> kvs;
        std::size_t start = spec.find(':') + 1;
        while (start <= spec.size()) {
            std::size_t end = spec.find(':', start);
            if (end == std::string::npos) end = spec.size();
            std::string part = spec.substr(start, end - start);
            auto eq = part.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad generator spec '" + spec + "'");
            kvs.emplace_back(part.substr(0, eq), part.substr(eq + 1));
            start = end + 1;
        }
        return kvs;
    };
    if (arg.rfind("rb:", 0) == 0) {
        int n = -1;
        double alpha = -1, r = -1, p = -1;
        std::uint64_t seed = 0;
        for (auto& [k, v] : get_params(arg)) {
            if (k == "n")
                n = std::stoi(v);
            else if (k == "a" || k == "alpha")
                alpha = std::stod(v);
            else if (k == "r")
                r = std::stod(v);
            else if (k == "p")
                p = std::stod(v);
            else if (k == "seed" || k == "s")
                seed = std::stoull(v);
            else
                throw std::invalid_argument("rb spec: unknown key '" + k + "'");
        }
        return generate_rb(n, alpha, r, p, seed);
    }
    if (arg.rfind("queens:", 0) == 0) {
        int n = -1;
        for (auto& [k, v] : get_params(arg)) {
            if (k == "n")
                n = std::stoi(v);
            else
                throw std::invalid_argument("queens spec: unknown key '" + k + "'");
        }
        return generate_nqueens(n);
    }
    ParseResult parsed = parse_instance(read_file(arg), arg);
    if (warnings)
        warnings->insert(warnings->end(), parsed.warnings.begin(), parsed.warnings.end());
    return parsed.problem;
}

std::vector<SweepPoint> e_sweep(const Problem& problem, Heuristic voh, double e_from, double e_to,
                                double step) {
    if (e_from > e_to) throw std::invalid_argument("e_sweep: e_from must be <= e_to");
    if (step <= 0) throw std::invalid_argument("e_sweep: step must be > 0");
    std::vector<SweepPoint> out;
    for (int i = 0;; ++i) {
        const double e = e_from + i * step;
        if (e > e_to + step * 1e-9) break;
        SearchConfig cfg;
        cfg.voh = voh;
        cfg.policy.scheme = Scheme::Adaptive;
        cfg.policy.rule = AdaptiveRule::Sdiff;
        cfg.policy.e = e;
        cfg.mode = SearchMode::FirstSolution;
        cfg.record_trace = false;
        SearchReport report = solve(problem, cfg);
        out.push_back({e, report.nodes, report.vc,
                       static_cast<std::int64_t>(std::llround(report.wall_time_ms))});
        if (report.vc == 0) break;
    }
    return out;
}

void write_sweep_csv(const std::string& path, std::span<const SweepPoint> points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "e,nodes,vc,time_ms\n";
    for (const SweepPoint& p : points)
        out << fmt_double(p.e) << "," << p.nodes << "," << p.vc << "," << p.time_ms << "\n";
}

std::vector<RunRecord> run_suite(const std::vector<std::string>& instances,
                                 const std::vector<NamedConfig>& configs,
                                 const std::string& out_csv, int jobs) {
    struct Loaded {
        std::optional<Problem> problem;
    };
    std::vector<Loaded> loaded(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        try {
            loaded[i].problem = load_instance_arg(instances[i]);
        } catch (const std::exception&) {
            // ERROR rows below; the suite continues
        }
    }

    std::vector<RunRecord> records(instances.size() * configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= records.size()) return;
            const std::size_t ii = task / configs.size();
            const std::size_t ci = task % configs.size();
            const NamedConfig& nc = configs[ci];
            if (!loaded[ii].problem) {
                RunRecord r;
                r.instance = instances[ii];
                r.scheme = nc.scheme;
                r.voh = nc.voh;
                if (nc.config.policy.scheme == Scheme::Adaptive &&
                    nc.config.policy.rule != AdaptiveRule::Cadv)
                    r.e = nc.config.policy.e;
                r.verdict = "ERROR";
                records[task] = std::move(r);
                continue;
            }
            SearchConfig cfg = nc.config;
            cfg.record_trace = false;
            SearchReport report = solve(*loaded[ii].problem, cfg);
            records[task] = make_run_record(instances[ii], nc.scheme, nc.voh, cfg, report);
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || records.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!out_csv.empty()) write_run_records(out_csv, records);
    return records;
}

}  // namespace csp
