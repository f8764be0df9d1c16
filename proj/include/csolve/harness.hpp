#pragma once

#include "csolve/search.hpp"

namespace csp {

/// One CSV row of suite/solve statistics. Absent values print as "NA".
struct RunRecord {
    std::string instance;
    std::string scheme;
    std::string voh;
    std::optional<double> e;
    std::string verdict;  // SAT | UNSAT | TIMEOUT | NODELIMIT | ERROR
    std::optional<std::int64_t> time_ms;
    std::optional<std::int64_t> nodes;
    std::optional<std::int64_t> vc;
    std::optional<std::int64_t> vc_blocked;
    std::optional<double> dis_mean;
    std::optional<std::int64_t> dwo_count;
    std::optional<std::int64_t> deletion_events;
    std::optional<std::int64_t> solutions;

    bool operator==(const RunRecord&) const = default;
};

extern const char* const kRunRecordHeader;

std::string to_csv_row(const RunRecord& r);
std::vector<RunRecord> read_run_records(const std::string& path);
void write_run_records(const std::string& path, std::span<const RunRecord> records);
RunRecord make_run_record(const std::string& instance, const std::string& scheme_token,
                          const std::string& voh_token, const SearchConfig& cfg,
                          const SearchReport& report);

struct TTestResult {
    int n_pairs = 0;
    double mean = 0;   // mean of differences a - b
    double sd = 0;     // sample standard deviation, n-1 denominator
    double t_value = 0;
    double ci_low = 0;  // 95% confidence interval
    double ci_high = 0;
};

/// Two-sided paired t-test of a against b (alpha = 0.05). With zero
/// standard deviation the t value degenerates to a signed infinity and
/// the interval collapses onto the mean.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Critical value of the two-sided 0.05 Student t distribution; embedded
/// table for df 1..200, the normal limit above.
double student_t_critical(int df);

/// Spearman rank correlation with average ranks on ties; 0 for a constant
/// series by convention.
double spearman_trend(std::span<const double> xs, std::span<const double> ys);

struct SweepPoint {
    double e = 0;
    std::int64_t nodes = 0;
    std::int64_t vc = 0;
    std::int64_t time_ms = 0;
};

/// Solves the instance repeatedly under Adaptive(Sdiff, e) for e = e_from,
/// e_from + step, ..., stopping early at the first e whose run reports
/// vc == 0 (that point is recorded), else at e_to. FirstSolution mode.
std::vector<SweepPoint> e_sweep(const Problem& problem, Heuristic voh, double e_from, double e_to,
                                double step);
void write_sweep_csv(const std::string& path, std::span<const SweepPoint> points);

/// CLI token mappings. Scheme tokens: dway 2way r2way hsdiff hcadv hand hor.
/// Primary voh tokens: lex dom ddeg wdeg alldel; secondary: wdeg dom.
std::optional<Heuristic> parse_voh_token(const std::string& token);
std::optional<Heuristic> parse_secondary_token(const std::string& token);
std::optional<BranchingPolicy> parse_scheme_token(const std::string& token);
std::string scheme_token(const BranchingPolicy& policy);

struct NamedConfig {
    std::string scheme;
    std::string voh;
    SearchConfig config;
};

/// One config per non-comment line:
///   <scheme> <voh> [e=<float>] [secondary=<wdeg|dom>] [mode=<first|all|count>]
///   [timeout=<secs>] [node-limit=<n>]
std::vector<NamedConfig> parse_grid_file(const std::string& path);
NamedConfig make_named_config(const std::string& scheme_tok, const std::string& voh_tok,
                              std::optional<double> e, const std::string& secondary_tok,
                              const std::string& mode_tok, std::optional<double> timeout_s,
                              std::optional<std::int64_t> node_limit);

/// Loads a .cspi file, or generates in place from a spec string of the form
/// rb:n=8:a=0.8:r=1.5:p=0.3:seed=1 or queens:n=6.
Problem load_instance_arg(const std::string& arg, std::vector<std::string>* warnings = nullptr);

/// Solves every (instance, config) pair, `jobs` instances at a time, and
/// writes the CSV (rows ordered by instance then config). Unreadable
/// instances yield ERROR rows and the suite continues.
std::vector<RunRecord> run_suite(const std::vector<std::string>& instances,
                                 const std::vector<NamedConfig>& configs,
                                 const std::string& out_csv, int jobs = 1);

}  // namespace csp
