// Experiment configuration, result rows and the command implementations
// behind the curvegap CLI.
#pragma once

#include "curvegap/poly_curve.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace curvegap {

/// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::optional<u64> p;
    std::optional<u64> pmin;
    std::optional<u64> pmax;
    u64 count = 1;
    std::string f;
    std::optional<Interval> i;
    std::optional<Interval> j;
    std::string g = "xcoord";
    std::vector<i64> h;
    std::vector<i64> a;
    std::vector<i64> b;
    std::optional<double> t;
    std::vector<double> lambdas{0.5, 1.0, 2.0, 3.0};
    std::size_t kmax = 8;
    u64 seed = 1;
    unsigned threads = 1;
    OutputFormat format = OutputFormat::Csv;
    std::optional<double> tolerance;
    std::string suite;
};

using ConfigMap = std::map<std::string, std::string>;

/// Parses `key = value` lines; '#' starts a comment.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);
ExperimentConfig make_config(const ConfigMap& values);

/// floor(p / ln p), capped to the admissible range [0, (p-1)/2].
Interval default_interval(u64 p);

struct ResultRow {
    std::string experiment;
    u64 p = 0;
    int d = 0;
    Interval i;
    Interval j;
    std::string stat;
    std::string index;
    std::optional<double> empirical;
    std::optional<double> model;
    std::optional<double> bound;
    std::optional<bool> ok;
    u64 seed = 0;
};

std::string csv_header();
std::string to_csv(const ResultRow& row);
std::string to_json(const ResultRow& row);
void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format);

std::vector<ResultRow> cmd_count(const ExperimentConfig& config);
std::vector<ResultRow> cmd_gaps(const ExperimentConfig& config);
std::vector<ResultRow> cmd_poisson(const ExperimentConfig& config);
std::vector<ResultRow> cmd_sweep(const ExperimentConfig& config);

/// Primes for a sweep, log-uniform in [pmin, pmax], ascending, no repeats.
std::vector<u64> sweep_primes(u64 pmin, u64 pmax, u64 count);

struct VerifyReport {
    std::vector<ResultRow> rows;
    bool passed = true;
};

inline const std::vector<std::string> kVerifySuites{"identities", "bounds", "weil", "ranks"};

/// Runs one of the pinned oracle suites; throws ConfigError on an unknown name.
VerifyReport cmd_verify(const std::string& suite, u64 seed, unsigned threads = 1);

/// Random f of exact degree d, redrawn until it is not a square.
HyperellipticCurve random_nonsquare_curve(const PrimeModulus& m, int d, std::mt19937_64& rng);

} // namespace curvegap
