#include "curvegap/experiment.hpp"

#include "curvegap/gap_stats.hpp"
#include "curvegap/parallel.hpp"
#include "curvegap/rational_map.hpp"
#include "curvegap/shifted_count.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace curvegap {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        T v{};
        if constexpr (std::is_same_v<T, double>) v = std::stod(text, &used);
        else if constexpr (std::is_signed_v<T>) v = static_cast<T>(std::stoll(text, &used));
        else {
            if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
            v = static_cast<T>(std::stoull(text, &used));
        }
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid value for " + key + ": '" + text + "'");
    }
}

Interval parse_interval(const std::string& key, const std::string& text) {
    try {
        return Interval::parse(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

const std::set<std::string> kKnownKeys{"p",    "pmin",    "pmax", "count",   "f",         "i",    "j",
                                       "g",    "h",       "a",    "b",       "t",         "lambdas",
                                       "kmax", "seed",    "threads", "format", "tolerance", "suite"};

} // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (!kKnownKeys.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ExperimentConfig make_config(const ConfigMap& values) {
    ExperimentConfig c;
    for (const auto& [key, v] : values) {
        if (!kKnownKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
        if (key == "p") c.p = parse_number<u64>(key, v);
        else if (key == "pmin") c.pmin = parse_number<u64>(key, v);
        else if (key == "pmax") c.pmax = parse_number<u64>(key, v);
        else if (key == "count") c.count = parse_number<u64>(key, v);
        else if (key == "f") c.f = v;
        else if (key == "i") c.i = parse_interval(key, v);
        else if (key == "j") c.j = parse_interval(key, v);
        else if (key == "g") c.g = v;
        else if (key == "h" || key == "a" || key == "b") {
            auto& dst = key == "h" ? c.h : key == "a" ? c.a : c.b;
            for (const auto& item : split_list(v)) dst.push_back(parse_number<i64>(key, item));
        } else if (key == "t") c.t = parse_number<double>(key, v);
        else if (key == "lambdas") {
            c.lambdas.clear();
            for (const auto& item : split_list(v)) {
                double l = parse_number<double>(key, item);
                if (!(l >= 0)) throw ConfigError("lambda values must be non-negative");
                c.lambdas.push_back(l);
            }
        } else if (key == "kmax") c.kmax = parse_number<std::size_t>(key, v);
        else if (key == "seed") c.seed = parse_number<u64>(key, v);
        else if (key == "threads") c.threads = std::max(1u, parse_number<unsigned>(key, v));
        else if (key == "format") {
            if (v == "csv") c.format = OutputFormat::Csv;
            else if (v == "json") c.format = OutputFormat::Json;
            else throw ConfigError("format must be csv or json");
        } else if (key == "tolerance") c.tolerance = parse_number<double>(key, v);
        else if (key == "suite") c.suite = v;
    }
    if (c.p && (c.pmin || c.pmax)) throw ConfigError("specify either p or a pmin/pmax sweep range, not both");
    return c;
}

Interval default_interval(u64 p) {
    const auto rule = static_cast<u64>(std::floor(static_cast<double>(p) / std::log(static_cast<double>(p))));
    return {0, std::min(rule, (p - 1) / 2 + 1)};
}

std::string csv_header() { return "experiment,p,d,i_lo,i_hi,j_lo,j_hi,stat,index,empirical,model,bound,ok,seed"; }

namespace {

std::string num(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

} // namespace

std::string to_csv(const ResultRow& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.experiment, r.p, r.d, r.i.lo, r.i.hi, r.j.lo,
                       r.j.hi, r.stat, r.index, num(r.empirical), num(r.model), num(r.bound),
                       r.ok ? (*r.ok ? "true" : "false") : "", r.seed);
}

std::string to_json(const ResultRow& r) {
    nlohmann::ordered_json o;
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    o["experiment"] = r.experiment;
    o["p"] = r.p;
    o["d"] = r.d;
    o["i_lo"] = r.i.lo;
    o["i_hi"] = r.i.hi;
    o["j_lo"] = r.j.lo;
    o["j_hi"] = r.j.hi;
    o["stat"] = r.stat;
    o["index"] = r.index;
    o["empirical"] = opt(r.empirical);
    o["model"] = opt(r.model);
    o["bound"] = opt(r.bound);
    o["ok"] = r.ok ? nlohmann::ordered_json(*r.ok) : nlohmann::ordered_json();
    o["seed"] = r.seed;
    return o.dump();
}

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << csv_header() << '\n';
        for (const auto& r : rows) out << to_csv(r) << '\n';
    } else {
        for (const auto& r : rows) out << to_json(r) << '\n';
    }
}

namespace {

struct Setup {
    HyperellipticCurve curve;
    Interval i;
    Interval j;
    bool j_given;
    RationalMapExpr g;
};

Setup make_setup(const ExperimentConfig& c) {
    if (!c.p) throw ConfigError("missing --p");
    if (c.f.empty()) throw ConfigError("missing --f");
    PrimeModulus m(*c.p);
    HyperellipticCurve curve(Polynomial::parse(c.f, m));
    const Interval i = c.i.value_or(default_interval(*c.p));
    i.check_within(m.half() + 1, "interval I");
    const Interval j = c.j.value_or(Interval::full(*c.p));
    j.check_within(*c.p, "interval J");
    // Without J the map is irrelevant; xcoord keeps every translate in range.
    RationalMapExpr g = c.j ? RationalMapExpr::from_text(c.g) : RationalMapExpr::builtin("xcoord");
    return {std::move(curve), i, j, c.j.has_value(), std::move(g)};
}

ResultRow base_row(const std::string& experiment, const Setup& s, u64 seed) {
    ResultRow r;
    r.experiment = experiment;
    r.p = s.curve.p();
    r.d = s.curve.degree();
    r.i = s.i;
    r.j = s.j;
    r.seed = seed;
    return r;
}

ResultRow make_row(ResultRow row, std::string stat, std::string index, std::optional<double> empirical,
                   std::optional<double> model, std::optional<double> bound, std::optional<bool> ok) {
    row.stat = std::move(stat);
    row.index = std::move(index);
    row.empirical = empirical;
    row.model = model;
    row.bound = bound;
    row.ok = ok;
    return row;
}

std::string fmt_num(double v) { return fmt::format("{}", v); }

double weil_bound(u64 p, int d) { return (d - 1.0) * std::sqrt(static_cast<double>(p)) + d; }

std::vector<ResultRow> condition_rows(const ResultRow& base, u64 p, u64 i_size) {
    const double dp = static_cast<double>(p);
    const double lp = std::log(dp);
    const double llp = std::log(lp);
    const double loose = dp / llp;
    const double strict = dp * llp * llp / lp;
    const double size = static_cast<double>(i_size);
    return {make_row(base, "cond_I_ge_p_over_lnlnp", "", size, loose, std::nullopt, size >= loose),
            make_row(base, "cond_I_ge_p_lnlnp2_over_lnp", "", size, strict, std::nullopt, size >= strict)};
}

} // namespace

std::vector<ResultRow> cmd_count(const ExperimentConfig& c) {
    const Setup s = make_setup(c);
    const u64 p = s.curve.p();
    const int d = s.curve.degree();
    const ResultRow base = base_row("count", s, c.seed);
    std::vector<ResultRow> rows;

    const double affine = static_cast<double>(affine_point_count(s.curve, c.threads));
    rows.push_back(make_row(base, "affine_points", "", affine, static_cast<double>(p), weil_bound(p, d),
                            std::abs(affine - static_cast<double>(p)) <= weil_bound(p, d)));

    const XCoordinateSet set = compute_S_I(s.curve, s.i, c.threads);
    const auto dev = cardinality_deviation(set);
    rows.push_back(make_row(base, "S_I", "", static_cast<double>(dev.observed), static_cast<double>(dev.main_term),
                            dev.bound,
                            std::abs(static_cast<double>(dev.observed) - static_cast<double>(dev.main_term)) <=
                                dev.bound));

    const PrimeModulus& m = s.curve.modulus();
    if (!c.h.empty()) {
        const ShiftSet h(c.h, m);
        CountReport rep{static_cast<std::int64_t>(count_N_H(set, h, s.j, s.g, c.threads)),
                        predicted_N_H(p, d, h.size(), s.i.size(), s.j.size()),
                        hypothesis_flags(s.curve, s.g, s.i, h.size())};
        rows.push_back(make_row(base, "N_H", std::to_string(h.size()), static_cast<double>(rep.observed),
                                rep.prediction.main_term_value(), rep.prediction.explicit_bound, rep.within_bound()));
    }
    if (!c.a.empty() || !c.b.empty()) {
        const ShiftSet a(c.a, m), b(c.b, m);
        const std::string index = std::to_string(a.size()) + "/" + std::to_string(b.size());
        const auto direct = static_cast<std::int64_t>(count_N_AB_direct(set, a, b, s.j, s.g, c.threads));
        CountReport rep{direct, predicted_N_AB(p, d, a.size(), b.size(), s.i.size(), s.j.size()), {}};
        rows.push_back(make_row(base, "N_AB", index, static_cast<double>(direct), rep.prediction.main_term_value(),
                                rep.prediction.explicit_bound, rep.within_bound()));
        if (b.size() <= kMaxInclusionExclusionTerms) {
            const auto ie = count_N_AB_inclusion_exclusion(set, a, b, s.j, s.g, c.threads);
            rows.push_back(make_row(base, "N_AB_inclusion_exclusion", index, static_cast<double>(ie),
                                    static_cast<double>(direct), 0.0, ie == direct));
        }
    }
    return rows;
}

std::vector<ResultRow> cmd_gaps(const ExperimentConfig& c) {
    const Setup s = make_setup(c);
    const u64 p = s.curve.p();
    const ResultRow base = base_row("gaps", s, c.seed);
    const XCoordinateSet set = compute_S_I(s.curve, s.i, c.threads);
    if (set.empty()) throw ConfigError("no points in S_I");

    std::vector<ResultRow> rows;
    const auto dev = cardinality_deviation(set);
    rows.push_back(make_row(base, "m", "", static_cast<double>(set.size()), static_cast<double>(s.i.size()), dev.bound,
                            std::abs(static_cast<double>(dev.observed) - static_cast<double>(dev.main_term)) <=
                                dev.bound));
    for (auto& r : condition_rows(base, p, s.i.size())) rows.push_back(std::move(r));

    const double tol = c.tolerance.value_or(3.0 / std::sqrt(static_cast<double>(set.size())));
    const double width = static_cast<double>(s.j.size()) / static_cast<double>(p);
    for (double lambda : c.lambdas) {
        const double emp = s.j_given ? mu_distorted(set, lambda, s.j, s.g) : mu(set, lambda);
        const double model = std::exp(-lambda * width);
        rows.push_back(make_row(base, "mu", fmt_num(lambda), emp, model, tol, std::abs(emp - model) <= tol));
    }
    return rows;
}

std::vector<ResultRow> cmd_poisson(const ExperimentConfig& c) {
    const Setup s = make_setup(c);
    const u64 p = s.curve.p();
    const ResultRow base = base_row("poisson", s, c.seed);
    const XCoordinateSet set = compute_S_I(s.curve, s.i, c.threads);
    if (set.empty()) throw ConfigError("no points in S_I");
    if (s.i.empty()) throw ConfigError("interval I is empty");

    double t = 0.0;
    if (c.t) t = *c.t;
    else if (!c.lambdas.empty()) t = c.lambdas.front() * static_cast<double>(p) / static_cast<double>(s.i.size());
    else throw ConfigError("poisson needs --t or --lambdas");
    if (t < 1.0 || t >= static_cast<double>(p)) throw ConfigError("window t must satisfy 1 <= t < p");

    const PkTable table = pk_table(set, s.j, s.g, t, c.threads);
    const double tol = c.tolerance.value_or(3.0 / std::sqrt(static_cast<double>(set.size())));
    std::vector<ResultRow> rows;
    for (std::size_t k = 0; k <= c.kmax; ++k) {
        const double emp = table.empirical(k);
        const double model = table.poisson(k);
        rows.push_back(make_row(base, "P_k", std::to_string(k), emp, model, table.binomial(k),
                                std::abs(emp - model) <= tol));
    }
    const auto emp = table.empirical_values(c.kmax);
    const auto dist_p = distribution_distance(emp, table.poisson_values(c.kmax), c.kmax);
    const auto dist_b = distribution_distance(emp, table.binomial_values(c.kmax), c.kmax);
    const std::string index = fmt_num(t);
    rows.push_back(make_row(base, "sup_distance_poisson", index, dist_p.sup_norm, 0.0, tol, dist_p.sup_norm <= tol));
    rows.push_back(make_row(base, "tv_distance_poisson", index, dist_p.total_variation, 0.0, std::nullopt, std::nullopt));
    rows.push_back(make_row(base, "sup_distance_binomial", index, dist_b.sup_norm, 0.0, tol, dist_b.sup_norm <= tol));
    return rows;
}

std::vector<u64> sweep_primes(u64 pmin, u64 pmax, u64 count) {
    if (pmin < 3 || pmin >= pmax) throw ConfigError("sweep needs 3 <= pmin < pmax");
    if (count < 1) throw ConfigError("sweep needs count >= 1");
    std::vector<u64> out;
    const double lo = std::log(static_cast<double>(pmin)), hi = std::log(static_cast<double>(pmax));
    for (u64 k = 0; k < count; ++k) {
        const double frac = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        const auto target = static_cast<u64>(std::llround(std::exp(lo + frac * (hi - lo))));
        const u64 prime = PrimeModulus::next_at_least(std::max<u64>(target, pmin)).value();
        if (out.empty() || out.back() != prime) out.push_back(prime);
    }
    return out;
}

std::vector<ResultRow> cmd_sweep(const ExperimentConfig& c) {
    if (!c.pmin || !c.pmax) throw ConfigError("sweep needs --pmin and --pmax");
    if (c.i) throw ConfigError("sweep derives I per prime; --i is not accepted");
    if (c.t) throw ConfigError("sweep derives t per prime from --lambdas; --t is not accepted");
    const std::vector<u64> primes = sweep_primes(*c.pmin, *c.pmax, c.count);

    const unsigned workers = std::min<unsigned>(c.threads, static_cast<unsigned>(primes.size()));
    auto chunks = map_chunks(primes.size(), workers, [&](u64 begin, u64 end) {
        std::vector<ResultRow> rows;
        for (u64 k = begin; k < end; ++k) {
            ExperimentConfig one = c;
            one.pmin.reset();
            one.pmax.reset();
            one.p = primes[k];
            one.threads = 1;
            for (auto& r : cmd_gaps(one)) rows.push_back(std::move(r));
            for (auto& r : cmd_poisson(one)) rows.push_back(std::move(r));
        }
        return rows;
    });
    std::vector<ResultRow> rows;
    for (auto& chunk : chunks)
        for (auto& r : chunk) rows.push_back(std::move(r));
    return rows;
}

HyperellipticCurve random_nonsquare_curve(const PrimeModulus& m, int d, std::mt19937_64& rng) {
    if (d < 1 || static_cast<u64>(d) >= m.value()) throw std::invalid_argument("curve degree must be in [1, p)");
    std::uniform_int_distribution<u64> coef(0, m.value() - 1), lead(1, m.value() - 1);
    while (true) {
        std::vector<u64> cs(static_cast<std::size_t>(d) + 1);
        for (int k = 0; k < d; ++k) cs[static_cast<std::size_t>(k)] = coef(rng);
        cs.back() = lead(rng);
        Polynomial f(std::move(cs), m);
        if (!is_square_in_closure(f)) return HyperellipticCurve(std::move(f));
    }
}

} // namespace curvegap
