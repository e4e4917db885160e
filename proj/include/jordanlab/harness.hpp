#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact.hpp"
#include "gfq.hpp"
#include "growth_chain.hpp"
#include "limit_law.hpp"
#include "parallel.hpp"
#include "partition.hpp"
#include "pmf.hpp"
#include "prelimit.hpp"

namespace jordanlab {

inline constexpr const char* library_version = "0.1.0";

inline bool is_prime_power(long q) {
    if (q < 2) return false;
    long p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) return true;  // q itself is prime
    while (q % p == 0) q /= p;
    return q == 1;
}

/// Everything a command needs. Results depend on every field except
/// out, format, threads and timing.
struct ExperimentConfig {
    std::string command = "compare";
    int n = 16;
    int q = 2;
    int k = 1;
    long samples = 10000;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::vector<std::string> methods;
    double chi = 1.0;
    double tau = 3.0;
    int v = 1;
    double radius = 1.5;
    int max_nodes = 8192;
    int cap = default_exact_cap;
    std::optional<int> lo, hi;
    std::optional<double> max_dinf;
    std::string out;
    std::string format = "json";
    unsigned threads = 1;
    bool timing = true;

    double t() const { return 1.0 / q; }

    void validate() const {
        static const std::vector<std::string> commands{"compare", "tables", "sample-figure", "simulate", "exact-dp"};
        if (std::find(commands.begin(), commands.end(), command) == commands.end())
            throw std::invalid_argument("unknown command '" + command + "'");
        if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power >= 2");
        if (n < 0) throw std::invalid_argument("n must be >= 0");
        if (k < 1) throw std::invalid_argument("k must be >= 1");
        if (samples < 1) throw std::invalid_argument("samples must be >= 1");
        if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
        if (!(chi > 0)) throw std::invalid_argument("chi must be positive");
        if (tau < 0) throw std::invalid_argument("tau must be >= 0");
        if (v < 0) throw std::invalid_argument("v must be >= 0");
        if (!(radius > 1)) throw std::invalid_argument("radius must exceed 1");
        if (max_nodes < 64) throw std::invalid_argument("max-nodes must be >= 64");
        if (lo && hi && *lo > *hi) throw std::invalid_argument("lo must not exceed hi");
        if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"command", command}, {"n", n},     {"q", q},     {"k", k},     {"samples", samples},
                         {"seed", seed},       {"tol", tol}, {"methods", methods},        {"chi", chi},
                         {"tau", tau},         {"v", v},     {"radius", radius}, {"max_nodes", max_nodes},
                         {"cap", cap}};
        j["lo"] = lo ? nlohmann::json(*lo) : nlohmann::json();
        j["hi"] = hi ? nlohmann::json(*hi) : nlohmann::json();
        j["max_dinf"] = max_dinf ? nlohmann::json(*max_dinf) : nlohmann::json();
        return j;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream is(value);
    T x{};
    if (!(is >> x) || !(is >> std::ws).eof()) throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
    return x;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
}

}  // namespace detail

/// Sets one field by its flag name (without dashes). Config files and flags
/// both go through here.
inline void set_field(ExperimentConfig& c, const std::string& key, const std::string& value) {
    using detail::parse_number;
    static const std::map<std::string, std::function<void(ExperimentConfig&, const std::string&)>> setters{
        {"command", [](auto& c, auto& v) { c.command = v; }},
        {"n", [](auto& c, auto& v) { c.n = parse_number<int>("n", v); }},
        {"q", [](auto& c, auto& v) { c.q = parse_number<int>("q", v); }},
        {"k", [](auto& c, auto& v) { c.k = parse_number<int>("k", v); }},
        {"samples", [](auto& c, auto& v) { c.samples = parse_number<long>("samples", v); }},
        {"seed", [](auto& c, auto& v) { c.seed = parse_number<std::uint64_t>("seed", v); }},
        {"tol", [](auto& c, auto& v) { c.tol = parse_number<double>("tol", v); }},
        {"method", [](auto& c, auto& v) { c.methods = detail::split_list(v); }},
        {"chi", [](auto& c, auto& v) { c.chi = parse_number<double>("chi", v); }},
        {"tau", [](auto& c, auto& v) { c.tau = parse_number<double>("tau", v); }},
        {"v", [](auto& c, auto& v) { c.v = parse_number<int>("v", v); }},
        {"radius", [](auto& c, auto& v) { c.radius = parse_number<double>("radius", v); }},
        {"max-nodes", [](auto& c, auto& v) { c.max_nodes = parse_number<int>("max-nodes", v); }},
        {"cap", [](auto& c, auto& v) { c.cap = parse_number<int>("cap", v); }},
        {"lo", [](auto& c, auto& v) { c.lo = parse_number<int>("lo", v); }},
        {"hi", [](auto& c, auto& v) { c.hi = parse_number<int>("hi", v); }},
        {"max-dinf", [](auto& c, auto& v) { c.max_dinf = parse_number<double>("max-dinf", v); }},
        {"out", [](auto& c, auto& v) { c.out = v; }},
        {"format", [](auto& c, auto& v) { c.format = v; }},
        {"threads", [](auto& c, auto& v) { c.threads = parse_number<unsigned>("threads", v); }},
        {"no-timing", [](auto& c, auto& v) { c.timing = !detail::parse_bool("no-timing", v); }},
    };
    auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    it->second(c, detail::trim(value));
}

/// Flat key = value lines; '#' starts a comment.
inline void apply_config_text(ExperimentConfig& c, const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        set_field(c, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

inline void apply_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(c, ss.str());
}

/// FNV-1a, stable across platforms.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash(const ExperimentConfig& c) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << fnv1a(c.to_json().dump());
    return os.str();
}

// ---------------------------------------------------------------------------
// Reports.

struct Record {
    std::vector<int> key;
    double p = 0.0;
    double err = 0.0;
    std::string method;
    std::optional<ExactScalar> exact;
};

struct Failure {
    std::string what;
    double value = 0.0;
    double tolerance = 0.0;
};

struct Report {
    Report() = default;
    explicit Report(ExperimentConfig c) : config(std::move(c)) {}

    ExperimentConfig config;
    std::vector<Record> results;
    std::optional<double> dinf;
    std::vector<Failure> failures;
    nlohmann::json extra = nlohmann::json::object();
    std::optional<double> runtime_ms;

    bool ok() const { return failures.empty(); }
};

inline nlohmann::json to_json(const Report& r) {
    using nlohmann::json;
    json meta{{"seed", r.config.seed},
              {"config", r.config.to_json()},
              {"version", library_version},
              {"config_hash", config_hash(r.config)}};
    meta["runtime_ms"] = r.runtime_ms ? json(*r.runtime_ms) : json();
    json results = json::array();
    for (const auto& rec : r.results) {
        json j{{"key", rec.key}, {"p", rec.p}, {"err", rec.err}, {"method", rec.method}};
        if (rec.exact) {
            j["p_num"] = rec.exact->get_num().get_str();
            j["p_den"] = rec.exact->get_den().get_str();
        }
        results.push_back(std::move(j));
    }
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"what", f.what}, {"value", f.value}, {"tolerance", f.tolerance}});
    json out{{"meta", meta}, {"results", results}, {"failures", failures}};
    out["dinf"] = r.dinf ? json(*r.dinf) : json();
    if (!r.extra.empty()) out["details"] = r.extra;
    return out;
}

inline std::string key_string(const std::vector<int>& key) {
    std::string s;
    for (std::size_t i = 0; i < key.size(); ++i) s += (i ? ";" : "") + std::to_string(key[i]);
    return s;
}

/// One row per record; keys are ';'-joined.
inline std::string to_csv(const Report& r) {
    std::ostringstream os;
    os.precision(17);
    os << "key,p,p_num,p_den,err,method\n";
    for (const auto& rec : r.results) {
        os << key_string(rec.key) << ',' << rec.p << ',';
        if (rec.exact) os << rec.exact->get_num().get_str() << ',' << rec.exact->get_den().get_str();
        else os << ',';
        os << ',' << rec.err << ',' << rec.method << '\n';
    }
    return os.str();
}

inline std::string render(const Report& r) { return r.config.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Building blocks.

/// floor(log_q n) and q^{frac(log_q n)} = n / q^{floor}, in integer arithmetic.
struct LogScale {
    int shift = 0;
    double chi = 1.0;
};

inline LogScale log_scale(long n, int q) {
    if (n < 1) throw std::invalid_argument("log scale needs n >= 1");
    LogScale s;
    long power = 1;
    while (power <= n / q) {
        power *= q;
        ++s.shift;
    }
    s.chi = static_cast<double>(n) / static_cast<double>(power);
    return s;
}

enum class Sampler { chain, matrix };

/// Counts of (lambda'_1..lambda'_k) over `samples` draws. Draws are split
/// into fixed chunks with their own streams, so counts do not depend on
/// the thread count.
inline std::map<std::vector<int>, long> sample_column_counts(int n, int q, int k, long samples, std::uint64_t seed,
                                                            Sampler how, unsigned threads) {
    constexpr long chunk = 1024;
    const long chunks = (samples + chunk - 1) / chunk;
    std::shared_ptr<const FiniteField> field;
    if (how == Sampler::matrix && q != 2) field = std::make_shared<FiniteField>(q);
    std::vector<std::map<std::vector<int>, long>> parts(static_cast<std::size_t>(chunks));
    parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
        auto rng = stream_for(seed, c);
        const long count = std::min(chunk, samples - static_cast<long>(c) * chunk);
        auto& local = parts[c];
        for (long s = 0; s < count; ++s) {
            std::vector<int> cols;
            if (how == Sampler::chain) cols = simulate_columns(n, q, k, rng);
            else if (q == 2) cols = leading_columns(sample_strict_upper_bits(n, rng), k);
            else cols = leading_columns(sample_strict_upper(n, field, rng), k);
            ++local[cols];
        }
    });
    std::map<std::vector<int>, long> total;
    for (const auto& part : parts)
        for (const auto& [key, cnt] : part) total[key] += cnt;
    return total;
}

/// All weakly decreasing k-tuples with entries in [lo, hi].
inline std::vector<std::vector<int>> decreasing_tuples(int k, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int i, int top) {
        if (i == k) {
            out.push_back(cur);
            return;
        }
        for (int x = lo; x <= top; ++x) {
            cur[static_cast<std::size_t>(i)] = x;
            rec(i + 1, x);
        }
    };
    rec(0, hi);
    std::sort(out.begin(), out.end());
    return out;
}

/// Window of the limit law for one coordinate: lo defaults to -8; hi grows
/// past the mode until the k = 1 mass falls below tol / 10. Far-left masses
/// can underflow to zero, so the mode only counts once some mass is positive.
inline std::pair<int, int> limit_window(double t, double chi, double tol, std::optional<int> lo, std::optional<int> hi) {
    const int a = lo.value_or(-8);
    if (hi) return {a, *hi};
    LimitSeries<double> series(t, chi);
    double best = -1;
    int mode = a;
    for (int x = a;; ++x) {
        const double p = series(Signature{x}, tol / 10).value;
        if (p > best) {
            best = p;
            mode = x;
        }
        if (best > 0 && x > mode && p < tol / 10) return {a, x};
        if (x > a + 400) throw ConvergenceError("limit window did not close", p);
    }
}

namespace detail {

inline void check_err(Report& r, const Record& rec, double tol) {
    if (rec.err > tol) r.failures.push_back({rec.method + " error estimate at " + to_string(Signature(rec.key)), rec.err, tol});
}

inline std::map<std::vector<int>, double> as_map(const std::vector<Record>& recs, const std::string& method) {
    std::map<std::vector<int>, double> m;
    for (const auto& r : recs)
        if (r.method == method) m[r.key] = r.p;
    return m;
}

inline double sup_delta(const std::map<std::vector<int>, double>& a, const std::map<std::vector<int>, double>& b) {
    double d = 0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        d = std::max(d, std::fabs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, p] : b)
        if (!a.count(k)) d = std::max(d, std::fabs(p));
    return d;
}

inline void exact_records(Report& r, const Pmf<Signature, ExactScalar>& pmf, int shift, const std::string& method) {
    for (const auto& [key, p] : pmf.entries) {
        Record rec{key.shifted(-shift).entries(), to_double(p), 0.0, method, p};
        r.results.push_back(std::move(rec));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands.

/// Shifted leading columns at size n against the limit law with
/// chi = q^{frac(log_q n)}.
inline Report cmd_compare(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n < 1) throw std::invalid_argument("compare needs n >= 1");
    Report r(cfg);
    const auto scale = log_scale(cfg.n, cfg.q);
    const std::string how = cfg.methods.empty() ? "auto" : cfg.methods.front();
    std::map<std::vector<int>, double> empirical;
    if (how == "exact") {
        const auto pmf = exact_column_distribution(cfg.n, exact_inverse(cfg.q), cfg.k);
        if (!exactly_normalized(pmf)) r.failures.push_back({"exact column law is not normalized", 0, 0});
        detail::exact_records(r, pmf, scale.shift, "dp");
    } else {
        Sampler sampler;
        if (how == "chain") sampler = Sampler::chain;
        else if (how == "matrix") sampler = Sampler::matrix;
        else if (how == "auto") sampler = cfg.n <= 256 ? Sampler::matrix : Sampler::chain;
        else throw std::invalid_argument("compare: method must be auto, chain, matrix or exact");
        if (sampler == Sampler::matrix && cfg.q != 2 && cfg.q > 256) throw std::invalid_argument("matrix sampling needs q <= 256");
        const auto counts = sample_column_counts(cfg.n, cfg.q, cfg.k, cfg.samples, cfg.seed, sampler, cfg.threads);
        const std::string name = sampler == Sampler::chain ? "chain" : "matrix";
        for (const auto& [key, cnt] : counts) {
            const double p = static_cast<double>(cnt) / static_cast<double>(cfg.samples);
            std::vector<int> shifted = key;
            for (int& x : shifted) x -= scale.shift;
            // binomial standard error as the per-key uncertainty
            r.results.push_back({shifted, p, std::sqrt(p * (1 - p) / static_cast<double>(cfg.samples)), name, std::nullopt});
        }
    }
    for (const auto& rec : r.results) empirical[rec.key] = rec.p;

    auto [lo, hi] = limit_window(cfg.t(), scale.chi, cfg.tol, cfg.lo, cfg.hi);
    std::map<std::vector<int>, double> reference;
    LimitSeries<double> series(cfg.t(), scale.chi);
    double mass = 0;
    for (const auto& key : decreasing_tuples(cfg.k, lo, hi)) {
        try {
            const auto val = series(Signature(key), cfg.tol);
            reference[key] = val.value;
            mass += val.value;
            Record rec{key, val.value, val.error_bound, "series", std::nullopt};
            detail::check_err(r, rec, cfg.tol);
            r.results.push_back(std::move(rec));
        } catch (const ConvergenceError& e) {
            r.failures.push_back({std::string("series at ") + to_string(Signature(key)) + ": " + e.what(), e.achieved(), cfg.tol});
        }
    }
    nlohmann::json deltas = nlohmann::json::array();
    double sup = 0;
    std::map<std::vector<int>, bool> keys;
    for (const auto& [k, p] : empirical) keys[k] = true;
    for (const auto& [k, p] : reference) keys[k] = true;
    for (const auto& [k, unused] : keys) {
        const double a = empirical.count(k) ? empirical[k] : 0.0;
        const double b = reference.count(k) ? reference[k] : 0.0;
        sup = std::max(sup, std::fabs(a - b));
        deltas.push_back({{"key", k}, {"delta", a - b}});
    }
    r.dinf = sup;
    r.extra = {{"shift", scale.shift},
               {"chi", scale.chi},
               {"window", {lo, hi}},
               {"reference_mass_deficit", 1 - mass},
               {"empirical_method", how == "exact" ? "dp" : r.results.front().method},
               {"deltas", deltas}};
    if (cfg.max_dinf && sup > *cfg.max_dinf) r.failures.push_back({"dinf above max-dinf", sup, *cfg.max_dinf});
    return r;
}

/// Probability tables from any mix of methods that describe the same law.
inline Report cmd_tables(const ExperimentConfig& cfg) {
    cfg.validate();
    Report r(cfg);
    std::vector<std::string> methods = cfg.methods.empty() ? std::vector<std::string>{"series"} : cfg.methods;
    static const std::map<std::string, std::string> group{
        {"dp", "finite"},  {"prelimit-integral", "finite"}, {"poissonized", "poissonized"}, {"residue", "residue"},
        {"series", "limit"}, {"contour", "limit"},          {"k1-explicit", "limit"}};
    for (const auto& m : methods)
        if (!group.count(m)) throw std::invalid_argument("tables: unknown method '" + m + "'");
    const std::string g = group.at(methods.front());
    for (const auto& m : methods)
        if (group.at(m) != g) throw std::invalid_argument("tables: methods '" + methods.front() + "' and '" + m + "' describe different laws");

    const double t = cfg.t();
    TorusQuad quad;
    quad.radius = cfg.radius;
    quad.max_nodes = cfg.max_nodes;
    quad.tol = cfg.tol;
    quad.threads = cfg.threads;

    std::vector<std::vector<int>> keys;
    if (g == "limit") {
        auto [lo, hi] = limit_window(t, cfg.chi, cfg.tol, cfg.lo, cfg.hi);
        keys = decreasing_tuples(cfg.k, lo, hi);
        r.extra["window"] = {lo, hi};
    } else {
        int top = cfg.n;
        if (g == "poissonized") {
            const double mean = cfg.tau / (1 - t);
            top = static_cast<int>(std::ceil(mean + 6 * std::sqrt(mean) + 6));
        }
        if (cfg.hi) top = *cfg.hi;
        for (auto& key : decreasing_tuples(cfg.k, cfg.lo.value_or(0), top)) {
            if (key.back() < 0) continue;
            long s = 0;
            for (int x : key) s += x;
            if (g != "poissonized" && s > cfg.n) continue;
            keys.push_back(std::move(key));
        }
        r.extra["window"] = {cfg.lo.value_or(0), top};
    }

    auto guarded = [&](const std::string& method, const std::vector<int>& key, auto&& f) {
        try {
            Record rec = f();
            rec.key = key;
            rec.method = method;
            detail::check_err(r, rec, cfg.tol);
            r.results.push_back(std::move(rec));
        } catch (const ConvergenceError& e) {
            r.failures.push_back({method + " at " + to_string(Signature(key)) + ": " + e.what(), e.achieved(), cfg.tol});
        }
    };

    for (const auto& m : methods) {
        if (m == "dp") {
            if (cfg.n > 400) throw CapExceeded("tables: dp column law is limited to n <= 400");
            const auto pmf = exact_column_distribution(cfg.n, exact_inverse(cfg.q), cfg.k);
            if (!exactly_normalized(pmf)) r.failures.push_back({"dp column law is not normalized", 0, 0});
            for (const auto& key : keys) {
                const ExactScalar p = pmf.at(Signature(key));
                r.results.push_back({key, to_double(p), 0.0, m, p});
            }
        } else if (m == "prelimit-integral" || m == "poissonized") {
            if (cfg.k > 2) throw std::invalid_argument("tables: " + m + " needs k <= 2");
            for (const auto& key : keys)
                guarded(m, key, [&] {
                    const auto res = m == "poissonized" ? poissonized_pmf_integral(cfg.tau, cfg.k, t, Signature(key), quad)
                                                        : prelimit_pmf_integral(cfg.n, cfg.k, t, Signature(key), quad);
                    return Record{{}, res.value, res.error_estimate, m, std::nullopt};
                });
        } else if (m == "residue") {
            if (cfg.k > 3) throw std::invalid_argument("tables: residue needs k <= 3");
            for (const auto& key : keys)
                guarded(m, key, [&] {
                    const auto res = residue_E(cfg.n, Signature(key), cfg.v, cfg.k, t, quad);
                    return Record{{}, res.value, res.error_estimate, m, std::nullopt};
                });
        } else if (m == "series") {
            LimitSeries<double> series(t, cfg.chi);
            for (const auto& key : keys)
                guarded(m, key, [&] {
                    const auto v = series(Signature(key), cfg.tol);
                    return Record{{}, v.value, v.error_bound, m, std::nullopt};
                });
        } else if (m == "k1-explicit") {
            if (cfg.k != 1) throw std::invalid_argument("tables: k1-explicit needs k = 1");
            for (const auto& key : keys)
                guarded(m, key, [&] {
                    const auto v = limit_pmf_k1(t, cfg.chi, key[0], cfg.tol);
                    return Record{{}, v.value, v.error_bound, m, std::nullopt};
                });
        } else if (m == "contour") {
            ContourSpec spec;
            spec.threads = cfg.threads;
            for (const auto& key : keys)
                guarded(m, key, [&] {
                    LimitQuery query{cfg.k, t, cfg.chi, Signature(key), cfg.tol};
                    const auto v = limit_pmf_contour(query, spec);
                    return Record{{}, v.value, v.error_estimate, m, std::nullopt};
                });
        }
    }

    nlohmann::json totals = nlohmann::json::object();
    for (const auto& m : methods) {
        double s = 0;
        for (const auto& [k, p] : detail::as_map(r.results, m)) s += p;
        totals[m] = s;
    }
    r.extra["window_mass"] = totals;
    if (methods.size() > 1) {
        nlohmann::json cross = nlohmann::json::array();
        double worst = 0;
        for (std::size_t a = 0; a < methods.size(); ++a)
            for (std::size_t b = a + 1; b < methods.size(); ++b) {
                const double d = detail::sup_delta(detail::as_map(r.results, methods[a]), detail::as_map(r.results, methods[b]));
                worst = std::max(worst, d);
                cross.push_back({{"methods", {methods[a], methods[b]}}, {"max_delta", d}});
                if (d > cfg.tol) r.failures.push_back({methods[a] + " vs " + methods[b] + " max delta", d, cfg.tol});
            }
        r.extra["cross_method"] = cross;
        r.dinf = worst;
    }
    return r;
}

/// One random matrix: Jordan partition with its row and column profile.
inline Report cmd_sample_figure(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.q != 2 && cfg.q > 256) throw std::invalid_argument("sample-figure needs q <= 256");
    Report r(cfg);
    auto rng = stream_for(cfg.seed, 0);
    Partition lambda;
    if (cfg.q == 2) {
        lambda = jordan_type_incremental(sample_strict_upper_bits(cfg.n, rng));
    } else {
        auto field = std::make_shared<FiniteField>(cfg.q);
        lambda = jordan_type_incremental(sample_strict_upper(cfg.n, field, rng));
    }
    const Partition cols = conjugate(lambda);
    r.extra = {{"partition", lambda.parts()}, {"rows", lambda.parts()}, {"columns", cols.parts()}, {"size", lambda.size()}};
    r.results.push_back({lambda.parts(), 1.0, 0.0, "sample", std::nullopt});
    return r;
}

/// Empirical law of the unshifted leading columns.
inline Report cmd_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    Report r(cfg);
    const std::string how = cfg.methods.empty() ? "chain" : cfg.methods.front();
    if (how != "chain" && how != "matrix") throw std::invalid_argument("simulate: method must be chain or matrix");
    if (how == "matrix" && cfg.q > 256) throw std::invalid_argument("matrix sampling needs q <= 256");
    const auto counts = sample_column_counts(cfg.n, cfg.q, cfg.k, cfg.samples, cfg.seed,
                                             how == "chain" ? Sampler::chain : Sampler::matrix, cfg.threads);
    for (const auto& [key, cnt] : counts) {
        const double p = static_cast<double>(cnt) / static_cast<double>(cfg.samples);
        r.results.push_back({key, p, std::sqrt(p * (1 - p) / static_cast<double>(cfg.samples)), how, std::nullopt});
    }
    return r;
}

/// Exact law of the full Jordan type at size n.
inline Report cmd_exact_dp(const ExperimentConfig& cfg) {
    cfg.validate();
    Report r(cfg);
    const auto pmf = exact_distribution(cfg.n, exact_inverse(cfg.q), cfg.cap);
    if (!exactly_normalized(pmf)) r.failures.push_back({"dp law is not normalized", 0, 0});
    for (const auto& [lambda, p] : pmf.entries) r.results.push_back({lambda.parts(), to_double(p), 0.0, "dp", p});
    return r;
}

inline Report run(const ExperimentConfig& cfg) {
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "tables") return cmd_tables(cfg);
    if (cfg.command == "sample-figure") return cmd_sample_figure(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "exact-dp") return cmd_exact_dp(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace jordanlab
