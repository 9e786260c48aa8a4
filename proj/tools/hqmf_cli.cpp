#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>

#include "hqmf/cache.hpp"
#include "hqmf/numerics.hpp"
#include "hqmf/qdiff.hpp"
#include "hqmf/qseries.hpp"
#include "hqmf/radial.hpp"
#include "hqmf/statphase.hpp"

using namespace hqmf;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long precision_bits = 0;
    long series_order = 0;  // in powers of q
    std::string lambda_range;
    std::string tau;
    std::string theta = "pi/5";
    std::string N_range = "120..200:4";
    int K = 10;
    std::string output_path;
    std::string cache_dir;
};

// "a" or "a..b"
std::pair<long, long> parse_range(const std::string& s) {
    static const std::regex re(R"(\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad range '" + s + "', expected a or a..b");
    long a = std::stol(m[1]);
    long b = m[2].matched ? std::stol(m[2]) : a;
    if (b < a) throw UsageError("empty range '" + s + "'");
    return {a, b};
}

// "lo..hi" or "lo..hi:step"
std::vector<long> parse_N_range(const std::string& s) {
    static const std::regex re(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*(?::\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad N range '" + s + "', expected lo..hi[:step]");
    long lo = std::stol(m[1]), hi = std::stol(m[2]);
    long step = m[3].matched ? std::stol(m[3]) : 4;
    if (lo <= 0 || hi < lo || step <= 0) throw UsageError("N range needs 0 < lo <= hi and a positive step");
    std::vector<long> out;
    for (long n = lo; n <= hi; n += step) out.push_back(n);
    return out;
}

// decimal or fraction
Rational parse_number(const std::string& s) {
    static const std::regex frac(R"(([+-]?\d+)/(\d+))");
    static const std::regex dec(R"(([+-]?)(\d*)(?:\.(\d*))?)");
    std::smatch m;
    if (std::regex_match(s, m, frac)) return parse_rational(s);
    if (std::regex_match(s, m, dec) && (m[2].length() + m[3].length()) > 0) {
        std::string digits = m[2].str() + m[3].str();
        Rational r(mpz_class(digits.empty() ? "0" : digits), 1);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].length());
        r /= den;
        r.canonicalize();
        return m[1] == "-" ? Rational(-r) : r;
    }
    throw UsageError("bad number '" + s + "'");
}

// "x+yi", "x-yi", "yi", "x"
std::pair<Rational, Rational> parse_tau(const std::string& s) {
    static const std::regex full(R"(\s*([+-]?[\d./]+)\s*([+-])\s*([\d./]*)\s*i\s*)");
    static const std::regex imag(R"(\s*([+-]?[\d./]*)\s*i\s*)");
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        Rational im = m[3].length() ? parse_number(m[3]) : Rational(1);
        return {parse_number(m[1]), m[2] == "-" ? Rational(-im) : im};
    }
    if (std::regex_match(s, m, imag)) {
        std::string t = m[1];
        Rational im = (t.empty() || t == "+") ? Rational(1) : t == "-" ? Rational(-1) : parse_number(t);
        return {Rational(0), im};
    }
    throw UsageError("bad tau '" + s + "', expected x+yi");
}

// "pi/5", "2pi/5", "-pi/3", or θ/π as a fraction
Rational parse_theta(const std::string& s) {
    static const std::regex re(R"(\s*([+-]?)(\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
        Rational r(m[2].length() ? mpz_class(m[2].str()) : mpz_class(1), m[3].matched ? mpz_class(m[3].str()) : mpz_class(1));
        r.canonicalize();
        return m[1] == "-" ? Rational(-r) : r;
    }
    return parse_number(s);
}

int parse_j(int j) {
    if (j < 0 || j > 5) throw UsageError("j must be in 0..5");
    return j;
}

Sign sign_of(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw UsageError("sign must be plus or minus");
}

ordered_json complex_json(const BigComplex& z, int digits) {
    return {{"re", z.real().to_string(digits)}, {"im", z.imag().to_string(digits)}, {"digits", digits}};
}

ordered_json float_json(const BigFloat& x, int digits) { return {{"value", x.to_string(digits)}, {"digits", digits}}; }

int digits_for(long prec) { return static_cast<int>(prec * 0.30103) - 4; }

class App {
public:
    RunConfig cfg;
    bool failed = false;

    SeriesCache cache() const {
        return SeriesCache(cfg.cache_dir.empty() ? SeriesCache::default_dir() : std::filesystem::path(cfg.cache_dir));
    }

    void emit(const ordered_json& j) const {
        const std::string text = j.dump(2) + "\n";
        if (cfg.output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.output_path);
            out << text;
            if (!out) throw std::runtime_error("cannot write " + cfg.output_path);
        }
    }

    QSeries cached_series(const SeriesFamilyKey& key, Exp order) const {
        CacheKey ck{"H", key.lambda, key.j, to_string(key.sign), static_cast<long>(order)};
        SeriesCache c = cache();
        if (auto hit = c.load(ck)) {
            std::cerr << "cache hit " << (c.dir() / ck.file_name()).string() << "\n";
            return series_from_json(*hit);
        }
        QSeries s = h_series(key, order);
        c.store(ck, series_to_json(s));
        return s;
    }

    AsymptoticSeries cached_expansion(int sigma, int K) const {
        const CriticalPoint cp = critical_point(sigma, 64);
        CacheKey ck{"asymptotic", 0, sigma, cp.field->label, K};
        SeriesCache c = cache();
        if (auto hit = c.load(ck)) {
            std::cerr << "cache hit " << (c.dir() / ck.file_name()).string() << "\n";
            return asymptotic_from_json(*hit, cp.field);
        }
        AsymptoticSeries s = gaussian_expand(cp, K);
        c.store(ck, asymptotic_to_json(s));
        return s;
    }

    // ------------------------------------------------------------ commands

    void hseries(long lambda, int j, const std::string& sign) {
        const long order = cfg.series_order > 0 ? cfg.series_order : 32;
        SeriesFamilyKey key{lambda, parse_j(j), sign_of(sign)};
        QSeries s = cached_series(key, order * kDenom);
        ordered_json out;
        out["schema_version"] = kSchemaVersion;
        out["command"] = "hseries";
        out["lambda"] = lambda;
        out["j"] = j;
        out["sign"] = to_string(key.sign);
        out["order"] = order;
        out["text"] = s.to_string([](const Rational& r) { return to_string(r); }, 8);
        out["series"] = series_to_json(s);
        emit(out);
    }

    void verify(const std::string& which) {
        const long order = cfg.series_order > 0 ? cfg.series_order : 10;
        const Exp o = order * kDenom;
        std::pair<long, long> lr = cfg.lambda_range.empty() ? std::pair<long, long>{0, 0} : parse_range(cfg.lambda_range);
        ordered_json cases = ordered_json::array();
        auto add = [&](ordered_json c, bool pass) {
            c["pass"] = pass;
            if (!pass) failed = true;
            cases.push_back(std::move(c));
        };

        if (which == "recurrence") {
            if (cfg.lambda_range.empty()) lr = {-3, 3};
            for (long l = lr.first; l <= lr.second; ++l)
                for (int j = 0; j < 6; ++j)
                    for (Branch b : {Branch::inside, Branch::outside})
                        add({{"lambda", l}, {"j", j}, {"branch", b == Branch::inside ? "inside" : "outside"}},
                            recurrence_residual(j, l, b, o).is_zero());
        } else if (which == "det") {
            if (cfg.lambda_range.empty()) lr = {0, 2};
            for (long l = lr.first; l <= lr.second; ++l) {
                const Exp ol = o + 8 * std::max(l, 0L);
                QSeries d = wronskian_det(l, ol);
                add({{"lambda", l}, {"det", d.to_string([](const Rational& r) { return to_string(r); }, 4)}},
                    d == expected_wronskian_det(l).truncated(ol));
            }
        } else if (which == "orthogonality") {
            if (cfg.lambda_range.empty()) lr = {0, 1};
            for (long l = lr.first; l <= lr.second; ++l) {
                auto r = orthogonality_residual(l, o);
                add({{"lambda", l}, {"first_nonzero", first_nonzero_term(r)}}, all_zero(r));
            }
        } else if (which == "quadratic") {
            if (cfg.lambda_range.empty()) lr = {-1, 1};
            for (long l = lr.first; l <= lr.second; ++l) add({{"lambda", l}}, quadratic_relation(l, o).is_zero());
        } else if (which == "selfdual-symbolic") {
            auto rep = verify_symbolic_selfduality();
            for (const auto& c : rep.checks) add({{"name", c.name}, {"detail", c.detail}}, c.pass);
        } else if (which == "symmetry") {
            if (cfg.lambda_range.empty()) lr = {-2, 2};
            for (long l = lr.first; l <= lr.second; ++l)
                for (int j = 0; j < 6; ++j) {
                    auto r = symmetry_check(l, j, o);
                    add({{"lambda", l}, {"j", j}, {"holds_with_opposite_sign", r.holds_with_opposite_sign},
                         {"first_bad_m", r.first_bad_m}},
                        r.pass);
                }
        } else if (which == "gz-compare") {
            for (int j : {3, 4, 5})
                for (const auto& r : gz_comparison(j, std::max<Exp>(o, 8 * 12)))
                    add({{"j", j}, {"sign", to_string(r.sign)}}, r.pass);
        } else {
            throw UsageError("unknown check '" + which + "'");
        }

        ordered_json out;
        out["schema_version"] = kSchemaVersion;
        out["command"] = "verify";
        out["check"] = which;
        out["order"] = order;
        out["pass"] = !failed;
        out["cases"] = cases;
        emit(out);
    }

    void statphase(const std::string& field, int sigma) {
        if (sigma == 0) sigma = field == "xi" ? 1 : field == "eta" ? 4 : 0;
        if (sigma < 1 || sigma > 6) throw UsageError("field must be xi or eta, sigma 1..6");
        if (cfg.K < 0) throw UsageError("K must be nonnegative");
        AsymptoticSeries s = cached_expansion(sigma, cfg.K);
        ordered_json cs = ordered_json::array();
        for (std::size_t k = 0; k < s.c.size(); ++k) {
            ordered_json poly = ordered_json::array();
            for (const auto& a : s.c[k].coeffs()) poly.push_back(a.to_string(field == "eta" || sigma > 3 ? "eta" : "xi"));
            cs.push_back({{"k", k}, {"lambda_coefficients", poly}});
        }
        ordered_json out;
        out["schema_version"] = kSchemaVersion;
        out["command"] = "statphase";
        out["sigma"] = sigma;
        out["field"] = critical_point(sigma, 64).field->label;
        out["K"] = cfg.K;
        out["delta"] = s.delta.to_string(sigma > 3 ? "eta" : "xi");
        out["c"] = cs;
        out["payload"] = asymptotic_to_json(s);
        emit(out);
    }

    void stateintegral(long lambda, long lambda_prime, bool check, double tol) {
        if (cfg.tau.empty()) throw UsageError("--tau is required");
        auto [re, im] = parse_tau(cfg.tau);
        if (im <= 0) throw UsageError("tau must lie in the upper half plane");
        const long prec = cfg.precision_bits > 0 ? cfg.precision_bits : 192;
        ModularPair pair = ModularPair::from_tau(re, im, prec);
        ZValue z = descendant_Z(pair, lambda, lambda_prime);
        const int d = digits_for(prec);
        ordered_json out;
        out["schema_version"] = kSchemaVersion;
        out["command"] = "stateintegral";
        out["tau"] = {to_string(re), to_string(im)};
        out["lambda"] = lambda;
        out["lambda_prime"] = lambda_prime;
        out["precision_bits"] = prec;
        out["Z"] = complex_json(z.value, d);
        out["quadrature_error"] = float_json(z.error, 6);
        out["nodes"] = z.nodes;
        if (check) {
            const Exp order = cfg.series_order > 0 ? cfg.series_order * kDenom : 0;
            FactorizationReport f = factorization(pair, lambda, lambda_prime, order);
            out["factorization"] = {{"lhs", complex_json(f.lhs, d)},
                                    {"rhs", complex_json(f.rhs, d)},
                                    {"residual", float_json(f.residual, 6)},
                                    {"literal_residual", float_json(f.literal_residual, 6)},
                                    {"truncation", float_json(f.truncation, 6)},
                                    {"tolerance", tol}};
            const bool pass = f.residual.to_double() < tol;
            out["pass"] = pass;
            if (!pass) failed = true;
        }
        emit(out);
    }

    void radial(int j, const std::string& sign, int depth, const std::string& csv) {
        const Rational theta = parse_theta(cfg.theta);
        const long prec = cfg.precision_bits > 0 ? cfg.precision_bits : 256;
        MatchOptions opts;
        opts.N_list = parse_N_range(cfg.N_range);
        opts.depth = depth;
        if (static_cast<std::size_t>(depth) + 3 > opts.N_list.size()) throw UsageError("N range too short for the depth");
        Sign s = sign_of(sign);
        parse_j(j);
        MatchReport rep = asymptotic_match(j, s, theta, cfg.K, prec, opts);

        if (!csv.empty()) {
            std::ofstream out(csv);
            out << "N,re,im\n";
            for (const auto& smp : radial_samples(j, s, theta, opts.N_list, prec))
                out << smp.N << "," << smp.value.real().to_string(30) << "," << smp.value.imag().to_string(30) << "\n";
        }

        auto cand = [](const MatchCandidate& c) {
            return ordered_json{{"sigma", c.sigma},
                                {"hbar_sign", c.hbar_sign > 0 ? "+" : "-"},
                                {"lattice", {c.lattice_a, c.lattice_b}},
                                {"digits", std::round(c.digits * 100) / 100},
                                {"constant", complex_json(c.constant, 12)}};
        };
        ordered_json out;
        out["schema_version"] = kSchemaVersion;
        out["command"] = "radial";
        out["j"] = j;
        out["sign"] = to_string(s);
        out["theta_over_pi"] = to_string(theta);
        out["K"] = cfg.K;
        out["precision_bits"] = prec;
        out["N"] = opts.N_list;
        out["sigma_label"] = rep.sigma_label;
        out["hbar_sign"] = rep.hbar_sign > 0 ? "+" : "-";
        out["prefactor"] = rep.prefactor;
        out["digits_matched"] = rep.digits_matched;
        out["constant_ratio"] = complex_json(rep.constant_ratio, 12);
        out["lattice"] = {rep.lattice_a, rep.lattice_b};
        out["best"] = cand(rep.best);
        out["no_match"] = rep.no_match;
        ordered_json all = ordered_json::array();
        for (const auto& c : rep.candidates) all.push_back(cand(c));
        out["candidates"] = all;
        out["pass"] = rep.pass();
        if (!rep.pass()) failed = true;
        emit(out);
    }
};

// key=value lines become --key=value after the subcommand; flags given explicitly win
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& subcommands) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> rest, from_file;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config " + path);
    auto given = [&](const std::string& key) {
        for (const auto& a : rest)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        auto trim = [](std::string x) {
            x.erase(0, x.find_first_not_of(" \t\r"));
            x.erase(x.find_last_not_of(" \t\r") + 1);
            return x;
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        if (!given(key)) from_file.push_back("--" + key + "=" + value);
    }
    auto sub = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
        return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
    });
    if (sub == rest.end()) throw UsageError("a subcommand is required");
    rest.insert(sub + 1, from_file.begin(), from_file.end());
    return rest;
}

void common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--prec,--precision-bits", cfg.precision_bits, "working precision in bits");
    sub->add_option("--order,--series-order", cfg.series_order, "series truncation order in powers of q");
    sub->add_option("--output,-o", cfg.output_path, "write JSON here instead of stdout");
    sub->add_option("--cache-dir", cfg.cache_dir, "coefficient cache (default $HQMF_CACHE_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"holomorphic quantum modular form toolkit for the (-2,3,7) pretzel knot"};
    cli.footer("--config FILE reads key=value lines (e.g. order=40, lambda=0..2) as options of the subcommand");
    cli.require_subcommand(1);
    App app;
    RunConfig& cfg = app.cfg;

    long lambda = 0, lambda_prime = 0;
    int j = 0, sigma = 0, depth = 12;
    std::string sign = "plus", which, field = "xi", csv;
    bool check = false;
    double tol = 1e-30;

    auto* hs = cli.add_subcommand("hseries", "truncated H^±_{λ,j}");
    common_options(hs, cfg);
    hs->add_option("--lambda", lambda);
    hs->add_option("--j", j)->required();
    hs->add_option("--sign", sign);

    auto* ve = cli.add_subcommand("verify", "exact identities, pass/fail per case");
    common_options(ve, cfg);
    ve->add_option("which", which, "recurrence|det|orthogonality|quadratic|selfdual-symbolic|symmetry|gz-compare")
        ->required();
    ve->add_option("--lambda", cfg.lambda_range, "a or a..b");

    auto* sp = cli.add_subcommand("statphase", "coefficients c_k of the asymptotic series");
    common_options(sp, cfg);
    sp->add_option("--field", field, "xi or eta");
    sp->add_option("--sigma", sigma, "critical point 1..6 (overrides the field's first embedding)");
    sp->add_option("--K", cfg.K);

    auto* si = cli.add_subcommand("stateintegral", "descendant state integral Z");
    common_options(si, cfg);
    si->add_option("--tau", cfg.tau, "x+yi")->required();
    si->add_option("--lambda", lambda);
    si->add_option("--lambdap,--lambda-prime", lambda_prime);
    si->add_flag("--check-factorization", check);
    si->add_option("--tol", tol);

    auto* ra = cli.add_subcommand("radial", "radial asymptotics against the table");
    common_options(ra, cfg);
    ra->add_option("--theta", cfg.theta, "pi/5, 2pi/5, or θ/π as a fraction");
    ra->add_option("--j", j)->required();
    ra->add_option("--sign", sign);
    ra->add_option("--K", cfg.K);
    ra->add_option("--N", cfg.N_range, "lo..hi[:step]");
    ra->add_option("--depth", depth);
    ra->add_option("--csv", csv, "write the (N, value) table");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv, {"hseries", "verify", "statphase", "stateintegral", "radial"});
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::reverse(args.begin(), args.end());
    try {
        cli.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = cli.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*hs) app.hseries(lambda, j, sign);
        if (*ve) app.verify(which);
        if (*sp) app.statphase(field, sigma);
        if (*si) app.stateintegral(lambda, lambda_prime, check, tol);
        if (*ra) app.radial(j, sign, depth, csv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return app.failed ? kExitFail : 0;
}
