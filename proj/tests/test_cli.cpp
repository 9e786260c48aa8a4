#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "hqmf/cache.hpp"
#include "hqmf/qseries.hpp"

using namespace hqmf;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    json j() const { return json::parse(out); }
};

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("hqmf-cli-test-" + std::to_string(::getpid())) / name;
    fs::create_directories(p.parent_path());
    return p;
}

Run run(const std::string& args, const fs::path& cache) {
    const char* exe = std::getenv("HQMF_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "HQMF_CLI must point at the hqmf executable");
    std::string cmd = "HQMF_CACHE_DIR='" + cache.string() + "' '" + exe + "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string coeff_at(const json& series, long k) {
    for (const auto& t : series["terms"])
        if (t[0].get<long>() == k) return t[1].get<std::string>();
    return "0";
}

}  // namespace

TEST_CASE("hseries prints the leading coefficients") {
    auto cache = scratch("c1");
    fs::remove_all(cache);
    Run r = run("hseries --lambda 0 --j 0 --sign plus --order 64", cache);
    REQUIRE(r.code == 0);
    json s = r.j()["series"];
    CHECK(s["denom"] == 8);
    CHECK(s["trunc_order"] == 64 * 8);
    CHECK(coeff_at(s, 0) == "1");
    CHECK(coeff_at(s, 8) == "0");
    CHECK(coeff_at(s, 16) == "0");
    CHECK(coeff_at(s, 24) == "1");
    CHECK(coeff_at(s, 32) == "3");

    // exact oracle from the library
    QSeries direct = h_series({0, 0, Sign::plus}, 64 * 8);
    CHECK(series_from_json(s) == direct);

    Run warm = run("hseries --lambda 0 --j 0 --sign plus --order 64", cache);
    CHECK(warm.code == 0);
    CHECK(warm.out == r.out);
    CHECK(fs::exists(cache / CacheKey{"H", 0, 0, "plus", 64 * 8}.file_name()));
}

TEST_CASE("usage errors") {
    auto cache = scratch("c2");
    CHECK(run("hseries --j 9", cache).code == 2);
    CHECK(run("hseries", cache).code == 2);
    CHECK(run("verify nonsense", cache).code == 2);
    CHECK(run("stateintegral --tau 0.5-0.5i", cache).code == 2);
    CHECK(run("radial --j 1 --theta 0", cache).code == 2);
    CHECK(run("radial --j 1 --N 200..120", cache).code == 2);
}

TEST_CASE("verify reports exact identities") {
    auto cache = scratch("c3");
    Run det = run("verify det --lambda 0..3 --order 20", cache);
    CHECK(det.code == 0);
    CHECK(det.j()["pass"] == true);
    CHECK(det.j()["cases"].size() == 4);

    Run quad = run("verify quadratic --lambda -1..1", cache);
    CHECK(quad.code == 0);

    Run sd = run("verify selfdual-symbolic", cache);
    bool det_q = false, untransposed = true;
    const json report = sd.j();
    for (const auto& c : report["cases"]) {
        if (c["name"] == "det-Q") det_q = c["pass"];
        if (c["name"] == "quad-q-dif") untransposed = c["pass"];
    }
    CHECK(det_q);
    // the product without the transpose is reported as failing, so the command fails
    CHECK_FALSE(untransposed);
    CHECK(sd.code == 1);

    CHECK(run("verify recurrence --lambda -1..1 --order 6", cache).code == 0);
    CHECK(run("verify orthogonality --lambda 0..1 --order 6", cache).code == 0);
}

TEST_CASE("config file supplies options") {
    auto cache = scratch("c4");
    auto cfg = scratch("run.cfg");
    {
        std::ofstream f(cfg);
        f << "# det check\nlambda = 0..1\norder=12\n";
    }
    Run r = run("verify det --config " + cfg.string(), cache);
    CHECK(r.code == 0);
    CHECK(r.j()["cases"].size() == 2);
    CHECK(r.j()["order"] == 12);
    Run o = run("verify det --lambda 2 --config " + cfg.string(), cache);
    CHECK(o.j()["cases"].size() == 1);
    {
        std::ofstream f(cfg);
        f << "no_such_key=1\n";
    }
    CHECK(run("verify det --config " + cfg.string(), cache).code == 2);
}

TEST_CASE("statphase first-order coefficients") {
    auto cache = scratch("c5");
    fs::remove_all(cache);
    Run r = run("statphase --field xi --K 5", cache);
    REQUIRE(r.code == 0);
    json c1 = r.j()["payload"]["c"][1];
    CHECK(c1[0] == json::array({"-681/8464", "127/2116", "293/8464"}));
    CHECK(c1[1] == json::array({"17/46", "-11/92", "3/46"}));
    CHECK(c1[2] == json::array({"3/92", "-7/92", "-1/46"}));
    CHECK(r.j()["c"].size() == 6);
    Run warm = run("statphase --field xi --K 5", cache);
    CHECK(warm.out == r.out);
}

TEST_CASE("stateintegral factorization check") {
    auto cache = scratch("c6");
    Run r = run("stateintegral --tau 0.5+0.5i --lambda 0 --lambdap 0 --check-factorization", cache);
    CHECK(r.code == 0);
    json j = r.j();
    CHECK(j["pass"] == true);
    CHECK(std::stod(j["factorization"]["residual"]["value"].get<std::string>()) < 1e-30);
    CHECK(j["tau"] == json::array({"1/2", "1/2"}));

    Run strict = run("stateintegral --tau 0.5+0.5i --check-factorization --prec 64 --tol 1e-300", cache);
    CHECK(strict.code == 1);
}

TEST_CASE("radial report") {
    auto cache = scratch("c7");
    auto csv = scratch("r.csv");
    Run r = run("radial --theta pi/5 --j 1 --sign plus --csv " + csv.string(), cache);
    CHECK(r.code == 0);
    json j = r.j();
    CHECK(j["sigma_label"] == "sigma1");
    CHECK(j["digits_matched"].get<int>() >= 5);
    CHECK(j["candidates"].size() == 12);
    std::ifstream f(csv);
    std::string header;
    std::getline(f, header);
    CHECK(header == "N,re,im");
}

TEST_CASE("cache entries round-trip and are invalidated by revision") {
    auto dir = scratch("c8");
    fs::remove_all(dir);
    SeriesCache c(dir);
    QSeries s = h_series({-1, 3, Sign::minus}, 80);
    CacheKey k{"H", -1, 3, "minus", 80};
    CHECK_FALSE(c.load(k).has_value());
    c.store(k, series_to_json(s));
    auto hit = c.load(k);
    REQUIRE(hit.has_value());
    CHECK(series_from_json(*hit) == s);
    CHECK(series_to_json(series_from_json(*hit)).dump() == series_to_json(s).dump());

    QSeries exact = QSeries::from_terms({{0, Rational(1)}, {3, make_rational(-2, 7)}});
    CHECK(series_from_json(series_to_json(exact)) == exact);
    CHECK(series_to_json(exact)["trunc_order"].is_null());

    // an entry from another code revision is ignored
    json stale;
    {
        std::ifstream in(dir / k.file_name());
        stale = json::parse(in);
    }
    stale["code_revision"] = "older";
    {
        std::ofstream out(dir / k.file_name());
        out << stale.dump();
    }
    CHECK_FALSE(c.load(k).has_value());
    stale["code_revision"] = kCodeRevision;
    stale["schema_version"] = kSchemaVersion + 1;
    {
        std::ofstream out(dir / k.file_name());
        out << stale.dump();
    }
    CHECK_FALSE(c.load(k).has_value());
}

TEST_CASE("asymptotic payload round-trip") {
    auto p = critical_point(5, 64);
    AsymptoticSeries s = gaussian_expand(p, 3);
    AsymptoticSeries back = asymptotic_from_json(asymptotic_to_json(s), p.field);
    REQUIRE(back.c.size() == s.c.size());
    for (std::size_t k = 0; k < s.c.size(); ++k) CHECK(back.c[k] == s.c[k]);
    CHECK(back.delta == s.delta);
    CHECK(back.sigma == 5);
    CHECK(asymptotic_to_json(back).dump() == asymptotic_to_json(s).dump());
}
