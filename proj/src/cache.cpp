#include "hqmf/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hqmf {

using nlohmann::json;

json series_to_json(const QSeries& s) {
    json out;
    out["denom"] = kDenom;
    out["trunc_order"] = s.exact() ? json(nullptr) : json(s.trunc());
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) terms.push_back(json::array({k, to_string(c)}));
    out["terms"] = terms;
    return out;
}

QSeries series_from_json(const json& j) {
    if (j.at("denom").get<long>() != kDenom) throw std::invalid_argument("series uses a different exponent lattice");
    std::map<Exp, Rational> terms;
    for (const auto& t : j.at("terms")) terms[t.at(0).get<Exp>()] = parse_rational(t.at(1).get<std::string>());
    Exp trunc = j.at("trunc_order").is_null() ? kExact : j.at("trunc_order").get<Exp>();
    return QSeries::from_terms(terms, trunc);
}

namespace {

json coords_json(const NFElem& x) {
    json a = json::array();
    for (const auto& r : x.coords()) a.push_back(to_string(r));
    return a;
}

NFElem coords_elem(const json& a, const FieldPtr& field) {
    std::vector<Rational> c;
    for (const auto& s : a) c.push_back(parse_rational(s.get<std::string>()));
    return NFElem(field, c);
}

}  // namespace

json asymptotic_to_json(const AsymptoticSeries& s) {
    json out;
    out["sigma"] = s.sigma;
    out["K"] = s.K;
    out["delta"] = coords_json(s.delta);
    out["odd_orders_vanish"] = s.odd_orders_vanish;
    json cs = json::array();
    for (const auto& ck : s.c) {
        json poly = json::array();
        for (const auto& a : ck.coeffs()) poly.push_back(coords_json(a));
        cs.push_back(poly);
    }
    out["c"] = cs;
    return out;
}

AsymptoticSeries asymptotic_from_json(const json& j, const FieldPtr& field) {
    AsymptoticSeries s;
    s.sigma = j.at("sigma").get<int>();
    s.K = j.at("K").get<int>();
    s.delta = coords_elem(j.at("delta"), field);
    s.odd_orders_vanish = j.at("odd_orders_vanish").get<bool>();
    for (const auto& poly : j.at("c")) {
        std::vector<NFElem> coeffs;
        for (const auto& a : poly) coeffs.push_back(coords_elem(a, field));
        s.c.push_back(LambdaPoly(coeffs));
    }
    return s;
}

std::string CacheKey::file_name() const {
    std::ostringstream os;
    os << family << "_l" << lambda << "_j" << j << "_" << sign << "_o" << order << ".json";
    return os.str();
}

SeriesCache::SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SeriesCache::default_dir() {
    if (const char* d = std::getenv("HQMF_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "hqmf";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "hqmf";
    return std::filesystem::temp_directory_path() / "hqmf-cache";
}

namespace {

class FileLock {
public:
    explicit FileLock(const std::filesystem::path& p, int mode) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, mode);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::optional<json> SeriesCache::load(const CacheKey& key) const {
    const auto path = dir_ / key.file_name();
    if (!std::filesystem::exists(path)) return std::nullopt;
    FileLock lock(dir_ / ".lock", LOCK_SH);
    std::ifstream in(path);
    json entry = json::parse(in, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) return std::nullopt;
    if (entry.value("schema_version", -1) != kSchemaVersion) return std::nullopt;
    if (entry.value("code_revision", std::string()) != kCodeRevision) return std::nullopt;
    if (!entry.contains("payload")) return std::nullopt;
    return entry["payload"];
}

void SeriesCache::store(const CacheKey& key, const json& payload) const {
    std::filesystem::create_directories(dir_);
    json entry;
    entry["schema_version"] = kSchemaVersion;
    entry["code_revision"] = kCodeRevision;
    entry["key"] = {{"family", key.family}, {"lambda", key.lambda}, {"j", key.j}, {"sign", key.sign},
                    {"order", key.order}};
    entry["payload"] = payload;

    const auto path = dir_ / key.file_name();
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << entry.dump();
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    FileLock lock(dir_ / ".lock", LOCK_EX);
    std::filesystem::rename(tmp, path);
}

}  // namespace hqmf
