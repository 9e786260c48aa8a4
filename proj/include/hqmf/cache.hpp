#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hqmf/puiseux.hpp"
#include "hqmf/statphase.hpp"

namespace hqmf {

inline constexpr int kSchemaVersion = 1;
// bump whenever a formula producing cached exact data changes
inline constexpr const char* kCodeRevision = "hqmf-2026.10-r3";

// {denom, trunc_order, terms: [[k, "num/den"], ...]}; trunc_order is null for exact series
nlohmann::json series_to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);

// c_k as coordinate lists: c[k][i] = coordinates of the λ^i coefficient
nlohmann::json asymptotic_to_json(const AsymptoticSeries& s);
AsymptoticSeries asymptotic_from_json(const nlohmann::json& j, const FieldPtr& field);

struct CacheKey {
    std::string family;  // "H", "asymptotic"
    long lambda = 0;
    int j = 0;
    std::string sign;
    long order = 0;

    std::string file_name() const;
};

// One JSON file per key; written to a temporary file and renamed under an
// advisory lock, so concurrent writers of the same key leave one complete entry.
class SeriesCache {
public:
    explicit SeriesCache(std::filesystem::path dir);

    // $HQMF_CACHE_DIR, else $XDG_CACHE_HOME/hqmf, else ~/.cache/hqmf
    static std::filesystem::path default_dir();

    const std::filesystem::path& dir() const { return dir_; }

    // payload of a valid entry; entries with another schema_version or revision are ignored
    std::optional<nlohmann::json> load(const CacheKey& key) const;
    void store(const CacheKey& key, const nlohmann::json& payload) const;

private:
    std::filesystem::path dir_;
};

}  // namespace hqmf
