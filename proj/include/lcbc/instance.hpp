#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "lcbc/matrix.hpp"

namespace lcbc {

using Json = nlohmann::json;

/// One K-user computation broadcast instance: shared data dimension d over a
/// field, and per user a cache matrix (columns already known) and a demand
/// matrix (columns to be delivered). All matrices have d rows.
struct LcbcInstance {
    Field f;
    int d = 0;
    std::vector<Mat> cache;
    std::vector<Mat> demand;

    int K() const { return static_cast<int>(cache.size()); }
    /// Joint matrix [cache | demand] for user k (1-based).
    Mat joint(int k) const;
    /// Demand width m_k.
    int m(int k) const { return demand[static_cast<size_t>(k - 1)].cols; }
    /// Cache width m'_k.
    int mp(int k) const { return cache[static_cast<size_t>(k - 1)].cols; }

    /// Throws std::invalid_argument with a field diagnostic when shapes or
    /// field data are inconsistent.
    void validate() const;
};

/// { "rows": r, "cols": c, "data": [[int,...],...] } row-major with integer
/// field-element encoding.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, const Field& f, const std::string& where);

/// Instance file schema: { "p": prime, "n": degree, "d": ambient,
/// "users": [ { "cache": matrix, "demand": matrix }, ... ] }.
Json instance_to_json(const LcbcInstance& ins);
LcbcInstance instance_from_json(const Json& j);
LcbcInstance load_instance(const std::string& path);

/// Bundled example instances: "toy_k4", "fig1_k2", "mds_k3".
std::vector<std::string> fixture_names();
LcbcInstance make_fixture(const std::string& name);

}  // namespace lcbc
