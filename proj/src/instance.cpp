#include "lcbc/instance.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace lcbc {

Mat LcbcInstance::joint(int k) const {
    return hcat(cache[static_cast<size_t>(k - 1)], demand[static_cast<size_t>(k - 1)]);
}

void LcbcInstance::validate() const {
    if (!f) throw std::invalid_argument("instance: missing field");
    if (d < 0) throw std::invalid_argument("instance: negative ambient dimension");
    if (cache.size() != demand.size()) throw std::invalid_argument("instance: user list mismatch");
    if (cache.empty()) throw std::invalid_argument("instance: no users");
    for (size_t k = 0; k < cache.size(); ++k) {
        for (const Mat* m : {&cache[k], &demand[k]}) {
            if (!m->f || !m->f->same_as(*f))
                throw std::invalid_argument("instance: user " + std::to_string(k + 1) +
                                            " field mismatch");
            if (m->rows != d)
                throw std::invalid_argument("instance: user " + std::to_string(k + 1) +
                                            " matrix row count differs from d");
            for (std::uint64_t v : m->a)
                if (v >= f->order())
                    throw std::invalid_argument("instance: user " + std::to_string(k + 1) +
                                                " entry out of field range");
        }
        Mat j = hcat(cache[k], demand[k]);
        if (rank(j) != j.cols)
            throw std::invalid_argument("instance: user " + std::to_string(k + 1) +
                                        " cache and demand columns are dependent");
    }
}

namespace {

// accepts both unsigned and signed nonnegative JSON storage
bool nonneg_int(const Json& j) {
    return j.is_number_unsigned() ||
           (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

}  // namespace

Json mat_to_json(const Mat& m) {
    Json data = Json::array();
    for (int r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
        data.push_back(std::move(row));
    }
    return Json{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(data)}};
}

Mat mat_from_json(const Json& j, const Field& f, const std::string& where) {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(where + ": " + msg);
    };
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        fail("matrix needs rows/cols/data");
    if (!nonneg_int(j["rows"]) || !nonneg_int(j["cols"]))
        fail("rows/cols must be nonnegative integers");
    int rows = j["rows"].get<int>();
    int cols = j["cols"].get<int>();
    const Json& data = j["data"];
    if (!data.is_array() || static_cast<int>(data.size()) != rows) fail("data row count mismatch");
    Mat m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = data[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            fail("data row " + std::to_string(r) + " width mismatch");
        for (int c = 0; c < cols; ++c) {
            const Json& cell = row[static_cast<size_t>(c)];
            if (!nonneg_int(cell))
                fail("entry (" + std::to_string(r) + "," + std::to_string(c) +
                     ") must be a nonnegative integer");
            std::uint64_t v = cell.get<std::uint64_t>();
            if (v >= f->order())
                fail("entry (" + std::to_string(r) + "," + std::to_string(c) +
                     ") exceeds field order");
            m.at(r, c) = v;
        }
    }
    return m;
}

Json instance_to_json(const LcbcInstance& ins) {
    Json users = Json::array();
    for (size_t k = 0; k < ins.cache.size(); ++k)
        users.push_back(Json{{"cache", mat_to_json(ins.cache[k])},
                             {"demand", mat_to_json(ins.demand[k])}});
    return Json{{"p", ins.f->p()}, {"n", ins.f->n()}, {"d", ins.d}, {"users", std::move(users)}};
}

LcbcInstance instance_from_json(const Json& j) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("instance: " + msg); };
    if (!j.is_object()) fail("top level must be an object");
    for (const char* key : {"p", "n", "d", "users"})
        if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    if (!nonneg_int(j["p"]) || !nonneg_int(j["n"]) || !nonneg_int(j["d"]))
        fail("p/n/d must be nonnegative integers");
    LcbcInstance ins;
    ins.f = make_field(j["p"].get<std::uint64_t>(), j["n"].get<unsigned>());
    ins.d = j["d"].get<int>();
    const Json& users = j["users"];
    if (!users.is_array() || users.empty()) fail("users must be a nonempty array");
    for (size_t k = 0; k < users.size(); ++k) {
        const Json& u = users[k];
        std::string where = "instance: user " + std::to_string(k + 1);
        if (!u.is_object() || !u.contains("cache") || !u.contains("demand"))
            throw std::invalid_argument(where + ": needs cache and demand matrices");
        ins.cache.push_back(mat_from_json(u["cache"], ins.f, where + " cache"));
        ins.demand.push_back(mat_from_json(u["demand"], ins.f, where + " demand"));
    }
    ins.validate();
    return ins;
}

LcbcInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("instance: JSON parse error in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

std::vector<std::string> fixture_names() { return {"toy_k4", "fig1_k2", "mds_k3"}; }

namespace {

Mat cols_from(const Field& f, int d, const std::vector<std::vector<std::uint64_t>>& cols) {
    Mat m(f, d, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int r = 0; r < d; ++r) m.at(r, static_cast<int>(j)) = cols[j][static_cast<size_t>(r)];
    return m;
}

}  // namespace

LcbcInstance make_fixture(const std::string& name) {
    LcbcInstance ins;
    if (name == "toy_k4") {
        // four data symbols in a ring: user k caches symbol k, wants symbol k+1
        ins.f = make_field(2, 1);
        ins.d = 4;
        for (int k = 0; k < 4; ++k) {
            std::vector<std::uint64_t> cache(4, 0), next(4, 0);
            cache[static_cast<size_t>(k)] = 1;
            next[static_cast<size_t>((k + 1) % 4)] = 1;
            ins.cache.push_back(cols_from(ins.f, 4, {cache}));
            ins.demand.push_back(cols_from(ins.f, 4, {next}));
        }
    } else if (name == "fig1_k2") {
        // data rows (A1, A2, B1, B2); user 1 caches A1+B1 and wants file A,
        // user 2 caches A2+B2 and wants file B
        ins.f = make_field(2, 1);
        ins.d = 4;
        ins.cache.push_back(cols_from(ins.f, 4, {{1, 0, 1, 0}}));
        ins.demand.push_back(cols_from(ins.f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
        ins.cache.push_back(cols_from(ins.f, 4, {{0, 1, 0, 1}}));
        ins.demand.push_back(cols_from(ins.f, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
    } else if (name == "mds_k3") {
        // no caches; demands e1, e2, e1+e2 in a 2-dimensional ambient
        ins.f = make_field(2, 1);
        ins.d = 2;
        for (int k = 0; k < 3; ++k) ins.cache.push_back(Mat(ins.f, 2, 0));
        ins.demand.push_back(cols_from(ins.f, 2, {{1, 0}}));
        ins.demand.push_back(cols_from(ins.f, 2, {{0, 1}}));
        ins.demand.push_back(cols_from(ins.f, 2, {{1, 1}}));
    } else {
        throw std::invalid_argument("unknown fixture: " + name);
    }
    ins.validate();
    return ins;
}

}  // namespace lcbc
