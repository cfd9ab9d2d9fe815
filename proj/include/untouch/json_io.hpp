#pragma once

#include <string>

#include <json.hpp>

#include "constructions.hpp"
#include "plane.hpp"
#include "verify.hpp"

// Interchange format. Sets travel as coordinate triples plus the field
// spec needed to rebuild the plane; point indices stay internal. nlohmann
// objects keep keys sorted, so fixed inputs always serialize to the same
// bytes.

namespace untouch {

inline nlohmann::json to_json(const PointSet& s) {
    const Field& f = s.plane().field();
    nlohmann::json j;
    j["q"] = f.q();
    j["p"] = f.p();
    j["k"] = f.k();
    j["modulus"] = f.modulus();
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& pt : s.points())
        pts.push_back(nlohmann::json::array({pt.x, pt.y, pt.z}));
    j["points"] = std::move(pts);
    return j;
}

inline nlohmann::json to_json(const Quadratic& c) {
    return nlohmann::json::array({c.xx, c.yy, c.zz, c.xy, c.xz, c.yz});
}

inline nlohmann::json to_json(const ConstructionResult& r) {
    nlohmann::json j = to_json(r.set);
    j["family"] = family_name(r.family);
    j["params"] = r.params;
    j["expected_size"] = r.expected_size;
    return j;
}

// only sizes that occur are listed, keyed by the size as a string
inline nlohmann::json to_json(const SpectrumReport& sp) {
    nlohmann::json j = nlohmann::json::object();
    for (size_t s = 0; s < sp.counts.size(); ++s)
        if (sp.counts[s] != 0) j[std::to_string(s)] = sp.counts[s];
    return j;
}

namespace detail {

inline uint32_t json_uint_value(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() ||
        (v.is_number_unsigned() && v.get<uint64_t>() > UINT32_MAX))
        throw std::invalid_argument(
            std::string(what) + " must be a nonnegative integer");
    int64_t x = v.get<int64_t>();
    if (x < 0 || x > int64_t(UINT32_MAX))
        throw std::invalid_argument(
            std::string(what) + " must be a nonnegative integer");
    return static_cast<uint32_t>(x);
}

inline uint32_t json_uint(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("missing field: ") + key);
    return json_uint_value(j.at(key), key);
}

}  // namespace detail

inline Field field_from_json(const nlohmann::json& j) {
    uint32_t q = detail::json_uint(j, "q");
    uint32_t p = detail::json_uint(j, "p");
    uint32_t k = detail::json_uint(j, "k");
    if (!j.contains("modulus") || !j.at("modulus").is_array())
        throw std::invalid_argument("missing field: modulus");
    std::vector<uint32_t> modulus;
    for (const nlohmann::json& c : j.at("modulus"))
        modulus.push_back(detail::json_uint_value(c, "modulus coefficient"));
    Field f(p, k, modulus);
    if (f.q() != q)
        throw std::invalid_argument("q does not match p^k");
    return f;
}

inline PointSet point_set_from_json(const nlohmann::json& j) {
    Field f = field_from_json(j);
    Plane pl(f);
    if (!j.contains("points") || !j.at("points").is_array())
        throw std::invalid_argument("missing field: points");
    std::vector<Point> pts;
    for (const nlohmann::json& t : j.at("points")) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("points must be coordinate triples");
        uint32_t c[3];
        for (size_t i = 0; i < 3; ++i) {
            c[i] = detail::json_uint_value(t[i], "coordinate");
            if (c[i] >= f.q())
                throw std::invalid_argument("coordinate outside the field");
        }
        pts.push_back(Point{c[0], c[1], c[2]});
    }
    return PointSet::from_points(pl, pts);
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace untouch
