#pragma once

// JSON (de)serialization of Network instances. Parse errors carry the path of
// the offending field.

#include <json.hpp>

#include <fstream>
#include <string>

#include "mopf/netmodel.hpp"

namespace mopf::net {

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& path,
                             const char* field) {
    if (!j.contains(field))
        throw InputError(path + "." + field, "missing required field");
    const auto& v = j.at(field);
    if (!v.is_number()) throw InputError(path + "." + field, "must be a number");
    return v.get<double>();
}

inline int require_int(const nlohmann::json& j, const std::string& path, const char* field) {
    if (!j.contains(field))
        throw InputError(path + "." + field, "missing required field");
    const auto& v = j.at(field);
    if (!v.is_number_integer()) throw InputError(path + "." + field, "must be an integer");
    return v.get<int>();
}

}  // namespace detail

inline Network network_from_json(const nlohmann::json& j) {
    using detail::require_int;
    using detail::require_number;
    if (!j.is_object()) throw InputError("$", "top level must be an object");
    Network net;
    net.s_base = j.contains("s_base") ? require_number(j, "$", "s_base") : 100.0;
    net.ref_bus = j.contains("ref_bus") ? require_int(j, "$", "ref_bus") : 1;

    if (!j.contains("buses") || !j.at("buses").is_array())
        throw InputError("buses", "missing or not an array");
    int i = 0;
    for (const auto& jb : j.at("buses")) {
        const std::string path = "buses[" + std::to_string(i++) + "]";
        Bus b;
        b.id = require_int(jb, path, "id");
        b.p_load = jb.contains("p_load") ? require_number(jb, path, "p_load") : 0.0;
        b.q_load = jb.contains("q_load") ? require_number(jb, path, "q_load") : 0.0;
        b.v_min = require_number(jb, path, "v_min");
        b.v_max = require_number(jb, path, "v_max");
        net.buses.push_back(b);
    }
    i = 0;
    for (const auto& jg : j.value("generators", nlohmann::json::array())) {
        const std::string path = "generators[" + std::to_string(i++) + "]";
        Generator g;
        g.bus = require_int(jg, path, "bus");
        g.p_min = require_number(jg, path, "p_min");
        g.p_max = require_number(jg, path, "p_max");
        if (jg.contains("q_min")) g.q_min = require_number(jg, path, "q_min");
        if (jg.contains("q_max")) g.q_max = require_number(jg, path, "q_max");
        g.c2 = jg.contains("c2") ? require_number(jg, path, "c2") : 0.0;
        g.c1 = jg.contains("c1") ? require_number(jg, path, "c1") : 0.0;
        g.c0 = jg.contains("c0") ? require_number(jg, path, "c0") : 0.0;
        net.generators.push_back(g);
    }
    i = 0;
    for (const auto& jb : j.value("branches", nlohmann::json::array())) {
        const std::string path = "branches[" + std::to_string(i++) + "]";
        Branch br;
        br.from = require_int(jb, path, "from");
        br.to = require_int(jb, path, "to");
        br.r = require_number(jb, path, "r");
        br.x = require_number(jb, path, "x");
        net.branches.push_back(br);
    }
    validate(net);
    return net;
}

inline Network load_network(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw InputError(filename, "cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(filename, std::string("JSON parse error: ") + e.what());
    }
    return network_from_json(j);
}

inline nlohmann::json network_to_json(const Network& net) {
    nlohmann::json j;
    j["s_base"] = net.s_base;
    j["ref_bus"] = net.ref_bus;
    j["buses"] = nlohmann::json::array();
    for (const auto& b : net.buses)
        j["buses"].push_back({{"id", b.id},
                              {"p_load", b.p_load},
                              {"q_load", b.q_load},
                              {"v_min", b.v_min},
                              {"v_max", b.v_max}});
    j["generators"] = nlohmann::json::array();
    for (const auto& g : net.generators) {
        nlohmann::json jg{{"bus", g.bus}, {"p_min", g.p_min}, {"p_max", g.p_max},
                          {"c2", g.c2},   {"c1", g.c1},       {"c0", g.c0}};
        if (g.q_min) jg["q_min"] = *g.q_min;
        if (g.q_max) jg["q_max"] = *g.q_max;
        j["generators"].push_back(jg);
    }
    j["branches"] = nlohmann::json::array();
    for (const auto& br : net.branches)
        j["branches"].push_back({{"from", br.from}, {"to", br.to}, {"r", br.r}, {"x", br.x}});
    return j;
}

}  // namespace mopf::net
