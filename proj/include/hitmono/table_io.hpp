#pragma once

// JSON / CSV emission for orbit tables and verification reports. JSON is the
// canonical format; CSV is lossy (one flat row per orbit). Output contains no
// timestamps, timings or thread counts, so identical inputs give
// byte-identical bytes regardless of worker count.

#include <string>

#include <json.hpp>

#include "hitmono/invariants.hpp"
#include "hitmono/orbits.hpp"

namespace hitmono {

using ordered_json = nlohmann::ordered_json;

inline ordered_json invariants_to_json(const InvariantVector& inv) {
    ordered_json j;
    j["group"] = group_tag_name(inv.tag);
    switch (inv.tag) {
        case GroupTag::gl2r:
            j["w1"] = inv.w1.v.to_hex();
            j["w2"] = inv.w2;
            break;
        case GroupTag::gl2r_odd:
            j["w1"] = inv.w1.v.to_hex();
            break;
        case GroupTag::sl2r:
            j["delta"] = inv.delta;
            break;
        case GroupTag::pgl2r:
            j["degree"] = inv.degree;
            j["w_hat1"] = inv.w_hat1.v.to_hex();
            j["w_hat2"] = inv.w_hat2;
            break;
        case GroupTag::psl2r:
            j["degree"] = inv.degree;
            j["delta_check"] = inv.delta_check;
            break;
    }
    j["maximal"] = inv.maximal;
    return j;
}

inline ordered_json orbit_table_to_json(const OrbitTable& t) {
    ordered_json j;
    j["schema"] = "1";
    j["model"] = model_prefix(t.model);
    j["genus"] = t.cfg.genus;
    j["deg_l"] = t.cfg.deg_l;
    j["arf"] = t.cfg.arf;
    j["fibre_size"] = t.fibre_size;
    j["orbit_count"] = t.orbits.size();
    ordered_json arr = ordered_json::array();
    bool even_l = t.cfg.deg_l % 2 == 0;
    for (const OrbitInfo& o : t.orbits) {
        ordered_json jo;
        jo["representative"] = serialize(o.representative);
        jo["size"] = o.size;
        jo["maximal"] = o.maximal;
        if (even_l) jo["invariants"] = invariants_to_json(o.invariants);
        arr.push_back(jo);
    }
    j["orbits"] = arr;
    return j;
}

// One row per orbit; nested invariants flattened into a single column.
inline std::string orbit_table_to_csv(const OrbitTable& t) {
    std::string s = "representative,size,invariants,maximal\n";
    bool even_l = t.cfg.deg_l % 2 == 0;
    for (const OrbitInfo& o : t.orbits) {
        s += serialize(o.representative);
        s += ',' + std::to_string(o.size);
        s += ",\"" + (even_l ? o.invariants.key() : std::string()) + "\"";
        s += ',' + std::string(o.maximal ? "true" : "false");
        s += '\n';
    }
    return s;
}

}  // namespace hitmono
