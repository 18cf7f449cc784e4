#pragma once

// Topological invariants of real Higgs bundles read off spectral data, and
// the maximality predicate.

#include <stdexcept>
#include <string>

#include "hitmono/config.hpp"
#include "hitmono/fibre.hpp"

namespace hitmono {

enum class GroupTag { gl2r, gl2r_odd, sl2r, pgl2r, psl2r };

inline const char* group_tag_name(GroupTag t) {
    switch (t) {
        case GroupTag::gl2r: return "gl2r";
        case GroupTag::gl2r_odd: return "gl2r-odd";
        case GroupTag::sl2r: return "sl2r";
        case GroupTag::pgl2r: return "pgl2r";
        case GroupTag::psl2r: return "psl2r";
    }
    return "?";
}

inline GroupTag group_tag_for_model(Model m) {
    switch (m) {
        case Model::gl_even: return GroupTag::gl2r;
        case Model::gl_odd: return GroupTag::gl2r_odd;
        case Model::sl: return GroupTag::sl2r;
        case Model::pgl0:
        case Model::pgl1: return GroupTag::pgl2r;
        case Model::psl0:
        case Model::psl1: return GroupTag::psl2r;
    }
    throw std::logic_error("unreachable");
}

// Only the fields for the tagged group are populated.
struct InvariantVector {
    GroupTag tag = GroupTag::gl2r;
    int degree = 0;          // d for pgl2r / psl2r
    SurfaceClass w1;         // gl2r (and the c-label for gl2r-odd)
    int w2 = 0;              // gl2r
    int delta = 0;           // sl2r
    SurfaceClass w_hat1;     // pgl2r
    int w_hat2 = 0;          // pgl2r
    int delta_check = 0;     // psl2r
    bool maximal = false;

    // Canonical string used for distinctness checks and table output.
    std::string key() const {
        switch (tag) {
            case GroupTag::gl2r: return "w1=" + w1.v.to_hex() + ",w2=" + std::to_string(w2);
            case GroupTag::gl2r_odd: return "w1=" + w1.v.to_hex();
            case GroupTag::sl2r: return "delta=" + std::to_string(delta);
            case GroupTag::pgl2r:
                return "w_hat1=" + w_hat1.v.to_hex() + ",w_hat2=" + std::to_string(w_hat2);
            case GroupTag::psl2r: return "delta_check=" + std::to_string(delta_check);
        }
        return "?";
    }
};

// Maximality of the component through a fibre point.
inline bool is_maximal(const FibreElement& x) {
    switch (x.model) {
        case Model::gl_even: return x.b.is_zero() && x.c.is_zero();
        case Model::gl_odd: return false;  // no maximal points on the odd fibre
        case Model::sl: return x.b.is_zero() || x.b.weight() == x.cfg.n_branch();
        case Model::pgl0: return x.b.is_zero() && x.c.is_zero();
        case Model::pgl1: return false;
        case Model::psl0: return x.b.is_zero() || x.b.weight() == x.cfg.n_branch();
        case Model::psl1: return false;
    }
    throw std::logic_error("unreachable");
}

inline InvariantVector compute_invariants(const FibreElement& x) {
    const BaseConfig& cfg = x.cfg;
    cfg.require_even_l("compute_invariants");
    InvariantVector out;
    out.tag = group_tag_for_model(x.model);
    out.degree = model_degree(x.model);
    out.maximal = is_maximal(x);
    switch (x.model) {
        case Model::gl_even:
            out.w1 = x.c;
            out.w2 = phi_sigma(cfg, x.c) ^ ((cfg.deg_l / 2) & 1) ^ q(x) ^ phi_sigma(cfg, SurfaceClass::zero(cfg));
            break;
        case Model::gl_odd:
            // Not one of the four real-group fibres; report the monodromy
            // invariant c as a label.
            out.w1 = x.c;
            break;
        case Model::sl:
            out.delta = (cfg.deg_l - x.b.weight()) / 2;
            break;
        case Model::pgl0:
        case Model::pgl1:
            out.w_hat1 = x.c;
            out.w_hat2 = dot(x.b.v, branch_b_o(cfg));
            break;
        case Model::psl0:
        case Model::psl1:
            out.delta_check = cfg.deg_l - x.b.weight();
            break;
    }
    return out;
}

}  // namespace hitmono
