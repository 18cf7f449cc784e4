#pragma once

#include <stdexcept>

namespace hitmono {

// Base configuration: genus g of the surface and degree l of the twisting
// line bundle. There are 2l branch points. Real-fibre computations require
// l even; that is enforced per operation, not here, because the complex
// monodromy group is defined for every l.
struct BaseConfig {
    int genus = 2;
    int deg_l = 2;
    bool allow_degree_override = false;
    int arf = 0;  // Arf bit of the reference quadratic form on H^1(Sigma, Z2)

    int n_branch() const { return 2 * deg_l; }
    int dim_surface() const { return 2 * genus; }   // dim H^1(Sigma, Z2)
    int dim_w() const { return 2 * deg_l - 2; }     // dim (Z2 B)^ev / (b_o)
    int dim_branch_even() const { return 2 * deg_l - 1; }

    void validate() const {
        if (genus < 2) throw std::invalid_argument("config: genus must be >= 2");
        if (deg_l < 1) throw std::invalid_argument("config: deg_l must be >= 1");
        if (arf != 0 && arf != 1) throw std::invalid_argument("config: arf must be 0 or 1");
        if (!allow_degree_override && deg_l < 2 * genus - 2)
            throw std::invalid_argument(
                "config: need deg_l = 2g-2 (canonical) or deg_l > 2g-2; pass the override to relax");
    }

    void require_even_l(const char* what) const {
        if (deg_l % 2 != 0)
            throw std::domain_error(std::string(what) + ": requires even deg_l");
    }

    friend bool operator==(const BaseConfig& a, const BaseConfig& b) {
        return a.genus == b.genus && a.deg_l == b.deg_l && a.arf == b.arf;
    }
    friend bool operator!=(const BaseConfig& a, const BaseConfig& b) { return !(a == b); }
};

}  // namespace hitmono
