#pragma once

// Generators of the monodromy representation and their action on every
// fibre model. A Swap{i,j,a} acts on the rank-2 spectral data as the
// symplectic transvection by the class c = (a, b_i + b_j, 0); tau is the
// loop coming from the C*-action and acts as the sheet-swap involution
// (a,b,c) -> (a+c,b,c).

#include <stdexcept>
#include <vector>

#include "hitmono/config.hpp"
#include "hitmono/fibre.hpp"

namespace hitmono {

struct Generator {
    enum class Kind { tau, swap };
    Kind kind = Kind::tau;
    int i = -1, j = -1;   // 0-based branch indices, i < j, for swaps
    SurfaceClass a;       // surface part of the transvection class

    static Generator make_tau() { return Generator{}; }

    static Generator make_swap(const BaseConfig& cfg, int i, int j, const SurfaceClass& a) {
        if (i == j) throw std::invalid_argument("Generator: swap needs distinct indices");
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= cfg.n_branch()) throw std::invalid_argument("Generator: swap index out of range");
        if (a.v.dim() != cfg.dim_surface()) throw std::invalid_argument("Generator: surface part dimension mismatch");
        Generator g;
        g.kind = Kind::swap;
        g.i = i;
        g.j = j;
        g.a = a;
        return g;
    }
};

// The transvection class c = (a, b_i + b_j, 0) of a swap, as a gl_even
// element whose branch part is un-quotiented so that it pairs against both
// even and odd partners.
inline FibreElement transvection_class(const BaseConfig& cfg, const Generator& gen) {
    if (gen.kind != Generator::Kind::swap) throw std::invalid_argument("transvection_class: not a swap");
    FibreElement c;
    c.model = Model::gl_even;
    c.cfg = cfg;
    c.a = gen.a;
    c.b = branch_pair(cfg, gen.i, gen.j);
    c.c = SurfaceClass::zero(cfg);
    return c;
}

// Validity of a transvection class: gl_even shape, branch part of weight-2
// form b_i + b_j, zero third component.
inline bool is_transvection_class(const FibreElement& c) {
    return c.model == Model::gl_even && c.c.is_zero() && !c.b.quotient &&
           c.b.parity == BranchParity::even && c.b.weight() == 2;
}

// Picard-Lefschetz transformation x -> x + <c,x> c. On the affine models the
// same formula translates by c whenever the pairing is 1.
inline FibreElement transvection(const FibreElement& c, const FibreElement& x) {
    if (!is_transvection_class(c)) throw std::invalid_argument("transvection: invalid transvection class");
    if (x.model != Model::gl_even && x.model != Model::gl_odd)
        throw std::domain_error("transvection: defined on gl_even/gl_odd models");
    if (weil_pairing(c, x) == 0) return x;
    return translate(x, c);
}

// Action of a generator on a fibre element, for all six models.
inline FibreElement apply(const Generator& gen, const FibreElement& x) {
    const BaseConfig& cfg = x.cfg;
    if (gen.kind == Generator::Kind::tau) {
        switch (x.model) {
            case Model::gl_even:
            case Model::gl_odd: {
                FibreElement out = x;
                out.a.v ^= x.c.v;
                return out;
            }
            // pi_* vanishes on the Prym models and the quotient kills the
            // a-shift on the PGL models, so tau acts trivially.
            default: return x;
        }
    }
    if (gen.a.v.dim() != cfg.dim_surface()) throw std::invalid_argument("apply: generator/config mismatch");
    if (gen.j >= cfg.n_branch()) throw std::invalid_argument("apply: generator/config mismatch");

    const BranchVector bij = branch_pair(cfg, gen.i, gen.j);
    switch (x.model) {
        case Model::gl_even:
        case Model::gl_odd:
            return transvection(transvection_class(cfg, gen), x);
        case Model::sl: {
            // (a', b') -> (a' + ((b_ij, b')) a, sigma_ij(b'))
            int t = branch_pairing(bij, x.b);
            FibreElement out = x;
            if (t) {
                out.a.v ^= gen.a.v;
                out.b = branch_add(x.b, bij);
            }
            return out;
        }
        case Model::pgl0:
        case Model::pgl1: {
            // (b', c') -> (b' + (((b_ij, b')) + <a, c'>) b_ij, c')
            int t = branch_pairing(bij, x.b) ^ symplectic_pairing(gen.a, x.c);
            FibreElement out = x;
            if (t) out.b = branch_add(x.b, bij);
            return out;
        }
        case Model::psl0:
        case Model::psl1: {
            // b' -> sigma_ij(b')
            int t = branch_pairing(bij, x.b);
            FibreElement out = x;
            if (t) out.b = branch_add(x.b, bij);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

inline FibreElement apply_word(const std::vector<Generator>& word, const FibreElement& x) {
    // Words multiply like matrices: the last letter acts first.
    FibreElement out = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = apply(*it, out);
    return out;
}

// Reduced generating set used for orbit search: adjacent swaps, the swaps
// {1,2} decorated with a basis of H^1(Sigma, Z2), and tau. Sufficient since
// conjugation by transpositions moves the decorated swaps to any index pair.
inline std::vector<Generator> bfs_generating_set(const BaseConfig& cfg) {
    std::vector<Generator> gens;
    for (int i = 0; i + 1 < cfg.n_branch(); i++)
        gens.push_back(Generator::make_swap(cfg, i, i + 1, SurfaceClass::zero(cfg)));
    for (int k = 0; k < cfg.dim_surface(); k++)
        gens.push_back(Generator::make_swap(cfg, 0, 1, SurfaceClass::unit(cfg, k)));
    gens.push_back(Generator::make_tau());
    return gens;
}

// The full family {Swap{i,j,a} : i < j, a in H^1} plus tau; exponential in g,
// meant for cross-checks at small size.
inline std::vector<Generator> full_generating_set(const BaseConfig& cfg) {
    std::vector<Generator> gens;
    std::uint64_t na = std::uint64_t(1) << cfg.dim_surface();
    for (int i = 0; i < cfg.n_branch(); i++)
        for (int j = i + 1; j < cfg.n_branch(); j++)
            for (std::uint64_t bits = 0; bits < na; bits++)
                gens.push_back(Generator::make_swap(cfg, i, j, SurfaceClass(BitVec::from_bits(cfg.dim_surface(), bits))));
    gens.push_back(Generator::make_tau());
    return gens;
}

}  // namespace hitmono
