#pragma once

// The six split fibre models, their pairings and quadratic forms.
//
// Conventions (0-based coordinates throughout):
//   - Surface classes live in H^1(Sigma, Z2) = Z2^{2g} with the standard
//     symplectic pairing <a,a'> = sum_i (a_i a'_{g+i} + a_{g+i} a'_i).
//   - Branch vectors live in Z2^B, B = {b_1, ..., b_{2l}}; coordinate k
//     is b_{k+1}. b_o = b_1 + ... + b_{2l}.
//   - Quotient classes mod b_o are stored as the representative whose last
//     coordinate is 0.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hitmono/config.hpp"
#include "hitmono/gf2.hpp"

namespace hitmono {

enum class Model { gl_even, gl_odd, sl, pgl0, pgl1, psl0, psl1 };

inline const char* model_prefix(Model m) {
    switch (m) {
        case Model::gl_even: return "gl0";
        case Model::gl_odd: return "gl1";
        case Model::sl: return "sl";
        case Model::pgl0: return "pgl0";
        case Model::pgl1: return "pgl1";
        case Model::psl0: return "psl0";
        case Model::psl1: return "psl1";
    }
    return "?";
}

// Parity of the branch component demanded by the model.
inline int model_degree(Model m) {
    switch (m) {
        case Model::gl_even: case Model::sl: case Model::pgl0: case Model::psl0: return 0;
        case Model::gl_odd: case Model::pgl1: case Model::psl1: return 1;
    }
    return 0;
}

inline bool model_has_a(Model m) { return m == Model::gl_even || m == Model::gl_odd || m == Model::sl; }
inline bool model_has_c(Model m) {
    return m == Model::gl_even || m == Model::gl_odd || m == Model::pgl0 || m == Model::pgl1;
}
inline bool model_quotient(Model m) { return m != Model::sl && m != Model::psl0 && m != Model::psl1; }

// ---------------------------------------------------------------------------
// SurfaceClass

struct SurfaceClass {
    BitVec v;

    SurfaceClass() = default;
    explicit SurfaceClass(BitVec bits) : v(std::move(bits)) {}
    static SurfaceClass zero(const BaseConfig& cfg) { return SurfaceClass(BitVec(cfg.dim_surface())); }
    static SurfaceClass unit(const BaseConfig& cfg, int k) {
        return SurfaceClass(BitVec::unit(cfg.dim_surface(), k));
    }

    bool is_zero() const { return v.is_zero(); }
    friend SurfaceClass operator+(const SurfaceClass& a, const SurfaceClass& b) {
        return SurfaceClass(a.v ^ b.v);
    }
    friend bool operator==(const SurfaceClass& a, const SurfaceClass& b) { return a.v == b.v; }
    friend bool operator!=(const SurfaceClass& a, const SurfaceClass& b) { return !(a == b); }
};

// Standard symplectic form, alternating and non-degenerate.
inline int symplectic_pairing(const SurfaceClass& a, const SurfaceClass& b) {
    int n = a.v.dim();
    if (n != b.v.dim()) throw std::invalid_argument("symplectic_pairing: dimension mismatch");
    int g = n / 2;
    int s = 0;
    for (int i = 0; i < g; i++)
        s ^= (a.v.get(i) & b.v.get(g + i)) ^ (a.v.get(g + i) & b.v.get(i));
    return s;
}

// The vector representing the functional <x, .> = f, i.e. swap of the two
// halves of f. Used to turn functionals back into surface classes.
inline SurfaceClass symplectic_dual(const SurfaceClass& f) {
    int n = f.v.dim();
    int g = n / 2;
    BitVec x(n);
    for (int i = 0; i < g; i++) {
        if (f.v.get(i)) x.set(g + i, true);
        if (f.v.get(g + i)) x.set(i, true);
    }
    return SurfaceClass(x);
}

// Reference quadratic refinement of the symplectic pairing on H^1(Sigma, Z2):
// sum_i a_i a_{g+i}, plus an offset on the first coordinate pair when the
// configured Arf bit is 1. phi_sigma(0) = 0 either way.
inline int phi_sigma(const BaseConfig& cfg, const SurfaceClass& a) {
    int g = cfg.genus;
    if (a.v.dim() != 2 * g) throw std::invalid_argument("phi_sigma: dimension mismatch");
    int s = 0;
    for (int i = 0; i < g; i++) s ^= a.v.get(i) & a.v.get(g + i);
    if (cfg.arf) s ^= a.v.get(0) ^ a.v.get(g);
    return s;
}

// ---------------------------------------------------------------------------
// BranchVector

enum class BranchParity { even, odd };

struct BranchVector {
    BitVec v;             // representative, dim 2l
    BranchParity parity = BranchParity::even;
    bool quotient = false;  // classes taken mod b_o

    BranchVector() = default;

    BranchVector(BitVec bits, BranchParity p, bool quot) : v(std::move(bits)), parity(p), quotient(quot) {
        if ((v.parity() == 0) != (parity == BranchParity::even))
            throw std::domain_error("BranchVector: representative parity does not match the declared parity");
        canonicalize();
    }

    static BranchVector zero(const BaseConfig& cfg, bool quot) {
        return BranchVector(BitVec(cfg.n_branch()), BranchParity::even, quot);
    }

    int dim() const { return v.dim(); }
    int weight() const { return v.popcount(); }
    bool is_zero() const { return v.is_zero(); }

    // Stored representative is the one of {v, v + b_o} with last coordinate 0.
    void canonicalize() {
        if (quotient && v.get(v.dim() - 1)) v ^= BitVec::ones(v.dim());
    }

    friend bool operator==(const BranchVector& a, const BranchVector& b) {
        return a.v == b.v && a.parity == b.parity && a.quotient == b.quotient;
    }
    friend bool operator!=(const BranchVector& a, const BranchVector& b) { return !(a == b); }
};

inline BitVec branch_b_o(const BaseConfig& cfg) { return BitVec::ones(cfg.n_branch()); }

// b_{i+1} + b_{j+1} as an (un-quotiented, even) branch vector.
inline BranchVector branch_pair(const BaseConfig& cfg, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= cfg.n_branch() || j >= cfg.n_branch())
        throw std::invalid_argument("branch_pair: bad indices");
    BitVec b(cfg.n_branch());
    b.set(i, true);
    b.set(j, true);
    return BranchVector(std::move(b), BranchParity::even, false);
}

// Sum of two branch vectors; the result is quotiented if either input is.
inline BranchVector branch_add(const BranchVector& x, const BranchVector& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("branch_add: dimension mismatch");
    BranchParity p = (x.parity == y.parity) ? BranchParity::even : BranchParity::odd;
    return BranchVector(x.v ^ y.v, p, x.quotient || y.quotient);
}

// ((.,.)) on branch vectors, evaluated on the stored representatives. The
// value is representative-independent exactly when every quotiented argument
// is paired against an even partner; anything else is rejected.
inline int branch_pairing(const BranchVector& x, const BranchVector& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("branch_pairing: dimension mismatch");
    if (x.quotient && y.parity != BranchParity::even)
        throw std::domain_error("branch_pairing: ill-defined (quotiented argument paired against odd partner)");
    if (y.quotient && x.parity != BranchParity::even)
        throw std::domain_error("branch_pairing: ill-defined (quotiented argument paired against odd partner)");
    return dot(x.v, y.v);
}

// q_W(b) = k mod 2 where the representative is a sum of 2k basis vectors.
// On quotient classes the two representatives give k and l-k, so the value
// is only a class function when l is even.
inline int qw(const BaseConfig& cfg, const BranchVector& b) {
    if (b.parity != BranchParity::even) throw std::domain_error("qw: requires even parity");
    if (b.quotient && cfg.deg_l % 2 != 0)
        throw std::domain_error("qw: not well-defined on the quotient when deg_l is odd");
    return (b.weight() / 2) & 1;
}

// ---------------------------------------------------------------------------
// FibreElement

struct FibreElement {
    Model model = Model::gl_even;
    BaseConfig cfg;
    SurfaceClass a;   // present for gl_even, gl_odd, sl
    BranchVector b;   // present in every model
    SurfaceClass c;   // present for gl_even, gl_odd, pgl0, pgl1

    friend bool operator==(const FibreElement& x, const FibreElement& y) {
        return x.model == y.model && x.cfg == y.cfg && x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator!=(const FibreElement& x, const FibreElement& y) { return !(x == y); }
};

namespace detail {

inline void check_branch_shape(Model m, const BaseConfig& cfg, const BranchVector& b) {
    if (b.dim() != cfg.n_branch()) throw std::invalid_argument("fibre: branch dimension mismatch");
    int want_parity = model_degree(m);
    if ((b.parity == BranchParity::odd ? 1 : 0) != want_parity)
        throw std::domain_error("fibre: branch parity does not match the model");
    if (b.quotient != model_quotient(m)) throw std::domain_error("fibre: quotient tag does not match the model");
}

inline void check_surface_shape(const BaseConfig& cfg, const SurfaceClass& s) {
    if (s.v.dim() != cfg.dim_surface()) throw std::invalid_argument("fibre: surface dimension mismatch");
}

}  // namespace detail

inline FibreElement make_gl(const BaseConfig& cfg, Model m, const SurfaceClass& a, const BranchVector& b,
                            const SurfaceClass& c) {
    if (m != Model::gl_even && m != Model::gl_odd) throw std::invalid_argument("make_gl: bad model");
    detail::check_surface_shape(cfg, a);
    detail::check_surface_shape(cfg, c);
    detail::check_branch_shape(m, cfg, b);
    return FibreElement{m, cfg, a, b, c};
}

inline FibreElement make_sl(const BaseConfig& cfg, const SurfaceClass& a, const BranchVector& b) {
    detail::check_surface_shape(cfg, a);
    detail::check_branch_shape(Model::sl, cfg, b);
    return FibreElement{Model::sl, cfg, a, b, SurfaceClass::zero(cfg)};
}

inline FibreElement make_pgl(const BaseConfig& cfg, int d, const BranchVector& b, const SurfaceClass& c) {
    Model m = d ? Model::pgl1 : Model::pgl0;
    detail::check_surface_shape(cfg, c);
    detail::check_branch_shape(m, cfg, b);
    return FibreElement{m, cfg, SurfaceClass::zero(cfg), b, c};
}

inline FibreElement make_psl(const BaseConfig& cfg, int d, const BranchVector& b) {
    Model m = d ? Model::psl1 : Model::psl0;
    detail::check_branch_shape(m, cfg, b);
    return FibreElement{m, cfg, SurfaceClass::zero(cfg), b, SurfaceClass::zero(cfg)};
}

// Sum in a linear model (gl_even, sl, pgl0, psl0).
inline FibreElement add_linear(const FibreElement& x, const FibreElement& y) {
    if (x.model != y.model || x.cfg != y.cfg) throw std::invalid_argument("add_linear: model mismatch");
    if (model_degree(x.model) != 0) throw std::domain_error("add_linear: not a linear model");
    FibreElement out = x;
    out.a.v ^= y.a.v;
    out.b = branch_add(x.b, y.b);
    out.c.v ^= y.c.v;
    return out;
}

// x translated by an element t of the linear model underlying x's model.
// The branch parts add; parity and quotient tags of x are kept.
inline FibreElement translate(const FibreElement& x, const FibreElement& t) {
    if (x.cfg != t.cfg) throw std::invalid_argument("translate: config mismatch");
    if (model_degree(t.model) != 0) throw std::domain_error("translate: translation must come from a linear model");
    if (model_has_a(t.model) != model_has_a(x.model) || model_has_c(t.model) != model_has_c(x.model))
        throw std::domain_error("translate: translation model does not underlie the target model");
    FibreElement out = x;
    if (model_has_a(x.model)) out.a.v ^= t.a.v;
    if (model_has_c(x.model)) out.c.v ^= t.c.v;
    out.b = BranchVector(x.b.v ^ t.b.v, x.b.parity, x.b.quotient);
    return out;
}

// <(a,b,c),(a',b',c')> = <a,c'> + ((b,b')) + <c,a'>. Defined for pairs of
// gl_even elements and for mixed gl_even/gl_odd pairs (the even side must be
// un-quotiented or the odd side quotiented; branch_pairing polices this).
inline int weil_pairing(const FibreElement& x, const FibreElement& y) {
    if (x.cfg != y.cfg) throw std::invalid_argument("weil_pairing: config mismatch");
    auto is_gl = [](Model m) { return m == Model::gl_even || m == Model::gl_odd; };
    if (!is_gl(x.model) || !is_gl(y.model))
        throw std::domain_error("weil_pairing: defined on gl_even/gl_odd models only");
    if (x.model == Model::gl_odd && y.model == Model::gl_odd)
        throw std::domain_error("weil_pairing: not defined for a pair of odd elements");
    return symplectic_pairing(x.a, y.c) ^ branch_pairing(x.b, y.b) ^ symplectic_pairing(x.c, y.a);
}

// q(a,b,c) = <a,c> + q_W(b). For the odd (affine) model the branch half-weight
// is read off the canonical representative.
inline int q(const FibreElement& x) {
    x.cfg.require_even_l("q");
    if (x.model == Model::gl_even) return symplectic_pairing(x.a, x.c) ^ qw(x.cfg, x.b);
    if (x.model == Model::gl_odd)
        return symplectic_pairing(x.a, x.c) ^ ((x.b.weight() / 2) & 1);
    throw std::domain_error("q: defined on gl_even/gl_odd models only");
}

// phi_S(x) = q(x) + l/2 (mod 2); the mod-2 index of the fibre element.
inline int phi_s(const FibreElement& x) {
    if (x.model != Model::gl_even) throw std::domain_error("phi_s: gl_even model only");
    x.cfg.require_even_l("phi_s");
    return q(x) ^ ((x.cfg.deg_l / 2) & 1);
}

inline FibreElement pullback(const BaseConfig& cfg, const SurfaceClass& a) {
    return make_gl(cfg, Model::gl_even, a, BranchVector::zero(cfg, true), SurfaceClass::zero(cfg));
}

inline SurfaceClass pushforward(const FibreElement& x) {
    if (x.model != Model::gl_even) throw std::domain_error("pushforward: gl_even model only");
    return x.c;
}

// ---------------------------------------------------------------------------
// Packed encodings.
//
// Free coordinates per model (canonical representatives):
//   gl_even / gl_odd / pgl: branch coords 0..2l-3; coord 2l-2 is determined
//     by parity, coord 2l-1 is 0.
//   sl / psl: branch coords 0..2l-2; coord 2l-1 is determined by parity.
// Index layout (low to high): c, then branch free bits, then a.
// The serialization key orders components as serialized (a, b, c), so the two
// orders differ; orbit representatives are chosen by serialization key.

inline int index_bits(Model m, const BaseConfig& cfg) {
    switch (m) {
        case Model::gl_even:
        case Model::gl_odd: return 2 * cfg.dim_surface() + cfg.dim_w();
        case Model::sl: return cfg.dim_surface() + cfg.dim_branch_even();
        case Model::pgl0:
        case Model::pgl1: return cfg.dim_surface() + cfg.dim_w();
        case Model::psl0:
        case Model::psl1: return cfg.dim_branch_even();
    }
    return 0;
}

inline std::uint64_t fibre_size(Model m, const BaseConfig& cfg) {
    return std::uint64_t(1) << index_bits(m, cfg);
}

namespace detail {

inline std::uint64_t pack_low_bits(const BitVec& v, int nbits) {
    std::uint64_t out = 0;
    for (int k = 0; k < nbits; k++)
        if (v.get(k)) out |= std::uint64_t(1) << k;
    return out;
}

inline BitVec branch_from_free(const BaseConfig& cfg, Model m, std::uint64_t free_bits) {
    int n = cfg.n_branch();
    BitVec v(n);
    bool quot = model_quotient(m);
    int nfree = quot ? n - 2 : n - 1;
    int par = 0;
    for (int k = 0; k < nfree; k++) {
        if ((free_bits >> k) & 1) {
            v.set(k, true);
            par ^= 1;
        }
    }
    int want = model_degree(m);
    if (quot) {
        if (par != want) v.set(n - 2, true);
    } else {
        if (par != want) v.set(n - 1, true);
    }
    return v;
}

}  // namespace detail

inline std::uint64_t encode(const FibreElement& x) {
    const BaseConfig& cfg = x.cfg;
    int ns = cfg.dim_surface();
    bool quot = model_quotient(x.model);
    int nfree = quot ? cfg.dim_w() : cfg.dim_branch_even();
    std::uint64_t bbits = detail::pack_low_bits(x.b.v, nfree);
    std::uint64_t out = 0;
    int shift = 0;
    if (model_has_c(x.model)) {
        out |= detail::pack_low_bits(x.c.v, ns) << shift;
        shift += ns;
    }
    out |= bbits << shift;
    shift += nfree;
    if (model_has_a(x.model)) out |= detail::pack_low_bits(x.a.v, ns) << shift;
    return out;
}

inline FibreElement decode(Model m, const BaseConfig& cfg, std::uint64_t idx) {
    int ns = cfg.dim_surface();
    bool quot = model_quotient(m);
    int nfree = quot ? cfg.dim_w() : cfg.dim_branch_even();
    SurfaceClass a = SurfaceClass::zero(cfg), c = SurfaceClass::zero(cfg);
    int shift = 0;
    if (model_has_c(m)) {
        for (int k = 0; k < ns; k++)
            if ((idx >> (shift + k)) & 1) c.v.set(k, true);
        shift += ns;
    }
    BitVec bv = detail::branch_from_free(cfg, m, (idx >> shift) & ((std::uint64_t(1) << nfree) - 1));
    shift += nfree;
    if (model_has_a(m)) {
        for (int k = 0; k < ns; k++)
            if ((idx >> (shift + k)) & 1) a.v.set(k, true);
    }
    BranchVector b(std::move(bv), model_degree(m) ? BranchParity::odd : BranchParity::even, quot);
    return FibreElement{m, cfg, a, b, c};
}

// Numeric key matching the lexicographic order of serialize(): components in
// serialized order, earlier components more significant, each component the
// numeric value of its packed bits.
inline std::uint64_t ser_key(const FibreElement& x) {
    const BaseConfig& cfg = x.cfg;
    int ns = cfg.dim_surface();
    int nb = cfg.n_branch();
    std::uint64_t key = 0;
    if (model_has_a(x.model)) key = detail::pack_low_bits(x.a.v, ns);
    key = (key << nb) | detail::pack_low_bits(x.b.v, nb);
    if (model_has_c(x.model)) key = (key << ns) | detail::pack_low_bits(x.c.v, ns);
    return key;
}

inline std::string serialize(const FibreElement& x) {
    std::string s = model_prefix(x.model);
    if (model_has_a(x.model)) s += ":a=" + x.a.v.to_hex();
    s += ":b=" + x.b.v.to_hex();
    if (model_has_c(x.model)) s += ":c=" + x.c.v.to_hex();
    return s;
}

inline FibreElement parse_fibre_element(const BaseConfig& cfg, const std::string& s) {
    auto next = [&s](size_t& pos) {
        size_t colon = s.find(':', pos);
        std::string tok = s.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
        pos = (colon == std::string::npos) ? s.size() : colon + 1;
        return tok;
    };
    size_t pos = 0;
    std::string prefix = next(pos);
    Model m;
    if (prefix == "gl0") m = Model::gl_even;
    else if (prefix == "gl1") m = Model::gl_odd;
    else if (prefix == "sl") m = Model::sl;
    else if (prefix == "pgl0") m = Model::pgl0;
    else if (prefix == "pgl1") m = Model::pgl1;
    else if (prefix == "psl0") m = Model::psl0;
    else if (prefix == "psl1") m = Model::psl1;
    else throw std::invalid_argument("parse_fibre_element: unknown model prefix '" + prefix + "'");

    SurfaceClass a = SurfaceClass::zero(cfg), c = SurfaceClass::zero(cfg);
    BitVec bv(cfg.n_branch());
    bool saw_b = false;
    while (pos < s.size()) {
        std::string tok = next(pos);
        if (tok.size() < 2 || tok[1] != '=') throw std::invalid_argument("parse_fibre_element: bad component");
        std::string hex = tok.substr(2);
        switch (tok[0]) {
            case 'a': a = SurfaceClass(BitVec::from_hex(cfg.dim_surface(), hex)); break;
            case 'b': bv = BitVec::from_hex(cfg.n_branch(), hex); saw_b = true; break;
            case 'c': c = SurfaceClass(BitVec::from_hex(cfg.dim_surface(), hex)); break;
            default: throw std::invalid_argument("parse_fibre_element: bad component");
        }
    }
    if (!saw_b) throw std::invalid_argument("parse_fibre_element: missing branch component");
    BranchVector b(std::move(bv), model_degree(m) ? BranchParity::odd : BranchParity::even, model_quotient(m));
    switch (m) {
        case Model::gl_even:
        case Model::gl_odd: return make_gl(cfg, m, a, b, c);
        case Model::sl: return make_sl(cfg, a, b);
        case Model::pgl0:
        case Model::pgl1: return make_pgl(cfg, model_degree(m), b, c);
        case Model::psl0:
        case Model::psl1: return make_psl(cfg, model_degree(m), b);
    }
    throw std::logic_error("unreachable");
}

}  // namespace hitmono
