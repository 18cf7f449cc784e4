#pragma once

// Explicit block-matrix model of the monodromy group on the even fibre.
//
// An element is stored factored as s_omega * h, where s_omega permutes the
// branch points and h is upper unitriangular:
//
//          [ I  A  B ]
//      h = [ 0  I  A^t ]        A : W -> H^1(Sigma,Z2),  B : H^1 -> H^1,
//          [ 0  0  I ]          A^t adjoint w.r.t. ((,)) and <,>.
//
// W carries the basis w_k = b_{k+1} + b_{k+2}, k = 0..2l-3; A is a
// 2g x (2l-2) matrix over that basis.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitmono/config.hpp"
#include "hitmono/fibre.hpp"
#include "hitmono/gf2.hpp"
#include "hitmono/monodromy.hpp"

namespace hitmono {

// ---------------------------------------------------------------------------
// Permutations of the branch points, acting by e_i -> e_{omega(i)}.

using Permutation = std::vector<int>;

inline Permutation identity_perm(int n) {
    Permutation p(n);
    for (int i = 0; i < n; i++) p[i] = i;
    return p;
}

inline Permutation transposition_perm(int n, int i, int j) {
    Permutation p = identity_perm(n);
    std::swap(p[i], p[j]);
    return p;
}

inline Permutation compose_perm(const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); i++) r[i] = p[q[i]];
    return r;
}

inline Permutation inverse_perm(const Permutation& p) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); i++) r[p[i]] = static_cast<int>(i);
    return r;
}

inline BranchVector permute_branch(const Permutation& p, const BranchVector& b) {
    BitVec v(b.dim());
    for (int i = 0; i < b.dim(); i++)
        if (b.v.get(i)) v.set(p[i], true);
    return BranchVector(std::move(v), b.parity, b.quotient);
}

// ---------------------------------------------------------------------------
// W coordinates.

inline BitVec to_w_coords(const BaseConfig& cfg, const BranchVector& b) {
    if (b.parity != BranchParity::even || !b.quotient)
        throw std::domain_error("to_w_coords: needs an even quotient class");
    int nw = cfg.dim_w();
    BitVec lambda(nw);
    int prefix = 0;
    for (int k = 0; k < nw; k++) {
        prefix ^= b.v.get(k) ? 1 : 0;
        if (prefix) lambda.set(k, true);
    }
    return lambda;
}

inline BranchVector from_w_coords(const BaseConfig& cfg, const BitVec& lambda) {
    int n = cfg.n_branch();
    BitVec v(n);
    int prev = 0;
    for (int i = 0; i < n - 1; i++) {
        int cur = (i < cfg.dim_w() && lambda.get(i)) ? 1 : 0;
        if (prev ^ cur) v.set(i, true);
        prev = cur;
    }
    if (prev) v.set(n - 2, true);  // lambda_{2l-3} reappears as the parity coordinate
    return BranchVector(std::move(v), BranchParity::even, true);
}

// ---------------------------------------------------------------------------
// BlockElement

struct BlockElement {
    BaseConfig cfg;
    Permutation omega;  // permutation label; only its action on W is intrinsic
    BitMat A;           // 2g x (2l-2), columns indexed by the w basis
    BitMat B;           // 2g x 2g

    static BlockElement identity(const BaseConfig& cfg) {
        BlockElement e;
        e.cfg = cfg;
        e.omega = identity_perm(cfg.n_branch());
        e.A = BitMat(cfg.dim_surface(), cfg.dim_w());
        e.B = BitMat(cfg.dim_surface(), cfg.dim_surface());
        return e;
    }
};

inline SurfaceClass block_apply_A(const BlockElement& m, const BranchVector& b) {
    return SurfaceClass(m.A.mul(to_w_coords(m.cfg, b)));
}

// A^t c: the unique even quotient class u with ((b, u)) = <A b, c> for all b.
// In canonical coordinates A acts through the suffix sums of its w-basis
// columns, and the adjoint reads off their pairings against c.
inline BranchVector block_apply_At(const BlockElement& m, const SurfaceClass& c) {
    const BaseConfig& cfg = m.cfg;
    int nw = cfg.dim_w();
    int n = cfg.n_branch();
    std::vector<BitVec> cols(nw, BitVec(cfg.dim_surface()));
    for (int k = 0; k < nw; k++)
        for (int r = 0; r < cfg.dim_surface(); r++)
            if (m.A.get(r, k)) cols[k].set(r, true);
    BitVec acc(cfg.dim_surface());
    std::vector<int> u(n, 0);
    for (int i = nw - 1; i >= 0; i--) {
        acc ^= cols[i];
        u[i] = symplectic_pairing(SurfaceClass(acc), c);
    }
    BitVec uv(n);
    int par = 0;
    for (int i = 0; i < nw; i++) {
        if (u[i]) { uv.set(i, true); par ^= 1; }
    }
    if (par) {
        // Flip coordinates 0..2l-2 (adding b_o + e_{2l-1}) to land in the even
        // canonical representative; the pairing against W is unchanged.
        for (int i = 0; i < n - 1; i++) uv.flip(i);
    }
    return BranchVector(std::move(uv), BranchParity::even, true);
}

// Action on the even fibre: x -> s_omega(h(x)).
inline FibreElement block_apply(const BlockElement& m, const FibreElement& x) {
    if (x.model != Model::gl_even) throw std::domain_error("block_apply: gl_even model only");
    if (!(x.cfg == m.cfg)) throw std::invalid_argument("block_apply: config mismatch");
    FibreElement out = x;
    out.a = SurfaceClass(x.a.v ^ block_apply_A(m, x.b).v ^ m.B.mul(x.c.v));
    out.b = permute_branch(m.omega, branch_add(x.b, block_apply_At(m, x.c)));
    return out;
}

// omega's action on W in the w basis; this, not the permutation label, is the
// intrinsic middle block (for 2l = 4 the label is only defined mod the Klein
// four-group).
inline BitMat w_matrix(const BaseConfig& cfg, const Permutation& p) {
    int nw = cfg.dim_w();
    BitMat t(nw, nw);  // columns = images of the w basis
    for (int k = 0; k < nw; k++) {
        BitVec img = to_w_coords(cfg, permute_branch(p, from_w_coords(cfg, BitVec::unit(nw, k))));
        for (int r = 0; r < nw; r++)
            if (img.get(r)) t.set(r, k, true);
    }
    return t;
}

inline bool block_equal(const BlockElement& x, const BlockElement& y) {
    return x.cfg == y.cfg && x.A == y.A && x.B == y.B &&
           w_matrix(x.cfg, x.omega) == w_matrix(y.cfg, y.omega);
}

inline std::string block_key(const BlockElement& m) {
    std::string s;
    BitMat w = w_matrix(m.cfg, m.omega);
    for (int r = 0; r < w.nrows(); r++) s += w.row(r).to_hex(), s += '.';
    for (int r = 0; r < m.A.nrows(); r++) s += m.A.row(r).to_hex(), s += '.';
    for (int r = 0; r < m.B.nrows(); r++) s += m.B.row(r).to_hex(), s += '.';
    return s;
}

// A composed with a permutation of the branch points: b -> A(omega(b)).
inline BitMat compose_A_perm(const BaseConfig& cfg, const BitMat& A, const Permutation& p) {
    int nw = cfg.dim_w();
    BitMat out(cfg.dim_surface(), nw);
    for (int k = 0; k < nw; k++) {
        BitVec wk = to_w_coords(cfg, permute_branch(p, from_w_coords(cfg, BitVec::unit(nw, k))));
        BitVec img = A.mul(wk);
        for (int r = 0; r < cfg.dim_surface(); r++)
            if (img.get(r)) out.set(r, k, true);
    }
    return out;
}

// Group law. Matrix product: m1 * m2 acts as "apply m2, then m1".
inline BlockElement compose(const BlockElement& m1, const BlockElement& m2) {
    if (!(m1.cfg == m2.cfg)) throw std::invalid_argument("compose: config mismatch");
    const BaseConfig& cfg = m1.cfg;
    BlockElement out;
    out.cfg = cfg;
    out.omega = compose_perm(m1.omega, m2.omega);
    BitMat A1w = compose_A_perm(cfg, m1.A, m2.omega);
    out.A = A1w ^ m2.A;
    // B = B1 + B2 + (A1 o omega2) A2^t, assembled column by column.
    BitMat cross(cfg.dim_surface(), cfg.dim_surface());
    for (int j = 0; j < cfg.dim_surface(); j++) {
        BranchVector atj = block_apply_At(m2, SurfaceClass::unit(cfg, j));
        BitVec img = A1w.mul(to_w_coords(cfg, atj));
        for (int r = 0; r < cfg.dim_surface(); r++)
            if (img.get(r)) cross.set(r, j, true);
    }
    out.B = m1.B ^ m2.B ^ cross;
    return out;
}

inline BlockElement inverse(const BlockElement& m) {
    const BaseConfig& cfg = m.cfg;
    BlockElement out;
    out.cfg = cfg;
    out.omega = inverse_perm(m.omega);
    out.A = compose_A_perm(cfg, m.A, out.omega);
    // B^{-1}-part = B + A A^t.
    BitMat cross(cfg.dim_surface(), cfg.dim_surface());
    for (int j = 0; j < cfg.dim_surface(); j++) {
        BranchVector atj = block_apply_At(m, SurfaceClass::unit(cfg, j));
        BitVec img = m.A.mul(to_w_coords(cfg, atj));
        for (int r = 0; r < cfg.dim_surface(); r++)
            if (img.get(r)) cross.set(r, j, true);
    }
    out.B = m.B ^ cross;
    return out;
}

// ---------------------------------------------------------------------------
// Generator images.

inline BlockElement from_generator(const BaseConfig& cfg, const Generator& gen) {
    BlockElement m = BlockElement::identity(cfg);
    if (gen.kind == Generator::Kind::tau) {
        m.B = BitMat::identity(cfg.dim_surface());
        return m;
    }
    m.omega = transposition_perm(cfg.n_branch(), gen.i, gen.j);
    if (!gen.a.is_zero()) {
        BranchVector bij = branch_pair(cfg, gen.i, gen.j);
        // A = L_ij^x with L(b) = ((b_ij, b)) x.
        for (int k = 0; k < cfg.dim_w(); k++) {
            if (branch_pairing(bij, from_w_coords(cfg, BitVec::unit(cfg.dim_w(), k)))) {
                for (int r = 0; r < cfg.dim_surface(); r++)
                    if (gen.a.v.get(r)) m.A.set(r, k, true);
            }
        }
        // B = S^x with S(c) = <x,c> x.
        for (int j = 0; j < cfg.dim_surface(); j++) {
            if (symplectic_pairing(gen.a, SurfaceClass::unit(cfg, j))) {
                for (int r = 0; r < cfg.dim_surface(); r++)
                    if (gen.a.v.get(r)) m.B.set(r, j, true);
            }
        }
    }
    return m;
}

inline BlockElement from_word(const BaseConfig& cfg, const std::vector<Generator>& word) {
    BlockElement m = BlockElement::identity(cfg);
    for (const Generator& g : word) m = compose(m, from_generator(cfg, g));
    return m;
}

// A_ij^x = s_{b_ij} s_{b_ij + x}, the basic unipotent element.
inline BlockElement a_ij_x(const BaseConfig& cfg, int i, int j, const SurfaceClass& x) {
    return compose(from_generator(cfg, Generator::make_swap(cfg, i, j, SurfaceClass::zero(cfg))),
                   from_generator(cfg, Generator::make_swap(cfg, i, j, x)));
}

// ---------------------------------------------------------------------------
// Membership.

// The H-constraint on the unipotent part (the permutation block is free):
//   l odd:  <Bc,c'> + <Bc',c> + ((A^t c, A^t c')) = 0 for all c, c'
//   l even: <Bc,c> + q_W(A^t c) = 0 for all c
// checked on a basis, plus the polarization identity for the quadratic case.
inline bool is_in_group(const BlockElement& m) {
    const BaseConfig& cfg = m.cfg;
    int n = cfg.dim_surface();
    std::vector<BranchVector> at;
    at.reserve(n);
    for (int k = 0; k < n; k++) at.push_back(block_apply_At(m, SurfaceClass::unit(cfg, k)));
    for (int k = 0; k < n; k++) {
        for (int j = k + 1; j < n; j++) {
            int lhs = symplectic_pairing(SurfaceClass(m.B.mul(BitVec::unit(n, k))), SurfaceClass::unit(cfg, j)) ^
                      symplectic_pairing(SurfaceClass(m.B.mul(BitVec::unit(n, j))), SurfaceClass::unit(cfg, k)) ^
                      branch_pairing(at[k], at[j]);
            if (lhs) return false;
        }
    }
    if (cfg.deg_l % 2 == 0) {
        for (int k = 0; k < n; k++) {
            int lhs = symplectic_pairing(SurfaceClass(m.B.mul(BitVec::unit(n, k))), SurfaceClass::unit(cfg, k)) ^
                      qw(cfg, at[k]);
            if (lhs) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Decomposition into generator words.

namespace detail {

// Adjacent-transposition word for a permutation: product(word) = s_p.
inline std::vector<std::pair<int, int>> adjacent_word(const Permutation& p) {
    int n = static_cast<int>(p.size());
    std::vector<int> arr(p.begin(), p.end());
    std::vector<std::pair<int, int>> swaps;  // recorded while sorting arr to identity
    bool moved = true;
    while (moved) {
        moved = false;
        for (int k = 0; k + 1 < n; k++) {
            if (arr[k] > arr[k + 1]) {
                std::swap(arr[k], arr[k + 1]);
                swaps.emplace_back(k, k + 1);
                moved = true;
            }
        }
    }
    // arr sorted means p . s_1 ... s_r = id, so p = s_r ... s_1.
    std::vector<std::pair<int, int>> word(swaps.rbegin(), swaps.rend());
    return word;
}

inline void append_a_ij_x_word(const BaseConfig& cfg, int i, int j, const SurfaceClass& x,
                               std::vector<Generator>& word) {
    word.push_back(Generator::make_swap(cfg, i, j, SurfaceClass::zero(cfg)));
    word.push_back(Generator::make_swap(cfg, i, j, x));
}

// Word for M^{x,y} = A_01^x A_01^y A_01^{x+y} (pure-B block with
// B(a) = <x,a>y + <y,a>x).
inline void append_m_xy_word(const BaseConfig& cfg, const SurfaceClass& x, const SurfaceClass& y,
                             std::vector<Generator>& word) {
    append_a_ij_x_word(cfg, 0, 1, x, word);
    append_a_ij_x_word(cfg, 0, 1, y, word);
    append_a_ij_x_word(cfg, 0, 1, x + y, word);
}

// Word for N^x = A_01^x A_23^x ... (pure-B block with B(a) = <x,a>x; needs
// l odd, since the same product is the identity for l even).
inline void append_n_x_word(const BaseConfig& cfg, const SurfaceClass& x, std::vector<Generator>& word) {
    for (int t = 0; t + 1 < cfg.n_branch(); t += 2) append_a_ij_x_word(cfg, t, t + 1, x, word);
}

}  // namespace detail

struct NotInGroup : std::runtime_error {
    NotInGroup() : std::runtime_error("decompose_to_word: element fails the membership constraint") {}
};

// A word in swap generators whose block product equals m. Strategy: peel the
// permutation by adjacent transpositions, peel A column by column against the
// dual pairs (k, 2l-1), then kill the residual B with M^{x,y} (and, for l odd,
// N^x) products. Emission order is fixed, so certificates are reproducible.
inline std::vector<Generator> decompose_to_word(const BlockElement& m) {
    const BaseConfig& cfg = m.cfg;
    const int n = cfg.dim_surface();
    if (!is_in_group(m)) throw NotInGroup();

    // Single unipotent generator pair: emit the two-swap certificate directly.
    // A_ij^x has all nonzero A-columns equal to x, so the first nonzero column
    // is the only candidate.
    if (w_matrix(cfg, m.omega) == BitMat::identity(cfg.dim_w()) && !m.A.is_zero()) {
        SurfaceClass x = SurfaceClass::zero(cfg);
        for (int k = 0; k < cfg.dim_w() && x.is_zero(); k++)
            for (int r = 0; r < n; r++)
                if (m.A.get(r, k)) x.v.set(r, true);
        for (int i = 0; i < cfg.n_branch(); i++) {
            for (int j = i + 1; j < cfg.n_branch(); j++) {
                if (block_equal(a_ij_x(cfg, i, j, x), m)) {
                    std::vector<Generator> w;
                    detail::append_a_ij_x_word(cfg, i, j, x, w);
                    return w;
                }
            }
        }
    }

    std::vector<Generator> word;

    // 1. permutation part
    for (auto [i, j] : detail::adjacent_word(m.omega))
        word.push_back(Generator::make_swap(cfg, i, j, SurfaceClass::zero(cfg)));
    BlockElement h = compose(inverse(from_word(cfg, word)), m);

    // 2. A part: canonical full-matrix columns are suffix sums over the w
    //    basis; column k is realised exactly by A_{k,2l-1}^{col}.
    std::vector<Generator> a_word;
    {
        BitVec acc(n);
        std::vector<SurfaceClass> cols(cfg.dim_w(), SurfaceClass::zero(cfg));
        for (int k = cfg.dim_w() - 1; k >= 0; k--) {
            BitVec col(n);
            for (int r = 0; r < n; r++)
                if (h.A.get(r, k)) col.set(r, true);
            acc ^= col;
            cols[k] = SurfaceClass(acc);
        }
        for (int k = 0; k < cfg.dim_w(); k++)
            if (!cols[k].is_zero())
                detail::append_a_ij_x_word(cfg, k, cfg.n_branch() - 1, cols[k], a_word);
    }
    BlockElement r = compose(inverse(from_word(cfg, a_word)), h);
    word.insert(word.end(), a_word.begin(), a_word.end());
    if (!r.A.is_zero() || !(w_matrix(cfg, r.omega) == BitMat::identity(cfg.dim_w())))
        throw std::logic_error("decompose_to_word: A/omega peel left a residue");

    // 3. B part: r is now a pure-B block; its bilinear form is symmetric and,
    //    for l even, alternating. Decompose into rank-<=2 pivots.
    BitMat B = r.B;
    std::vector<Generator> b_word;
    auto form = [&](int k, int j) {
        return symplectic_pairing(SurfaceClass(B.mul(BitVec::unit(n, k))), SurfaceClass::unit(cfg, j));
    };
    auto subtract_endo = [&](const SurfaceClass& x, const SurfaceClass& y, bool rank1) {
        // rank1: B(a) -= <x,a>x; else B(a) -= <x,a>y + <y,a>x
        for (int j = 0; j < n; j++) {
            SurfaceClass ej = SurfaceClass::unit(cfg, j);
            BitVec delta(n);
            if (rank1) {
                if (symplectic_pairing(x, ej)) delta ^= x.v;
            } else {
                if (symplectic_pairing(x, ej)) delta ^= y.v;
                if (symplectic_pairing(y, ej)) delta ^= x.v;
            }
            for (int rr = 0; rr < n; rr++)
                if (delta.get(rr)) B.set(rr, j, !B.get(rr, j));
        }
    };
    for (int guard = 0; guard <= 2 * n && !B.is_zero(); guard++) {
        int diag = -1;
        for (int k = 0; k < n; k++)
            if (form(k, k)) { diag = k; break; }
        if (diag >= 0) {
            if (cfg.deg_l % 2 == 0)
                throw std::logic_error("decompose_to_word: non-alternating residue for even degree");
            SurfaceClass x{B.mul(BitVec::unit(n, diag))};
            detail::append_n_x_word(cfg, x, b_word);
            subtract_endo(x, x, true);
            continue;
        }
        int pk = -1, pm = -1;
        for (int k = 0; k < n && pk < 0; k++)
            for (int j = k + 1; j < n; j++)
                if (form(k, j)) { pk = k; pm = j; break; }
        if (pk < 0) break;
        SurfaceClass x{B.mul(BitVec::unit(n, pk))};
        SurfaceClass y{B.mul(BitVec::unit(n, pm))};
        detail::append_m_xy_word(cfg, x, y, b_word);
        subtract_endo(x, y, false);
    }
    if (!B.is_zero()) throw std::logic_error("decompose_to_word: B peel did not terminate");
    word.insert(word.end(), b_word.begin(), b_word.end());
    return word;
}

// ---------------------------------------------------------------------------
// Relation verification.

struct RelationReport {
    long long checked = 0;
    long long failures = 0;
    std::vector<std::string> messages;

    void note(bool ok, const std::string& what) {
        checked++;
        if (!ok) {
            failures++;
            if (messages.size() < 32) messages.push_back(what);
        }
    }
    bool all_ok() const { return failures == 0; }
};

// Pure-B block with B(a) = <x,a>y + <y,a>x.
inline BlockElement m_xy_block(const BaseConfig& cfg, const SurfaceClass& x, const SurfaceClass& y) {
    BlockElement m = BlockElement::identity(cfg);
    int n = cfg.dim_surface();
    for (int j = 0; j < n; j++) {
        SurfaceClass ej = SurfaceClass::unit(cfg, j);
        BitVec col(n);
        if (symplectic_pairing(x, ej)) col ^= y.v;
        if (symplectic_pairing(y, ej)) col ^= x.v;
        for (int r = 0; r < n; r++)
            if (col.get(r)) m.B.set(r, j, true);
    }
    return m;
}

inline BlockElement n_x_block(const BaseConfig& cfg, const SurfaceClass& x) {
    BlockElement m = BlockElement::identity(cfg);
    int n = cfg.dim_surface();
    for (int j = 0; j < n; j++) {
        if (symplectic_pairing(x, SurfaceClass::unit(cfg, j))) {
            for (int r = 0; r < n; r++)
                if (x.v.get(r)) m.B.set(r, j, true);
        }
    }
    return m;
}

inline RelationReport verify_relations(const BaseConfig& cfg, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RelationReport rep;
    const int nb = cfg.n_branch();
    auto rand_surface = [&] {
        return SurfaceClass(BitVec::from_bits(cfg.dim_surface(), rng() & ((1ULL << cfg.dim_surface()) - 1)));
    };
    auto rand_pair = [&](int& i, int& j) {
        i = static_cast<int>(rng() % nb);
        do { j = static_cast<int>(rng() % nb); } while (j == i);
        if (i > j) std::swap(i, j);
    };
    const BlockElement e = BlockElement::identity(cfg);

    for (int t = 0; t < samples; t++) {
        int i, j, k, l;
        rand_pair(i, j);
        rand_pair(k, l);
        SurfaceClass x = rand_surface(), y = rand_surface();

        // M^{x,y} = A_ij^x A_ij^y A_ij^{x+y}
        BlockElement lhs = compose(compose(a_ij_x(cfg, i, j, x), a_ij_x(cfg, i, j, y)), a_ij_x(cfg, i, j, x + y));
        rep.note(block_equal(lhs, m_xy_block(cfg, x, y)), "M^{x,y} product relation");

        // (A_ij^x)^2 = I
        BlockElement sq = compose(a_ij_x(cfg, i, j, x), a_ij_x(cfg, i, j, x));
        rep.note(block_equal(sq, e), "(A_ij^x)^2 = I");

        // commutator: I when ((b_ij, b_kl)) = 0, else M^{x,y}
        BlockElement aij = a_ij_x(cfg, i, j, x), akl = a_ij_x(cfg, k, l, y);
        BlockElement comm = compose(compose(aij, akl), compose(inverse(aij), inverse(akl)));
        int p = branch_pairing(branch_pair(cfg, i, j), branch_pair(cfg, k, l));
        rep.note(block_equal(comm, p ? m_xy_block(cfg, x, y) : e), "commutator relation");

        // disjoint product over all pairs: I (l even) or N^x (l odd)
        BlockElement prod = BlockElement::identity(cfg);
        for (int s = 0; s + 1 < nb; s += 2) prod = compose(prod, a_ij_x(cfg, s, s + 1, x));
        rep.note(block_equal(prod, (cfg.deg_l % 2 == 0) ? e : n_x_block(cfg, x)), "disjoint A-product relation");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Group order.

// Order of the monodromy group as a matrix group: |im(S_2l -> GL(W))| * |H|,
// |H| = 2^{2g(2l-2)} * 2^{nullity of the B-constraint with A = 0}. The
// permutation action on W is faithful except for 2l = 4, where the Klein
// four-group acts trivially.
inline unsigned __int128 group_order(const BaseConfig& cfg) {
    int n = cfg.dim_surface();
    // Nullity of the linear constraint system on B's 4g^2 entries.
    std::vector<BitVec> rows;
    auto row_for = [&](int k, int j, bool diag) {
        BitVec r(n * n);
        // <B e_k, e_j>: depends on column k of B through the symplectic form.
        SurfaceClass ej_dual = symplectic_dual(SurfaceClass::unit(cfg, j));
        for (int rr = 0; rr < n; rr++)
            if (ej_dual.v.get(rr)) r.flip(rr * n + k);
        if (!diag) {
            SurfaceClass ek_dual = symplectic_dual(SurfaceClass::unit(cfg, k));
            for (int rr = 0; rr < n; rr++)
                if (ek_dual.v.get(rr)) r.flip(rr * n + j);
        }
        return r;
    };
    for (int k = 0; k < n; k++)
        for (int j = k + 1; j < n; j++) rows.push_back(row_for(k, j, false));
    if (cfg.deg_l % 2 == 0)
        for (int k = 0; k < n; k++) rows.push_back(row_for(k, k, true));
    BitMat sys(static_cast<int>(rows.size()), n * n);
    for (size_t i = 0; i < rows.size(); i++) sys.row(static_cast<int>(i)) = rows[i];
    int nullity = n * n - rank(sys);

    long long exp2 = static_cast<long long>(2 * cfg.genus) * cfg.dim_w() + nullity;
    if (exp2 >= 120) throw std::overflow_error("group_order: exceeds 128-bit range");
    unsigned __int128 h = (unsigned __int128)1 << exp2;
    unsigned __int128 perms = 1;
    for (int i = 2; i <= cfg.n_branch(); i++) {
        if (perms > ((unsigned __int128)-1) / ((unsigned __int128)i << exp2))
            throw std::overflow_error("group_order: exceeds 128-bit range");
        perms *= i;
    }
    if (cfg.n_branch() == 4) perms /= 4;  // Klein four-group acts trivially on W
    if (cfg.dim_w() == 0) perms = 1;      // degenerate two-branch-point case
    return perms * h;
}

inline std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

}  // namespace hitmono
