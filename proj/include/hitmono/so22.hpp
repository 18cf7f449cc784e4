#pragma once

// Restricted monodromy for the split real form of SO(4,C). The discriminant
// factors as c_1 c_2, so branch points come in two blocks of 4g-4 and only
// swaps within a block lift. The fibre is the even model with l = 4g-4.

#include <vector>

#include "hitmono/config.hpp"
#include "hitmono/group.hpp"
#include "hitmono/monodromy.hpp"
#include "hitmono/orbits.hpp"

namespace hitmono {

struct So22Config {
    int genus = 2;

    int deg_l() const { return 4 * genus - 4; }         // per factor degree is 2g-2; fibre sees their product
    int block_size() const { return 4 * genus - 4; }    // |B_1| = |B_2|
    int n_branch() const { return 8 * genus - 8; }

    BaseConfig base() const {
        BaseConfig cfg;
        cfg.genus = genus;
        cfg.deg_l = deg_l();
        cfg.validate();
        return cfg;
    }
};

// Reduced admissible generating set: adjacent swaps within each block, the
// first pair of each block decorated with a basis of H^1(Sigma, Z2), and tau.
inline std::vector<Generator> admissible_generators(const So22Config& so) {
    BaseConfig cfg = so.base();
    const int bs = so.block_size();
    std::vector<Generator> gens;
    for (int i = 0; i + 1 < bs; i++)
        gens.push_back(Generator::make_swap(cfg, i, i + 1, SurfaceClass::zero(cfg)));
    for (int i = bs; i + 1 < 2 * bs; i++)
        gens.push_back(Generator::make_swap(cfg, i, i + 1, SurfaceClass::zero(cfg)));
    for (int k = 0; k < cfg.dim_surface(); k++)
        gens.push_back(Generator::make_swap(cfg, 0, 1, SurfaceClass::unit(cfg, k)));
    for (int k = 0; k < cfg.dim_surface(); k++)
        gens.push_back(Generator::make_swap(cfg, bs, bs + 1, SurfaceClass::unit(cfg, k)));
    gens.push_back(Generator::make_tau());
    return gens;
}

// The class of b_1 + ... + b_{4g-4} (zeros of c_1) in W; fixed by the whole
// restricted group.
inline BranchVector block_sum_class(const So22Config& so) {
    BaseConfig cfg = so.base();
    BitVec v(cfg.n_branch());
    for (int i = 0; i < so.block_size(); i++) v.set(i, true);
    return BranchVector(std::move(v), BranchParity::even, true);
}

// Membership: omega block-diagonal, A kills the block sum, and the
// q-preservation constraint holds (l = 4g-4 is even).
inline bool so22_is_in_group(const BlockElement& m, const So22Config& so) {
    const int bs = so.block_size();
    for (int i = 0; i < bs; i++)
        if (m.omega[i] >= bs) return false;
    if (!block_apply_A(m, block_sum_class(so)).is_zero()) return false;
    return is_in_group(m);
}

struct So22Count {
    std::uint64_t computed = 0;
    std::uint64_t expected = 0;
    bool match() const { return computed == expected; }
};

inline std::uint64_t so22_expected_count(const So22Config& so) {
    long long g = so.genus;
    return static_cast<std::uint64_t>(6 * (1LL << (2 * g)) + 4 * g * g - 6 * g - 3);
}

inline OrbitTable so22_orbit_table(const So22Config& so, const OrbitOptions& opts = {}) {
    OrbitOptions o = opts;
    if (o.generators.empty()) o.generators = admissible_generators(so);
    return enumerate_orbits(Model::gl_even, so.base(), o);
}

inline So22Count so22_orbit_count(const So22Config& so, const OrbitOptions& opts = {}) {
    So22Count out;
    out.computed = so22_orbit_table(so, opts).orbits.size();
    out.expected = so22_expected_count(so);
    return out;
}

// Decomposition into admissible factors only. Permutations are peeled by
// adjacent transpositions inside each block. The A part is peeled against
// pairs (i, 2l-1) inside the second block, leaving columns supported on the
// first block whose sum vanishes by the A(b_1+...+b_{4g-4}) = 0 constraint;
// those are matched exactly by pairs (i, bs-1) inside the first block. The
// residual B is alternating and falls to M^{x,y} products over the pair
// (0,1). Throws NotInGroup when the element fails so22_is_in_group.
inline std::vector<Generator> so22_decompose_to_word(const BlockElement& m, const So22Config& so) {
    const BaseConfig cfg = so.base();
    const int bs = so.block_size();
    const int n = cfg.dim_surface();
    if (!so22_is_in_group(m, so)) throw NotInGroup();

    std::vector<Generator> word;
    // permutation part, block by block
    {
        Permutation p1(m.omega.begin(), m.omega.begin() + bs);
        for (auto [i, j] : detail::adjacent_word(p1))
            word.push_back(Generator::make_swap(cfg, i, j, SurfaceClass::zero(cfg)));
        Permutation p2(bs);
        for (int i = 0; i < bs; i++) p2[i] = m.omega[bs + i] - bs;
        for (auto [i, j] : detail::adjacent_word(p2))
            word.push_back(Generator::make_swap(cfg, bs + i, bs + j, SurfaceClass::zero(cfg)));
    }
    BlockElement h = compose(inverse(from_word(cfg, word)), m);

    // A part: canonical columns from suffix sums over the w basis
    std::vector<SurfaceClass> cols(cfg.dim_w(), SurfaceClass::zero(cfg));
    {
        BitVec acc(n);
        for (int k = cfg.dim_w() - 1; k >= 0; k--) {
            BitVec col(n);
            for (int r = 0; r < n; r++)
                if (h.A.get(r, k)) col.set(r, true);
            acc ^= col;
            cols[k] = SurfaceClass(acc);
        }
    }
    std::vector<Generator> a_word;
    // second block: pairs (i, 2l-1) are admissible for i in the block
    for (int k = bs; k < cfg.dim_w(); k++) {
        if (!cols[k].is_zero())
            detail::append_a_ij_x_word(cfg, k, cfg.n_branch() - 1, cols[k], a_word);
    }
    // first block: pairs (i, bs-1); the column sum over the block vanishes,
    // so matching columns 0..bs-2 also matches column bs-1
    for (int k = 0; k + 1 < bs; k++) {
        if (!cols[k].is_zero())
            detail::append_a_ij_x_word(cfg, k, bs - 1, cols[k], a_word);
    }
    BlockElement r = compose(inverse(from_word(cfg, a_word)), h);
    word.insert(word.end(), a_word.begin(), a_word.end());
    if (!r.A.is_zero() || !(w_matrix(cfg, r.omega) == BitMat::identity(cfg.dim_w())))
        throw std::logic_error("so22_decompose_to_word: A/omega peel left a residue");

    // B part: alternating; reuse M^{x,y} pivots over the admissible pair (0,1)
    BitMat B = r.B;
    std::vector<Generator> b_word;
    auto form = [&](int k, int j) {
        return symplectic_pairing(SurfaceClass(B.mul(BitVec::unit(n, k))), SurfaceClass::unit(cfg, j));
    };
    for (int guard = 0; guard <= 2 * n && !B.is_zero(); guard++) {
        int pk = -1, pm = -1;
        for (int k = 0; k < n && pk < 0; k++)
            for (int j = k + 1; j < n; j++)
                if (form(k, j)) { pk = k; pm = j; break; }
        if (pk < 0) break;
        SurfaceClass x{B.mul(BitVec::unit(n, pk))};
        SurfaceClass y{B.mul(BitVec::unit(n, pm))};
        detail::append_m_xy_word(cfg, x, y, b_word);
        B ^= m_xy_block(cfg, x, y).B;
    }
    if (!B.is_zero()) throw std::logic_error("so22_decompose_to_word: B peel did not terminate");
    word.insert(word.end(), b_word.begin(), b_word.end());
    return word;
}

// Per-block weight profile of an orbit representative, for table output.
// Reported as the lexicographically smaller of the two representative
// profiles {(m1, m2), (bs - m1, bs - m2)}.
inline std::pair<int, int> block_weight_profile(const So22Config& so, const FibreElement& x) {
    const int bs = so.block_size();
    int m1 = 0, m2 = 0;
    for (int i = 0; i < bs; i++) m1 += x.b.v.get(i) ? 1 : 0;
    for (int i = bs; i < 2 * bs; i++) m2 += x.b.v.get(i) ? 1 : 0;
    std::pair<int, int> p{m1, m2}, q{bs - m1, bs - m2};
    return std::min(p, q);
}

}  // namespace hitmono
