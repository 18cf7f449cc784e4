#pragma once

// The translation cocycles of the affine monodromy actions. With the origin
// over the first branch point, a generator g moves the origin by beta(g):
// zero for tau and for swaps avoiding b_1, and the transvection class c
// itself for swaps touching b_1. beta extends to words by
// beta(gh) = beta(g) + g.beta(h).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitmono/config.hpp"
#include "hitmono/fibre.hpp"
#include "hitmono/monodromy.hpp"

namespace hitmono {

struct CocycleValue {
    FibreElement value;  // gl_even for beta, sl for beta_tilde
};

// beta of a single generator, valued in the even model (branch part kept
// un-quotiented so it pairs against odd elements).
inline CocycleValue beta(const BaseConfig& cfg, const Generator& gen) {
    CocycleValue out;
    if (gen.kind == Generator::Kind::swap && (gen.i == 0 || gen.j == 0)) {
        out.value = transvection_class(cfg, gen);
    } else {
        out.value = FibreElement{Model::gl_even, cfg, SurfaceClass::zero(cfg),
                                 BranchVector(BitVec(cfg.n_branch()), BranchParity::even, false),
                                 SurfaceClass::zero(cfg)};
    }
    return out;
}

// The lift of beta to the un-quotiented extension, fixed by requiring the
// branch part to be exactly b_i + b_j.
inline CocycleValue beta_tilde(const BaseConfig& cfg, const Generator& gen) {
    CocycleValue out;
    if (gen.kind == Generator::Kind::swap && (gen.i == 0 || gen.j == 0)) {
        out.value = make_sl(cfg, gen.a, branch_pair(cfg, gen.i, gen.j));
    } else {
        out.value = make_sl(cfg, SurfaceClass::zero(cfg),
                            BranchVector(BitVec(cfg.n_branch()), BranchParity::even, false));
    }
    return out;
}

// beta of a word by left-to-right accumulation:
// beta(g1 g2 ... gk) = beta(g1) + g1.beta(g2) + g1g2.beta(g3) + ...
// computed right-to-left as beta(w) = beta(g1) + g1.(beta of tail).
inline CocycleValue beta_word(const BaseConfig& cfg, const std::vector<Generator>& word, bool tilde) {
    CocycleValue acc;
    acc.value = tilde ? make_sl(cfg, SurfaceClass::zero(cfg),
                                BranchVector(BitVec(cfg.n_branch()), BranchParity::even, false))
                      : FibreElement{Model::gl_even, cfg, SurfaceClass::zero(cfg),
                                     BranchVector(BitVec(cfg.n_branch()), BranchParity::even, false),
                                     SurfaceClass::zero(cfg)};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        FibreElement moved = apply(*it, acc.value);
        CocycleValue head = tilde ? beta_tilde(cfg, *it) : beta(cfg, *it);
        moved.a.v ^= head.value.a.v;
        moved.b = BranchVector(moved.b.v ^ head.value.b.v, moved.b.parity, moved.b.quotient);
        if (!tilde) moved.c.v ^= head.value.c.v;
        acc.value = moved;
    }
    return acc;
}

// The origin of the odd fibre: the class over the first branch point.
inline FibreElement theta_origin(const BaseConfig& cfg) {
    BitVec b1(cfg.n_branch());
    b1.set(0, true);
    return make_gl(cfg, Model::gl_odd, SurfaceClass::zero(cfg),
                   BranchVector(std::move(b1), BranchParity::odd, true), SurfaceClass::zero(cfg));
}

// Odd fibre points written against the theta origin: x = y + theta with y in
// the even model.
inline FibreElement odd_minus_theta(const FibreElement& x) {
    if (x.model != Model::gl_odd) throw std::domain_error("odd_minus_theta: gl_odd model only");
    BitVec b = x.b.v;
    b.flip(0);
    return make_gl(x.cfg, Model::gl_even, x.a, BranchVector(std::move(b), BranchParity::even, true), x.c);
}

inline FibreElement even_plus_theta(const FibreElement& y) {
    if (y.model != Model::gl_even) throw std::domain_error("even_plus_theta: gl_even model only");
    BitVec b = y.b.v;
    b.flip(0);
    return make_gl(y.cfg, Model::gl_odd, y.a, BranchVector(std::move(b), BranchParity::odd, true), y.c);
}

struct CocycleReport {
    long long affine_checked = 0;
    long long affine_mismatches = 0;
    long long relation_checked = 0;
    long long relation_mismatches = 0;
    std::vector<std::string> messages;

    bool all_ok() const { return affine_mismatches == 0 && relation_mismatches == 0; }

    void note(bool ok, long long& checked, long long& failed, const std::string& what) {
        checked++;
        if (!ok) {
            failed++;
            if (messages.size() < 32) messages.push_back(what);
        }
    }
};

// Verifies that (i) beta is consistent across the group relations (relation-
// equivalent words get equal cocycle values) and (ii) the direct affine
// action on the odd fibre equals linear action plus cocycle, pointwise.
inline CocycleReport check_cocycle(const BaseConfig& cfg, int relation_samples, std::uint64_t seed,
                                   bool exhaustive_affine) {
    cfg.require_even_l("check_cocycle");
    std::mt19937_64 rng(seed);
    CocycleReport rep;

    auto rand_surface = [&] {
        return SurfaceClass(BitVec::from_bits(cfg.dim_surface(), rng() & ((1ULL << cfg.dim_surface()) - 1)));
    };
    auto rand_pair = [&](int& i, int& j) {
        i = static_cast<int>(rng() % cfg.n_branch());
        do { j = static_cast<int>(rng() % cfg.n_branch()); } while (j == i);
        if (i > j) std::swap(i, j);
    };
    auto a_word = [&](int i, int j, const SurfaceClass& x) {
        return std::vector<Generator>{Generator::make_swap(cfg, i, j, SurfaceClass::zero(cfg)),
                                      Generator::make_swap(cfg, i, j, x)};
    };
    auto concat = [](std::vector<std::vector<Generator>> parts) {
        std::vector<Generator> w;
        for (auto& p : parts) w.insert(w.end(), p.begin(), p.end());
        return w;
    };
    auto values_equal = [&](const std::vector<Generator>& w1, const std::vector<Generator>& w2, bool tilde) {
        return beta_word(cfg, w1, tilde).value == beta_word(cfg, w2, tilde).value;
    };

    for (int t = 0; t < relation_samples; t++) {
        int i, j, k, l;
        rand_pair(i, j);
        rand_pair(k, l);
        SurfaceClass x = rand_surface(), y = rand_surface();

        for (bool tilde : {false, true}) {
            // both realisations of M^{x,y}: via (i,j) and via (k,l)
            auto m1 = concat({a_word(i, j, x), a_word(i, j, y), a_word(i, j, x + y)});
            auto m2 = concat({a_word(k, l, x), a_word(k, l, y), a_word(k, l, x + y)});
            rep.note(values_equal(m1, m2, tilde), rep.relation_checked, rep.relation_mismatches,
                     "M^{x,y} realisations disagree");

            // (A_ij^x)^2 = 1 against the empty word
            rep.note(values_equal(concat({a_word(i, j, x), a_word(i, j, x)}), {}, tilde), rep.relation_checked,
                     rep.relation_mismatches, "(A_ij^x)^2 cocycle value nonzero");

            // commutator relation: for disjoint supports the two orders agree;
            // for overlapping supports [A_ij^x, A_kl^y] equals M^{x,y}, whose
            // realisations carry value zero, so the commutator word must too.
            bool disjoint = (j != k && j != l && i != k && i != l);
            if (disjoint) {
                auto lhs = concat({a_word(i, j, x), a_word(k, l, y)});
                auto rhs = concat({a_word(k, l, y), a_word(i, j, x)});
                rep.note(values_equal(lhs, rhs, tilde), rep.relation_checked, rep.relation_mismatches,
                         "disjoint commutator cocycle mismatch");
            } else if (i != k || j != l) {
                // A_ij^x is an involution, so the commutator word reuses the
                // same two-letter words for the inverses.
                auto comm = concat({a_word(i, j, x), a_word(k, l, y), a_word(i, j, x), a_word(k, l, y)});
                auto mxy = concat({a_word(0, 1, x), a_word(0, 1, y), a_word(0, 1, x + y)});
                rep.note(values_equal(comm, mxy, tilde), rep.relation_checked, rep.relation_mismatches,
                         "overlapping commutator cocycle mismatch");
            }

            // The full disjoint product is the identity in the linear group
            // (l even) but acts on the affine fibre as a pure translation: its
            // cocycle value is exactly the surface part x, contributed by the
            // one factor through the distinguished branch point.
            std::vector<std::vector<Generator>> parts;
            for (int s = 0; s + 1 < cfg.n_branch(); s += 2) parts.push_back(a_word(s, s + 1, x));
            FibreElement got = beta_word(cfg, concat(parts), tilde).value;
            bool ok = got.a == x && got.b.is_zero() && (tilde || got.c.is_zero());
            rep.note(ok, rep.relation_checked, rep.relation_mismatches,
                     "disjoint A-product cocycle value is not the expected translation");
        }

        // cocycle rule instance: beta(g^2) = (1 + rho(g)) beta(g)
        Generator g = Generator::make_swap(cfg, i, j, x);
        CocycleValue bg = beta(cfg, g);
        FibreElement expect = bg.value;
        FibreElement moved = apply(g, bg.value);
        expect.a.v ^= moved.a.v;
        expect.b = BranchVector(expect.b.v ^ moved.b.v, BranchParity::even, false);
        expect.c.v ^= moved.c.v;
        rep.note(beta_word(cfg, {g, g}, false).value == expect, rep.relation_checked, rep.relation_mismatches,
                 "beta(g^2) != (1 + rho(g)) beta(g)");
    }

    // Affine action versus (linear action, cocycle) on the odd fibre.
    std::vector<Generator> gens = full_generating_set(cfg);
    std::uint64_t n = fibre_size(Model::gl_odd, cfg);
    std::uint64_t step = 1;
    if (!exhaustive_affine && n > 4096) step = n / 4096;
    for (std::uint64_t idx = 0; idx < n; idx += step) {
        FibreElement xo = decode(Model::gl_odd, cfg, idx);
        FibreElement y = odd_minus_theta(xo);
        for (const Generator& g : gens) {
            FibreElement direct = apply(g, xo);
            FibreElement lin = apply(g, y);
            FibreElement bv = beta(cfg, g).value;
            lin.a.v ^= bv.a.v;
            lin.b = BranchVector(lin.b.v ^ bv.b.v, BranchParity::even, true);
            lin.c.v ^= bv.c.v;
            FibreElement via_cocycle = even_plus_theta(lin);
            rep.note(direct == via_cocycle, rep.affine_checked, rep.affine_mismatches,
                     "affine/(linear+cocycle) mismatch at " + serialize(xo));
        }
    }
    return rep;
}

}  // namespace hitmono
