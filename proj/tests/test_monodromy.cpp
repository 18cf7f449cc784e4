#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "hitmono/cocycle.hpp"
#include "hitmono/monodromy.hpp"
#include "hitmono/orbits.hpp"
#include "oracles.hpp"

using namespace hitmono;

namespace {
BaseConfig cfg_gl(int g, int l) {
    BaseConfig c;
    c.genus = g;
    c.deg_l = l;
    c.allow_degree_override = true;
    return c;
}

FibreElement project_drop_a(const FibreElement& x) {
    if (x.model == Model::gl_even) return make_pgl(x.cfg, 0, x.b, x.c);
    if (x.model == Model::gl_odd) return make_pgl(x.cfg, 1, x.b, x.c);
    if (x.model == Model::sl) return make_psl(x.cfg, 0, x.b);
    throw std::logic_error("bad projection");
}
}  // namespace

TEST_CASE("transvections fix their own class and square to the identity") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; t++) {
        Generator g = oracles::random_swap(cfg, rng);
        FibreElement c = transvection_class(cfg, g);
        CHECK(transvection(c, c) == c);
        for (Model m : {Model::gl_even, Model::gl_odd}) {
            FibreElement x = oracles::random_element(m, cfg, rng);
            CHECK(transvection(c, transvection(c, x)) == x);
        }
    }
}

TEST_CASE("swaps through the first branch point translate the theta origin") {
    BaseConfig cfg = cfg_gl(2, 2);
    FibreElement theta = theta_origin(cfg);
    std::mt19937_64 rng(5);
    for (int j = 1; j < cfg.n_branch(); j++) {
        Generator g = Generator::make_swap(cfg, 0, j, oracles::random_surface(cfg, rng));
        FibreElement c = transvection_class(cfg, g);
        CHECK(weil_pairing(c, theta) == 1);
        CHECK(apply(g, theta) == translate(theta, c));
    }
}

TEST_CASE("tau fixes elements with zero pushforward and is an involution") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(7);
    Generator tau = Generator::make_tau();
    for (int t = 0; t < 200; t++) {
        FibreElement x = oracles::random_element(Model::gl_even, cfg, rng);
        FibreElement fixed_c = x;
        fixed_c.c = SurfaceClass::zero(cfg);
        CHECK(apply(tau, fixed_c) == fixed_c);
        CHECK(apply(tau, apply(tau, x)) == x);
        for (Model m : {Model::sl, Model::pgl0, Model::pgl1, Model::psl0, Model::psl1}) {
            FibreElement y = oracles::random_element(m, cfg, rng);
            CHECK(apply(tau, y) == y);
        }
    }
}

TEST_CASE("swap acts on the un-quotiented branch space as the transposition") {
    BaseConfig cfg = cfg_gl(2, 2);
    // swap of b_1, b_2 sends the class b_2 + b_3 to b_1 + b_3
    FibreElement x = make_sl(cfg, SurfaceClass::zero(cfg), branch_pair(cfg, 1, 2));
    FibreElement y = apply(Generator::make_swap(cfg, 0, 1, SurfaceClass::zero(cfg)), x);
    CHECK(y == make_sl(cfg, SurfaceClass::zero(cfg), branch_pair(cfg, 0, 2)));
}

TEST_CASE("psl action is the quotient of the odd transvection") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; t++) {
        BranchVector raw = oracles::random_branch(cfg, rng, 1, false);
        Generator g = oracles::random_swap(cfg, rng);
        FibreElement p = make_psl(cfg, 1, raw);
        // quotient of the psl image
        BranchVector lhs(apply(g, p).b.v, BranchParity::odd, true);
        // odd-model point with the same class and no surface parts
        FibreElement xo = make_gl(cfg, Model::gl_odd, SurfaceClass::zero(cfg),
                                  BranchVector(raw.v, BranchParity::odd, true), SurfaceClass::zero(cfg));
        CHECK(lhs == apply(g, xo).b);
    }
}

TEST_CASE("pgl and psl actions are quotients of the covering actions") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 500; t++) {
        Generator g = (t % 7 == 0) ? Generator::make_tau() : oracles::random_swap(cfg, rng);
        for (Model m : {Model::gl_even, Model::gl_odd, Model::sl}) {
            FibreElement x = oracles::random_element(m, cfg, rng);
            CHECK(project_drop_a(apply(g, x)) == apply(g, project_drop_a(x)));
        }
    }
}

TEST_CASE("tau commutes with every swap on every model") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(17);
    Generator tau = Generator::make_tau();
    for (int t = 0; t < 300; t++) {
        Generator g = oracles::random_swap(cfg, rng);
        for (Model m : {Model::gl_even, Model::gl_odd, Model::sl, Model::pgl0, Model::pgl1, Model::psl0,
                        Model::psl1}) {
            FibreElement x = oracles::random_element(m, cfg, rng);
            CHECK(apply(tau, apply(g, x)) == apply(g, apply(tau, x)));
        }
    }
}

TEST_CASE("swaps preserve the weil pairing for every degree") {
    std::mt19937_64 rng(19);
    for (int l : {2, 3, 4}) {
        BaseConfig cfg = cfg_gl(2, l);
        for (int t = 0; t < 300; t++) {
            Generator g = oracles::random_swap(cfg, rng);
            FibreElement x = oracles::random_element(Model::gl_even, cfg, rng);
            FibreElement y = oracles::random_element(Model::gl_even, cfg, rng);
            CHECK(weil_pairing(apply(g, x), apply(g, y)) == weil_pairing(x, y));
        }
    }
}

TEST_CASE("generators preserve q when the degree is even") {
    std::mt19937_64 rng(23);
    for (int l : {2, 4}) {
        BaseConfig cfg = cfg_gl(2, l);
        std::vector<Generator> gens = bfs_generating_set(cfg);
        for (int t = 0; t < 1000; t++) {
            FibreElement x = oracles::random_element(Model::gl_even, cfg, rng);
            Generator g = (t % 5 == 0) ? gens[rng() % gens.size()] : oracles::random_swap(cfg, rng);
            CHECK(q(apply(g, x)) == q(x));
        }
    }
}

TEST_CASE("reduced generating set has the documented size") {
    BaseConfig cfg = cfg_gl(2, 2);
    CHECK(bfs_generating_set(cfg).size() == 8);  // 3 adjacent + 4 decorated + tau
}

TEST_CASE("reduced and full generating sets give the same orbit partitions") {
    for (int l : {2, 4}) {
        BaseConfig cfg = cfg_gl(2, l);
        OrbitOptions full;
        full.generators = full_generating_set(cfg);
        for (Model m : {Model::gl_even, Model::gl_odd, Model::sl, Model::pgl0, Model::pgl1, Model::psl0,
                        Model::psl1}) {
            OrbitTable reduced_t = enumerate_orbits(m, cfg);
            OrbitTable full_t = enumerate_orbits(m, cfg, full);
            REQUIRE(reduced_t.orbits.size() == full_t.orbits.size());
            for (size_t k = 0; k < reduced_t.orbits.size(); k++) {
                CHECK(reduced_t.orbits[k].representative == full_t.orbits[k].representative);
                CHECK(reduced_t.orbits[k].size == full_t.orbits[k].size);
            }
        }
    }
}

TEST_CASE("group closure on the sl fibre matches the matrix characterization") {
    BaseConfig cfg = cfg_gl(2, 2);
    const std::uint64_t n = fibre_size(Model::sl, cfg);  // 128
    REQUIRE(n == 128);

    // permutation of the fibre induced by a generator
    auto action_of = [&](const Generator& g) {
        std::vector<std::uint8_t> act(n);
        for (std::uint64_t idx = 0; idx < n; idx++)
            act[idx] = static_cast<std::uint8_t>(encode(apply(g, decode(Model::sl, cfg, idx))));
        return act;
    };
    auto compose_act = [&](const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g) {
        std::vector<std::uint8_t> h(n);
        for (std::uint64_t i = 0; i < n; i++) h[i] = f[g[i]];
        return h;
    };

    // closure of the reduced generating set
    std::vector<std::vector<std::uint8_t>> gens;
    for (const Generator& g : bfs_generating_set(cfg)) gens.push_back(action_of(g));
    std::set<std::vector<std::uint8_t>> closure;
    std::vector<std::vector<std::uint8_t>> frontier;
    std::vector<std::uint8_t> id(n);
    for (std::uint64_t i = 0; i < n; i++) id[i] = static_cast<std::uint8_t>(i);
    closure.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<std::vector<std::uint8_t>> next;
        for (const auto& f : frontier) {
            for (const auto& g : gens) {
                auto h = compose_act(g, f);
                if (closure.insert(h).second) next.push_back(h);
            }
        }
        frontier.swap(next);
    }

    // the characterization: all pairs (omega, A) with A(b_o) = 0 acting by
    // (a, b) -> (a + A(b), omega(b))
    std::set<std::vector<std::uint8_t>> predicted;
    std::vector<int> perm{0, 1, 2, 3};
    BranchVector bo(branch_b_o(cfg), BranchParity::even, false);
    do {
        // A encoded by its values on b_1+b_2, b_2+b_3, b_3+b_4; the value on
        // b_o = sum of the spanning pairs with odd multiplicity must vanish.
        for (std::uint64_t abits = 0; abits < (1ULL << 12); abits++) {
            SurfaceClass a01{BitVec::from_bits(4, abits & 15)};
            SurfaceClass a12{BitVec::from_bits(4, (abits >> 4) & 15)};
            SurfaceClass a23{BitVec::from_bits(4, (abits >> 8) & 15)};
            // b_o = (b1+b2) + (b3+b4) = a01-basis + (a12+a23+a12...)
            // in the spanning set: b_o = w0 + w2 where w0=b12, w2=b34
            // value on w2 = A(b3+b4): b3+b4 = w0+w... use coordinates:
            // A determined on basis w0=b12, w1=b23, w2=b34 of (Z2B)^ev.
            SurfaceClass on_bo = a01 + a23;  // A(b12) + A(b34)
            if (!on_bo.is_zero()) continue;
            std::vector<std::uint8_t> act(n);
            for (std::uint64_t idx = 0; idx < n; idx++) {
                FibreElement x = decode(Model::sl, cfg, idx);
                // expand b over the basis {b12, b23, b34} by prefix parity
                int p0 = x.b.v.get(0);
                int p1 = p0 ^ x.b.v.get(1);
                int p2 = p1 ^ x.b.v.get(2);
                SurfaceClass shift = SurfaceClass::zero(cfg);
                if (p0) shift = shift + a01;
                if (p1) shift = shift + a12;
                if (p2) shift = shift + a23;
                BitVec pb(cfg.n_branch());
                for (int i = 0; i < cfg.n_branch(); i++)
                    if (x.b.v.get(i)) pb.set(perm[i], true);
                FibreElement y = make_sl(cfg, x.a + shift, BranchVector(std::move(pb), BranchParity::even, false));
                act[idx] = static_cast<std::uint8_t>(encode(y));
            }
            predicted.insert(act);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CHECK(closure.size() == 24 * 256);
    CHECK(closure == predicted);
}
