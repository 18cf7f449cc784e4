#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hitmono/fibre.hpp"
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

BranchVector pair_sum(const BaseConfig& cfg, std::initializer_list<int> coords, bool quot) {
    BitVec v(cfg.n_branch());
    for (int k : coords) v.flip(k);
    int parity = v.parity();
    return BranchVector(std::move(v), parity ? BranchParity::odd : BranchParity::even, quot);
}
}  // namespace

TEST_CASE("branch pairing on basis pairs") {
    BaseConfig cfg = cfg_gl(2, 2);
    // ((b_1+b_2, b_2+b_3)) = 1: one common point
    CHECK(branch_pairing(branch_pair(cfg, 0, 1), branch_pair(cfg, 1, 2)) == 1);
    CHECK(branch_pairing(branch_pair(cfg, 0, 1), branch_pair(cfg, 2, 3)) == 0);
    CHECK(branch_pairing(branch_pair(cfg, 0, 1), branch_pair(cfg, 0, 1)) == 0);
}

TEST_CASE("even vectors pair to zero with b_o") {
    BaseConfig cfg = cfg_gl(2, 3);
    std::mt19937_64 rng(3);
    BranchVector bo(branch_b_o(cfg), BranchParity::even, false);
    for (int t = 0; t < 100; t++) {
        BranchVector b = oracles::random_branch(cfg, rng, 0, false);
        CHECK(branch_pairing(b, bo) == 0);
    }
}

TEST_CASE("pairing against a quotient class is representative independent") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; t++) {
        BranchVector beven = oracles::random_branch(cfg, rng, 0, false);
        BranchVector bodd = oracles::random_branch(cfg, rng, 1, true);
        int via_class = branch_pairing(beven, bodd);
        // both lifts by hand
        int lift1 = dot(beven.v, bodd.v);
        int lift2 = dot(beven.v, bodd.v ^ branch_b_o(cfg));
        CHECK(lift1 == lift2);
        CHECK(via_class == lift1);
    }
}

TEST_CASE("ill-defined pairings are rejected") {
    BaseConfig cfg = cfg_gl(2, 2);
    BranchVector wq = pair_sum(cfg, {0, 1}, true);           // quotient, even
    BranchVector w1q = pair_sum(cfg, {0}, true);             // quotient, odd
    BranchVector odd_raw = pair_sum(cfg, {0}, false);        // un-quotiented, odd
    CHECK_THROWS_AS(branch_pairing(wq, w1q), std::domain_error);   // value changes with the even rep
    CHECK_THROWS_AS(branch_pairing(wq, odd_raw), std::domain_error);
    CHECK_NOTHROW(branch_pairing(wq, pair_sum(cfg, {0, 1}, true)));  // both even quotients are fine
}

TEST_CASE("weil pairing vanishes on the surface summand") {
    BaseConfig cfg = cfg_gl(2, 2);
    for (std::uint64_t ab = 0; ab < 16; ab++) {
        for (std::uint64_t a2 = 0; a2 < 16; a2++) {
            FibreElement x = pullback(cfg, SurfaceClass(BitVec::from_bits(4, ab)));
            FibreElement y = pullback(cfg, SurfaceClass(BitVec::from_bits(4, a2)));
            CHECK(weil_pairing(x, y) == 0);
        }
    }
}

TEST_CASE("weil pairing is alternating on transvection-type elements") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; t++) {
        FibreElement x = make_gl(cfg, Model::gl_even, oracles::random_surface(cfg, rng),
                                 pair_sum(cfg, {0, 2}, true), SurfaceClass::zero(cfg));
        CHECK(weil_pairing(x, x) == 0);
    }
}

TEST_CASE("weil pairing agrees with the raw formula") {
    for (auto [g, l] : {std::pair{2, 2}, {2, 3}, {3, 4}}) {
        BaseConfig cfg = cfg_gl(g, l);
        std::mt19937_64 rng(100 + g + l);
        for (int t = 0; t < 300; t++) {
            FibreElement x = oracles::random_element(Model::gl_even, cfg, rng);
            FibreElement y = oracles::random_element(Model::gl_even, cfg, rng);
            FibreElement z = oracles::random_element(Model::gl_even, cfg, rng);
            CHECK(weil_pairing(x, y) == oracles::weil_by_formula(x, y));
            CHECK(weil_pairing(x, y) == weil_pairing(y, x));
            CHECK(weil_pairing(add_linear(x, y), z) == (weil_pairing(x, z) ^ weil_pairing(y, z)));
        }
    }
}

TEST_CASE("weil pairing is non-degenerate on the even fibre") {
    for (auto [g, l] : {std::pair{2, 2}, {2, 4}}) {
        BaseConfig cfg = cfg_gl(g, l);
        int dim = index_bits(Model::gl_even, cfg);
        BitMat gram(dim, dim);
        for (int i = 0; i < dim; i++)
            for (int j = 0; j < dim; j++)
                if (weil_pairing(decode(Model::gl_even, cfg, 1ULL << i), decode(Model::gl_even, cfg, 1ULL << j)))
                    gram.set(i, j, true);
        CHECK(rank(gram) == dim);
    }
}

TEST_CASE("q_W values") {
    BaseConfig cfg = cfg_gl(2, 2);
    CHECK(qw(cfg, branch_pair(cfg, 0, 1)) == 1);
    CHECK(qw(cfg, BranchVector::zero(cfg, true)) == 0);

    BaseConfig cfg4 = cfg_gl(3, 4);
    BranchVector b = pair_sum(cfg4, {0, 1, 2, 3}, true);
    CHECK(qw(cfg4, b) == 0);
    // the other representative, b_5+...+b_8, by hand
    BitVec other = b.v ^ branch_b_o(cfg4);
    CHECK(other.popcount() == 4);
    CHECK((other.popcount() / 2) % 2 == 0);
}

TEST_CASE("q_W is well-defined on the quotient iff l is even") {
    // l even: both representatives agree for every even class
    for (int l : {2, 4}) {
        BaseConfig cfg = cfg_gl(2, l);
        for (std::uint64_t bitsv = 0; bitsv < (1ULL << cfg.n_branch()); bitsv++) {
            BitVec v = BitVec::from_bits(cfg.n_branch(), bitsv);
            if (v.parity() != 0) continue;
            int k1 = (v.popcount() / 2) % 2;
            int k2 = ((v ^ branch_b_o(cfg)).popcount() / 2) % 2;
            CHECK(k1 == k2);
        }
    }
    // l odd: the two representatives always disagree, and qw refuses
    BaseConfig cfg3 = cfg_gl(2, 3);
    BitVec v = BitVec::from_bits(cfg3.n_branch(), 0b11);
    CHECK((v.popcount() / 2) % 2 != ((v ^ branch_b_o(cfg3)).popcount() / 2) % 2);
    CHECK_THROWS_AS(qw(cfg3, pair_sum(cfg3, {0, 1}, true)), std::domain_error);
    CHECK_NOTHROW(qw(cfg3, pair_sum(cfg3, {0, 1}, false)));  // un-quotiented is fine
    CHECK_THROWS_AS(qw(cfg3, pair_sum(cfg3, {0}, false)), std::domain_error);  // odd parity
}

TEST_CASE("q values and refinement identity") {
    BaseConfig cfg = cfg_gl(2, 2);
    FibreElement zero = decode(Model::gl_even, cfg, 0);
    CHECK(q(zero) == 0);
    for (std::uint64_t ab = 0; ab < 16; ab++) {
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                FibreElement x = make_gl(cfg, Model::gl_even, SurfaceClass(BitVec::from_bits(4, ab)),
                                         pair_sum(cfg, {i, j}, true), SurfaceClass::zero(cfg));
                CHECK(q(x) == 1);
            }
        }
    }
    std::mt19937_64 rng(11);
    for (auto [g, l] : {std::pair{2, 2}, {2, 4}, {3, 4}}) {
        BaseConfig c = cfg_gl(g, l);
        for (int t = 0; t < 1000; t++) {
            FibreElement x = oracles::random_element(Model::gl_even, c, rng);
            FibreElement y = oracles::random_element(Model::gl_even, c, rng);
            CHECK(q(add_linear(x, y)) == (q(x) ^ q(y) ^ weil_pairing(x, y)));
        }
    }
    CHECK_THROWS_AS(q(decode(Model::gl_even, cfg_gl(2, 3), 0)), std::domain_error);
}

TEST_CASE("phi_sigma reference form") {
    BaseConfig cfg = cfg_gl(2, 2);
    CHECK(phi_sigma(cfg, SurfaceClass::zero(cfg)) == 0);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 500; t++) {
        SurfaceClass a = oracles::random_surface(cfg, rng);
        SurfaceClass b = oracles::random_surface(cfg, rng);
        CHECK((phi_sigma(cfg, a + b) ^ phi_sigma(cfg, a) ^ phi_sigma(cfg, b)) == symplectic_pairing(a, b));
    }

    // zero counts: 2^{2g-1} + 2^{g-1} for the arf=0 form, minus for arf=1
    for (int g : {2, 3, 4}) {
        for (int arf : {0, 1}) {
            BaseConfig c = cfg_gl(g, 2 * g - 2);
            c.arf = arf;
            long long zeros = 0;
            for (std::uint64_t bitsv = 0; bitsv < (1ULL << (2 * g)); bitsv++)
                if (phi_sigma(c, SurfaceClass(BitVec::from_bits(2 * g, bitsv))) == 0) zeros++;
            long long expect = (1LL << (2 * g - 1)) + (arf ? -1 : 1) * (1LL << (g - 1));
            CHECK(zeros == expect);
        }
    }
    // the 136-of-256 count at dimension 8
    BaseConfig c4 = cfg_gl(4, 6);
    long long zeros = 0;
    for (std::uint64_t bitsv = 0; bitsv < 256; bitsv++)
        if (phi_sigma(c4, SurfaceClass(BitVec::from_bits(8, bitsv))) == 0) zeros++;
    CHECK(zeros == 136);
}

TEST_CASE("phi_S is q shifted by l/2") {
    BaseConfig cfg2 = cfg_gl(2, 2);
    CHECK(phi_s(decode(Model::gl_even, cfg2, 0)) == 1);
    BaseConfig cfg4 = cfg_gl(2, 4);
    CHECK(phi_s(decode(Model::gl_even, cfg4, 0)) == 0);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 1000; t++) {
        FibreElement x = oracles::random_element(Model::gl_even, cfg4, rng);
        FibreElement y = oracles::random_element(Model::gl_even, cfg4, rng);
        int lhs = phi_s(add_linear(x, y)) ^ phi_s(x) ^ phi_s(y) ^ phi_s(decode(Model::gl_even, cfg4, 0));
        CHECK(lhs == weil_pairing(x, y));
    }
}

TEST_CASE("pullback and pushforward") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(19);
    for (int t = 0; t < 200; t++) {
        SurfaceClass a = oracles::random_surface(cfg, rng);
        CHECK(pushforward(pullback(cfg, a)).is_zero());
        FibreElement x = oracles::random_element(Model::gl_even, cfg, rng);
        CHECK(pushforward(x) == x.c);
        CHECK(weil_pairing(pullback(cfg, a), x) == symplectic_pairing(a, pushforward(x)));
    }
}

TEST_CASE("canonical quotient representatives are idempotent") {
    BaseConfig cfg = cfg_gl(2, 2);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; t++) {
        BranchVector b = oracles::random_branch(cfg, rng, static_cast<int>(t & 1), true);
        CHECK_FALSE(b.v.get(cfg.n_branch() - 1));
        BranchVector again(b.v, b.parity, true);
        CHECK(again == b);
    }
}

TEST_CASE("even fibre dimension is twice the spectral genus") {
    for (auto [g, l] : {std::pair{2, 2}, {2, 4}, {3, 4}, {3, 8}}) {
        BaseConfig cfg = cfg_gl(g, l);
        int gs = 2 * g - 1 + l;
        CHECK(index_bits(Model::gl_even, cfg) == 4 * g + 2 * l - 2);
        CHECK(index_bits(Model::gl_even, cfg) == 2 * gs);
    }
}

TEST_CASE("serialization round-trips and orders consistently") {
    std::mt19937_64 rng(29);
    BaseConfig cfg = cfg_gl(2, 2);
    for (Model m : {Model::gl_even, Model::gl_odd, Model::sl, Model::pgl0, Model::pgl1, Model::psl0,
                    Model::psl1}) {
        for (int t = 0; t < 100; t++) {
            FibreElement x = oracles::random_element(m, cfg, rng);
            CHECK(parse_fibre_element(cfg, serialize(x)) == x);
            CHECK(decode(m, cfg, encode(x)) == x);
            FibreElement y = oracles::random_element(m, cfg, rng);
            CHECK((ser_key(x) < ser_key(y)) == (serialize(x) < serialize(y)));
        }
    }
}
