#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hitmono/gf2.hpp"
#include "oracles.hpp"

using namespace hitmono;

namespace {
BitVec bits(const std::string& s) {
    BitVec v(static_cast<int>(s.size()));
    for (size_t k = 0; k < s.size(); k++)
        if (s[k] == '1') v.set(static_cast<int>(k), true);
    return v;
}

BitMat random_mat(int nr, int nc, std::mt19937_64& rng) {
    BitMat m(nr, nc);
    for (int i = 0; i < nr; i++)
        for (int j = 0; j < nc; j++)
            if (rng() & 1) m.set(i, j, true);
    return m;
}
}  // namespace

TEST_CASE("dot product basics") {
    CHECK(dot(bits("0000"), bits("1011")) == 0);
    CHECK(dot(bits("1100"), bits("0110")) == 1);
    CHECK_THROWS_AS(dot(bits("10"), bits("100")), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; t++) {
        BitVec u = BitVec::from_bits(40, rng());
        int by_loop = 0;
        for (int k = 0; k < 40; k++) by_loop ^= u.get(k) & u.get(k);
        CHECK(dot(u, u) == by_loop);
        CHECK(dot(u, u) == u.popcount() % 2);
    }
}

TEST_CASE("dot is bilinear") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; t++) {
        BitVec u = BitVec::from_bits(33, rng());
        BitVec v = BitVec::from_bits(33, rng());
        BitVec w = BitVec::from_bits(33, rng());
        CHECK(dot(u ^ v, w) == (dot(u, w) ^ dot(v, w)));
    }
}

TEST_CASE("rank basics") {
    CHECK(rank(BitMat::identity(17)) == 17);
    CHECK(rank(BitMat(9, 13)) == 0);
}

TEST_CASE("rank of random 8x8 matches row-space enumeration") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; t++) {
        BitMat m = random_mat(8, 8, rng);
        CHECK(rank(m) == oracles::rank_by_rowspace(m));
    }
}

TEST_CASE("rank equals rank of the transpose") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 60; t++) {
        int nr = 1 + static_cast<int>(rng() % 64);
        int nc = 1 + static_cast<int>(rng() % 64);
        BitMat m = random_mat(nr, nc, rng);
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("solve basics") {
    std::mt19937_64 rng(19);
    BitVec v = BitVec::from_bits(12, rng());
    auto x = solve(BitMat::identity(12), v);
    REQUIRE(x.has_value());
    CHECK(*x == v);

    BitVec nz = BitVec::unit(5, 3);
    CHECK_FALSE(solve(BitMat(5, 7), nz).has_value());
    CHECK(solve(BitMat(5, 7), BitVec(5)).has_value());
}

TEST_CASE("solve round-trips on consistent systems") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; t++) {
        int nr = 1 + static_cast<int>(rng() % 20);
        int nc = 1 + static_cast<int>(rng() % 20);
        BitMat m = random_mat(nr, nc, rng);
        // rhs built from a known solution, so the system is consistent
        BitVec x0 = BitVec::from_bits(nc, rng());
        BitVec rhs = m.mul(x0);
        auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        CHECK(m.mul(*x) == rhs);
        // deterministic output
        CHECK(*solve(m, rhs) == *x);
    }
}

TEST_CASE("hex serialization round-trips") {
    std::mt19937_64 rng(29);
    for (int dim : {1, 4, 7, 16, 23, 64}) {
        for (int t = 0; t < 20; t++) {
            BitVec v = BitVec::from_bits(dim, rng());
            CHECK(BitVec::from_hex(dim, v.to_hex()) == v);
        }
    }
    CHECK(bits("1100").to_hex() == "3");
    CHECK(BitVec(8).to_hex() == "00");
}
