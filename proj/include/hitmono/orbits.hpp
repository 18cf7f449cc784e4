#pragma once

// Orbit enumeration of the monodromy action on a fibre model, and the
// closed-form component counts it must reproduce.
//
// The fibre is enumerated through the packed index of fibre.hpp; generator
// actions are compiled to mask/xor operations on that index. The visited set
// is a flat atomic bitmap. Orbit representatives are the elements with
// minimal serialization key, so the resulting table is independent of
// generator order and worker count.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hitmono/config.hpp"
#include "hitmono/fibre.hpp"
#include "hitmono/invariants.hpp"
#include "hitmono/monodromy.hpp"

namespace hitmono {

struct StateCapExceeded : std::runtime_error {
    explicit StateCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Compiled generator actions on packed indices.

namespace detail {

struct EncodedLayout {
    Model model;
    BaseConfig cfg;
    int ns = 0;        // surface bits
    int nfree = 0;     // free branch bits
    int shift_b = 0;   // position of the branch field
    int shift_a = 0;   // position of the a field (if present)
    bool has_a = false, has_c = false, quotient = false;
    int degree = 0;
    int bits = 0;

    static EncodedLayout make(Model m, const BaseConfig& cfg) {
        EncodedLayout L;
        L.model = m;
        L.cfg = cfg;
        L.ns = cfg.dim_surface();
        L.has_a = model_has_a(m);
        L.has_c = model_has_c(m);
        L.quotient = model_quotient(m);
        L.degree = model_degree(m);
        L.nfree = L.quotient ? cfg.dim_w() : cfg.dim_branch_even();
        L.shift_b = L.has_c ? L.ns : 0;
        L.shift_a = L.shift_b + L.nfree;
        L.bits = index_bits(m, cfg);
        return L;
    }

    // Serialization-order key (a, full branch vector, c).
    std::uint64_t key(std::uint32_t idx) const {
        std::uint64_t c = has_c ? (idx & ((1ULL << ns) - 1)) : 0;
        std::uint64_t free = (idx >> shift_b) & ((1ULL << nfree) - 1);
        std::uint64_t a = has_a ? (idx >> shift_a) & ((1ULL << ns) - 1) : 0;
        int par = std::popcount(free) & 1;
        std::uint64_t bfull = free;
        if (par != degree) bfull |= 1ULL << nfree;
        std::uint64_t key = a;
        key = (key << cfg.n_branch()) | bfull;
        if (has_c) key = (key << ns) | c;
        return key;
    }
};

struct EncodedGen {
    bool tau = false;
    std::uint32_t mb = 0;  // parity mask for ((b_ij, b)), over the whole index
    std::uint32_t mc = 0;  // parity mask for <a_gen, c>
    std::uint32_t k = 0;   // constant term of the pairing
    std::uint32_t x = 0;   // xor applied when the pairing is 1
};

inline EncodedGen encode_generator(const EncodedLayout& L, const Generator& g) {
    EncodedGen e;
    if (g.kind == Generator::Kind::tau) {
        e.tau = true;
        return e;
    }
    const std::uint32_t free_ones = static_cast<std::uint32_t>(((1ULL << L.nfree) - 1) << L.shift_b);
    auto add_coord = [&](int t) {
        if (t < L.nfree) {
            e.mb ^= std::uint32_t(1) << (L.shift_b + t);
        } else if (t == L.nfree) {
            e.mb ^= free_ones;
            e.k ^= static_cast<std::uint32_t>(L.degree);
        }
        // t == nfree + 1 (quotient models): representative coordinate is 0
    };
    add_coord(g.i);
    add_coord(g.j);

    if (L.has_c) {
        // <a_gen, c'> enters the pairing exactly when the model has a c part.
        SurfaceClass d = symplectic_dual(g.a);
        for (int r = 0; r < L.ns; r++)
            if (d.v.get(r)) e.mc |= std::uint32_t(1) << r;
    }

    // xor mask: branch part b_ij (canonicalized), plus the a part when present.
    std::uint32_t db = 0;
    bool top = false;  // b_ij hits the fixed representative coordinate
    for (int t : {g.i, g.j}) {
        if (t < L.nfree) db ^= std::uint32_t(1) << t;
        else if (L.quotient && t == L.nfree + 1) top = true;
        else if (!L.quotient && t == L.nfree) { /* derived coordinate */ }
    }
    if (top) db ^= static_cast<std::uint32_t>((1ULL << L.nfree) - 1);
    e.x = db << L.shift_b;
    if (L.has_a) {
        for (int r = 0; r < L.ns; r++)
            if (g.a.v.get(r)) e.x |= std::uint32_t(1) << (L.shift_a + r);
    }
    return e;
}

inline std::uint32_t encoded_apply(const EncodedLayout& L, const EncodedGen& g, std::uint32_t idx) {
    if (g.tau) {
        if (!L.has_a || !L.has_c) return idx;
        std::uint32_t c = idx & ((std::uint32_t(1) << L.ns) - 1);
        return idx ^ (c << L.shift_a);
    }
    std::uint32_t t = (std::popcount(idx & g.mb) ^ std::popcount(idx & g.mc) ^ g.k) & 1;
    return t ? (idx ^ g.x) : idx;
}

// Fork-join over [0, n) in contiguous chunks.
template <typename F>
void parallel_chunks(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 4096) {
        body(std::size_t(0), n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; t++) {
        std::size_t lo = std::min(n, t * chunk), hi = std::min(n, (t + 1) * chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi, t] { body(lo, hi, t); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Orbit tables.

struct OrbitInfo {
    FibreElement representative;
    std::uint64_t size = 0;
    InvariantVector invariants;
    bool maximal = false;
};

struct OrbitTable {
    Model model;
    BaseConfig cfg;
    std::uint64_t fibre_size = 0;
    std::vector<OrbitInfo> orbits;  // sorted by representative serialization
};

struct OrbitOptions {
    int threads = 1;
    std::uint64_t state_cap = std::uint64_t(1) << 28;
    std::vector<Generator> generators;  // empty: bfs_generating_set(cfg)
};

inline OrbitTable enumerate_orbits(Model model, const BaseConfig& cfg, const OrbitOptions& opts = {}) {
    cfg.validate();
    const detail::EncodedLayout L = detail::EncodedLayout::make(model, cfg);
    const std::uint64_t n = fibre_size(model, cfg);
    if (n > opts.state_cap)
        throw StateCapExceeded("enumerate_orbits: fibre has " + std::to_string(n) +
                               " states, exceeding the cap of " + std::to_string(opts.state_cap));

    std::vector<Generator> gens = opts.generators.empty() ? bfs_generating_set(cfg) : opts.generators;
    std::vector<detail::EncodedGen> egens;
    egens.reserve(gens.size());
    for (const Generator& g : gens) {
        detail::EncodedGen e = detail::encode_generator(L, g);
        if (e.tau && (!L.has_a || !L.has_c)) continue;  // tau acts trivially here
        egens.push_back(e);
    }

    const std::size_t nwords = static_cast<std::size_t>((n + 63) / 64);
    std::vector<std::atomic<std::uint64_t>> visited(nwords);
    for (auto& w : visited) w.store(0, std::memory_order_relaxed);
    auto test_and_set = [&visited](std::uint64_t idx) {
        std::uint64_t mask = std::uint64_t(1) << (idx & 63);
        return (visited[idx >> 6].fetch_or(mask, std::memory_order_relaxed) & mask) != 0;
    };

    int threads = std::max(1, opts.threads);
    struct OrbitAcc {
        std::uint64_t size;
        std::uint64_t min_key;
        std::uint32_t min_idx;
    };
    std::vector<OrbitAcc> raw;

    std::vector<std::uint32_t> frontier, next;
    std::vector<std::vector<std::uint32_t>> local_next(threads);

    std::uint64_t seed_cursor = 0;
    while (true) {
        // next unvisited index
        while (seed_cursor < n) {
            std::uint64_t w = visited[seed_cursor >> 6].load(std::memory_order_relaxed);
            if ((seed_cursor & 63) == 0 && w == ~std::uint64_t(0)) { seed_cursor += 64; continue; }
            if (!((w >> (seed_cursor & 63)) & 1)) break;
            seed_cursor++;
        }
        if (seed_cursor >= n) break;

        std::uint32_t seed = static_cast<std::uint32_t>(seed_cursor);
        test_and_set(seed);
        OrbitAcc acc{1, L.key(seed), seed};
        frontier.assign(1, seed);
        while (!frontier.empty()) {
            std::vector<std::uint64_t> sizes(threads, 0);
            std::vector<std::uint64_t> min_keys(threads, ~std::uint64_t(0));
            std::vector<std::uint32_t> min_idxs(threads, 0);
            for (auto& v : local_next) v.clear();
            detail::parallel_chunks(frontier.size(), threads, [&](std::size_t lo, std::size_t hi, int tid) {
                auto& out = local_next[tid];
                out.clear();
                std::uint64_t cnt = 0, mk = ~std::uint64_t(0);
                std::uint32_t mi = 0;
                for (std::size_t s = lo; s < hi; s++) {
                    std::uint32_t cur = frontier[s];
                    for (const auto& g : egens) {
                        std::uint32_t img = detail::encoded_apply(L, g, cur);
                        if (img == cur || test_and_set(img)) continue;
                        out.push_back(img);
                        cnt++;
                        std::uint64_t key = L.key(img);
                        if (key < mk) { mk = key; mi = img; }
                    }
                }
                sizes[tid] = cnt;
                min_keys[tid] = mk;
                min_idxs[tid] = mi;
            });
            next.clear();
            for (int t = 0; t < threads; t++) {
                acc.size += sizes[t];
                if (min_keys[t] < acc.min_key) { acc.min_key = min_keys[t]; acc.min_idx = min_idxs[t]; }
                next.insert(next.end(), local_next[t].begin(), local_next[t].end());
            }
            frontier.swap(next);
        }
        raw.push_back(acc);
    }

    OrbitTable table;
    table.model = model;
    table.cfg = cfg;
    table.fibre_size = n;
    std::sort(raw.begin(), raw.end(), [](const OrbitAcc& a, const OrbitAcc& b) { return a.min_key < b.min_key; });
    std::uint64_t covered = 0;
    const bool even_l = cfg.deg_l % 2 == 0;
    for (const OrbitAcc& acc : raw) {
        OrbitInfo info;
        info.representative = decode(model, cfg, acc.min_idx);
        info.size = acc.size;
        info.maximal = is_maximal(info.representative);
        if (even_l) info.invariants = compute_invariants(info.representative);
        covered += acc.size;
        table.orbits.push_back(std::move(info));
    }
    if (covered != n) throw std::logic_error("enumerate_orbits: orbit sizes do not cover the fibre");
    return table;
}

// ---------------------------------------------------------------------------
// Closed-form component counts.

struct ExpectedCount {
    std::uint64_t total = 0;
    std::uint64_t maximal = 0;
};

inline ExpectedCount expected_count(Model model, const BaseConfig& cfg) {
    cfg.validate();
    cfg.require_even_l("expected_count");
    const long long p = 1LL << cfg.dim_surface();  // 2^{2g}
    const long long l = cfg.deg_l;
    auto u = [](long long v) { return static_cast<std::uint64_t>(v); };
    switch (model) {
        case Model::gl_even: return {u(3 * p + (l - 4) / 2), u(p)};
        case Model::sl: return {u(2 * p + l - 1), u(2 * p)};
        case Model::pgl0: return {u(p + l / 2), 1};
        case Model::pgl1: return {u(p + l / 2 - 1), 0};
        case Model::psl0: return {u(l + 1), 2};
        case Model::psl1: return {u(l), 0};
        case Model::gl_odd:
            throw std::invalid_argument("expected_count: no closed-form count for the odd fibre");
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Classification report.

struct ClassifyReport {
    long long probes = 0;
    long long constancy_failures = 0;
    // Groups of representatives of distinct non-maximal orbits sharing one
    // invariant vector.
    std::vector<std::vector<std::string>> duplicate_invariants;
    long long maximal_label_mismatches = 0;

    bool all_ok() const {
        return constancy_failures == 0 && duplicate_invariants.empty() && maximal_label_mismatches == 0;
    }
};

inline ClassifyReport classify_orbits(const OrbitTable& table, long long probes, std::uint64_t seed) {
    const BaseConfig& cfg = table.cfg;
    cfg.require_even_l("classify_orbits");
    ClassifyReport rep;

    for (const OrbitInfo& o : table.orbits)
        if (o.maximal != is_maximal(o.representative)) rep.maximal_label_mismatches++;

    // Invariance along random edges; by connectivity this is constancy on
    // orbits.
    std::vector<Generator> gens = bfs_generating_set(cfg);
    std::mt19937_64 rng(seed);
    const std::uint64_t n = table.fibre_size;
    for (long long t = 0; t < probes; t++) {
        std::uint32_t idx = static_cast<std::uint32_t>(rng() % n);
        FibreElement x = decode(table.model, cfg, idx);
        const Generator& g = gens[rng() % gens.size()];
        FibreElement y = apply(g, x);
        rep.probes++;
        if (!(compute_invariants(x).key() == compute_invariants(y).key())) rep.constancy_failures++;
    }

    std::map<std::string, std::vector<std::string>> by_inv;
    for (const OrbitInfo& o : table.orbits)
        if (!o.maximal) by_inv[o.invariants.key()].push_back(serialize(o.representative));
    for (auto& [k, reps] : by_inv)
        if (reps.size() > 1) rep.duplicate_invariants.push_back(reps);
    return rep;
}

}  // namespace hitmono
