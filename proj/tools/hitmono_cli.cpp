// Command-line front end: orbit enumeration, component counting and the
// verification reports, emitted as versioned JSON (or lossy CSV for tables).
//
// Exit codes: 0 all checks passed, 1 check failure, 2 invalid configuration,
// 3 state cap exceeded.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitmono/cocycle.hpp"
#include "hitmono/config.hpp"
#include "hitmono/group.hpp"
#include "hitmono/invariants.hpp"
#include "hitmono/monodromy.hpp"
#include "hitmono/orbits.hpp"
#include "hitmono/so22.hpp"
#include "hitmono/table_io.hpp"

namespace {

using namespace hitmono;
using ordered_json = nlohmann::ordered_json;

struct RunSpec {
    std::string command;
    std::string group = "gl2r";
    int genus = 2;
    int deg_l = -1;  // default: 2g-2 (canonical), or 4g-4 for so22
    std::string emit = "json";
    int threads = 1;
    std::uint64_t seed = 1;
    std::uint64_t state_cap = std::uint64_t(1) << 28;
    bool allow_degree_override = false;
    long long samples = 1000;
};

Model model_for_group(const std::string& g) {
    if (g == "gl2r") return Model::gl_even;
    if (g == "gl2r-odd") return Model::gl_odd;
    if (g == "sl2r") return Model::sl;
    if (g == "pgl2r-0") return Model::pgl0;
    if (g == "pgl2r-1") return Model::pgl1;
    if (g == "psl2r-0") return Model::psl0;
    if (g == "psl2r-1") return Model::psl1;
    throw std::invalid_argument("unknown group tag '" + g + "'");
}

BaseConfig make_config(const RunSpec& spec) {
    BaseConfig cfg;
    cfg.genus = spec.genus;
    if (spec.group == "so22") {
        int want = 4 * spec.genus - 4;
        if (spec.deg_l >= 0 && spec.deg_l != want)
            throw std::invalid_argument("so22: deg-l is determined by the genus (" + std::to_string(want) + ")");
        cfg.deg_l = want;
    } else {
        cfg.deg_l = spec.deg_l >= 0 ? spec.deg_l : 2 * spec.genus - 2;
    }
    cfg.allow_degree_override = spec.allow_degree_override;
    cfg.validate();
    return cfg;
}

void require_even_for_real_fibres(const BaseConfig& cfg) {
    if (cfg.deg_l % 2 != 0)
        throw std::invalid_argument("real-fibre commands require an even deg-l");
}

ordered_json meta(const RunSpec& spec, const BaseConfig& cfg, bool uses_seed) {
    ordered_json j;
    j["schema"] = "1";
    j["command"] = spec.command;
    j["group"] = spec.group;
    j["genus"] = cfg.genus;
    j["deg_l"] = cfg.deg_l;
    if (uses_seed)
        j["seed"] = spec.seed;
    else
        j["seed"] = "ignored (exhaustive)";
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_count(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    require_even_for_real_fibres(cfg);
    OrbitOptions opts;
    opts.threads = spec.threads;
    opts.state_cap = spec.state_cap;

    std::uint64_t computed, expected, max_computed = 0, max_expected = 0;
    bool have_maximal = spec.group != "so22";
    if (spec.group == "so22") {
        So22Config so{spec.genus};
        OrbitTable t = so22_orbit_table(so, opts);
        computed = t.orbits.size();
        expected = so22_expected_count(so);
    } else {
        Model m = model_for_group(spec.group);
        OrbitTable t = enumerate_orbits(m, cfg, opts);
        ExpectedCount e = expected_count(m, cfg);
        computed = t.orbits.size();
        expected = e.total;
        for (const auto& o : t.orbits)
            if (o.maximal) max_computed++;
        max_expected = e.maximal;
    }
    ordered_json j = meta(spec, cfg, false);
    j["computed"] = computed;
    j["expected"] = expected;
    j["match"] = (computed == expected);
    if (have_maximal) {
        j["maximal_computed"] = max_computed;
        j["maximal_expected"] = max_expected;
        j["maximal_match"] = (max_computed == max_expected);
    }
    emit(j);
    bool ok = computed == expected && (!have_maximal || max_computed == max_expected);
    return ok ? 0 : 1;
}

int cmd_orbits(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    require_even_for_real_fibres(cfg);
    OrbitOptions opts;
    opts.threads = spec.threads;
    opts.state_cap = spec.state_cap;
    OrbitTable t;
    bool so22 = spec.group == "so22";
    So22Config so{spec.genus};
    if (so22) {
        t = so22_orbit_table(so, opts);
    } else {
        t = enumerate_orbits(model_for_group(spec.group), cfg, opts);
    }
    if (spec.emit == "csv") {
        std::cout << orbit_table_to_csv(t);
    } else {
        ordered_json j = orbit_table_to_json(t);
        j["command"] = spec.command;
        if (so22) {
            // per-block branch weight profiles label the restricted orbits
            for (size_t k = 0; k < t.orbits.size(); k++) {
                auto [m1, m2] = block_weight_profile(so, t.orbits[k].representative);
                j["orbits"][k]["block_weights"] = {m1, m2};
            }
        }
        emit(j);
    }
    return 0;
}

int cmd_invariants(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    require_even_for_real_fibres(cfg);
    if (spec.group == "so22" || spec.group == "gl2r-odd")
        throw std::invalid_argument("invariants: needs one of the four real group fibres");
    OrbitOptions opts;
    opts.threads = spec.threads;
    opts.state_cap = spec.state_cap;
    Model m = model_for_group(spec.group);
    OrbitTable t = enumerate_orbits(m, cfg, opts);
    ClassifyReport rep = classify_orbits(t, spec.samples, spec.seed);

    ordered_json j = meta(spec, cfg, true);
    j["orbit_count"] = t.orbits.size();
    j["probes"] = rep.probes;
    j["constancy_failures"] = rep.constancy_failures;
    j["maximal_label_mismatches"] = rep.maximal_label_mismatches;
    ordered_json dups = ordered_json::array();
    for (const auto& grp : rep.duplicate_invariants) dups.push_back(grp);
    j["non_maximal_orbits_sharing_invariants"] = dups;
    j["orbits"] = orbit_table_to_json(t)["orbits"];
    j["pass"] = rep.all_ok();
    emit(j);
    return rep.all_ok() ? 0 : 1;
}

int cmd_verify_group(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    std::mt19937_64 rng(spec.seed);
    auto rand_surface = [&] {
        return SurfaceClass(BitVec::from_bits(cfg.dim_surface(), rng() & ((1ULL << cfg.dim_surface()) - 1)));
    };
    auto rand_word = [&](int len) {
        std::vector<Generator> w;
        for (int t = 0; t < len; t++) {
            if (rng() % 8 == 0) {
                w.push_back(Generator::make_tau());
            } else {
                int i = static_cast<int>(rng() % cfg.n_branch()), j;
                do { j = static_cast<int>(rng() % cfg.n_branch()); } while (j == i);
                w.push_back(Generator::make_swap(cfg, std::min(i, j), std::max(i, j), rand_surface()));
            }
        }
        return w;
    };

    long long member_fail = 0, roundtrip_fail = 0;
    ordered_json certs = ordered_json::array();
    for (long long t = 0; t < spec.samples; t++) {
        BlockElement m = from_word(cfg, rand_word(2 + static_cast<int>(rng() % 10)));
        if (!is_in_group(m)) { member_fail++; continue; }
        std::vector<Generator> word = decompose_to_word(m);
        if (!block_equal(from_word(cfg, word), m)) roundtrip_fail++;
        if (certs.size() < 3) {
            ordered_json cert = ordered_json::array();
            for (const Generator& g : word) {
                if (g.kind == Generator::Kind::tau) {
                    cert.push_back({{"gen", "tau"}});
                } else {
                    cert.push_back({{"gen", "swap"}, {"i", g.i + 1}, {"j", g.j + 1}, {"a", g.a.v.to_hex()}});
                }
            }
            certs.push_back(cert);
        }
    }
    ordered_json j = meta(spec, cfg, true);
    j["samples"] = spec.samples;
    j["membership_failures"] = member_fail;
    j["roundtrip_failures"] = roundtrip_fail;
    j["group_order"] = u128_to_string(group_order(cfg));
    j["sample_certificates"] = certs;
    j["pass"] = (member_fail == 0 && roundtrip_fail == 0);
    emit(j);
    return (member_fail == 0 && roundtrip_fail == 0) ? 0 : 1;
}

int cmd_verify_relations(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    RelationReport rep = verify_relations(cfg, static_cast<int>(spec.samples), spec.seed);
    ordered_json j = meta(spec, cfg, true);
    j["checked"] = rep.checked;
    j["failures"] = rep.failures;
    j["messages"] = rep.messages;
    j["pass"] = rep.all_ok();
    emit(j);
    return rep.all_ok() ? 0 : 1;
}

int cmd_verify_cocycle(const RunSpec& spec) {
    BaseConfig cfg = make_config(spec);
    require_even_for_real_fibres(cfg);
    bool exhaustive = fibre_size(Model::gl_odd, cfg) <= (1 << 12);
    CocycleReport rep = check_cocycle(cfg, static_cast<int>(spec.samples), spec.seed, exhaustive);
    ordered_json j = meta(spec, cfg, true);
    j["affine_checked"] = rep.affine_checked;
    j["affine_mismatches"] = rep.affine_mismatches;
    j["relation_checked"] = rep.relation_checked;
    j["relation_mismatches"] = rep.relation_mismatches;
    j["messages"] = rep.messages;
    j["pass"] = rep.all_ok();
    emit(j);
    return rep.all_ok() ? 0 : 1;
}

int cmd_so22(const RunSpec& spec) {
    RunSpec s = spec;
    s.group = "so22";
    BaseConfig cfg = make_config(s);
    So22Config so{spec.genus};
    OrbitOptions opts;
    opts.threads = spec.threads;
    opts.state_cap = spec.state_cap;

    So22Count cnt = so22_orbit_count(so, opts);

    // Membership sampling over admissible words.
    std::mt19937_64 rng(spec.seed);
    std::vector<Generator> gens = admissible_generators(so);
    long long member_fail = 0;
    for (long long t = 0; t < spec.samples; t++) {
        std::vector<Generator> w;
        int len = 2 + static_cast<int>(rng() % 10);
        for (int q = 0; q < len; q++) w.push_back(gens[rng() % gens.size()]);
        if (!so22_is_in_group(from_word(cfg, w), so)) member_fail++;
    }

    // The distinguished fixed point.
    FibreElement fixed = make_gl(cfg, Model::gl_even, SurfaceClass::zero(cfg), block_sum_class(so),
                                 SurfaceClass::zero(cfg));
    bool fixed_ok = true;
    for (const Generator& g : gens)
        if (!(apply(g, fixed) == fixed)) fixed_ok = false;

    ordered_json j = meta(s, cfg, true);
    j["admissible_generators"] = gens.size();
    j["computed"] = cnt.computed;
    j["expected"] = cnt.expected;
    j["match"] = cnt.match();
    j["membership_failures"] = member_fail;
    j["block_sum_point_fixed"] = fixed_ok;
    j["pass"] = cnt.match() && member_fail == 0 && fixed_ok;
    emit(j);
    return (cnt.match() && member_fail == 0 && fixed_ok) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mod-2 monodromy of rank-2 twisted Hitchin systems: orbit tables, component counts, group checks"};
    app.require_subcommand(1);

    RunSpec spec;
    auto add_common = [&](CLI::App* c, bool group_flag) {
        if (group_flag)
            c->add_option("--group", spec.group,
                          "gl2r | gl2r-odd | sl2r | pgl2r-0 | pgl2r-1 | psl2r-0 | psl2r-1 | so22");
        c->add_option("--genus", spec.genus, "genus of the base surface (>= 2)");
        c->add_option("--deg-l", spec.deg_l, "degree of the twisting bundle (default 2g-2; so22: 4g-4)");
        c->add_option("--emit", spec.emit, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--threads", spec.threads, "worker threads (results are thread-count independent)");
        c->add_option("--seed", spec.seed, "seed for sampling-based verification");
        c->add_option("--state-cap", spec.state_cap, "maximum fibre size for orbit search");
        c->add_option("--samples", spec.samples, "sample count for sampling-based verification");
        c->add_flag("--allow-degree-override", spec.allow_degree_override,
                    "permit deg-l below 2g-2 (outside the standing degree hypothesis)");
    };

    for (const char* name : {"count", "orbits", "invariants", "verify-group", "verify-relations",
                             "verify-cocycle", "so22"}) {
        CLI::App* c = app.add_subcommand(name);
        add_common(c, std::string(name) != "so22");
    }

    CLI11_PARSE(app, argc, argv);
    spec.command = app.get_subcommands().front()->get_name();

    try {
        if (spec.command == "count") return cmd_count(spec);
        if (spec.command == "orbits") return cmd_orbits(spec);
        if (spec.command == "invariants") return cmd_invariants(spec);
        if (spec.command == "verify-group") return cmd_verify_group(spec);
        if (spec.command == "verify-relations") return cmd_verify_relations(spec);
        if (spec.command == "verify-cocycle") return cmd_verify_cocycle(spec);
        if (spec.command == "so22") return cmd_so22(spec);
    } catch (const hitmono::StateCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
