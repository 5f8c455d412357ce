// Command-line front end: generators, verdicts, subdivision, reductions
// and the invariant suite, with deterministic JSON/DOT file output.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topopools/topopools.hpp"

namespace fs = std::filesystem;
using namespace topopools;

namespace {

struct CliOptions {
    std::vector<int> sizes;
    int m = 1;
    std::string kind = "chromatic";
    std::vector<std::string> formats = {"json"};
    std::string out_dir = ".";
    int simplex_dim = -1;
    std::string in_path;
    Caps caps;
};

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file: " + path.string());
    out << bytes;
}

bool wants(const CliOptions& opt, const std::string& format) {
    return std::find(opt.formats.begin(), opt.formats.end(), format) != opt.formats.end();
}

void emit_complex(const CliOptions& opt, const Complex& c, const std::string& stem) {
    fs::create_directories(opt.out_dir);
    if (wants(opt, "json"))
        write_file(fs::path(opt.out_dir) / (stem + ".json"), complex_to_json(c).dump(2) + "\n");
    if (wants(opt, "dot"))
        write_file(fs::path(opt.out_dir) / (stem + ".dot"), complex_to_dot(c, stem));
    if (wants(opt, "text"))
        std::cout << stem << ": dim " << c.dim() << ", " << c.facet_count() << " facets, "
                  << c.vertices().size() << " vertices, " << components(c).size()
                  << " components\n";
}

DivKind parse_kind(const std::string& kind) {
    if (kind == "bary" || kind == "barycentric")
        return DivKind::bary;
    if (kind == "chromatic")
        return DivKind::chromatic;
    throw ConfigError("unknown subdivision kind: " + kind);
}

int run_gen(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    emit_complex(opt, gen_input(cfg), "input");
    const Complex output = gen_output(cfg, opt.caps);
    emit_complex(opt, output, "output");
    if (wants(opt, "json"))
        write_file(fs::path(opt.out_dir) / "assignments.json",
                   assignments_json(output).dump(2) + "\n");
    std::cout << "input facets: " << gen_input(cfg).facet_count()
              << ", output facets: " << output.facet_count() << "\n";
    return 0;
}

int run_verdict(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    const Verdict v = equilibrium_verdict(cfg, true, opt.caps);
    std::cout << verdict_to_json(v).dump(2) << "\n";
    return v.decision == Decision::Exists ? 0 : 3;
}

int run_brute_force(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    const auto maps = brute_force_equilibria(cfg, opt.caps);
    nlohmann::ordered_json out;
    out["sizes"] = cfg.sizes;
    out["count"] = maps.size();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const VertexMap& m : maps) {
        nlohmann::ordered_json row;
        const PoolLabel& lead = m.table().begin()->second.pool_label();
        row["target_facet"] = lead.facet_tag ? nlohmann::ordered_json(*lead.facet_tag)
                                             : nlohmann::ordered_json(nullptr);
        row["map"] = vertex_map_to_json(m)["map"];
        rows.push_back(std::move(row));
    }
    out["equilibria"] = std::move(rows);
    std::cout << out.dump(2) << "\n";
    return 0;
}

Complex subdivide_source(const CliOptions& opt) {
    if (!opt.in_path.empty()) {
        std::ifstream in(opt.in_path);
        if (!in)
            throw ConfigError("cannot read complex file: " + opt.in_path);
        nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in);
        return complex_from_json(doc);
    }
    if (opt.simplex_dim < 0)
        throw ConfigError("subdivide needs --simplex <n> or --in <complex.json>");
    std::vector<Vertex> verts;
    for (int j = 0; j <= opt.simplex_dim; ++j)
        verts.push_back(Vertex::agent(j));
    return make_complex({Simplex::of(std::move(verts))});
}

int run_subdivide(const CliOptions& opt) {
    const Complex divided =
        iterate_div(subdivide_source(opt), opt.m, parse_kind(opt.kind), opt.caps.facet_cap);
    emit_complex(opt, divided, "subdivided");
    std::cout << "facets: " << divided.facet_count() << "\n";
    return 0;
}

int run_reduce(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    const int k = partition_input(cfg).k();
    if (k == 1) {
        std::cerr << "k=1: no reduction applies (equal pools, see `verdict`)\n";
        return 2;
    }
    const ReductionReport report = k == 2 ? build_2sa_to_2dp(cfg, opt.caps.m_bound, opt.caps).report
                                          : build_kdp_to_ksa(cfg, opt.caps).report;
    std::cout << reduction_report_to_json(report).dump(2) << "\n";
    return 0;
}

int run_swap(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    const Complex swapped = swap_m(cfg, opt.m);
    emit_complex(opt, swapped, "swap");
    nlohmann::ordered_json summary;
    summary["sizes"] = cfg.sizes;
    summary["m"] = opt.m;
    summary["schedule"] = "round cohorts: index == t mod (pools in class)";
    summary["facets"] = swapped.facet_count();
    summary["dim"] = swapped.dim();
    const auto shape = swap_shape(cfg, opt.m);
    summary["full_dimensional"] = shape.full_dim;
    summary["moved"] = shape.moved;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

// Surjections of `total` labeled miners onto q pools, by
// inclusion-exclusion; minus one for the stay-at-home assignment.
std::int64_t expected_output_facets(int q, int total) {
    auto powll = [](std::int64_t base, int exp) {
        std::int64_t out = 1;
        for (int i = 0; i < exp; ++i)
            out *= base;
        return out;
    };
    std::int64_t surjections = 0;
    std::int64_t binom = 1;
    for (int i = 0; i <= q; ++i) {
        surjections += (i % 2 == 0 ? 1 : -1) * binom * powll(q - i, total);
        binom = binom * (q - i) / (i + 1);
    }
    return surjections - 1;
}

int run_check(const CliOptions& opt) {
    const auto cfg = PoolConfig::from_sizes(opt.sizes);
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok)
            ++failures;
    };

    const Complex input = gen_input(cfg);
    const auto comps = components(input);
    report("input has q components", static_cast<int>(comps.size()) == cfg.q());
    {
        bool dims_ok = true;
        for (int p = 0; p < cfg.q(); ++p)
            dims_ok = dims_ok && comps[p].dim() == cfg.sizes[p] - 1;
        report("component dimensions match sizes", dims_ok);
    }

    const Partition part = partition_input(cfg);
    {
        std::set<int> sizes_seen;
        int pools = 0;
        for (const auto& cls : part.classes) {
            sizes_seen.insert(cls.size);
            pools += static_cast<int>(cls.pool_ids.size());
        }
        report("partition classes have distinct sizes",
               sizes_seen.size() == part.classes.size());
        report("partition covers all pools", pools == cfg.q());
    }

    {
        bool homeo_ok = true;
        const auto& facets = input.facets();
        for (std::size_t i = 0; i < facets.size(); ++i)
            for (std::size_t j = 0; j < facets.size(); ++j)
                homeo_ok = homeo_ok && (are_homeomorphic_pools(facets[i], facets[j]) ==
                                        (facets[i].size() == facets[j].size()));
        report("homeomorphism matches size equality", homeo_ok);
    }

    bool output_feasible = true;
    try {
        const Complex output = gen_output(cfg, opt.caps);
        report("output facet count matches enumeration oracle",
               static_cast<std::int64_t>(output.facet_count()) ==
                   expected_output_facets(cfg.q(), cfg.total_miners()));
        bool no_stay = true, dims = true;
        for (const Simplex& f : output.facets()) {
            no_stay = no_stay && no_stay_ok(f);
            dims = dims && f.dim() == cfg.total_miners() - 1;
        }
        report("all output facets pass no-stay", no_stay);
        report("all output facets are full dimension", dims);
        if (cfg.total_miners() <= 8) {
            const CarrierMap delta = task_carrier(cfg, opt.caps);
            report("task carrier is monotonic (exhaustive)",
                   check_monotonic(delta, cfg.total_miners() + 1).ok);
        }
    } catch (const SizeError&) {
        output_feasible = false;
        std::cout << "[skip] output complex beyond caps\n";
    }

    if (cfg.all_equal() && cfg.sizes[0] >= 2) {
        const VertexMap rot = rotation_map(cfg);
        report("rotation map is simplicial", is_simplicial(rot).ok);
        report("rotation image is one connected facet", certify_connected_image(rot).ok);
        report("rotation target passes no-stay", no_stay_ok(rot.codomain().facets().front()));
    }

    const Verdict verdict = equilibrium_verdict(cfg, false, opt.caps);
    report("verdict matches k <= 2 rule",
           (verdict.decision == Decision::Exists) == (verdict.k <= 2));
    {
        std::vector<int> sorted = cfg.sizes;
        std::sort(sorted.begin(), sorted.end());
        const Verdict again = equilibrium_verdict(PoolConfig::from_sizes(sorted), false, opt.caps);
        report("verdict is permutation invariant", again.decision == verdict.decision);
    }

    {
        const std::string a = complex_to_json(gen_input(cfg)).dump();
        const std::string b = complex_to_json(gen_input(cfg)).dump();
        const std::string c = complex_to_json(swap_m(cfg, 3)).dump();
        const std::string d = complex_to_json(swap_m(cfg, 3)).dump();
        report("serialization is deterministic", a == b && c == d);
    }

    if (output_feasible && cfg.total_miners() <= opt.caps.miner_cap) {
        const auto maps = brute_force_equilibria(cfg, opt.caps);
        bool all_pass = true;
        for (const VertexMap& m : maps)
            all_pass = all_pass && is_simplicial(m).ok && certify_connected_image(m).ok;
        report("brute-force equilibria pass all checks", all_pass);
        report("brute-force count consistent with verdict",
               (verdict.decision == Decision::Exists) == !maps.empty());
    }

    std::cout << (failures == 0 ? "all checks passed" : "checks failed") << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial topology engine for blockchain pooling equilibria"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool needs_sizes) {
        auto* sizes = sub->add_option("--sizes", opt.sizes, "pool sizes, e.g. 3,2,2")
                          ->delimiter(',');
        if (needs_sizes)
            sizes->required();
        sub->add_option("--format", opt.formats, "output formats: json, dot, text")
            ->delimiter(',');
        sub->add_option("--out", opt.out_dir, "output directory (default .)");
        sub->add_option("--miner-cap", opt.caps.miner_cap, "max total miners for enumeration");
        sub->add_option("--facet-cap", opt.caps.facet_cap, "max facets for any construction");
        sub->add_option("--m-bound", opt.caps.m_bound, "max M for sweeps");
    };

    auto* gen = app.add_subcommand("gen", "generate input/output complexes for a pool task");
    add_common(gen, true);

    auto* verdict = app.add_subcommand("verdict", "equilibrium verdict with certificate");
    add_common(verdict, true);

    auto* brute = app.add_subcommand("brute-force", "enumerate all equilibrium maps");
    add_common(brute, true);

    auto* subdivide = app.add_subcommand("subdivide", "barycentric/chromatic subdivision");
    add_common(subdivide, false);
    subdivide->add_option("--simplex", opt.simplex_dim, "subdivide the standard n-simplex");
    subdivide->add_option("--in", opt.in_path, "subdivide a complex from a JSON file");
    subdivide->add_option("--kind", opt.kind, "bary or chromatic (default chromatic)");
    subdivide->add_option("--m", opt.m, "number of rounds (default 1)");

    auto* reduce = app.add_subcommand("reduce", "run the reduction for the config's k");
    add_common(reduce, true);

    auto* swap = app.add_subcommand("swap", "apply m swap rounds and emit the complex");
    add_common(swap, true);
    swap->add_option("--m", opt.m, "number of rounds (default 1)");

    auto* check = app.add_subcommand("check", "run the invariant suite on a config");
    add_common(check, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed())
            return run_gen(opt);
        if (verdict->parsed())
            return run_verdict(opt);
        if (brute->parsed())
            return run_brute_force(opt);
        if (subdivide->parsed())
            return run_subdivide(opt);
        if (reduce->parsed())
            return run_reduce(opt);
        if (swap->parsed())
            return run_swap(opt);
        if (check->parsed())
            return run_check(opt);
        return 2;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
