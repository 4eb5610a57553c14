// Command-line front end: parses group/space/bundle inputs, runs the
// library's computations and self-checks, and emits one machine-readable
// JSON report per run on stdout (human summary on stderr).
//
// Exit codes: 0 all checks pass, 1 a check failed (witnesses in the report),
// 2 input or precondition error.

#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "delocx/corpus.hpp"
#include "delocx/dnc.hpp"
#include "delocx/io.hpp"

using namespace delocx;
using io::json;
using io::Report;

namespace {

struct Job {
    std::string group_file, space_file, bundle_file, corpus, out_file;
    int degree = -1;
    int threads = 1;
    unsigned seed = 12345;
    int tau = -1;
};

void emit(const Report& report, const Job& opt) {
    std::cout << report.dump();
    if (!opt.out_file.empty()) {
        std::ofstream out(opt.out_file);
        if (!out) throw InputError("cannot write report to " + opt.out_file);
        out << report.dump();
    }
    std::cerr << "checks passed: " << report.doc["checks"]["passed"]
              << ", failed: " << report.doc["checks"]["failed"] << "\n";
}

Report run_hp_group(const Job& opt) {
    Report report("hp-group");
    report.doc["inputs"] = {{"group", opt.group_file}};
    auto pg = io::parse_group(io::load_json_file(opt.group_file));
    const auto& g = pg.group;
    auto classes = conjugacy_classes(g);
    auto hp = burghelea_hp(g);
    int oracle = hh0_group_oracle(g, io::enumeration_cap(500));

    json class_list = json::array();
    for (const auto& c : classes)
        class_list.push_back({{"representative", c.representative},
                              {"size", c.members.size()}});
    report.doc["results"] = {{"order", g.order()},
                             {"exponent", g.exponent()},
                             {"conjugacy_classes", class_list},
                             {"hp_even", hp.even_dim},
                             {"hp_odd", hp.odd_dim},
                             {"hh0_oracle", oracle}};
    report.check(hp.even_dim == static_cast<int>(classes.size()),
                 "hp_even != number of conjugacy classes");
    report.check(hp.even_dim == oracle, "hp_even != hh0 oracle");
    report.check(hp.odd_dim == 0, "hp_odd != 0");
    return report;
}

Report run_cohomology(const Job& opt) {
    Report report("cohomology");
    report.doc["inputs"] = {{"space", opt.space_file}, {"degree", opt.degree}};
    auto space = io::parse_space(io::load_json_file(opt.space_file));
    auto validation = validate_gcomplex(space.action);
    if (!validation.valid || !validation.regular)
        throw NotRegular("input action is not valid and regular: " +
                         (validation.violations.empty() ? std::string("unknown")
                                                        : validation.violations.front()));
    const int dim = space.action.complex().dim();
    std::vector<int> degrees;
    if (opt.degree >= 0) degrees.push_back(opt.degree);
    else
        for (int n = 0; n <= dim; ++n) degrees.push_back(n);

    bool quotient_ok = true;
    SimplicialComplex quotient = SimplicialComplex::empty();
    std::string quotient_note;
    try {
        quotient = quotient_complex(space.action);
    } catch (const NotSimplicialQuotient& e) {
        quotient_ok = false;
        quotient_note = e.what();
    }

    json per_degree = json::array();
    for (int n : degrees) {
        auto total = total_cohomology(space.action, n);
        int oracle = invariant_oracle(space.action, n);
        json row = {{"degree", n}, {"total_dim", total.dim}, {"invariant_oracle", oracle}};
        report.check(total.dim == oracle,
                     "degree " + std::to_string(n) + ": total != invariant oracle");
        if (quotient_ok) {
            int qdim = simplicial_cohomology_dim(quotient, n);
            row["quotient_oracle"] = qdim;
            report.check(total.dim == qdim,
                         "degree " + std::to_string(n) + ": total != quotient oracle");
        }
        per_degree.push_back(row);
    }
    report.doc["results"] = {{"dim", dim},
                             {"group_order", space.action.group().order()},
                             {"per_degree", per_degree}};
    if (!quotient_ok) report.doc["results"]["quotient_note"] = quotient_note;
    return report;
}

Report run_deloc(const Job& opt) {
    Report report("deloc");
    report.doc["inputs"] = {{"space", opt.space_file}, {"seed", opt.seed}};
    auto space = io::parse_space(io::load_json_file(opt.space_file));
    auto dims = deloc_cohomology(space.action, opt.threads);

    json per_class = json::array();
    for (const auto& [rep, degree_dims] : dims.per_class)
        per_class.push_back({{"class_representative", rep}, {"dims", degree_dims}});
    report.doc["results"] = {{"per_class", per_class},
                             {"even", dims.even},
                             {"odd", dims.odd}};

    // randomized trace property: 100 pairs
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    const auto& kg = space.action;
    bool trace_ok = true;
    for (int trial = 0; trial < 100 && trace_ok; ++trial) {
        GroupoidAlgebraElement a, b;
        for (int v = 0; v < kg.complex().vertex_count(); ++v)
            for (Elem g = 0; g < kg.group().order(); ++g) {
                int ca = coef(rng), cb = coef(rng);
                if (ca != 0) a.add(v, g, Cyclotomic(Rat(ca)));
                if (cb != 0) b.add(v, g, Cyclotomic(Rat(cb)));
            }
        trace_ok = tuxu_trace(kg, convolve(kg, a, b)) == tuxu_trace(kg, convolve(kg, b, a));
    }
    report.doc["results"]["trace_property_pairs"] = 100;
    report.check(trace_ok, "tuxu_trace(a*b) != tuxu_trace(b*a)");

    if (kg.complex().dim() <= 0 && !kg.complex().is_empty()) {
        int oracle = hh0_groupoid_oracle(kg, io::enumeration_cap(2000));
        report.doc["results"]["hh0_groupoid_oracle"] = oracle;
        report.check(oracle == dims.even, "groupoid HH0 oracle != delocalized H^0 total");
    }
    return report;
}

Report run_pairing(const Job& opt) {
    Report report("pairing");
    report.doc["inputs"] = {{"space", opt.space_file}};
    auto space = io::parse_space(io::load_json_file(opt.space_file));
    if (!space.has_orientation)
        throw NotOriented("pairing requires an orientation in the space file");

    json classes = json::array();
    for (const auto& cls : conjugacy_classes(space.action.group())) {
        auto fix = fixed_subcomplex(space.action, cls.representative);
        json row = {{"class_representative", cls.representative}};
        if (fix.complex.is_empty()) {
            row["status"] = "empty fixed set";
            classes.push_back(row);
            continue;
        }
        Orientation orientation;
        if (cls.representative == space.action.group().identity()) {
            orientation = space.orientation;
        } else if (fix.complex.dim() == 0) {
            orientation = Orientation{std::vector<int>(fix.complex.count(0), 1)};
        } else {
            row["status"] = "no orientation data for this fixed set";
            classes.push_back(row);
            continue;
        }
        bool closes = false;
        try {
            closes = check_orientation(fix.complex, orientation);
        } catch (const Error&) {
        }
        if (!closes || !orientation_preserved(fix.with_action, orientation)) {
            row["status"] = "orientation not valid or not preserved";
            classes.push_back(row);
            continue;
        }
        row["status"] = "checked";
        json grams = json::array();
        for (int k = 0; k <= fix.complex.dim(); ++k) {
            auto gram = pairing_gram(fix.with_action, orientation, k);
            grams.push_back({{"degree", k},
                             {"dim_left", gram.dim_left},
                             {"dim_right", gram.dim_right},
                             {"perfect", gram.perfect}});
            report.check(gram.perfect, "class " + std::to_string(cls.representative) +
                                           " degree " + std::to_string(k) +
                                           ": pairing not perfect");
        }
        row["gram"] = grams;
        classes.push_back(row);
    }
    report.doc["results"] = {{"classes", classes}};
    return report;
}

Report run_assembly_check(const Job& opt) {
    Report report("assembly-check");
    if (opt.corpus == "builtin") {
        report.doc["inputs"] = {{"corpus", "builtin"}};
        auto entries = corpus::builtin_index_corpus();
        auto summary = chern_assembly_check(entries);
        json rows = json::array();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            rows.push_back({{"name", entries[i].name},
                            {"lhs", summary.reports[i].lhs.to_string()},
                            {"rhs", summary.reports[i].rhs.to_string()},
                            {"equal", summary.reports[i].equal}});
            report.check(summary.reports[i].equal, entries[i].name + ": lhs != rhs");
        }
        report.doc["results"] = {{"entries", rows},
                                 {"total", summary.total},
                                 {"failures", summary.failures}};
        return report;
    }
    if (opt.space_file.empty() || opt.bundle_file.empty())
        throw InputError("assembly-check needs --corpus builtin or --space and --bundle");
    report.doc["inputs"] = {{"space", opt.space_file},
                            {"bundle", opt.bundle_file},
                            {"tau", opt.tau}};
    auto space = io::parse_space(io::load_json_file(opt.space_file));
    auto bundle = io::parse_bundle(io::load_json_file(opt.bundle_file), space.action);
    std::vector<CyclicTrace> taus;
    if (opt.tau >= 0) taus.push_back(corpus::trace_at(space.action.group(), opt.tau));
    else taus = burghelea_hp(space.action.group()).basis;
    json rows = json::array();
    for (const auto& tau : taus) {
        auto r = index_pairing(bundle, tau);
        rows.push_back({{"class_representative", tau.class_rep},
                        {"lhs", r.lhs.to_string()},
                        {"rhs", r.rhs.to_string()},
                        {"equal", r.equal}});
        report.check(r.equal, "tau at " + std::to_string(tau.class_rep) + ": lhs != rhs");
    }
    report.doc["results"] = {{"pairings", rows}};
    return report;
}

Report run_umkehr(const Job& opt) {
    Report report("umkehr");
    report.doc["inputs"] = {{"corpus", "builtin"}};
    json rows = json::array();
    for (const auto& pair : corpus::builtin_composable_pairs()) {
        auto functorial = check_functoriality(pair.f, pair.g);
        auto proj_f = check_projection_formula(pair.f);
        auto proj_g = check_projection_formula(pair.g);
        json shifts = json::array();
        for (const auto& [rep, shift] : pair.f.degree_shifts())
            shifts.push_back({{"class_representative", rep}, {"shift", shift}});
        rows.push_back({{"name", pair.name},
                        {"functorial", functorial.all_equal},
                        {"classes_checked", functorial.classes_checked},
                        {"classes_skipped", functorial.classes_skipped},
                        {"comparisons", functorial.comparisons},
                        {"projection_formula_f", proj_f.all_equal},
                        {"projection_formula_g", proj_g.all_equal},
                        {"degree_shifts_f", shifts}});
        report.check(functorial.all_equal, pair.name + ": functoriality failed");
        report.check(proj_f.all_equal && proj_g.all_equal,
                     pair.name + ": projection formula failed");
    }
    report.doc["results"] = {{"pairs", rows}};
    return report;
}

Report run_dnc_check(const Job& opt) {
    Report report("dnc-check");
    report.doc["inputs"] = {{"seed", opt.seed}};

    auto roundtrip = check_psi_roundtrip(2, 3, 10000, 1e-12, opt.seed);
    report.check(roundtrip.pass, "psi round-trip exceeded 1e-12");

    auto linear_a = make_pair_map(
        3, 1, 3, 1,
        [](const RealVec& v) {
            return RealVec{2.0 * v[0] + v[1] - v[2], 3.0 * v[1] + v[2], -v[1] + 4.0 * v[2]};
        },
        [](const RealVec&) {
            return RealMat{{2, 1, -1}, {0, 3, 1}, {0, -1, 4}};
        });
    auto linear_b = make_pair_map(
        3, 1, 3, 1,
        [](const RealVec& v) {
            return RealVec{v[0], v[1] - v[2], 2.0 * v[2]};
        },
        [](const RealVec&) {
            return RealMat{{1, 0, 0}, {0, 1, -1}, {0, 0, 2}};
        });
    auto linear = check_dnc_functoriality(linear_a, linear_b, 1000, 1e-12, opt.seed);
    report.check(linear.pass, "linear functoriality residual exceeded 1e-12");

    auto poly_a = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{v[0] + 0.25 * v[0] * v[0], v[1] * (1.0 + 0.5 * v[0] + 0.25 * v[1])};
    });
    auto poly_b = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{2.0 * v[0], v[1] + 0.125 * v[1] * v[1] - 0.5 * v[0] * v[1]};
    });
    auto poly = check_dnc_functoriality(poly_a, poly_b, 1000, 1e-8, opt.seed);
    report.check(poly.pass, "polynomial functoriality residual exceeded 1e-8");

    auto cubic = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{v[0], v[1] + v[1] * v[1] * v[1]};
    });
    auto continuity_cubic = check_dnc_continuity(cubic, 100, 1e-6, opt.seed);
    auto continuity_poly = check_dnc_continuity(poly_a, 100, 1e-6, opt.seed);
    report.check(continuity_cubic.pass && continuity_poly.pass,
                 "t -> 0 continuity extrapolation exceeded 1e-6");

    report.doc["results"] = {
        {"psi_roundtrip_max_error", roundtrip.max_error},
        {"linear_functoriality_max_error", linear.max_error},
        {"polynomial_functoriality_max_error", poly.max_error},
        {"continuity_max_error",
         std::max(continuity_cubic.max_error, continuity_poly.max_error)}};
    return report;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delocalized equivariant cohomology and index pairings"};
    app.require_subcommand(1);
    Job opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_file, "also write the JSON report to this file");
        cmd->add_option("--threads", opt.threads, "worker threads for per-class computations");
        cmd->add_option("--seed", opt.seed, "seed for randomized property checks");
    };

    auto* hp = app.add_subcommand("hp-group", "HP of a group algebra with the HH0 oracle");
    hp->add_option("--group", opt.group_file, "group JSON file")->required();
    add_common(hp);

    auto* coh = app.add_subcommand("cohomology", "nerve double-complex cohomology vs oracles");
    coh->add_option("--space", opt.space_file, "space JSON file")->required();
    coh->add_option("--degree", opt.degree, "single degree (default: all)");
    add_common(coh);

    auto* del = app.add_subcommand("deloc", "delocalized cohomology and the trace checks");
    del->add_option("--space", opt.space_file, "space JSON file")->required();
    add_common(del);

    auto* pair = app.add_subcommand("pairing", "Poincare pairing Gram matrices per class");
    pair->add_option("--space", opt.space_file, "space JSON file (with orientation)")->required();
    add_common(pair);

    auto* asm_check = app.add_subcommand("assembly-check", "two-sided index pairing checks");
    asm_check->add_option("--corpus", opt.corpus, "'builtin' for the built-in corpus");
    asm_check->add_option("--space", opt.space_file, "space JSON file");
    asm_check->add_option("--bundle", opt.bundle_file, "bundle JSON file");
    asm_check->add_option("--tau", opt.tau, "class representative for the cyclic trace");
    add_common(asm_check);

    auto* umk = app.add_subcommand("umkehr", "pushforward functoriality on the built-in corpus");
    umk->add_option("--corpus", opt.corpus, "'builtin' (default)");
    add_common(umk);

    auto* dnc = app.add_subcommand("dnc-check", "deformation-chart numerics");
    add_common(dnc);

    CLI11_PARSE(app, argc, argv);

    try {
        Report report("?");
        if (hp->parsed()) report = run_hp_group(opt);
        else if (coh->parsed()) report = run_cohomology(opt);
        else if (del->parsed()) report = run_deloc(opt);
        else if (pair->parsed()) report = run_pairing(opt);
        else if (asm_check->parsed()) {
            if (opt.corpus.empty() && opt.space_file.empty()) opt.corpus = "builtin";
            report = run_assembly_check(opt);
        } else if (umk->parsed()) {
            report = run_umkehr(opt);
        } else if (dnc->parsed()) {
            report = run_dnc_check(opt);
        }
        emit(report, opt);
        return report.exit_code;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
