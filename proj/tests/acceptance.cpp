// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.
//
// Build-time configuration: DELOCX_CLI_PATH points at the CLI binary and
// DELOCX_SAMPLES_DIR at the sample inputs (used by the determinism check).

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "delocx/corpus.hpp"
#include "delocx/dnc.hpp"
#include "delocx/io.hpp"

using namespace delocx;

namespace {

int failures = 0;

void verdict(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " [" << number << "] " << name;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Burghelea agreement on the five named groups, oracle-derived counts.
void criterion_burghelea() {
    auto start = std::chrono::steady_clock::now();
    const std::array<int, 5> documented{1, 2, 4, 3, 5};
    bool pass = true;
    std::ostringstream detail;
    auto groups = corpus::builtin_groups();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i].pg.group;
        int oracle = hh0_group_oracle(g);
        int classes = static_cast<int>(conjugacy_classes(g).size());
        auto hp = burghelea_hp(g);
        bool ok = (hp.even_dim == oracle) && (oracle == classes) && (hp.odd_dim == 0) &&
                  (oracle == documented[i]);
        if (!ok) {
            pass = false;
            detail << groups[i].name << ": even " << hp.even_dim << " oracle " << oracle
                   << " classes " << classes << "; ";
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        pass = false;
        detail << "runtime " << elapsed << "s exceeds 10s";
    }
    verdict(1, "burghelea-agreement", pass, detail.str());
}

// 2. Double complex vs invariants vs quotient on >= 20 regular actions.
void criterion_double_complex() {
    auto start = std::chrono::steady_clock::now();
    auto actions = corpus::builtin_actions();
    bool pass = actions.size() >= 20;
    std::ostringstream detail;
    if (!pass) detail << "corpus too small (" << actions.size() << "); ";
    for (const auto& [name, kg] : actions) {
        auto report = validate_gcomplex(kg);
        if (!report.valid || !report.regular) {
            pass = false;
            detail << name << ": not regular; ";
            continue;
        }
        SimplicialComplex quotient = SimplicialComplex::empty();
        try {
            quotient = quotient_complex(kg);
        } catch (const Error& e) {
            pass = false;
            detail << name << ": quotient failed; ";
            continue;
        }
        for (int n = 0; n <= kg.complex().dim(); ++n) {
            int total = total_cohomology(kg, n).dim;
            int inv = invariant_oracle(kg, n);
            int quo = simplicial_cohomology_dim(quotient, n);
            if (total != inv || inv != quo) {
                pass = false;
                detail << name << " deg " << n << ": (" << total << "," << inv << "," << quo
                       << "); ";
            }
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 60.0) {
        pass = false;
        detail << "runtime " << elapsed << "s exceeds 60s";
    }
    verdict(2, "double-complex-vs-invariants (" + std::to_string(actions.size()) +
                   " actions)", pass, detail.str());
}

// 3. Tu-Xu degree-0 instance on >= 10 finite G-sets.
void criterion_tuxu_degree0() {
    auto start = std::chrono::steady_clock::now();
    auto gsets = corpus::builtin_gsets();
    bool pass = gsets.size() >= 10;
    std::ostringstream detail;
    if (!pass) detail << "corpus too small; ";
    for (const auto& [name, kg] : gsets) {
        int oracle = hh0_groupoid_oracle(kg);
        auto dims = deloc_cohomology(kg);
        if (oracle != dims.even || dims.odd != 0) {
            pass = false;
            detail << name << ": oracle " << oracle << " vs H0 total " << dims.even << "; ";
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 30.0) {
        pass = false;
        detail << "runtime " << elapsed << "s exceeds 30s";
    }
    verdict(3, "tuxu-degree-0 (" + std::to_string(gsets.size()) + " G-sets)", pass,
            detail.str());
}

// 4. Trace property: 100 randomized pairs per groupoid, exact equality.
void criterion_trace_property() {
    bool pass = true;
    std::ostringstream detail;
    std::mt19937_64 rng(20250809);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<corpus::NamedAction> spaces = corpus::builtin_gsets();
    spaces.push_back({"circle_reflection", corpus::circle_reflection()});
    spaces.push_back({"circle_rotation", corpus::circle_rotation()});
    for (const auto& [name, kg] : spaces) {
        for (int trial = 0; trial < 100; ++trial) {
            GroupoidAlgebraElement a, b;
            for (int v = 0; v < kg.complex().vertex_count(); ++v)
                for (Elem g = 0; g < kg.group().order(); ++g) {
                    int ca = coef(rng), cb = coef(rng);
                    if (ca != 0) a.add(v, g, Cyclotomic(Rat(ca, 1 + (trial % 2))));
                    if (cb != 0) b.add(v, g, Cyclotomic(Rat(cb)));
                }
            if (!(tuxu_trace(kg, convolve(kg, a, b)) ==
                  tuxu_trace(kg, convolve(kg, b, a)))) {
                pass = false;
                detail << name << " trial " << trial << "; ";
                break;
            }
        }
    }
    verdict(4, "trace-property (100 pairs per groupoid)", pass, detail.str());
}

// 5. Pairing perfection on circle, torus and sphere examples.
void criterion_pairing_perfection() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& pc : corpus::builtin_pairing_cases()) {
        for (int k = 0; k <= pc.component.complex().dim(); ++k) {
            auto gram = pairing_gram(pc.component, pc.orientation, k);
            if (!gram.perfect) {
                pass = false;
                detail << pc.name << " deg " << k << "; ";
            }
        }
    }
    verdict(5, "pairing-perfection", pass, detail.str());
}

// 6. Umkehr functoriality and the projection formula on the composable corpus.
void criterion_umkehr_functoriality() {
    auto pairs = corpus::builtin_composable_pairs();
    bool pass = pairs.size() >= 6;
    std::ostringstream detail;
    if (!pass) detail << "corpus too small; ";
    for (const auto& pair : pairs) {
        auto functorial = check_functoriality(pair.f, pair.g);
        auto proj_f = check_projection_formula(pair.f);
        auto proj_g = check_projection_formula(pair.g);
        if (!functorial.all_equal || !proj_f.all_equal || !proj_g.all_equal) {
            pass = false;
            detail << pair.name << "; ";
        }
    }
    verdict(6, "umkehr-functoriality (" + std::to_string(pairs.size()) + " pairs)", pass,
            detail.str());
}

// 7. Chern-assembly identity on the 12-entry corpus, frozen expected values.
void criterion_chern_assembly() {
    auto entries = corpus::builtin_index_corpus();
    auto expected = corpus::builtin_index_corpus_expected();
    bool pass = entries.size() == 12;
    std::ostringstream detail;
    auto summary = chern_assembly_check(entries);
    if (summary.failures != 0) {
        pass = false;
        for (const auto& w : summary.witnesses) detail << w << "; ";
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(summary.reports[i].lhs == Cyclotomic(expected[i]))) {
            pass = false;
            detail << entries[i].name << ": lhs " << summary.reports[i].lhs.to_string()
                   << " != expected " << rat_to_string(expected[i]) << "; ";
        }
    }
    verdict(7, "chern-assembly-identity (12 entries)", pass, detail.str());
}

// 8. DNC numerics at the stated tolerances.
void criterion_dnc() {
    bool pass = true;
    std::ostringstream detail;

    auto roundtrip = check_psi_roundtrip(2, 3, 10000, 1e-12);
    if (!roundtrip.pass) {
        pass = false;
        detail << "psi roundtrip " << roundtrip.max_error << "; ";
    }

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
    auto linear = check_dnc_functoriality(linear_a, linear_b, 1000, 1e-12);
    if (!linear.pass) {
        pass = false;
        detail << "linear functoriality " << linear.max_error << "; ";
    }

    auto poly_a = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{v[0] + 0.25 * v[0] * v[0], v[1] * (1.0 + 0.5 * v[0] + 0.25 * v[1])};
    });
    auto poly_b = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{2.0 * v[0], v[1] + 0.125 * v[1] * v[1] - 0.5 * v[0] * v[1]};
    });
    auto poly = check_dnc_functoriality(poly_a, poly_b, 1000, 1e-8);
    if (!poly.pass) {
        pass = false;
        detail << "polynomial functoriality " << poly.max_error << "; ";
    }

    auto cubic = make_pair_map(2, 1, 2, 1, [](const RealVec& v) {
        return RealVec{v[0], v[1] + v[1] * v[1] * v[1]};
    });
    for (const auto* map : {&cubic, &poly_a, &linear_a}) {
        auto continuity = check_dnc_continuity(*map, 100, 1e-6);
        if (!continuity.pass) {
            pass = false;
            detail << "continuity " << continuity.max_error << "; ";
        }
    }
    verdict(8, "dnc-numerics", pass, detail.str());
}

// 9. Determinism: every CLI command run twice produces byte-identical
// machine-readable reports.
void criterion_determinism() {
#if defined(DELOCX_CLI_PATH) && defined(DELOCX_SAMPLES_DIR)
    const std::string cli = DELOCX_CLI_PATH;
    const std::string samples = DELOCX_SAMPLES_DIR;
    const std::vector<std::string> commands = {
        "hp-group --group " + samples + "/trivial.json",
        "hp-group --group " + samples + "/z2.json",
        "hp-group --group " + samples + "/z4.json",
        "hp-group --group " + samples + "/s3.json",
        "hp-group --group " + samples + "/q8.json",
        "cohomology --space " + samples + "/circle_reflection.json",
        "cohomology --space " + samples + "/torus.json",
        "cohomology --space " + samples + "/hexagon_d3.json",
        "deloc --space " + samples + "/circle_reflection.json",
        "deloc --space " + samples + "/s3_points.json",
        "pairing --space " + samples + "/circle.json",
        "pairing --space " + samples + "/circle_rotation.json",
        "assembly-check --corpus builtin",
        "assembly-check --space " + samples + "/circle_reflection.json --bundle " +
            samples + "/sign_circle.json",
        "assembly-check --space " + samples + "/octagon_z4.json --bundle " + samples +
            "/zeta_line.json",
        "umkehr --corpus builtin",
        "dnc-check",
    };
    auto capture = [&](const std::string& command) {
        std::string full = cli + " " + command + " 2>/dev/null";
        std::string output;
        FILE* pipe = popen(full.c_str(), "r");
        if (!pipe) return std::make_pair(std::string(), -1);
        char buffer[4096];
        std::size_t n;
        while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
        int status = pclose(pipe);
        return std::make_pair(output, WEXITSTATUS(status));
    };
    bool pass = true;
    std::ostringstream detail;
    for (const auto& command : commands) {
        auto [first, code1] = capture(command);
        auto [second, code2] = capture(command);
        if (first.empty() || first != second) {
            pass = false;
            detail << "non-identical output: " << command << "; ";
        }
        if (code1 != 0 || code2 != 0) {
            pass = false;
            detail << "nonzero exit (" << code1 << "): " << command << "; ";
        }
    }
    verdict(9, "cli-determinism (" + std::to_string(commands.size()) + " commands x2)",
            pass, detail.str());
#else
    verdict(9, "cli-determinism", false, "CLI path not configured at build time");
#endif
}

} // namespace

int main() {
    criterion_burghelea();
    criterion_double_complex();
    criterion_tuxu_degree0();
    criterion_trace_property();
    criterion_pairing_perfection();
    criterion_umkehr_functoriality();
    criterion_chern_assembly();
    criterion_dnc();
    criterion_determinism();
    if (failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " acceptance criteria failed" << std::endl;
    return 1;
}
