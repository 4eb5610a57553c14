#pragma once

#include <string>
#include <vector>

#include "delocx/bundle.hpp"

namespace delocx {

/// A class function: one exact cyclotomic value per conjugacy class, keyed
/// by the class representative. For finite groups this is the rationalized
/// K-theory of the group algebra.
struct ClassFunction {
    std::map<Elem, Cyclotomic> values;

    Cyclotomic at_class_of(const FiniteGroup& g, Elem x) const {
        for (const auto& cls : conjugacy_classes(g))
            for (Elem m : cls.members)
                if (m == x) {
                    auto it = values.find(cls.representative);
                    return it == values.end() ? Cyclotomic(0) : it->second;
                }
        throw ElementNotInGroup("class function evaluated outside the group");
    }

    friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
        ClassFunction out = a;
        for (const auto& [rep, v] : b.values) {
            auto& slot = out.values[rep];
            slot += v;
        }
        return out;
    }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
        for (const auto& [rep, v] : a.values) {
            auto it = b.values.find(rep);
            if (!((it == b.values.end() ? Cyclotomic(0) : it->second) == v)) return false;
        }
        for (const auto& [rep, v] : b.values) {
            auto it = a.values.find(rep);
            if (!((it == a.values.end() ? Cyclotomic(0) : it->second) == v)) return false;
        }
        return true;
    }
};

/// The assembly image of (K, E) in the discrete model: the character of the
/// equivariant Euler characteristic sum_k (-1)^k [C^k(K; E)]. The value at g
/// counts the simplices fixed pointwise by g, weighted by the fiber trace;
/// regularity makes every orientation sign +1.
inline ClassFunction euler_assembly(const FlatEquivBundle& e) {
    const auto& kg = e.base();
    auto complex_report = validate_gcomplex(kg);
    if (!complex_report.valid || !complex_report.regular)
        throw NotRegular("euler_assembly requires a valid regular action");
    auto bundle_report = validate_bundle(e);
    if (!bundle_report.valid)
        throw InvalidBundle("euler_assembly: " + bundle_report.violations.front());

    const auto& k = kg.complex();
    const auto& g = kg.group();
    std::vector<Cyclotomic> chi(g.order());
    for (Elem a = 0; a < g.order(); ++a) {
        Cyclotomic total(0);
        for (int q = 0; q <= k.dim(); ++q) {
            for (int i = 0; i < k.count(q); ++i) {
                const auto& verts = k.simplices(q)[i];
                bool fixed = true;
                for (int v : verts)
                    if (kg.vertex_image(a, v) != v) { fixed = false; break; }
                if (!fixed) continue;
                Cyclotomic t = cyc_trace(e.rho(a, verts.front()));
                total += (q % 2 == 0) ? t : Cyclotomic(0) - t;
            }
        }
        chi[a] = total;
    }
    // conjugation invariance is a theorem in this model; assert it
    ClassFunction out;
    for (const auto& cls : conjugacy_classes(g)) {
        for (Elem m : cls.members)
            if (!(chi[m] == chi[cls.representative]))
                throw Error("euler_assembly: character is not constant on a class");
        out.values[cls.representative] = chi[cls.representative];
    }
    return out;
}

/// Two-sided index report: the assembly-side pairing against the delocalized
/// fixed-point side, both exact.
struct IndexReport {
    Cyclotomic lhs;
    Cyclotomic rhs;
    bool equal = false;
};

/// lhs: the character of euler_assembly evaluated at the class of tau.
/// rhs: sum over connected components C of the fixed set M_g of
/// chi(C) * (value of the delocalized Chern character on C) -- the discrete
/// fixed-point formula with trivial Todd class.
inline IndexReport index_pairing(const FlatEquivBundle& e, const CyclicTrace& tau) {
    const auto& kg = e.base();
    ClassFunction assembled = euler_assembly(e);
    IndexReport report;
    report.lhs = assembled.at_class_of(kg.group(), tau.class_rep);

    DelocClass ch = deloc_chern(e);
    auto fix = fixed_subcomplex(kg, tau.class_rep);
    Cyclotomic rhs(0);
    if (!fix.complex.is_empty()) {
        auto comps = fix.complex.vertex_components();
        int n_comps = 0;
        for (int c : comps) n_comps = std::max(n_comps, c + 1);
        // Euler characteristic per component
        std::vector<long> chi(n_comps, 0);
        for (int q = 0; q <= fix.complex.dim(); ++q)
            for (const auto& s : fix.complex.simplices(q))
                chi[comps[s.front()]] += (q % 2 == 0) ? 1 : -1;
        // Chern value per component (locally constant, validated by deloc_chern)
        auto part_it = ch.parts.find(tau.class_rep);
        for (int c = 0; c < n_comps; ++c) {
            Cyclotomic value(0);
            if (part_it != ch.parts.end()) {
                auto deg0 = part_it->second.find(0);
                if (deg0 != part_it->second.end()) {
                    for (int v = 0; v < fix.complex.vertex_count(); ++v)
                        if (comps[v] == c) { value = deg0->second.at(v); break; }
                }
            }
            rhs += Cyclotomic(Rat(chi[c])) * value;
        }
    }
    report.rhs = rhs;
    report.equal = (report.lhs == report.rhs);
    return report;
}

/// One entry of the verification corpus.
struct IndexCorpusEntry {
    std::string name;
    FlatEquivBundle bundle;
    CyclicTrace tau;
};

struct CorpusSummary {
    int total = 0;
    int failures = 0;
    std::vector<std::string> witnesses;
    std::vector<IndexReport> reports;
};

/// Runs index_pairing on every entry; a clean corpus reports zero failures.
inline CorpusSummary chern_assembly_check(const std::vector<IndexCorpusEntry>& corpus) {
    CorpusSummary summary;
    for (const auto& entry : corpus) {
        ++summary.total;
        try {
            IndexReport r = index_pairing(entry.bundle, entry.tau);
            summary.reports.push_back(r);
            if (!r.equal) {
                ++summary.failures;
                summary.witnesses.push_back(entry.name + ": lhs " + r.lhs.to_string() +
                                            " != rhs " + r.rhs.to_string());
            }
        } catch (const Error& err) {
            ++summary.failures;
            summary.reports.push_back(IndexReport{});
            summary.witnesses.push_back(entry.name + ": " + err.what());
        }
    }
    return summary;
}

} // namespace delocx
