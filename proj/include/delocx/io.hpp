#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "delocx/bundle.hpp"

namespace delocx::io {

using nlohmann::json;

/// Enumeration cap, overridable through the DELOC_CAP environment variable.
inline std::size_t enumeration_cap(std::size_t fallback) {
    if (const char* env = std::getenv("DELOC_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return fallback;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return doc;
}

/// Group input format: {"points": N, "generators": [[images...], ...]}
/// with permutations as 0-based image arrays.
inline PermGroup parse_group(const json& doc) {
    if (!doc.contains("points") || !doc.contains("generators"))
        throw InputError("group file needs \"points\" and \"generators\"");
    int points = doc.at("points").get<int>();
    std::vector<std::vector<int>> gens;
    for (const auto& g : doc.at("generators"))
        gens.push_back(g.get<std::vector<int>>());
    return group_from_permutations(points, gens, enumeration_cap(1000000));
}

/// Parses one scalar: integer, "p/q" string, or an array of cyclotomic
/// coefficients [c0, c1, ...] meaning c0 + c1 zeta + ... with zeta = zeta_N.
inline Cyclotomic parse_scalar(const json& v, int conductor) {
    if (v.is_number_integer()) return Cyclotomic(Rat(v.get<long>()));
    if (v.is_string()) return Cyclotomic(rat_from_string(v.get<std::string>()));
    if (v.is_array()) {
        std::vector<Rat> coeffs;
        for (const auto& c : v) {
            if (c.is_number_integer()) coeffs.push_back(Rat(c.get<long>()));
            else if (c.is_string()) coeffs.push_back(rat_from_string(c.get<std::string>()));
            else throw InputError("cyclotomic coefficient must be integer or \"p/q\"");
        }
        return Cyclotomic::from_coeffs(conductor, std::move(coeffs));
    }
    throw InputError("scalar must be an integer, \"p/q\", or a coefficient array");
}

struct SpaceInput {
    GComplex action;
    bool has_orientation = false;
    Orientation orientation;
};

/// Complex input format:
///   {"vertices": N, "simplices": [[v...], ...],
///    "action": {"gen0": [images...], ...},           (optional)
///    "orientation": {"signs": [...], "vertex_order": [...]}}   (optional)
/// The group is the closure of the action generators.
inline SpaceInput parse_space(const json& doc) {
    if (!doc.contains("vertices") || !doc.contains("simplices"))
        throw InputError("space file needs \"vertices\" and \"simplices\"");
    int vertices = doc.at("vertices").get<int>();
    std::vector<std::vector<int>> simplices;
    for (const auto& s : doc.at("simplices"))
        simplices.push_back(s.get<std::vector<int>>());

    std::vector<int> vertex_order;
    if (doc.contains("orientation") && doc.at("orientation").contains("vertex_order"))
        vertex_order = doc.at("orientation").at("vertex_order").get<std::vector<int>>();
    SimplicialComplex complex(vertices, simplices, vertex_order);

    std::vector<std::vector<int>> gens;
    if (doc.contains("action")) {
        const auto& action = doc.at("action");
        std::vector<std::pair<int, std::vector<int>>> keyed;
        for (auto it = action.begin(); it != action.end(); ++it) {
            const std::string& key = it.key();
            if (key.rfind("gen", 0) != 0)
                throw InputError("action keys must be gen0, gen1, ...");
            keyed.emplace_back(std::stoi(key.substr(3)), it.value().get<std::vector<int>>());
        }
        std::sort(keyed.begin(), keyed.end());
        for (auto& [idx, perm] : keyed) gens.push_back(std::move(perm));
    }

    SpaceInput out{gens.empty()
                       ? GComplex::with_trivial_group(std::move(complex))
                       : GComplex::from_generators(std::move(complex), gens,
                                                   enumeration_cap(1000000)),
                   false,
                   Orientation{}};
    if (doc.contains("orientation") && doc.at("orientation").contains("signs")) {
        out.has_orientation = true;
        out.orientation.top_signs =
            doc.at("orientation").at("signs").get<std::vector<int>>();
    }
    return out;
}

/// Bundle input format:
///   {"fiber_dim": n, "rho": {"g_id": {"v_id": [[rows of scalars]], ...}, ...}}
/// Element ids refer to the breadth-first enumeration of the space's group;
/// either every element or exactly the generator elements may be listed (the
/// rest follow from the cocycle identity).
inline FlatEquivBundle parse_bundle(const json& doc, const GComplex& base) {
    if (!doc.contains("fiber_dim") || !doc.contains("rho"))
        throw InputError("bundle file needs \"fiber_dim\" and \"rho\"");
    const int fiber_dim = doc.at("fiber_dim").get<int>();
    const int conductor = static_cast<int>(base.group().exponent());
    const int nv = base.complex().vertex_count();

    auto parse_matrix = [&](const json& rows) {
        CycMatrix m;
        for (const auto& row : rows) {
            std::vector<Cyclotomic> r;
            for (const auto& v : row) r.push_back(parse_scalar(v, conductor));
            m.push_back(std::move(r));
        }
        return m;
    };

    std::map<Elem, std::vector<CycMatrix>> given;
    for (auto it = doc.at("rho").begin(); it != doc.at("rho").end(); ++it) {
        Elem g = std::stoi(it.key());
        if (g < 0 || g >= base.group().order())
            throw InputError("rho references element id outside the group");
        std::vector<CycMatrix> per_vertex(nv);
        for (auto vit = it.value().begin(); vit != it.value().end(); ++vit) {
            int v = std::stoi(vit.key());
            if (v < 0 || v >= nv) throw InputError("rho references a foreign vertex");
            per_vertex[v] = parse_matrix(vit.value());
        }
        for (int v = 0; v < nv; ++v)
            if (per_vertex[v].empty())
                throw InputError("rho(" + it.key() + ") missing vertex " + std::to_string(v));
        given[g] = std::move(per_vertex);
    }

    if (static_cast<int>(given.size()) == base.group().order()) {
        std::vector<std::vector<CycMatrix>> rho(base.group().order());
        for (auto& [g, m] : given) rho[g] = std::move(m);
        return FlatEquivBundle(base, std::vector<int>(nv, fiber_dim), std::move(rho));
    }

    // generator-only form
    std::vector<std::vector<CycMatrix>> generator_rho;
    for (Elem gen : base.group().generators()) {
        auto it = given.find(gen);
        if (it == given.end())
            throw InputError("rho must list every element or exactly the generators");
        generator_rho.push_back(it->second);
    }
    if (given.size() != generator_rho.size())
        throw InputError("rho lists elements that are not generators");
    return FlatEquivBundle::from_generator_matrices(base, fiber_dim, generator_rho);
}

// ---------------------------------------------------------------------------
// Machine-readable reports: one canonical JSON document per run, keys sorted,
// all exact values serialized as canonical strings.
// ---------------------------------------------------------------------------

inline json scalar_json(const Cyclotomic& c) { return c.to_string(); }
inline json scalar_json(const Rat& r) { return rat_to_string(r); }

struct Report {
    json doc;
    int exit_code = 0;

    Report(const std::string& command) {
        doc["schema_version"] = 1;
        doc["command"] = command;
        doc["checks"] = {{"passed", 0}, {"failed", 0}, {"witnesses", json::array()}};
    }

    void check(bool ok, const std::string& witness_on_failure) {
        if (ok) {
            doc["checks"]["passed"] = doc["checks"]["passed"].get<int>() + 1;
        } else {
            doc["checks"]["failed"] = doc["checks"]["failed"].get<int>() + 1;
            doc["checks"]["witnesses"].push_back(witness_on_failure);
            exit_code = 1;
        }
    }

    std::string dump() const { return doc.dump(2) + "\n"; }
};

} // namespace delocx::io
