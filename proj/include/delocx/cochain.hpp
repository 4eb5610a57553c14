#pragma once

#include <map>

#include "delocx/cyclotomic.hpp"
#include "delocx/gcomplex.hpp"

namespace delocx {

/// Simplicial cochain with values in S (Rat or Cyclotomic), keyed by simplex
/// index within its degree.
template <class S>
struct Cochain {
    int degree = 0;
    std::map<int, S> values;

    void add(int simplex, const S& v) {
        auto& slot = values[simplex];
        slot += v;
        if (slot == S(0)) values.erase(simplex);
    }
    S at(int simplex) const {
        auto it = values.find(simplex);
        return it == values.end() ? S(0) : it->second;
    }
    bool is_zero() const { return values.empty(); }

    friend Cochain operator+(const Cochain& a, const Cochain& b) {
        if (a.degree != b.degree) throw DegreeMismatch("cochain degrees differ");
        Cochain out = a;
        for (const auto& [s, v] : b.values) out.add(s, v);
        return out;
    }
    friend Cochain operator-(const Cochain& a, const Cochain& b) {
        if (a.degree != b.degree) throw DegreeMismatch("cochain degrees differ");
        Cochain out = a;
        for (const auto& [s, v] : b.values) out.add(s, S(0) - v);
        return out;
    }
    friend Cochain operator*(const S& c, const Cochain& a) {
        Cochain out;
        out.degree = a.degree;
        if (c == S(0)) return out;
        for (const auto& [s, v] : a.values) out.values[s] = c * v;
        return out;
    }
    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.degree == b.degree && (a - b).is_zero();
    }
};

/// Simplicial chain (rational coefficients).
struct Chain {
    int degree = 0;
    std::map<int, Rat> coeffs;

    void add(int simplex, const Rat& v) {
        auto& slot = coeffs[simplex];
        slot += v;
        if (slot == 0) coeffs.erase(simplex);
    }
    bool is_zero() const { return coeffs.empty(); }
};

template <class S>
Cochain<S> coboundary(const SimplicialComplex& k, const Cochain<S>& c) {
    Cochain<S> out;
    out.degree = c.degree + 1;
    if (out.degree > k.dim()) return out;
    for (int t = 0; t < k.count(out.degree); ++t) {
        const auto& verts = k.simplices(out.degree)[t];
        S acc(0);
        for (int j = 0; j <= out.degree; ++j) {
            std::vector<int> face;
            for (int i = 0; i <= out.degree; ++i)
                if (i != j) face.push_back(verts[i]);
            S v = c.at(k.index_of(face));
            acc += (j % 2 == 0) ? v : S(0) - v;
        }
        if (!(acc == S(0))) out.values[t] = acc;
    }
    return out;
}

inline Chain boundary(const SimplicialComplex& k, const Chain& c) {
    Chain out;
    out.degree = c.degree - 1;
    if (c.degree <= 0) return out;
    for (const auto& [idx, coef] : c.coeffs) {
        const auto& verts = k.simplices(c.degree)[idx];
        for (int j = 0; j <= c.degree; ++j) {
            std::vector<int> face;
            for (int i = 0; i <= c.degree; ++i)
                if (i != j) face.push_back(verts[i]);
            out.add(k.index_of(face), (j % 2 == 0) ? coef : -coef);
        }
    }
    return out;
}

/// Alexander-Whitney cup product: front face in a, back face in b, with the
/// global vertex order. Strictly associative at the cochain level.
template <class S>
Cochain<S> cup(const SimplicialComplex& k, const Cochain<S>& a, const Cochain<S>& b) {
    Cochain<S> out;
    out.degree = a.degree + b.degree;
    if (out.degree > k.dim()) return out;
    for (int t = 0; t < k.count(out.degree); ++t) {
        const auto& verts = k.simplices(out.degree)[t];
        std::vector<int> front(verts.begin(), verts.begin() + a.degree + 1);
        std::vector<int> back(verts.begin() + a.degree, verts.end());
        S v = a.at(k.index_of(front)) * b.at(k.index_of(back));
        if (!(v == S(0))) out.values[t] = v;
    }
    return out;
}

/// Cap product b cap c for b of degree l: on a d-simplex [v_0..v_d] it reads
/// b on the back l-face and keeps the front (d-l)-face, so that
/// <a, b cap c> = <a cup b, c> holds on the nose.
inline Chain cap(const SimplicialComplex& k, const Cochain<Rat>& b, const Chain& c) {
    if (b.degree > c.degree) throw DegreeMismatch("cap degree exceeds chain degree");
    Chain out;
    out.degree = c.degree - b.degree;
    for (const auto& [idx, coef] : c.coeffs) {
        const auto& verts = k.simplices(c.degree)[idx];
        std::vector<int> back(verts.end() - (b.degree + 1), verts.end());
        Rat v = b.at(k.index_of(back));
        if (v == 0) continue;
        std::vector<int> front(verts.begin(), verts.begin() + out.degree + 1);
        out.add(k.index_of(front), coef * v);
    }
    return out;
}

/// Evaluation of a top cochain against a chain of the same degree.
template <class S>
S evaluate(const Cochain<S>& a, const Chain& c) {
    if (a.degree != c.degree) throw DegreeMismatch("evaluation degree mismatch");
    S acc(0);
    for (const auto& [idx, coef] : c.coeffs) acc += S(Rat(coef)) * a.at(idx);
    return acc;
}

/// Chain pushforward along a simplicial vertex map; degenerate images vanish,
/// non-degenerate ones acquire the sorting sign.
inline Chain push_chain(const SimplicialComplex& src, const SimplicialComplex& tgt,
                        const std::vector<int>& vertex_map, const Chain& c) {
    Chain out;
    out.degree = c.degree;
    for (const auto& [idx, coef] : c.coeffs) {
        std::vector<int> image = src.simplices(c.degree)[idx];
        for (auto& v : image) v = vertex_map[v];
        int sign = detail::sort_sign(image, tgt.vertex_ranks());
        if (sign == 0) continue;
        int t = tgt.index_of(image);
        if (t < 0) throw ComplexMismatch("pushforward image is not a simplex of the target");
        out.add(t, Rat(sign) * coef);
    }
    return out;
}

/// Cochain pullback along a simplicial vertex map.
template <class S>
Cochain<S> pullback(const SimplicialComplex& src, const SimplicialComplex& tgt,
                    const std::vector<int>& vertex_map, const Cochain<S>& a) {
    Cochain<S> out;
    out.degree = a.degree;
    for (int s = 0; s < src.count(a.degree); ++s) {
        std::vector<int> image = src.simplices(a.degree)[s];
        for (auto& v : image) v = vertex_map[v];
        int sign = detail::sort_sign(image, tgt.vertex_ranks());
        if (sign == 0) continue;
        int t = tgt.index_of(image);
        if (t < 0) throw ComplexMismatch("pullback across a non-simplicial map");
        S v = (sign > 0) ? a.at(t) : S(0) - a.at(t);
        if (!(v == S(0))) out.values[s] = v;
    }
    return out;
}

} // namespace delocx
