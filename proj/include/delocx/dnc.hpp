#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "delocx/errors.hpp"

namespace delocx {

// ---------------------------------------------------------------------------
// Deformation to the normal cone for the local pair (R^n, R^p x {0}),
// in binary64 (the one intentionally non-exact corner of the library: the
// content here is analytic, not homological).
// ---------------------------------------------------------------------------

/// Chart coordinates on D(R^n, R^p): base x in R^p, normal xi in R^q,
/// deformation parameter t.
struct DncPoint {
    std::vector<double> x;
    std::vector<double> xi;
    double t = 0.0;
};

/// The chart bijection: (x, xi, 0) -> (x, xi, 0) and (x, xi, t) -> (x, t xi, t).
inline DncPoint psi(const DncPoint& p) {
    DncPoint out = p;
    if (p.t != 0.0)
        for (auto& v : out.xi) v *= p.t;
    return out;
}

/// Explicit inverse: divides the normal part by t away from t = 0.
inline DncPoint psi_inv(const DncPoint& p) {
    DncPoint out = p;
    if (p.t != 0.0)
        for (auto& v : out.xi) v /= p.t;
    return out;
}

using RealVec = std::vector<double>;
using RealMat = std::vector<std::vector<double>>;

/// A smooth map of pairs f: (R^n, R^p x {0}) -> (R^n', R^p' x {0}).
/// The Jacobian is analytic when supplied, otherwise central finite
/// differences with the documented step.
struct SmoothPairMap {
    int in_total = 0, in_base = 0;     // n, p
    int out_total = 0, out_base = 0;   // n', p'
    std::function<RealVec(const RealVec&)> f;
    std::function<RealMat(const RealVec&)> jacobian;   // may be empty
    double fd_step = 1e-6;

    int in_normal() const { return in_total - in_base; }
    int out_normal() const { return out_total - out_base; }

    RealMat jacobian_at(const RealVec& point) const {
        if (jacobian) return jacobian(point);
        RealMat j(out_total, RealVec(in_total));
        for (int col = 0; col < in_total; ++col) {
            RealVec plus = point, minus = point;
            plus[col] += fd_step;
            minus[col] -= fd_step;
            RealVec fp = f(plus), fm = f(minus);
            for (int row = 0; row < out_total; ++row)
                j[row][col] = (fp[row] - fm[row]) / (2.0 * fd_step);
        }
        return j;
    }
};

/// Builds a pair map and asserts by sampling that it preserves the pair:
/// the normal components of f(x, 0) must vanish.
inline SmoothPairMap make_pair_map(int in_total, int in_base, int out_total, int out_base,
                                   std::function<RealVec(const RealVec&)> f,
                                   std::function<RealMat(const RealVec&)> jacobian = {},
                                   unsigned seed = 12345, int samples = 32,
                                   double tolerance = 1e-9) {
    SmoothPairMap map{in_total, in_base, out_total, out_base, std::move(f),
                      std::move(jacobian)};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        RealVec point(in_total, 0.0);
        for (int i = 0; i < in_base; ++i) point[i] = coord(rng);
        RealVec image = map.f(point);
        if (static_cast<int>(image.size()) != out_total)
            throw PairNotPreserved("map image has wrong dimension");
        for (int i = out_base; i < out_total; ++i)
            if (std::abs(image[i]) > tolerance)
                throw PairNotPreserved("map does not preserve the submanifold pair");
    }
    return map;
}

/// Composition g o f of pair maps; analytic Jacobians compose by the chain
/// rule when both are present.
inline SmoothPairMap compose(const SmoothPairMap& f, const SmoothPairMap& g) {
    if (f.out_total != g.in_total || f.out_base != g.in_base)
        throw PairNotPreserved("pair maps are not composable");
    SmoothPairMap out;
    out.in_total = f.in_total;
    out.in_base = f.in_base;
    out.out_total = g.out_total;
    out.out_base = g.out_base;
    auto ff = f.f;
    auto gf = g.f;
    out.f = [ff, gf](const RealVec& v) { return gf(ff(v)); };
    if (f.jacobian && g.jacobian) {
        auto fj = f.jacobian;
        auto gj = g.jacobian;
        out.jacobian = [ff, fj, gj](const RealVec& v) {
            RealMat a = gj(ff(v));
            RealMat b = fj(v);
            RealMat prod(a.size(), RealVec(b.empty() ? 0 : b[0].size(), 0.0));
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t k = 0; k < b.size(); ++k)
                    for (std::size_t j = 0; j < b[k].size(); ++j)
                        prod[i][j] += a[i][k] * b[k][j];
            return prod;
        };
    }
    out.fd_step = std::min(f.fd_step, g.fd_step);
    return out;
}

/// The deformation functor in chart coordinates:
///   t != 0: transport through psi, apply f, come back;
///   t == 0: base part moves by f, normal part by the normal Jacobian block.
inline DncPoint dnc_map(const SmoothPairMap& map, const DncPoint& p) {
    if (static_cast<int>(p.x.size()) != map.in_base ||
        static_cast<int>(p.xi.size()) != map.in_normal())
        throw PairNotPreserved("chart point has wrong dimensions");
    DncPoint out;
    out.t = p.t;
    if (p.t != 0.0) {
        DncPoint set_point = psi(p);
        RealVec m(map.in_total);
        for (int i = 0; i < map.in_base; ++i) m[i] = set_point.x[i];
        for (int i = 0; i < map.in_normal(); ++i) m[map.in_base + i] = set_point.xi[i];
        RealVec image = map.f(m);
        DncPoint image_point;
        image_point.t = p.t;
        image_point.x.assign(image.begin(), image.begin() + map.out_base);
        image_point.xi.assign(image.begin() + map.out_base, image.end());
        return psi_inv(image_point);
    }
    RealVec base(map.in_total, 0.0);
    for (int i = 0; i < map.in_base; ++i) base[i] = p.x[i];
    RealVec image = map.f(base);
    for (int i = map.out_base; i < map.out_total; ++i)
        if (std::abs(image[i]) > 1e-9)
            throw PairNotPreserved("base point leaves the target submanifold");
    out.x.assign(image.begin(), image.begin() + map.out_base);
    RealMat j = map.jacobian_at(base);
    out.xi.assign(map.out_normal(), 0.0);
    for (int i = 0; i < map.out_normal(); ++i)
        for (int k = 0; k < map.in_normal(); ++k)
            out.xi[i] += j[map.out_base + i][map.in_base + k] * p.xi[k];
    return out;
}

inline double chart_distance(const DncPoint& a, const DncPoint& b) {
    double m = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.x.size(); ++i) m = std::max(m, std::abs(a.x[i] - b.x[i]));
    for (std::size_t i = 0; i < a.xi.size(); ++i) m = std::max(m, std::abs(a.xi[i] - b.xi[i]));
    return m;
}

struct DncCheckReport {
    double max_error = 0.0;
    int samples = 0;
    bool pass = false;
    double tolerance = 0.0;
};

/// Functoriality: D(g o f) == D(g) o D(f) on random chart samples, including
/// exact t = 0 samples for the normal-derivative branch.
inline DncCheckReport check_dnc_functoriality(const SmoothPairMap& f, const SmoothPairMap& g,
                                              int n_samples, double tolerance,
                                              unsigned seed = 777) {
    SmoothPairMap gf = compose(f, g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> tval(0.0, 1.0);
    DncCheckReport report;
    report.tolerance = tolerance;
    for (int s = 0; s < n_samples; ++s) {
        DncPoint p;
        p.x.resize(f.in_base);
        p.xi.resize(f.in_normal());
        for (auto& v : p.x) v = coord(rng);
        for (auto& v : p.xi) v = coord(rng);
        p.t = (s % 4 == 0) ? 0.0 : tval(rng);
        DncPoint direct = dnc_map(gf, p);
        DncPoint staged = dnc_map(g, dnc_map(f, p));
        report.max_error = std::max(report.max_error, chart_distance(direct, staged));
        ++report.samples;
    }
    report.pass = report.max_error <= tolerance;
    return report;
}

/// Continuity across t -> 0: sample dnc_map at chart times 1e-2, 1e-4, 1e-6,
/// extrapolate the two smallest samples linearly in t to t = 0, and compare
/// with the exact t = 0 branch.
inline DncCheckReport check_dnc_continuity(const SmoothPairMap& f, int n_samples,
                                           double tolerance = 1e-6, unsigned seed = 999) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    DncCheckReport report;
    report.tolerance = tolerance;
    const double t1 = 1e-4, t2 = 1e-6;
    for (int s = 0; s < n_samples; ++s) {
        DncPoint p;
        p.x.resize(f.in_base);
        p.xi.resize(f.in_normal());
        for (auto& v : p.x) v = coord(rng);
        for (auto& v : p.xi) v = coord(rng);
        p.t = 0.0;
        DncPoint limit = dnc_map(f, p);
        auto at = [&](double t) {
            DncPoint q = p;
            q.t = t;
            DncPoint image = dnc_map(f, q);
            image.t = 0.0;   // spatial part only
            return image;
        };
        DncPoint coarse = at(1e-2);
        DncPoint v1 = at(t1);
        DncPoint v2 = at(t2);
        // the deviation must shrink along the sample schedule
        if (chart_distance(v1, limit) > chart_distance(coarse, limit) + tolerance)
            report.max_error = std::max(report.max_error, chart_distance(v1, limit));
        DncPoint extrapolated = v2;
        extrapolated.t = 0.0;
        const double w = t2 / (t1 - t2);
        for (std::size_t i = 0; i < extrapolated.x.size(); ++i)
            extrapolated.x[i] = v2.x[i] + (v2.x[i] - v1.x[i]) * w;
        for (std::size_t i = 0; i < extrapolated.xi.size(); ++i)
            extrapolated.xi[i] = v2.xi[i] + (v2.xi[i] - v1.xi[i]) * w;
        double err = chart_distance(extrapolated, limit);
        report.max_error = std::max(report.max_error, err);
        ++report.samples;
    }
    report.pass = report.max_error <= tolerance;
    return report;
}

/// Round-trip accuracy of the chart bijection on random points.
inline DncCheckReport check_psi_roundtrip(int base_dim, int normal_dim, int n_samples,
                                          double tolerance = 1e-12, unsigned seed = 555) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> tval(0.0, 1.0);
    DncCheckReport report;
    report.tolerance = tolerance;
    for (int s = 0; s < n_samples; ++s) {
        DncPoint p;
        p.x.resize(base_dim);
        p.xi.resize(normal_dim);
        for (auto& v : p.x) v = coord(rng);
        for (auto& v : p.xi) v = coord(rng);
        p.t = (s % 5 == 0) ? 0.0 : tval(rng);
        double err = std::max(chart_distance(psi_inv(psi(p)), p),
                              chart_distance(psi(psi_inv(p)), p));
        report.max_error = std::max(report.max_error, err);
        ++report.samples;
    }
    report.pass = report.max_error <= tolerance;
    return report;
}

} // namespace delocx
