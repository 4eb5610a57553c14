#pragma once

#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "delocx/rational.hpp"

namespace delocx {

namespace detail {

// Cyclotomic polynomials Phi_N as monic integer coefficient vectors
// (index = power), computed by exact division of x^N - 1 by all Phi_d, d|N, d<N.
inline const std::vector<Int>& cyclotomic_polynomial(int n) {
    static std::map<int, std::vector<Int>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Int> poly(n + 1);
    poly[0] = -1;
    poly[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<Int>& phi_d = cyclotomic_polynomial(d);
        // exact long division by the monic divisor phi_d
        std::vector<Int> quot(poly.size() - phi_d.size() + 1);
        std::vector<Int> rem = poly;
        for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
            Int c = rem[k + phi_d.size() - 1];
            quot[k] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < phi_d.size(); ++j)
                rem[k + j] -= c * phi_d[j];
        }
        poly = std::move(quot);
    }
    return cache.emplace(n, std::move(poly)).first->second;
}

} // namespace detail

/// Element of the cyclotomic field Q(zeta_N), stored as a polynomial in
/// zeta of degree < phi(N), reduced modulo the N-th cyclotomic polynomial.
/// Conductor 1 is plain Q; mixed conductors are unified via lcm promotion.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1) {}
    Cyclotomic(const Rat& r) : n_(1), c_{r} {}           // NOLINT(google-explicit-constructor)
    Cyclotomic(long v) : n_(1), c_{Rat(v)} {}            // NOLINT(google-explicit-constructor)

    /// zeta_N^k
    static Cyclotomic zeta(int n, long k = 1) {
        Cyclotomic z;
        z.n_ = n;
        long kk = ((k % n) + n) % n;
        std::vector<Rat> raw(static_cast<std::size_t>(kk) + 1);
        raw.back() = 1;
        z.c_ = reduce(raw, n);
        z.trim();
        return z;
    }

    static Cyclotomic from_coeffs(int n, std::vector<Rat> coeffs) {
        Cyclotomic z;
        z.n_ = n;
        z.c_ = reduce(std::move(coeffs), n);
        z.trim();
        return z;
    }

    int conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_) if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
        return true;
    }
    Rat to_rational() const {
        if (!is_rational()) throw Error("cyclotomic value is not rational: " + to_string());
        return c_.empty() ? Rat(0) : c_[0];
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        x.trim();
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
        x.trim();
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify(a, b);
        std::vector<Rat> prod(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        Cyclotomic r;
        r.n_ = x.n_;
        r.c_ = reduce(std::move(prod), x.n_);
        r.trim();
        return r;
    }
    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo Phi_N. Throws on zero.
    Cyclotomic inverse() const {
        if (is_zero()) throw Error("division by zero in cyclotomic field");
        if (is_rational()) return Cyclotomic(Rat(1) / c_[0]);
        // extended gcd of c_(x) and Phi_N(x): s*c_ + t*Phi = gcd (a unit)
        std::vector<Rat> r0 = to_rat_poly(detail::cyclotomic_polynomial(n_));
        std::vector<Rat> r1 = c_;
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
        while (!poly_is_zero(r1)) {
            auto [q, rem] = poly_divmod(r0, r1);
            std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd, nonzero constant since Phi_N is irreducible over Q
        if (poly_deg(r0) != 0) throw Error("cyclotomic inverse: gcd not constant");
        Rat unit = r0[0];
        for (auto& c : s0) c /= unit;
        return from_coeffs(n_, std::move(s0));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Canonical text form, e.g. "0", "3/2", "1 + 2*z^2 - z^3" (z = zeta_N).
    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rat a = c_[i];
            if (first) {
                if (a < 0) { out << "-"; a = -a; }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (i == 0) {
                out << rat_to_string(a);
            } else {
                if (a != 1) out << rat_to_string(a) << "*";
                out << "z";
                if (i > 1) out << "^" << i;
            }
        }
        if (first) return "0";
        return out.str();
    }

private:
    int n_;
    std::vector<Rat> c_;   // size phi(n_) after reduction (or 1 when n_ == 1)

    void trim() {
        std::size_t want = (n_ == 1) ? 1 : detail::cyclotomic_polynomial(n_).size() - 1;
        c_.resize(want);
    }

    static std::vector<Rat> to_rat_poly(const std::vector<Int>& p) {
        std::vector<Rat> out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
        return out;
    }
    static int poly_deg(const std::vector<Rat>& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    }
    static bool poly_is_zero(const std::vector<Rat>& p) { return poly_deg(p) < 0; }
    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (poly_is_zero(a) || poly_is_zero(b)) return {Rat(0)};
        std::vector<Rat> out(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] += a[i] * b[j];
        return out;
    }
    static std::vector<Rat> poly_sub(std::vector<Rat> a, const std::vector<Rat>& b) {
        if (a.size() < b.size()) a.resize(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return a;
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>>
    poly_divmod(std::vector<Rat> num, const std::vector<Rat>& den) {
        int dd = poly_deg(den);
        std::vector<Rat> quot(std::max<std::size_t>(num.size(), 1));
        for (int k = poly_deg(num); k >= dd; k = poly_deg(num)) {
            Rat c = num[k] / den[dd];
            quot[k - dd] = c;
            for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
        }
        return {quot, num};
    }

    /// Reduce a raw coefficient vector modulo Phi_n.
    static std::vector<Rat> reduce(std::vector<Rat> raw, int n) {
        if (n == 1) {
            Rat total = 0;   // zeta_1 = 1
            for (const auto& c : raw) total += c;
            return {total};
        }
        const std::vector<Int>& phi = detail::cyclotomic_polynomial(n);
        std::size_t deg = phi.size() - 1;
        for (int k = static_cast<int>(raw.size()) - 1; k >= static_cast<int>(deg); --k) {
            Rat c = raw[k];
            if (c == 0) continue;
            raw[k] = 0;
            for (std::size_t j = 0; j < deg; ++j)
                raw[k - deg + j] -= c * Rat(phi[j]);
        }
        raw.resize(deg);
        return raw;
    }

    /// Bring two elements into a common conductor (lcm).
    static std::pair<Cyclotomic, Cyclotomic> unify(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return {a, b};
        int n = std::lcm(a.n_, b.n_);
        return {a.promoted(n), b.promoted(n)};
    }

    Cyclotomic promoted(int n) const {
        if (n == n_) return *this;
        int step = n / n_;
        std::vector<Rat> raw;
        raw.resize((c_.size() - 1) * static_cast<std::size_t>(step) + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
        Cyclotomic z;
        z.n_ = n;
        z.c_ = reduce(std::move(raw), n);
        z.trim();
        return z;
    }
};

} // namespace delocx
