#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bzl {

constexpr int kMaxVars = 8;

// Exponent vector. Ordered by total degree, then lexicographically, so that
// maps keyed on it iterate in graded order.
struct MultiIndex {
    std::array<uint8_t, kMaxVars> e{};
    uint8_t n = 0;

    MultiIndex() = default;
    explicit MultiIndex(int nvars) : n(static_cast<uint8_t>(nvars)) {
        if (nvars > kMaxVars) throw std::invalid_argument("too many jet variables");
    }
    MultiIndex(std::initializer_list<int> xs) : n(static_cast<uint8_t>(xs.size())) {
        int i = 0;
        for (int x : xs) e[i++] = static_cast<uint8_t>(x);
    }
    static MultiIndex from_vector(const std::vector<int> &v) {
        MultiIndex a(static_cast<int>(v.size()));
        for (size_t i = 0; i < v.size(); ++i) a.e[i] = static_cast<uint8_t>(v[i]);
        return a;
    }
    static MultiIndex unit(int nvars, int k) {
        MultiIndex a(nvars);
        a.e[k] = 1;
        return a;
    }

    int size() const { return n; }
    int operator[](int i) const { return e[i]; }
    int degree() const {
        int d = 0;
        for (int i = 0; i < n; ++i) d += e[i];
        return d;
    }
    int first_nonzero() const {
        for (int i = 0; i < n; ++i)
            if (e[i]) return i;
        return -1;
    }
    MultiIndex operator+(const MultiIndex &o) const {
        MultiIndex r(n);
        for (int i = 0; i < n; ++i) r.e[i] = static_cast<uint8_t>(e[i] + o.e[i]);
        return r;
    }
    // Componentwise difference; caller guarantees o <= *this.
    MultiIndex operator-(const MultiIndex &o) const {
        MultiIndex r(n);
        for (int i = 0; i < n; ++i) r.e[i] = static_cast<uint8_t>(e[i] - o.e[i]);
        return r;
    }
    bool dominates(const MultiIndex &o) const {
        for (int i = 0; i < n; ++i)
            if (e[i] < o.e[i]) return false;
        return true;
    }
    MultiIndex bumped(int k, int by = 1) const {
        MultiIndex r = *this;
        r.e[k] = static_cast<uint8_t>(r.e[k] + by);
        return r;
    }
    std::vector<int> to_vector() const { return std::vector<int>(e.begin(), e.begin() + n); }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) {
        return a.n == b.n && a.e == b.e;
    }
    friend bool operator<(const MultiIndex &a, const MultiIndex &b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e > b.e; // x0 before x1 within a degree
    }
};

inline double factorial(int k) {
    double r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// alpha! as an integer-valued long (exponents are small at desk scale).
inline long multi_factorial(const MultiIndex &a) {
    long r = 1;
    for (int i = 0; i < a.n; ++i)
        for (int j = 2; j <= a.e[i]; ++j) r *= j;
    return r;
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline long multi_binomial(const MultiIndex &a, const MultiIndex &b) {
    long r = 1;
    for (int i = 0; i < a.n; ++i) r *= binomial(a.e[i], b.e[i]);
    return r;
}

// Every multi-index in nvars variables with degree <= maxdeg, graded order.
inline std::vector<MultiIndex> monomials_upto(int nvars, int maxdeg) {
    std::vector<MultiIndex> out;
    MultiIndex cur(nvars);
    for (int d = 0; d <= maxdeg; ++d) {
        // enumerate compositions of d into nvars parts, lexicographically descending
        std::vector<MultiIndex> block;
        std::vector<int> v(nvars, 0);
        auto rec = [&](auto &&self, int i, int left) -> void {
            if (i == nvars - 1) {
                v[i] = left;
                block.push_back(MultiIndex::from_vector(v));
                return;
            }
            for (int k = left; k >= 0; --k) {
                v[i] = k;
                self(self, i + 1, left - k);
            }
        };
        if (nvars == 0) {
            if (d == 0) out.push_back(cur);
            continue;
        }
        rec(rec, 0, d);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

// All beta <= alpha componentwise.
inline std::vector<MultiIndex> sub_indices(const MultiIndex &a) {
    std::vector<MultiIndex> out{MultiIndex(a.n)};
    for (int i = 0; i < a.n; ++i) {
        std::vector<MultiIndex> next;
        for (auto &b : out)
            for (int k = 0; k <= a.e[i]; ++k) next.push_back(b.bumped(i, k));
        out.swap(next);
    }
    return out;
}

} // namespace bzl
