#pragma once

// Brute-force reference implementations used by the tests. Nothing here calls
// into the library; everything works on plain integer vectors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;

inline long long md(long long a, long long m) { return ((a % m) + m) % m; }

inline Vec add(const Vec& a, const Vec& b, const Vec& d) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = md(a[i] + b[i], d[i]);
    return r;
}

inline long long order(const Vec& d) {
    long long n = 1;
    for (long long x : d) n *= x;
    return n;
}

inline std::vector<Vec> elements(const Vec& d) {
    std::vector<Vec> out;
    Vec cur(d.size(), 0);
    for (long long i = 0; i < order(d); ++i) {
        out.push_back(cur);
        for (std::size_t j = d.size(); j-- > 0;) {
            if (++cur[j] < d[j]) break;
            cur[j] = 0;
        }
    }
    return out;
}

/// Subgroup generated by `gens`, by breadth-first closure under addition.
inline std::set<Vec> closure(const std::vector<Vec>& gens, const Vec& d) {
    std::set<Vec> seen{Vec(d.size(), 0)};
    std::vector<Vec> frontier{Vec(d.size(), 0)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Vec y = add(x, g, d);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

/// An endomorphism given by the images of the standard generators.
struct Endo {
    std::vector<Vec> images;
};

inline Vec apply(const Endo& f, const Vec& x, const Vec& d) {
    Vec r(d.size(), 0);
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t i = 0; i < d.size(); ++i) r[i] = md(r[i] + x[j] * f.images[j][i], d[i]);
    return r;
}

/// Every bijective endomorphism: each generator e_j may go to any element
/// killed by d_j, and the map is kept if its image is everything.
inline std::vector<Endo> automorphisms(const Vec& d) {
    const auto elems = elements(d);
    std::vector<std::vector<Vec>> choices(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        for (const auto& y : elems) {
            bool killed = true;
            for (std::size_t i = 0; i < d.size(); ++i) killed &= md(y[i] * d[j], d[i]) == 0;
            if (killed) choices[j].push_back(y);
        }
    std::vector<Endo> out;
    std::vector<std::size_t> pick(d.size(), 0);
    for (;;) {
        Endo f;
        for (std::size_t j = 0; j < d.size(); ++j) f.images.push_back(choices[j][pick[j]]);
        std::set<Vec> img;
        for (const auto& x : elems) img.insert(apply(f, x, d));
        if (static_cast<long long>(img.size()) == order(d)) out.push_back(f);
        std::size_t j = 0;
        while (j < d.size() && ++pick[j] == choices[j].size()) pick[j++] = 0;
        if (j == d.size()) break;
    }
    return out;
}

/// Orbits of the multiplicity-preserving automorphisms among `autos`, each
/// sorted, the list sorted by first member.
inline std::vector<std::vector<Vec>> orbits(const Vec& d, const std::map<Vec, long long>& mult,
                                            const std::vector<Endo>& autos) {
    auto m = [&](const Vec& x) {
        auto it = mult.find(x);
        return it == mult.end() ? 0LL : it->second;
    };
    const auto elems = elements(d);
    std::vector<const Endo*> autv;
    for (const auto& f : autos) {
        bool keep = true;
        for (const auto& x : elems) keep = keep && m(apply(f, x, d)) == m(x);
        if (keep) autv.push_back(&f);
    }
    std::set<std::vector<Vec>> out;
    for (const auto& x : elems) {
        std::set<Vec> o;
        for (const auto* f : autv) o.insert(apply(*f, x, d));
        out.insert(std::vector<Vec>(o.begin(), o.end()));
    }
    return {out.begin(), out.end()};
}

inline std::vector<std::vector<Vec>> orbits(const Vec& d, const std::map<Vec, long long>& mult) {
    return orbits(d, mult, automorphisms(d));
}

/// Cofactor expansion; fine for the tiny matrices used here.
inline long long det(const Mat& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    long long s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            Vec row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        s += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
    }
    return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Diagonal of the Smith form from determinantal divisors: d_1 ... d_i is the
/// gcd of all i x i minors.
inline Vec smith_diagonal(const Mat& a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Vec divisors{1};
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        long long g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat m;
                for (auto i : r) {
                    Vec row;
                    for (auto j : c) row.push_back(a[i][j]);
                    m.push_back(row);
                }
                g = std::gcd(g, std::llabs(det(m)));
            }
        divisors.push_back(g);
    }
    Vec out;
    for (std::size_t k = 1; k < divisors.size(); ++k)
        out.push_back(divisors[k] == 0 ? 0 : divisors[k] / divisors[k - 1]);
    return out;
}

/// CRT idempotent for the p-part of Z/n, found by search.
inline long long idempotent(long long n, long long p) {
    long long q = 1;
    while (n % (q * p) == 0) q *= p;
    const long long m = n / q;
    for (long long e = 0; e < n; ++e)
        if (md(e, q) == md(1, q) && e % m == 0) return e;
    return -1;
}

/// All finite abelian groups (as invariant factor chains, at most two
/// factors) of order <= bound.
inline std::vector<Vec> small_groups(long long bound) {
    std::vector<Vec> out;
    for (long long n = 2; n <= bound; ++n) out.push_back({n});
    for (long long a = 2; a * a <= bound; ++a)
        for (long long b = a; a * b <= bound; b += a) out.push_back({a, b});
    return out;
}

} // namespace oracle
