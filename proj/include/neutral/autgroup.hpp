#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "neutral/abelian.hpp"
#include "neutral/fp.hpp"

namespace neutral {

/// An automorphism of a finite abelian group. Column j of `matrix` is the
/// image of the j-th standard generator; `permutation[i]` is the index of the
/// image of the element with index i.
struct Automorphism {
    IntMatrix matrix;
    std::vector<std::uint32_t> permutation;

    bool operator==(const Automorphism& o) const { return matrix == o.matrix; }
    auto operator<=>(const Automorphism& o) const { return matrix <=> o.matrix; }
};

/// Dense multiplicity map indexed by element index.
using MultiplicityMap = std::vector<Int>;

namespace detail {

struct VecHash {
    std::size_t operator()(const std::vector<Int>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline Character apply_matrix(const FiniteAbelianGroup& g, const IntMatrix& m, const Character& c) {
    const std::size_t k = g.rank();
    Character out{std::vector<Int>(k, 0)};
    for (std::size_t i = 0; i < k; ++i) {
        const Int d = g.invariant_factors()[i];
        Int acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc = mod(acc + mulmod(m(i, j), c.coords[j], d), d);
        out.coords[i] = acc;
    }
    return out;
}

// a o b, rows reduced modulo their invariant factor.
inline IntMatrix compose_matrices(const FiniteAbelianGroup& g, const IntMatrix& a, const IntMatrix& b) {
    const std::size_t k = g.rank();
    IntMatrix c(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const Int d = g.invariant_factors()[i];
        for (std::size_t j = 0; j < k; ++j) {
            Int acc = 0;
            for (std::size_t t = 0; t < k; ++t) acc = mod(acc + mulmod(a(i, t), b(t, j), d), d);
            c(i, j) = acc;
        }
    }
    return c;
}

inline std::vector<std::uint32_t> induced_permutation(const FiniteAbelianGroup& g, const IntMatrix& m) {
    g.require_enumerable();
    const auto n = static_cast<std::uint64_t>(g.order());
    std::vector<std::uint32_t> perm(n);
    for (std::uint64_t i = 0; i < n; ++i)
        perm[i] = static_cast<std::uint32_t>(g.index_of(apply_matrix(g, m, g.element(i))));
    return perm;
}

// Generators of the unit group (Z/d)^x, chosen greedily in increasing order.
inline std::vector<Int> unit_group_generators(Int d) {
    std::vector<Int> gens;
    std::vector<char> in(static_cast<std::size_t>(d), 0);
    in[1 % d] = 1;
    std::vector<Int> members{1 % d};
    for (Int u = 2; u < d; ++u) {
        if (std::gcd(u, d) != 1 || in[static_cast<std::size_t>(u)]) continue;
        gens.push_back(u);
        for (std::size_t h = 0; h < members.size(); ++h)
            for (Int s : gens) {
                Int next = mulmod(members[h], s, d);
                if (!in[static_cast<std::size_t>(next)]) {
                    in[static_cast<std::size_t>(next)] = 1;
                    members.push_back(next);
                }
            }
    }
    return gens;
}

} // namespace detail

/// Entry (i, j) must be a multiple of d_i / gcd(d_i, d_j) so that the image of
/// e_j has order dividing d_j.
inline bool respects_orders(const FiniteAbelianGroup& g, const IntMatrix& m) {
    const auto& d = g.invariant_factors();
    if (m.rows() != g.rank() || m.cols() != g.rank()) return false;
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = 0; j < g.rank(); ++j) {
            if (m(i, j) < 0 || m(i, j) >= d[i]) return false;
            if (m(i, j) % (d[i] / std::gcd(d[i], d[j])) != 0) return false;
        }
    return true;
}

/// Builds an automorphism from a column matrix, checking well-definedness and
/// bijectivity.
inline Automorphism make_automorphism(const FiniteAbelianGroup& g, IntMatrix m) {
    for (std::size_t i = 0; i < m.rows() && i < g.rank(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), g.invariant_factors()[i]);
    if (!respects_orders(g, m))
        throw Error(ErrorCode::SchemaError, "matrix does not define an endomorphism of the group");
    auto perm = detail::induced_permutation(g, m);
    std::vector<char> hit(perm.size(), 0);
    for (auto v : perm) {
        if (hit[v]) throw Error(ErrorCode::SchemaError, "matrix does not define a bijection");
        hit[v] = 1;
    }
    return Automorphism{std::move(m), std::move(perm)};
}

inline Automorphism identity_automorphism(const FiniteAbelianGroup& g) {
    return make_automorphism(g, IntMatrix::identity(g.rank()));
}

/// Standard generators of Aut: unit scalings of one coordinate, elementary
/// transvections e_j -> e_j + c e_i with the smallest admissible c, and swaps
/// of coordinates with equal invariant factors.
inline std::vector<Automorphism> aut_generators(const FiniteAbelianGroup& g) {
    const std::size_t k = g.rank();
    const auto& d = g.invariant_factors();
    std::vector<Automorphism> gens;
    for (std::size_t i = 0; i < k; ++i)
        for (Int u : detail::unit_group_generators(d[i])) {
            IntMatrix m = IntMatrix::identity(k);
            m(i, i) = u;
            gens.push_back(make_automorphism(g, std::move(m)));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            IntMatrix m = IntMatrix::identity(k);
            m(i, j) = mod(d[i] / std::gcd(d[i], d[j]), d[i]);
            gens.push_back(make_automorphism(g, std::move(m)));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (d[i] != d[j]) continue;
            IntMatrix m = IntMatrix::identity(k);
            m.swap_cols(i, j);
            gens.push_back(make_automorphism(g, std::move(m)));
        }
    return gens;
}

/// Breadth-first closure of `gens` under composition. The result always
/// contains the identity and is sorted lexicographically by matrix.
inline std::vector<Automorphism> close_group(const FiniteAbelianGroup& g, const std::vector<Automorphism>& gens,
                                             std::size_t cap = kDefaultCap) {
    if (cap < 1) throw Error(ErrorCode::CapExceeded, "cap must be at least 1");
    std::vector<IntMatrix> found{IntMatrix::identity(g.rank())};
    std::unordered_map<std::vector<Int>, std::size_t, detail::VecHash> seen{{found.front().data(), 0}};
    for (std::size_t head = 0; head < found.size(); ++head) {
        for (const auto& s : gens) {
            IntMatrix next = detail::compose_matrices(g, s.matrix, found[head]);
            if (seen.contains(next.data())) continue;
            if (found.size() >= cap)
                throw Error(ErrorCode::CapExceeded,
                            "automorphism closure exceeds cap " + std::to_string(cap));
            seen.emplace(next.data(), found.size());
            found.push_back(std::move(next));
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<Automorphism> out;
    out.reserve(found.size());
    for (auto& m : found) {
        auto perm = detail::induced_permutation(g, m);
        out.push_back(Automorphism{std::move(m), std::move(perm)});
    }
    return out;
}

/// The automorphisms preserving a multiplicity map.
struct AutVSubgroup {
    FiniteAbelianGroup group;
    MultiplicityMap multiplicity;
    std::vector<Automorphism> elements;    // sorted by matrix
    std::vector<Automorphism> generators;  // greedy: each is outside the span of the earlier ones
};

inline AutVSubgroup aut_v_subgroup(const FiniteAbelianGroup& g, MultiplicityMap m, std::size_t cap = kDefaultCap) {
    g.require_enumerable();
    if (m.size() != static_cast<std::size_t>(g.order()))
        throw Error(ErrorCode::SchemaError, "multiplicity map size does not match group order");
    AutVSubgroup s{g, std::move(m), {}, {}};
    for (auto& a : close_group(g, aut_generators(g), cap)) {
        bool keep = true;
        for (std::size_t i = 0; i < a.permutation.size() && keep; ++i)
            keep = s.multiplicity[a.permutation[i]] == s.multiplicity[i];
        if (keep) s.elements.push_back(std::move(a));
    }

    std::unordered_map<std::vector<Int>, char, detail::VecHash> spanned{
        {IntMatrix::identity(g.rank()).data(), 1}};
    for (const auto& a : s.elements) {
        if (spanned.contains(a.matrix.data())) continue;
        s.generators.push_back(a);
        spanned.clear();
        for (auto& b : close_group(g, s.generators, s.elements.size())) spanned.emplace(b.matrix.data(), 1);
    }
    return s;
}

struct Orbit {
    std::vector<Character> members;  // ascending; members.front() is the representative
    Int multiplicity = 0;

    std::size_t size() const noexcept { return members.size(); }
};

/// Orbits of an AutV action covering the whole group.
struct OrbitPartition {
    std::vector<Orbit> orbits;       // ordered by representative
    std::vector<std::size_t> orbit_of;  // element index -> position in `orbits`

    const Orbit& orbit_containing(const FiniteAbelianGroup& g, const Character& c) const {
        return orbits.at(orbit_of.at(g.index_of(c)));
    }
};

inline OrbitPartition orbit_partition(const AutVSubgroup& s) {
    const auto n = static_cast<std::size_t>(s.group.order());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : s.generators)
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t ra = find(i), rb = find(a.permutation[i]);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }

    OrbitPartition part;
    part.orbit_of.assign(n, 0);
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = part.orbits.size();
            part.orbits.push_back(Orbit{{}, s.multiplicity[i]});
        }
        part.orbit_of[i] = slot[r];
        part.orbits[slot[r]].members.push_back(s.group.element(i));
    }
    return part;
}

/// Matrix of the map an automorphism induces on Ghat_p / p Ghat_p.
inline IntMatrix induced_on_frattini_quotient(const PrimaryPart& pp, const Automorphism& a) {
    const std::size_t r = pp.p_rank();
    IntMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = mod(a.matrix(pp.coordinates[i], pp.coordinates[j]), pp.prime);
    return m;
}

/// Every line of Ghat_p / p Ghat_p is fixed iff each generator acts as a scalar.
inline bool acts_trivially_on_lines(const AutVSubgroup& s, Int p) {
    if (s.group.order() % p != 0)
        throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " does not divide the group order");
    const PrimaryPart pp = s.group.primary_part(p);
    for (const auto& a : s.generators)
        if (!is_scalar_mod_p(induced_on_frattini_quotient(pp, a), p)) return false;
    return true;
}

} // namespace neutral
