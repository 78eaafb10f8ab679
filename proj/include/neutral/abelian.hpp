#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "neutral/error.hpp"
#include "neutral/fp.hpp"
#include "neutral/integer.hpp"
#include "neutral/smith.hpp"

namespace neutral {

/// Closure computations give up beyond this many elements unless told otherwise.
inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Groups larger than this are never enumerated element by element.
inline constexpr Int kMaxEnumerableOrder = Int{1} << 24;

/// An element of a finite abelian group in invariant-factor coordinates.
/// Coordinates are always reduced; comparison is lexicographic.
struct Character {
    std::vector<Int> coords;

    bool operator==(const Character&) const = default;
    auto operator<=>(const Character&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Character& c) {
    os << '(';
    for (std::size_t i = 0; i < c.coords.size(); ++i) os << (i ? "," : "") << c.coords[i];
    return os << ')';
}

class FiniteAbelianGroup;

/// The p-primary part of a group: factors p^{e_i} for the coordinates i with
/// p | d_i. `coordinates[j]` is the parent coordinate carrying factor j.
struct PrimaryPart;

/// Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k and every d_i >= 2.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;

    /// Takes factors already in canonical form; anything else is rejected.
    explicit FiniteAbelianGroup(std::vector<Int> invariant_factors)
        : factors_(std::move(invariant_factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw Error(ErrorCode::InvalidGroup,
                            "invariant factor " + std::to_string(factors_[i]) + " must be >= 2");
            if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
                throw Error(ErrorCode::InvalidGroup,
                            "invariant factors must form a divisibility chain: " +
                                std::to_string(factors_[i]) + " does not divide " +
                                std::to_string(factors_[i + 1]));
        }
        order_ = 1;
        for (Int d : factors_) order_ = detail::checked_mul(order_, d);
    }

    static FiniteAbelianGroup cyclic(Int n) {
        return n == 1 ? FiniteAbelianGroup{} : FiniteAbelianGroup({n});
    }

    const std::vector<Int>& invariant_factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    Int order() const noexcept { return order_; }
    Int exponent() const noexcept { return factors_.empty() ? 1 : factors_.back(); }
    bool is_cyclic() const noexcept { return factors_.size() <= 1; }
    bool is_trivial() const noexcept { return factors_.empty(); }

    bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

    Character zero() const { return Character{std::vector<Int>(rank(), 0)}; }

    Character reduce(std::vector<Int> coords) const {
        if (coords.size() != rank())
            throw Error(ErrorCode::BadCoordinateLength,
                        "expected " + std::to_string(rank()) + " coordinates, got " +
                            std::to_string(coords.size()));
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod(coords[i], factors_[i]);
        return Character{std::move(coords)};
    }

    bool contains(const Character& c) const {
        if (c.coords.size() != rank()) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (c.coords[i] < 0 || c.coords[i] >= factors_[i]) return false;
        return true;
    }

    Character add(const Character& a, const Character& b) const {
        Character r = a;
        for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(a.coords[i] + b.coords[i], factors_[i]);
        return r;
    }

    Character negate(const Character& a) const {
        Character r = a;
        for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(-a.coords[i], factors_[i]);
        return r;
    }

    Character scale(const Character& a, Int n) const {
        Character r = a;
        for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mulmod(a.coords[i], n, factors_[i]);
        return r;
    }

    /// Additive order of an element.
    Int element_order(const Character& a) const {
        Int ord = 1;
        for (std::size_t i = 0; i < rank(); ++i) {
            Int g = std::gcd(a.coords[i], factors_[i]);
            ord = std::lcm(ord, factors_[i] / g);
        }
        return ord;
    }

    /// Mixed-radix index; the first coordinate is most significant, so index
    /// order is lexicographic order.
    std::uint64_t index_of(const Character& c) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            idx = idx * static_cast<std::uint64_t>(factors_[i]) + static_cast<std::uint64_t>(c.coords[i]);
        return idx;
    }

    Character element(std::uint64_t idx) const {
        Character c{std::vector<Int>(rank(), 0)};
        for (std::size_t i = rank(); i-- > 0;) {
            c.coords[i] = static_cast<Int>(idx % static_cast<std::uint64_t>(factors_[i]));
            idx /= static_cast<std::uint64_t>(factors_[i]);
        }
        return c;
    }

    void require_enumerable() const {
        if (order_ > kMaxEnumerableOrder)
            throw Error(ErrorCode::GroupTooLarge,
                        "group of order " + std::to_string(order_) + " is too large to enumerate");
    }

    /// All elements in lexicographic order.
    std::vector<Character> elements() const {
        require_enumerable();
        std::vector<Character> out;
        out.reserve(static_cast<std::size_t>(order_));
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(order_); ++i) out.push_back(element(i));
        return out;
    }

    /// Standard generator e_i.
    Character basis(std::size_t i) const {
        Character c = zero();
        c.coords.at(i) = 1;
        return c;
    }

    PrimaryPart primary_part(Int p) const;

private:
    std::vector<Int> factors_;
    Int order_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) {
    if (g.is_trivial()) return os << "0";
    for (std::size_t i = 0; i < g.rank(); ++i) os << (i ? " + " : "") << "Z/" << g.invariant_factors()[i];
    return os;
}

struct PrimaryPart {
    Int prime = 0;
    FiniteAbelianGroup group;
    std::vector<std::size_t> coordinates;

    std::size_t p_rank() const noexcept { return coordinates.size(); }
};

inline PrimaryPart FiniteAbelianGroup::primary_part(Int p) const {
    require_prime(p);
    PrimaryPart pp;
    pp.prime = p;
    std::vector<Int> factors;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (factors_[i] % p != 0) continue;
        factors.push_back(prime_power_part(factors_[i], p).second);
        pp.coordinates.push_back(i);
    }
    pp.group = FiniteAbelianGroup(std::move(factors));
    return pp;
}

/// A group together with the map from the coordinates it was given in to
/// canonical coordinates.
struct Presentation {
    FiniteAbelianGroup group;
    std::size_t input_rank = 0;
    IntMatrix transform;                // input_rank x input_rank, unimodular
    std::vector<std::size_t> kept;      // transformed coordinates with d_i > 1

    /// Maps a coordinate vector in the input generators to a reduced element.
    Character map(const std::vector<Int>& coords) const {
        if (coords.size() != input_rank)
            throw Error(ErrorCode::BadCoordinateLength,
                        "expected " + std::to_string(input_rank) + " coordinates, got " +
                            std::to_string(coords.size()));
        std::vector<Int> out;
        out.reserve(kept.size());
        for (std::size_t t = 0; t < kept.size(); ++t) {
            const std::size_t col = kept[t];
            const Int d = group.invariant_factors()[t];
            Int acc = 0;
            for (std::size_t i = 0; i < input_rank; ++i)
                acc = mod(acc + mulmod(coords[i], transform(i, col), d), d);
            out.push_back(acc);
        }
        return Character{std::move(out)};
    }
};

/// Cokernel of a relation matrix: each row is a relation among the columns'
/// generators.
inline Presentation present(const IntMatrix& relations) {
    const std::size_t k = relations.cols();
    SmithForm snf = smith_normal_form(relations);
    const auto diag = snf.invariants();
    if (diag.size() < k)
        throw Error(ErrorCode::InfiniteGroup,
                    "relation matrix has rank " + std::to_string(diag.size()) + " < " + std::to_string(k));
    Presentation pr;
    pr.input_rank = k;
    pr.transform = std::move(snf.right);
    std::vector<Int> factors;
    for (std::size_t i = 0; i < k; ++i) {
        if (diag[i] == 0) throw Error(ErrorCode::InfiniteGroup, "relation matrix is not of full rank");
        if (diag[i] == 1) continue;
        factors.push_back(diag[i]);
        pr.kept.push_back(i);
    }
    pr.group = FiniteAbelianGroup(std::move(factors));
    return pr;
}

inline FiniteAbelianGroup from_relations(const IntMatrix& relations) { return present(relations).group; }

/// Z/n_1 + ... + Z/n_k for arbitrary positive n_i, normalized.
inline Presentation present_orders(const std::vector<Int>& orders) {
    IntMatrix m(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1)
            throw Error(ErrorCode::InvalidGroup, "cyclic factor order " + std::to_string(orders[i]) + " must be >= 1");
        m(i, i) = orders[i];
    }
    return present(m);
}

/// The p-component of an element: per coordinate, the CRT idempotent that is
/// 1 mod p^e and 0 mod the prime-to-p part acts as reduction mod p^e.
inline Character primary_projection(const FiniteAbelianGroup& g, const Character& chi, const PrimaryPart& pp) {
    std::vector<Int> out;
    out.reserve(pp.p_rank());
    for (std::size_t j = 0; j < pp.p_rank(); ++j)
        out.push_back(mod(chi.coords[pp.coordinates[j]], pp.group.invariant_factors()[j]));
    (void)g;
    return Character{std::move(out)};
}

inline Character primary_projection(const FiniteAbelianGroup& g, const Character& chi, Int p) {
    return primary_projection(g, chi, g.primary_part(p));
}

/// Image in Ghat_p / p Ghat_p, an F_p-vector of length r_p.
inline FpVector mod_p_image(const FiniteAbelianGroup& g, const Character& chi, const PrimaryPart& pp) {
    (void)g;
    FpVector v;
    v.reserve(pp.p_rank());
    for (std::size_t idx : pp.coordinates) v.push_back(mod(chi.coords[idx], pp.prime));
    return v;
}

inline FpVector mod_p_image(const FiniteAbelianGroup& g, const Character& chi, Int p) {
    return mod_p_image(g, chi, g.primary_part(p));
}

/// Subgroup generated by `gens`, in breadth-first discovery order.
inline std::vector<Character> subgroup_closure(std::span<const Character> gens, const FiniteAbelianGroup& a,
                                               std::size_t cap = kDefaultCap) {
    std::vector<Character> out{a.zero()};
    std::unordered_set<std::uint64_t> seen{a.index_of(out.front())};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& s : gens) {
            Character next = a.add(out[head], s);
            if (seen.insert(a.index_of(next)).second) {
                if (out.size() >= cap)
                    throw Error(ErrorCode::CapExceeded, "subgroup closure exceeds cap " + std::to_string(cap));
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

namespace detail {
inline bool is_prime_power(Int n, Int& prime) {
    if (n < 2) return false;
    auto ps = prime_divisors(n);
    if (ps.size() != 1) return false;
    prime = ps.front();
    return true;
}
} // namespace detail

/// True iff `elems` generate all of `a`. On a p-group this is the Burnside
/// basis test (mod-p images span F_p^r); otherwise explicit closure.
inline bool generates(std::span<const Character> elems, const FiniteAbelianGroup& a,
                      std::size_t cap = kDefaultCap) {
    for (const auto& e : elems)
        if (!a.contains(e)) throw Error(ErrorCode::SchemaError, "element does not belong to the group");
    if (a.is_trivial()) return true;
    Int p = 0;
    if (detail::is_prime_power(a.order(), p)) {
        std::vector<FpVector> rows;
        rows.reserve(elems.size());
        for (const auto& e : elems) {
            FpVector v;
            for (Int x : e.coords) v.push_back(mod(x, p));
            rows.push_back(std::move(v));
        }
        return rank_mod_p(std::move(rows), p) == a.rank();
    }
    if (static_cast<Int>(cap) < a.order())
        throw Error(ErrorCode::CapExceeded, "closure of order-" + std::to_string(a.order()) +
                                                " group exceeds cap " + std::to_string(cap));
    return static_cast<Int>(subgroup_closure(elems, a, cap).size()) == a.order();
}

/// A subgroup given by generators.
struct Subgroup {
    FiniteAbelianGroup parent;
    std::vector<Character> generators;
};

/// Membership by solving x = sum c_j h_j over Z modulo the relations d_i e_i.
inline bool subgroup_membership(const Character& x, const Subgroup& h) {
    const auto& g = h.parent;
    const std::size_t k = g.rank();
    if (!g.contains(x)) throw Error(ErrorCode::SchemaError, "element does not belong to the parent group");
    if (k == 0) return true;
    IntMatrix m(h.generators.size() + k, k);
    for (std::size_t r = 0; r < h.generators.size(); ++r) {
        if (!g.contains(h.generators[r]))
            throw Error(ErrorCode::SchemaError, "subgroup generator does not belong to the parent group");
        for (std::size_t c = 0; c < k; ++c) m(r, c) = h.generators[r].coords[c];
    }
    for (std::size_t i = 0; i < k; ++i) m(h.generators.size() + i, i) = g.invariant_factors()[i];
    const SmithForm snf = smith_normal_form(m);
    // x = y M  <=>  x W = z D with z = y U^{-1}.
    for (std::size_t c = 0; c < k; ++c) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < k; ++i) acc += static_cast<__int128>(x.coords[i]) * snf.right(i, c);
        const Int d = snf.diagonal(c, c);
        if (d == 0 ? acc != 0 : acc % d != 0) return false;
    }
    return true;
}

/// For cyclic Ghat_p = Z/p^e: does the p-part of chi generate it?
inline bool restriction_faithful_on_primary(const FiniteAbelianGroup& g, const Character& chi, Int p) {
    const PrimaryPart pp = g.primary_part(p);
    if (pp.p_rank() > 1)
        throw Error(ErrorCode::NonCyclicPrimaryPart,
                    "primary part at p=" + std::to_string(p) + " has rank " + std::to_string(pp.p_rank()));
    if (pp.p_rank() == 0) return true;
    return mod_p_image(g, chi, pp).front() != 0;
}

} // namespace neutral
