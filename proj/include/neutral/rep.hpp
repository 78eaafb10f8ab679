#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "neutral/abelian.hpp"
#include "neutral/autgroup.hpp"

namespace neutral {

/// A representation of Diag(Ghat), recorded as the dimension of each
/// eigenspace. `group()` is the character group Ghat.
class Representation {
public:
    Representation() = default;

    Representation(FiniteAbelianGroup g, const std::vector<std::pair<Character, Int>>& entries)
        : group_(std::move(g)) {
        for (const auto& [chi, m] : entries) {
            Character c = group_.reduce(chi.coords);
            if (m <= 0)
                throw Error(ErrorCode::NonPositiveMultiplicity,
                            "multiplicity " + std::to_string(m) + " of character " + to_text(c));
            if (!mult_.emplace(c, m).second)
                throw Error(ErrorCode::DuplicateCharacter, "character " + to_text(c) + " listed twice");
            dim_ = detail::checked_add(dim_, m);
        }
    }

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    /// Support in lexicographic order.
    const std::map<Character, Int>& support() const noexcept { return mult_; }
    Int dim() const noexcept { return dim_; }

    Int multiplicity(const Character& c) const {
        auto it = mult_.find(c);
        return it == mult_.end() ? 0 : it->second;
    }

    MultiplicityMap dense() const {
        group_.require_enumerable();
        MultiplicityMap m(static_cast<std::size_t>(group_.order()), 0);
        for (const auto& [c, v] : mult_) m[group_.index_of(c)] = v;
        return m;
    }

    std::vector<Character> support_characters() const {
        std::vector<Character> out;
        for (const auto& kv : mult_) out.push_back(kv.first);
        return out;
    }

    bool operator==(const Representation& o) const { return group_ == o.group_ && mult_ == o.mult_; }

private:
    static std::string to_text(const Character& c) {
        std::string s = "[";
        for (std::size_t i = 0; i < c.coords.size(); ++i) s += (i ? "," : "") + std::to_string(c.coords[i]);
        return s + "]";
    }

    FiniteAbelianGroup group_;
    std::map<Character, Int> mult_;
    Int dim_ = 0;
};

/// A point of G = Diag(Ghat), written in the coordinates dual to Ghat's.
struct GroupElement {
    std::vector<Int> coords;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;
};

/// <chi, g> in Z/e with e the exponent: sum a_i g_i (e / d_i).
inline Int pairing(const FiniteAbelianGroup& g, const Character& chi, const GroupElement& x) {
    const Int e = g.exponent();
    Int acc = 0;
    for (std::size_t i = 0; i < g.rank(); ++i)
        acc = mod(acc + mulmod(mulmod(chi.coords[i], x.coords[i], e), e / g.invariant_factors()[i], e), e);
    return acc;
}

/// dim V^H where `annihilator` is the set of characters trivial on H.
inline Int fixed_dim(const Representation& v, const Subgroup& annihilator) {
    Int total = 0;
    for (const auto& [chi, m] : v.support())
        if (subgroup_membership(chi, annihilator)) total += m;
    return total;
}

/// For cyclic Ghat = Z/n and p | n: characters trivial on the order-p
/// subgroup H_p, i.e. the multiples of p.
inline Subgroup cyclic_h_p_annihilator(const FiniteAbelianGroup& g, Int p) {
    if (g.rank() != 1) throw Error(ErrorCode::NotCyclic, "H_p is only defined here for cyclic groups");
    require_prime(p);
    if (g.order() % p != 0)
        throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " does not divide " + std::to_string(g.order()));
    return Subgroup{g, {g.reduce({p})}};
}

inline bool is_faithful(const Representation& v, std::size_t cap = kDefaultCap) {
    const auto supp = v.support_characters();
    return generates(supp, v.group(), cap);
}

/// Non-identity elements moving exactly one line: the total multiplicity of
/// characters pairing nontrivially with them is 1.
inline std::vector<GroupElement> pseudoreflections(const Representation& v) {
    const auto& g = v.group();
    std::vector<GroupElement> out;
    const auto n = static_cast<std::uint64_t>(g.order());
    g.require_enumerable();
    for (std::uint64_t i = 1; i < n; ++i) {
        GroupElement x{g.element(i).coords};
        Int moved = 0;
        for (const auto& [chi, m] : v.support()) {
            if (pairing(g, chi, x) != 0) moved += m;
            if (moved > 1) break;
        }
        if (moved == 1) out.push_back(std::move(x));
    }
    return out;
}

struct BlendedOrbit {
    Orbit orbit;
    Character determinant_character;  // d * (sum of the orbit)
};

struct BlendedDecomposition {
    AutVSubgroup aut_v;
    OrbitPartition partition;
    std::vector<BlendedOrbit> records;  // parallel to partition.orbits
};

inline Character orbit_sum(const FiniteAbelianGroup& g, const Orbit& o) {
    Character s = g.zero();
    for (const auto& c : o.members) s = g.add(s, c);
    return s;
}

inline BlendedDecomposition blended_decomposition(const Representation& v, std::size_t cap = kDefaultCap) {
    BlendedDecomposition b{aut_v_subgroup(v.group(), v.dense(), cap), {}, {}};
    b.partition = orbit_partition(b.aut_v);
    for (const auto& o : b.partition.orbits)
        b.records.push_back(BlendedOrbit{o, v.group().scale(orbit_sum(v.group(), o), o.multiplicity)});
    return b;
}

} // namespace neutral
