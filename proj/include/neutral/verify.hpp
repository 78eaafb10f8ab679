#pragma once

#include <set>
#include <string>
#include <vector>

#include "neutral/criteria.hpp"

namespace neutral {

namespace verify_detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedCertificate, what); }

inline void require_member(const FiniteAbelianGroup& g, const Character& c, const char* field) {
    if (!g.contains(c)) malformed(std::string(field) + " is not a reduced element of the group");
}

inline Character image(const FiniteAbelianGroup& g, const IntMatrix& m, const Character& c) {
    Character out = g.zero();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const Int d = g.invariant_factors()[i];
        __int128 acc = 0;
        for (std::size_t j = 0; j < g.rank(); ++j) acc += static_cast<__int128>(m(i, j)) * c.coords[j];
        out.coords[i] = static_cast<Int>(((acc % d) + d) % d);
    }
    return out;
}

inline bool injective(const FiniteAbelianGroup& g, const IntMatrix& m) {
    for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(g.order()); ++i)
        if (image(g, m, g.element(i)) == g.zero()) return false;
    return true;
}

/// AutV by running through every admissible endomorphism matrix when that is
/// affordable, else by generator closure.
inline std::vector<IntMatrix> aut_v_matrices(const Representation& v, std::size_t cap) {
    const auto& g = v.group();
    const auto& d = g.invariant_factors();
    const std::size_t k = g.rank();
    g.require_enumerable();

    auto preserves = [&](const IntMatrix& m) {
        for (const auto& [chi, mult] : v.support())
            if (v.multiplicity(image(g, m, chi)) != mult) return false;
        return true;
    };

    double candidates = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) candidates *= static_cast<double>(std::gcd(d[i], d[j]));

    std::vector<IntMatrix> out;
    if (candidates * static_cast<double>(g.order()) > 5e7) {
        for (auto& a : close_group(g, aut_generators(g), cap))
            if (preserves(a.matrix)) out.push_back(a.matrix);
        return out;
    }

    IntMatrix m(k, k);
    std::vector<Int> step(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) step[i * k + j] = d[i] / std::gcd(d[i], d[j]);
    for (;;) {
        if (preserves(m) && injective(g, m)) out.push_back(m);
        std::size_t pos = k * k;
        while (pos-- > 0) {
            const std::size_t i = pos / k, j = pos % k;
            m(i, j) += step[pos];
            if (m(i, j) < d[i]) break;
            m(i, j) = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
    }
    if (out.size() > cap) throw Error(ErrorCode::CapExceeded, "AutV exceeds cap " + std::to_string(cap));
    return out;
}

/// dim of the F_p-span, by enumerating the span when it is small.
inline std::size_t span_dimension(const std::vector<FpVector>& vs, Int p, std::size_t len) {
    double bound = 1;
    for (std::size_t i = 0; i < len; ++i) bound *= static_cast<double>(p);
    if (bound > 65536) return rank_mod_p(vs, p);
    std::set<FpVector> span{FpVector(len, 0)};
    for (const auto& v : vs) {
        std::set<FpVector> next;
        for (const auto& s : span)
            for (Int c = 0; c < p; ++c) {
                FpVector w = s;
                for (std::size_t i = 0; i < len; ++i) w[i] = mod(w[i] + c * v[i], p);
                next.insert(std::move(w));
            }
        span = std::move(next);
    }
    std::size_t dim = 0;
    for (std::size_t size = span.size(); size > 1; size /= static_cast<std::size_t>(p)) ++dim;
    return dim;
}

inline FpVector reduction(const FiniteAbelianGroup& g, const Character& c, Int p) {
    FpVector v;
    for (std::size_t i = 0; i < g.rank(); ++i)
        if (g.invariant_factors()[i] % p == 0) v.push_back(mod(c.coords[i], p));
    return v;
}

inline Character p_component(const FiniteAbelianGroup& g, const Character& c, Int p) {
    Character out;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const Int d = g.invariant_factors()[i];
        if (d % p != 0) continue;
        Int q = 1;
        for (Int x = d; x % p == 0; x /= p) q *= p;
        out.coords.push_back(mod(c.coords[i], q));
    }
    return out;
}

inline bool nonzero(const FpVector& v) {
    for (Int x : v)
        if (x != 0) return true;
    return false;
}

// Does the induced map send every nonzero vector into its own line?
inline bool fixes_lines(const FiniteAbelianGroup& g, const IntMatrix& m, Int p, std::size_t r) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.rank(); ++i)
        if (g.invariant_factors()[i] % p == 0) idx.push_back(i);
    IntMatrix induced(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) induced(i, j) = mod(m(idx[i], idx[j]), p);

    double total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= static_cast<double>(p);
    if (total > 4096) return is_scalar_mod_p(induced, p);

    FpVector v(r, 0);
    for (;;) {
        std::size_t pos = 0;
        while (pos < r && ++v[pos] == p) v[pos++] = 0;
        if (pos == r) break;
        FpVector w(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) w[i] = mod(w[i] + induced(i, j) * v[j], p);
        bool on_line = false;
        for (Int c = 1; c < p && !on_line; ++c) {
            on_line = true;
            for (std::size_t i = 0; i < r; ++i) on_line &= w[i] == mod(c * v[i], p);
        }
        if (!on_line) return false;
    }
    return true;
}

struct OrbitData {
    std::size_t size;
    Character sum;
};

inline OrbitData orbit_of(const FiniteAbelianGroup& g, const std::vector<IntMatrix>& autv, const Character& c) {
    std::set<Character> orbit;
    for (const auto& m : autv) orbit.insert(image(g, m, c));
    Character sum = g.zero();
    for (const auto& x : orbit) sum = g.add(sum, x);
    return {orbit.size(), sum};
}

} // namespace verify_detail

/// Re-derives every hypothesis of the certificate from (V, certificate)
/// without trusting stored derived values. Structural problems raise
/// MalformedCertificate; any failed hypothesis or mismatch returns false.
inline bool verify_certificate(const Representation& v, const Certificate& c, std::size_t cap = kDefaultCap) {
    using namespace verify_detail;
    const auto& g = v.group();
    const Int p = c.prime;
    if (!is_prime(p)) malformed("prime " + std::to_string(p) + " is not prime");
    if (g.order() % p != 0) malformed("prime " + std::to_string(p) + " does not divide |G| = " + std::to_string(g.order()));

    std::size_t r = 0;
    for (Int d : g.invariant_factors()) r += d % p == 0 ? 1 : 0;

    switch (c.strategy) {
    case Strategy::EasyCyclic: {
        const auto* w = std::get_if<EasyCyclicWitness>(&c.witness);
        if (!w) malformed("EasyCyclic certificate without EasyCyclic witness");
        if (g.rank() != 1) return false;
        Int dim = 0, fixed = 0;
        for (const auto& [chi, m] : v.support()) {
            dim += m;
            if (chi.coords[0] % p == 0) fixed += m;
        }
        return w->dim == dim && w->fixed_dim == fixed && (dim - fixed) % p != 0;
    }
    case Strategy::LargePrime: {
        const auto* w = std::get_if<LargePrimeWitness>(&c.witness);
        if (!w) malformed("LargePrime certificate without LargePrime witness");
        if (w->support.size() != w->restrictions.size()) malformed("LargePrime witness lists differ in length");
        Int dim = 0;
        std::vector<Character> supp;
        for (const auto& [chi, m] : v.support()) {
            dim += m;
            supp.push_back(chi);
        }
        if (w->dim != dim || p <= dim || w->support != supp) return false;
        std::vector<FpVector> images;
        for (std::size_t i = 0; i < supp.size(); ++i) {
            if (w->restrictions[i] != p_component(g, supp[i], p)) return false;
            images.push_back(reduction(g, supp[i], p));
        }
        return span_dimension(images, p, r) == r;
    }
    case Strategy::CyclicGeneral: {
        const auto* w = std::get_if<CyclicGeneralWitness>(&c.witness);
        if (!w) malformed("CyclicGeneral certificate without CyclicGeneral witness");
        require_member(g, w->character, "witness character");
        if (r != 1) return false;
        const Int m = v.multiplicity(w->character);
        if (m != w->multiplicity || m % p == 0) return false;
        const auto autv = aut_v_matrices(v, cap);
        const OrbitData o = orbit_of(g, autv, w->character);
        if (static_cast<Int>(o.size) != w->orbit_size) return false;
        if (w->restriction != p_component(g, w->character, p)) return false;
        if (w->orbit_sum_restriction != p_component(g, o.sum, p)) return false;
        const bool a = nonzero(reduction(g, o.sum, p));
        const bool b = o.size % static_cast<std::size_t>(p) != 0 && nonzero(reduction(g, w->character, p));
        if (w->condition.a != a || w->condition.b != b) return false;
        return a || b;
    }
    case Strategy::LinesAndGenerators: {
        const auto* w = std::get_if<LinesAndGeneratorsWitness>(&c.witness);
        if (!w) malformed("LinesAndGenerators certificate without LinesAndGenerators witness");
        if (w->generators.size() != w->scalars.size()) malformed("generator and scalar lists differ in length");
        const auto autv = aut_v_matrices(v, cap);
        for (const auto& m : autv)
            if (!fixes_lines(g, m, p, r)) return false;
        const std::set<IntMatrix> autv_set(autv.begin(), autv.end());
        for (std::size_t i = 0; i < w->generators.size(); ++i) {
            const auto& m = w->generators[i];
            if (m.rows() != g.rank() || m.cols() != g.rank()) malformed("generator matrix has the wrong shape");
            if (!autv_set.contains(m)) return false;
            for (std::size_t a = 0; a < g.rank(); ++a)
                if (g.invariant_factors()[a] % p == 0 && mod(m(a, a), p) != mod(w->scalars[i], p)) return false;
        }

        std::vector<LinesMember> expected;
        for (const auto& [chi, m] : v.support()) {
            if (m % p == 0) continue;
            const OrbitData o = orbit_of(g, autv, chi);
            OrbitCondition cond{nonzero(reduction(g, o.sum, p)), o.size % static_cast<std::size_t>(p) != 0};
            if (cond.any()) expected.push_back(LinesMember{chi, cond, reduction(g, chi, p)});
        }
        if (expected != w->set) return false;
        std::vector<FpVector> images;
        for (const auto& e : expected) images.push_back(e.image);
        return span_dimension(images, p, r) == r;
    }
    }
    malformed("unknown strategy");
}

} // namespace neutral
