#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "neutral/abelian.hpp"
#include "neutral/autgroup.hpp"
#include "neutral/rep.hpp"

namespace neutral {

enum class Strategy { EasyCyclic, LargePrime, CyclicGeneral, LinesAndGenerators };

constexpr std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::EasyCyclic: return "EasyCyclic";
    case Strategy::LargePrime: return "LargePrime";
    case Strategy::CyclicGeneral: return "CyclicGeneral";
    case Strategy::LinesAndGenerators: return "LinesAndGenerators";
    }
    return "?";
}

/// Which alternative of the orbit condition a character satisfies: (a) the
/// restricted orbit sum is primitive, (b) the orbit size is prime to p.
struct OrbitCondition {
    bool a = false;
    bool b = false;

    bool any() const noexcept { return a || b; }
    std::string tag() const { return std::string(a ? "a" : "") + (b ? "b" : ""); }
    bool operator==(const OrbitCondition&) const = default;
};

struct EasyCyclicWitness {
    Int dim = 0;
    Int fixed_dim = 0;
    bool operator==(const EasyCyclicWitness&) const = default;
};

struct LargePrimeWitness {
    Int dim = 0;
    std::vector<Character> support;
    std::vector<Character> restrictions;  // primary projections, parallel to `support`
    bool operator==(const LargePrimeWitness&) const = default;
};

struct CyclicGeneralWitness {
    Character character;
    Int multiplicity = 0;
    Int orbit_size = 0;
    Character restriction;             // of the character itself
    Character orbit_sum_restriction;   // of the sum over its orbit
    OrbitCondition condition;
    bool operator==(const CyclicGeneralWitness&) const = default;
};

struct LinesMember {
    Character character;
    OrbitCondition condition;
    FpVector image;  // in Ghat_p / p Ghat_p
    bool operator==(const LinesMember&) const = default;
};

struct LinesAndGeneratorsWitness {
    std::vector<LinesMember> set;
    std::vector<IntMatrix> generators;  // AutV generators, full matrices
    std::vector<Int> scalars;           // scalar each induces on Ghat_p / p Ghat_p
    bool operator==(const LinesAndGeneratorsWitness&) const = default;
};

using Witness = std::variant<EasyCyclicWitness, LargePrimeWitness, CyclicGeneralWitness, LinesAndGeneratorsWitness>;

struct Certificate {
    Int prime = 0;
    Strategy strategy = Strategy::EasyCyclic;
    Witness witness;
    bool operator==(const Certificate&) const = default;
};

/// Certified means the prime is not critical. Unknown never means critical.
struct PrimeVerdict {
    Int prime = 0;
    std::optional<Certificate> certificate;
    std::vector<std::string> reasons;

    bool certified() const noexcept { return certificate.has_value(); }
    bool operator==(const PrimeVerdict&) const = default;

    static PrimeVerdict certify(Certificate c) {
        PrimeVerdict v;
        v.prime = c.prime;
        v.certificate = std::move(c);
        return v;
    }
    static PrimeVerdict unknown(Int p, std::string reason) {
        PrimeVerdict v;
        v.prime = p;
        v.reasons.push_back(std::move(reason));
        return v;
    }
};

enum class Overall { Neutral, Unknown };

struct NeutralityReport {
    std::vector<PrimeVerdict> primes;
    Overall overall = Overall::Unknown;
    bool faithful = false;
    std::vector<GroupElement> pseudoreflections;
    bool factorial_shortcut = false;       // faithful and every p | |G| exceeds dim V
    std::vector<Int> cyclic_reading_differs;  // primes where "faithful on G" would change CyclicGeneral
    std::vector<Int> easy_cyclic_only;        // certified by EasyCyclic but no orbit-based strategy
    bool operator==(const NeutralityReport&) const = default;
};

namespace detail {

inline void require_dividing_prime(const FiniteAbelianGroup& g, Int p) {
    require_prime(p);
    if (g.order() % p != 0)
        throw Error(ErrorCode::InvalidPrime,
                    std::to_string(p) + " does not divide the group order " + std::to_string(g.order()));
}

inline bool primitive(const FpVector& v) {
    for (Int x : v)
        if (x != 0) return true;
    return false;
}

inline std::string matrix_text(const IntMatrix& m) {
    std::ostringstream os;
    os << m;
    return os.str();
}

// Orbit data is shared by the two orbit-based strategies; computed on demand.
class OrbitContext {
public:
    OrbitContext(const Representation& v, std::size_t cap) : v_(v), cap_(cap) {}

    const BlendedDecomposition& get() {
        if (!b_) b_ = blended_decomposition(v_, cap_);
        return *b_;
    }

private:
    const Representation& v_;
    std::size_t cap_;
    std::optional<BlendedDecomposition> b_;
};

inline OrbitCondition orbit_condition(const FiniteAbelianGroup& g, const PrimaryPart& pp, const Orbit& o,
                                      const Character& chi) {
    OrbitCondition c;
    c.a = primitive(mod_p_image(g, orbit_sum(g, o), pp));
    c.b = static_cast<Int>(o.size()) % pp.prime != 0 && primitive(mod_p_image(g, chi, pp));
    return c;
}

inline PrimeVerdict cyclic_general(const Representation& v, Int p, OrbitContext& ctx) {
    const auto& g = v.group();
    detail::require_dividing_prime(g, p);
    const PrimaryPart pp = g.primary_part(p);
    if (pp.p_rank() != 1)
        throw Error(ErrorCode::NonCyclicPrimaryPart,
                    "CyclicGeneral needs a cyclic primary part at p=" + std::to_string(p));
    const auto& b = ctx.get();
    for (const auto& [chi, m] : v.support()) {
        if (m % p == 0) continue;
        const Orbit& o = b.partition.orbit_containing(g, chi);
        const OrbitCondition cond = orbit_condition(g, pp, o, chi);
        if (!cond.any()) continue;
        CyclicGeneralWitness w{chi, m, static_cast<Int>(o.size()), primary_projection(g, chi, pp),
                               primary_projection(g, orbit_sum(g, o), pp), cond};
        return PrimeVerdict::certify(Certificate{p, Strategy::CyclicGeneral, std::move(w)});
    }
    return PrimeVerdict::unknown(p, "CyclicGeneral: no character with multiplicity prime to " + std::to_string(p) +
                                        " satisfies (a) or (b)");
}

inline PrimeVerdict lines_generators(const Representation& v, Int p, OrbitContext& ctx) {
    const auto& g = v.group();
    detail::require_dividing_prime(g, p);
    const PrimaryPart pp = g.primary_part(p);
    const auto& b = ctx.get();

    LinesAndGeneratorsWitness w;
    for (const auto& a : b.aut_v.generators) {
        IntMatrix induced = induced_on_frattini_quotient(pp, a);
        if (!is_scalar_mod_p(induced, p))
            return PrimeVerdict::unknown(p, "LinesAndGenerators: AutV moves a line of Ghat_p/pGhat_p (generator " +
                                                matrix_text(a.matrix) + ")");
        w.generators.push_back(a.matrix);
        w.scalars.push_back(induced(0, 0));
    }

    std::vector<FpVector> images;
    for (const auto& [chi, m] : v.support()) {
        if (m % p == 0) continue;
        const Orbit& o = b.partition.orbit_containing(g, chi);
        OrbitCondition cond;
        cond.a = primitive(mod_p_image(g, orbit_sum(g, o), pp));
        cond.b = static_cast<Int>(o.size()) % p != 0;
        if (!cond.any()) continue;
        FpVector img = mod_p_image(g, chi, pp);
        images.push_back(img);
        w.set.push_back(LinesMember{chi, cond, std::move(img)});
    }
    const std::size_t rank = rank_mod_p(images, p);
    if (rank != pp.p_rank())
        return PrimeVerdict::unknown(p, "LinesAndGenerators: S has " + std::to_string(w.set.size()) +
                                            " characters whose images span rank " + std::to_string(rank) + " < " +
                                            std::to_string(pp.p_rank()));
    return PrimeVerdict::certify(Certificate{p, Strategy::LinesAndGenerators, std::move(w)});
}

} // namespace detail

/// Ghat cyclic: certified iff p does not divide dim V - dim V^{H_p}.
inline PrimeVerdict check_easy_cyclic(const Representation& v, Int p) {
    const auto& g = v.group();
    if (g.rank() != 1) throw Error(ErrorCode::NotCyclic, "EasyCyclic needs a cyclic character group");
    detail::require_dividing_prime(g, p);
    const Int fixed = fixed_dim(v, cyclic_h_p_annihilator(g, p));
    const Int diff = v.dim() - fixed;
    if (diff % p != 0)
        return PrimeVerdict::certify(Certificate{p, Strategy::EasyCyclic, EasyCyclicWitness{v.dim(), fixed}});
    return PrimeVerdict::unknown(p, "EasyCyclic: dim V - dim V^H_p = " + std::to_string(v.dim()) + " - " +
                                        std::to_string(fixed) + " = " + std::to_string(diff) +
                                        " is divisible by " + std::to_string(p));
}

/// Certified iff p > dim V and V restricted to G_p is faithful.
inline PrimeVerdict check_large_prime(const Representation& v, Int p) {
    const auto& g = v.group();
    detail::require_dividing_prime(g, p);
    if (p <= v.dim())
        return PrimeVerdict::unknown(p, "LargePrime: p = " + std::to_string(p) + " does not exceed dim V = " +
                                            std::to_string(v.dim()));
    const PrimaryPart pp = g.primary_part(p);
    LargePrimeWitness w{v.dim(), {}, {}};
    for (const auto& [chi, m] : v.support()) {
        w.support.push_back(chi);
        w.restrictions.push_back(primary_projection(g, chi, pp));
    }
    if (!generates(w.restrictions, pp.group))
        return PrimeVerdict::unknown(p, "LargePrime: V is not faithful on G_p");
    return PrimeVerdict::certify(Certificate{p, Strategy::LargePrime, std::move(w)});
}

/// Ghat_p cyclic: some chi with p not dividing m(chi) meets (a) or (b).
inline PrimeVerdict check_cyclic_general(const Representation& v, Int p, std::size_t cap = kDefaultCap) {
    detail::OrbitContext ctx(v, cap);
    return detail::cyclic_general(v, p, ctx);
}

/// AutV acts trivially on lines of Ghat_p/pGhat_p and S spans it.
inline PrimeVerdict check_lines_generators(const Representation& v, Int p, std::size_t cap = kDefaultCap) {
    detail::OrbitContext ctx(v, cap);
    return detail::lines_generators(v, p, ctx);
}

/// Tries EasyCyclic, LargePrime, then CyclicGeneral when Ghat_p is cyclic or
/// LinesAndGenerators otherwise. With one line, LinesAndGenerators reduces to
/// CyclicGeneral, so only one of the two runs.
inline PrimeVerdict check_prime(const Representation& v, Int p, std::size_t cap = kDefaultCap) {
    const auto& g = v.group();
    detail::require_dividing_prime(g, p);
    std::vector<std::string> reasons;
    auto take = [&](PrimeVerdict r) -> std::optional<PrimeVerdict> {
        if (r.certified()) return r;
        reasons.insert(reasons.end(), r.reasons.begin(), r.reasons.end());
        return std::nullopt;
    };

    if (g.rank() == 1)
        if (auto r = take(check_easy_cyclic(v, p))) return *r;
    if (auto r = take(check_large_prime(v, p))) return *r;

    detail::OrbitContext ctx(v, cap);
    const bool cyclic_part = g.primary_part(p).p_rank() == 1;
    auto r = cyclic_part ? detail::cyclic_general(v, p, ctx) : detail::lines_generators(v, p, ctx);
    if (auto c = take(std::move(r))) return *c;

    PrimeVerdict out;
    out.prime = p;
    out.reasons = std::move(reasons);
    return out;
}

namespace detail {

// CyclicGeneral under the reading where the witness must be faithful on all of G.
inline bool cyclic_general_literal(const Representation& v, Int p, OrbitContext& ctx) {
    const auto& g = v.group();
    if (!g.is_cyclic()) return false;
    const PrimaryPart pp = g.primary_part(p);
    const auto& b = ctx.get();
    for (const auto& [chi, m] : v.support()) {
        if (m % p == 0 || g.element_order(chi) != g.order()) continue;
        const Orbit& o = b.partition.orbit_containing(g, chi);
        if (primitive(mod_p_image(g, orbit_sum(g, o), pp)) || static_cast<Int>(o.size()) % p != 0) return true;
    }
    return false;
}

} // namespace detail

inline NeutralityReport neutrality_report(const Representation& v, std::size_t cap = kDefaultCap) {
    const auto& g = v.group();
    NeutralityReport r;
    r.faithful = is_faithful(v, std::max<std::size_t>(cap, static_cast<std::size_t>(g.order())));
    r.pseudoreflections = pseudoreflections(v);

    bool all = true;
    bool all_large = true;
    for (Int p : prime_divisors(g.order())) {
        r.primes.push_back(check_prime(v, p, cap));
        all &= r.primes.back().certified();
        all_large &= p > v.dim();
    }
    r.overall = all ? Overall::Neutral : Overall::Unknown;
    r.factorial_shortcut = r.faithful && all_large && !g.is_trivial();

    // Diagnostics; skipped silently if the closure does not fit.
    try {
        detail::OrbitContext ctx(v, cap);
        for (Int p : prime_divisors(g.order())) {
            if (g.primary_part(p).p_rank() != 1) continue;
            const bool implemented = detail::cyclic_general(v, p, ctx).certified();
            if (implemented != detail::cyclic_general_literal(v, p, ctx)) r.cyclic_reading_differs.push_back(p);
            if (g.rank() == 1 && check_easy_cyclic(v, p).certified() && !implemented)
                r.easy_cyclic_only.push_back(p);
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded) throw;
    }
    return r;
}

/// Restricted to one prime; overall reflects only that prime.
inline NeutralityReport neutrality_report_for_prime(const Representation& v, Int p, std::size_t cap = kDefaultCap) {
    NeutralityReport r;
    r.faithful = is_faithful(v, std::max<std::size_t>(cap, static_cast<std::size_t>(v.group().order())));
    r.pseudoreflections = pseudoreflections(v);
    r.primes.push_back(check_prime(v, p, cap));
    r.overall = r.primes.back().certified() ? Overall::Neutral : Overall::Unknown;
    return r;
}

enum class BridgeStatus { RSingularityCertified, BridgeInapplicable, Inconclusive };

constexpr std::string_view to_string(BridgeStatus s) {
    switch (s) {
    case BridgeStatus::RSingularityCertified: return "R-singularity certified";
    case BridgeStatus::BridgeInapplicable: return "bridge inapplicable";
    case BridgeStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct RSingularityReport {
    BridgeStatus status = BridgeStatus::Inconclusive;
    std::vector<std::string> notes;
    NeutralityReport neutrality;
};

/// Quotient singularity V/G at the origin, assuming |G| is invertible in the
/// base field. No pseudoreflections plus neutrality gives an R-singularity.
inline RSingularityReport r_singularity_report(const Representation& v, std::size_t cap = kDefaultCap) {
    RSingularityReport r;
    r.neutrality = neutrality_report(v, cap);
    r.notes.push_back("assumes the tame case: |G| is invertible in the base field");
    r.notes.push_back("pseudoreflection read as: non-identity element whose fixed subspace has codimension 1");
    r.notes.push_back("the converse (R-singularity implies neutral) needs input this tool cannot produce");
    if (!r.neutrality.faithful) {
        r.status = BridgeStatus::BridgeInapplicable;
        r.notes.push_back("representation is not faithful");
    } else if (!r.neutrality.pseudoreflections.empty()) {
        r.status = BridgeStatus::BridgeInapplicable;
        r.notes.push_back("G contains pseudoreflections; without that hypothesis neutrality does not imply an "
                          "R-singularity (chi + chi^2 on C_4 is neutral but not one)");
    } else if (r.neutrality.overall != Overall::Neutral) {
        r.status = BridgeStatus::Inconclusive;
        r.notes.push_back("neutrality criteria inconclusive");
    } else {
        r.status = BridgeStatus::RSingularityCertified;
    }
    return r;
}

} // namespace neutral
