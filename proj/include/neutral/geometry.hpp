#pragma once

#include <map>
#include <string>
#include <vector>

#include "neutral/integer.hpp"

namespace neutral {

enum class ModuliVerdict { DefinedOverFieldOfModuli, Unknown };

constexpr std::string_view to_string(ModuliVerdict v) {
    return v == ModuliVerdict::DefinedOverFieldOfModuli ? "DefinedOverFieldOfModuli" : "Unknown";
}

/// Smooth projective curve of genus >= 2 whose automorphism group is cyclic
/// of order n; `quotient_genus[p]` is the genus of X / H_p.
struct CurveInstance {
    Int n = 1;
    Int genus = 2;
    std::map<Int, Int> quotient_genus;
};

/// Pointed variety (X, x0) with Aut(X, x0) = mu_n; `fixed_dim[p]` is the
/// local dimension of X^{H_p} at x0.
struct MarkedInstance {
    Int n = 1;
    Int dim = 1;
    std::map<Int, Int> fixed_dim;
};

struct PrimeDifference {
    Int prime = 0;
    Int difference = 0;
    bool divisible = false;
};

struct ModuliReport {
    ModuliVerdict verdict = ModuliVerdict::Unknown;
    std::vector<PrimeDifference> primes;
    std::vector<std::string> assumptions;  // hypotheses asserted by the caller, recorded as given
};

namespace detail {

template <class OnMissing>
void check_prime_keys(Int n, const std::map<Int, Int>& entries, ErrorCode missing, OnMissing&& name) {
    if (n < 1) throw Error(ErrorCode::InvalidDims, "group order n must be >= 1");
    const auto primes = prime_divisors(n);
    for (Int p : primes)
        if (!entries.contains(p)) throw Error(missing, name(p));
    for (const auto& [p, v] : entries) {
        (void)v;
        if (!is_prime(p) || n % p != 0)
            throw Error(ErrorCode::ExtraneousPrime,
                        "entry for " + std::to_string(p) + ", which is not a prime divisor of n = " + std::to_string(n));
    }
}

inline ModuliReport difference_report(Int n, Int total, const std::map<Int, Int>& part) {
    ModuliReport r;
    bool all = true;
    for (Int p : prime_divisors(n)) {
        const Int diff = total - part.at(p);
        const bool div = diff % p == 0;
        r.primes.push_back(PrimeDifference{p, diff, div});
        all &= !div;
    }
    r.verdict = all ? ModuliVerdict::DefinedOverFieldOfModuli : ModuliVerdict::Unknown;
    return r;
}

} // namespace detail

/// Defined over the field of moduli when p does not divide g - g(X/H_p) for
/// every prime p | n.
inline ModuliReport curve_check(const CurveInstance& c) {
    detail::check_prime_keys(c.n, c.quotient_genus, ErrorCode::MissingQuotientGenus,
                             [](Int p) { return "no quotient genus for prime " + std::to_string(p); });
    if (c.genus < 2) throw Error(ErrorCode::InvalidGenus, "genus " + std::to_string(c.genus) + " < 2");
    for (const auto& [p, gp] : c.quotient_genus)
        if (gp < 0 || gp > c.genus)
            throw Error(ErrorCode::InvalidGenus, "quotient genus " + std::to_string(gp) + " at p = " +
                                                     std::to_string(p) + " outside [0, " + std::to_string(c.genus) + "]");
    ModuliReport r = detail::difference_report(c.n, c.genus, c.quotient_genus);
    r.assumptions = {"Aut(X) is exactly cyclic of order " + std::to_string(c.n),
                     "n is prime to the characteristic of the base field"};
    return r;
}

/// Defined over the field of moduli when p does not divide
/// dim X - dim X^{H_p} at x0 for every prime p | n.
inline ModuliReport marked_check(const MarkedInstance& mi) {
    detail::check_prime_keys(mi.n, mi.fixed_dim, ErrorCode::MissingFixedDim,
                             [](Int p) { return "no fixed dimension for prime " + std::to_string(p); });
    if (mi.dim < 1) throw Error(ErrorCode::InvalidDims, "dim " + std::to_string(mi.dim) + " < 1");
    for (const auto& [p, f] : mi.fixed_dim)
        if (f < 0 || f > mi.dim)
            throw Error(ErrorCode::InvalidDims, "fixed dimension " + std::to_string(f) + " at p = " +
                                                    std::to_string(p) + " outside [0, " + std::to_string(mi.dim) + "]");
    ModuliReport r = detail::difference_report(mi.n, mi.dim, mi.fixed_dim);
    r.assumptions = {"Aut(X, x0) is mu_" + std::to_string(mi.n), "x0 is a smooth point"};
    return r;
}

struct ReductionNote {
    std::vector<std::string> lines;
};

/// How the curve check reduces to the cyclic criterion on H^0(X, Omega).
inline ReductionNote curve_to_representation_note(const CurveInstance& c) {
    ReductionNote note;
    note.lines.push_back("representation: H^0(X, Omega_X) of Z/" + std::to_string(c.n) + ", of dimension g = " +
                         std::to_string(c.genus));
    note.lines.push_back("g(X/H_p) = dim H^0(X/H_p, Omega) = dim H^0(X, Omega)^{H_p}");
    for (const auto& [p, gp] : c.quotient_genus) {
        const Int diff = c.genus - gp;
        if (diff % p != 0)
            note.lines.push_back("p = " + std::to_string(p) + ": induced check is " + std::to_string(p) +
                                 " does not divide " + std::to_string(diff));
        else
            note.lines.push_back("p = " + std::to_string(p) + ": " + std::to_string(p) + " divides " +
                                 std::to_string(diff) + "; criterion silent, not a negative result");
    }
    return note;
}

} // namespace neutral
