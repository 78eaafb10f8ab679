#include <gtest/gtest.h>

#include "neutral/criteria.hpp"
#include "neutral/verify.hpp"

using namespace neutral;

namespace {

Character ch(std::vector<Int> c) { return Character{std::move(c)}; }

Representation rep(std::vector<Int> d, const std::vector<std::pair<Character, Int>>& m) {
    return Representation(FiniteAbelianGroup(std::move(d)), m);
}

const Representation c4 = rep({4}, {{ch({1}), 1}, {ch({2}), 1}});
const Representation rho_rho = rep({2}, {{ch({1}), 2}});
const Representation rigid33 = rep({3, 3}, {{ch({1, 0}), 1}, {ch({0, 1}), 2}, {ch({1, 1}), 4}});
const Representation swap33 = rep({3, 3}, {{ch({1, 0}), 1}, {ch({0, 1}), 1}, {ch({1, 1}), 1}});

Strategy strategy_of(const PrimeVerdict& v) { return v.certificate.value().strategy; }

/// Every representation of Z/n with total dimension <= max_dim.
std::vector<Representation> cyclic_sweep(Int n, Int max_dim) {
    std::vector<Representation> out;
    std::vector<Int> m(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, std::size_t i, Int left) -> void {
        if (i == m.size()) {
            std::vector<std::pair<Character, Int>> e;
            for (std::size_t a = 0; a < m.size(); ++a)
                if (m[a]) e.emplace_back(ch({static_cast<Int>(a)}), m[a]);
            out.emplace_back(FiniteAbelianGroup({n}), e);
            return;
        }
        for (Int k = 0; k <= left; ++k) {
            m[i] = k;
            self(self, i + 1, left - k);
        }
        m[i] = 0;
    };
    rec(rec, 0, max_dim);
    return out;
}

} // namespace

TEST(EasyCyclic, WorkedValues) {
    const auto v = check_easy_cyclic(c4, 2);
    ASSERT_TRUE(v.certified());
    EXPECT_EQ(std::get<EasyCyclicWitness>(v.certificate->witness), (EasyCyclicWitness{2, 1}));
    EXPECT_FALSE(check_easy_cyclic(rho_rho, 2).certified());
    EXPECT_TRUE(check_easy_cyclic(rep({3}, {{ch({1}), 1}}), 3).certified());
    EXPECT_THROW(check_easy_cyclic(swap33, 3), Error);
    EXPECT_THROW(check_easy_cyclic(c4, 3), Error);
}

TEST(LargePrime, WorkedValues) {
    EXPECT_TRUE(check_large_prime(rep({5}, {{ch({1}), 2}}), 5).certified());
    EXPECT_FALSE(check_large_prime(rep({5}, {{ch({1}), 5}}), 5).certified());
    const auto v = check_large_prime(rep({6}, {{ch({2}), 1}}), 3);
    ASSERT_TRUE(v.certified());
    EXPECT_EQ(std::get<LargePrimeWitness>(v.certificate->witness).restrictions, std::vector<Character>{ch({2})});
    EXPECT_FALSE(check_large_prime(rep({9}, {{ch({3}), 1}}), 3).certified());
}

TEST(CyclicGeneral, WorkedValues) {
    const auto z3 = check_cyclic_general(rep({3}, {{ch({1}), 1}, {ch({2}), 1}}), 3);
    ASSERT_TRUE(z3.certified());
    const auto& w = std::get<CyclicGeneralWitness>(z3.certificate->witness);
    EXPECT_EQ(w.character, ch({1}));
    EXPECT_EQ(w.orbit_size, 2);
    EXPECT_TRUE(w.condition.b);

    const auto v4 = check_cyclic_general(c4, 2);
    ASSERT_TRUE(v4.certified());
    const auto& w4 = std::get<CyclicGeneralWitness>(v4.certificate->witness);
    EXPECT_EQ(w4.character, ch({1}));
    EXPECT_EQ(w4.orbit_size, 1);
    EXPECT_TRUE(w4.condition.b);

    EXPECT_FALSE(check_cyclic_general(rho_rho, 2).certified());
    EXPECT_THROW(check_cyclic_general(swap33, 3), Error);
}

TEST(LinesAndGenerators, WorkedValues) {
    const auto r = check_lines_generators(rigid33, 3);
    ASSERT_TRUE(r.certified());
    const auto& w = std::get<LinesAndGeneratorsWitness>(r.certificate->witness);
    EXPECT_TRUE(w.generators.empty());
    EXPECT_EQ(w.set.size(), 3u);  // multiplicities 1, 2, 4 are all prime to 3
    EXPECT_FALSE(check_lines_generators(swap33, 3).certified());
    EXPECT_TRUE(check_lines_generators(rep({2}, {{ch({1}), 1}}), 2).certified());
}

TEST(CheckPrime, WorkedValues) {
    EXPECT_EQ(strategy_of(check_prime(c4, 2)), Strategy::EasyCyclic);
    const auto u = check_prime(rho_rho, 2);
    EXPECT_FALSE(u.certified());
    EXPECT_EQ(u.reasons.size(), 3u);
    EXPECT_EQ(strategy_of(check_prime(rigid33, 3)), Strategy::LinesAndGenerators);
}

TEST(CheckPrime, SoundnessSentinel) {
    EXPECT_FALSE(check_easy_cyclic(rho_rho, 2).certified());
    EXPECT_FALSE(check_large_prime(rho_rho, 2).certified());
    EXPECT_FALSE(check_cyclic_general(rho_rho, 2).certified());
    EXPECT_FALSE(check_lines_generators(rho_rho, 2).certified());
    EXPECT_FALSE(check_prime(rho_rho, 2).certified());
    EXPECT_EQ(neutrality_report(rho_rho).overall, Overall::Unknown);
}

TEST(Report, WorkedValues) {
    EXPECT_EQ(neutrality_report(c4).overall, Overall::Neutral);
    EXPECT_EQ(neutrality_report(rho_rho).overall, Overall::Unknown);
    const auto trivial = neutrality_report(Representation(FiniteAbelianGroup{}, {}));
    EXPECT_EQ(trivial.overall, Overall::Neutral);
    EXPECT_TRUE(trivial.primes.empty());
}

TEST(Report, FactorialShortcut) {
    const auto r = neutrality_report(rep({15}, {{ch({1}), 1}, {ch({2}), 1}}));
    EXPECT_TRUE(r.factorial_shortcut);
    EXPECT_EQ(r.overall, Overall::Neutral);
    EXPECT_FALSE(neutrality_report(c4).factorial_shortcut);
}

TEST(Report, CyclicReadingDiagnostic) {
    // Z/6 with the character 2 only: its 3-part generates Z/3, but 2 is not
    // faithful on all of G.
    const auto r = neutrality_report(rep({6}, {{ch({2}), 1}, {ch({3}), 2}}));
    EXPECT_NE(std::find(r.cyclic_reading_differs.begin(), r.cyclic_reading_differs.end(), 3),
              r.cyclic_reading_differs.end());
}

TEST(Report, EasyCyclicOnlyDiagnostic) {
    // Not expected to fire on these cyclic sweeps: EasyCyclic certifying means
    // some orbit outside K_{H_p} has multiplicity and size prime to p.
    for (Int n : {2, 4, 6, 8, 12})
        for (const auto& v : cyclic_sweep(n, 3)) EXPECT_TRUE(neutrality_report(v).easy_cyclic_only.empty());
}

TEST(RSingularity, WorkedValues) {
    const auto a = r_singularity_report(rep({3}, {{ch({1}), 1}, {ch({2}), 1}}));
    EXPECT_EQ(a.status, BridgeStatus::RSingularityCertified);
    EXPECT_EQ(r_singularity_report(c4).status, BridgeStatus::BridgeInapplicable);
    EXPECT_EQ(r_singularity_report(rho_rho).status, BridgeStatus::Inconclusive);
    EXPECT_EQ(r_singularity_report(rep({4}, {{ch({2}), 2}})).status, BridgeStatus::BridgeInapplicable);
}

TEST(Consistency, CyclicGeneralEqualsLinesWhenPrimaryPartIsCyclic) {
    for (Int n : {2, 3, 4, 5, 6, 8, 9, 12})
        for (const auto& v : cyclic_sweep(n, 4))
            for (Int p : prime_divisors(n))
                EXPECT_EQ(check_cyclic_general(v, p).certified(), check_lines_generators(v, p).certified());
    for (const auto& v : {c4, rep({2, 4}, {{ch({0, 1}), 1}, {ch({1, 0}), 1}})})
        for (Int p : prime_divisors(v.group().order()))
            if (v.group().primary_part(p).p_rank() == 1) {
                EXPECT_EQ(check_cyclic_general(v, p).certified(), check_lines_generators(v, p).certified());
            }
}

TEST(Consistency, CheckPrimeIsCertifiedIffSomeStrategyIs) {
    for (Int n : {2, 3, 4, 6, 8, 9, 12})
        for (const auto& v : cyclic_sweep(n, 4))
            for (Int p : prime_divisors(n)) {
                const bool any = check_easy_cyclic(v, p).certified() || check_large_prime(v, p).certified() ||
                                 check_cyclic_general(v, p).certified() || check_lines_generators(v, p).certified();
                EXPECT_EQ(check_prime(v, p).certified(), any);
            }
}

TEST(Consistency, EveryCertificateVerifies) {
    for (Int n : {2, 3, 4, 5, 6, 8, 9, 12})
        for (const auto& v : cyclic_sweep(n, 4))
            for (Int p : prime_divisors(n))
                for (const auto& r : {check_easy_cyclic(v, p), check_large_prime(v, p), check_cyclic_general(v, p),
                                      check_lines_generators(v, p)})
                    if (r.certified()) {
                        EXPECT_TRUE(verify_certificate(v, *r.certificate));
                    }
}
