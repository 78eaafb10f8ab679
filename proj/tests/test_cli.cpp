#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "neutral/cli.hpp"

using namespace neutral;

namespace {

std::string sample(const std::string& name) { return std::string(NEUTRAL_SAMPLES) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

template <class F>
Run run(F&& f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

Run check(const std::string& file, cli::CheckOptions opt = {}) {
    return run([&](auto& o, auto& e) { return cli::run_check(file, opt, o, e); });
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("neutral_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

} // namespace

TEST(Check, WorkedExampleIsNeutral) {
    const auto r = check(sample("c4.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "overall: NEUTRAL")) << r.out;
    EXPECT_TRUE(contains(r.out, "p = 2: CERTIFIED by EasyCyclic"));
    EXPECT_TRUE(contains(r.out, "R-singularity: bridge inapplicable"));
}

TEST(Check, RhoPlusRhoCarriesTheRegressionNote) {
    const auto r = check(sample("z2_double.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "overall: UNKNOWN (criteria inconclusive; note: this instance is known not to be neutral)"))
        << r.out;
}

TEST(Check, OtherUnknownsUseTheGenericWording) {
    const auto path = write_temp("swap.json", R"({"group":{"invariant_factors":[3,3]},"representation":[
        {"character":[1,0],"multiplicity":1},{"character":[0,1],"multiplicity":1},{"character":[1,1],"multiplicity":1}]})");
    const auto r = check(path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "overall: UNKNOWN (criteria inconclusive; NOT a proof of non-neutrality)")) << r.out;
}

TEST(Check, InputErrorsExitTwo) {
    const auto dup = check(sample("duplicate.json"));
    EXPECT_EQ(dup.code, 2);
    EXPECT_TRUE(contains(dup.err, "DuplicateCharacter"));
    EXPECT_EQ(check(sample("no_such_file.json")).code, 2);
    EXPECT_EQ(check(write_temp("broken.json", "{")).code, 2);
    const auto missing = check(write_temp("missing.json", R"({"group":{"invariant_factors":[4]}})"));
    EXPECT_EQ(missing.code, 2);
    EXPECT_TRUE(contains(missing.err, "representation"));
}

TEST(Check, PrimeFlag) {
    cli::CheckOptions opt;
    opt.prime = 3;
    const auto r = check(sample("relations_z6.json"), opt);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "p = 3"));
    EXPECT_FALSE(contains(r.out, "p = 2"));
    opt.prime = 5;
    EXPECT_EQ(check(sample("relations_z6.json"), opt).code, 2);
}

TEST(Check, CapExceededExitsThree) {
    cli::CheckOptions opt;
    opt.cap = 1;
    const auto r = check(sample("z3_squared.json"), opt);
    // LargePrime certifies without the closure, so only force the closure here.
    const auto swap = write_temp("cap.json", R"({"group":{"invariant_factors":[3,3]},"representation":[
        {"character":[1,0],"multiplicity":3},{"character":[0,1],"multiplicity":3}]})");
    const auto c = check(swap, opt);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(c.code, 3);
    EXPECT_TRUE(contains(c.err, "cap 1"));
}

TEST(Check, JsonOutputVerifies) {
    cli::CheckOptions opt;
    opt.json = true;
    const auto r = check(sample("z3_squared.json"), opt);
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["report"]["overall"], "Neutral");
    const auto cert = write_temp("z3_report.json", r.out);
    const auto v = run([&](auto& o, auto& e) { return cli::run_verify(sample("z3_squared.json"), cert, kDefaultCap, o, e); });
    EXPECT_EQ(v.code, 0);
    EXPECT_TRUE(contains(v.out, "VALID"));
}

TEST(Verify, SingleAndArrayCertificates) {
    const auto single = write_temp("single.json", R"({"prime":2,"strategy":"EasyCyclic","witness":{"dim":2,"fixed_dim":1}})");
    auto r = run([&](auto& o, auto& e) { return cli::run_verify(sample("c4.json"), single, kDefaultCap, o, e); });
    EXPECT_EQ(r.code, 0);
    const auto forged = write_temp("forged.json", R"([{"prime":2,"strategy":"EasyCyclic","witness":{"dim":2,"fixed_dim":0}}])");
    r = run([&](auto& o, auto& e) { return cli::run_verify(sample("c4.json"), forged, kDefaultCap, o, e); });
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "INVALID"));
    const auto wrong_prime = write_temp("wrong_prime.json", R"({"prime":3,"strategy":"EasyCyclic","witness":{"dim":2,"fixed_dim":1}})");
    r = run([&](auto& o, auto& e) { return cli::run_verify(sample("c4.json"), wrong_prime, kDefaultCap, o, e); });
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "MalformedCertificate"));
}

TEST(Blend, WorkedValues) {
    auto r = run([](auto& o, auto& e) { return cli::run_blend(sample("z5_pair.json"), {}, o, e); });
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "orbits: 3")) << r.out;
    const auto trivial = write_temp("trivial.json", R"({"group":{"invariant_factors":[]},"representation":[]})");
    r = run([&](auto& o, auto& e) { return cli::run_blend(trivial, {}, o, e); });
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "orbits: 1"));
    cli::CheckOptions opt;
    opt.cap = 1;
    r = run([&](auto& o, auto& e) { return cli::run_blend(sample("z5_pair.json"), opt, o, e); });
    EXPECT_EQ(r.code, 3);
}

TEST(Search, WorkedValues) {
    cli::SearchOptions opt;
    opt.n = 2;
    opt.max_dim = 2;
    opt.faithful_only = true;
    auto found = cli::search(opt);
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0].multiplicities, (std::vector<Int>{0, 1}));
    EXPECT_EQ(found[0].report.overall, Overall::Neutral);
    EXPECT_EQ(found[1].multiplicities, (std::vector<Int>{0, 2}));
    EXPECT_EQ(found[1].report.overall, Overall::Unknown);

    opt.n = 3;
    opt.max_dim = 1;
    found = cli::search(opt);
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0].multiplicities, (std::vector<Int>{0, 1, 0}));
    EXPECT_EQ(found[1].multiplicities, (std::vector<Int>{0, 0, 1}));
    for (const auto& f : found) EXPECT_EQ(f.report.overall, Overall::Neutral);

    opt.n = 2;
    opt.max_dim = 0;
    EXPECT_TRUE(cli::search(opt).empty());
}

TEST(Search, IncludeTrivialAddsTheTrivialCharacter) {
    cli::SearchOptions opt;
    opt.n = 2;
    opt.max_dim = 2;
    opt.faithful_only = true;
    opt.include_trivial = true;
    EXPECT_EQ(cli::search(opt).size(), 3u);
}

TEST(Search, OutputIsDeterministic) {
    cli::SearchOptions opt;
    opt.n = 6;
    opt.max_dim = 3;
    opt.json = true;
    const auto a = run([&](auto& o, auto& e) { return cli::run_search(opt, o, e); });
    const auto b = run([&](auto& o, auto& e) { return cli::run_search(opt, o, e); });
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto doc = nlohmann::json::parse(a.out);
    EXPECT_EQ(doc["counts"]["Neutral"].get<int>() + doc["counts"]["Unknown"].get<int>(),
              static_cast<int>(doc["instances"].size()));
}

TEST(Search, BadArgumentsExitTwo) {
    cli::SearchOptions opt;
    opt.n = 1;
    EXPECT_EQ(run([&](auto& o, auto& e) { return cli::run_search(opt, o, e); }).code, 2);
}

TEST(Moduli, CurveAndMarked) {
    auto r = run([](auto& o, auto& e) { return cli::run_curve(6, 3, "2=0,3=1", false, o, e); });
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "verdict: DefinedOverFieldOfModuli"));
    r = run([](auto& o, auto& e) { return cli::run_curve(7, 10, "7=3", false, o, e); });
    EXPECT_TRUE(contains(r.out, "not a negative result"));
    r = run([](auto& o, auto& e) { return cli::run_curve(6, 3, "2=0", false, o, e); });
    EXPECT_EQ(r.code, 2);
    r = run([](auto& o, auto& e) { return cli::run_curve(6, 3, "2=0,3", false, o, e); });
    EXPECT_EQ(r.code, 2);
    r = run([](auto& o, auto& e) { return cli::run_curve(2, 3, "2=0,2=1", false, o, e); });
    EXPECT_EQ(r.code, 2);
    r = run([](auto& o, auto& e) { return cli::run_marked(3, 3, "3=0", true, o, e); });
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "Unknown");
}
