#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "neutral/criteria.hpp"
#include "neutral/geometry.hpp"
#include "neutral/rep.hpp"

namespace neutral {

using ordered_json = nlohmann::ordered_json;

namespace json_detail {

[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

template <class J>
const J& field(const J& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) schema(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema(where + "." + key + " is missing");
    return *it;
}

template <class J>
Int integer(const J& j, const std::string& where) {
    if (!j.is_number_integer()) schema(where + " must be an integer");
    return j.template get<Int>();
}

template <class J>
std::vector<Int> int_list(const J& j, const std::string& where) {
    if (!j.is_array()) schema(where + " must be an array of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <class J>
std::string text(const J& j, const std::string& where) {
    if (!j.is_string()) schema(where + " must be a string");
    return j.template get<std::string>();
}

template <class J>
Character character(const J& j, const std::string& where) {
    return Character{int_list(j, where)};
}

template <class J>
std::vector<Character> character_list(const J& j, const std::string& where) {
    if (!j.is_array()) schema(where + " must be an array");
    std::vector<Character> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(character(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <class J>
IntMatrix matrix(const J& j, const std::string& where) {
    if (!j.is_array()) schema(where + " must be an array of rows");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(int_list(j[i], where + "[" + std::to_string(i) + "]"));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) schema(where + " rows differ in length");
    return IntMatrix::from_rows(rows, cols);
}

inline ordered_json coords(const Character& c) { return c.coords; }

inline ordered_json coords(const std::vector<Character>& cs) {
    ordered_json a = ordered_json::array();
    for (const auto& c : cs) a.push_back(c.coords);
    return a;
}

inline ordered_json rows(const IntMatrix& m) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        a.push_back(std::move(r));
    }
    return a;
}

inline OrbitCondition condition(const std::string& tag, const std::string& where) {
    OrbitCondition c;
    for (char ch : tag) {
        if (ch == 'a') c.a = true;
        else if (ch == 'b') c.b = true;
        else schema(where + " must be built from 'a' and 'b'");
    }
    return c;
}

template <class J>
Strategy strategy(const J& j, const std::string& where) {
    const std::string s = text(j, where);
    for (Strategy st : {Strategy::EasyCyclic, Strategy::LargePrime, Strategy::CyclicGeneral, Strategy::LinesAndGenerators})
        if (s == to_string(st)) return st;
    schema(where + ": unknown strategy '" + s + "'");
}

template <class J>
std::map<Int, Int> prime_map(const J& j, const std::string& where) {
    if (!j.is_object()) schema(where + " must be an object keyed by prime");
    std::map<Int, Int> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        Int key = 0;
        try {
            std::size_t used = 0;
            key = std::stoll(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            schema(where + " key '" + it.key() + "' is not an integer");
        }
        out[key] = integer(it.value(), where + "." + it.key());
    }
    return out;
}

} // namespace json_detail

/// {"invariant_factors":[...]} or {"relations":[[...],...]}. Factor lists
/// that are not a divisibility chain are normalized.
template <class J>
Presentation parse_group(const J& j) {
    using namespace json_detail;
    if (!j.is_object()) schema("group must be an object");
    const bool has_factors = j.contains("invariant_factors"), has_relations = j.contains("relations");
    if (has_factors == has_relations) schema("group needs exactly one of 'invariant_factors' or 'relations'");
    if (has_factors) {
        const auto factors = int_list(j["invariant_factors"], "group.invariant_factors");
        for (Int d : factors)
            if (d == 0) throw Error(ErrorCode::InfiniteGroup, "invariant factor 0 gives an infinite group");
        return present_orders(factors);
    }
    const auto& rel = j["relations"];
    if (!rel.is_array()) schema("group.relations must be an array of rows");
    IntMatrix m = matrix(rel, "group.relations");
    if (j.contains("generators")) {
        const Int k = integer(j["generators"], "group.generators");
        if (k < 0 || (m.rows() > 0 && static_cast<Int>(m.cols()) != k))
            schema("group.generators does not match the relation row length");
        if (m.rows() == 0) m = IntMatrix(0, static_cast<std::size_t>(k));
    }
    return present(m);
}

/// Reads {"group": ..., "representation": [{"character": [...], "multiplicity": n}, ...]}.
/// Characters are given in the group's input coordinates.
template <class J>
Representation rep_from_input(const J& doc) {
    using namespace json_detail;
    const Presentation pr = parse_group(field(doc, "group", "document"));
    const auto& entries = field(doc, "representation", "document");
    if (!entries.is_array()) schema("representation must be an array");
    std::vector<std::pair<Character, Int>> list;
    std::map<Character, std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "representation[" + std::to_string(i) + "]";
        const auto raw = int_list(field(entries[i], "character", where), where + ".character");
        const Int m = integer(field(entries[i], "multiplicity", where), where + ".multiplicity");
        Character c = pr.map(raw);
        if (m <= 0)
            throw Error(ErrorCode::NonPositiveMultiplicity, where + ".multiplicity is " + std::to_string(m));
        if (auto [it, fresh] = seen.emplace(c, i); !fresh)
            throw Error(ErrorCode::DuplicateCharacter,
                        where + " reduces to the same character as representation[" + std::to_string(it->second) + "]");
        list.emplace_back(std::move(c), m);
    }
    return Representation(pr.group, list);
}

inline ordered_json group_to_json(const FiniteAbelianGroup& g) {
    return ordered_json{{"invariant_factors", g.invariant_factors()}};
}

inline ordered_json representation_to_json(const Representation& v) {
    ordered_json doc;
    doc["group"] = group_to_json(v.group());
    ordered_json entries = ordered_json::array();
    for (const auto& [c, m] : v.support()) entries.push_back({{"character", c.coords}, {"multiplicity", m}});
    doc["representation"] = std::move(entries);
    return doc;
}

inline ordered_json witness_to_json(const Witness& w) {
    using namespace json_detail;
    return std::visit(
        [](const auto& x) -> ordered_json {
            using T = std::decay_t<decltype(x)>;
            ordered_json j;
            if constexpr (std::is_same_v<T, EasyCyclicWitness>) {
                j["dim"] = x.dim;
                j["fixed_dim"] = x.fixed_dim;
                j["difference"] = x.dim - x.fixed_dim;
            } else if constexpr (std::is_same_v<T, LargePrimeWitness>) {
                j["dim"] = x.dim;
                j["support"] = coords(x.support);
                j["restrictions"] = coords(x.restrictions);
            } else if constexpr (std::is_same_v<T, CyclicGeneralWitness>) {
                j["character"] = x.character.coords;
                j["multiplicity"] = x.multiplicity;
                j["orbit_size"] = x.orbit_size;
                j["restriction"] = x.restriction.coords;
                j["orbit_sum_restriction"] = x.orbit_sum_restriction.coords;
                j["condition"] = x.condition.tag();
            } else {
                ordered_json set = ordered_json::array();
                for (const auto& m : x.set)
                    set.push_back({{"character", m.character.coords}, {"condition", m.condition.tag()}, {"image", m.image}});
                ordered_json gens = ordered_json::array();
                for (std::size_t i = 0; i < x.generators.size(); ++i)
                    gens.push_back({{"matrix", rows(x.generators[i])}, {"scalar", x.scalars[i]}});
                j["set"] = std::move(set);
                j["generators"] = std::move(gens);
            }
            return j;
        },
        w);
}

inline ordered_json certificate_to_json(const Certificate& c) {
    ordered_json j;
    j["prime"] = c.prime;
    j["strategy"] = std::string(to_string(c.strategy));
    j["witness"] = witness_to_json(c.witness);
    return j;
}

template <class J>
Witness witness_from_json(Strategy s, const J& j) {
    using namespace json_detail;
    const std::string w = "witness";
    switch (s) {
    case Strategy::EasyCyclic:
        return EasyCyclicWitness{integer(field(j, "dim", w), w + ".dim"), integer(field(j, "fixed_dim", w), w + ".fixed_dim")};
    case Strategy::LargePrime:
        return LargePrimeWitness{integer(field(j, "dim", w), w + ".dim"),
                                 character_list(field(j, "support", w), w + ".support"),
                                 character_list(field(j, "restrictions", w), w + ".restrictions")};
    case Strategy::CyclicGeneral:
        return CyclicGeneralWitness{character(field(j, "character", w), w + ".character"),
                                    integer(field(j, "multiplicity", w), w + ".multiplicity"),
                                    integer(field(j, "orbit_size", w), w + ".orbit_size"),
                                    character(field(j, "restriction", w), w + ".restriction"),
                                    character(field(j, "orbit_sum_restriction", w), w + ".orbit_sum_restriction"),
                                    condition(text(field(j, "condition", w), w + ".condition"), w + ".condition")};
    case Strategy::LinesAndGenerators: {
        LinesAndGeneratorsWitness out;
        const auto& set = field(j, "set", w);
        if (!set.is_array()) schema("witness.set must be an array");
        for (std::size_t i = 0; i < set.size(); ++i) {
            const std::string at = w + ".set[" + std::to_string(i) + "]";
            out.set.push_back(LinesMember{character(field(set[i], "character", at), at + ".character"),
                                          condition(text(field(set[i], "condition", at), at + ".condition"), at),
                                          int_list(field(set[i], "image", at), at + ".image")});
        }
        const auto& gens = field(j, "generators", w);
        if (!gens.is_array()) schema("witness.generators must be an array");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string at = w + ".generators[" + std::to_string(i) + "]";
            out.generators.push_back(matrix(field(gens[i], "matrix", at), at + ".matrix"));
            out.scalars.push_back(integer(field(gens[i], "scalar", at), at + ".scalar"));
        }
        return out;
    }
    }
    schema("unknown strategy");
}

template <class J>
Certificate certificate_from_json(const J& j) {
    using namespace json_detail;
    Certificate c;
    c.prime = integer(field(j, "prime", "certificate"), "certificate.prime");
    c.strategy = strategy(field(j, "strategy", "certificate"), "certificate.strategy");
    c.witness = witness_from_json(c.strategy, field(j, "witness", "certificate"));
    return c;
}

inline ordered_json verdict_to_json(const PrimeVerdict& v) {
    ordered_json j;
    j["prime"] = v.prime;
    if (v.certificate) {
        j["strategy"] = std::string(to_string(v.certificate->strategy));
        j["witness"] = witness_to_json(v.certificate->witness);
        j["verdict"] = "Certified";
    } else {
        j["strategy"] = nullptr;
        j["witness"] = nullptr;
        j["verdict"] = "Unknown";
    }
    j["reasons"] = v.reasons;
    return j;
}

template <class J>
PrimeVerdict verdict_from_json(const J& j) {
    using namespace json_detail;
    PrimeVerdict v;
    v.prime = integer(field(j, "prime", "verdict"), "verdict.prime");
    const std::string kind = text(field(j, "verdict", "verdict"), "verdict.verdict");
    if (kind == "Certified") {
        Certificate c;
        c.prime = v.prime;
        c.strategy = strategy(field(j, "strategy", "verdict"), "verdict.strategy");
        c.witness = witness_from_json(c.strategy, field(j, "witness", "verdict"));
        v.certificate = std::move(c);
    } else if (kind != "Unknown") {
        schema("verdict.verdict must be Certified or Unknown");
    }
    const auto& reasons = field(j, "reasons", "verdict");
    if (!reasons.is_array()) schema("verdict.reasons must be an array");
    for (const auto& r : reasons) v.reasons.push_back(text(r, "verdict.reasons[]"));
    return v;
}

inline ordered_json report_to_json(const NeutralityReport& r) {
    ordered_json j;
    j["overall"] = r.overall == Overall::Neutral ? "Neutral" : "Unknown";
    j["faithful"] = r.faithful;
    ordered_json ps = ordered_json::array();
    for (const auto& g : r.pseudoreflections) ps.push_back(g.coords);
    j["pseudoreflections"] = std::move(ps);
    j["factorial_shortcut"] = r.factorial_shortcut;
    ordered_json primes = ordered_json::array();
    for (const auto& v : r.primes) primes.push_back(verdict_to_json(v));
    j["primes"] = std::move(primes);
    j["diagnostics"] = {{"cyclic_reading_differs", r.cyclic_reading_differs},
                        {"easy_cyclic_only", r.easy_cyclic_only}};
    return j;
}

template <class J>
NeutralityReport report_from_json(const J& j) {
    using namespace json_detail;
    NeutralityReport r;
    const std::string overall = text(field(j, "overall", "report"), "report.overall");
    if (overall != "Neutral" && overall != "Unknown") schema("report.overall must be Neutral or Unknown");
    r.overall = overall == "Neutral" ? Overall::Neutral : Overall::Unknown;
    const auto& faithful = field(j, "faithful", "report");
    const auto& shortcut = field(j, "factorial_shortcut", "report");
    if (!faithful.is_boolean() || !shortcut.is_boolean()) schema("report flags must be booleans");
    r.faithful = faithful.template get<bool>();
    r.factorial_shortcut = shortcut.template get<bool>();
    for (const auto& c : character_list(field(j, "pseudoreflections", "report"), "report.pseudoreflections"))
        r.pseudoreflections.push_back(GroupElement{c.coords});
    const auto& primes = field(j, "primes", "report");
    if (!primes.is_array()) schema("report.primes must be an array");
    for (const auto& v : primes) r.primes.push_back(verdict_from_json(v));
    const auto& diag = field(j, "diagnostics", "report");
    r.cyclic_reading_differs = int_list(field(diag, "cyclic_reading_differs", "report.diagnostics"),
                                        "report.diagnostics.cyclic_reading_differs");
    r.easy_cyclic_only = int_list(field(diag, "easy_cyclic_only", "report.diagnostics"), "report.diagnostics.easy_cyclic_only");
    return r;
}

inline ordered_json blend_to_json(const Representation& v, const BlendedDecomposition& b) {
    ordered_json j;
    j["group"] = group_to_json(v.group());
    j["aut_v_order"] = b.aut_v.elements.size();
    ordered_json orbits = ordered_json::array();
    for (const auto& rec : b.records)
        orbits.push_back({{"members", json_detail::coords(rec.orbit.members)},
                          {"size", rec.orbit.size()},
                          {"multiplicity", rec.orbit.multiplicity},
                          {"determinant_character", rec.determinant_character.coords}});
    j["orbits"] = std::move(orbits);
    return j;
}

template <class J>
CurveInstance curve_from_json(const J& j) {
    using namespace json_detail;
    return CurveInstance{integer(field(j, "n", "curve"), "curve.n"), integer(field(j, "genus", "curve"), "curve.genus"),
                         prime_map(field(j, "quotient_genus", "curve"), "curve.quotient_genus")};
}

template <class J>
MarkedInstance marked_from_json(const J& j) {
    using namespace json_detail;
    return MarkedInstance{integer(field(j, "n", "marked"), "marked.n"), integer(field(j, "dim", "marked"), "marked.dim"),
                          prime_map(field(j, "fixed_dim", "marked"), "marked.fixed_dim")};
}

inline ordered_json moduli_to_json(const ModuliReport& r) {
    ordered_json j;
    j["verdict"] = std::string(to_string(r.verdict));
    ordered_json primes = ordered_json::array();
    for (const auto& p : r.primes)
        primes.push_back({{"prime", p.prime}, {"difference", p.difference}, {"divisible", p.divisible}});
    j["primes"] = std::move(primes);
    j["assumptions"] = r.assumptions;
    return j;
}

} // namespace neutral
