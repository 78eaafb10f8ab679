#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "neutral/criteria.hpp"
#include "neutral/geometry.hpp"
#include "neutral/json_io.hpp"
#include "neutral/verify.hpp"

namespace neutral::cli {

/// Exit codes: 0 success (Unknown verdicts included), 1 certificate rejected,
/// 2 input error, 3 cap exceeded.
enum ExitCode : int { kOk = 0, kRejected = 1, kInputError = 2, kCapExceeded = 3 };

inline constexpr std::string_view kUnknownWording = "criteria inconclusive; NOT a proof of non-neutrality";

struct CheckOptions {
    std::optional<Int> prime;
    std::size_t cap = kDefaultCap;
    bool json = false;
};

struct SearchOptions {
    Int n = 2;
    Int max_dim = 1;
    bool faithful_only = false;
    bool include_trivial = false;
    bool json = false;
    std::size_t cap = kDefaultCap;
};

namespace detail {

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, "'" + path + "' is not valid JSON: " + e.what());
    }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::CapExceeded ? kCapExceeded : kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: SchemaError: " << e.what() << '\n';
        return kInputError;
    }
}

inline std::string text(const Character& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

inline std::string group_text(const FiniteAbelianGroup& g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

// Z/2 with the nontrivial character twice: shown elsewhere to be non-neutral.
inline bool is_known_non_neutral(const Representation& v) {
    return v.group().invariant_factors() == std::vector<Int>{2} && v.support().size() == 1 &&
           v.multiplicity(Character{{1}}) == 2;
}

inline std::string overall_line(const Representation& v, Overall o) {
    if (o == Overall::Neutral) return "overall: NEUTRAL";
    if (is_known_non_neutral(v)) return "overall: UNKNOWN (criteria inconclusive; note: this instance is known not to be neutral)";
    return "overall: UNKNOWN (" + std::string(kUnknownWording) + ")";
}

inline void print_verdict(std::ostream& out, const PrimeVerdict& v) {
    if (v.certificate) {
        out << "p = " << v.prime << ": CERTIFIED by " << to_string(v.certificate->strategy) << '\n';
        out << "  certificate: " << certificate_to_json(*v.certificate).dump() << '\n';
    } else {
        out << "p = " << v.prime << ": UNKNOWN\n";
        for (const auto& r : v.reasons) out << "  - " << r << '\n';
    }
}

inline std::vector<std::pair<Int, Int>> parse_pairs(const std::string& spec, const std::string& flag) {
    std::vector<std::pair<Int, Int>> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::SchemaError, flag + ": expected p=value, got '" + item + "'");
        try {
            std::size_t u1 = 0, u2 = 0;
            const std::string a = item.substr(0, eq), b = item.substr(eq + 1);
            Int p = std::stoll(a, &u1), x = std::stoll(b, &u2);
            if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
            out.emplace_back(p, x);
        } catch (const std::exception&) {
            throw Error(ErrorCode::SchemaError, flag + ": cannot parse '" + item + "'");
        }
    }
    return out;
}

inline std::map<Int, Int> pair_map(const std::string& spec, const std::string& flag) {
    std::map<Int, Int> m;
    for (auto [p, x] : parse_pairs(spec, flag))
        if (!m.emplace(p, x).second) throw Error(ErrorCode::SchemaError, flag + ": prime " + std::to_string(p) + " given twice");
    return m;
}

inline void print_moduli(std::ostream& out, const ModuliReport& r) {
    for (const auto& p : r.primes)
        out << "p = " << p.prime << ": difference " << p.difference
            << (p.divisible ? " is divisible by p" : " is not divisible by p") << '\n';
    out << "verdict: " << to_string(r.verdict) << '\n';
    for (const auto& a : r.assumptions) out << "assumed: " << a << '\n';
}

} // namespace detail

inline int run_check(const std::string& file, const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Representation v = rep_from_input(detail::load_json(file));
        std::optional<RSingularityReport> bridge;
        NeutralityReport report;
        if (opt.prime) {
            report = neutrality_report_for_prime(v, *opt.prime, opt.cap);
        } else {
            bridge = r_singularity_report(v, opt.cap);
            report = bridge->neutrality;
        }

        if (opt.json) {
            ordered_json j = representation_to_json(v);
            j["report"] = report_to_json(report);
            if (bridge)
                j["r_singularity"] = {{"status", std::string(to_string(bridge->status))}, {"notes", bridge->notes}};
            if (report.overall == Overall::Unknown && detail::is_known_non_neutral(v))
                j["note"] = "this instance is known not to be neutral";
            out << j.dump(2) << '\n';
            return int{kOk};
        }

        out << "group: " << detail::group_text(v.group()) << '\n';
        out << "dim V: " << v.dim() << '\n';
        out << "faithful: " << (report.faithful ? "yes" : "no") << '\n';
        out << "pseudoreflections:";
        if (report.pseudoreflections.empty()) out << " none";
        for (const auto& g : report.pseudoreflections) out << ' ' << detail::text(Character{g.coords});
        out << '\n';
        for (const auto& pv : report.primes) detail::print_verdict(out, pv);
        if (report.factorial_shortcut) out << "note: faithful and every prime divisor of |G| exceeds dim V\n";
        for (Int p : report.cyclic_reading_differs)
            out << "note: at p = " << p << " requiring the CyclicGeneral witness to be faithful on all of G changes the verdict\n";
        for (Int p : report.easy_cyclic_only)
            out << "note: at p = " << p << " EasyCyclic certifies but no orbit-based strategy does\n";
        out << detail::overall_line(v, report.overall) << '\n';
        if (bridge) {
            out << "R-singularity: " << to_string(bridge->status) << '\n';
            for (const auto& n : bridge->notes) out << "  - " << n << '\n';
        }
        return int{kOk};
    });
}

inline int run_blend(const std::string& file, const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Representation v = rep_from_input(detail::load_json(file));
        const BlendedDecomposition b = blended_decomposition(v, opt.cap);
        if (opt.json) {
            out << blend_to_json(v, b).dump(2) << '\n';
            return int{kOk};
        }
        out << "group: " << detail::group_text(v.group()) << '\n';
        out << "|Aut_V| = " << b.aut_v.elements.size() << '\n';
        out << "orbits: " << b.records.size() << '\n';
        for (const auto& rec : b.records) {
            out << "  {";
            for (std::size_t i = 0; i < rec.orbit.members.size(); ++i)
                out << (i ? " " : "") << detail::text(rec.orbit.members[i]);
            out << "} size " << rec.orbit.size() << ", multiplicity " << rec.orbit.multiplicity << ", chi_omega "
                << detail::text(rec.determinant_character) << '\n';
        }
        return int{kOk};
    });
}

inline int run_curve(Int n, Int genus, const std::string& quotient_genus, bool json, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const CurveInstance c{n, genus, detail::pair_map(quotient_genus, "--quotient-genus")};
        const ModuliReport r = curve_check(c);
        const ReductionNote note = curve_to_representation_note(c);
        if (json) {
            ordered_json j = moduli_to_json(r);
            j["reduction"] = note.lines;
            out << j.dump(2) << '\n';
        } else {
            detail::print_moduli(out, r);
            for (const auto& l : note.lines) out << "reduction: " << l << '\n';
        }
        return int{kOk};
    });
}

inline int run_marked(Int n, Int dim, const std::string& fixed_dim, bool json, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const ModuliReport r = marked_check(MarkedInstance{n, dim, detail::pair_map(fixed_dim, "--fixed-dim")});
        if (json)
            out << moduli_to_json(r).dump(2) << '\n';
        else
            detail::print_moduli(out, r);
        return int{kOk};
    });
}

/// CERTFILE may hold one certificate, an array of them, a report, or the
/// JSON output of `check`.
inline int run_verify(const std::string& file, const std::string& certfile, std::size_t cap, std::ostream& out,
                      std::ostream& err) {
    return detail::guarded(err, [&] {
        const Representation v = rep_from_input(detail::load_json(file));
        const nlohmann::json doc = detail::load_json(certfile);
        std::vector<Certificate> certs;
        auto from_report = [&](const nlohmann::json& r) {
            for (const auto& pv : report_from_json(r).primes)
                if (pv.certificate) certs.push_back(*pv.certificate);
        };
        if (doc.is_array()) {
            for (const auto& c : doc) certs.push_back(certificate_from_json(c));
        } else if (doc.is_object() && doc.contains("report")) {
            from_report(doc["report"]);
        } else if (doc.is_object() && doc.contains("primes")) {
            from_report(doc);
        } else {
            certs.push_back(certificate_from_json(doc));
        }
        if (certs.empty()) throw Error(ErrorCode::SchemaError, "no certificates found in '" + certfile + "'");

        bool all = true;
        for (const auto& c : certs) {
            const bool ok = verify_certificate(v, c, cap);
            all &= ok;
            out << "p = " << c.prime << " " << to_string(c.strategy) << ": " << (ok ? "VALID" : "INVALID") << '\n';
        }
        return all ? int{kOk} : int{kRejected};
    });
}

struct SearchInstance {
    std::vector<Int> multiplicities;  // indexed by residue mod n
    NeutralityReport report;
};

/// Multiplicity vectors on Z/n with total dimension <= max_dim, ordered by
/// dimension and then so that weight on smaller characters comes first.
inline std::vector<std::vector<Int>> enumerate_maps(Int n, Int max_dim, bool include_trivial) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(static_cast<std::size_t>(n), 0);
    const std::size_t first = include_trivial ? 0 : 1;
    auto rec = [&](auto&& self, std::size_t i, Int remaining) -> void {
        if (i == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (Int m = 0; m <= remaining; ++m) {
            cur[i] = m;
            self(self, i + 1, remaining - m);
        }
        cur[i] = 0;
    };
    rec(rec, first, max_dim);
    auto total = [](const std::vector<Int>& v) {
        Int s = 0;
        for (Int x : v) s += x;
        return s;
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        const Int ta = total(a), tb = total(b);
        return ta != tb ? ta < tb : a > b;
    });
    return out;
}

inline Representation cyclic_representation(Int n, const std::vector<Int>& mult) {
    std::vector<std::pair<Character, Int>> entries;
    for (std::size_t a = 0; a < mult.size(); ++a)
        if (mult[a] > 0) entries.emplace_back(Character{{static_cast<Int>(a)}}, mult[a]);
    return Representation(FiniteAbelianGroup::cyclic(n), entries);
}

inline std::vector<SearchInstance> search(const SearchOptions& opt) {
    if (opt.n < 2) throw Error(ErrorCode::SchemaError, "--cyclic must be at least 2");
    if (opt.max_dim < 0) throw Error(ErrorCode::SchemaError, "--max-dim must be nonnegative");
    std::vector<SearchInstance> out;
    for (auto& m : enumerate_maps(opt.n, opt.max_dim, opt.include_trivial)) {
        Representation v = cyclic_representation(opt.n, m);
        if (opt.faithful_only && !is_faithful(v)) continue;
        out.push_back(SearchInstance{std::move(m), neutrality_report(v, opt.cap)});
    }
    return out;
}

inline std::string map_text(const std::vector<Int>& m) {
    std::string s = "{";
    bool first = true;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (m[a] == 0) continue;
        s += (first ? "" : ", ") + std::to_string(a) + ":" + std::to_string(m[a]);
        first = false;
    }
    return s + "}";
}

inline int run_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto instances = search(opt);
        std::size_t neutral_count = 0;
        for (const auto& i : instances) neutral_count += i.report.overall == Overall::Neutral ? 1 : 0;

        if (opt.json) {
            ordered_json j;
            j["cyclic"] = opt.n;
            j["max_dim"] = opt.max_dim;
            j["faithful_only"] = opt.faithful_only;
            j["include_trivial"] = opt.include_trivial;
            j["counts"] = {{"Neutral", neutral_count}, {"Unknown", instances.size() - neutral_count}};
            ordered_json list = ordered_json::array();
            for (const auto& i : instances) {
                ordered_json mult = ordered_json::object();
                for (std::size_t a = 0; a < i.multiplicities.size(); ++a)
                    if (i.multiplicities[a] > 0) mult[std::to_string(a)] = i.multiplicities[a];
                list.push_back({{"multiplicities", std::move(mult)}, {"report", report_to_json(i.report)}});
            }
            j["instances"] = std::move(list);
            out << j.dump(2) << '\n';
            return int{kOk};
        }

        out << "search: Z/" << opt.n << ", dim <= " << opt.max_dim << (opt.faithful_only ? ", faithful only" : "")
            << '\n';
        out << "instances: " << instances.size() << '\n';
        out << "Neutral: " << neutral_count << '\n';
        out << "Unknown: " << instances.size() - neutral_count << '\n';
        bool shown_neutral = false, shown_unknown = false;
        for (const auto& i : instances) {
            const bool neutral = i.report.overall == Overall::Neutral;
            bool& shown = neutral ? shown_neutral : shown_unknown;
            if (shown) continue;
            shown = true;
            out << "exemplar " << (neutral ? "Neutral" : "Unknown") << ": " << map_text(i.multiplicities) << '\n';
            for (const auto& pv : i.report.primes) detail::print_verdict(out, pv);
        }
        return int{kOk};
    });
}

} // namespace neutral::cli
