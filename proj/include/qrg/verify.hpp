#pragma once

// Claim registry, runner and reports. A claim names a computation ("op") with
// arguments; the runner evaluates it, compares with the expected value and
// emits PASS / FAIL / REPORT / UNKNOWN.

#include <any>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qrg/autgrp.hpp"
#include "qrg/coxeter.hpp"
#include "qrg/errors.hpp"
#include "qrg/geom.hpp"
#include "qrg/impref.hpp"
#include "qrg/qcgroups.hpp"

namespace qrg {

using json = nlohmann::ordered_json;

enum class severity { pass_required, report_only };
enum class claim_status { pass, fail, report, unknown };

inline const char* to_string(claim_status s) {
    switch (s) {
    case claim_status::pass: return "PASS";
    case claim_status::fail: return "FAIL";
    case claim_status::report: return "REPORT";
    default: return "UNKNOWN";
    }
}

struct claim {
    std::string id;
    std::string description;
    std::string kind;  // Order, Fingerprint, PresentationWitness, Equality, AxiomSuite, Count, Ratio
    json constructor;  // {"op": ..., "args": {...}}
    json expected;
    severity level = severity::pass_required;
    std::string citation;
    std::string provenance;
};

struct claim_result {
    std::string id;
    claim_status status = claim_status::unknown;
    json computed;
    std::string evidence = "None";
    double wall_time = 0;  // seconds; human report only
    std::string route;
    std::string notes;
};

inline const std::vector<std::string>& claim_kinds() {
    static const std::vector<std::string> k{"Order", "Fingerprint", "PresentationWitness", "Equality",
                                            "AxiomSuite", "Count", "Ratio"};
    return k;
}

inline std::vector<claim> parse_registry(const json& doc) {
    const json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("claims")) throw registry_parse_error("registry object has no 'claims' list");
        list = &doc["claims"];
    }
    if (!list->is_array()) throw registry_parse_error("registry must be a list of claims");
    std::vector<claim> out;
    std::set<std::string> ids;
    for (const auto& r : *list) {
        try {
            claim c;
            c.id = r.at("id").get<std::string>();
            c.description = r.value("description", "");
            c.kind = r.at("kind").get<std::string>();
            c.constructor = r.at("constructor");
            c.expected = r.at("expected");
            std::string sev = r.at("severity").get<std::string>();
            if (sev == "PASS-required") c.level = severity::pass_required;
            else if (sev == "REPORT-only") c.level = severity::report_only;
            else throw registry_parse_error("claim " + c.id + ": unknown severity '" + sev + "'");
            c.citation = r.at("citation").get<std::string>();
            c.provenance = r.at("provenance").get<std::string>();
            if (std::find(claim_kinds().begin(), claim_kinds().end(), c.kind) == claim_kinds().end())
                throw registry_parse_error("claim " + c.id + ": unknown kind '" + c.kind + "'");
            if (!c.constructor.is_object() || !c.constructor.contains("op"))
                throw registry_parse_error("claim " + c.id + ": constructor needs an 'op'");
            if (!ids.insert(c.id).second) throw registry_parse_error("duplicate claim id " + c.id);
            out.push_back(std::move(c));
        } catch (const json::exception& e) {
            throw registry_parse_error(std::string("malformed claim record: ") + e.what());
        }
    }
    return out;
}

inline std::vector<claim> load_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw registry_parse_error("cannot open registry " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw registry_parse_error(std::string("registry is not valid JSON: ") + e.what());
    }
    return parse_registry(doc);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// What an op returns.
struct computation {
    json value;
    std::string evidence = "None";
    std::string route;
    std::string notes;
    bool unknown = false;
};

inline json as_json(const big_int& v) {
    if (v <= big_int(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(v);
    return v.str();
}

/// Shared constructions, built at most once per run, optionally backed by an
/// on-disk cache for the expensive ones.
class verify_context {
public:
    explicit verify_context(std::optional<std::filesystem::path> cache_dir = std::nullopt)
        : cache_dir_(std::move(cache_dir)) {}

    template <class T>
    const T& memo(const std::string& key, const std::function<T()>& build) {
        std::shared_ptr<entry> e;
        {
            std::lock_guard lock(mutex_);
            auto& slot = entries_[key];
            if (!slot) slot = std::make_shared<entry>();
            e = slot;
        }
        std::call_once(e->once, [&] { e->value = build(); });
        return std::any_cast<const T&>(e->value);
    }

    /// Matrix table under the disk cache: corrupt or mismatched files are
    /// recomputed and rewritten.
    const matrix_group& table(const std::string& name, const std::vector<exact_matrix>& gens) {
        return memo<matrix_group>("table:" + name, [&] {
            std::string spec = name + "|full";
            for (const auto& g : gens) spec += "|" + g.to_string();
            const std::uint64_t h = fnv1a(spec);
            if (cache_dir_) {
                auto path = *cache_dir_ / (name + ".group");
                try {
                    if (auto g = load_matrix_group(path, h, group_mode::full, gens)) return std::move(*g);
                } catch (const cache_corruption&) {
                }
                matrix_group g = enumerate_matrix_group(gens, group_mode::full);
                save_matrix_group(path, h, group_mode::full, g);
                return g;
            }
            return enumerate_matrix_group(gens, group_mode::full);
        });
    }

    const bsgs& perm(const std::string& name, const std::vector<permutation>& gens, std::size_t degree) {
        return memo<bsgs>("perm:" + name, [&] {
            if (cache_dir_) {
                std::string spec = name;
                for (const auto& g : gens) spec += "|" + g.to_string();
                std::ostringstream file;
                file << name << '-' << std::hex << fnv1a(spec) << ".perm";
                auto path = *cache_dir_ / file.str();
                try {
                    if (auto g = load_bsgs(path, degree)) return std::move(*g);
                } catch (const cache_corruption&) {
                }
                bsgs g = schreier_sims(gens, degree);
                save_bsgs(path, g);
                return g;
            }
            return schreier_sims(gens, degree);
        });
    }

private:
    struct entry {
        std::once_flag once;
        std::any value;
    };
    std::optional<std::filesystem::path> cache_dir_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<entry>> entries_;
};

namespace ops {

inline std::string arg_s(const json& a, const char* k) {
    if (!a.contains(k)) throw error(std::string("missing argument '") + k + "'");
    return a.at(k).get<std::string>();
}
inline long long arg_i(const json& a, const char* k) {
    if (!a.contains(k)) throw error(std::string("missing argument '") + k + "'");
    return a.at(k).get<long long>();
}

inline bool table_backed(const std::string& name) { return name != "C3" && name != "B3"; }

inline std::vector<exact_matrix> group_generators(const std::string& name) {
    if (name == "C1") return detail::clifford_generators(1);
    if (name == "C2") return detail::clifford_generators(2);
    if (name == "C3") return detail::clifford_generators(3);
    if (name == "B2") return detail::bell_generators(2);
    if (name == "B3") return detail::bell_generators(3);
    if (name == "magic") return {standard_gate("T"), standard_gate("H")};
    if (name == "P1" || name == "P2" || name == "P3") {
        std::vector<exact_matrix> g;
        for (const auto& p : pauli_generators(static_cast<unsigned>(name[1] - '0'))) g.push_back(pauli_to_matrix(p));
        return g;
    }
    throw error("unknown group '" + name + "'");
}

inline unsigned qubits(const std::string& name) {
    if (name == "magic") return 1;
    return static_cast<unsigned>(name.back() - '0');
}

inline const matrix_group& table(verify_context& cx, const std::string& name) {
    if (!table_backed(name)) throw error(name + " is permutation-backed");
    return cx.table(name, group_generators(name));
}

inline const bsgs& action_image(verify_context& cx, const std::string& name, bool signed_action) {
    const unsigned n = qubits(name);
    std::vector<permutation> perms;
    for (const auto& g : group_generators(name)) perms.push_back(clifford_action_permutation(g, n, signed_action));
    return cx.perm(name + (signed_action ? "-signed" : "-unsigned"), perms,
                   signed_action ? signed_pauli_points(n) : unsigned_pauli_points(n));
}

inline const quotient_group& central_quotient(verify_context& cx, const std::string& name) {
    return cx.memo<quotient_group>("cq:" + name, [&] {
        const auto& t = table(cx, name).table;
        return quotient(t, center_of(t));
    });
}

inline const quotient_group& mod_pauli(verify_context& cx, const std::string& name) {
    return cx.memo<quotient_group>("mp:" + name, [&] {
        const auto& g = table(cx, name);
        return quotient(g.table, pauli_subgroup_of(g, qubits(name)));
    });
}

/// The group a table op is about: the group itself or a derived object.
inline const group_table& subject(verify_context& cx, const json& a) {
    const std::string name = arg_s(a, "group");
    const std::string of = a.value("of", "self");
    if (of == "self") return table(cx, name).table;
    if (of == "center")
        return cx.memo<subgroup>("z:" + name, [&] { return center_of(table(cx, name).table); }).table;
    if (of == "central_quotient") return central_quotient(cx, name).table;
    if (of == "mod_pauli") return mod_pauli(cx, name).table;
    if (of == "derived")
        return cx.memo<subgroup>("der:" + name, [&] { return derived_subgroup_of(table(cx, name).table); }).table;
    if (of == "derived_central_quotient")
        return cx.memo<subgroup>("dcq:" + name, [&] { return derived_subgroup_of(central_quotient(cx, name).table); })
            .table;
    throw error("unknown subject '" + of + "'");
}

inline const root_system& roots(verify_context& cx, const std::string& type) {
    return cx.memo<root_system>("roots:" + type, [&] { return generate_root_system(parse_coxeter_type(type)); });
}

inline const bsgs& weyl(verify_context& cx, const std::string& type) {
    const auto& rs = roots(cx, type);
    return cx.perm("W" + type, simple_reflection_permutations(rs), rs.roots.size());
}

inline group_table reference_group(verify_context& cx, const std::string& name) {
    if (name == "S4") return symmetric_group(4);
    if (name == "S5") return symmetric_group(5);
    if (name == "SL23") return special_linear_group(2, 3);
    if (name == "GL23") return general_linear_group(2, 3);
    if (name == "GL32") return general_linear_group(3, 2);
    if (name == "Z2xS6") return z2_times_symmetric(6);
    if (name == "Z2xS5") return z2_times_symmetric(5);
    if (name == "G225") return cx.table(imprimitive_spec{2, 2, 5}.name(), imprimitive_generators({2, 2, 5})).table;
    if (name == "Dih6") return dihedral_group(6).table;
    throw error("unknown reference group '" + name + "'");
}

inline coxeter_presentation presentation(const std::string& type) {
    if (type == "presE6")
        return presentation_from_edges(6, {{2, 0}, {3, 1}, {3, 2}, {4, 3}, {5, 4}});
    return coxeter_presentation_of(parse_coxeter_type(type));
}

inline const pauli_aut_report& aut_pauli(verify_context& cx, unsigned n) {
    return cx.memo<pauli_aut_report>("autP" + std::to_string(n), [&] { return aut_of_pauli(n); });
}

inline const incidence_geometry& geometry(verify_context& cx) {
    return cx.memo<incidence_geometry>("gq2", [] { return two_qubit_geometry(); });
}

inline const std::vector<hyperplane>& hyperplanes(verify_context& cx) {
    return cx.memo<std::vector<hyperplane>>("hyp", [&] { return enumerate_hyperplanes(geometry(cx)); });
}

/// The grid all of whose points are entangled-type observables.
inline const hyperplane& entangled_grid(verify_context& cx) {
    const auto& g = geometry(cx);
    for (const auto& h : hyperplanes(cx))
        if (h.kind == hyperplane_kind::grid && mermin_square_signs(g, h).entangled) return h;
    throw error("no entangled grid");
}

inline std::vector<std::size_t> selection(verify_context& cx, const std::string& sel) {
    const auto& g = geometry(cx);
    if (sel == "perp_line")
        return {point_index(g, "IX"), point_index(g, "XI"), point_index(g, "XX")};
    if (sel == "perp_antiflag") {
        // a point of the perp-set centred at XI and a line of it missing that point
        return {point_index(g, "IX"), point_index(g, "XI"), point_index(g, "XX"), point_index(g, "IZ")};
    }
    if (sel == "perp_pair") return {point_index(g, "IX"), point_index(g, "IZ")};
    const auto& grid = entangled_grid(cx);
    auto m = mermin_square_signs(g, grid);
    if (sel == "horizontal_line") {
        auto l = g.lines[m.classes[0][0]];
        return {l.begin(), l.end()};
    }
    if (sel == "vertical_line") {
        auto l = g.lines[m.classes[1][0]];
        return {l.begin(), l.end()};
    }
    if (sel == "grid") return grid.points;
    throw error("unknown selection '" + sel + "'");
}

inline const chain_report& chain2(verify_context& cx) {
    return cx.memo<chain_report>("chain2", [] { return two_qubit_ovoid_chain(); });
}
inline const chain_report& chain3(verify_context& cx) {
    return cx.memo<chain_report>("chain3", [] { return three_qubit_chain(); });
}

inline json int_matrix_json(const int_matrix& m) {
    json r = json::array();
    for (const auto& row : m) r.push_back(row);
    return r;
}

using op_fn = std::function<computation(verify_context&, const json&)>;

inline const std::map<std::string, op_fn>& registry() {
    static const std::map<std::string, op_fn> by_name{
        {"order",
         [](verify_context& cx, const json& a) {
             computation c;
             const std::string name = arg_s(a, "group");
             const std::string of = a.value("of", "self");
             if (of == "signed_image" || of == "unsigned_image" || of == "signed_derived" || of == "unsigned_derived") {
                 const bool s = of.rfind("signed", 0) == 0;
                 const bsgs& img = action_image(cx, name, s);
                 c.value = as_json(of.find("derived") != std::string::npos ? perm_derived_subgroup(img).order() : img.order());
                 c.route = "perm";
                 c.notes = s ? "signed Pauli action; kernel = scalar subgroup" : "unsigned Pauli action; kernel = scalars . Paulis";
                 return c;
             }
             c.value = subject(cx, a).order();
             c.route = "table";
             c.evidence = "OrderMatch";
             return c;
         }},
        {"center_cyclic",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& g = subject(cx, a);
             c.value = is_cyclic(center_of(g).table);
             c.route = "table";
             return c;
         }},
        {"index2_normal_count",
         [](verify_context& cx, const json& a) {
             computation c;
             c.value = count_index2_normal_subgroups(subject(cx, a));
             c.route = "table";
             return c;
         }},
        {"fingerprint_match",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& g = subject(cx, a);
             group_table ref = reference_group(cx, arg_s(a, "reference"));
             auto fg = fingerprint_of(g);
             c.value = fg == fingerprint_of(ref);
             c.evidence = c.value.get<bool>() ? "FingerprintMatch" : "None";
             c.route = "table";
             c.notes = fg.to_string();
             return c;
         }},
        {"presentation_witness",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& g = subject(cx, a);
             bool exhausted = false;
             auto w = table_presentation_witness(g, presentation(arg_s(a, "type")), g.order(), 50'000'000, &exhausted);
             c.value = w.has_value();
             c.unknown = !w && exhausted;
             c.evidence = w ? "PresentationWitness" : "None";
             c.route = "table";
             if (w) c.notes = "witness after " + std::to_string(w->nodes) + " nodes";
             if (c.unknown) c.notes = "node budget exhausted";
             return c;
         }},
        {"subgroup_of",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& sub = table(cx, arg_s(a, "sub"));
             const auto& big = table(cx, arg_s(a, "group"));
             bool all = true;
             for (const auto& e : sub.elements) all = all && big.contains(e);
             c.value = all;
             c.route = "table";
             return c;
         }},
        {"non_normal_witness",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& sub = table(cx, arg_s(a, "sub"));
             const auto& big = table(cx, arg_s(a, "group"));
             c.value = false;
             for (std::size_t i = 0; i < big.table.generator_count() && !c.value.get<bool>(); ++i) {
                 const exact_matrix& u = big.elements[big.table.generator(i)];
                 for (std::size_t j = 0; j < sub.table.generator_count(); ++j) {
                     const exact_matrix& b = sub.elements[sub.table.generator(j)];
                     if (!sub.contains(u * b * u.adjoint())) {
                         c.value = true;
                         c.notes = "generator " + std::to_string(i) + " conjugates generator " + std::to_string(j) +
                                   " outside the subgroup";
                         break;
                     }
                 }
             }
             c.route = "table";
             return c;
         }},
        {"split",
         [](verify_context& cx, const json& a) {
             computation c;
             const std::string name = arg_s(a, "group"), normal = arg_s(a, "normal");
             const auto& g = table(cx, name);
             subgroup n = [&] {
                 if (normal == "pauli") return pauli_subgroup_of(g, qubits(name));
                 const auto& m = table(cx, normal);
                 std::vector<elem_id> ids;
                 for (const auto& e : m.elements) {
                     elem_id id = g.find(e);
                     if (id == no_elem) throw not_subgroup(normal + " is not inside " + name);
                     ids.push_back(id);
                 }
                 return subgroup_from_elements(g.table, ids);
             }();
             auto r = split_check(g.table, n);
             c.value = to_string(r.outcome);
             c.unknown = r.outcome == split_outcome::unknown;
             c.route = "table";
             c.notes = "complement search over " + std::to_string(r.nodes) + " lift tuples (exhaustive unless unknown)";
             return c;
         }},
        {"derived_index2_fingerprint",
         // derived subgroup of the central quotient against Aut(P_2)'
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& d = subject(cx, {{"group", arg_s(a, "group")}, {"of", "derived_central_quotient"}});
             const auto& cq = central_quotient(cx, arg_s(a, "group"));
             auto fd = fingerprint_of(d);
             auto fa = aut_pauli(cx, 2).derived_fingerprint;
             c.value = json{{"index", cq.order() / d.order()},
                            {"order", d.order()},
                            {"matches_aut_derived", fd.order == fa.order && fd.derived_series == fa.derived_series}};
             c.evidence = c.value["matches_aut_derived"].get<bool>() ? "FingerprintMatch" : "None";
             c.route = "table";
             c.notes = "fingerprint compared at order + derived series";
             return c;
         }},
        {"aut_pauli",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& r = aut_pauli(cx, static_cast<unsigned>(arg_i(a, "n")));
             const std::string f = arg_s(a, "field");
             c.route = "table";
             if (f == "aut") c.value = r.aut;
             else if (f == "inn") c.value = r.inn;
             else if (f == "out") c.value = r.out;
             else if (f == "derived") {
                 c.value = as_json(r.derived_order);
                 c.route = "perm";
                 c.notes = r.derived_fingerprint.to_string();
             } else if (f == "aut_witness") {
                 c.value = r.aut_witness.has_value();
                 if (r.aut_witness) c.evidence = "PresentationWitness";
             } else if (f == "out_witness") {
                 c.value = r.out_witness.has_value();
                 if (r.out_witness) c.evidence = "PresentationWitness";
             } else
                 throw error("unknown aut_pauli field " + f);
             return c;
         }},
        {"aut_central_quotient",
         [](verify_context&, const json& a) {
             computation c;
             const unsigned n = static_cast<unsigned>(arg_i(a, "n"));
             const std::string m = a.value("method", "formula");
             if (m == "formula") {
                 c.value = as_json(aut_of_central_quotient(n));
                 c.notes = "|GL(2n,2)| product formula";
             } else if (m == "direct") {
                 c.value = aut_of_central_quotient_direct(n);
                 c.route = "table";
             } else if (m == "structure") {
                 // name the isomorphism type of Aut(Z_2^2) from its table
                 pauli_group p = pauli_group_table(n);
                 auto q = quotient(p.table, center_of(p.table));
                 auto data = automorphisms_of(q.table, true);
                 auto at = permutation_group_table(data.automorphisms, q.order());
                 c.value = is_abelian(at.table) ? (is_cyclic(at.table) ? "cyclic" : "abelian") : "nonabelian";
                 if (at.order() == 6 && !is_abelian(at.table)) c.notes = "order 6 nonabelian, isomorphic to S3";
                 c.route = "table";
             } else
                 throw error("unknown method " + m);
             return c;
         }},
        {"ratio",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& cq = central_quotient(cx, "C2");
             const std::size_t aut = aut_pauli(cx, 2).aut;
             (void)a;
             c.value = json{{"central_quotient_C2", cq.order()}, {"aut_P2", aut},
                            {"aut_over_quotient", aut % cq.order() == 0 ? json(aut / cq.order()) : json(nullptr)}};
             c.notes = "Aut(P2) is twice the order of the central quotient of C2, not the reverse";
             c.route = "table";
             return c;
         }},
        {"geometry",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& g = geometry(cx);
             const std::string f = arg_s(a, "field");
             if (f == "points") c.value = g.points.size();
             else if (f == "lines") c.value = g.lines.size();
             else if (f == "axioms") {
                 auto r = check_gq_axioms(g, 2, 2);
                 c.value = json{{"line_size", r.line_size}, {"point_degree", r.point_degree},
                                {"near_linear", r.near_linear}, {"antiflag", r.antiflag}};
             } else if (f == "is_line") {
                 std::vector<std::size_t> t;
                 for (const auto& s : a.at("points")) t.push_back(point_index(g, s.get<std::string>()));
                 std::sort(t.begin(), t.end());
                 c.value = std::find(g.lines.begin(), g.lines.end(), t) != g.lines.end();
             } else if (f == "census") {
                 std::map<std::string, std::size_t> count{{"perp-set", 0}, {"grid", 0}, {"ovoid", 0}, {"other", 0}};
                 for (const auto& h : hyperplanes(cx)) ++count[to_string(h.kind)];
                 c.value = json{{"perp-set", count["perp-set"]}, {"grid", count["grid"]}, {"ovoid", count["ovoid"]},
                                {"other", count["other"]}};
             } else if (f == "perp_size" || f == "ovoid_size" || f == "grid_size") {
                 auto kind = f == "perp_size" ? hyperplane_kind::perp_set
                                              : (f == "ovoid_size" ? hyperplane_kind::ovoid : hyperplane_kind::grid);
                 std::set<std::size_t> sizes;
                 for (const auto& h : hyperplanes(cx))
                     if (h.kind == kind) sizes.insert(h.points.size());
                 c.value = sizes.size() == 1 ? json(*sizes.begin()) : json(sizes);
             } else if (f == "mermin_signs") {
                 auto m = mermin_square_signs(g, entangled_grid(cx));
                 c.value = json{m.signs[0], m.signs[1]};
             } else if (f == "mermin_product") {
                 c.value = mermin_square_signs(g, entangled_grid(cx)).product;
             } else if (f == "grid_products") {
                 // product of the six line signs for every grid, entangled or not
                 json r = json::object();
                 std::size_t neg = 0, total = 0;
                 for (const auto& h : hyperplanes(cx)) {
                     if (h.kind != hyperplane_kind::grid) continue;
                     ++total;
                     neg += mermin_square_signs(g, h).product == -1;
                 }
                 c.value = json{{"grids", total}, {"product_minus_one", neg}};
             } else if (f == "ovoids_maximal") {
                 bool all = true;
                 for (const auto& h : hyperplanes(cx)) {
                     if (h.kind != hyperplane_kind::ovoid) continue;
                     for (std::size_t p = 0; p < g.points.size(); ++p) {
                         if (std::find(h.points.begin(), h.points.end(), p) != h.points.end()) continue;
                         bool independent = true;
                         for (auto q : h.points) independent = independent && !g.collinear(p, q);
                         if (independent) all = false;
                     }
                 }
                 c.value = all;
             } else
                 throw error("unknown geometry field " + f);
             c.route = "table";
             return c;
         }},
        {"geometry_subgroup",
         [](verify_context& cx, const json& a) {
             computation c;
             const std::string sel = arg_s(a, "selection");
             const auto& r = cx.memo<structure_report>("sub:" + sel, [&] {
                 return sub_geometry_group_analysis(geometry(cx), selection(cx, sel));
             });
             const std::string f = arg_s(a, "field");
             if (f == "order") c.value = r.order;
             else if (f == "exponent") c.value = r.exponent;
             else if (f == "center") c.value = r.center;
             else if (f == "aut") c.value = r.aut;
             else if (f == "out") c.value = r.out;
             else throw error("unknown field " + f);
             c.route = "table";
             c.notes = r.fingerprint.to_string();
             return c;
         }},
        {"chain",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& r = arg_i(a, "qubits") == 2 ? chain2(cx) : chain3(cx);
             const std::string f = arg_s(a, "field");
             auto pick = [&](const std::vector<std::size_t>& v) {
                 if (a.contains("k")) return json(v.at(static_cast<std::size_t>(arg_i(a, "k") - 2)));
                 return json(v);
             };
             if (f == "aut") c.value = pick(r.aut);
             else if (f == "out") c.value = pick(r.out);
             else if (f == "order") c.value = pick(r.orders);
             else if (f == "center") c.value = pick(r.centers);
             else if (f == "last_equals_previous") {
                 const std::size_t k = r.orders.size();
                 c.value = k >= 2 && r.orders[k - 1] == r.orders[k - 2];
             } else
                 throw error("unknown chain field " + f);
             std::string pts;
             for (const auto& p : r.points) pts += (pts.empty() ? "" : " ") + pauli_letters(p);
             c.notes = "independent set " + pts;
             c.route = "table";
             return c;
         }},
        {"imprimitive_order",
         [](verify_context& cx, const json& a) {
             computation c;
             imprimitive_spec s{static_cast<int>(arg_i(a, "m")), static_cast<int>(arg_i(a, "p")),
                                static_cast<int>(arg_i(a, "n"))};
             const std::string route = a.value("route", "formula");
             if (route == "formula") {
                 c.value = as_json(imprimitive_order(s));
                 c.notes = "m^n n!/p";
             } else if (route == "table") {
                 c.value = cx.table(s.name(), imprimitive_generators(s)).order();
                 c.route = "table";
             } else if (route == "perm") {
                 c.value = as_json(imprimitive_permutation_group(s).order());
                 c.route = "perm";
                 c.notes = "action on the " + std::to_string(s.n * s.m) + " scaled axis vectors";
             } else
                 throw error("unknown route " + route);
             return c;
         }},
        {"yang_baxter",
         [](verify_context&, const json& a) {
             computation c;
             const std::string m = arg_s(a, "matrix");
             exact_matrix r = m == "I4" ? exact_matrix::identity(4) : standard_gate(m);
             auto y = yang_baxter_check(r);
             c.value = json{{"holds", y.holds}, {"unitary", y.unitary}};
             return c;
         }},
        {"root_count",
         [](verify_context& cx, const json& a) {
             computation c;
             c.value = roots(cx, arg_s(a, "type")).roots.size();
             return c;
         }},
        {"weyl_order",
         [](verify_context& cx, const json& a) {
             computation c;
             const bsgs& w = weyl(cx, arg_s(a, "type"));
             c.value = as_json(a.value("derived", false) ? perm_derived_subgroup(w).order() : w.order());
             c.route = "perm";
             return c;
         }},
        {"weyl_index",
         [](verify_context& cx, const json& a) {
             computation c;
             big_int big = weyl(cx, arg_s(a, "type")).order();
             big_int small = a.contains("by") ? weyl(cx, arg_s(a, "by")).order() : big_int(arg_i(a, "divisor"));
             if (big % small != 0) throw non_integral_result("index is not an integer");
             c.value = as_json(big / small);
             c.route = "perm";
             return c;
         }},
        {"sp_order",
         [](verify_context&, const json& a) {
             // |Sp(2n, 2)| = 2^{n^2} prod (2^{2i} - 1)
             computation c;
             const long long n = arg_i(a, "n");
             big_int r = big_int(1) << static_cast<unsigned>(n * n);
             for (long long i = 1; i <= n; ++i) r *= (big_int(1) << static_cast<unsigned>(2 * i)) - 1;
             c.value = as_json(r);
             return c;
         }},
        {"weyl_presentation_witness",
         [](verify_context& cx, const json& a) {
             computation c;
             const std::string type = arg_s(a, "type");
             const auto& rs = roots(cx, type);
             auto w = weyl_presentation_witness(rs, presentation(arg_s(a, "presentation")), weyl(cx, type).order());
             c.value = w.has_value();
             if (w) {
                 c.evidence = "PresentationWitness";
                 std::string m;
                 for (auto i : w->matching) m += (m.empty() ? "" : ",") + std::to_string(i + 1);
                 c.notes = "x_i -> simple reflection " + m;
             }
             c.route = "perm";
             return c;
         }},
        {"weight_lattice",
         [](verify_context&, const json& a) {
             computation c;
             c.value = int_matrix_json(weight_lattice_matrix(parse_coxeter_type(arg_s(a, "type"))));
             c.notes = "det(C) C^-1";
             return c;
         }},
        {"shephard_todd_witness",
         [](verify_context& cx, const json& a) {
             computation c;
             const auto& g = subject(cx, a);
             auto r = relator_witness(g, shephard_todd_presentation(static_cast<int>(arg_i(a, "no"))));
             c.value = r.witness ? json("witness") : json("None");
             c.unknown = r.exhausted;
             c.notes = r.reason;
             c.route = "table";
             return c;
         }},
    };
    return by_name;
}

}  // namespace ops

inline computation evaluate(verify_context& cx, const json& constructor) {
    const std::string op = constructor.at("op").get<std::string>();
    auto it = ops::registry().find(op);
    if (it == ops::registry().end()) throw error("unknown op '" + op + "'");
    return it->second(cx, constructor.value("args", json::object()));
}

inline claim_result run_claim(verify_context& cx, const claim& c) {
    claim_result r;
    r.id = c.id;
    auto t0 = std::chrono::steady_clock::now();
    try {
        computation v = evaluate(cx, c.constructor);
        r.computed = v.value;
        r.evidence = v.evidence;
        r.route = v.route;
        r.notes = v.notes;
        const bool match = v.value == c.expected;
        if (v.unknown) r.status = claim_status::unknown;
        else if (c.level == severity::report_only) {
            r.status = claim_status::report;
            r.notes = std::string(match ? "agrees with" : "differs from") + " the stated value" +
                      (r.notes.empty() ? "" : "; " + r.notes);
        } else
            r.status = match ? claim_status::pass : claim_status::fail;
        if (match && r.evidence == "None" && c.kind == "Order") r.evidence = "OrderMatch";
    } catch (const std::exception& e) {
        r.status = c.level == severity::report_only ? claim_status::report : claim_status::fail;
        r.computed = nullptr;
        r.notes = std::string("error: ") + e.what();
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct run_options {
    std::optional<std::filesystem::path> cache_dir;
    std::string filter;
    unsigned workers = 1;
};

/// Results come back in registry order whatever the completion order.
inline std::vector<claim_result> run_claims(const std::vector<claim>& claims, const run_options& opt) {
    std::vector<const claim*> selected;
    for (const auto& c : claims)
        if (c.id.rfind(opt.filter, 0) == 0) selected.push_back(&c);
    std::vector<claim_result> results(selected.size());
    verify_context cx(opt.cache_dir);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < selected.size();) results[i] = run_claim(cx, *selected[i]);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(selected.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return results;
}

inline bool any_required_failure(const std::vector<claim_result>& results) {
    return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.status == claim_status::fail; });
}

/// One JSON record per line; wall time is left out so reruns are byte-identical.
inline std::string machine_report(const std::vector<claim_result>& results) {
    std::string out;
    for (const auto& r : results) {
        json j;
        j["id"] = r.id;
        j["status"] = to_string(r.status);
        j["computed"] = r.computed;
        j["evidence"] = r.evidence;
        j["route"] = r.route;
        j["notes"] = r.notes;
        out += j.dump() + "\n";
    }
    return out;
}

inline std::string human_report(const std::vector<claim>& claims, const std::vector<claim_result>& results) {
    std::map<std::string, const claim*> by_id;
    for (const auto& c : claims) by_id[c.id] = &c;
    std::size_t w_id = 2, w_val = 8;
    auto short_value = [](const json& v) {
        std::string s = v.dump();
        return s.size() > 40 ? s.substr(0, 37) + "..." : s;
    };
    for (const auto& r : results) {
        w_id = std::max(w_id, r.id.size());
        w_val = std::max(w_val, short_value(r.computed).size());
    }
    std::ostringstream o;
    o << std::left << std::setw(static_cast<int>(w_id)) << "id" << "  " << std::setw(7) << "status" << "  "
      << std::setw(static_cast<int>(w_val)) << "computed" << "  " << std::setw(19) << "evidence" << "  " << std::setw(5)
      << "route" << "  " << std::setw(8) << "time" << "  citation\n";
    std::size_t failed = 0, reported = 0;
    for (const auto& r : results) {
        failed += r.status == claim_status::fail;
        reported += r.status == claim_status::report;
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << r.wall_time << "s";
        o << std::setw(static_cast<int>(w_id)) << r.id << "  " << std::setw(7) << to_string(r.status) << "  "
          << std::setw(static_cast<int>(w_val)) << short_value(r.computed) << "  " << std::setw(19) << r.evidence
          << "  " << std::setw(5) << (r.route.empty() ? "-" : r.route) << "  " << std::setw(8) << t.str() << "  "
          << (by_id.count(r.id) ? by_id[r.id]->citation : "") << '\n';
        if (!r.notes.empty() && r.status != claim_status::pass) o << "    note: " << r.notes << '\n';
    }
    if (failed) o << "FAILED: " << failed << " of " << results.size() << '\n';
    else o << "OK: " << results.size() << " claims, " << reported << " report-only\n";
    return o.str();
}

/// --cache wins, then QRG_CACHE_DIR, else no disk cache.
inline std::optional<std::filesystem::path> default_cache_dir(const std::string& flag) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* env = std::getenv("QRG_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

}  // namespace qrg
