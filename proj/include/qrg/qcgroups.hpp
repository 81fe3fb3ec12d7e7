#pragma once

// The quantum-computing groups: Pauli, Clifford, Bell and magic groups, their
// quotients and automorphism data. Groups small enough are backed by exact
// matrix tables; three-qubit groups go through their action on Paulis.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrg/autgrp.hpp"
#include "qrg/coxeter.hpp"
#include "qrg/geom.hpp"
#include "qrg/impref.hpp"
#include "qrg/matrix_group.hpp"
#include "qrg/pauli.hpp"
#include "qrg/perm.hpp"

namespace qrg {

enum class backing { table, perm };

inline const char* to_string(backing b) { return b == backing::table ? "table" : "perm"; }

struct group_handle {
    std::string name;
    backing route = backing::table;
    std::vector<exact_matrix> generators;
    std::optional<matrix_group> table;
    // permutation route: images of the signed and unsigned Pauli actions
    std::optional<bsgs> signed_image;
    std::optional<bsgs> unsigned_image;
    std::string kernel;  // what the action forgets

    /// Exact order for tables; for the permutation route the signed-image
    /// order, i.e. the order of the central quotient.
    big_int order() const { return table ? big_int(table->order()) : signed_image->order(); }
};

namespace detail {

inline std::vector<exact_matrix> clifford_generators(int n) {
    auto H = standard_gate("H"), P = standard_gate("P"), I = standard_gate("I"), CZ = standard_gate("CZ");
    switch (n) {
    case 1: return {H, P};
    case 2: return {tensor(H, I), tensor(I, H), tensor(P, I), tensor(I, P), CZ};
    case 3: return {tensor(H, H, P), tensor(H, CZ), tensor(CZ, H)};
    }
    throw invalid_spec("clifford group: n must be 1, 2 or 3");
}

inline std::vector<exact_matrix> bell_generators(int n) {
    auto H = standard_gate("H"), P = standard_gate("P"), R = standard_gate("R");
    switch (n) {
    case 2: return {tensor(H, H), tensor(H, P), R};
    case 3: return {tensor(H, H, P), tensor(H, R), tensor(R, H)};
    }
    throw invalid_spec("bell group: n must be 2 or 3");
}

inline group_handle table_handle(std::string name, std::vector<exact_matrix> gens) {
    group_handle h;
    h.name = std::move(name);
    h.route = backing::table;
    h.generators = gens;
    h.table = enumerate_matrix_group(std::move(gens), group_mode::full);
    return h;
}

inline group_handle perm_handle(std::string name, std::vector<exact_matrix> gens, unsigned n) {
    group_handle h;
    h.name = std::move(name);
    h.route = backing::perm;
    h.generators = gens;
    std::vector<permutation> s, u;
    for (const auto& g : gens) {
        s.push_back(clifford_action_permutation(g, n, true));
        u.push_back(clifford_action_permutation(g, n, false));
    }
    h.signed_image = schreier_sims(s, signed_pauli_points(n));
    h.unsigned_image = schreier_sims(u, unsigned_pauli_points(n));
    h.kernel = "signed action kernel = scalars; unsigned action kernel = scalars . Paulis";
    return h;
}

}  // namespace detail

inline group_handle clifford_group(int n) {
    auto gens = detail::clifford_generators(n);
    if (n == 3) return detail::perm_handle("C3", std::move(gens), 3);
    return detail::table_handle("C" + std::to_string(n), std::move(gens));
}

inline group_handle bell_group(int n) {
    auto gens = detail::bell_generators(n);
    if (n == 3) return detail::perm_handle("B3", std::move(gens), 3);
    return detail::table_handle("B2", std::move(gens));
}

/// <T, H> with T = zeta_8 P H.
inline group_handle magic_group() { return detail::table_handle("magic", {standard_gate("T"), standard_gate("H")}); }

/// P_n as a matrix group on the Pauli generator list.
inline group_handle pauli_matrix_group(int n) {
    if (n < 1 || n > 3) throw invalid_spec("pauli group: n must be 1, 2 or 3");
    std::vector<exact_matrix> gens;
    for (const auto& p : pauli_generators(static_cast<unsigned>(n))) gens.push_back(pauli_to_matrix(p));
    return detail::table_handle("P" + std::to_string(n), std::move(gens));
}

inline group_handle named_group(std::string_view name) {
    if (name == "C1") return clifford_group(1);
    if (name == "C2") return clifford_group(2);
    if (name == "C3") return clifford_group(3);
    if (name == "B2") return bell_group(2);
    if (name == "B3") return bell_group(3);
    if (name == "P1") return pauli_matrix_group(1);
    if (name == "P2") return pauli_matrix_group(2);
    if (name == "P3") return pauli_matrix_group(3);
    if (name == "magic") return magic_group();
    throw invalid_spec("unknown group '" + std::string(name) + "'");
}

/// The subgroup of a matrix table formed by the n-qubit Pauli matrices.
inline subgroup pauli_subgroup_of(const matrix_group& g, unsigned n) {
    std::vector<elem_id> ids;
    for (const auto& p : pauli_generators(n)) {
        elem_id id = g.find(pauli_to_matrix(p));
        if (id == no_elem) throw not_subgroup("group does not contain the Pauli group");
        ids.push_back(id);
    }
    subgroup s = generate_subgroup(g.table, std::span<const elem_id>(ids));
    if (s.order() != (std::size_t{4} << (2 * n))) throw error("pauli subgroup has the wrong order");
    return s;
}

inline quotient_group clifford_mod_pauli(const group_handle& c, unsigned n) {
    if (!c.table) throw error("clifford_mod_pauli needs a table-backed group");
    return quotient(c.table->table, pauli_subgroup_of(*c.table, n));
}

struct yang_baxter_result {
    bool holds = false;
    bool unitary = false;
};

/// (R x I)(I x R)(R x I) == (I x R)(R x I)(I x R) exactly.
inline yang_baxter_result yang_baxter_check(const exact_matrix& r) {
    if (r.dim() != 4) throw error("yang-baxter check needs a 4x4 matrix");
    const exact_matrix i = exact_matrix::identity(2);
    exact_matrix a = tensor(r, i), b = tensor(i, r);
    return {a * b * a == b * a * b, is_unitary(r)};
}

// ---- automorphisms of Pauli groups

struct pauli_aut_report {
    std::size_t aut = 0, inn = 0, out = 0;
    std::optional<bsgs> aut_group;   // automorphisms as permutations of the group's ids
    std::optional<table_witness> aut_witness;  // B3 relations (n = 1)
    std::optional<table_witness> out_witness;  // G2 relations on Out (n = 1)
    big_int derived_order = 0;
    group_fingerprint derived_fingerprint;
};

inline pauli_aut_report aut_of_pauli(unsigned n) {
    if (n != 1 && n != 2) throw too_large("automorphism data only for one and two qubits");
    pauli_group p = pauli_group_table(n);
    pauli_aut_report r;
    auto data = automorphisms_of(p.table, true);
    r.aut = data.count;
    auto io = inn_outer_orders(p.table, r.aut);
    r.inn = io.inn;
    r.out = io.out;
    // a few maps already generate; feed Schreier-Sims only those that extend
    bsgs a(p.order());
    for (const auto& m : data.automorphisms)
        if (!a.contains(m)) a.extend(m);
    if (a.order() != big_int(r.aut)) throw error("automorphism permutations do not close to the counted group");
    r.derived_fingerprint = fingerprint_of(perm_derived_subgroup(a));
    r.derived_order = perm_derived_subgroup(a).order();
    if (n == 1) {
        auto at = permutation_group_table(a.generators(), a.degree());
        r.aut_witness = table_presentation_witness(at.table, coxeter_presentation_of(parse_coxeter_type("B3")), 48);
        std::vector<elem_id> inner;
        for (elem_id x = 0; x < p.order(); ++x) {
            elem_id id = at.find(inner_automorphism(p.table, x));
            if (id == no_elem) throw error("inner automorphism missing from Aut");
            inner.push_back(id);
        }
        auto out = quotient(at.table, subgroup_from_elements(at.table, inner));
        r.out_witness = table_presentation_witness(out.table, coxeter_presentation_of(parse_coxeter_type("G2")), 12);
    }
    r.aut_group = std::move(a);
    return r;
}

/// |GL(2n, 2)|, the automorphism group order of the central quotient Z_2^{2n}.
inline big_int aut_of_central_quotient(unsigned n) {
    big_int r = 1;
    const unsigned d = 2 * n;
    for (unsigned i = 0; i < d; ++i) r *= (big_int(1) << d) - (big_int(1) << i);
    return r;
}

/// Direct count for n = 1: automorphisms of P_1 / Z(P_1).
inline std::size_t aut_of_central_quotient_direct(unsigned n) {
    pauli_group p = pauli_group_table(n);
    auto q = quotient(p.table, center_of(p.table));
    return automorphism_count(q.table);
}

// ---- complements

enum class split_outcome { split, non_split, unknown };

inline const char* to_string(split_outcome s) {
    switch (s) {
    case split_outcome::split: return "split";
    case split_outcome::non_split: return "non-split";
    default: return "unknown";
    }
}

struct split_result {
    split_outcome outcome = split_outcome::unknown;
    std::vector<elem_id> complement_generators;
    std::size_t nodes = 0;
};

/// Looks for a complement of the normal subgroup `n`: lifts of a generating
/// tuple of G/N generating a subgroup of order |G/N|. Every complement is
/// generated by such lifts, so an exhausted search proves non-splitness.
inline split_result split_check(const group_table& g, const subgroup& n, std::size_t node_budget = 5'000'000) {
    if (!is_normal(g, n)) throw not_normal("split check needs a normal subgroup");
    quotient_group q = quotient(g, n);
    split_result r;
    if (q.order() == 1) {
        r.outcome = split_outcome::split;
        return r;
    }
    std::vector<elem_id> qgens = q.order() <= 512 ? minimal_generators(q.table) : q.table.generators();
    std::vector<std::vector<elem_id>> lifts(qgens.size());
    for (elem_id e = 0; e < g.order(); ++e)
        for (std::size_t i = 0; i < qgens.size(); ++i)
            if (q.of_parent[e] == qgens[i]) lifts[i].push_back(e);
    // a lift must have the order of its image for a complement to exist
    for (std::size_t i = 0; i < qgens.size(); ++i) {
        std::size_t o = q.table.element_order(qgens[i]);
        std::erase_if(lifts[i], [&](elem_id e) { return g.element_order(e) != o; });
    }
    std::vector<elem_id> t(qgens.size());
    bool out_of_budget = false;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == t.size()) return generate_subgroup(g, std::span<const elem_id>(t)).order() == q.order();
        for (elem_id c : lifts[i]) {
            if (++r.nodes > node_budget) {
                out_of_budget = true;
                return false;
            }
            t[i] = c;
            if (go(i + 1)) return true;
            if (out_of_budget) return false;
        }
        return false;
    };
    if (go(0)) {
        r.outcome = split_outcome::split;
        r.complement_generators = t;
    } else {
        r.outcome = out_of_budget ? split_outcome::unknown : split_outcome::non_split;
    }
    return r;
}

// ---- independent-set chains

struct chain_report {
    std::vector<pauli_element> points;
    std::vector<std::size_t> orders;  // |g_2|, |g_3|, ...
    std::vector<std::size_t> centers;
    std::vector<std::size_t> aut;
    std::vector<std::size_t> out;
};

inline chain_report analyze_chain(const std::vector<pauli_element>& points, std::size_t up_to, std::size_t skip_aut_from = 99) {
    chain_report r;
    r.points = points;
    auto chain = independent_set_chain(points, up_to);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& t = chain[i].table;
        r.orders.push_back(t.order());
        r.centers.push_back(center_of(t).order());
        if (i + 2 >= skip_aut_from) continue;
        std::size_t a = automorphism_count(t);
        r.aut.push_back(a);
        r.out.push_back(inn_outer_orders(t, a).out);
    }
    return r;
}

/// The two-qubit chain over an ovoid containing sigma_0 x sigma_x.
inline chain_report two_qubit_ovoid_chain() {
    auto g = two_qubit_geometry();
    const std::size_t ix = point_index(g, "IX");
    for (const auto& h : enumerate_hyperplanes(g)) {
        if (h.kind != hyperplane_kind::ovoid || std::find(h.points.begin(), h.points.end(), ix) == h.points.end())
            continue;
        std::vector<pauli_element> pts;
        pts.push_back(g.points[ix]);
        for (auto p : h.points)
            if (p != ix) pts.push_back(g.points[p]);
        return analyze_chain(pts, 5);
    }
    throw error("no ovoid through IX");
}

/// Lexicographic depth-first search over pairwise anticommuting three-qubit
/// Hermitian Paulis. The first set of six whose g_2..g_5 automorphism orders
/// equal `prefix` is returned, with g_6 analysed in full.
inline chain_report three_qubit_chain(const std::vector<std::size_t>& prefix = {8, 48, 1920, 61440}) {
    std::vector<pauli_element> all;
    for (std::uint32_t x = 0; x < 8; ++x)
        for (std::uint32_t z = 0; z < 8; ++z)
            if (x || z) all.push_back(hermitian_pauli(3, x, z));
    std::vector<std::size_t> pick;
    std::optional<chain_report> found;
    std::function<void(std::size_t)> go = [&](std::size_t start) {
        if (found) return;
        if (pick.size() >= 2) {
            // prune on the automorphism order of the current prefix
            std::vector<pauli_element> pts;
            for (auto i : pick) pts.push_back(all[i]);
            std::size_t k = pick.size();
            if (k - 2 < prefix.size()) {
                auto t = independent_set_chain(pts, k).back();
                if (automorphism_count(t.table) != prefix[k - 2]) return;
            }
            if (k == 6) {
                found = analyze_chain(pts, 6);
                return;
            }
        }
        for (std::size_t c = start; c < all.size() && !found; ++c) {
            bool ok = true;
            for (auto i : pick) ok = ok && !pauli_commutes(all[i], all[c]);
            if (!ok) continue;
            pick.push_back(c);
            go(c + 1);
            pick.pop_back();
        }
    };
    go(0);
    if (!found) throw error("no three-qubit independent set matches the automorphism prefix");
    return *found;
}

}  // namespace qrg
