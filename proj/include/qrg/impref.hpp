#pragma once

// Imprimitive reflection groups G(m,p,n) and relator presentations of the
// two Shephard-Todd groups that appear (No 9 and No 31).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrg/errors.hpp"
#include "qrg/group_table.hpp"
#include "qrg/matrix_group.hpp"
#include "qrg/perm.hpp"

namespace qrg {

struct imprimitive_spec {
    int m = 1, p = 1, n = 1;

    std::string name() const {
        return "G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) + ")";
    }
};

inline void validate(const imprimitive_spec& s) {
    if (s.m < 1 || s.p < 1 || s.n < 1) throw invalid_spec(s.name() + ": parameters must be positive");
    if (s.m % s.p != 0) throw invalid_spec(s.name() + ": p must divide m");
}

/// m^n n! / p
inline big_int imprimitive_order(const imprimitive_spec& s) {
    validate(s);
    big_int r = 1;
    for (int i = 0; i < s.n; ++i) r *= s.m;
    for (int i = 2; i <= s.n; ++i) r *= i;
    return r / s.p;
}

namespace detail {

inline int zeta8_step(int m) {
    if (m != 1 && m != 2 && m != 4 && m != 8)
        throw unsupported_root_of_unity("m = " + std::to_string(m) + " needs roots of unity outside Q(zeta_8)");
    return 8 / m;
}

}  // namespace detail

/// Adjacent transpositions, the reflection swapping e_1, e_2 with phases
/// zeta_m^-1 and zeta_m, and Diag(zeta_m^p, 1, ...) when p < m. Every
/// generator is a unitary reflection.
inline std::vector<exact_matrix> imprimitive_generators(const imprimitive_spec& s) {
    validate(s);
    const int step = detail::zeta8_step(s.m);
    if (s.n > 5) throw invalid_spec(s.name() + ": n must be at most 5");
    const std::size_t n = static_cast<std::size_t>(s.n);
    std::vector<exact_matrix> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        exact_matrix t = exact_matrix::identity(n);
        t(i, i) = cyc8();
        t(i + 1, i + 1) = cyc8();
        t(i, i + 1) = cyc8(1);
        t(i + 1, i) = cyc8(1);
        gens.push_back(std::move(t));
    }
    if (n >= 2 && s.m > 1) {
        exact_matrix t = exact_matrix::identity(n);
        t(0, 0) = cyc8();
        t(1, 1) = cyc8();
        t(0, 1) = cyc8::zeta_pow(-step);
        t(1, 0) = cyc8::zeta_pow(step);
        gens.push_back(std::move(t));
    }
    if (s.p < s.m) {
        exact_matrix d = exact_matrix::identity(n);
        d(0, 0) = cyc8::zeta_pow(step * s.p);
        gens.push_back(std::move(d));
    }
    if (gens.empty()) gens.push_back(exact_matrix::identity(n));
    return gens;
}

inline matrix_group enumerate_imprimitive(const imprimitive_spec& s, std::size_t cap = default_enumeration_cap) {
    return enumerate_matrix_group(imprimitive_generators(s), group_mode::full, cap);
}

/// Action of a monomial matrix with m-th root of unity entries on the n*m
/// vectors zeta_m^k e_j (point j*m + k).
inline permutation monomial_action(const exact_matrix& a, int m) {
    const int step = detail::zeta8_step(m);
    const std::size_t n = a.dim();
    std::vector<std::uint32_t> img(n * static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t i = 0;
        while (i < n && a(i, j).is_zero()) ++i;
        if (i == n) throw error("monomial_action: zero column");
        int e = -1;
        for (int k = 0; k < m; ++k)
            if (a(i, j) == cyc8::zeta_pow(step * k)) e = k;
        if (e < 0) throw error("monomial_action: entry is not an m-th root of unity");
        for (int k = 0; k < m; ++k)
            img[j * m + k] = static_cast<std::uint32_t>(i * m + (k + e) % m);
    }
    return permutation(std::move(img));
}

/// Permutation route: faithful action on the n*m scaled axis vectors.
inline bsgs imprimitive_permutation_group(const imprimitive_spec& s) {
    auto gens = imprimitive_generators(s);
    std::vector<permutation> perms;
    for (const auto& g : gens) perms.push_back(monomial_action(g, s.m));
    return schreier_sims(perms, static_cast<std::size_t>(s.n * s.m));
}

// ---- relator presentations

/// Words use +k for x_k and -k for x_k^-1 (1-based).
struct relator_presentation {
    std::string name;
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;
};

inline relator_presentation shephard_todd_presentation(int no) {
    auto pw = [](std::vector<int> w, int times) {
        std::vector<int> r;
        for (int i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
        return r;
    };
    if (no == 9) {
        std::vector<int> r3 = pw({-2, 1}, 3);
        auto b = pw({2, 1}, 3);
        r3.insert(r3.end(), b.begin(), b.end());
        return {"ST9", 2, {{1, 1}, {2, 2}, r3}};
    }
    if (no == 31) {
        relator_presentation p{"ST31", 5, {}};
        for (int k = 1; k <= 5; ++k) p.relators.push_back({k, k});
        for (auto [a, b] : {std::pair{1, 4}, {2, 4}, {2, 5}}) p.relators.push_back(pw({a, b}, 2));
        for (auto [a, b] : {std::pair{2, 1}, {3, 2}, {4, 3}, {5, 4}}) p.relators.push_back(pw({a, b}, 3));
        p.relators.push_back({5, 1, 3, 1, 5, 3});
        p.relators.push_back({1, 5, 3, 1, 3, 5});
        return p;
    }
    throw unsupported_type("only Shephard-Todd groups No 9 and No 31 are provided");
}

inline elem_id evaluate_word(const group_table& g, const std::vector<elem_id>& tuple, const std::vector<int>& word) {
    elem_id r = group_table::identity();
    for (int w : word) {
        std::size_t k = static_cast<std::size_t>(w > 0 ? w : -w) - 1;
        if (k >= tuple.size()) throw error("relator uses a generator outside the tuple");
        r = g.mul(r, w > 0 ? tuple[k] : g.inv(tuple[k]));
    }
    return r;
}

inline bool relators_hold(const group_table& g, const std::vector<elem_id>& tuple, const relator_presentation& p) {
    if (tuple.size() != p.generators) return false;
    for (const auto& r : p.relators)
        if (evaluate_word(g, tuple, r) != group_table::identity()) return false;
    return true;
}

struct relator_search_result {
    std::optional<std::vector<elem_id>> witness;
    std::size_t tuples_satisfying_relators = 0;  // relations hold but generation fails
    std::size_t nodes = 0;
    bool exhausted = false;
    std::string reason;
};

/// Tuples satisfying every relator and generating the whole group, scanned in
/// id order. A relator that is a generator square (x_k x_k) restricts x_k to
/// elements of order dividing 2.
inline relator_search_result relator_witness(const group_table& g, const relator_presentation& p,
                                             std::size_t node_budget = 50'000'000) {
    relator_search_result res;
    std::vector<std::vector<elem_id>> candidates(p.generators);
    for (std::size_t k = 0; k < p.generators; ++k) {
        bool square = false;
        for (const auto& r : p.relators)
            if (r.size() == 2 && r[0] == static_cast<int>(k + 1) && r[1] == r[0]) square = true;
        for (elem_id e = 0; e < g.order(); ++e)
            if (!square || g.mul(e, e) == group_table::identity()) candidates[k].push_back(e);
    }
    // relators checkable once their highest generator is fixed
    std::vector<std::vector<const std::vector<int>*>> by_level(p.generators);
    for (const auto& r : p.relators) {
        std::size_t hi = 0;
        for (int w : r) hi = std::max<std::size_t>(hi, static_cast<std::size_t>(w > 0 ? w : -w) - 1);
        by_level[hi].push_back(&r);
    }
    std::vector<elem_id> t(p.generators, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == p.generators) {
            if (generate_subgroup(g, std::span<const elem_id>(t)).order() == g.order()) return true;
            ++res.tuples_satisfying_relators;
            return false;
        }
        for (elem_id c : candidates[i]) {
            if (++res.nodes > node_budget) {
                res.exhausted = true;
                return false;
            }
            t[i] = c;
            bool ok = true;
            for (const auto* r : by_level[i]) {
                std::vector<elem_id> prefix(t.begin(), t.begin() + static_cast<long>(i + 1));
                if (evaluate_word(g, prefix, *r) != group_table::identity()) {
                    ok = false;
                    break;
                }
            }
            if (ok && go(i + 1)) return true;
            if (res.exhausted) return false;
        }
        return false;
    };
    if (go(0)) {
        res.witness = t;
        res.reason = "witness found";
    } else if (res.exhausted) {
        res.reason = "node budget exhausted";
    } else if (res.tuples_satisfying_relators > 0) {
        res.reason = "relators hold on " + std::to_string(res.tuples_satisfying_relators) +
                     " tuples but none generates the group";
    } else {
        res.reason = "no tuple satisfies the relators";
    }
    return res;
}

}  // namespace qrg
