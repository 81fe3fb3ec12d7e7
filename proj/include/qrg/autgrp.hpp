#pragma once

// Isomorphism invariants, minimal generating tuples, automorphism counting
// by generator images, and the isomorphism evidence ladder.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrg/coxeter.hpp"
#include "qrg/errors.hpp"
#include "qrg/group_table.hpp"
#include "qrg/perm.hpp"

namespace qrg {

namespace detail {

inline std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> ps;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace detail

/// Primary invariants (prime powers, ascending) of an abelian group table.
inline std::vector<std::size_t> abelian_invariants(const group_table& a) {
    if (!is_abelian(a)) throw error("abelian_invariants: group is not abelian");
    std::vector<std::size_t> orders(a.order());
    for (elem_id e = 0; e < a.order(); ++e) orders[e] = a.element_order(e);
    std::vector<std::size_t> inv;
    for (std::size_t p : detail::prime_factors(a.order())) {
        // r_k = number of cyclic factors of order >= p^k = log_p(n_k / n_{k-1})
        std::vector<std::size_t> counts{1};  // n_0 = 1
        std::size_t pk = 1;
        for (;;) {
            pk *= p;
            std::size_t c = 0;
            for (auto o : orders)
                if (pk % o == 0) ++c;
            if (c == counts.back()) break;
            counts.push_back(c);
        }
        std::vector<std::size_t> at_least;  // r_k for k = 1..
        for (std::size_t k = 1; k < counts.size(); ++k) {
            std::size_t ratio = counts[k] / counts[k - 1], r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            at_least.push_back(r);
        }
        for (std::size_t k = 0; k < at_least.size(); ++k) {
            std::size_t exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
            std::size_t q = 1;
            for (std::size_t j = 0; j <= k; ++j) q *= p;
            for (std::size_t j = 0; j < exact; ++j) inv.push_back(q);
        }
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

struct group_fingerprint {
    std::size_t order = 0;
    std::size_t center = 0;                    // 0 when not computed
    std::vector<std::size_t> derived_series;   // |G|, |G'|, |G''|, ... until stable
    std::vector<std::size_t> abelianization;   // primary invariants of G/G'
    std::map<std::size_t, std::size_t> order_histogram;
    std::size_t exponent = 0;

    bool operator==(const group_fingerprint&) const = default;

    std::string to_string() const {
        auto list = [](const std::vector<std::size_t>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s + "]";
        };
        std::string s = "order=" + std::to_string(order) + " center=" + std::to_string(center) +
                        " derived=" + list(derived_series) + " ab=" + list(abelianization) + " hist={";
        bool first = true;
        for (auto [o, c] : order_histogram) {
            s += (first ? "" : ",") + std::to_string(o) + ":" + std::to_string(c);
            first = false;
        }
        return s + "} exp=" + std::to_string(exponent);
    }
};

inline group_fingerprint fingerprint_of(const group_table& g) {
    group_fingerprint f;
    f.order = g.order();
    f.center = center_of(g).order();
    subgroup d = derived_subgroup_of(g);
    f.derived_series.push_back(g.order());
    {
        group_table cur = d.table;
        std::size_t prev = g.order();
        while (cur.order() != prev) {
            f.derived_series.push_back(cur.order());
            prev = cur.order();
            cur = derived_subgroup_of(cur).table;
        }
    }
    f.abelianization = abelian_invariants(quotient(g, d).table);
    f.exponent = 1;
    for (elem_id e = 0; e < g.order(); ++e) {
        std::size_t o = g.element_order(e);
        ++f.order_histogram[o];
        f.exponent = std::lcm(f.exponent, o);
    }
    return f;
}

/// Order and derived series only.
inline group_fingerprint fingerprint_of(const bsgs& g) {
    group_fingerprint f;
    f.order = static_cast<std::size_t>(g.order());
    f.derived_series.push_back(f.order);
    bsgs cur = perm_derived_subgroup(g);
    std::size_t prev = f.order;
    while (static_cast<std::size_t>(cur.order()) != prev) {
        prev = static_cast<std::size_t>(cur.order());
        f.derived_series.push_back(prev);
        cur = perm_derived_subgroup(cur);
    }
    return f;
}

inline bool is_p_group(std::size_t n, std::size_t* prime = nullptr) {
    auto ps = detail::prime_factors(n);
    if (ps.size() != 1) return false;
    if (prime) *prime = ps.front();
    return true;
}

/// Lexicographically first generating tuple of minimal length. For p-groups
/// the search runs in the Frattini quotient G/(G'G^p), whose bases are exactly
/// the images of minimal generating tuples.
inline std::vector<elem_id> minimal_generators(const group_table& g, std::size_t max_order = 512) {
    if (g.order() > max_order) throw too_large("minimal_generators: group order above " + std::to_string(max_order));
    if (g.order() == 1) return {};
    std::size_t p = 0;
    if (is_p_group(g.order(), &p)) {
        subgroup d = derived_subgroup_of(g);
        std::vector<elem_id> gens = d.parent_generators();
        for (elem_id e = 0; e < g.order(); ++e) gens.push_back(g.pow(e, static_cast<long long>(p)));
        subgroup phi = subgroup_from_elements(g, gens);
        quotient_group f = quotient(g, phi);
        // greedy lexicographic basis of the elementary abelian quotient
        std::vector<elem_id> tuple, qgens;
        subgroup span = generate_subgroup(f.table, std::span<const elem_id>(qgens));
        for (elem_id e = 0; e < g.order() && span.order() < f.order(); ++e) {
            if (span.contains(f.of_parent[e])) continue;
            tuple.push_back(e);
            qgens.push_back(f.of_parent[e]);
            span = generate_subgroup(f.table, std::span<const elem_id>(qgens));
        }
        if (generate_subgroup(g, std::span<const elem_id>(tuple)).order() != g.order())
            throw error("minimal_generators: Frattini lift does not generate");
        return tuple;
    }
    // lower bound: largest p-rank of the abelianization
    std::size_t lower = 1;
    {
        auto inv = abelian_invariants(quotient(g, derived_subgroup_of(g)).table);
        std::map<std::size_t, std::size_t> rank;
        for (auto q : inv) ++rank[detail::prime_factors(q).front()];
        for (auto [pp, r] : rank) lower = std::max(lower, r);
    }
    for (std::size_t k = lower;; ++k) {
        std::vector<elem_id> t;
        std::function<bool(const subgroup&, elem_id)> go = [&](const subgroup& h, elem_id start) {
            if (t.size() == k) return h.order() == g.order();
            for (elem_id c = start; c < g.order(); ++c) {
                if (h.contains(c)) continue;  // a minimal tuple is irredundant
                t.push_back(c);
                subgroup next = generate_subgroup(g, std::span<const elem_id>(t));
                if (go(next, c + 1)) return true;
                t.pop_back();
            }
            return false;
        };
        if (go(generate_subgroup(g, std::span<const elem_id>(t)), 1)) return t;
    }
}

/// Backtracking over images of a fixed generating tuple of `src` (the
/// generators of src's own table) in `dst`. Each level fixes one more image
/// and immediately defines and checks the map on the subgroup generated so
/// far, rejecting inconsistent or non-injective partial maps.
class hom_search {
public:
    hom_search(const group_table& src, const group_table& dst) : src_(src), dst_(dst) { plan(); }

    /// Calls `leaf(phi)` (phi: src id -> dst id) for every injective
    /// homomorphism; leaf returns false to stop. Returns the number of leaves.
    std::size_t run(const std::function<bool(const std::vector<elem_id>&)>& leaf) {
        const std::size_t k = src_.generator_count();
        std::vector<std::vector<elem_id>> candidates(k);
        std::vector<std::size_t> dst_orders(dst_.order());
        for (elem_id e = 0; e < dst_.order(); ++e) dst_orders[e] = dst_.element_order(e);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t o = src_.element_order(src_.generator(i));
            for (elem_id e = 0; e < dst_.order(); ++e)
                if (dst_orders[e] == o) candidates[i].push_back(e);
        }
        phi_.assign(src_.order(), no_elem);
        used_.assign(dst_.order(), false);
        phi_[0] = 0;
        used_[0] = true;
        images_.assign(k, 0);
        count_ = 0;
        stop_ = false;
        descend(0, candidates, leaf);
        return count_;
    }

private:
    struct step {
        bool define;
        elem_id from;
        std::uint16_t gen;
        elem_id to;
    };

    void plan() {
        const std::size_t k = src_.generator_count();
        std::vector<bool> known(src_.order(), false);
        std::vector<elem_id> known_list{0};
        known[0] = true;
        levels_.assign(k, {});
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t before = known_list.size();
            for (std::size_t q = 0; q < known_list.size(); ++q) {
                elem_id e = known_list[q];
                bool old = q < before;
                for (std::size_t g = 0; g <= i; ++g) {
                    if (old && g < i) continue;
                    elem_id f = src_.right_gen(e, g);
                    if (!known[f]) {
                        known[f] = true;
                        known_list.push_back(f);
                        levels_[i].push_back({true, e, static_cast<std::uint16_t>(g), f});
                    } else {
                        levels_[i].push_back({false, e, static_cast<std::uint16_t>(g), f});
                    }
                }
            }
        }
        if (known_list.size() != src_.order()) throw error("hom_search: source generators do not generate");
    }

    void descend(std::size_t i, const std::vector<std::vector<elem_id>>& cand,
                 const std::function<bool(const std::vector<elem_id>&)>& leaf) {
        if (i == levels_.size()) {
            ++count_;
            if (!leaf(phi_)) stop_ = true;
            return;
        }
        std::vector<elem_id> defined;
        for (elem_id c : cand[i]) {
            images_[i] = c;
            bool ok = true;
            for (const step& s : levels_[i]) {
                elem_id v = dst_.mul(phi_[s.from], images_[s.gen]);
                if (s.define) {
                    if (used_[v]) {
                        ok = false;
                        break;
                    }
                    used_[v] = true;
                    phi_[s.to] = v;
                    defined.push_back(s.to);
                } else if (phi_[s.to] != v) {
                    ok = false;
                    break;
                }
            }
            if (ok) descend(i + 1, cand, leaf);
            for (elem_id d : defined) {
                used_[phi_[d]] = false;
                phi_[d] = no_elem;
            }
            defined.clear();
            if (stop_) return;
        }
    }

    const group_table& src_;
    const group_table& dst_;
    std::vector<std::vector<step>> levels_;
    std::vector<elem_id> phi_;
    std::vector<bool> used_;
    std::vector<elem_id> images_;
    std::size_t count_ = 0;
    bool stop_ = false;
};

struct automorphism_data {
    std::vector<elem_id> tuple;                  // fixed generating tuple (ids of G)
    std::size_t count = 0;
    std::vector<permutation> automorphisms;      // maps on G's ids, only if requested
};

/// |Aut(G)| as the number of valid generator-image tuples.
inline automorphism_data automorphisms_of(const group_table& g, bool keep_maps = false,
                                          std::optional<std::vector<elem_id>> tuple = std::nullopt,
                                          std::size_t max_order = 256) {
    if (g.order() > max_order) throw too_large("automorphism count: group order above " + std::to_string(max_order));
    automorphism_data a;
    a.tuple = tuple ? *tuple : minimal_generators(g);
    if (a.tuple.empty()) {
        a.count = 1;
        if (keep_maps) a.automorphisms.push_back(permutation(g.order()));
        return a;
    }
    subgroup src = generate_subgroup(g, std::span<const elem_id>(a.tuple));
    if (src.order() != g.order()) throw error("automorphism count: tuple does not generate the group");
    hom_search search(src.table, g);
    a.count = search.run([&](const std::vector<elem_id>& phi) {
        if (keep_maps) {
            std::vector<std::uint32_t> img(g.order());
            for (elem_id e = 0; e < src.order(); ++e) img[src.to_parent[e]] = phi[e];
            a.automorphisms.emplace_back(std::move(img));
        }
        return true;
    });
    return a;
}

inline std::size_t automorphism_count(const group_table& g) { return automorphisms_of(g).count; }

struct inn_out {
    std::size_t aut = 0, inn = 0, out = 0;
};

inline inn_out inn_outer_orders(const group_table& g, std::size_t aut) {
    inn_out r;
    r.aut = aut;
    r.inn = g.order() / center_of(g).order();
    if (aut % r.inn != 0) throw non_integral_out("|Aut| is not divisible by |Inn|");
    r.out = aut / r.inn;
    return r;
}

/// Conjugation by x as a permutation of G's ids.
inline permutation inner_automorphism(const group_table& g, elem_id x) {
    std::vector<std::uint32_t> img(g.order());
    for (elem_id e = 0; e < g.order(); ++e) img[e] = g.conjugate(x, e);
    return permutation(std::move(img));
}

/// First isomorphism src -> dst (as an id map), if any.
inline std::optional<std::vector<elem_id>> find_isomorphism(const group_table& src, const group_table& dst) {
    if (src.order() != dst.order()) return std::nullopt;
    if (src.order() == 1) return std::vector<elem_id>{0};
    auto tuple = minimal_generators(src, 1u << 20);
    subgroup s = generate_subgroup(src, std::span<const elem_id>(tuple));
    hom_search search(s.table, dst);
    std::optional<std::vector<elem_id>> found;
    search.run([&](const std::vector<elem_id>& phi) {
        std::vector<elem_id> m(src.order());
        for (elem_id e = 0; e < s.order(); ++e) m[s.to_parent[e]] = phi[e];
        found = std::move(m);
        return false;
    });
    return found;
}

/// Full O(|G|^2) homomorphism and bijection audit of a map on ids.
inline bool is_isomorphism(const group_table& src, const group_table& dst, const std::vector<uint32_t>& m) {
    if (m.size() != src.order() || src.order() != dst.order()) return false;
    std::vector<bool> seen(dst.order());
    for (auto v : m) {
        if (v >= dst.order() || seen[v]) return false;
        seen[v] = true;
    }
    for (elem_id a = 0; a < src.order(); ++a)
        for (elem_id b = 0; b < src.order(); ++b)
            if (m[src.mul(a, b)] != dst.mul(m[a], m[b])) return false;
    return true;
}

// ---- reference groups

namespace detail {

template <class E, class Mul, class Hash = std::hash<E>>
realized_group<E, Hash> table_from_elements(const E& identity, const std::vector<E>& elements, Mul mul) {
    std::vector<E> gens;
    realized_group<E, Hash> g = enumerate_group(identity, gens, mul, default_enumeration_cap, Hash{});
    for (const auto& e : elements) {
        if (g.contains(e)) continue;
        gens.push_back(e);
        g = enumerate_group(identity, gens, mul, default_enumeration_cap, Hash{});
    }
    if (g.order() != elements.size()) throw error("reference element set is not closed under multiplication");
    return g;
}

struct small_matrix {
    std::array<int, 9> a{};
    bool operator==(const small_matrix&) const = default;
};
struct small_matrix_hash {
    std::size_t operator()(const small_matrix& m) const {
        std::size_t h = 0;
        for (int v : m.a) h = h * 31 + static_cast<std::size_t>(v);
        return h;
    }
};

inline realized_group<small_matrix, small_matrix_hash> linear_group_mod(int q, int n, bool special) {
    auto mul = [q, n](const small_matrix& x, const small_matrix& y) {
        small_matrix r;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int s = 0;
                for (int k = 0; k < n; ++k) s += x.a[i * 3 + k] * y.a[k * 3 + j];
                r.a[i * 3 + j] = s % q;
            }
        return r;
    };
    auto det = [q, n](const small_matrix& x) {
        const auto& a = x.a;
        int d = n == 2 ? a[0] * a[4] - a[1] * a[3]
                       : a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
                             a[2] * (a[3] * a[7] - a[4] * a[6]);
        return ((d % q) + q) % q;
    };
    std::vector<small_matrix> all;
    std::size_t total = 1;
    for (int i = 0; i < n * n; ++i) total *= static_cast<std::size_t>(q);
    for (std::size_t code = 0; code < total; ++code) {
        small_matrix m;
        std::size_t c = code;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m.a[i * 3 + j] = static_cast<int>(c % static_cast<std::size_t>(q));
                c /= static_cast<std::size_t>(q);
            }
        int d = det(m);
        if (d == 0 || (special && d != 1)) continue;
        all.push_back(m);
    }
    small_matrix id;
    for (int i = 0; i < n; ++i) id.a[i * 3 + i] = 1;
    return table_from_elements<small_matrix, decltype(mul), small_matrix_hash>(id, all, mul);
}

}  // namespace detail

/// GL(2,3), SL(2,3), GL(3,2) by exhaustive enumeration of matrices over F_q.
inline group_table general_linear_group(int n, int q) { return detail::linear_group_mod(q, n, false).table; }
inline group_table special_linear_group(int n, int q) { return detail::linear_group_mod(q, n, true).table; }

inline auto permutation_product() {
    return [](const permutation& a, const permutation& b) { return a * b; };
}

inline realized_group<permutation> permutation_group_table(const std::vector<permutation>& gens, std::size_t degree,
                                                           std::size_t cap = default_enumeration_cap) {
    return enumerate_group(permutation(degree), gens, permutation_product(), cap);
}

inline group_table symmetric_group(int n) {
    const std::size_t d = static_cast<std::size_t>(n);
    if (n == 1) return permutation_group_table({}, 1).table;
    std::vector<std::uint32_t> cyc(d);
    for (std::size_t i = 0; i < d; ++i) cyc[i] = static_cast<std::uint32_t>(i);
    return permutation_group_table({permutation::from_cycles(d, {{0, 1}}), permutation::from_cycles(d, {cyc})}, d).table;
}

/// Z_2 x S_n realized on n + 2 points.
inline group_table z2_times_symmetric(int n) {
    const std::size_t d = static_cast<std::size_t>(n) + 2;
    std::vector<std::uint32_t> cyc(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < cyc.size(); ++i) cyc[i] = static_cast<std::uint32_t>(i);
    return permutation_group_table({permutation::from_cycles(d, {{0, 1}}), permutation::from_cycles(d, {cyc}),
                                    permutation::from_cycles(d, {{static_cast<std::uint32_t>(n),
                                                                  static_cast<std::uint32_t>(n + 1)}})},
                                   d)
        .table;
}

/// Table of a permutation group given by a BSGS (enumerated; small groups only).
inline group_table table_of(const bsgs& g, std::size_t cap = default_enumeration_cap) {
    return permutation_group_table(g.generators(), g.degree(), cap).table;
}

// ---- evidence ladder

enum class evidence_level { none, order_match, fingerprint_match, presentation_witness, explicit_isomorphism };

inline const char* to_string(evidence_level l) {
    switch (l) {
    case evidence_level::none: return "None";
    case evidence_level::order_match: return "OrderMatch";
    case evidence_level::fingerprint_match: return "FingerprintMatch";
    case evidence_level::presentation_witness: return "PresentationWitness";
    case evidence_level::explicit_isomorphism: return "ExplicitIsomorphism";
    }
    return "None";
}

struct iso_evidence_result {
    evidence_level level = evidence_level::none;
    std::string detail;
    std::vector<elem_id> witness;  // presentation witness tuple, when found
};

/// Climbs the ladder up to `requested`: orders, fingerprints against a
/// reference table, Coxeter presentation witness (when a presentation is
/// given), explicit isomorphism (|G| <= 256).
inline iso_evidence_result iso_evidence(const group_table& g, const group_table* reference,
                                        const coxeter_presentation* pres, std::size_t target_order,
                                        evidence_level requested) {
    iso_evidence_result r;
    if (g.order() != target_order) {
        r.detail = "order " + std::to_string(g.order()) + " != " + std::to_string(target_order);
        return r;
    }
    r.level = evidence_level::order_match;
    r.detail = "order " + std::to_string(g.order());
    if (requested <= evidence_level::order_match) return r;
    if (reference) {
        auto fg = fingerprint_of(g), fr = fingerprint_of(*reference);
        if (!(fg == fr)) {
            r.detail += "; fingerprint differs: " + fg.to_string() + " vs " + fr.to_string();
            return r;
        }
        r.level = evidence_level::fingerprint_match;
        r.detail += "; fingerprint " + fg.to_string();
        if (requested <= evidence_level::fingerprint_match) return r;
    }
    if (pres) {
        auto w = table_presentation_witness(g, *pres, target_order);
        if (!w) {
            r.detail += "; no presentation witness";
            return r;
        }
        r.level = evidence_level::presentation_witness;
        r.witness = w->tuple;
        r.detail += "; presentation witness after " + std::to_string(w->nodes) + " nodes";
        if (requested <= evidence_level::presentation_witness) return r;
    }
    if (reference && g.order() <= 256 && requested >= evidence_level::explicit_isomorphism) {
        auto iso = find_isomorphism(g, *reference);
        if (iso && is_isomorphism(g, *reference, *iso)) {
            r.level = evidence_level::explicit_isomorphism;
            r.detail += "; explicit isomorphism";
        }
    }
    return r;
}

}  // namespace qrg
