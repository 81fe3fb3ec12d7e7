#pragma once

// Fully enumerated finite groups.
//
// A group_table stores, for every element id and generator k, the id of the
// right product e * g_k, together with a breadth-first spanning tree. Any
// product a * b is evaluated by walking b's tree word from a; groups small
// enough also carry a full Cayley table. Element ids are assigned in BFS
// order, so identical generator lists always yield identical numbering.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "qrg/errors.hpp"

namespace qrg {

using elem_id = std::uint32_t;
inline constexpr elem_id no_elem = 0xFFFFFFFFu;

inline constexpr std::size_t default_enumeration_cap = 2'000'000;
inline constexpr std::size_t cayley_table_limit = 2048;

class group_table {
public:
    group_table() = default;

    std::size_t order() const { return parent_.size(); }
    static constexpr elem_id identity() { return 0; }
    std::size_t generator_count() const { return gens_.size(); }
    elem_id generator(std::size_t k) const { return gens_[k]; }
    const std::vector<elem_id>& generators() const { return gens_; }
    bool has_cayley() const { return !cayley_.empty(); }

    elem_id right_gen(elem_id a, std::size_t k) const { return right_[k][a]; }
    const std::vector<elem_id>& right_column(std::size_t k) const { return right_[k]; }

    elem_id mul(elem_id a, elem_id b) const {
        if (!cayley_.empty()) return cayley_[static_cast<std::size_t>(a) * order() + b];
        return apply_word(a, b);
    }

    elem_id inv(elem_id a) const { return inverse_[a]; }

    elem_id pow(elem_id a, long long k) const {
        if (k < 0) return pow(inv(a), -k);
        elem_id r = identity();
        elem_id base = a;
        while (k > 0) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    /// [a,b] = a b a^-1 b^-1.
    elem_id commutator(elem_id a, elem_id b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    /// g h g^-1.
    elem_id conjugate(elem_id g, elem_id h) const { return mul(mul(g, h), inv(g)); }
    bool commute(elem_id a, elem_id b) const { return mul(a, b) == mul(b, a); }

    std::size_t element_order(elem_id a) const {
        if (a == identity()) return 1;
        std::vector<std::uint16_t> w = word(a);
        elem_id x = a;
        std::size_t n = 1;
        while (x != identity()) {
            for (auto k : w) x = right_[k][x];
            ++n;
            if (n > order()) throw error("group_table: element order exceeds group order");
        }
        return n;
    }

    /// Generator indices k0, k1, ... with a = g_k0 * g_k1 * ...
    std::vector<std::uint16_t> word(elem_id a) const {
        std::vector<std::uint16_t> w;
        while (a != identity()) {
            w.push_back(parent_gen_[a]);
            a = parent_[a];
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

    std::size_t depth(elem_id a) const { return depth_[a]; }

    /// Builds a table from right-multiplication data; ids must be in BFS order
    /// from the identity (parent[e] < e). `right[k][e]` = e * g_k.
    static group_table from_bfs(std::vector<std::vector<elem_id>> right, std::vector<elem_id> parent,
                                std::vector<std::uint16_t> parent_gen) {
        group_table t;
        t.right_ = std::move(right);
        t.parent_ = std::move(parent);
        t.parent_gen_ = std::move(parent_gen);
        t.finalize();
        return t;
    }

private:
    elem_id apply_word(elem_id a, elem_id b) const {
        thread_local std::vector<std::uint16_t> stack;
        stack.clear();
        while (b != identity()) {
            stack.push_back(parent_gen_[b]);
            b = parent_[b];
        }
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) a = right_[*it][a];
        return a;
    }

    void finalize() {
        const std::size_t n = order();
        const std::size_t ng = right_.size();
        depth_.assign(n, 0);
        for (elem_id e = 1; e < n; ++e) depth_[e] = depth_[parent_[e]] + 1;
        gens_.resize(ng);
        std::vector<elem_id> gen_inv(ng, no_elem);
        for (std::size_t k = 0; k < ng; ++k) {
            gens_[k] = right_[k][identity()];
            for (elem_id x = 0; x < n; ++x) {
                if (right_[k][x] == identity()) {
                    gen_inv[k] = x;
                    break;
                }
            }
            if (gen_inv[k] == no_elem) throw error("group_table: generator without inverse; closure is not a group");
        }
        if (n <= cayley_table_limit) {
            cayley_.assign(n * n, 0);
            for (elem_id a = 0; a < n; ++a) {
                elem_id* row = &cayley_[static_cast<std::size_t>(a) * n];
                row[0] = a;
                for (elem_id b = 1; b < n; ++b) row[b] = right_[parent_gen_[b]][row[parent_[b]]];
            }
        }
        inverse_.assign(n, identity());
        for (elem_id e = 1; e < n; ++e) {
            // e = p * g  =>  e^-1 = g^-1 * p^-1
            inverse_[e] = mul(gen_inv[parent_gen_[e]], inverse_[parent_[e]]);
        }
        for (elem_id e = 0; e < n; ++e) {
            if (mul(e, inverse_[e]) != identity()) throw error("group_table: inverse audit failed");
        }
    }

    std::vector<std::vector<elem_id>> right_;
    std::vector<elem_id> parent_;
    std::vector<std::uint16_t> parent_gen_;
    std::vector<std::uint32_t> depth_;
    std::vector<elem_id> gens_;
    std::vector<elem_id> inverse_;
    std::vector<elem_id> cayley_;
};

/// Open-addressing index from element values to ids; values live in an
/// external vector so each element is stored once.
class element_index {
public:
    template <class E, class Eq>
    elem_id find(const E& e, std::uint64_t h, const std::vector<E>& elements, const Eq& eq) const {
        if (slots_.empty()) return no_elem;
        std::size_t mask = slots_.size() - 1;
        for (std::size_t i = h & mask;; i = (i + 1) & mask) {
            elem_id id = slots_[i];
            if (id == no_elem) return no_elem;
            if (hashes_[id] == h && eq(elements[id], e)) return id;
        }
    }

    void insert(elem_id id, std::uint64_t h) {
        if (hashes_.size() <= id) hashes_.resize(id + 1);
        hashes_[id] = h;
        if ((count_ + 1) * 2 > slots_.size()) grow();
        place(id, h);
        ++count_;
    }

    void reserve(std::size_t n) {
        std::size_t want = std::bit_ceil(std::max<std::size_t>(16, 2 * n + 2));
        if (want > slots_.size()) rehash(want);
    }

private:
    void place(elem_id id, std::uint64_t h) {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = h & mask;
        while (slots_[i] != no_elem) i = (i + 1) & mask;
        slots_[i] = id;
    }
    void grow() { rehash(std::max<std::size_t>(16, slots_.size() * 2)); }
    void rehash(std::size_t size) {
        std::vector<elem_id> old = std::move(slots_);
        slots_.assign(size, no_elem);
        for (elem_id id : old) {
            if (id != no_elem) place(id, hashes_[id]);
        }
    }

    std::vector<elem_id> slots_;
    std::vector<std::uint64_t> hashes_;
    std::size_t count_ = 0;
};

inline std::uint64_t mix_hash(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

/// A group table whose ids are backed by concrete element values.
template <class E, class Hash = std::hash<E>, class Eq = std::equal_to<E>>
struct realized_group {
    group_table table;
    std::vector<E> elements;
    element_index index;
    Hash hasher{};
    Eq equal{};

    std::size_t order() const { return table.order(); }
    elem_id find(const E& e) const { return index.find(e, mix_hash(hasher(e)), elements, equal); }
    bool contains(const E& e) const { return find(e) != no_elem; }
};

/// Breadth-first closure of `gens` under right multiplication. `mul(e, g)`
/// returns the (already canonical) product. Throws cap_exceeded when the
/// closure grows past `cap` elements.
template <class E, class Mul, class Hash = std::hash<E>, class Eq = std::equal_to<E>>
realized_group<E, Hash, Eq> enumerate_group(const E& identity, const std::vector<E>& gens, Mul mul,
                                            std::size_t cap = default_enumeration_cap, Hash hasher = {}, Eq eq = {}) {
    realized_group<E, Hash, Eq> g;
    g.hasher = hasher;
    g.equal = eq;
    const std::size_t ng = gens.size();
    std::vector<std::vector<elem_id>> right(ng);
    std::vector<elem_id> parent{0};
    std::vector<std::uint16_t> parent_gen{0};
    g.elements.push_back(identity);
    g.index.insert(0, mix_hash(hasher(identity)));
    for (std::size_t head = 0; head < g.elements.size(); ++head) {
        for (std::size_t k = 0; k < ng; ++k) {
            E prod = mul(g.elements[head], gens[k]);
            std::uint64_t h = mix_hash(hasher(prod));
            elem_id id = g.index.find(prod, h, g.elements, eq);
            if (id == no_elem) {
                if (g.elements.size() >= cap) throw cap_exceeded(cap);
                id = static_cast<elem_id>(g.elements.size());
                g.elements.push_back(std::move(prod));
                g.index.insert(id, h);
                parent.push_back(static_cast<elem_id>(head));
                parent_gen.push_back(static_cast<std::uint16_t>(k));
            }
            right[k].push_back(id);
        }
    }
    g.table = group_table::from_bfs(std::move(right), std::move(parent), std::move(parent_gen));
    return g;
}

/// Rebuilds a realized group from cached elements and right-multiplication
/// columns. The listing must be in breadth-first order from the identity;
/// `samples` products are recomputed with `mul` as a corruption audit.
/// Throws cache_corruption on any inconsistency.
template <class E, class Mul, class Hash = std::hash<E>, class Eq = std::equal_to<E>>
realized_group<E, Hash, Eq> realize_from_cache(std::vector<E> elements, std::vector<std::vector<elem_id>> right,
                                               const std::vector<E>& gens, Mul mul, std::size_t samples = 256,
                                               Hash hasher = {}, Eq eq = {}) {
    realized_group<E, Hash, Eq> g;
    g.hasher = hasher;
    g.equal = eq;
    g.elements = std::move(elements);
    const std::size_t n = g.elements.size();
    if (n == 0 || right.size() != gens.size()) throw cache_corruption("cached table shape mismatch");
    g.index.reserve(n);
    for (elem_id id = 0; id < n; ++id) {
        auto h = mix_hash(hasher(g.elements[id]));
        if (g.index.find(g.elements[id], h, g.elements, eq) != no_elem) throw cache_corruption("duplicate cached element");
        g.index.insert(id, h);
    }
    std::vector<elem_id> parent(n, no_elem);
    std::vector<std::uint16_t> parent_gen(n, 0);
    parent[0] = 0;
    std::size_t next = 1;
    for (std::size_t k = 0; k < right.size(); ++k)
        if (right[k].size() != n) throw cache_corruption("cached table column has wrong length");
    for (elem_id head = 0; head < n; ++head) {
        for (std::size_t k = 0; k < right.size(); ++k) {
            elem_id id = right[k][head];
            if (id >= n) throw cache_corruption("cached table entry out of range");
            if (parent[id] == no_elem) {
                if (id != next) throw cache_corruption("cached listing is not in breadth-first order");
                parent[id] = head;
                parent_gen[id] = static_cast<std::uint16_t>(k);
                ++next;
            }
        }
    }
    if (next != n) throw cache_corruption("cached table does not reach every element");
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<elem_id> pick(0, static_cast<elem_id>(n - 1));
    for (std::size_t s = 0; s < samples && !gens.empty(); ++s) {
        elem_id e = s == 0 ? 0 : pick(rng);
        std::size_t k = s % gens.size();
        if (!eq(mul(g.elements[e], gens[k]), g.elements[right[k][e]])) throw cache_corruption("cached product audit failed");
    }
    g.table = group_table::from_bfs(std::move(right), std::move(parent), std::move(parent_gen));
    return g;
}

/// A subgroup of a parent table, itself carried as a table.
struct subgroup {
    group_table table;
    std::vector<elem_id> to_parent;
    std::vector<elem_id> from_parent;  // no_elem for non-members

    std::size_t order() const { return table.order(); }
    bool contains(elem_id parent_id) const { return from_parent[parent_id] != no_elem; }
    /// Parent ids of this subgroup's generators.
    std::vector<elem_id> parent_generators() const {
        std::vector<elem_id> r;
        for (auto g : table.generators()) r.push_back(to_parent[g]);
        return r;
    }
};

inline subgroup generate_subgroup(const group_table& g, std::span<const elem_id> gens) {
    subgroup s;
    const std::size_t ng = gens.size();
    s.from_parent.assign(g.order(), no_elem);
    std::vector<std::vector<elem_id>> right(ng);
    std::vector<elem_id> parent{0};
    std::vector<std::uint16_t> parent_gen{0};
    s.to_parent.push_back(group_table::identity());
    s.from_parent[group_table::identity()] = 0;
    for (std::size_t head = 0; head < s.to_parent.size(); ++head) {
        for (std::size_t k = 0; k < ng; ++k) {
            elem_id p = g.mul(s.to_parent[head], gens[k]);
            elem_id id = s.from_parent[p];
            if (id == no_elem) {
                id = static_cast<elem_id>(s.to_parent.size());
                s.to_parent.push_back(p);
                s.from_parent[p] = id;
                parent.push_back(static_cast<elem_id>(head));
                parent_gen.push_back(static_cast<std::uint16_t>(k));
            }
            right[k].push_back(id);
        }
    }
    s.table = group_table::from_bfs(std::move(right), std::move(parent), std::move(parent_gen));
    return s;
}

inline subgroup generate_subgroup(const group_table& g, std::initializer_list<elem_id> gens) {
    std::vector<elem_id> v(gens);
    return generate_subgroup(g, std::span<const elem_id>(v));
}

inline subgroup whole_group(const group_table& g) {
    return generate_subgroup(g, std::span<const elem_id>(g.generators()));
}

/// Subgroup generated by a set of elements; generators are chosen greedily,
/// skipping elements already generated.
inline subgroup subgroup_from_elements(const group_table& g, std::span<const elem_id> elems) {
    std::vector<elem_id> gens;
    subgroup s = generate_subgroup(g, std::span<const elem_id>(gens));
    for (elem_id e : elems) {
        if (s.contains(e)) continue;
        gens.push_back(e);
        s = generate_subgroup(g, std::span<const elem_id>(gens));
    }
    return s;
}

/// Smallest normal subgroup containing `gens`: closure under conjugation by
/// the parent's generators.
inline subgroup normal_closure(const group_table& g, std::vector<elem_id> gens) {
    subgroup h = generate_subgroup(g, std::span<const elem_id>(gens));
    for (;;) {
        std::vector<elem_id> fresh;
        for (elem_id x : h.parent_generators()) {
            for (elem_id s : g.generators()) {
                elem_id c = g.mul(g.mul(g.inv(s), x), s);
                if (!h.contains(c) && std::find(fresh.begin(), fresh.end(), c) == fresh.end()) fresh.push_back(c);
            }
        }
        if (fresh.empty()) return h;
        for (elem_id c : fresh) {
            if (h.contains(c)) continue;
            gens.push_back(c);
            h = generate_subgroup(g, std::span<const elem_id>(gens));
        }
    }
}

/// Elements commuting with every generator.
inline subgroup center_of(const group_table& g) {
    std::vector<elem_id> central;
    for (elem_id e = 0; e < g.order(); ++e) {
        bool ok = true;
        for (std::size_t k = 0; k < g.generator_count() && ok; ++k) {
            ok = g.right_gen(e, k) == g.mul(g.generator(k), e);
        }
        if (ok) central.push_back(e);
    }
    subgroup z = subgroup_from_elements(g, central);
    if (z.order() != central.size()) throw error("center_of: central elements do not form a subgroup");
    return z;
}

/// Normal closure of the commutators of generator pairs.
inline subgroup derived_subgroup_of(const group_table& g) {
    std::vector<elem_id> comms;
    for (std::size_t i = 0; i < g.generator_count(); ++i)
        for (std::size_t j = i + 1; j < g.generator_count(); ++j) {
            elem_id c = g.commutator(g.generator(i), g.generator(j));
            if (c != group_table::identity() && std::find(comms.begin(), comms.end(), c) == comms.end()) {
                comms.push_back(c);
            }
        }
    return normal_closure(g, std::move(comms));
}

/// Normality test on generators: g^-1 n g in N for all generator pairs.
inline bool is_normal(const group_table& g, const subgroup& n) {
    for (elem_id x : n.parent_generators())
        for (elem_id s : g.generators())
            if (!n.contains(g.mul(g.mul(g.inv(s), x), s))) return false;
    return true;
}

struct quotient_group {
    group_table table;
    std::vector<elem_id> of_parent;       // parent id -> quotient id
    std::vector<elem_id> representative;  // quotient id -> least parent id in the coset

    std::size_t order() const { return table.order(); }
};

/// G/N by cosets gN; each coset is keyed by its least member id.
inline quotient_group quotient(const group_table& g, const subgroup& n) {
    if (!is_normal(g, n)) throw not_normal("quotient: subgroup is not normal");
    const std::size_t total = g.order();
    std::vector<elem_id> coset(total, no_elem);
    std::vector<elem_id> rep;
    for (elem_id e = 0; e < total; ++e) {
        if (coset[e] != no_elem) continue;
        elem_id c = static_cast<elem_id>(rep.size());
        rep.push_back(e);
        for (elem_id m : n.to_parent) {
            elem_id x = g.mul(e, m);
            if (coset[x] != no_elem && coset[x] != c) throw error("quotient: overlapping cosets");
            coset[x] = c;
        }
    }
    if (rep.size() * n.order() != total) throw error("quotient: coset count mismatch");
    // BFS over cosets using images of the parent generators
    const std::size_t ng = g.generator_count();
    std::vector<elem_id> qid(rep.size(), no_elem);
    std::vector<elem_id> order_list;
    std::vector<std::vector<elem_id>> right(ng);
    std::vector<elem_id> parent{0};
    std::vector<std::uint16_t> parent_gen{0};
    qid[coset[group_table::identity()]] = 0;
    order_list.push_back(coset[group_table::identity()]);
    for (std::size_t head = 0; head < order_list.size(); ++head) {
        elem_id r = rep[order_list[head]];
        for (std::size_t k = 0; k < ng; ++k) {
            elem_id c = coset[g.right_gen(r, k)];
            if (qid[c] == no_elem) {
                qid[c] = static_cast<elem_id>(order_list.size());
                order_list.push_back(c);
                parent.push_back(static_cast<elem_id>(head));
                parent_gen.push_back(static_cast<std::uint16_t>(k));
            }
            right[k].push_back(qid[c]);
        }
    }
    quotient_group q;
    q.table = group_table::from_bfs(std::move(right), std::move(parent), std::move(parent_gen));
    q.of_parent.resize(total);
    for (elem_id e = 0; e < total; ++e) q.of_parent[e] = qid[coset[e]];
    q.representative.resize(order_list.size());
    for (std::size_t i = 0; i < order_list.size(); ++i) q.representative[i] = rep[order_list[i]];
    return q;
}

/// Number of index-2 subgroups: 2^r - 1 with r the rank of G / (G' G^2).
inline std::size_t count_index2_normal_subgroups(const group_table& g) {
    subgroup d = derived_subgroup_of(g);
    std::vector<elem_id> gens = d.parent_generators();
    for (elem_id s : g.generators()) gens.push_back(g.mul(s, s));
    subgroup k = generate_subgroup(g, std::span<const elem_id>(gens));
    std::size_t index = g.order() / k.order();
    if (!std::has_single_bit(index)) throw error("count_index2_normal_subgroups: G/(G'G^2) is not a 2-group");
    std::size_t r = static_cast<std::size_t>(std::countr_zero(index));
    return (std::size_t{1} << r) - 1;
}

inline bool is_abelian(const group_table& g) {
    for (std::size_t i = 0; i < g.generator_count(); ++i)
        for (std::size_t j = i + 1; j < g.generator_count(); ++j)
            if (!g.commute(g.generator(i), g.generator(j))) return false;
    return true;
}

inline bool is_cyclic(const group_table& g) {
    if (!is_abelian(g)) return false;
    for (elem_id e = 0; e < g.order(); ++e)
        if (g.element_order(e) == g.order()) return true;
    return false;
}

/// True iff every product a*b and inverse lands back in the table and the
/// group axioms hold on the sampled pairs.
template <class Rng>
bool closure_audit(const group_table& g, std::size_t samples, Rng& rng) {
    std::uniform_int_distribution<elem_id> pick(0, static_cast<elem_id>(g.order() - 1));
    for (std::size_t s = 0; s < samples; ++s) {
        elem_id a = pick(rng), b = pick(rng), c = pick(rng);
        elem_id ab = g.mul(a, b);
        if (ab >= g.order() || g.inv(a) >= g.order()) return false;
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
        if (g.mul(a, g.inv(a)) != group_table::identity()) return false;
    }
    return true;
}

}  // namespace qrg
