#pragma once

// Root systems, Cartan matrices, Weyl groups as root permutations, Coxeter
// presentations and presentation witnesses.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qrg/errors.hpp"
#include "qrg/exactnum.hpp"
#include "qrg/group_table.hpp"
#include "qrg/perm.hpp"

namespace qrg {

using rvec = std::vector<rational>;
using int_matrix = std::vector<std::vector<long long>>;

struct coxeter_type {
    char family = 'A';  // A B D E F G H I
    int rank = 1;
    int m = 0;  // only for I2(m)

    bool operator==(const coxeter_type&) const = default;

    std::string name() const {
        if (family == 'I') return "I2(" + std::to_string(m) + ")";
        return std::string(1, family) + std::to_string(rank);
    }
};

/// Accepts A2, A(2), B3, D5, E6, E7, E8, F4, G2, H3, H4, I2(4).
inline coxeter_type parse_coxeter_type(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (s.empty()) throw unsupported_type("empty coxeter type");
    coxeter_type t;
    t.family = s[0];
    std::string rest = s.substr(1);
    auto number = [&](const std::string& v) {
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw unsupported_type("bad coxeter type '" + std::string(text) + "'");
        return std::stoi(v);
    };
    if (t.family == 'I') {
        if (rest.size() < 4 || rest.substr(0, 2) != "2(" || rest.back() != ')')
            throw unsupported_type("dihedral type must be written I2(m)");
        t.rank = 2;
        t.m = number(rest.substr(2, rest.size() - 3));
        if (t.m < 2) throw unsupported_type("I2(m) needs m >= 2");
        return t;
    }
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    t.rank = number(rest);
    switch (t.family) {
    case 'A':
        if (t.rank >= 1) return t;
        break;
    case 'B':
        if (t.rank >= 2) return t;
        break;
    case 'D':
        if (t.rank >= 3) return t;
        break;
    case 'E':
        if (t.rank >= 6 && t.rank <= 8) return t;
        break;
    case 'F':
        if (t.rank == 4) return t;
        break;
    case 'G':
        if (t.rank == 2) return t;
        break;
    case 'H':
        if (t.rank == 3 || t.rank == 4) return t;
        break;
    default: break;
    }
    throw unsupported_type("unknown coxeter type '" + std::string(text) + "'");
}

inline rational dot(const rvec& a, const rvec& b) {
    rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

namespace detail {

inline rvec unit(std::size_t dim, std::size_t i, long long v = 1) {
    rvec r(dim);
    r[i] = rational(v);
    return r;
}
inline rvec add(const rvec& a, const rvec& b, const rational& s = rational(1)) {
    rvec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i] * s;
    return r;
}

}  // namespace detail

inline std::vector<rvec> simple_root_basis(const coxeter_type& t) {
    using detail::add;
    using detail::unit;
    std::vector<rvec> s;
    const int n = t.rank;
    switch (t.family) {
    case 'A':
        for (int i = 0; i < n; ++i) s.push_back(add(unit(n + 1, i), unit(n + 1, i + 1), -1));
        return s;
    case 'B':
        for (int i = 0; i + 1 < n; ++i) s.push_back(add(unit(n, i), unit(n, i + 1), -1));
        s.push_back(unit(n, n - 1));
        return s;
    case 'D':
        for (int i = 0; i + 1 < n; ++i) s.push_back(add(unit(n, i), unit(n, i + 1), -1));
        s.push_back(add(unit(n, n - 2), unit(n, n - 1)));
        return s;
    case 'E': {
        // Bourbaki numbering inside the E8 lattice; E6, E7 take the first roots.
        rvec a1(8, rational(-1, 2));
        a1[0] = rational(1, 2);
        a1[7] = rational(1, 2);
        s.push_back(a1);
        s.push_back(add(unit(8, 0), unit(8, 1)));
        for (int i = 0; i < 6; ++i) s.push_back(add(unit(8, i + 1), unit(8, i), -1));
        s.resize(static_cast<std::size_t>(n));
        return s;
    }
    case 'F':
        s.push_back(add(unit(4, 1), unit(4, 2), -1));
        s.push_back(add(unit(4, 2), unit(4, 3), -1));
        s.push_back(unit(4, 3));
        s.push_back({rational(1, 2), rational(-1, 2), rational(-1, 2), rational(-1, 2)});
        return s;
    case 'G':
        s.push_back({rational(1), rational(-1), rational(0)});
        s.push_back({rational(-2), rational(1), rational(1)});
        return s;
    default: throw unsupported_type("no rational simple roots for type " + t.name());
    }
}

/// x - 2 (x, a) / (a, a) a
inline rvec reflect(const rvec& x, const rvec& a) {
    rational c = rational(2) * dot(x, a) / dot(a, a);
    if (c.is_zero()) return x;
    return detail::add(x, a, -c);
}

struct root_system {
    std::vector<rvec> simple;
    std::vector<rvec> roots;  // simple roots first, then closure in BFS order
    std::vector<rvec> coroots;
    std::map<rvec, std::size_t> index;

    std::size_t find(const rvec& v) const {
        auto it = index.find(v);
        return it == index.end() ? roots.size() : it->second;
    }
};

inline root_system generate_root_system(const std::vector<rvec>& simple, std::size_t cap = 100000) {
    root_system rs;
    rs.simple = simple;
    auto push = [&](const rvec& v) {
        if (rs.index.count(v)) return;
        if (rs.roots.size() >= cap) throw non_terminating("root closure exceeded " + std::to_string(cap) + " vectors");
        rs.index.emplace(v, rs.roots.size());
        rs.roots.push_back(v);
    };
    for (const auto& a : simple) push(a);
    for (std::size_t head = 0; head < rs.roots.size(); ++head)
        for (const auto& a : simple) push(reflect(rs.roots[head], a));
    for (const auto& r : rs.roots) {
        rational c = rational(2) / dot(r, r);
        rvec co = r;
        for (auto& v : co) v *= c;
        rs.coroots.push_back(std::move(co));
    }
    return rs;
}

inline root_system generate_root_system(const coxeter_type& t) { return generate_root_system(simple_root_basis(t)); }

/// C[i][j] = 2 (a_i, a_j) / (a_i, a_i).
inline int_matrix cartan_matrix_of(const std::vector<rvec>& simple) {
    const std::size_t r = simple.size();
    int_matrix c(r, std::vector<long long>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            rational v = rational(2) * dot(simple[i], simple[j]) / dot(simple[i], simple[i]);
            if (v.denominator() != big_int(1))
                throw not_crystallographic("non-integral Cartan integer");
            c[i][j] = static_cast<long long>(v.numerator());
        }
    return c;
}

inline int_matrix cartan_matrix_of(const coxeter_type& t) {
    if (t.family == 'I') {
        // crystallographic dihedral cases only
        if (t.m == 3) return cartan_matrix_of(coxeter_type{'A', 2});
        if (t.m == 4) return cartan_matrix_of(coxeter_type{'B', 2});
        if (t.m == 6) return cartan_matrix_of(coxeter_type{'G', 2});
        if (t.m == 2) return {{2, 0}, {0, 2}};
        throw not_crystallographic(t.name() + " is not crystallographic");
    }
    if (t.family == 'H') throw not_crystallographic(t.name() + " is not crystallographic");
    return cartan_matrix_of(simple_root_basis(t));
}

namespace detail {

using rmatrix = std::vector<std::vector<rational>>;

inline rmatrix to_rational(const int_matrix& m) {
    rmatrix r(m.size(), std::vector<rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = rational(m[i][j]);
    return r;
}

// Gauss-Jordan: returns (det, inverse).
inline std::pair<rational, rmatrix> det_and_inverse(rmatrix a) {
    const std::size_t n = a.size();
    rmatrix inv(n, std::vector<rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = rational(1);
    rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col].is_zero()) ++p;
        if (p == n) return {rational(0), {}};
        if (p != col) {
            std::swap(a[p], a[col]);
            std::swap(inv[p], inv[col]);
            det = -det;
        }
        det *= a[col][col];
        rational f = rational(1) / a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] *= f;
            inv[col][k] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            rational g = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= g * a[col][k];
                inv[r][k] -= g * inv[col][k];
            }
        }
    }
    return {det, inv};
}

}  // namespace detail

inline rational determinant(const int_matrix& m) { return detail::det_and_inverse(detail::to_rational(m)).first; }

/// det(C) * C^-1 for the Cartan matrix C of the type.
inline int_matrix weight_lattice_matrix(const coxeter_type& t) {
    int_matrix c = cartan_matrix_of(t);
    auto [det, inv] = detail::det_and_inverse(detail::to_rational(c));
    if (det.is_zero()) throw non_integral_result("singular Cartan matrix");
    int_matrix r(c.size(), std::vector<long long>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
            rational v = inv[i][j] * det;
            if (v.denominator() != big_int(1)) throw non_integral_result("weight lattice entry is not an integer");
            r[i][j] = static_cast<long long>(v.numerator());
        }
    return r;
}

inline big_int coxeter_group_order(const coxeter_type& t) {
    auto fact = [](int n) {
        big_int r = 1;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    const int n = t.rank;
    switch (t.family) {
    case 'A': return fact(n + 1);
    case 'B': return (big_int(1) << n) * fact(n);
    case 'D': return (big_int(1) << (n - 1)) * fact(n);
    case 'I': return big_int(2 * t.m);
    case 'E':
        if (n == 6) return big_int(51840);
        if (n == 7) return big_int(2903040);
        return big_int(696729600);
    case 'F': return big_int(1152);
    case 'G': return big_int(12);
    case 'H': return big_int(n == 3 ? 120 : 14400);
    default: throw unsupported_type("unknown coxeter family");
    }
}

/// Coxeter matrix: m[i][i] = 1, m[i][j] = order of s_i s_j.
struct coxeter_presentation {
    std::size_t rank = 0;
    int_matrix m;
};

inline coxeter_presentation presentation_from_cartan(const int_matrix& c) {
    coxeter_presentation p;
    p.rank = c.size();
    p.m.assign(p.rank, std::vector<long long>(p.rank, 1));
    for (std::size_t i = 0; i < p.rank; ++i)
        for (std::size_t j = 0; j < p.rank; ++j) {
            if (i == j) continue;
            long long prod = c[i][j] * c[j][i];
            static const long long table[] = {2, 3, 4, 6};
            if (prod < 0 || prod > 3) throw not_crystallographic("Cartan product outside 0..3");
            p.m[i][j] = table[prod];
        }
    return p;
}

inline coxeter_presentation coxeter_presentation_of(const coxeter_type& t) {
    if (t.family == 'I') return {2, {{1, t.m}, {t.m, 1}}};
    if (t.family == 'H') {
        coxeter_presentation p{static_cast<std::size_t>(t.rank), {}};
        p.m.assign(p.rank, std::vector<long long>(p.rank, 2));
        for (std::size_t i = 0; i < p.rank; ++i) p.m[i][i] = 1;
        p.m[0][1] = p.m[1][0] = 5;
        for (std::size_t i = 1; i + 1 < p.rank; ++i) p.m[i][i + 1] = p.m[i + 1][i] = 3;
        return p;
    }
    return presentation_from_cartan(cartan_matrix_of(t));
}

/// Presentation built from involutions and a list of braid pairs (m = 3);
/// all other pairs commute unless `extra` overrides them.
inline coxeter_presentation presentation_from_edges(std::size_t rank,
                                                    const std::vector<std::pair<std::size_t, std::size_t>>& braid,
                                                    const std::vector<std::tuple<std::size_t, std::size_t, long long>>& extra = {}) {
    coxeter_presentation p{rank, int_matrix(rank, std::vector<long long>(rank, 2))};
    for (std::size_t i = 0; i < rank; ++i) p.m[i][i] = 1;
    for (auto [a, b] : braid) p.m[a][b] = p.m[b][a] = 3;
    for (auto [a, b, v] : extra) p.m[a][b] = p.m[b][a] = v;
    return p;
}

/// Simple reflections acting on the root list.
inline std::vector<permutation> simple_reflection_permutations(const root_system& rs) {
    std::vector<permutation> gens;
    for (const auto& a : rs.simple) {
        std::vector<std::uint32_t> img(rs.roots.size());
        for (std::size_t i = 0; i < rs.roots.size(); ++i) {
            std::size_t j = rs.find(reflect(rs.roots[i], a));
            if (j == rs.roots.size()) throw error("root system not closed under a simple reflection");
            img[i] = static_cast<std::uint32_t>(j);
        }
        gens.emplace_back(std::move(img));
    }
    return gens;
}

inline bsgs weyl_permutation_group(const root_system& rs) {
    return schreier_sims(simple_reflection_permutations(rs), rs.roots.size());
}

/// Order of a permutation (lcm of cycle lengths).
inline std::size_t perm_order(const permutation& p) {
    std::vector<bool> seen(p.degree());
    std::size_t l = 1;
    for (std::size_t i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        l = std::lcm(l, len);
    }
    return l;
}

/// Every relation (t_i t_j)^m_ij = 1 holds with exact orders.
inline bool coxeter_relations_hold(const std::vector<permutation>& t, const coxeter_presentation& p) {
    if (t.size() != p.rank) return false;
    for (std::size_t i = 0; i < p.rank; ++i)
        for (std::size_t j = i; j < p.rank; ++j) {
            auto prod = i == j ? t[i] : t[i] * t[j];
            if (static_cast<long long>(perm_order(prod)) != p.m[i][j] * (i == j ? 2 : 1)) return false;
        }
    return true;
}

inline bool coxeter_relations_hold(const group_table& g, const std::vector<elem_id>& t, const coxeter_presentation& p) {
    if (t.size() != p.rank) return false;
    for (std::size_t i = 0; i < p.rank; ++i)
        for (std::size_t j = i; j < p.rank; ++j) {
            std::size_t want = static_cast<std::size_t>(i == j ? 2 : p.m[i][j]);
            if (g.element_order(i == j ? t[i] : g.mul(t[i], t[j])) != want) return false;
        }
    return true;
}

/// Vertex bijection pi with a.m[i][j] = b.m[pi i][pi j]; lexicographically
/// first, or nullopt.
inline std::optional<std::vector<std::size_t>> match_diagrams(const coxeter_presentation& a,
                                                              const coxeter_presentation& b) {
    if (a.rank != b.rank) return std::nullopt;
    const std::size_t r = a.rank;
    std::vector<std::size_t> pi(r);
    std::vector<bool> used(r);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == r) return true;
        for (std::size_t c = 0; c < r; ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = a.m[i][j] == b.m[c][pi[j]];
            if (!ok) continue;
            pi[i] = c;
            used[c] = true;
            if (go(i + 1)) return true;
            used[c] = false;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return pi;
}

struct perm_witness {
    std::vector<std::size_t> matching;  // presentation generator i -> simple reflection matching[i]
    std::vector<permutation> tuple;
};

/// Witness in a realized Weyl group: match the presentation's diagram to the
/// root system's and take simple reflections; verified against all relations
/// and the group order.
inline std::optional<perm_witness> weyl_presentation_witness(const root_system& rs, const coxeter_presentation& pres,
                                                             const big_int& expected_order) {
    auto own = presentation_from_cartan(cartan_matrix_of(rs.simple));
    auto pi = match_diagrams(pres, own);
    if (!pi) return std::nullopt;
    auto refl = simple_reflection_permutations(rs);
    perm_witness w;
    w.matching = *pi;
    for (std::size_t i = 0; i < pres.rank; ++i) w.tuple.push_back(refl[(*pi)[i]]);
    if (!coxeter_relations_hold(w.tuple, pres)) return std::nullopt;
    if (schreier_sims(w.tuple, rs.roots.size()).order() != expected_order) return std::nullopt;
    return w;
}

struct table_witness {
    std::vector<elem_id> tuple;
    std::size_t nodes = 0;
};

/// Backtracking search for involutions t_1..t_r with ord(t_i t_j) = m_ij that
/// generate G, with |G| equal to `expected_order`. Candidates are scanned in
/// id order; nullopt when none exists or the node budget runs out (`exhausted`
/// distinguishes the two).
inline std::optional<table_witness> table_presentation_witness(const group_table& g, const coxeter_presentation& pres,
                                                               std::size_t expected_order,
                                                               std::size_t node_budget = 50'000'000,
                                                               bool* exhausted = nullptr) {
    if (exhausted) *exhausted = false;
    if (g.order() != expected_order) return std::nullopt;
    std::vector<elem_id> involutions;
    for (elem_id e = 1; e < g.order(); ++e)
        if (g.element_order(e) == 2) involutions.push_back(e);
    const std::size_t r = pres.rank;
    std::vector<elem_id> t(r);
    table_witness w;
    bool out_of_budget = false;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == r) return generate_subgroup(g, std::span<const elem_id>(t)).order() == g.order();
        for (elem_id c : involutions) {
            if (++w.nodes > node_budget) {
                out_of_budget = true;
                return false;
            }
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                if (t[j] == c) ok = false;
                else ok = g.element_order(g.mul(t[j], c)) == static_cast<std::size_t>(pres.m[j][i]);
            }
            if (!ok) continue;
            t[i] = c;
            if (go(i + 1)) return true;
            if (out_of_budget) return false;
        }
        return false;
    };
    bool found = go(0);
    if (exhausted) *exhausted = out_of_budget;
    if (!found) return std::nullopt;
    w.tuple = t;
    if (!coxeter_relations_hold(g, w.tuple, pres)) return std::nullopt;
    return w;
}

// ---- dihedral groups in rotation/flip normal form

struct dihedral_element {
    int rot = 0;
    int flip = 0;
    bool operator==(const dihedral_element&) const = default;
};

struct dihedral_hash {
    std::size_t operator()(const dihedral_element& e) const { return static_cast<std::size_t>(e.rot) * 2 + e.flip; }
};

using dihedral_group_t = realized_group<dihedral_element, dihedral_hash>;

/// Dih_m = <s1, s2 | s1^2 = s2^2 = (s1 s2)^m = 1>, order 2m, with s1 the flip
/// and s2 rotation * flip.
inline dihedral_group_t dihedral_group(int m) {
    if (m < 2) throw invalid_spec("dihedral group needs m >= 2");
    auto mul = [m](const dihedral_element& a, const dihedral_element& b) {
        int r = a.flip ? a.rot - b.rot : a.rot + b.rot;
        return dihedral_element{((r % m) + m) % m, a.flip ^ b.flip};
    };
    return enumerate_group(dihedral_element{}, {dihedral_element{0, 1}, dihedral_element{1, 1}}, mul,
                           default_enumeration_cap, dihedral_hash{});
}

}  // namespace qrg
