#pragma once

// Commutation geometry of two-qubit Pauli observables: GQ(2,2), its
// hyperplanes, the Mermin square, and groups generated by point subsets.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrg/autgrp.hpp"
#include "qrg/errors.hpp"
#include "qrg/matrix_group.hpp"
#include "qrg/pauli.hpp"

namespace qrg {

struct incidence_geometry {
    std::vector<pauli_element> points;
    std::vector<std::vector<std::size_t>> lines;

    bool incident(std::size_t p, std::size_t l) const {
        return std::find(lines[l].begin(), lines[l].end(), p) != lines[l].end();
    }
    bool collinear(std::size_t a, std::size_t b) const {
        for (const auto& l : lines)
            if (std::find(l.begin(), l.end(), a) != l.end() && std::find(l.begin(), l.end(), b) != l.end()) return true;
        return false;
    }
};

/// Points are the 15 Hermitian representatives sigma_i (x) sigma_j, ordered by
/// (x, z); lines are the maximal pairwise-commuting triples.
inline incidence_geometry two_qubit_geometry() {
    incidence_geometry g;
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t z = 0; z < 4; ++z)
            if (x || z) g.points.push_back(hermitian_pauli(2, x, z));
    const std::size_t n = g.points.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                if (!pauli_commutes(g.points[a], g.points[b]) || !pauli_commutes(g.points[a], g.points[c]) ||
                    !pauli_commutes(g.points[b], g.points[c]))
                    continue;
                // no fourth point commutes with all three (maximality)
                bool maximal = true;
                for (std::size_t d = 0; d < n && maximal; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (pauli_commutes(g.points[d], g.points[a]) && pauli_commutes(g.points[d], g.points[b]) &&
                        pauli_commutes(g.points[d], g.points[c]))
                        maximal = false;
                }
                if (maximal) g.lines.push_back({a, b, c});
            }
    return g;
}

inline std::size_t point_index(const incidence_geometry& g, std::string_view letters) {
    pauli_element p = pauli_from_letters(letters);
    for (std::size_t i = 0; i < g.points.size(); ++i)
        if (g.points[i].x == p.x && g.points[i].z == p.z) return i;
    throw error("no point " + std::string(letters));
}

struct gq_axiom_report {
    bool line_size = false;     // every line has s + 1 points
    bool point_degree = false;  // every point on t + 1 lines
    bool near_linear = false;   // two points share at most one line
    bool antiflag = false;      // a point off a line is collinear with exactly one of its points
    bool all() const { return line_size && point_degree && near_linear && antiflag; }
};

inline gq_axiom_report check_gq_axioms(const incidence_geometry& g, std::size_t s, std::size_t t) {
    gq_axiom_report r;
    r.line_size = std::all_of(g.lines.begin(), g.lines.end(), [&](const auto& l) { return l.size() == s + 1; });
    r.point_degree = true;
    for (std::size_t p = 0; p < g.points.size(); ++p) {
        std::size_t deg = 0;
        for (std::size_t l = 0; l < g.lines.size(); ++l) deg += g.incident(p, l);
        if (deg != t + 1) r.point_degree = false;
    }
    r.near_linear = true;
    for (std::size_t a = 0; a < g.points.size(); ++a)
        for (std::size_t b = a + 1; b < g.points.size(); ++b) {
            std::size_t shared = 0;
            for (std::size_t l = 0; l < g.lines.size(); ++l) shared += g.incident(a, l) && g.incident(b, l);
            if (shared > 1) r.near_linear = false;
        }
    r.antiflag = true;
    for (std::size_t p = 0; p < g.points.size(); ++p)
        for (std::size_t l = 0; l < g.lines.size(); ++l) {
            if (g.incident(p, l)) continue;
            // lines through p that meet l
            std::size_t meeting = 0;
            for (std::size_t m = 0; m < g.lines.size(); ++m) {
                if (m == l || !g.incident(p, m)) continue;
                bool meets = false;
                for (auto q : g.lines[m])
                    if (g.incident(q, l)) meets = true;
                meeting += meets;
            }
            if (meeting != 1) r.antiflag = false;
        }
    return r;
}

enum class hyperplane_kind { perp_set, grid, ovoid, other };

inline const char* to_string(hyperplane_kind k) {
    switch (k) {
    case hyperplane_kind::perp_set: return "perp-set";
    case hyperplane_kind::grid: return "grid";
    case hyperplane_kind::ovoid: return "ovoid";
    default: return "other";
    }
}

struct hyperplane {
    hyperplane_kind kind = hyperplane_kind::other;
    std::uint32_t mask = 0;
    std::vector<std::size_t> points;
    std::vector<std::size_t> internal_lines;
    std::optional<std::size_t> center;  // perp-sets only
};

/// Every proper, nonempty point set that each line meets in exactly one
/// point or is contained in, by exhaustive scan of all subsets.
inline std::vector<hyperplane> enumerate_hyperplanes(const incidence_geometry& g) {
    const std::size_t n = g.points.size();
    if (n > 24) throw too_many_points("hyperplane scan supports at most 24 points");
    std::vector<std::uint32_t> line_masks;
    for (const auto& l : g.lines) {
        std::uint32_t m = 0;
        for (auto p : l) m |= 1u << p;
        line_masks.push_back(m);
    }
    std::vector<hyperplane> out;
    const std::uint32_t full = (n == 32) ? 0xFFFFFFFFu : ((1u << n) - 1);
    for (std::uint32_t s = 1; s < full; ++s) {
        bool ok = true;
        for (std::size_t l = 0; l < line_masks.size() && ok; ++l) {
            int k = std::popcount(s & line_masks[l]);
            ok = k == 1 || (s & line_masks[l]) == line_masks[l];
        }
        if (!ok) continue;
        hyperplane h;
        h.mask = s;
        for (std::size_t p = 0; p < n; ++p)
            if (s >> p & 1) h.points.push_back(p);
        for (std::size_t l = 0; l < line_masks.size(); ++l)
            if ((s & line_masks[l]) == line_masks[l]) h.internal_lines.push_back(l);
        if (h.points.size() == 7 && h.internal_lines.size() == 3) {
            // perp-set: the three internal lines share one centre
            for (auto c : h.points) {
                bool on_all = true;
                for (auto l : h.internal_lines) on_all = on_all && g.incident(c, l);
                if (on_all) h.center = c;
            }
            if (h.center) h.kind = hyperplane_kind::perp_set;
        } else if (h.points.size() == 9 && h.internal_lines.size() == 6) {
            h.kind = hyperplane_kind::grid;
        } else if (h.points.size() == 5 && h.internal_lines.empty()) {
            h.kind = hyperplane_kind::ovoid;
        }
        out.push_back(std::move(h));
    }
    return out;
}

struct mermin_signs {
    std::array<std::array<std::size_t, 3>, 2> classes{};  // line indices of each parallel class
    std::array<std::array<int, 3>, 2> signs{};
    int product = 1;
    bool entangled = false;  // all nine points have both factors non-identity
};

/// Sign of the product of a line's three observables (+1 for I, -1 for -I).
inline int line_sign(const incidence_geometry& g, const std::vector<std::size_t>& line) {
    pauli_element p = pauli_element::identity(g.points.front().n);
    for (auto i : line) p = p * g.points[i];
    if (p.x || p.z || p.phase % 2) throw error("line product is not +-I");
    return p.phase == 0 ? 1 : -1;
}

/// Splits the grid's six internal lines into its two parallel classes; the
/// class with more negative products is listed first.
inline mermin_signs mermin_square_signs(const incidence_geometry& g, const hyperplane& grid) {
    if (grid.kind != hyperplane_kind::grid || grid.internal_lines.size() != 6) throw not_a_grid("hyperplane is not a grid");
    const auto& ls = grid.internal_lines;
    auto disjoint = [&](std::size_t a, std::size_t b) {
        for (auto p : g.lines[a])
            if (g.incident(p, b)) return false;
        return true;
    };
    std::vector<std::size_t> first{ls[0]}, second;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        if (disjoint(ls[0], ls[i])) first.push_back(ls[i]);
        else second.push_back(ls[i]);
    }
    if (first.size() != 3 || second.size() != 3) throw not_a_grid("internal lines do not split into parallel classes");
    mermin_signs m;
    std::array<std::vector<std::size_t>, 2> cls{first, second};
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 3; ++i) {
            m.classes[c][i] = cls[c][i];
            m.signs[c][i] = line_sign(g, g.lines[cls[c][i]]);
        }
    auto negatives = [](const std::array<int, 3>& s) { return std::count(s.begin(), s.end(), -1); };
    if (negatives(m.signs[1]) > negatives(m.signs[0])) {
        std::swap(m.classes[0], m.classes[1]);
        std::swap(m.signs[0], m.signs[1]);
    }
    for (const auto& c : m.signs)
        for (int s : c) m.product *= s;
    m.entangled = std::all_of(grid.points.begin(), grid.points.end(), [&](std::size_t p) {
        const auto& e = g.points[p];
        return ((e.x | e.z) & 2) && ((e.x | e.z) & 1);
    });
    return m;
}

/// Matrix groups g_k = <m_1, ..., m_k> for k = 2..up_to over Hermitian
/// representatives of pairwise anticommuting Paulis.
inline std::vector<matrix_group> independent_set_chain(const std::vector<pauli_element>& points, std::size_t up_to) {
    if (up_to > points.size()) throw not_independent("chain length exceeds the point set");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (pauli_commutes(points[i], points[j])) throw not_independent("points " + std::to_string(i) + " and " +
                                                                            std::to_string(j) + " commute");
    std::vector<matrix_group> chain;
    std::vector<exact_matrix> gens;
    for (std::size_t k = 0; k < up_to; ++k) {
        const auto& p = points[k];
        gens.push_back(pauli_to_matrix(hermitian_pauli(p.n, p.x, p.z)));
        if (k >= 1) chain.push_back(enumerate_matrix_group(gens, group_mode::full));
    }
    return chain;
}

struct structure_report {
    std::size_t order = 0;
    std::size_t exponent = 0;
    std::size_t center = 0;
    std::size_t aut = 0, inn = 0, out = 0;
    group_fingerprint fingerprint;
};

inline structure_report analyze_group(const group_table& t) {
    structure_report r;
    r.fingerprint = fingerprint_of(t);
    r.order = t.order();
    r.exponent = r.fingerprint.exponent;
    r.center = r.fingerprint.center;
    auto io = inn_outer_orders(t, automorphism_count(t));
    r.aut = io.aut;
    r.inn = io.inn;
    r.out = io.out;
    return r;
}

/// Structure of the matrix group generated by a subset of geometry points.
inline structure_report sub_geometry_group_analysis(const incidence_geometry& g, const std::vector<std::size_t>& subset) {
    std::vector<exact_matrix> gens;
    for (auto i : subset) gens.push_back(pauli_to_matrix(g.points[i]));
    return analyze_group(enumerate_matrix_group(gens, group_mode::full).table);
}

/// Edge list of the collinearity graph.
inline std::vector<std::pair<std::size_t, std::size_t>> collinearity_edges(const incidence_geometry& g) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < g.points.size(); ++a)
        for (std::size_t b = a + 1; b < g.points.size(); ++b)
            if (g.collinear(a, b)) e.emplace_back(a, b);
    return e;
}

}  // namespace qrg
