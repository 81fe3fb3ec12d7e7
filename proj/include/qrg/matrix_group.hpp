#pragma once

// Finite groups of exact unitary matrices, enumerated by BFS closure.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qrg/group_table.hpp"
#include "qrg/matrix.hpp"

namespace qrg {

enum class group_mode { full, projective };

inline const char* to_string(group_mode m) { return m == group_mode::full ? "full" : "projective"; }

/// Representative of the class {zeta^k M}: the multiple whose first nonzero
/// row-major entry has the lexicographically greatest coefficient vector.
inline exact_matrix projective_canonical(const exact_matrix& m) {
    const auto& e = m.entries();
    std::size_t f = 0;
    while (f < e.size() && e[f].is_zero()) ++f;
    if (f == e.size()) return m;
    int best = 0;
    cyc8 best_val = e[f];
    for (int k = 1; k < 8; ++k) {
        cyc8 v = e[f].times_zeta_pow(k);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    return best == 0 ? m : m.times_zeta_pow(best);
}

using matrix_group = realized_group<exact_matrix>;

namespace detail {

inline void check_generators(const std::vector<exact_matrix>& gens) {
    if (gens.empty()) throw error("matrix group needs at least one generator");
    for (const auto& g : gens) {
        if (g.dim() != gens.front().dim()) throw error("matrix group generators differ in dimension");
        if (!is_unitary(g)) throw error("matrix group generator is not unitary");
    }
}

}  // namespace detail

inline auto matrix_product(group_mode mode) {
    return [mode](const exact_matrix& a, const exact_matrix& b) {
        exact_matrix p = a * b;
        return mode == group_mode::projective ? projective_canonical(p) : p;
    };
}

inline matrix_group enumerate_matrix_group(std::vector<exact_matrix> gens, group_mode mode,
                                           std::size_t cap = default_enumeration_cap) {
    detail::check_generators(gens);
    exact_matrix id = exact_matrix::identity(gens.front().dim());
    if (mode == group_mode::projective)
        for (auto& g : gens) g = projective_canonical(g);
    return enumerate_group(id, gens, matrix_product(mode), cap);
}

// Cache file layout:
//   qrg-group <spec-hash-hex> <mode> <order> <generator-count>
//   one serialized element per line, in id order
//   one line per element with its right products by each generator
inline void save_matrix_group(const std::filesystem::path& path, std::uint64_t spec_hash, group_mode mode,
                              const matrix_group& g) {
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw error("cannot write cache file " + tmp.string());
        out << "qrg-group " << std::hex << spec_hash << std::dec << ' ' << to_string(mode) << ' ' << g.order() << ' '
            << g.table.generator_count() << '\n';
        for (const auto& e : g.elements) out << e.to_string() << '\n';
        for (elem_id e = 0; e < g.order(); ++e) {
            for (std::size_t k = 0; k < g.table.generator_count(); ++k) {
                if (k) out << ' ';
                out << g.table.right_gen(e, k);
            }
            out << '\n';
        }
        if (!out) throw error("failed writing cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Returns nullopt when the file is absent; throws cache_corruption when it is
/// present but inconsistent with the request.
inline std::optional<matrix_group> load_matrix_group(const std::filesystem::path& path, std::uint64_t spec_hash,
                                                     group_mode mode, std::vector<exact_matrix> gens) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic, mode_text;
    std::uint64_t hash = 0;
    std::size_t order = 0, ngens = 0;
    in >> magic >> std::hex >> hash >> std::dec >> mode_text >> order >> ngens;
    if (!in || magic != "qrg-group") throw cache_corruption("bad cache header in " + path.string());
    if (hash != spec_hash || mode_text != to_string(mode) || ngens != gens.size() || order == 0)
        throw cache_corruption("cache header does not match request in " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<exact_matrix> elements;
    elements.reserve(order);
    try {
        for (std::size_t i = 0; i < order; ++i) {
            if (!std::getline(in, line)) throw cache_corruption("truncated cache file " + path.string());
            elements.push_back(exact_matrix::parse(line));
        }
    } catch (const parse_error& e) {
        throw cache_corruption(std::string("unparsable cache entry: ") + e.what());
    }
    std::vector<std::vector<elem_id>> right(ngens, std::vector<elem_id>(order));
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t k = 0; k < ngens; ++k) {
            long long v = -1;
            if (!(in >> v) || v < 0) throw cache_corruption("truncated cache table " + path.string());
            right[k][i] = static_cast<elem_id>(v);
        }
    if (mode == group_mode::projective)
        for (auto& g : gens) g = projective_canonical(g);
    return realize_from_cache(std::move(elements), std::move(right), gens, matrix_product(mode));
}

}  // namespace qrg
