#pragma once

// Permutations and deterministic Schreier-Sims.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrg/errors.hpp"
#include "qrg/exactnum.hpp"

namespace qrg {

/// A bijection of {0..degree-1}. Products compose as functions:
/// (a * b)[i] = a[b[i]].
class permutation {
public:
    permutation() = default;
    explicit permutation(std::size_t degree) : img_(degree) { std::iota(img_.begin(), img_.end(), 0u); }
    explicit permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size());
        for (auto v : img_) {
            if (v >= img_.size() || seen[v]) throw error("permutation images are not a bijection");
            seen[v] = true;
        }
    }

    /// Cycles of 0-based points.
    static permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
        std::vector<std::uint32_t> img(degree);
        std::iota(img.begin(), img.end(), 0u);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
        return permutation(std::move(img));
    }

    std::size_t degree() const { return img_.size(); }
    std::uint32_t operator[](std::size_t i) const { return img_[i]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    friend permutation operator*(const permutation& a, const permutation& b) {
        if (a.degree() != b.degree()) throw degree_mismatch("permutation degrees differ");
        permutation r;
        r.img_.resize(a.degree());
        for (std::size_t i = 0; i < a.degree(); ++i) r.img_[i] = a.img_[b.img_[i]];
        return r;
    }

    permutation inverse() const {
        permutation r;
        r.img_.resize(degree());
        for (std::size_t i = 0; i < degree(); ++i) r.img_[img_[i]] = static_cast<std::uint32_t>(i);
        return r;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    /// First moved point, or degree() for the identity.
    std::size_t first_moved() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return i;
        return img_.size();
    }

    bool is_even() const {
        std::vector<bool> seen(degree());
        std::size_t transpositions = 0;
        for (std::size_t i = 0; i < degree(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            transpositions += len - 1;
        }
        return transpositions % 2 == 0;
    }

    friend bool operator==(const permutation&, const permutation&) = default;
    friend auto operator<=>(const permutation&, const permutation&) = default;

    std::size_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto v : img_) h = (h ^ v) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(img_[i]);
        }
        return s;
    }

private:
    std::vector<std::uint32_t> img_;
};

/// Base and strong generating set, built incrementally.
class bsgs {
public:
    explicit bsgs(std::size_t degree) : degree_(degree) {}

    std::size_t degree() const { return degree_; }
    std::size_t base_length() const { return levels_.size(); }
    std::vector<std::uint32_t> base() const {
        std::vector<std::uint32_t> b;
        for (const auto& l : levels_) b.push_back(l.point);
        return b;
    }
    std::vector<std::size_t> orbit_sizes() const {
        std::vector<std::size_t> r;
        for (const auto& l : levels_) r.push_back(l.orbit.size());
        return r;
    }
    /// Original generators as supplied to extend().
    const std::vector<permutation>& generators() const { return gens_; }
    /// Strong generators (the generators of the first level, which include
    /// every sifted residue).
    std::vector<permutation> strong_generators() const {
        std::vector<permutation> all;
        for (const auto& l : levels_)
            for (const auto& g : l.gens)
                if (std::find(all.begin(), all.end(), g) == all.end()) all.push_back(g);
        return all;
    }

    big_int order() const {
        big_int r = 1;
        for (const auto& l : levels_) r *= static_cast<unsigned long long>(l.orbit.size());
        return r;
    }

    bool contains(const permutation& p) const {
        if (p.degree() != degree_) throw degree_mismatch("permutation degree does not match group degree");
        auto [res, lvl] = sift(p, 0);
        return lvl == levels_.size() && res.is_identity();
    }

    /// Adds generators; the BSGS is complete again on return.
    void extend(const std::vector<permutation>& gens) {
        for (const auto& g : gens) {
            if (g.degree() != degree_) throw degree_mismatch("generator degree does not match group degree");
            gens_.push_back(g);
            auto [res, lvl] = sift(g, 0);
            if (lvl == levels_.size() && res.is_identity()) continue;
            add_residue(0, lvl, res);
        }
    }
    void extend(const permutation& g) { extend(std::vector<permutation>{g}); }

    /// Uniformly random element (product of random coset representatives).
    template <class Rng>
    permutation random_element(Rng& rng) const {
        permutation r(degree_);
        for (const auto& l : levels_) {
            std::uniform_int_distribution<std::size_t> pick(0, l.orbit.size() - 1);
            r = r * l.transversal[l.orbit[pick(rng)]];
        }
        return r;
    }

private:
    struct level {
        std::uint32_t point = 0;
        std::vector<permutation> gens;
        std::vector<std::uint32_t> orbit;
        std::vector<permutation> transversal;      // indexed by point; t(point) = orbit point
        std::vector<permutation> transversal_inv;  // inverses
        std::vector<bool> in_orbit;
        std::vector<std::size_t> tested;  // per orbit index: generators already tested
    };

    std::pair<permutation, std::size_t> sift(permutation g, std::size_t from) const {
        for (std::size_t i = from; i < levels_.size(); ++i) {
            const level& l = levels_[i];
            std::uint32_t u = g[l.point];
            if (!l.in_orbit[u]) return {std::move(g), i};
            g = l.transversal_inv[u] * g;
        }
        return {std::move(g), levels_.size()};
    }

    void extend_orbit(level& l) {
        for (std::size_t idx = 0; idx < l.orbit.size(); ++idx) {
            std::uint32_t u = l.orbit[idx];
            for (const auto& s : l.gens) {
                std::uint32_t v = s[u];
                if (l.in_orbit[v]) continue;
                l.in_orbit[v] = true;
                l.orbit.push_back(v);
                l.transversal[v] = s * l.transversal[u];
                l.transversal_inv[v] = l.transversal[v].inverse();
                l.tested.push_back(0);
            }
        }
    }

    // r fixes the base points of levels < to; it is added to levels from..to.
    void add_residue(std::size_t from, std::size_t to, const permutation& r) {
        if (to == levels_.size()) {
            std::size_t pt = r.first_moved();
            if (pt == degree_) throw error("schreier_sims: identity residue");
            level l;
            l.point = static_cast<std::uint32_t>(pt);
            l.orbit = {l.point};
            l.transversal.assign(degree_, permutation());
            l.transversal_inv.assign(degree_, permutation());
            l.transversal[pt] = permutation(degree_);
            l.transversal_inv[pt] = permutation(degree_);
            l.in_orbit.assign(degree_, false);
            l.in_orbit[pt] = true;
            l.tested = {0};
            levels_.push_back(std::move(l));
        }
        for (std::size_t i = from; i <= to; ++i) {
            levels_[i].gens.push_back(r);
            extend_orbit(levels_[i]);
        }
        for (std::size_t i = to + 1; i-- > from;) complete(i);
    }

    // Sifts every untested Schreier generator of level i.
    void complete(std::size_t i) {
        for (std::size_t idx = 0; idx < levels_[i].orbit.size(); ++idx) {
            while (levels_[i].tested[idx] < levels_[i].gens.size()) {
                level& l = levels_[i];
                std::size_t k = l.tested[idx]++;
                std::uint32_t u = l.orbit[idx];
                const permutation& s = l.gens[k];
                std::uint32_t v = s[u];
                permutation h = l.transversal_inv[v] * (s * l.transversal[u]);
                if (h.is_identity()) continue;
                auto [res, lvl] = sift(std::move(h), i + 1);
                if (lvl == levels_.size() && res.is_identity()) continue;
                add_residue(i + 1, lvl, res);
            }
        }
    }

    std::size_t degree_;
    std::vector<level> levels_;
    std::vector<permutation> gens_;
};

inline bsgs schreier_sims(const std::vector<permutation>& gens, std::size_t degree) {
    bsgs g(degree);
    g.extend(gens);
    return g;
}

inline bsgs schreier_sims(const std::vector<permutation>& gens) {
    if (gens.empty()) throw error("schreier_sims: no generators and no degree given");
    return schreier_sims(gens, gens.front().degree());
}

inline permutation commutator(const permutation& a, const permutation& b) {
    return a * b * a.inverse() * b.inverse();
}

/// Normal closure in `g` of the given elements.
inline bsgs normal_closure(const bsgs& g, const std::vector<permutation>& elems) {
    bsgs h(g.degree());
    std::vector<permutation> queue;
    for (const auto& e : elems) {
        if (e.is_identity() || h.contains(e)) continue;
        h.extend(e);
        queue.push_back(e);
    }
    std::vector<permutation> ggens = g.generators();
    std::vector<permutation> ginv;
    for (const auto& s : ggens) ginv.push_back(s.inverse());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (std::size_t k = 0; k < ggens.size(); ++k) {
            permutation c = ginv[k] * queue[i] * ggens[k];
            if (h.contains(c)) continue;
            h.extend(c);
            queue.push_back(c);
        }
    }
    return h;
}

inline bsgs perm_derived_subgroup(const bsgs& g) {
    const auto& gens = g.generators();
    std::vector<permutation> comms;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(commutator(gens[i], gens[j]));
    return normal_closure(g, comms);
}

// Cache layout: "qrg-perm <degree> <order>", then one strong generator per line.
inline void save_bsgs(const std::filesystem::path& path, const bsgs& g) {
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw error("cannot write cache file " + tmp.string());
        out << "qrg-perm " << g.degree() << ' ' << g.order() << '\n';
        for (const auto& s : g.strong_generators()) out << s.to_string() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

/// Rebuilds from cached strong generators; the recorded order is audited.
inline std::optional<bsgs> load_bsgs(const std::filesystem::path& path, std::size_t degree) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic, order_text;
    std::size_t deg = 0;
    in >> magic >> deg >> order_text;
    if (!in || magic != "qrg-perm" || deg != degree) throw cache_corruption("bad permutation cache header " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<permutation> gens;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::uint32_t> img;
        long long v;
        while (ls >> v) {
            if (v < 0) throw cache_corruption("negative point in permutation cache");
            img.push_back(static_cast<std::uint32_t>(v));
        }
        if (img.size() != degree) throw cache_corruption("permutation cache line has wrong length");
        try {
            gens.emplace_back(std::move(img));
        } catch (const error&) {
            throw cache_corruption("permutation cache line is not a bijection");
        }
    }
    bsgs g = schreier_sims(gens, degree);
    if (g.order().str() != order_text) throw cache_corruption("permutation cache order audit failed");
    return g;
}

}  // namespace qrg

template <>
struct std::hash<qrg::permutation> {
    std::size_t operator()(const qrg::permutation& p) const { return p.hash(); }
};
