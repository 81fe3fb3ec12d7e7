#pragma once

// n-qubit Pauli operators i^phase X^x Z^z in symplectic form.
//
// Qubit 0 is the leftmost tensor factor and the most significant bit of x, z
// and of matrix row/column indices.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qrg/errors.hpp"
#include "qrg/group_table.hpp"
#include "qrg/matrix.hpp"
#include "qrg/perm.hpp"

namespace qrg {

struct pauli_element {
    unsigned n = 1;
    unsigned phase = 0;  // exponent of i, mod 4
    std::uint32_t x = 0;
    std::uint32_t z = 0;

    friend bool operator==(const pauli_element&, const pauli_element&) = default;

    std::size_t hash() const {
        return (static_cast<std::size_t>(x) << 34) ^ (static_cast<std::size_t>(z) << 2) ^ phase ^
               (static_cast<std::size_t>(n) << 58);
    }

    static pauli_element identity(unsigned n) { return {n, 0, 0, 0}; }

    bool is_hermitian() const { return (phase + std::popcount(x & z)) % 2 == 0; }
};

inline pauli_element operator*(const pauli_element& a, const pauli_element& b) {
    if (a.n != b.n) throw error("pauli product of different qubit counts");
    unsigned ph = a.phase + b.phase + 2u * static_cast<unsigned>(std::popcount(a.z & b.x));
    return {a.n, ph % 4, a.x ^ b.x, a.z ^ b.z};
}

inline bool pauli_commutes(const pauli_element& a, const pauli_element& b) {
    if (a.n != b.n) throw error("pauli commutation of different qubit counts");
    return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) % 2 == 0;
}

/// Single-qubit factor letters: I, X, Y (= sigma_y = iXZ), Z at qubit q.
inline pauli_element pauli_from_letters(std::string_view letters, unsigned phase_of_sigmas = 0) {
    pauli_element p;
    p.n = static_cast<unsigned>(letters.size());
    if (p.n == 0 || p.n > 16) throw parse_error("pauli string must have 1..16 letters");
    unsigned ys = 0;
    for (unsigned q = 0; q < p.n; ++q) {
        std::uint32_t bit = 1u << (p.n - 1 - q);
        switch (letters[q]) {
        case 'I': break;
        case 'X': p.x |= bit; break;
        case 'Z': p.z |= bit; break;
        case 'Y':
            p.x |= bit;
            p.z |= bit;
            ++ys;
            break;
        default: throw parse_error("bad pauli letter '" + std::string(1, letters[q]) + "'");
        }
    }
    p.phase = (phase_of_sigmas + ys) % 4;
    return p;
}

/// Letters of the sigma tensor factors, e.g. "XZ".
inline std::string pauli_letters(const pauli_element& p) {
    std::string s;
    for (unsigned q = 0; q < p.n; ++q) {
        std::uint32_t bit = 1u << (p.n - 1 - q);
        bool xb = p.x & bit, zb = p.z & bit;
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

/// "i^k LETTERS" where the letters are sigma matrices and k the phase in
/// front of their tensor product.
inline std::string to_string(const pauli_element& p) {
    unsigned ys = static_cast<unsigned>(std::popcount(p.x & p.z));
    unsigned k = (p.phase + 4 - ys % 4) % 4;
    return "i^" + std::to_string(k) + " " + pauli_letters(p);
}

inline pauli_element parse_pauli(std::string_view text) {
    if (text.size() < 5 || text.substr(0, 2) != "i^" || text[3] != ' ' || text[2] < '0' || text[2] > '3')
        throw parse_error("pauli text must look like 'i^k XYZ': '" + std::string(text) + "'");
    return pauli_from_letters(text.substr(4), static_cast<unsigned>(text[2] - '0'));
}

inline exact_matrix pauli_to_matrix(const pauli_element& p) {
    if (p.n > 4) throw dimension_too_large("pauli_to_matrix supports at most 4 qubits");
    const std::size_t dim = std::size_t{1} << p.n;
    exact_matrix m(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
        unsigned ph = p.phase + 2u * static_cast<unsigned>(std::popcount(p.z & c));
        m(c ^ p.x, c) = cyc8::zeta_pow(2 * static_cast<int>(ph % 4));
    }
    return m;
}

inline pauli_element matrix_to_pauli(const exact_matrix& m) {
    const std::size_t dim = m.dim();
    if (dim == 0 || !std::has_single_bit(dim) || dim > (std::size_t{1} << 16))
        throw not_pauli("matrix dimension is not a power of two");
    pauli_element p;
    p.n = static_cast<unsigned>(std::countr_zero(dim));
    std::size_t r = 0;
    while (r < dim && m(r, 0).is_zero()) ++r;
    if (r == dim) throw not_pauli("zero first column");
    p.x = static_cast<std::uint32_t>(r);
    int ph = -1;
    for (int k = 0; k < 4; ++k)
        if (m(r, 0) == cyc8::zeta_pow(2 * k)) ph = k;
    if (ph < 0) throw not_pauli("entry is not a power of i");
    p.phase = static_cast<unsigned>(ph);
    for (unsigned j = 0; j < p.n; ++j) {
        std::uint32_t c = 1u << j;
        const cyc8& v = m(c ^ p.x, c);
        if (v == -m(r, 0)) {
            p.z |= c;
        } else if (v != m(r, 0)) {
            throw not_pauli("inconsistent diagonal signs");
        }
    }
    if (!(pauli_to_matrix(p) == m)) throw not_pauli("matrix is not a Pauli operator");
    return p;
}

/// Point count of the unsigned action: 4^n - 1 symplectic classes.
inline std::size_t unsigned_pauli_points(unsigned n) { return (std::size_t{1} << (2 * n)) - 1; }
inline std::size_t signed_pauli_points(unsigned n) { return 2 * unsigned_pauli_points(n); }

inline std::size_t pauli_class_index(unsigned n, std::uint32_t x, std::uint32_t z) {
    return ((static_cast<std::size_t>(x) << n) | z) - 1;
}

/// Hermitian representative i^{x.z} X^x Z^z of the class (x, z).
inline pauli_element hermitian_pauli(unsigned n, std::uint32_t x, std::uint32_t z) {
    return {n, static_cast<unsigned>(std::popcount(x & z)) % 4, x, z};
}

/// Permutation induced by g -> U g U^dagger on the non-identity Pauli classes.
/// Unsigned points are the classes (x, z); signed points are the Hermitian
/// operators +-i^{x.z} X^x Z^z, index 2 * class + (sign is minus).
inline permutation clifford_action_permutation(const exact_matrix& u, unsigned n, bool signed_action) {
    if (u.dim() != (std::size_t{1} << n)) throw error("clifford action: dimension is not 2^n");
    const exact_matrix ud = u.adjoint();
    const std::size_t classes = unsigned_pauli_points(n);
    std::vector<std::uint32_t> img(signed_action ? 2 * classes : classes);
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t x = 0; x <= full; ++x)
        for (std::uint32_t z = 0; z <= full; ++z) {
            if (x == 0 && z == 0) continue;
            exact_matrix conj = u * pauli_to_matrix(hermitian_pauli(n, x, z)) * ud;
            pauli_element q;
            try {
                q = matrix_to_pauli(conj);
            } catch (const not_pauli&) {
                throw not_clifford("conjugate of a Pauli operator is not a Pauli operator");
            }
            std::size_t from = pauli_class_index(n, x, z);
            std::size_t to = pauli_class_index(n, q.x, q.z);
            if (!signed_action) {
                img[from] = static_cast<std::uint32_t>(to);
                continue;
            }
            unsigned rel = (q.phase + 4 - static_cast<unsigned>(std::popcount(q.x & q.z)) % 4) % 4;
            if (rel % 2) throw not_clifford("conjugate of a Hermitian Pauli is not Hermitian");
            std::uint32_t sign = rel / 2;
            img[2 * from] = static_cast<std::uint32_t>(2 * to + sign);
            img[2 * from + 1] = static_cast<std::uint32_t>(2 * to + (sign ^ 1));
        }
    return permutation(std::move(img));
}

struct pauli_hash {
    std::size_t operator()(const pauli_element& p) const { return p.hash(); }
};

using pauli_group = realized_group<pauli_element, pauli_hash>;

inline pauli_group pauli_group_from(const std::vector<pauli_element>& gens) {
    if (gens.empty()) throw error("pauli group needs generators");
    return enumerate_group(pauli_element::identity(gens.front().n), gens,
                           [](const pauli_element& a, const pauli_element& b) { return a * b; },
                           default_enumeration_cap, pauli_hash{});
}

/// Generator list: sigma_x, sigma_y, sigma_z for one qubit; the five
/// two-qubit products 1X, XX, ZZ, YZ, ZX for two qubits; single-qubit sigmas
/// on every factor for three.
inline std::vector<pauli_element> pauli_generators(unsigned n) {
    if (n == 1) return {pauli_from_letters("X"), pauli_from_letters("Y"), pauli_from_letters("Z")};
    if (n == 2)
        return {pauli_from_letters("IX"), pauli_from_letters("XX"), pauli_from_letters("ZZ"), pauli_from_letters("YZ"),
                pauli_from_letters("ZX")};
    if (n == 3) {
        std::vector<pauli_element> g;
        for (std::string s : {"XII", "YII", "ZII", "IXI", "IYI", "IZI", "IIX", "IIY", "IIZ"}) g.push_back(pauli_from_letters(s));
        return g;
    }
    throw error("pauli_generators: n must be 1, 2 or 3");
}

inline pauli_group pauli_group_table(unsigned n) {
    pauli_group g = pauli_group_from(pauli_generators(n));
    if (g.order() != (std::size_t{4} << (2 * n))) throw error("pauli group does not have order 4^(n+1)");
    return g;
}

}  // namespace qrg

template <>
struct std::hash<qrg::pauli_element> {
    std::size_t operator()(const qrg::pauli_element& p) const { return p.hash(); }
};
