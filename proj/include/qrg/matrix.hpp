#pragma once

// Square matrices over Q(zeta_8) and the named gates.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qrg/errors.hpp"
#include "qrg/exactnum.hpp"

namespace qrg {

class exact_matrix {
public:
    exact_matrix() = default;
    explicit exact_matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    exact_matrix(std::size_t dim, std::vector<cyc8> entries) : dim_(dim), a_(std::move(entries)) {
        if (a_.size() != dim_ * dim_) throw error("exact_matrix: entry count does not match dimension");
    }

    static exact_matrix identity(std::size_t dim) {
        exact_matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = cyc8(1);
        return m;
    }
    static exact_matrix diagonal(const std::vector<cyc8>& d) {
        exact_matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    /// Rows of small integers, scaled by `scale`.
    static exact_matrix from_rows(const std::vector<std::vector<int>>& rows, const cyc8& scale = cyc8(1)) {
        exact_matrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw error("exact_matrix::from_rows: not square");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[i][j] != 0) m(i, j) = cyc8(rows[i][j]) * scale;
            }
        }
        return m;
    }

    std::size_t dim() const { return dim_; }
    cyc8& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cyc8& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
    const std::vector<cyc8>& entries() const { return a_; }

    friend exact_matrix operator*(const exact_matrix& a, const exact_matrix& b) {
        if (a.dim_ != b.dim_) throw error("exact_matrix: dimension mismatch in product");
        const std::size_t n = a.dim_;
        exact_matrix r(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const cyc8& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    const cyc8& bkj = b(k, j);
                    if (bkj.is_zero()) continue;
                    r(i, j) += aik.is_one() ? bkj : aik * bkj;
                }
            }
        }
        return r;
    }

    friend bool operator==(const exact_matrix& a, const exact_matrix& b) { return a.dim_ == b.dim_ && a.a_ == b.a_; }

    exact_matrix scaled(const cyc8& s) const {
        exact_matrix r = *this;
        for (auto& e : r.a_) {
            if (!e.is_zero()) e = e * s;
        }
        return r;
    }
    exact_matrix times_zeta_pow(int k) const {
        exact_matrix r = *this;
        for (auto& e : r.a_) {
            if (!e.is_zero()) e = e.times_zeta_pow(k);
        }
        return r;
    }

    /// Conjugate transpose.
    exact_matrix adjoint() const {
        exact_matrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j).conj();
        return r;
    }

    bool is_identity() const { return *this == identity(dim_); }

    std::size_t hash() const {
        std::size_t h = dim_;
        for (const auto& e : a_) h = h * 0x100000001B3ULL ^ e.hash();
        return h;
    }

    /// "dim;e00;e01;..." with each entry in the "c0,c1,c2,c3" form.
    std::string to_string() const {
        std::string s = std::to_string(dim_);
        for (const auto& e : a_) {
            s += ';';
            s += e.to_string();
        }
        return s;
    }

    static exact_matrix parse(std::string_view text) {
        auto semi = text.find(';');
        if (semi == std::string_view::npos) throw parse_error("matrix text lacks dimension prefix");
        std::size_t dim = 0;
        try {
            dim = std::stoul(std::string(text.substr(0, semi)));
        } catch (const std::exception&) {
            throw parse_error("bad matrix dimension in '" + std::string(text.substr(0, semi)) + "'");
        }
        std::vector<cyc8> entries;
        entries.reserve(dim * dim);
        std::size_t start = semi + 1;
        while (start <= text.size() && entries.size() < dim * dim) {
            auto next = text.find(';', start);
            auto end = next == std::string_view::npos ? text.size() : next;
            entries.push_back(cyc8::parse(text.substr(start, end - start)));
            start = end + 1;
        }
        if (entries.size() != dim * dim || start <= text.size()) throw parse_error("matrix entry count mismatch");
        return {dim, std::move(entries)};
    }

private:
    std::size_t dim_ = 0;
    std::vector<cyc8> a_;
};

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
inline exact_matrix tensor(const exact_matrix& a, const exact_matrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    exact_matrix r(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cyc8& aij = a(i, j);
            if (aij.is_zero()) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    if (b(k, l).is_zero()) continue;
                    r(i * m + k, j * m + l) = aij * b(k, l);
                }
        }
    return r;
}

template <class... Ms>
exact_matrix tensor(const exact_matrix& a, const exact_matrix& b, const Ms&... rest) {
    return tensor(tensor(a, b), rest...);
}

inline bool is_unitary(const exact_matrix& a) { return (a * a.adjoint()).is_identity(); }

/// Names accepted: I, X, Y, Z, H, P, T, CZ, R.
inline exact_matrix standard_gate(std::string_view name) {
    const cyc8 s = cyc8::inv_sqrt2();
    const cyc8 i = cyc8::imag_unit();
    if (name == "I") return exact_matrix::identity(2);
    if (name == "X") return exact_matrix::from_rows({{0, 1}, {1, 0}});
    if (name == "Y") {
        exact_matrix y(2);
        y(0, 1) = -i;
        y(1, 0) = i;
        return y;
    }
    if (name == "Z") return exact_matrix::from_rows({{1, 0}, {0, -1}});
    if (name == "H") return exact_matrix::from_rows({{1, 1}, {1, -1}}, s);
    if (name == "P") return exact_matrix::diagonal({cyc8(1), i});
    // T = exp(i pi/4) P H
    if (name == "T") return (standard_gate("P") * standard_gate("H")).scaled(cyc8::zeta());
    if (name == "CZ") return exact_matrix::diagonal({cyc8(1), cyc8(1), cyc8(1), cyc8(-1)});
    // Bell basis change matrix
    if (name == "R") return exact_matrix::from_rows({{1, 0, 0, 1}, {0, 1, -1, 0}, {0, 1, 1, 0}, {-1, 0, 0, 1}}, s);
    throw unknown_gate("unknown gate '" + std::string(name) + "'");
}

}  // namespace qrg

template <>
struct std::hash<qrg::exact_matrix> {
    std::size_t operator()(const qrg::exact_matrix& m) const { return m.hash(); }
};
