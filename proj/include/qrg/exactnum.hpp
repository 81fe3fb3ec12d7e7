#pragma once

// Exact arithmetic: big rationals and the cyclotomic field Q(zeta_8).

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrg/errors.hpp"

namespace qrg {

using big_int = boost::multiprecision::cpp_int;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

inline bool fits64(i128 v) {
    return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

inline big_int to_big(i128 v) {
    bool neg = v < 0;
    u128 m = abs128(v);
    big_int r = static_cast<std::uint64_t>(m >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(m);
    return neg ? big_int(-r) : r;
}

}  // namespace detail

/// Rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a heap-allocated big-integer pair and
/// demoted again as soon as it fits. Arithmetic never loses precision.
class rational {
public:
    rational() = default;
    rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    rational(long long n, long long d) { assign(static_cast<detail::i128>(n), static_cast<detail::i128>(d)); }
    rational(const big_int& n, const big_int& d) { assign_big(n, d); }

    rational(const rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<big_pair>(*o.big_);
    }
    rational(rational&&) noexcept = default;
    rational& operator=(const rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<big_pair>(*o.big_) : nullptr;
        }
        return *this;
    }
    rational& operator=(rational&&) noexcept = default;

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_big() const { return static_cast<bool>(big_); }
    int sign() const {
        if (big_) return big_->num.sign();
        return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
    }

    big_int numerator() const { return big_ ? big_->num : big_int(num_); }
    big_int denominator() const { return big_ ? big_->den : big_int(den_); }

    rational operator-() const {
        rational r;
        if (big_) {
            r.assign_big(-big_->num, big_->den);
        } else {
            r.assign(-static_cast<detail::i128>(num_), den_);
        }
        return r;
    }

    friend rational operator+(const rational& a, const rational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        rational r;
        if (!a.big_ && !b.big_) {
            using detail::i128;
            if (a.den_ == b.den_) {
                r.assign(static_cast<i128>(a.num_) + b.num_, a.den_);
            } else {
                r.assign(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                         static_cast<i128>(a.den_) * b.den_);
            }
            return r;
        }
        big_int n = a.numerator() * b.denominator() + b.numerator() * a.denominator();
        big_int d = a.denominator() * b.denominator();
        r.assign_big(n, d);
        return r;
    }
    friend rational operator-(const rational& a, const rational& b) { return a + (-b); }

    friend rational operator*(const rational& a, const rational& b) {
        if (a.is_zero() || b.is_zero()) return rational{};
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        rational r;
        if (!a.big_ && !b.big_) {
            using detail::i128;
            r.assign(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
            return r;
        }
        r.assign_big(a.numerator() * b.numerator(), a.denominator() * b.denominator());
        return r;
    }

    friend rational operator/(const rational& a, const rational& b) {
        if (b.is_zero()) throw division_by_zero("rational division by zero");
        rational inv;
        if (!b.big_) {
            inv.assign(b.den_, b.num_);
        } else {
            inv.assign_big(b.big_->den, b.big_->num);
        }
        return a * inv;
    }

    rational& operator+=(const rational& o) { return *this = *this + o; }
    rational& operator-=(const rational& o) { return *this = *this - o; }
    rational& operator*=(const rational& o) { return *this = *this * o; }
    rational& operator/=(const rational& o) { return *this = *this / o; }

    friend bool operator==(const rational& a, const rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;
        return a.big_->num == b.big_->num && a.big_->den == b.big_->den;
    }

    friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
        if (!a.big_ && !b.big_) {
            using detail::i128;
            i128 l = static_cast<i128>(a.num_) * b.den_;
            i128 r = static_cast<i128>(b.num_) * a.den_;
            return l <=> r;
        }
        big_int l = a.numerator() * b.denominator();
        big_int r = b.numerator() * a.denominator();
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        if (!big_) {
            std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
            h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
        return std::hash<std::string>{}(to_string());
    }

    /// "p/q" in lowest terms; "/q" omitted when q = 1.
    std::string to_string() const {
        if (!big_) {
            std::string s = std::to_string(num_);
            if (den_ != 1) s += "/" + std::to_string(den_);
            return s;
        }
        std::string s = big_->num.str();
        if (big_->den != 1) s += "/" + big_->den.str();
        return s;
    }

    static rational parse(std::string_view text) {
        if (text.empty()) throw parse_error("empty rational");
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                return rational(big_int(std::string(text)), big_int(1));
            }
            big_int n(std::string(text.substr(0, slash)));
            big_int d(std::string(text.substr(slash + 1)));
            if (d.is_zero()) throw parse_error("zero denominator in '" + std::string(text) + "'");
            return rational(n, d);
        } catch (const std::runtime_error&) {
            throw parse_error("malformed rational '" + std::string(text) + "'");
        }
    }

private:
    struct big_pair {
        big_int num, den;
    };

    void assign(detail::i128 n, detail::i128 d) {
        using namespace detail;
        if (d == 0) throw division_by_zero("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            big_.reset();
            return;
        }
        if (d != 1) {
            u128 g = gcd128(abs128(n), static_cast<u128>(d));
            if (g != 1) {
                n /= static_cast<i128>(g);
                d /= static_cast<i128>(g);
            }
        }
        if (fits64(n) && fits64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
            return;
        }
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<big_pair>(big_pair{to_big(n), to_big(d)});
    }

    void assign_big(big_int n, big_int d) {
        if (d.is_zero()) throw division_by_zero("rational with zero denominator");
        if (d.sign() < 0) {
            n = -n;
            d = -d;
        }
        if (n.is_zero()) {
            num_ = 0;
            den_ = 1;
            big_.reset();
            return;
        }
        big_int g = boost::multiprecision::gcd(n, d);
        if (g != 1) {
            n /= g;
            d /= g;
        }
        static const big_int lo = big_int(INT64_MIN), hi = big_int(INT64_MAX);
        if (n >= lo && n <= hi && d <= hi) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
            return;
        }
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<big_pair>(big_pair{std::move(n), std::move(d)});
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<big_pair> big_;
};

inline std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.to_string(); }

/// Element of Q(zeta) with zeta a primitive 8th root of unity, stored over
/// the power basis {1, zeta, zeta^2, zeta^3} and reduced with zeta^4 = -1.
class cyc8 {
public:
    cyc8() = default;
    cyc8(long long v) : c_{rational(v), {}, {}, {}} {}  // NOLINT(google-explicit-constructor)
    cyc8(rational v) : c_{std::move(v), {}, {}, {}} {}  // NOLINT(google-explicit-constructor)
    cyc8(rational c0, rational c1, rational c2, rational c3)
        : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static cyc8 zeta() { return {0, 1, 0, 0}; }
    static cyc8 imag_unit() { return {0, 0, 1, 0}; }
    static cyc8 sqrt2() { return {0, 1, 0, -1}; }
    static cyc8 inv_sqrt2() { return {0, rational(1, 2), 0, rational(-1, 2)}; }
    /// zeta^k for any integer k.
    static cyc8 zeta_pow(int k) {
        k = ((k % 8) + 8) % 8;
        cyc8 r;
        r.c_[k % 4] = (k >= 4) ? rational(-1) : rational(1);
        return r;
    }

    const rational& operator[](std::size_t i) const { return c_[i]; }
    const std::array<rational, 4>& coeffs() const { return c_; }

    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
    bool is_one() const { return c_[0].is_one() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

    friend cyc8 operator+(const cyc8& a, const cyc8& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
    }
    friend cyc8 operator-(const cyc8& a, const cyc8& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
    }
    cyc8 operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

    friend cyc8 operator*(const cyc8& a, const cyc8& b) {
        cyc8 r;
        for (int i = 0; i < 4; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j < 4; ++j) {
                if (b.c_[j].is_zero()) continue;
                rational t = a.c_[i] * b.c_[j];
                int k = i + j;
                if (k >= 4) {
                    r.c_[k - 4] -= t;
                } else {
                    r.c_[k] += t;
                }
            }
        }
        return r;
    }

    cyc8& operator+=(const cyc8& o) { return *this = *this + o; }
    cyc8& operator-=(const cyc8& o) { return *this = *this - o; }
    cyc8& operator*=(const cyc8& o) { return *this = *this * o; }

    /// Multiplication by zeta^k is a signed rotation of the coefficients.
    cyc8 times_zeta_pow(int k) const {
        k = ((k % 8) + 8) % 8;
        cyc8 r = *this;
        for (int s = 0; s < k; ++s) {
            r = cyc8{-r.c_[3], r.c_[0], r.c_[1], r.c_[2]};
        }
        return r;
    }

    /// Complex conjugation: zeta -> zeta^-1 = -zeta^3.
    cyc8 conj() const { return {c_[0], -c_[3], -c_[2], -c_[1]}; }

    /// Multiplicative inverse via the 4x4 rational system for x -> a*x.
    cyc8 inverse() const;

    friend bool operator==(const cyc8& a, const cyc8& b) { return a.c_ == b.c_; }

    /// Coefficient-wise lexicographic order.
    friend std::strong_ordering operator<=>(const cyc8& a, const cyc8& b) {
        for (int i = 0; i < 4; ++i) {
            auto c = a.c_[i] <=> b.c_[i];
            if (c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        for (const auto& c : c_) h = h * 1000003u ^ c.hash();
        return h;
    }

    /// "c0,c1,c2,c3".
    std::string to_string() const {
        return c_[0].to_string() + "," + c_[1].to_string() + "," + c_[2].to_string() + "," + c_[3].to_string();
    }

    static cyc8 parse(std::string_view text) {
        std::array<rational, 4> c;
        std::size_t start = 0;
        for (int i = 0; i < 4; ++i) {
            auto comma = text.find(',', start);
            if ((i < 3) == (comma == std::string_view::npos)) {
                throw parse_error("cyc8 needs exactly four comma-separated coefficients: '" + std::string(text) + "'");
            }
            auto end = (i < 3) ? comma : text.size();
            c[i] = rational::parse(text.substr(start, end - start));
            start = end + 1;
        }
        return {c[0], c[1], c[2], c[3]};
    }

private:
    std::array<rational, 4> c_{};
};

inline cyc8 cyc8::inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero in Q(zeta_8)");
    // column j of m holds the coefficients of a * zeta^j
    std::array<std::array<rational, 5>, 4> m;
    for (int j = 0; j < 4; ++j) {
        cyc8 col = times_zeta_pow(j);
        for (int i = 0; i < 4; ++i) m[i][j] = col[i];
    }
    for (int i = 0; i < 4; ++i) m[i][4] = (i == 0) ? rational(1) : rational(0);
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        while (pivot < 4 && m[pivot][col].is_zero()) ++pivot;
        if (pivot == 4) throw division_by_zero("singular multiplication matrix");
        std::swap(m[pivot], m[col]);
        rational inv = rational(1) / m[col][col];
        for (int k = col; k < 5; ++k) m[col][k] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            rational f = m[r][col];
            for (int k = col; k < 5; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return {m[0][4], m[1][4], m[2][4], m[3][4]};
}

inline std::ostream& operator<<(std::ostream& os, const cyc8& a) { return os << a.to_string(); }

}  // namespace qrg

template <>
struct std::hash<qrg::rational> {
    std::size_t operator()(const qrg::rational& r) const { return r.hash(); }
};

template <>
struct std::hash<qrg::cyc8> {
    std::size_t operator()(const qrg::cyc8& a) const { return a.hash(); }
};
