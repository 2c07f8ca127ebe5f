#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace stabrw {

/// Error type used across the library. Parse errors carry line/column.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Exact element of Z[w]/sqrt2^k with w = exp(i*pi/4), stored as
/// (a + b*w + c*w^2 + d*w^3) / sqrt2^k. Values are kept canonical:
/// either k == 0 or the numerator is not divisible by sqrt2 in the ring,
/// and zero is always (0,0,0,0;0). Every matrix entry in the library
/// lives in this ring (+-1, +-i, sqrt2, exp(+-i*pi/4), ...).
class CliffordScalar {
public:
    CliffordScalar() = default;
    CliffordScalar(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, int k = 0);

    static CliffordScalar zero() { return {}; }
    static CliffordScalar one() { return integer(1); }
    static CliffordScalar integer(std::int64_t n) { return {n, 0, 0, 0, 0}; }
    /// w^j for any integer j (w^4 = -1).
    static CliffordScalar omega_pow(int j);
    static CliffordScalar i() { return {0, 0, 1, 0, 0}; }
    static CliffordScalar sqrt2() { return {0, 1, 0, -1, 0}; }
    static CliffordScalar inv_sqrt2() { return {1, 0, 0, 0, 1}; }
    /// cos(t*pi/4) and sin(t*pi/4); defined for all integers t.
    static CliffordScalar cos_pi4(int t);
    static CliffordScalar sin_pi4(int t);

    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    std::int64_t c() const noexcept { return c_; }
    std::int64_t d() const noexcept { return d_; }
    int k() const noexcept { return k_; }

    bool is_zero() const noexcept { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_one() const noexcept { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 0 && k_ == 0; }

    bool operator==(const CliffordScalar& other) const noexcept {
        return a_ == other.a_ && b_ == other.b_ && c_ == other.c_ && d_ == other.d_ && k_ == other.k_;
    }
    bool operator!=(const CliffordScalar& other) const noexcept { return !(*this == other); }

    CliffordScalar operator+(const CliffordScalar& other) const;
    CliffordScalar operator-(const CliffordScalar& other) const;
    CliffordScalar operator*(const CliffordScalar& other) const;
    CliffordScalar operator-() const;

    /// Complex conjugate (w -> w^-1 = -w^3).
    CliffordScalar conj() const;

    /// Double-precision value, for cross-checks only.
    std::complex<double> value() const;

    /// Debug rendering: "(a + b*w + c*w^2 + d*w^3)/sqrt2^k".
    std::string str() const;

private:
    std::int64_t a_ = 0, b_ = 0, c_ = 0, d_ = 0;
    int k_ = 0;

    void canonicalize();
};

CliffordScalar scalar_add(const CliffordScalar& x, const CliffordScalar& y);
CliffordScalar scalar_mul(const CliffordScalar& x, const CliffordScalar& y);
CliffordScalar scalar_canonical(const CliffordScalar& x);

/// Exact ratio num/den when it lies in the ring (den != 0), nullopt otherwise.
std::optional<CliffordScalar> scalar_ratio(const CliffordScalar& num, const CliffordScalar& den);

} // namespace stabrw
