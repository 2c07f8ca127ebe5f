#include "stabrw/scalar.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace stabrw {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(x, y, &r)) {
        throw Error("CliffordScalar coefficient overflow in addition");
    }
    return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(x, y, &r)) {
        throw Error("CliffordScalar coefficient overflow in subtraction");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(x, y, &r)) {
        throw Error("CliffordScalar coefficient overflow in multiplication");
    }
    return r;
}

using Coeffs = std::array<std::int64_t, 4>;

// Negacyclic convolution modulo w^4 = -1.
Coeffs mul_coeffs(const Coeffs& x, const Coeffs& y) {
    Coeffs r{0, 0, 0, 0};
    for (int s = 0; s < 4; ++s) {
        if (x[s] == 0) {
            continue;
        }
        for (int t = 0; t < 4; ++t) {
            const std::int64_t p = checked_mul(x[s], y[t]);
            const int e = s + t;
            if (e < 4) {
                r[e] = checked_add(r[e], p);
            } else {
                r[e - 4] = checked_sub(r[e - 4], p);
            }
        }
    }
    return r;
}

// x * sqrt2 with sqrt2 = w - w^3.
Coeffs mul_sqrt2(const Coeffs& x) {
    return {checked_sub(x[1], x[3]), checked_add(x[0], x[2]), checked_add(x[1], x[3]),
            checked_sub(x[2], x[0])};
}

bool divisible_by_sqrt2(const Coeffs& x) {
    return ((x[0] ^ x[2]) & 1) == 0 && ((x[1] ^ x[3]) & 1) == 0;
}

Coeffs div_sqrt2(const Coeffs& x) {
    return {(x[1] - x[3]) / 2, (x[0] + x[2]) / 2, (x[1] + x[3]) / 2, (x[2] - x[0]) / 2};
}

} // namespace

CliffordScalar::CliffordScalar(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, int k)
    : a_(a), b_(b), c_(c), d_(d), k_(k) {
    if (k < 0) {
        throw Error("CliffordScalar denominator exponent must be non-negative");
    }
    canonicalize();
}

void CliffordScalar::canonicalize() {
    if (is_zero()) {
        k_ = 0;
        return;
    }
    Coeffs x{a_, b_, c_, d_};
    while (k_ > 0 && divisible_by_sqrt2(x)) {
        x = div_sqrt2(x);
        --k_;
    }
    a_ = x[0];
    b_ = x[1];
    c_ = x[2];
    d_ = x[3];
}

CliffordScalar CliffordScalar::omega_pow(int j) {
    j = ((j % 8) + 8) % 8;
    const std::int64_t sign = j < 4 ? 1 : -1;
    Coeffs x{0, 0, 0, 0};
    x[j % 4] = sign;
    return {x[0], x[1], x[2], x[3], 0};
}

CliffordScalar CliffordScalar::cos_pi4(int t) {
    t = ((t % 8) + 8) % 8;
    switch (t) {
    case 0: return integer(1);
    case 1: return inv_sqrt2();
    case 2: return zero();
    case 3: return -inv_sqrt2();
    case 4: return integer(-1);
    case 5: return -inv_sqrt2();
    case 6: return zero();
    default: return inv_sqrt2();
    }
}

CliffordScalar CliffordScalar::sin_pi4(int t) { return cos_pi4(t - 2); }

CliffordScalar CliffordScalar::operator+(const CliffordScalar& other) const {
    Coeffs x{a_, b_, c_, d_};
    Coeffs y{other.a_, other.b_, other.c_, other.d_};
    int kx = k_;
    int ky = other.k_;
    while (kx < ky) {
        x = mul_sqrt2(x);
        ++kx;
    }
    while (ky < kx) {
        y = mul_sqrt2(y);
        ++ky;
    }
    return {checked_add(x[0], y[0]), checked_add(x[1], y[1]), checked_add(x[2], y[2]),
            checked_add(x[3], y[3]), kx};
}

CliffordScalar CliffordScalar::operator-() const { return {-a_, -b_, -c_, -d_, k_}; }

CliffordScalar CliffordScalar::operator-(const CliffordScalar& other) const { return *this + (-other); }

CliffordScalar CliffordScalar::operator*(const CliffordScalar& other) const {
    const Coeffs r = mul_coeffs({a_, b_, c_, d_}, {other.a_, other.b_, other.c_, other.d_});
    return {r[0], r[1], r[2], r[3], k_ + other.k_};
}

CliffordScalar CliffordScalar::conj() const {
    // conj(w) = -w^3, conj(w^2) = -w^2, conj(w^3) = -w.
    return {a_, -d_, -c_, -b_, k_};
}

std::complex<double> CliffordScalar::value() const {
    const double s = std::sqrt(0.5);
    const std::complex<double> w(s, s);
    const std::complex<double> num = static_cast<double>(a_) + static_cast<double>(b_) * w +
                                     static_cast<double>(c_) * (w * w) +
                                     static_cast<double>(d_) * (w * w * w);
    return num / std::pow(std::sqrt(2.0), k_);
}

std::string CliffordScalar::str() const {
    std::ostringstream os;
    os << "(" << a_ << " + " << b_ << "*w + " << c_ << "*w^2 + " << d_ << "*w^3)";
    if (k_ > 0) {
        os << "/sqrt2^" << k_;
    }
    return os.str();
}

CliffordScalar scalar_add(const CliffordScalar& x, const CliffordScalar& y) { return x + y; }
CliffordScalar scalar_mul(const CliffordScalar& x, const CliffordScalar& y) { return x * y; }
CliffordScalar scalar_canonical(const CliffordScalar& x) { return x; }

namespace {

using Wide = __int128;
using WideCoeffs = std::array<Wide, 4>;

WideCoeffs wide_mul(const WideCoeffs& x, const WideCoeffs& y) {
    WideCoeffs r{0, 0, 0, 0};
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            const Wide p = x[s] * y[t];
            const int e = s + t;
            if (e < 4) {
                r[e] += p;
            } else {
                r[e - 4] -= p;
            }
        }
    }
    return r;
}

// Galois conjugate w -> w^j for odd j.
WideCoeffs galois(const WideCoeffs& x, int j) {
    WideCoeffs r{0, 0, 0, 0};
    for (int t = 0; t < 4; ++t) {
        const int e = (t * j) % 8;
        if (e < 4) {
            r[e] += x[t];
        } else {
            r[e - 4] -= x[t];
        }
    }
    return r;
}

WideCoeffs wide_sqrt2(const WideCoeffs& x) {
    return {x[1] - x[3], x[0] + x[2], x[1] + x[3], x[2] - x[0]};
}

} // namespace

std::optional<CliffordScalar> scalar_ratio(const CliffordScalar& num, const CliffordScalar& den) {
    if (den.is_zero()) {
        throw Error("scalar_ratio: division by zero");
    }
    if (num.is_zero()) {
        return CliffordScalar::zero();
    }
    const WideCoeffs nu{num.a(), num.b(), num.c(), num.d()};
    const WideCoeffs de{den.a(), den.b(), den.c(), den.d()};
    // num/den = nu * G / N with G the product of the three nontrivial Galois
    // conjugates of den and N = den * G, an ordinary integer.
    const WideCoeffs g = wide_mul(galois(de, 3), wide_mul(galois(de, 5), galois(de, 7)));
    const WideCoeffs nd = wide_mul(de, g);
    if (nd[1] != 0 || nd[2] != 0 || nd[3] != 0) {
        throw Error("scalar_ratio: norm is not rational");
    }
    Wide n = nd[0];
    WideCoeffs p = wide_mul(nu, g);
    int e = num.k() - den.k();
    while (e < 0) {
        p = wide_sqrt2(p);
        ++e;
    }
    if (n < 0) {
        n = -n;
        for (auto& v : p) {
            v = -v;
        }
    }
    int s = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++s;
    }
    // Ratio = p / (n * sqrt2^(2s + e)); a ring element iff the odd part divides p.
    if (n != 1) {
        for (const auto& v : p) {
            if (v % n != 0) {
                return std::nullopt;
            }
        }
        for (auto& v : p) {
            v /= n;
        }
    }
    constexpr Wide kMax = INT64_MAX;
    for (const auto& v : p) {
        if (v > kMax || v < -kMax) {
            return std::nullopt;
        }
    }
    return CliffordScalar(static_cast<std::int64_t>(p[0]), static_cast<std::int64_t>(p[1]),
                          static_cast<std::int64_t>(p[2]), static_cast<std::int64_t>(p[3]),
                          2 * s + e);
}

} // namespace stabrw
