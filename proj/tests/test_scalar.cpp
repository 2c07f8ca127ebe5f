#include "stabrw/scalar.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using stabrw::CliffordScalar;

namespace {

bool close(std::complex<double> x, std::complex<double> y, double tol = 1e-12) {
    return std::abs(x - y) < tol;
}

CliffordScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-6, 6);
    std::uniform_int_distribution<int> denom(0, 3);
    return {coeff(rng), coeff(rng), coeff(rng), coeff(rng), denom(rng)};
}

} // namespace

TEST_CASE("scalar addition") {
    const auto one = CliffordScalar::one();
    const auto w = CliffordScalar::omega_pow(1);
    CHECK(one + one == CliffordScalar(2, 0, 0, 0, 0));
    CHECK(w + w == CliffordScalar(0, 2, 0, 0, 0));

    // 1/sqrt2 + 1/sqrt2 = sqrt2 = w - w^3; cross-checked in double precision.
    const auto s = CliffordScalar::inv_sqrt2() + CliffordScalar::inv_sqrt2();
    CHECK(s == CliffordScalar(0, 1, 0, -1, 0));
    CHECK(std::abs(s.value().real() - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(s.value().imag()) < 1e-12);
}

TEST_CASE("scalar multiplication") {
    const auto w = CliffordScalar::omega_pow(1);
    CHECK(w * w == CliffordScalar(0, 0, 1, 0, 0));
    CHECK(w * w == CliffordScalar::i());
    const auto w2 = CliffordScalar::omega_pow(2);
    CHECK(w2 * w2 == CliffordScalar(-1, 0, 0, 0, 0));

    const auto half = CliffordScalar::inv_sqrt2() * CliffordScalar::inv_sqrt2();
    CHECK(half == CliffordScalar(1, 0, 0, 0, 2));
    CHECK(close(half.value(), {0.5, 0.0}));
}

TEST_CASE("canonicalization") {
    CHECK(CliffordScalar(0, 0, 0, 0, 5) == CliffordScalar::zero());
    CHECK(CliffordScalar(0, 1, 0, -1, 1) == CliffordScalar::one());
    CHECK(CliffordScalar(2, 2, 0, 0, 2) == CliffordScalar(1, 1, 0, 0, 0));
    CHECK(close(CliffordScalar(2, 2, 0, 0, 2).value(), CliffordScalar(1, 1, 0, 0, 0).value()));
}

TEST_CASE("omega powers wrap with sign") {
    CHECK(CliffordScalar::omega_pow(4) == CliffordScalar::integer(-1));
    CHECK(CliffordScalar::omega_pow(-1) == CliffordScalar(0, 0, 0, -1, 0));
    CHECK(CliffordScalar::omega_pow(8) == CliffordScalar::one());
    for (int j = -8; j <= 8; ++j) {
        const double t = j * 3.14159265358979323846 / 4.0;
        CHECK(close(CliffordScalar::omega_pow(j).value(), std::polar(1.0, t), 1e-9));
    }
}

TEST_CASE("ring homomorphism against double precision") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = random_scalar(rng);
        const auto y = random_scalar(rng);
        CHECK(close((x + y).value(), x.value() + y.value(), 1e-9));
        CHECK(close((x * y).value(), x.value() * y.value(), 1e-9));
    }
}

TEST_CASE("canonical uniqueness") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = random_scalar(rng);
        const auto y = random_scalar(rng);
        const bool fieldwise = x == y;
        const bool difference_zero = (x - y).is_zero();
        CHECK(fieldwise == difference_zero);
    }
}

TEST_CASE("conjugation") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_scalar(rng);
        CHECK(close(x.conj().value(), std::conj(x.value()), 1e-9));
    }
}

TEST_CASE("exact ratios") {
    using stabrw::scalar_ratio;
    const auto two = CliffordScalar::integer(2);
    const auto r = scalar_ratio(two, CliffordScalar::sqrt2());
    REQUIRE(r.has_value());
    CHECK(*r == CliffordScalar::sqrt2());

    // 1/2 is representable (denominator a power of sqrt2), 1/3 is not.
    const auto half = scalar_ratio(CliffordScalar::one(), two);
    REQUIRE(half.has_value());
    CHECK(close(half->value(), {0.5, 0.0}));
    CHECK(!scalar_ratio(CliffordScalar::one(), CliffordScalar::integer(3)).has_value());

    std::mt19937 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto x = random_scalar(rng);
        auto y = random_scalar(rng);
        if (y.is_zero()) {
            y = CliffordScalar::one();
        }
        const auto q = scalar_ratio(x * y, y);
        REQUIRE(q.has_value());
        CHECK(*q == x);
    }
}

TEST_CASE("debug rendering") {
    CHECK(CliffordScalar(1, 0, 0, 0, 1).str() == "(1 + 0*w + 0*w^2 + 0*w^3)/sqrt2^1");
    CHECK(CliffordScalar::one().str() == "(1 + 0*w + 0*w^2 + 0*w^3)");
}
