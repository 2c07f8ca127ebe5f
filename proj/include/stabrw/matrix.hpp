#pragma once

#include "stabrw/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace stabrw {

/// Dense 2^m x 2^n matrix over CliffordScalar, row-major. The first tensor
/// factor is the most significant index bit. Hard cap of 12 qubits per side.
class ExactMatrix {
public:
    static constexpr int kMaxQubits = 12;

    ExactMatrix() : ExactMatrix(0, 0) {}
    ExactMatrix(int out_qubits, int in_qubits);

    static ExactMatrix identity(int qubits);
    static ExactMatrix scalar(const CliffordScalar& s);

    int out_qubits() const noexcept { return m_; }
    int in_qubits() const noexcept { return n_; }
    std::size_t rows() const noexcept { return std::size_t{1} << m_; }
    std::size_t cols() const noexcept { return std::size_t{1} << n_; }

    const CliffordScalar& at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
    CliffordScalar& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }

    bool operator==(const ExactMatrix& other) const;
    bool operator!=(const ExactMatrix& other) const { return !(*this == other); }

    bool is_zero() const;

    std::string str() const;

private:
    int m_ = 0;
    int n_ = 0;
    std::vector<CliffordScalar> data_;
};

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix mat_tensor(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix mat_scale(const ExactMatrix& a, const CliffordScalar& s);

/// Verdict of the scalar-equivalence test. `lambda` satisfies A = lambda * B
/// when representable in the ring; `lambda_inverted` means it satisfies
/// B = lambda * A instead. The test itself never divides (cross-multiplication
/// on the first nonzero entries), so the verdict kind is exact regardless.
struct ProportionalVerdict {
    enum class Kind { Equal, Proportional, BothZero, Different };
    Kind kind = Kind::Different;
    std::optional<CliffordScalar> lambda;
    bool lambda_inverted = false;
    std::size_t witness_row = 0;
    std::size_t witness_col = 0;

    bool not_different() const noexcept { return kind != Kind::Different; }
};

ProportionalVerdict mat_proportional(const ExactMatrix& a, const ExactMatrix& b);

} // namespace stabrw
