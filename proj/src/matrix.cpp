#include "stabrw/matrix.hpp"

#include <sstream>

namespace stabrw {

ExactMatrix::ExactMatrix(int out_qubits, int in_qubits) : m_(out_qubits), n_(in_qubits) {
    if (m_ < 0 || n_ < 0 || m_ > kMaxQubits || n_ > kMaxQubits) {
        throw Error("ExactMatrix: arity out of range (max " + std::to_string(kMaxQubits) +
                    " qubits per side)");
    }
    data_.assign(rows() * cols(), CliffordScalar::zero());
}

ExactMatrix ExactMatrix::identity(int qubits) {
    ExactMatrix m(qubits, qubits);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m.at(i, i) = CliffordScalar::one();
    }
    return m;
}

ExactMatrix ExactMatrix::scalar(const CliffordScalar& s) {
    ExactMatrix m(0, 0);
    m.at(0, 0) = s;
    return m;
}

bool ExactMatrix::operator==(const ExactMatrix& other) const {
    return m_ == other.m_ && n_ == other.n_ && data_ == other.data_;
}

bool ExactMatrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    os << rows() << "x" << cols() << " [";
    for (std::size_t r = 0; r < rows(); ++r) {
        os << (r == 0 ? "[" : " [");
        for (std::size_t c = 0; c < cols(); ++c) {
            os << at(r, c).str() << (c + 1 < cols() ? ", " : "");
        }
        os << "]" << (r + 1 < rows() ? "\n" : "");
    }
    os << "]";
    return os.str();
}

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.in_qubits() != b.out_qubits()) {
        throw Error("mat_mul: dimension mismatch");
    }
    ExactMatrix r(a.out_qubits(), b.in_qubits());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const CliffordScalar& aik = a.at(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const CliffordScalar& bkj = b.at(k, j);
                if (!bkj.is_zero()) {
                    r.at(i, j) = r.at(i, j) + aik * bkj;
                }
            }
        }
    }
    return r;
}

ExactMatrix mat_tensor(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix r(a.out_qubits() + b.out_qubits(), a.in_qubits() + b.in_qubits());
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            if (a.at(ra, ca).is_zero()) {
                continue;
            }
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    r.at(ra * b.rows() + rb, ca * b.cols() + cb) = a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    return r;
}

ExactMatrix mat_scale(const ExactMatrix& a, const CliffordScalar& s) {
    ExactMatrix r(a.out_qubits(), a.in_qubits());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r.at(i, j) = a.at(i, j) * s;
        }
    }
    return r;
}

ProportionalVerdict mat_proportional(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.out_qubits() != b.out_qubits() || a.in_qubits() != b.in_qubits()) {
        throw Error("mat_proportional: dimension mismatch");
    }
    ProportionalVerdict v;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    std::size_t pr = rows;
    std::size_t pc = cols;
    for (std::size_t r = 0; r < rows && pr == rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (!a.at(r, c).is_zero() || !b.at(r, c).is_zero()) {
                pr = r;
                pc = c;
                break;
            }
        }
    }
    if (pr == rows) {
        v.kind = ProportionalVerdict::Kind::BothZero;
        return v;
    }
    const CliffordScalar& a0 = a.at(pr, pc);
    const CliffordScalar& b0 = b.at(pr, pc);
    if (a0.is_zero() || b0.is_zero()) {
        v.kind = ProportionalVerdict::Kind::Different;
        v.witness_row = pr;
        v.witness_col = pc;
        return v;
    }
    // Cross-multiplication test: A = lambda*B with lambda = a0/b0 iff
    // A[i,j]*b0 == B[i,j]*a0 everywhere. No division involved.
    bool all_equal = true;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (a.at(r, c) * b0 != b.at(r, c) * a0) {
                v.kind = ProportionalVerdict::Kind::Different;
                v.witness_row = r;
                v.witness_col = c;
                return v;
            }
            if (a.at(r, c) != b.at(r, c)) {
                all_equal = false;
            }
        }
    }
    if (all_equal) {
        v.kind = ProportionalVerdict::Kind::Equal;
        v.lambda = CliffordScalar::one();
        return v;
    }
    v.kind = ProportionalVerdict::Kind::Proportional;
    if (auto lam = scalar_ratio(a0, b0)) {
        v.lambda = *lam;
    } else if (auto inv = scalar_ratio(b0, a0)) {
        v.lambda = *inv;
        v.lambda_inverted = true;
    }
    return v;
}

} // namespace stabrw
