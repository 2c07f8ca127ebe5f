#include "stabrw/tableau.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace stabrw {

namespace {

// Aaronson-Gottesman phase function for multiplying single-qubit Paulis.
int g_phase(int x1, int z1, int x2, int z2) {
    if (x1 == 0 && z1 == 0) {
        return 0;
    }
    if (x1 == 1 && z1 == 1) {
        return z2 - x2;
    }
    if (x1 == 1) {
        return z2 * (2 * x2 - 1);
    }
    return x2 * (1 - 2 * z2);
}

struct Rows {
    std::vector<std::vector<std::uint8_t>> x;
    std::vector<std::vector<std::uint8_t>> z;
    std::vector<std::uint8_t> sign;

    int n_rows() const { return static_cast<int>(x.size()); }
    int n_cols() const { return x.empty() ? 0 : static_cast<int>(x[0].size()); }

    // row h *= row i
    void rowsum(int h, int i) {
        int total = 2 * sign[h] + 2 * sign[i];
        for (int q = 0; q < n_cols(); ++q) {
            total += g_phase(x[i][q], z[i][q], x[h][q], z[h][q]);
            x[h][q] ^= x[i][q];
            z[h][q] ^= z[i][q];
        }
        total = ((total % 4) + 4) % 4;
        if (total != 0 && total != 2) {
            throw Error("tableau rowsum produced a non-Hermitian phase");
        }
        sign[h] = static_cast<std::uint8_t>(total / 2);
    }

    bool commute(int i, int j) const {
        int s = 0;
        for (int q = 0; q < n_cols(); ++q) {
            s ^= (x[i][q] & z[j][q]) ^ (x[j][q] & z[i][q]);
        }
        return s == 0;
    }
};

Rows to_rows(const StabTableau& t) { return Rows{t.x, t.z, t.sign}; }

StabTableau from_rows(const Rows& r, int qubits) {
    StabTableau t;
    t.qubits = qubits;
    t.x = r.x;
    t.z = r.z;
    t.sign = r.sign;
    return t;
}

void rref(Rows& r) {
    const int n = r.n_cols();
    int rank = 0;
    for (int col = 0; col < 2 * n && rank < r.n_rows(); ++col) {
        const bool is_x = col < n;
        const int q = is_x ? col : col - n;
        int pivot = -1;
        for (int i = rank; i < r.n_rows(); ++i) {
            if ((is_x ? r.x[i][q] : r.z[i][q]) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(r.x[rank], r.x[pivot]);
        std::swap(r.z[rank], r.z[pivot]);
        std::swap(r.sign[rank], r.sign[pivot]);
        for (int i = 0; i < r.n_rows(); ++i) {
            if (i != rank && (is_x ? r.x[i][q] : r.z[i][q]) != 0) {
                r.rowsum(i, rank);
            }
        }
        ++rank;
    }
    if (rank < r.n_rows()) {
        throw Error("tableau generators are dependent");
    }
}

} // namespace

StabTableau tableau_from_paulis(const std::vector<std::string>& rows) {
    StabTableau t;
    if (rows.empty()) {
        return t;
    }
    for (const auto& s : rows) {
        if (s.size() < 2 || (s[0] != '+' && s[0] != '-')) {
            throw Error("pauli row must look like \"+XZ...\"");
        }
        std::vector<std::uint8_t> xr;
        std::vector<std::uint8_t> zr;
        for (std::size_t i = 1; i < s.size(); ++i) {
            switch (s[i]) {
            case 'I': xr.push_back(0); zr.push_back(0); break;
            case 'X': xr.push_back(1); zr.push_back(0); break;
            case 'Y': xr.push_back(1); zr.push_back(1); break;
            case 'Z': xr.push_back(0); zr.push_back(1); break;
            default: throw Error("unknown pauli letter");
            }
        }
        t.x.push_back(std::move(xr));
        t.z.push_back(std::move(zr));
        t.sign.push_back(s[0] == '-' ? 1 : 0);
    }
    t.qubits = static_cast<int>(t.x[0].size());
    for (const auto& r : t.x) {
        if (static_cast<int>(r.size()) != t.qubits) {
            throw Error("pauli rows have inconsistent lengths");
        }
    }
    return t;
}

std::string tableau_str(const StabTableau& t) {
    if (t.zero) {
        return "ZERO\n";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        os << (t.sign[i] ? '-' : '+');
        for (int q = 0; q < t.qubits; ++q) {
            const int xb = t.x[i][q];
            const int zb = t.z[i][q];
            os << (xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
        }
        os << "\n";
    }
    return os.str();
}

StabTableau tableau_canonical(const StabTableau& t) {
    if (t.zero) {
        return t;
    }
    Rows r = to_rows(t);
    for (int i = 0; i < r.n_rows(); ++i) {
        for (int j = i + 1; j < r.n_rows(); ++j) {
            if (!r.commute(i, j)) {
                throw Error("tableau generators anticommute");
            }
        }
    }
    rref(r);
    return from_rows(r, t.qubits);
}

namespace {

// Live tableau simulation over labelled qubits.
class Sim {
public:
    void add_qubit(const std::string& label, bool plus_basis) {
        for (int i = 0; i < rows_.n_rows(); ++i) {
            rows_.x[i].push_back(0);
            rows_.z[i].push_back(0);
        }
        cols_.push_back(label);
        std::vector<std::uint8_t> xr(cols_.size(), 0);
        std::vector<std::uint8_t> zr(cols_.size(), 0);
        if (plus_basis) {
            xr.back() = 1;
        } else {
            zr.back() = 1;
        }
        // pad existing width bookkeeping: all rows already extended above
        rows_.x.push_back(std::move(xr));
        rows_.z.push_back(std::move(zr));
        rows_.sign.push_back(0);
    }

    int col(const std::string& label) const {
        for (int i = 0; i < static_cast<int>(cols_.size()); ++i) {
            if (cols_[i] == label) {
                return i;
            }
        }
        throw Error("internal: unknown qubit label");
    }

    void apply_h(int q) {
        for (int i = 0; i < rows_.n_rows(); ++i) {
            rows_.sign[i] ^= rows_.x[i][q] & rows_.z[i][q];
            std::swap(rows_.x[i][q], rows_.z[i][q]);
        }
    }

    void apply_rz(int q, int phase) {
        for (int k = 0; k < ((phase % 4) + 4) % 4; ++k) {
            for (int i = 0; i < rows_.n_rows(); ++i) {
                rows_.sign[i] ^= rows_.x[i][q] & rows_.z[i][q];
                rows_.z[i][q] ^= rows_.x[i][q];
            }
        }
    }

    void apply_rx(int q, int phase) {
        for (int k = 0; k < ((phase % 4) + 4) % 4; ++k) {
            for (int i = 0; i < rows_.n_rows(); ++i) {
                rows_.sign[i] ^= rows_.z[i][q] & static_cast<std::uint8_t>(rows_.x[i][q] ^ 1);
                rows_.x[i][q] ^= rows_.z[i][q];
            }
        }
    }

    void apply_cnot(int c, int t) {
        for (int i = 0; i < rows_.n_rows(); ++i) {
            rows_.sign[i] ^= rows_.x[i][c] & rows_.z[i][t] &
                             static_cast<std::uint8_t>(rows_.x[i][t] ^ rows_.z[i][c] ^ 1);
            rows_.x[i][t] ^= rows_.x[i][c];
            rows_.z[i][c] ^= rows_.z[i][t];
        }
    }

    void apply_swap(int a, int b) {
        // Labels stay with their wires; the Pauli content moves.
        for (int i = 0; i < rows_.n_rows(); ++i) {
            std::swap(rows_.x[i][a], rows_.x[i][b]);
            std::swap(rows_.z[i][a], rows_.z[i][b]);
        }
    }

    /// Project onto the +1 eigenspace of Z_q (x_basis=false) or X_q and drop
    /// the qubit. Returns false when the opposite outcome is deterministic.
    bool postselect(int q, bool x_basis) {
        auto anti = [&](int i) {
            return (x_basis ? rows_.z[i][q] : rows_.x[i][q]) != 0;
        };
        int p = -1;
        for (int i = 0; i < rows_.n_rows(); ++i) {
            if (anti(i)) {
                p = i;
                break;
            }
        }
        if (p >= 0) {
            // Random outcome: fix it to +1.
            for (int i = p + 1; i < rows_.n_rows(); ++i) {
                if (anti(i)) {
                    rows_.rowsum(i, p);
                }
            }
            std::fill(rows_.x[p].begin(), rows_.x[p].end(), 0);
            std::fill(rows_.z[p].begin(), rows_.z[p].end(), 0);
            (x_basis ? rows_.x[p][q] : rows_.z[p][q]) = 1;
            rows_.sign[p] = 0;
        } else {
            // Deterministic: express +-P as a product of generators.
            p = solve_membership(q, x_basis);
            if (rows_.sign[p] != 0) {
                return false;
            }
        }
        // Row p is now exactly +P on q; clear q from the other rows and drop it.
        for (int i = 0; i < rows_.n_rows(); ++i) {
            if (i != p && (rows_.x[i][q] | rows_.z[i][q]) != 0) {
                rows_.rowsum(i, p);
            }
        }
        erase_row(p);
        erase_col(q);
        return true;
    }

    StabTableau finish(const std::vector<std::string>& order) const {
        if (order.size() != cols_.size()) {
            throw Error("internal: qubit count mismatch at finish");
        }
        StabTableau t;
        t.qubits = static_cast<int>(order.size());
        std::vector<int> perm;
        for (const auto& label : order) {
            perm.push_back(col(label));
        }
        for (int i = 0; i < rows_.n_rows(); ++i) {
            std::vector<std::uint8_t> xr;
            std::vector<std::uint8_t> zr;
            for (const int q : perm) {
                xr.push_back(rows_.x[i][q]);
                zr.push_back(rows_.z[i][q]);
            }
            t.x.push_back(std::move(xr));
            t.z.push_back(std::move(zr));
            t.sign.push_back(rows_.sign[i]);
        }
        return t;
    }

private:
    Rows rows_;
    std::vector<std::string> cols_;

    void erase_row(int p) {
        rows_.x.erase(rows_.x.begin() + p);
        rows_.z.erase(rows_.z.begin() + p);
        rows_.sign.erase(rows_.sign.begin() + p);
    }

    void erase_col(int q) {
        for (int i = 0; i < rows_.n_rows(); ++i) {
            rows_.x[i].erase(rows_.x[i].begin() + q);
            rows_.z[i].erase(rows_.z[i].begin() + q);
        }
        cols_.erase(cols_.begin() + q);
    }

    // Find the subset of generators whose product is +-P (P = Z_q or X_q),
    // realize the product in one of the participating rows, return its index.
    int solve_membership(int q, bool x_basis) {
        const int n = rows_.n_cols();
        const int m = rows_.n_rows();
        // Gaussian elimination on a copy, tracking row combinations.
        std::vector<std::vector<std::uint8_t>> a(m, std::vector<std::uint8_t>(2 * n, 0));
        std::vector<std::vector<std::uint8_t>> comb(m, std::vector<std::uint8_t>(m, 0));
        for (int i = 0; i < m; ++i) {
            for (int c = 0; c < n; ++c) {
                a[i][c] = rows_.x[i][c];
                a[i][n + c] = rows_.z[i][c];
            }
            comb[i][i] = 1;
        }
        std::vector<std::uint8_t> target(2 * n, 0);
        target[x_basis ? q : n + q] = 1;
        std::vector<std::uint8_t> target_comb(m, 0);
        int rank = 0;
        for (int c = 0; c < 2 * n && rank < m; ++c) {
            int pivot = -1;
            for (int i = rank; i < m; ++i) {
                if (a[i][c]) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) {
                continue;
            }
            std::swap(a[rank], a[pivot]);
            std::swap(comb[rank], comb[pivot]);
            for (int i = 0; i < m; ++i) {
                if (i != rank && a[i][c]) {
                    for (int j = 0; j < 2 * n; ++j) {
                        a[i][j] ^= a[rank][j];
                    }
                    for (int j = 0; j < m; ++j) {
                        comb[i][j] ^= comb[rank][j];
                    }
                }
            }
            if (target[c]) {
                for (int j = 0; j < 2 * n; ++j) {
                    target[j] ^= a[rank][j];
                }
                for (int j = 0; j < m; ++j) {
                    target_comb[j] ^= comb[rank][j];
                }
            }
            ++rank;
        }
        if (std::any_of(target.begin(), target.end(), [](std::uint8_t b) { return b != 0; })) {
            throw Error("internal: commuting pauli not in the stabilizer group");
        }
        // Multiply the participating rows into the first of them.
        int first = -1;
        for (int j = 0; j < m; ++j) {
            if (target_comb[j]) {
                first = j;
                break;
            }
        }
        if (first < 0) {
            throw Error("internal: empty membership combination");
        }
        for (int j = first + 1; j < m; ++j) {
            if (target_comb[j]) {
                rows_.rowsum(first, j);
            }
        }
        return first;
    }
};

} // namespace

StabTableau choi_tableau(const Circuit& c) {
    Sim sim;
    std::vector<std::string> refs;
    // One Bell pair per input: prepare |0>|0> and entangle by H + CNOT, which
    // stabilizes {XX, ZZ}.
    for (int i = 0; i < c.num_inputs(); ++i) {
        const std::string ref = "ref." + std::to_string(i);
        const std::string sys = c.inputs()[i];
        sim.add_qubit(ref, false);
        sim.add_qubit(sys, false);
        sim.apply_h(sim.col(ref));
        sim.apply_cnot(sim.col(ref), sim.col(sys));
        refs.push_back(ref);
    }
    for (const auto& g : c.gates()) {
        switch (g.kind) {
        case GateKind::Cnot:
            sim.apply_cnot(sim.col(g.wires[0]), sim.col(g.wires[1]));
            break;
        case GateKind::Swap:
            sim.apply_swap(sim.col(g.wires[0]), sim.col(g.wires[1]));
            break;
        case GateKind::H:
            sim.apply_h(sim.col(g.wires[0]));
            break;
        case GateKind::RotZ:
            sim.apply_rz(sim.col(g.wires[0]), g.phase);
            break;
        case GateKind::RotX:
            sim.apply_rx(sim.col(g.wires[0]), g.phase);
            break;
        case GateKind::Prep0:
            sim.add_qubit(g.wires[0], false);
            break;
        case GateKind::PrepPlus:
            sim.add_qubit(g.wires[0], true);
            break;
        case GateKind::Post0:
        case GateKind::PostPlus:
            if (!sim.postselect(sim.col(g.wires[0]), g.kind == GateKind::PostPlus)) {
                StabTableau t;
                t.zero = true;
                return t;
            }
            break;
        }
    }
    std::vector<std::string> order = refs;
    order.insert(order.end(), c.outputs().begin(), c.outputs().end());
    return tableau_canonical(sim.finish(order));
}

ProportionalVerdict equiv_exact(const Circuit& c1, const Circuit& c2) {
    if (c1.num_inputs() != c2.num_inputs() || c1.num_outputs() != c2.num_outputs()) {
        throw Error("equiv_exact: arity mismatch");
    }
    return mat_proportional(circuit_to_matrix(c1), circuit_to_matrix(c2));
}

bool equiv_tableau(const Circuit& c1, const Circuit& c2) {
    if (c1.num_inputs() != c2.num_inputs() || c1.num_outputs() != c2.num_outputs()) {
        throw Error("equiv_tableau: arity mismatch");
    }
    const StabTableau t1 = choi_tableau(c1);
    const StabTableau t2 = choi_tableau(c2);
    if (t1.zero || t2.zero) {
        return t1.zero == t2.zero;
    }
    return t1.qubits == t2.qubits && t1.x == t2.x && t1.z == t2.z && t1.sign == t2.sign;
}

} // namespace stabrw
