#pragma once

// Rational symplectic matrices, generator words in DiagA / LowerC / J, and
// the length <= 4 factorization for n = 1.  The metaplectic double cover is
// represented extensionally: words act on probe vectors through the
// oscillator operators, and the cocycle checks live there.

#include <variant>
#include <vector>

#include "qlinalg.hpp"

namespace jetweil {

inline QMatrix symplectic_form(size_t n) {
    QMatrix omega(2 * n, 2 * n);
    for (size_t j = 0; j < n; ++j) {
        omega.at(j, n + j) = 1;
        omega.at(n + j, j) = -1;
    }
    return omega;
}

struct SymplecticMatrix {
    QMatrix m;

    explicit SymplecticMatrix(QMatrix mat) : m(std::move(mat)) {
        if (m.rows != m.cols || m.rows % 2 != 0) throw NotInSp("matrix must be 2n x 2n");
        QMatrix omega = symplectic_form(m.rows / 2);
        if (!(m.transpose() * omega * m == omega)) throw NotInSp("M^t Omega M != Omega");
    }

    size_t n() const { return m.rows / 2; }
    bool operator==(const SymplecticMatrix& o) const { return m == o.m; }
};

// Generators of Sp(2n, Q)
struct DiagGen {
    QMatrix A;  // invertible n x n
};
struct LowerGen {
    QMatrix C;  // symmetric n x n
};
struct JGen {};

using Generator = std::variant<DiagGen, LowerGen, JGen>;

inline QMatrix generator_matrix(const Generator& g, size_t n) {
    QMatrix m(2 * n, 2 * n);
    if (std::holds_alternative<DiagGen>(g)) {
        const QMatrix& A = std::get<DiagGen>(g).A;
        if (A.rows != n || A.cols != n) throw NotAGenerator("diag block has wrong size");
        if (FieldOps<Rational>::is_zero(A.det())) throw NotAGenerator("diag block is singular");
        QMatrix Ait = A.inverse().transpose();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                m.at(i, j) = A.at(i, j);
                m.at(n + i, n + j) = Ait.at(i, j);
            }
    } else if (std::holds_alternative<LowerGen>(g)) {
        const QMatrix& C = std::get<LowerGen>(g).C;
        if (C.rows != n || C.cols != n || !C.is_symmetric()) throw NotAGenerator("lower block must be symmetric");
        for (size_t i = 0; i < n; ++i) {
            m.at(i, i) = 1;
            m.at(n + i, n + i) = 1;
            for (size_t j = 0; j < n; ++j) m.at(n + i, j) = C.at(i, j);
        }
    } else {
        return symplectic_form(n);
    }
    return m;
}

struct GeneratorWord {
    size_t n = 1;
    std::vector<Generator> gens;  // leftmost acts last

    GeneratorWord() = default;
    GeneratorWord(size_t n_, std::vector<Generator> g) : n(n_), gens(std::move(g)) {}
};

inline SymplecticMatrix word_product(const GeneratorWord& w) {
    QMatrix m = QMatrix::identity(2 * w.n);
    for (const auto& g : w.gens) m = m * generator_matrix(g, w.n);
    return SymplecticMatrix(m);
}

inline QMatrix mat1(const Rational& v) {
    QMatrix m(1, 1);
    m.at(0, 0) = v;
    return m;
}

// Factors M in SL(2, Q) into at most 4 generators:
//   b != 0:  M = LowerC(d/b) DiagA(b) J LowerC(a/b)
//   b == 0:  M = DiagA(a) LowerC(c a)
// Only n = 1 is supported; larger n supply words directly.
inline GeneratorWord factorize(const SymplecticMatrix& sm) {
    if (sm.n() != 1) throw NotImplementedFactorization();
    const QMatrix& m = sm.m;
    Rational a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
    GeneratorWord w(1, {});
    if (sgn(b) != 0) {
        if (sgn(d) != 0) w.gens.push_back(LowerGen{mat1(d / b)});
        if (b != 1) w.gens.push_back(DiagGen{mat1(b)});
        w.gens.push_back(JGen{});
        if (sgn(a) != 0) w.gens.push_back(LowerGen{mat1(a / b)});
    } else {
        if (a != 1 || sgn(c) == 0) w.gens.push_back(DiagGen{mat1(a)});
        if (sgn(c) != 0) w.gens.push_back(LowerGen{mat1(c * a)});
    }
    return w;
}

}  // namespace jetweil
