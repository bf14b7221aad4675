#pragma once

#include <vector>

#include "k3/scalar.hpp"

namespace k3 {

using QMat = std::vector<std::vector<Q>>;
using ZMat = std::vector<std::vector<Z>>;

std::size_t rows(const QMat& m);
std::size_t cols(const QMat& m);
std::size_t rows(const ZMat& m);
std::size_t cols(const ZMat& m);

QMat q_identity(std::size_t n);
ZMat z_identity(std::size_t n);
QMat q_mul(const QMat& a, const QMat& b);
ZMat z_mul(const ZMat& a, const ZMat& b);
QMat q_transpose(const QMat& m);
ZMat z_transpose(const ZMat& m);
QMat to_q(const ZMat& m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);
Q det(QMat m);
Z det(const ZMat& m);  // Bareiss, fraction-free

// Kernel basis (column vectors x with m*x = 0).
std::vector<std::vector<Q>> kernel(const QMat& m);

// Integer kernel basis; saturated (primitive) because it comes from a
// unimodular transform.
std::vector<std::vector<Z>> kernel_z(const ZMat& m);

QMat inverse(const QMat& m);  // errors ("singular") when not invertible

// Smith normal form u*a*v = d with u, v unimodular, d diagonal,
// d[0][0] | d[1][1] | ... ; diagonal entries nonnegative.
struct Snf {
    ZMat d, u, v;
};
Snf snf(const ZMat& a);

// Basis of the row lattice (Hermite-style). Rows of the result are
// independent and generate the same lattice as the input rows.
ZMat row_lattice_basis(const ZMat& m);

// Diagonalizes a symmetric rational matrix by congruence; returns the
// diagonal of S*G*S^T.
std::vector<Q> congruence_diagonal(QMat g);

// Signature (positive, negative, zero counts) of a symmetric matrix.
struct Signature {
    int pos = 0, neg = 0, zero = 0;
};
Signature signature(const QMat& g);
Signature signature(const ZMat& g);

}  // namespace k3
