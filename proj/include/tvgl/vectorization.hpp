#ifndef TVGL_VECTORIZATION_HPP
#define TVGL_VECTORIZATION_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>

namespace tvgl {

/// Half-vectorization of a symmetric N x N matrix: the lower triangle
/// including the diagonal, scanned column by column. Length N(N+1)/2.
struct HalfVec {
    int n = 0;
    Eigen::VectorXd values;
};

/// Hollow half-vectorization of a hollow symmetric N x N matrix: the strictly
/// lower triangle, scanned column by column. Length N(N-1)/2.
struct HollowHalfVec {
    int n = 0;
    Eigen::VectorXd values;
};

inline int h_dim(int n) { return n * (n + 1) / 2; }
inline int hh_dim(int n) { return n * (n - 1) / 2; }

/// Index of entry (i, j), i >= j, within vech ordering (0-based).
inline int h_index(int n, int i, int j) {
    return j * n - j * (j - 1) / 2 + (i - j);
}

/// Index of entry (i, j), i > j, within vechh ordering (0-based).
inline int hh_index(int n, int i, int j) {
    return j * n - j * (j + 1) / 2 + (i - j - 1);
}

/// Sparse duplication/elimination operators for the h- and hh-spaces,
/// plus the node-degree operator K with d = S1 = K vechh(S).
/// Immutable after construction; safe to share between threads.
struct StructuredOperators {
    int n = 0;
    Eigen::SparseMatrix<double> dup;          // D,   N^2 x k
    Eigen::SparseMatrix<double> elim;         // E,   k x N^2
    Eigen::SparseMatrix<double> hollow_dup;   // D_h, N^2 x l
    Eigen::SparseMatrix<double> hollow_elim;  // E_h, l x N^2
    Eigen::SparseMatrix<double> degree_op;    // K,   N x l
};

using OperatorsPtr = std::shared_ptr<const StructuredOperators>;

/// Builds all five operators for an n-node graph. Requires n >= 2.
OperatorsPtr build_operators(int n);

/// Lifts a symmetric matrix into the h-space. The input is checked for
/// symmetry (relative tolerance 1e-12) and symmetrized before lifting.
HalfVec vech(const Eigen::MatrixXd& s);

/// Lifts a hollow symmetric matrix into the hh-space. Diagonal entries must
/// vanish within tolerance.
HollowHalfVec vechh(const Eigen::MatrixXd& s);

/// Reconstructs the symmetric matrix from h-space coordinates.
Eigen::MatrixXd unvech(const HalfVec& v);
Eigen::MatrixXd unvech(int n, const Eigen::VectorXd& values);

/// Reconstructs the hollow symmetric matrix from hh-space coordinates.
Eigen::MatrixXd unvechh(const HollowHalfVec& v);
Eigen::MatrixXd unvechh(int n, const Eigen::VectorXd& values);

/// D^T vec(M) for symmetric M, without materializing vec(M): diagonal entries
/// pass through, off-diagonal entries are doubled.
Eigen::VectorXd dup_t_vec(const Eigen::MatrixXd& m);

/// D_h^T vec(M) for symmetric M: strictly-lower entries doubled.
Eigen::VectorXd hollow_dup_t_vec(const Eigen::MatrixXd& m);

}  // namespace tvgl

#endif
