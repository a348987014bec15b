#pragma once

#include "bloch/types.hpp"

namespace bloch {

Matrix kron(const Matrix& A, const Matrix& B);

/// exp(A) for a general complex matrix (Pade scaling-and-squaring).
Matrix expm(const Matrix& A);

/// Deterministic eigendecomposition of a Hermitian matrix: eigenvalues sorted
/// descending; inside each degenerate cluster the basis is the Gram-Schmidt
/// orthonormalization of the projected coordinate axes, columns ordered by the
/// index of their largest-magnitude component, that component phase-fixed to
/// be real positive.
struct CanonicalEigen {
    Matrix vectors;
    std::vector<double> values;
};
CanonicalEigen canonical_eigenbasis(const Matrix& H, double cluster_tol = 1e-8);

}  // namespace bloch
