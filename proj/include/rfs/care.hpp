#pragma once

#include "rfs/types.hpp"

namespace rfs {

/// Symmetric solution of A^T X + X A - X W X + Q = 0 obtained from the
/// invariant subspace of the Hamiltonian [[A, -W], [-Q, -A^T]].
/// `stable` selects the stabilizing branch (closed-loop spectrum in the open
/// left half-plane); `stable = false` selects the anti-stabilizing branch.
/// Throws SolvabilityError when the requested branch does not exist.
Matrix care_branch(const Matrix& A, const Matrix& W, const Matrix& Q, bool stable);

/// Stabilizing solution of A^T X + X A - X B R^{-1} B^T X + Q = 0.
Matrix care_stabilizing(const Matrix& A, const Matrix& B, const Matrix& Q,
                        const Matrix& R);

/// Solution of the Lyapunov equation A^T P + P A = -Q (dense Kronecker solve).
Matrix solve_lyapunov(const Matrix& A, const Matrix& Q);

/// Largest real part over the spectrum of A.
double spectral_abscissa(const Matrix& A);

/// Smallest eigenvalue of a symmetric matrix.
double min_eig_sym(const Matrix& S);

/// Largest eigenvalue of a symmetric matrix.
double max_eig_sym(const Matrix& S);

}  // namespace rfs
