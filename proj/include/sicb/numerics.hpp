// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_NUMERICS_HPP
#define SICB_NUMERICS_HPP

#include <armadillo>
#include <complex>

#include "sicb/errors.hpp"
#include "sicb/flops.hpp"

namespace sicb {

using cx = std::complex<double>;

/// Tolerances for the dense Hermitian kernels. Defaults match the library
/// contract; override per call where a different scale is needed.
struct NumericsOptions {
    double chol_pivot_rel = 1e-14; ///< pivot cutoff, relative to the largest input diagonal
    double hermitian_tol = 1e-12;  ///< entrywise Hermitian symmetry tolerance
};

/// Canonical Cholesky factor: strictly lower part zero, diagonal real and
/// strictly positive, U^H U reproduces the input.
struct UpperTriangular {
    arma::cx_mat m;

    arma::uword dim() const { return m.n_rows; }
    double diag(arma::uword i) const { return m(i, i).real(); }
};

bool is_hermitian(const arma::cx_mat& a, double tol = 1e-12);

/// Factor a Hermitian positive definite matrix as a = U^H U.
/// Throws NotPositiveDefinite when a pivot falls at or below the relative
/// cutoff; callers performing diagonal shifts are expected to shift further
/// and retry.
UpperTriangular cholesky_upper(const arma::cx_mat& a, FlopCounter* fc = nullptr,
                               const NumericsOptions& opt = {});

/// Smallest eigenvalue of a Hermitian matrix, via full eigendecomposition.
/// Throws NonConvergence if the underlying solver fails.
double min_eigenvalue(const arma::cx_mat& a, FlopCounter* fc = nullptr);

/// Solve a x = rhs for Hermitian positive definite a (Cholesky + one step of
/// iterative refinement). NotPositiveDefinite propagates from factorization.
arma::cx_vec solve_hermitian(const arma::cx_mat& a, const arma::cx_vec& rhs,
                             FlopCounter* fc = nullptr);

/// Column-major stacking of a matrix into a vector.
arma::cx_vec vectorize(const arma::cx_mat& m);

/// real(x^H a x) for Hermitian a, with flop accounting.
double quad_form(const arma::cx_vec& x, const arma::cx_mat& a, FlopCounter* fc = nullptr);

} // namespace sicb

#endif
