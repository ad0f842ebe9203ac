// SPDX-License-Identifier: Apache-2.0
#include "sicb/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace sicb {

bool is_hermitian(const arma::cx_mat& a, double tol) {
    if (a.n_rows != a.n_cols) return false;
    for (arma::uword j = 0; j < a.n_cols; ++j) {
        for (arma::uword i = 0; i <= j; ++i) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
        }
    }
    return true;
}

UpperTriangular cholesky_upper(const arma::cx_mat& a, FlopCounter* fc,
                               const NumericsOptions& opt) {
    const arma::uword n = a.n_rows;
    if (n == 0 || a.n_cols != n) throw DimensionMismatch("cholesky_upper: matrix must be square, dim >= 1");

    double max_diag = 0.0;
    for (arma::uword i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i).real()));
    const double cutoff = opt.chol_pivot_rel * max_diag;

    arma::cx_mat u(n, n, arma::fill::zeros);
    for (arma::uword i = 0; i < n; ++i) {
        // pivot: a(i,i) - sum_{k<i} |u(k,i)|^2
        double piv = a(i, i).real();
        for (arma::uword k = 0; k < i; ++k) piv -= std::norm(u(k, i));
        if (piv <= cutoff)
            throw NotPositiveDefinite("cholesky_upper: pivot " + std::to_string(piv) +
                                      " at index " + std::to_string(i));
        const double d = std::sqrt(piv);
        u(i, i) = cx(d, 0.0);
        for (arma::uword j = i + 1; j < n; ++j) {
            cx s = a(i, j);
            for (arma::uword k = 0; k < i; ++k) s -= std::conj(u(k, i)) * u(k, j);
            u(i, j) = s / d;
        }
    }
    if (fc) {
        const std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
        fc->complex_mul += n3 / 6;
        fc->complex_add += n3 / 6;
        fc->real_op += 2 * n;
    }
    return UpperTriangular{std::move(u)};
}

double min_eigenvalue(const arma::cx_mat& a, FlopCounter* fc) {
    const arma::uword n = a.n_rows;
    if (n == 0 || a.n_cols != n) throw DimensionMismatch("min_eigenvalue: matrix must be square");
    arma::vec ev;
    if (!arma::eig_sym(ev, a))
        throw NonConvergence("min_eigenvalue: eigendecomposition failed");
    if (fc) {
        const std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
        fc->complex_mul += 4 * n3 / 3;
        fc->complex_add += 4 * n3 / 3;
        fc->real_op += 20 * static_cast<std::uint64_t>(n) * n;
    }
    return ev.min();
}

namespace {

// Residual rhs - a*x accumulated in extended precision, so refinement keeps
// converging on ill-conditioned systems.
arma::cx_vec residual_ext(const arma::cx_mat& a, const arma::cx_vec& x,
                          const arma::cx_vec& rhs) {
    const arma::uword n = a.n_rows;
    arma::cx_vec r(n);
    for (arma::uword i = 0; i < n; ++i) {
        long double re = static_cast<long double>(rhs(i).real());
        long double im = static_cast<long double>(rhs(i).imag());
        for (arma::uword j = 0; j < n; ++j) {
            const cx aij = a(i, j);
            const cx xj = x(j);
            re -= static_cast<long double>(aij.real()) * xj.real() -
                  static_cast<long double>(aij.imag()) * xj.imag();
            im -= static_cast<long double>(aij.real()) * xj.imag() +
                  static_cast<long double>(aij.imag()) * xj.real();
        }
        r(i) = cx(static_cast<double>(re), static_cast<double>(im));
    }
    return r;
}

// Forward/back substitution against the canonical factor.
arma::cx_vec chol_solve(const UpperTriangular& u, const arma::cx_vec& rhs) {
    const arma::uword n = u.dim();
    arma::cx_vec y(n);
    for (arma::uword i = 0; i < n; ++i) { // U^H y = rhs (U^H is lower triangular)
        cx s = rhs(i);
        for (arma::uword k = 0; k < i; ++k) s -= std::conj(u.m(k, i)) * y(k);
        y(i) = s / u.diag(i);
    }
    arma::cx_vec x(n);
    for (arma::uword ii = n; ii-- > 0;) { // U x = y
        cx s = y(ii);
        for (arma::uword k = ii + 1; k < n; ++k) s -= u.m(ii, k) * x(k);
        x(ii) = s / u.diag(ii);
    }
    return x;
}

} // namespace

arma::cx_vec solve_hermitian(const arma::cx_mat& a, const arma::cx_vec& rhs, FlopCounter* fc) {
    const arma::uword n = a.n_rows;
    if (rhs.n_elem != n) throw DimensionMismatch("solve_hermitian: rhs length mismatch");
    const UpperTriangular u = cholesky_upper(a, fc);
    arma::cx_vec x = chol_solve(u, rhs);
    const double rhs_norm = arma::norm(rhs);
    for (int step = 0; step < 4; ++step) {
        const arma::cx_vec r = residual_ext(a, x, rhs);
        if (arma::norm(r) <= 1e-14 * rhs_norm) break;
        x += chol_solve(u, r);
    }
    if (fc) {
        const std::uint64_t n2 = static_cast<std::uint64_t>(n) * n;
        fc->complex_mul += 5 * n2;
        fc->complex_add += 5 * n2;
    }
    return x;
}

arma::cx_vec vectorize(const arma::cx_mat& m) {
    return arma::vectorise(m);
}

double quad_form(const arma::cx_vec& x, const arma::cx_mat& a, FlopCounter* fc) {
    const arma::uword n = x.n_elem;
    if (a.n_rows != n || a.n_cols != n) throw DimensionMismatch("quad_form: dimension mismatch");
    cx acc(0.0, 0.0);
    const cx* ap = a.memptr();
    for (arma::uword j = 0; j < n; ++j) {
        cx col(0.0, 0.0);
        for (arma::uword i = 0; i < n; ++i) col += std::conj(x(i)) * ap[j * n + i];
        acc += col * x(j);
    }
    if (fc) {
        const std::uint64_t n2 = static_cast<std::uint64_t>(n) * n;
        fc->complex_mul += n2 + n;
        fc->complex_add += n2 + n;
        fc->real_op += 1;
    }
    return acc.real();
}

} // namespace sicb
