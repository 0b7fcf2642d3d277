#pragma once

#include <Eigen/Dense>
#include <optional>

#include "gspec/errors.hpp"

namespace gspec {

/// Dense symmetric matrix, validated at construction: square, finite
/// entries, symmetric within 1e-12 relative tolerance.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Eigen::MatrixXd m);

    const Eigen::MatrixXd& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    Eigen::MatrixXd m_;
};

/// Eigenvalues ascending, eigenvectors orthonormal in matching column order.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
};

/// Extreme-eigenpair tuning knobs. Defaults satisfy the library-wide
/// accuracy contract (1e-8 relative agreement with eigendecompose).
struct SolveOptions {
    int max_iterations = 10000;            // total Krylov steps across restarts
    double residual_tol = 1e-10;           // ||Av - lv|| <= tol * max(1, |l|)
    const Eigen::VectorXd* warm_start = nullptr;
    bool allow_dense_fallback = true;      // full decomposition as last resort
};

EigenDecomposition eigendecompose(const SymmetricMatrix& a);

/// Smallest eigenpair of a positive-definite matrix. The vector is
/// sign-fixed (largest-magnitude component positive, ties broken by lowest
/// index), components in (-1e-9, 0) are clipped to 0, and the result is
/// scaled so its maximum component equals 1.
EigenPair smallest_eigenpair(const SymmetricMatrix& a, const SolveOptions& opts = {});

double largest_eigenvalue(const SymmetricMatrix& a, const SolveOptions& opts = {});
EigenPair largest_eigenpair(const SymmetricMatrix& a, const SolveOptions& opts = {});

/// trace(A^{-1}) via Cholesky factorization and triangular solves.
double cholesky_trace_inverse(const SymmetricMatrix& a);

/// Row sums of A^{-1}, i.e. the solution of A y = 1.
Eigen::VectorXd inverse_row_sums(const SymmetricMatrix& a);

/// lambda_1, lambda_max and the normalized Perron vector of a grounded
/// Laplacian (or any positive-definite symmetric matrix).
struct SpectralSummary {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    Eigen::VectorXd perron_vector;  // max component == 1
    double x_min = 0.0;             // smallest component, in [0, 1]
};

SpectralSummary spectral_summary(const SymmetricMatrix& lg);

} // namespace gspec
