#include "gspec/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace gspec {

namespace {

constexpr double kSymTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic start vectors; extreme-pair solves stay reproducible
// across runs and thread counts.
Eigen::VectorXd pseudo_random_start(int n) {
    std::uint64_t state = 0xC0FFEE ^ (static_cast<std::uint64_t>(n) << 17);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
    double nrm = v.norm();
    if (nrm == 0.0) v.setOnes(), nrm = v.norm();
    return v / nrm;
}

// Start for the Perron-directed path: mostly the ones vector, so that on a
// degenerate smallest eigenspace the iteration settles on its nonnegative
// member; the perturbation breaks exact orthogonality in adversarial cases.
Eigen::VectorXd perron_start(int n) {
    return (Eigen::VectorXd::Ones(n) + 1e-8 * pseudo_random_start(n)).normalized();
}

// When the ones direction is itself an eigenvector at `lambda` (uniform
// designs give exactly this), prefer it over the perturbed Ritz vector.
bool ones_is_eigenvector(const Eigen::MatrixXd& a, double lambda, double tol_scale) {
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows()) / std::sqrt(double(a.rows()));
    return (a * ones - lambda * ones).norm() <= tol_scale;
}

struct KrylovResult {
    double theta = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
};

// Lanczos with full reorthogonalization and Ritz-vector restarts. `apply`
// must be a symmetric operator; returns the extreme Ritz pair requested.
// Convergence is checked every few steps so well-separated problems exit
// after a handful of applies.
KrylovResult lanczos_extreme(int n, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                             bool want_largest, const Eigen::VectorXd& start, double ritz_tol,
                             int max_total_iters) {
    const int block = std::min(n, 250);
    constexpr int kCheckEvery = 8;
    Eigen::VectorXd v0 = start.normalized();
    KrylovResult best;
    int used = 0;

    while (used < max_total_iters) {
        Eigen::MatrixXd basis(n, block + 1);
        Eigen::VectorXd alpha(block), offdiag(block);
        basis.col(0) = v0;
        int m = 0;
        double last_beta = 0.0;
        bool invariant = false;

        auto ritz_pair = [&](double& theta, Eigen::VectorXd& y) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                tri(i, i) = alpha(i);
                if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = offdiag(i);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
            const int pick = want_largest ? m - 1 : 0;
            theta = es.eigenvalues()(pick);
            y = es.eigenvectors().col(pick);
        };

        double theta = 0.0;
        Eigen::VectorXd y;
        bool converged = false;
        for (int j = 0; j < block && used < max_total_iters; ++j, ++used) {
            Eigen::VectorXd w = apply(basis.col(j));
            alpha(j) = basis.col(j).dot(w);
            // two-pass reorthogonalization against the whole basis
            auto span = basis.leftCols(j + 1);
            w.noalias() -= span * (span.transpose() * w);
            w.noalias() -= span * (span.transpose() * w);
            last_beta = w.norm();
            m = j + 1;
            if (last_beta < 1e-14 * std::max(1.0, std::abs(alpha(j)))) {
                invariant = true;
                break;
            }
            offdiag(j) = last_beta;
            basis.col(j + 1) = w / last_beta;

            if (m % kCheckEvery == 0 || m == block) {
                ritz_pair(theta, y);
                if (std::abs(last_beta * y(m - 1)) <= ritz_tol * std::max(1.0, std::abs(theta))) {
                    converged = true;
                    break;
                }
            }
        }
        if (m == 0) break;
        if (invariant || y.size() != m) ritz_pair(theta, y);

        Eigen::VectorXd ritz = basis.leftCols(m) * y;
        ritz.normalize();
        best.theta = theta;
        best.vector = ritz;
        best.iterations = used;
        if (invariant || converged) return best;
        v0 = ritz;
    }
    return best;
}

double frob_scale(const Eigen::MatrixXd& a) { return std::max(1.0, a.norm()); }

// Dense route for the smallest pair. On a degenerate smallest eigenspace the
// eigenvector basis is arbitrary; project the ones vector into the eigenspace
// to recover its nonnegative member.
EigenPair dense_smallest(const SymmetricMatrix& a) {
    const int n = a.dim();
    EigenDecomposition ed = eigendecompose(a);
    const double low = ed.eigenvalues(0);
    const double tol = 1e-10 * std::max(1.0, std::abs(ed.eigenvalues(n - 1)));
    int mult = 1;
    while (mult < n && ed.eigenvalues(mult) - low <= tol) ++mult;
    Eigen::VectorXd v = ed.eigenvectors.col(0);
    if (mult > 1) {
        auto span = ed.eigenvectors.leftCols(mult);
        Eigen::VectorXd projected = span * (span.transpose() * Eigen::VectorXd::Ones(n));
        if (projected.norm() > 1e-12) v = projected.normalized();
    }
    return {low, v};
}

// Flip sign toward a positive dominant component, clip round-off negatives,
// scale so the maximum component is exactly 1.
Eigen::VectorXd normalize_perron(Eigen::VectorXd v) {
    int dominant = 0;
    double big = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > big) {
            big = std::abs(v(i));
            dominant = i;
        }
    }
    if (v(dominant) < 0) v = -v;
    for (int i = 0; i < v.size(); ++i)
        if (v(i) < 0 && v(i) > -1e-9) v(i) = 0.0;
    const double top = v.maxCoeff();
    if (top > 0) v /= top;
    return v;
}

} // namespace

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("matrix must be square");
    if (!m_.allFinite()) throw numerical_error("matrix has non-finite entries");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol * scale)
        throw numerical_error("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
}

EigenDecomposition eigendecompose(const SymmetricMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.mat());
    if (es.info() != Eigen::Success) throw convergence_failure("dense eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

EigenPair smallest_eigenpair(const SymmetricMatrix& a, const SolveOptions& opts) {
    const int n = a.dim();
    if (n == 1) {
        if (a.mat()(0, 0) <= 0) throw not_positive_definite("1x1 matrix not positive definite");
        return {a.mat()(0, 0), Eigen::VectorXd::Ones(1)};
    }

    Eigen::LLT<Eigen::MatrixXd> llt(a.mat());
    if (llt.info() != Eigen::Success)
        throw not_positive_definite("Cholesky factorization failed: matrix not positive definite");

    if (n <= 3) {
        EigenPair low = dense_smallest(a);
        return {low.value, normalize_perron(low.vector)};
    }

    Eigen::VectorXd start = (opts.warm_start && opts.warm_start->size() == n)
                                ? *opts.warm_start
                                : perron_start(n);
    auto apply_inverse = [&](const Eigen::VectorXd& v) { return llt.solve(v).eval(); };

    const double scale = frob_scale(a.mat());
    double ritz_tol = 1e-11;
    int budget = opts.max_iterations;
    for (int round = 0; round < 3 && budget > 0; ++round) {
        KrylovResult kr = lanczos_extreme(n, apply_inverse, /*want_largest=*/true, start,
                                          ritz_tol, budget);
        budget -= std::max(kr.iterations, 1);
        if (kr.vector.size() == 0) break;
        const double lambda = kr.vector.dot(a.mat() * kr.vector);
        const double residual = (a.mat() * kr.vector - lambda * kr.vector).norm();
        if (residual <= opts.residual_tol * scale) {
            if (ones_is_eigenvector(a.mat(), lambda, opts.residual_tol * scale))
                return {lambda, Eigen::VectorXd::Ones(n)};
            return {lambda, normalize_perron(kr.vector)};
        }
        start = kr.vector;
        ritz_tol *= 0.01;
    }
    if (opts.allow_dense_fallback) {
        EigenPair low = dense_smallest(a);
        return {low.value, normalize_perron(low.vector)};
    }
    throw convergence_failure("smallest_eigenpair did not converge within the iteration budget");
}

EigenPair largest_eigenpair(const SymmetricMatrix& a, const SolveOptions& opts) {
    const int n = a.dim();
    if (n <= 3) {
        EigenDecomposition ed = eigendecompose(a);
        return {ed.eigenvalues(n - 1), ed.eigenvectors.col(n - 1)};
    }
    Eigen::VectorXd start = (opts.warm_start && opts.warm_start->size() == n)
                                ? *opts.warm_start
                                : pseudo_random_start(n);
    auto apply = [&](const Eigen::VectorXd& v) { return (a.mat() * v).eval(); };

    const double scale = frob_scale(a.mat());
    double ritz_tol = 1e-11;
    int budget = opts.max_iterations;
    for (int round = 0; round < 3 && budget > 0; ++round) {
        KrylovResult kr = lanczos_extreme(n, apply, /*want_largest=*/true, start, ritz_tol, budget);
        budget -= std::max(kr.iterations, 1);
        if (kr.vector.size() == 0) break;
        const double lambda = kr.vector.dot(a.mat() * kr.vector);
        const double residual = (a.mat() * kr.vector - lambda * kr.vector).norm();
        if (residual <= opts.residual_tol * scale) return {lambda, kr.vector};
        start = kr.vector;
        ritz_tol *= 0.01;
    }
    if (opts.allow_dense_fallback) {
        EigenDecomposition ed = eigendecompose(a);
        return {ed.eigenvalues(n - 1), ed.eigenvectors.col(n - 1)};
    }
    throw convergence_failure("largest_eigenpair did not converge within the iteration budget");
}

double largest_eigenvalue(const SymmetricMatrix& a, const SolveOptions& opts) {
    return largest_eigenpair(a, opts).value;
}

double cholesky_trace_inverse(const SymmetricMatrix& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.mat());
    if (llt.info() != Eigen::Success)
        throw not_positive_definite("Cholesky factorization failed: matrix not positive definite");
    // trace(A^{-1}) = ||L^{-1}||_F^2 for A = L L^T
    Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(a.dim(), a.dim()));
    return linv.squaredNorm();
}

Eigen::VectorXd inverse_row_sums(const SymmetricMatrix& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.mat());
    if (llt.info() != Eigen::Success)
        throw not_positive_definite("Cholesky factorization failed: matrix not positive definite");
    return llt.solve(Eigen::VectorXd::Ones(a.dim()));
}

SpectralSummary spectral_summary(const SymmetricMatrix& lg) {
    SpectralSummary s;
    EigenPair low = smallest_eigenpair(lg);
    s.lambda_min = low.value;
    s.perron_vector = std::move(low.vector);
    s.x_min = s.perron_vector.minCoeff();
    s.lambda_max = largest_eigenvalue(lg);
    return s;
}

} // namespace gspec
