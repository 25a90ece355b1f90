#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gts/frft.hpp"
#include "gts/model.hpp"

namespace gts {

using Vector7 = Eigen::Matrix<double, 7, 1>;
using Matrix7 = Eigen::Matrix<double, 7, 7>;

Vector7 to_vector(const GtsParams& p);
GtsParams from_vector(const Vector7& v);

enum class StepPolicy {
    // Full Newton step, halved only while it leaves the parameter domain or
    // gives a non-finite log-likelihood. Iterates need not increase the
    // log-likelihood.
    raw_newton,
    // Newton step on the Hessian with its eigenvalues forced negative, halved
    // until the log-likelihood does not decrease. Same steps as raw_newton
    // wherever the Hessian is negative definite and the step is uphill.
    safeguarded,
};

struct FitOptions {
    GtsParams init{};  // (0, .5, .5, .5, .5, 1, 1)
    double tol_grad = 1e-9;
    int max_iter = 100;
    int max_halvings = 30;
    StepPolicy step_policy = StepPolicy::raw_newton;
    std::size_t grid_n_min = kDefaultGridSize;
    // Trial points needing a larger grid are rejected like out-of-domain ones.
    std::size_t grid_n_max = std::size_t{1} << 18;

    void validate() const;
};

struct TraceRow {
    int iteration = 0;
    GtsParams params;
    double log_ml = 0.0;
    double grad_norm = 0.0;
    double max_eigenvalue = 0.0;
};

struct FitTrace {
    std::vector<TraceRow> rows;

    // iteration,mu,beta_plus,beta_minus,alpha_plus,alpha_minus,lambda_plus,lambda_minus,log_ml,grad_norm,max_eigenvalue
    void write_csv(std::ostream& out) const;
};

enum class FitStatus { converged, max_iter, singular_hessian, backtracking_exhausted, numerical_failure };

const char* to_string(FitStatus s) noexcept;
const char* to_string(StepPolicy s) noexcept;

struct FitResult {
    GtsParams params;
    FitTrace trace;
    FitStatus status = FitStatus::max_iter;
    std::string message;
    double log_ml = 0.0;
    Vector7 score = Vector7::Zero();
    Matrix7 hessian = Matrix7::Zero();

    bool converged() const noexcept { return status == FitStatus::converged; }
};

// Log-likelihood with its score and Hessian from one batch of fields.
struct LikelihoodEval {
    double log_ml = 0.0;
    Vector7 score = Vector7::Zero();
    Matrix7 hessian = Matrix7::Zero();
};

// The grid is grid_for_data(p, data, n_min); it depends on p only through
// discrete choices (frequency cut-off and size), so nearby parameter values
// share it. order 0 fills log_ml only.
LikelihoodEval evaluate_likelihood(const GtsParams& p, std::span<const double> data, int order,
                                   std::size_t n_min = kDefaultGridSize, std::size_t n_max = kMaxGridSize);

double log_likelihood(const GtsParams& p, std::span<const double> data, std::size_t n_min = kDefaultGridSize,
                      std::size_t n_max = kMaxGridSize);
Vector7 score(const GtsParams& p, std::span<const double> data, std::size_t n_min = kDefaultGridSize);
Matrix7 hessian(const GtsParams& p, std::span<const double> data, std::size_t n_min = kDefaultGridSize);

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
double max_eigenvalue(const Eigen::MatrixXd& h);

// Inverse of -h (observed information); throws NumericalError unless h is
// negative definite.
Matrix7 parameter_covariance(const Matrix7& h);

GbmParams fit_gbm(std::span<const double> data);

// Newton-Raphson with step halving. Needs at least 50 observations.
FitResult fit(std::span<const double> data, const FitOptions& opts = {});

}  // namespace gts
