#include "gts/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "gts/errors.hpp"

namespace gts {
namespace {

constexpr std::size_t kPairs = kNumParams * (kNumParams + 1) / 2;

// Fixed-shape pairwise summation, so totals do not depend on how the
// per-observation terms were produced.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

bool finite_vec(const Vector7& v) { return v.allFinite(); }

}  // namespace

Vector7 to_vector(const GtsParams& p) {
    Vector7 v;
    for (std::size_t i = 0; i < kNumParams; ++i) v[static_cast<Eigen::Index>(i)] = p[i];
    return v;
}

GtsParams from_vector(const Vector7& v) {
    GtsParams p;
    for (std::size_t i = 0; i < kNumParams; ++i) p[i] = v[static_cast<Eigen::Index>(i)];
    return p;
}

void FitOptions::validate() const {
    init.validate();
    if (!(tol_grad > 0.0)) throw InputError("tol_grad must be > 0");
    if (max_iter < 1) throw InputError("max_iter must be >= 1");
    if (max_halvings < 0) throw InputError("max_halvings must be >= 0");
}

void FitTrace::write_csv(std::ostream& out) const {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "iteration";
    for (auto name : param_names()) out << ',' << name;
    out << ",log_ml,grad_norm,max_eigenvalue\n";
    for (const auto& r : rows) {
        out << r.iteration;
        for (std::size_t i = 0; i < kNumParams; ++i) out << ',' << r.params[i];
        out << ',' << r.log_ml << ',' << r.grad_norm << ',' << r.max_eigenvalue << '\n';
    }
    out.precision(old);
}

const char* to_string(FitStatus s) noexcept {
    switch (s) {
        case FitStatus::converged: return "converged";
        case FitStatus::max_iter: return "max_iter";
        case FitStatus::singular_hessian: return "singular_hessian";
        case FitStatus::backtracking_exhausted: return "backtracking_exhausted";
        case FitStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

const char* to_string(StepPolicy s) noexcept {
    return s == StepPolicy::raw_newton ? "raw_newton" : "safeguarded";
}

LikelihoodEval evaluate_likelihood(const GtsParams& p, std::span<const double> data, int order,
                                   std::size_t n_min, std::size_t n_max) {
    if (data.empty()) throw InputError("likelihood: empty sample");
    p.validate();
    const GridSpec g = grid_for_data(p, data, n_min, n_max);
    const std::size_t m = data.size();
    LikelihoodEval r;

    auto density_at = [](const Field& f, const Stencil& s) {
        double v = s.apply(f.values);
        if (v < 0.0 && v > -1e-10) v = 0.0;
        return v;
    };
    auto bad_density = [](double x, double f) {
        std::ostringstream os;
        os << "density " << f << " at x = " << x << " is not positive; log-likelihood is not finite";
        return NumericalError(os.str());
    };

    if (order <= 0) {
        const Field f = density_field(p, g);
        std::vector<double> terms(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double v = density_at(f, make_stencil(g, data[j]));
            if (!(v > 0.0)) throw bad_density(data[j], v);
            terms[j] = std::log(v);
        }
        r.log_ml = pairwise_sum(terms.data(), m);
        return r;
    }

    const DerivativeFields d = derivative_fields(p, g);
    // Per observation: log f, 7 score terms, 28 Hessian terms.
    constexpr std::size_t kTerms = 1 + kNumParams + kPairs;
    std::vector<std::vector<double>> terms(kTerms, std::vector<double>(m));
    std::array<double, kNumParams> s{};
    for (std::size_t j = 0; j < m; ++j) {
        const Stencil st = make_stencil(g, data[j]);
        const double f = density_at(d.density, st);
        if (!(f > 0.0)) throw bad_density(data[j], f);
        terms[0][j] = std::log(f);
        for (std::size_t a = 0; a < kNumParams; ++a) {
            s[a] = st.apply(d.first[a].values) / f;
            terms[1 + a][j] = s[a];
        }
        std::size_t q = 0;
        for (std::size_t a = 0; a < kNumParams; ++a) {
            for (std::size_t b = a; b < kNumParams; ++b, ++q) {
                terms[1 + kNumParams + q][j] = st.apply(d.second_packed[q].values) / f - s[a] * s[b];
            }
        }
    }
    r.log_ml = pairwise_sum(terms[0].data(), m);
    for (std::size_t a = 0; a < kNumParams; ++a) {
        r.score[static_cast<Eigen::Index>(a)] = pairwise_sum(terms[1 + a].data(), m);
    }
    std::size_t q = 0;
    for (std::size_t a = 0; a < kNumParams; ++a) {
        for (std::size_t b = a; b < kNumParams; ++b, ++q) {
            const double v = pairwise_sum(terms[1 + kNumParams + q].data(), m);
            const auto ia = static_cast<Eigen::Index>(a);
            const auto ib = static_cast<Eigen::Index>(b);
            r.hessian(ia, ib) = v;
            r.hessian(ib, ia) = v;
        }
    }
    return r;
}

double log_likelihood(const GtsParams& p, std::span<const double> data, std::size_t n_min, std::size_t n_max) {
    return evaluate_likelihood(p, data, 0, n_min, n_max).log_ml;
}

Vector7 score(const GtsParams& p, std::span<const double> data, std::size_t n_min) {
    return evaluate_likelihood(p, data, 2, n_min).score;
}

Matrix7 hessian(const GtsParams& p, std::span<const double> data, std::size_t n_min) {
    return evaluate_likelihood(p, data, 2, n_min).hessian;
}

double max_eigenvalue(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) throw InputError("max_eigenvalue: need a non-empty square matrix");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (!h.allFinite()) throw NumericalError("max_eigenvalue: non-finite entry");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InputError("max_eigenvalue: matrix is not symmetric");
    }
    Eigen::MatrixXd a = 0.5 * (h + h.transpose());
    const Eigen::Index n = a.rows();
    const double total = a.squaredNorm();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off <= 1e-32 * total || off == 0.0) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    return a.diagonal().maxCoeff();
}

Matrix7 parameter_covariance(const Matrix7& h) {
    const Matrix7 info = -0.5 * (h + h.transpose());
    Eigen::LLT<Matrix7> llt(info);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("parameter_covariance: Hessian is not negative definite");
    }
    return llt.solve(Matrix7::Identity());
}

GbmParams fit_gbm(std::span<const double> data) {
    if (data.size() < 2) throw InputError("fit_gbm: need at least 2 observations");
    const auto m = static_cast<double>(data.size());
    double mean = 0.0;
    for (double x : data) mean += x;
    mean /= m;
    double var = 0.0;
    for (double x : data) var += (x - mean) * (x - mean);
    var /= m;
    if (!(var > 0.0)) throw InputError("fit_gbm: sample variance is zero");
    return GbmParams{mean, std::sqrt(var)};
}

namespace {

// Newton direction -H^{-1} g with H's eigenvalues replaced by -max(|l|, floor).
Vector7 safeguarded_direction(const Matrix7& h, const Vector7& g) {
    Eigen::SelfAdjointEigenSolver<Matrix7> es(h);
    if (es.info() != Eigen::Success) return Vector7::Constant(std::numeric_limits<double>::quiet_NaN());
    const Vector7 ev = es.eigenvalues();
    const double floor = std::max(1e-10, 1e-8 * ev.cwiseAbs().maxCoeff());
    Vector7 inv;
    for (Eigen::Index i = 0; i < 7; ++i) inv[i] = 1.0 / std::max(std::abs(ev[i]), floor);
    const Matrix7& v = es.eigenvectors();
    return v * inv.asDiagonal() * (v.transpose() * g);
}

}  // namespace

FitResult fit(std::span<const double> data, const FitOptions& opts) {
    opts.validate();
    if (data.size() < 50) throw InputError("fit: at least 50 observations are required");

    FitResult res;
    GtsParams p = opts.init;
    for (int it = 1; it <= opts.max_iter; ++it) {
        LikelihoodEval ev;
        try {
            ev = evaluate_likelihood(p, data, 2, opts.grid_n_min, opts.grid_n_max);
        } catch (const NumericalError& e) {
            res.status = FitStatus::numerical_failure;
            res.message = e.what();
            return res;
        }
        if (!std::isfinite(ev.log_ml) || !finite_vec(ev.score) || !ev.hessian.allFinite()) {
            res.status = FitStatus::numerical_failure;
            res.message = "non-finite likelihood derivatives at iteration " + std::to_string(it);
            return res;
        }
        TraceRow row;
        row.iteration = it;
        row.params = p;
        row.log_ml = ev.log_ml;
        row.grad_norm = ev.score.norm();
        row.max_eigenvalue = max_eigenvalue(ev.hessian);
        res.trace.rows.push_back(row);
        res.params = p;
        res.log_ml = ev.log_ml;
        res.score = ev.score;
        res.hessian = ev.hessian;

        if (row.grad_norm < opts.tol_grad) {
            res.status = FitStatus::converged;
            return res;
        }

        Vector7 step;
        if (opts.step_policy == StepPolicy::raw_newton) {
            Eigen::FullPivLU<Matrix7> lu(ev.hessian);
            if (!lu.isInvertible()) {
                res.status = FitStatus::singular_hessian;
                res.message = "Hessian is singular at iteration " + std::to_string(it);
                return res;
            }
            step = -lu.solve(ev.score);
        } else {
            step = safeguarded_direction(ev.hessian, ev.score);
        }
        if (!finite_vec(step)) {
            res.status = FitStatus::singular_hessian;
            res.message = "Newton step is not finite at iteration " + std::to_string(it);
            return res;
        }

        // Rounding in the log-likelihood near an optimum must not block steps.
        const double floor_ll = ev.log_ml - 1e-10 * std::max(1.0, std::abs(ev.log_ml));
        const Vector7 v = to_vector(p);
        bool accepted = false;
        for (int h = 0; h <= opts.max_halvings; ++h, step *= 0.5) {
            const GtsParams cand = from_vector(v + step);
            if (!cand.is_valid()) continue;
            try {
                const double ll = log_likelihood(cand, data, opts.grid_n_min, opts.grid_n_max);
                const bool ok = std::isfinite(ll) &&
                                (opts.step_policy == StepPolicy::raw_newton || ll >= floor_ll);
                if (ok) {
                    p = cand;
                    accepted = true;
                    break;
                }
            } catch (const Error&) {
                // treated like a non-finite value: halve again
            }
        }
        if (!accepted) {
            res.status = FitStatus::backtracking_exhausted;
            res.message = "step halving exhausted at iteration " + std::to_string(it);
            return res;
        }
    }
    res.status = FitStatus::max_iter;
    res.message = "no convergence after " + std::to_string(opts.max_iter) + " iterations";
    return res;
}

}  // namespace gts
