#pragma once
// Special functions and adaptive quadrature used by the Bayes factor engine.
//
// Everything here is a pure function of its arguments: no global state, no
// caches, safe to call from any number of threads.

#include <cstddef>
#include <functional>

namespace jzsbf::numerics {

// ---------------------------------------------------------------------------
// Integration domains
// ---------------------------------------------------------------------------

class Interval {
public:
    enum class Kind { finite, half_line_positive, real_line };

    // Throws DomainError unless a < b (both finite).
    static Interval finite(double a, double b);
    static Interval half_line_positive() noexcept { return Interval(Kind::half_line_positive, 0.0, 0.0); }
    static Interval real_line() noexcept { return Interval(Kind::real_line, 0.0, 0.0); }

    Kind kind() const noexcept { return kind_; }
    double lower() const noexcept { return a_; }
    double upper() const noexcept { return b_; }

private:
    Interval(Kind kind, double a, double b) noexcept : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_evaluations = 1'000'000;
    // Uniform panels laid over the (mapped) domain before refinement starts,
    // so that a narrow peak cannot slip between the nodes of a single rule.
    int initial_panels = 16;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 15-point Gauss-Kronrod quadrature.
//
// Improper domains are mapped onto (0,1) before refinement:
//   half line:  x = u / (1 - u),          dx = du / (1 - u)^2
//   real line:  x = tan(pi * (u - 1/2)),  dx = pi * (1 + x^2) du
// Endpoints are never evaluated. Refinement stops once the summed error
// estimate drops below max(abs_tol, rel_tol * |value|); NonConvergenceError is
// thrown if that needs more than max_evaluations integrand calls. A
// non-finite integrand value raises DomainError.
QuadratureResult integrate(const Integrand& f, const Interval& domain, double rel_tol = 1e-8);
QuadratureResult integrate(const Integrand& f, const Interval& domain, const QuadratureOptions& options);

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// ln B(a, b) for a, b > 0, evaluated without the cancellation that
// ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b) suffers for large arguments.
double ln_beta(double a, double b);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Student t distribution with nu > 0 degrees of freedom (nu need not be integral).
double student_t_cdf(double t, double nu);
double student_t_quantile(double q, double nu);
double central_t_pdf(double t, double nu);
double ln_central_t_pdf(double t, double nu);

// Noncentral t density with noncentrality mu. The log form returns -inf where
// the density underflows.
double noncentral_t_pdf(double t, double nu, double mu);
double ln_noncentral_t_pdf(double t, double nu, double mu);

double cauchy_pdf(double x, double scale);

namespace detail {
// The general noncentral-t path, without the mu == 0 shortcut that
// ln_noncentral_t_pdf takes. Exposed for testing.
double ln_noncentral_t_pdf_integral(double t, double nu, double mu);
}  // namespace detail

}  // namespace jzsbf::numerics
