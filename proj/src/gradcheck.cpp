#include "fslhate/gradcheck.hpp"

#include <cmath>

#include "fslhate/errors.hpp"

namespace fslhate {

GradReport finite_diff_check(const std::function<double()>& loss,
                             const std::vector<ParamRef>& params, double eps, double tol) {
    if (eps < 1e-7 || eps > 1e-3) throw InvalidArgument("finite_diff_check: eps out of [1e-7, 1e-3]");
    if (tol <= 0.0) throw InvalidArgument("finite_diff_check: tol must be positive");

    GradReport report;
    report.tol = tol;
    for (const ParamRef& p : params) {
        if (!p.value || !p.grad || p.value->size() != p.grad->size()) {
            throw InvalidArgument("finite_diff_check: parameter/gradient shape mismatch for " + p.name);
        }
        for (std::size_t i = p.first_checked; i < p.value->size(); ++i) {
            double saved = p.value->data[i];
            p.value->data[i] = saved + eps;
            double up = loss();
            p.value->data[i] = saved - eps;
            double down = loss();
            p.value->data[i] = saved;
            if (!std::isfinite(up) || !std::isfinite(down)) {
                throw NumericalFailure("finite_diff_check: non-finite loss at " + p.name);
            }
            double numeric = (up - down) / (2.0 * eps);
            double analytic = p.grad->data[i];
            double rel = std::fabs(analytic - numeric) /
                         std::max(1e-8, std::fabs(analytic) + std::fabs(numeric));
            if (rel > report.max_rel_err) {
                report.max_rel_err = rel;
                report.worst_param = p.name;
                report.worst_index = i;
            }
        }
    }
    report.pass = report.max_rel_err <= tol;
    return report;
}

}  // namespace fslhate
