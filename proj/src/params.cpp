#include "shadowscatter/params.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "shadowscatter/errors.hpp"

namespace shadowscatter {

namespace {

void check_common(double m1, double m2, double omega, double gamma_bar) {
    if (!(m1 > 0.0) || !std::isfinite(m1) || !(m2 > 0.0) || !std::isfinite(m2))
        throw DomainError("Nakagami shape m must be positive, got m1=" + std::to_string(m1) +
                          " m2=" + std::to_string(m2));
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("omega must be positive");
    if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar))
        throw DomainError("gamma_bar must be positive");
}

void check_alpha(double a, const char* name) {
    // alpha <= 1 makes the inverse-gamma mean diverge: unusable parameterization.
    if (!(a > 1.0) || !std::isfinite(a))
        throw DomainError(std::string(name) + " must exceed 1, got " + std::to_string(a));
}

} // namespace

DoubleShadowParams validate(DoubleShadowParams p) {
    check_common(p.m1, p.m2, p.omega, p.gamma_bar);
    check_alpha(p.alpha1, "alpha1");
    check_alpha(p.alpha2, "alpha2");
    if (p.m1 > p.m2) std::swap(p.m1, p.m2);
    if (p.alpha1 > p.alpha2) std::swap(p.alpha1, p.alpha2);
    return p;
}

SingleShadowParams validate(SingleShadowParams p) {
    check_common(p.m1, p.m2, p.omega, p.gamma_bar);
    check_alpha(p.alpha, "alpha");
    if (p.m1 > p.m2) std::swap(p.m1, p.m2);
    return p;
}

ModelConstants model_constants(const DoubleShadowParams& p) {
    ModelConstants c;
    c.s1 = std::exp(-std::lgamma(p.m1) - std::lgamma(p.m2) - std::lgamma(p.alpha1) -
                    std::lgamma(p.alpha2));
    c.gamma_tilde = p.m1 * p.m2 / p.gamma_bar;
    return c;
}

ModelConstants model_constants(const SingleShadowParams& p) {
    ModelConstants c;
    c.s2 = std::exp(-std::lgamma(p.m1) - std::lgamma(p.m2) - std::lgamma(p.alpha));
    c.gamma_tilde = p.m1 * p.m2 / p.gamma_bar;
    return c;
}

} // namespace shadowscatter
