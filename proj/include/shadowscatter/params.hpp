#pragma once

#include <variant>

namespace shadowscatter {

/// Parameters of the double-shadowing (DS) composite model: the end-to-end
/// SNR is N1^2*I1 * N2^2*I2 with Nakagami-m multipath factors N_j (shapes m1,
/// m2, mean-square omega) and inverse-gamma shadowing factors I_j (shapes
/// alpha1, alpha2). gamma_bar is the combined average-SNR scale of the two
/// shadowing factors, in linear units, so that E[SNR] =
/// omega^2 * gamma_bar / ((alpha1-1)(alpha2-1)).
struct DoubleShadowParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double omega = 1.0;
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    double gamma_bar = 1.0;
};

/// Single-shadowing (SS) variant: one inverse-gamma factor (shape alpha) on
/// the product of the two squared Nakagami envelopes. E[SNR] =
/// omega^2 * gamma_bar / (alpha-1).
struct SingleShadowParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double omega = 1.0;
    double alpha = 2.0;
    double gamma_bar = 1.0;
};

using AnyParams = std::variant<DoubleShadowParams, SingleShadowParams>;

/// Checks m_j > 0, alpha_j > 1, omega > 0, gamma_bar > 0 and applies the
/// canonical ordering m1 <= m2 (and alpha1 <= alpha2). The distribution is
/// invariant under swapping either pair, so the ordered form is the unique
/// representative of the equivalence class. Throws DomainError.
DoubleShadowParams validate(DoubleShadowParams p);
SingleShadowParams validate(SingleShadowParams p);

/// Normalization constants of the closed forms. s1 applies to DS models,
/// s2 to SS models; the unused one is left at zero.
struct ModelConstants {
    double s1 = 0.0;          // 1/(G(m1) G(m2) G(alpha1) G(alpha2))
    double s2 = 0.0;          // 1/(G(m1) G(m2) G(alpha))
    double gamma_tilde = 0.0; // m1*m2/gamma_bar
};

ModelConstants model_constants(const DoubleShadowParams& p);
ModelConstants model_constants(const SingleShadowParams& p);

} // namespace shadowscatter
