#pragma once

// Critical exponent separating compact from non-continuous embeddings: the
// smoothness gap (s1 - s2)/d is compared against gamma(tau1, p1, tau2, p2).

#include "morrey/rational.hpp"
#include "morrey/spaces.hpp"

#include <stdexcept>
#include <string>

namespace morrey {

enum class GammaBranch {
    Tau2Large,               // tau2 >= 1/p2
    Tau1Large,               // tau1 >= 1/p1, tau2 < 1/p2
    BothModerate_Tau2Branch, // tau_i < 1/p_i, inner max attained by tau2
    BothModerate_Tau1Branch, // tau_i < 1/p_i, inner max attained by (p1/p2) tau1
    BothModerate_Zero,       // tau_i < 1/p_i, expression clipped at zero
};

inline const char* to_string(GammaBranch b) {
    switch (b) {
        case GammaBranch::Tau2Large: return "tau2_large";
        case GammaBranch::Tau1Large: return "tau1_large";
        case GammaBranch::BothModerate_Tau2Branch: return "both_moderate_tau2";
        case GammaBranch::BothModerate_Tau1Branch: return "both_moderate_tau1";
        default: return "both_moderate_zero";
    }
}

struct GammaValue {
    ExtRational gamma;
    GammaBranch branch;
};

// Single max-form expression equivalent to the piecewise definition; kept as
// an independent evaluation so every call cross-checks the two.
inline ExtRational gamma_max_form(const ExtRational& p1, const ExtRational& tau1,
                                  const ExtRational& p2, const ExtRational& tau2) {
    ExtRational inv_p1 = p1.reciprocal();
    ExtRational inv_p2 = p2.reciprocal();
    ExtRational t1 = positive_part(tau2 - inv_p2) - positive_part(tau1 - inv_p1);
    ExtRational t2 = inv_p1 - tau1 - inv_p2 + tau2;
    // (1 - p1*tau1)_+ with the product convention; the product may be +inf.
    ExtRational pc1 = product_convention(p1, tau1);
    ExtRational clipped = pc1 >= ExtRational(1) ? ExtRational(0) : ExtRational(1) - pc1;
    ExtRational t3 = inv_p1 - tau1 - min(inv_p2 - tau2, inv_p2 * clipped);
    return max(t1, max(t2, t3));
}

inline GammaValue gamma(const ExtRational& p1, const ExtRational& tau1,
                        const ExtRational& p2, const ExtRational& tau2) {
    if (p1.sign() <= 0 || p2.sign() <= 0) throw std::invalid_argument("p must be positive");
    if (!tau1.is_finite() || tau1.sign() < 0 || !tau2.is_finite() || tau2.sign() < 0)
        throw std::invalid_argument("tau must be finite and >= 0");

    ExtRational inv_p1 = p1.reciprocal();
    ExtRational inv_p2 = p2.reciprocal();

    GammaValue out{ExtRational(0), GammaBranch::BothModerate_Zero};
    if (tau2 >= inv_p2) {
        out = {inv_p1 - tau1 - inv_p2 + tau2, GammaBranch::Tau2Large};
    } else if (tau1 >= inv_p1) {
        out = {inv_p1 - tau1, GammaBranch::Tau1Large};
    } else {
        // Both tau_i < 1/p_i forces both p_i finite, so no conventions are
        // needed for the inner maximum.
        ExtRational slope = (p1 / p2) * tau1;
        ExtRational inner = max(tau2, slope);
        ExtRational expr = inv_p1 - tau1 - inv_p2 + inner;
        if (expr.sign() <= 0) {
            out = {ExtRational(0), GammaBranch::BothModerate_Zero};
        } else if (tau2 >= slope) {
            out = {expr, GammaBranch::BothModerate_Tau2Branch};
        } else {
            out = {expr, GammaBranch::BothModerate_Tau1Branch};
        }
    }

    if (out.gamma != gamma_max_form(p1, tau1, p2, tau2))
        throw std::logic_error("gamma: piecewise and max-form evaluations disagree");
    return out;
}

inline GammaValue gamma(const SpaceParams& src, const SpaceParams& tgt) {
    return gamma(src.p, src.tau, tgt.p, tgt.tau);
}

}  // namespace morrey
