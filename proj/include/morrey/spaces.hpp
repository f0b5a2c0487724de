#pragma once

// Parameter model for the smoothness/integrability scales the classifier
// works on: quadruples (s, p, q, tau) on a B- or F-type scale over R^d or a
// bounded domain, plus the named spaces that reduce to such quadruples.

#include "morrey/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace morrey {

enum class Scale { B, F };
enum class Setting { Domain, Rn };

inline const char* to_string(Scale s) { return s == Scale::B ? "B" : "F"; }
inline const char* to_string(Setting s) { return s == Setting::Domain ? "domain" : "rn"; }

struct SpaceParams {
    Scale scale = Scale::B;
    ExtRational s = 0;           // smoothness, finite
    ExtRational p = 2;           // integrability, (0, inf]
    ExtRational q = 2;           // summability, (0, inf]
    ExtRational tau = 0;         // Morrey weight exponent, finite, >= 0
    int d = 1;                   // ambient dimension
    Setting setting = Setting::Domain;

    void validate() const {
        if (!s.is_finite()) throw std::invalid_argument("s must be finite");
        if (p.sign() <= 0) throw std::invalid_argument("p must be positive");
        if (q.sign() <= 0) throw std::invalid_argument("q must be positive");
        if (!tau.is_finite() || tau.sign() < 0) throw std::invalid_argument("tau must be finite and >= 0");
        if (d < 1) throw std::invalid_argument("d must be >= 1");
        if (scale == Scale::F && p.is_inf()) throw std::invalid_argument("F scale requires p < inf");
    }

    friend bool operator==(const SpaceParams& a, const SpaceParams& b) {
        return a.scale == b.scale && a.s == b.s && a.p == b.p && a.q == b.q &&
               a.tau == b.tau && a.d == b.d && a.setting == b.setting;
    }

    std::string str() const {
        std::string out(to_string(scale));
        out += "(s=" + s.str() + ",p=" + p.str() + ",q=" + q.str() + ",tau=" + tau.str() +
               ",d=" + std::to_string(d) + "," + to_string(setting) + ")";
        return out;
    }
};

// Position of tau relative to the integrability threshold 1/p. Above it (or
// on it with q = inf) the whole scale collapses to a uniform-type class.
enum class RegionTag { Large, Boundary, Interior };

inline const char* to_string(RegionTag r) {
    switch (r) {
        case RegionTag::Large: return "large";
        case RegionTag::Boundary: return "boundary";
        default: return "interior";
    }
}

inline RegionTag region_of(const SpaceParams& sp) {
    ExtRational inv_p = sp.p.reciprocal();
    if (sp.tau > inv_p) return RegionTag::Large;
    if (sp.tau == inv_p) return sp.q.is_inf() ? RegionTag::Large : RegionTag::Boundary;
    return RegionTag::Interior;
}

// p*tau with the boundary convention: the product counts as 1 when p = inf
// and tau = 0, and as +inf when p = inf and tau > 0.
inline ExtRational product_convention(const ExtRational& p, const ExtRational& tau) {
    if (p.is_inf()) {
        return tau.sign() == 0 ? ExtRational(1) : ExtRational::infinity();
    }
    return p * tau;
}

// a/b for positive a, b, with inf/inf = 1.
inline ExtRational ratio_convention(const ExtRational& a, const ExtRational& b) {
    if (a.is_inf() && b.is_inf()) return ExtRational(1);
    return a / b;
}

// All parameter quadruples known to describe the same space as sp, sp first;
// the list is closed under another application of this map.
//
//  - Large region: the collapsed uniform form B^{s + d(tau - 1/p)}_{inf,inf}.
//  - F scale with tau = 1/p, q < inf: the B-scale alias B^{s,1/q}_{q,q}.
inline std::vector<SpaceParams> normalize_coincidence(const SpaceParams& sp) {
    sp.validate();
    std::vector<SpaceParams> out{sp};
    SpaceParams cur = sp;
    for (int step = 0; step < 3; ++step) {
        if (region_of(cur) == RegionTag::Large) {
            SpaceParams collapsed;
            collapsed.scale = Scale::B;
            collapsed.s = cur.s + ExtRational(cur.d) * (cur.tau - cur.p.reciprocal());
            collapsed.p = ExtRational::infinity();
            collapsed.q = ExtRational::infinity();
            collapsed.tau = 0;
            collapsed.d = cur.d;
            collapsed.setting = cur.setting;
            if (collapsed == cur) break;  // fixed point
            out.push_back(collapsed);
            cur = collapsed;
            continue;
        }
        if (cur.scale == Scale::F && cur.tau == cur.p.reciprocal() && cur.q.is_finite()) {
            SpaceParams alias;
            alias.scale = Scale::B;
            alias.s = cur.s;
            alias.p = cur.q;
            alias.q = cur.q;
            alias.tau = cur.q.reciprocal();
            alias.d = cur.d;
            alias.setting = cur.setting;
            out.push_back(alias);
            cur = alias;
            continue;
        }
        break;
    }
    return out;
}

// ---------------------------------
// Named spaces reducing to the scale
// ---------------------------------

struct NamedSpace {
    enum class Kind { Bmo, BesovMorrey, TriebelLizorkinMorrey, Hybrid, Classical };

    Kind kind = Kind::Bmo;
    ExtRational s = 0;
    ExtRational u = ExtRational::infinity();  // Morrey parameter, p <= u
    ExtRational p = 2;
    ExtRational q = 2;
    ExtRational r = 0;                        // hybrid exponent, -d/p <= r
    Scale scale = Scale::B;                   // hybrid only
    int d = 1;
    Setting setting = Setting::Domain;
};

// Exact scale form of a named space. BesovMorrey with q < inf and p < u has
// no exact form and raises; the classifier has dedicated rules for it.
inline SpaceParams resolve_named(const NamedSpace& ns) {
    SpaceParams sp;
    sp.d = ns.d;
    sp.setting = ns.setting;
    switch (ns.kind) {
        case NamedSpace::Kind::Bmo:
            sp.scale = Scale::B;
            sp.s = 0;
            sp.p = 2;
            sp.q = 2;
            sp.tau = ExtRational(1, 2);
            break;
        case NamedSpace::Kind::TriebelLizorkinMorrey:
            if (ns.p.is_inf() || ns.u.is_inf() || ns.p > ns.u)
                throw std::invalid_argument("tl_morrey requires 0 < p <= u < inf");
            sp.scale = Scale::F;
            sp.s = ns.s;
            sp.p = ns.p;
            sp.q = ns.q;
            sp.tau = ns.p.reciprocal() - ns.u.reciprocal();
            break;
        case NamedSpace::Kind::BesovMorrey:
            if (ns.p > ns.u) throw std::invalid_argument("besov_morrey requires p <= u");
            if (ns.p != ns.u && ns.q.is_finite())
                throw std::invalid_argument(
                    "besov_morrey with q < inf has no exact tau-form; use classifier.besov_morrey rules");
            sp.scale = Scale::B;
            sp.s = ns.s;
            sp.p = ns.p;
            sp.q = ns.q;
            sp.tau = ns.p.reciprocal() - ns.u.reciprocal();
            break;
        case NamedSpace::Kind::Hybrid: {
            if (ns.p.is_inf()) throw std::invalid_argument("hybrid requires p < inf");
            ExtRational tau = ns.p.reciprocal() + ns.r / ExtRational(ns.d);
            if (tau.sign() < 0) throw std::invalid_argument("hybrid requires r >= -d/p");
            sp.scale = ns.scale;
            sp.s = ns.s;
            sp.p = ns.p;
            sp.q = ns.q;
            sp.tau = tau;
            break;
        }
        case NamedSpace::Kind::Classical:
            sp.scale = ns.scale;
            sp.s = ns.s;
            sp.p = ns.p;
            sp.q = ns.q;
            sp.tau = 0;
            break;
    }
    sp.validate();
    return sp;
}

}  // namespace morrey
