#pragma once

#include "dsl.hpp"

#include <string>
#include <vector>

namespace nilcdga {

namespace preset_sources {

inline const char* const N = R"(# Six-dimensional two-step nilpotent Lie algebra, dual basis of left-invariant forms
algebra N
generator b1 1
generator b2 1
generator c1 1
generator c2 1
generator e1 1
generator e2 1
d b1 = 0
d b2 = 0
d c1 = 0
d c2 = 0
d e1 = -1*b1^c1 + b2^c1 + b1^c2 + 2*b2^c2
d e2 = 2*b1^c1 + b2^c1 + b1^c2 - 1*b2^c2
action rho order 3
rho b1 = -b1 - b2
rho b2 = b1
rho c1 = -c1 - c2
rho c2 = c1
rho e1 = -e1 - e2
rho e2 = e1
)";

inline const char* const M = R"(# Product of a flat 2-torus with N, and the order-3 rotation acting on every pair
algebra M
generator a1 1
generator a2 1
generator b1 1
generator b2 1
generator c1 1
generator c2 1
generator e1 1
generator e2 1
d a1 = 0
d a2 = 0
d b1 = 0
d b2 = 0
d c1 = 0
d c2 = 0
d e1 = -1*b1^c1 + b2^c1 + b1^c2 + 2*b2^c2
d e2 = 2*b1^c1 + b2^c1 + b1^c2 - 1*b2^c2
action rho order 3
rho a1 = -a1 - a2
rho a2 = a1
rho b1 = -b1 - b2
rho b2 = b1
rho c1 = -c1 - c2
rho c2 = c1
rho e1 = -e1 - e2
rho e2 = e1

# Named invariant forms used by the obstruction computations
element theta = b1^b2
element tau1 = 2*a1^c2 - a2^c1 + a1^c1 + a2^c2
element tau2 = c1^c2
element tau3 = a1^c1 + a2^c1 + a2^c2
element sigma = tau1
element xi = -1/6*c1^b1^e2 - 1/6*c1^b2^e2 - 1/6*c1^b2^e1 - 1/6*c2^b1^e2 - 1/6*c2^b1^e1 - 1/6*c2^b2^e1
element varsigma = -1/3*a1^e2^b1 - 1/3*a1^e1^b1 - 1/3*a1^e1^b2 + 1/3*a2^e2^b2 - 1/3*a2^e1^b1
element kappa = 1/3*a1^b1^e1 - 1/3*a1^b1^e2 - 1/3*a1^b2^e1 - 2/3*a1^b2^e2 - 1/3*a2^b1^e1 - 2/3*a2^b1^e2 - 2/3*a2^b2^e1 - 1/3*a2^b2^e2
element omega = a1^a2 + e2^b1 - e1^b2 + c1^c2
)";

inline const char* const T2 = R"(algebra T2
generator x1 1
generator x2 1
action rho order 3
rho x1 = -x1 - x2
rho x2 = x1
)";

inline const char* const T6 = R"(algebra T6
generator x1 1
generator x2 1
generator x3 1
generator x4 1
generator x5 1
generator x6 1
element omega = x1^x2 + x3^x4 + x5^x6
)";

} // namespace preset_sources

inline std::vector<std::string> preset_names() { return {"N", "M", "T2", "T6", "heisenberg-real"}; }

// N rewritten over Q(sqrt 3) in the basis
//   mu1 = b1 + (1+r)/2 b2, mu2 = b1 + (1-r)/2 b2 (r = sqrt 3), nu likewise in c,
//   theta1 = (2/r) e1 + (1/r) e2, theta2 = e2,
// in which the structure equations become those of the complex Heisenberg algebra.
inline PresentationSource heisenberg_real_preset() {
    auto n = parse_presentation(preset_sources::N);
    const auto& p = n.presentation;
    const ExactScalar r = ExactScalar::sqrt3();
    const ExactScalar half(make_rational(1, 2));
    auto g = [&](const char* s) { return p.generator(s); };
    std::vector<GradedElement> basis{
        g("b1") + (half + half * r) * g("b2"),
        g("b1") + (half - half * r) * g("b2"),
        g("c1") + (half + half * r) * g("c2"),
        g("c1") + (half - half * r) * g("c2"),
        (ExactScalar(2) / r) * g("e1") + (ExactScalar(1) / r) * g("e2"),
        g("e2"),
    };
    auto changed = change_basis(p, "heisenberg-real", {"mu1", "mu2", "nu1", "nu2", "theta1", "theta2"}, basis);
    return PresentationSource{"", std::move(changed.presentation), {}, {}};
}

inline PresentationSource preset(const std::string& name) {
    if (name == "N")
        return parse_presentation(preset_sources::N);
    if (name == "M")
        return parse_presentation(preset_sources::M);
    if (name == "T2")
        return parse_presentation(preset_sources::T2);
    if (name == "T6")
        return parse_presentation(preset_sources::T6);
    if (name == "heisenberg-real")
        return heisenberg_real_preset();
    throw CdgaError("unknown preset '" + name + "'");
}

} // namespace nilcdga
