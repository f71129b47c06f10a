#pragma once

#include "check.hpp"
#include "cohomology.hpp"
#include "exterior.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilcdga {

enum class Verdict { NontrivialCertified, Trivial, Inconclusive, InconclusiveInW };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::NontrivialCertified:
        return "nontrivial-certified";
    case Verdict::Trivial:
        return "trivial";
    case Verdict::Inconclusive:
        return "inconclusive";
    case Verdict::InconclusiveInW:
        return "inconclusive-in-W";
    }
    return "inconclusive";
}

class UndefinedProductError : public CdgaError {
public:
    using CdgaError::CdgaError;
};

class PreconditionError : public CdgaError {
public:
    using CdgaError::CdgaError;
};

// Optional post-processing of solver primitives, e.g. averaging over a group.
using PrimitiveTransform = std::function<GradedElement(const GradedElement&)>;

namespace detail {

inline GradedElement primitive_or_throw(const CochainComplex& c, const GradedElement& w, const std::string& what,
                                        const PrimitiveTransform& post = {}) {
    auto u = find_primitive(c, w);
    if (!u)
        throw UndefinedProductError(what + " is not exact: " + w.str());
    GradedElement out = post ? post(*u) : *u;
    if (differential(c.presentation(), out) != w)
        throw CdgaError("primitive transform broke d(u) = " + what);
    return out;
}

inline std::vector<std::vector<ExactScalar>> independent_vectors(const std::vector<std::vector<ExactScalar>>& vs,
                                                                 std::size_t dim) {
    if (vs.empty() || dim == 0)
        return {};
    ExactMatrix m(vs.size(), dim);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = vs[i][j];
    return row_space_basis(m);
}

inline bool in_span(const std::vector<std::vector<ExactScalar>>& basis, const std::vector<ExactScalar>& v) {
    if (is_zero_vector(v))
        return true;
    if (basis.empty())
        return false;
    return solve(ExactMatrix::from_columns(v.size(), basis), v).has_value();
}

} // namespace detail

struct TripleMasseyResult {
    std::vector<CohomologyClass> inputs;
    GradedElement xi;   // d xi = a1 ^ a2
    GradedElement eta;  // d eta = a2 ^ a3
    CohomologyClass value;
    std::vector<std::vector<ExactScalar>> indeterminacy;  // basis, coordinates in the value's H^k
    Verdict verdict = Verdict::Trivial;
};

// Indeterminacy a1 ∪ H^{p2+p3-1} + H^{p1+p2-1} ∪ a3 as a basis of coordinate vectors.
inline std::vector<std::vector<ExactScalar>> triple_indeterminacy(const CochainComplex& c, const CohomologyClass& a1,
                                                                  const CohomologyClass& a2,
                                                                  const CohomologyClass& a3) {
    const int k = a1.degree() + a2.degree() + a3.degree() - 1;
    std::vector<std::vector<ExactScalar>> vs;
    if (k > c.top_degree())
        return vs;
    for (const auto& h : cohomology_basis(c, a2.degree() + a3.degree() - 1))
        vs.push_back(cup(a1, h).coordinates());
    for (const auto& h : cohomology_basis(c, a1.degree() + a2.degree() - 1))
        vs.push_back(cup(h, a3).coordinates());
    return detail::independent_vectors(vs, betti_number(c, k));
}

// Triple product with explicit primitives; d xi = a1^a2, d eta = a2^a3 are checked.
inline TripleMasseyResult triple_massey(const CochainComplex& c, const CohomologyClass& a1, const CohomologyClass& a2,
                                        const CohomologyClass& a3, GradedElement xi, GradedElement eta) {
    const auto& p = c.presentation();
    const auto& r1 = a1.representative();
    const auto& r2 = a2.representative();
    const auto& r3 = a3.representative();
    if (differential(p, xi) != wedge(r1, r2))
        throw CdgaError("d(xi) differs from a1^a2");
    if (differential(p, eta) != wedge(r2, r3))
        throw CdgaError("d(eta) differs from a2^a3");
    GradedElement rep = wedge(r1, eta);
    GradedElement second = wedge(xi, r3);
    rep += (a1.degree() % 2) ? second : -second;
    const int k = a1.degree() + a2.degree() + a3.degree() - 1;
    CohomologyClass value = class_of(c, rep, k);
    auto indet = triple_indeterminacy(c, a1, a2, a3);
    Verdict v = detail::in_span(indet, value.coordinates()) ? Verdict::Trivial : Verdict::NontrivialCertified;
    return TripleMasseyResult{{a1, a2, a3}, std::move(xi), std::move(eta), std::move(value), std::move(indet), v};
}

inline TripleMasseyResult triple_massey(const CochainComplex& c, const CohomologyClass& a1, const CohomologyClass& a2,
                                        const CohomologyClass& a3, const PrimitiveTransform& post = {}) {
    auto w12 = wedge(a1.representative(), a2.representative());
    auto w23 = wedge(a2.representative(), a3.representative());
    auto xi = detail::primitive_or_throw(c, w12, "a1^a2", post);
    auto eta = detail::primitive_or_throw(c, w23, "a2^a3", post);
    return triple_massey(c, a1, a2, a3, std::move(xi), std::move(eta));
}

struct TripleScanResult {
    std::size_t defined = 0;
    std::size_t nontrivial = 0;
    std::vector<std::array<std::size_t, 3>> nontrivial_indices;  // basis indices of nontrivial triples
};

// Every triple of basis classes of the given degrees with vanishing products.
inline TripleScanResult scan_triple_massey(const CochainComplex& c, int p1, int p2, int p3) {
    TripleScanResult out;
    auto b1 = cohomology_basis(c, p1), b2 = cohomology_basis(c, p2), b3 = cohomology_basis(c, p3);
    for (std::size_t i = 0; i < b1.size(); ++i)
        for (std::size_t j = 0; j < b2.size(); ++j) {
            if (!cup(b1[i], b2[j]).is_zero())
                continue;
            for (std::size_t k = 0; k < b3.size(); ++k) {
                if (!cup(b2[j], b3[k]).is_zero())
                    continue;
                ++out.defined;
                if (triple_massey(c, b1[i], b2[j], b3[k]).verdict == Verdict::NontrivialCertified) {
                    ++out.nontrivial;
                    out.nontrivial_indices.push_back({i, j, k});
                }
            }
        }
    return out;
}

// Forms alpha(i,j), 1 <= i <= j <= t, (i,j) != (1,t), with
// d alpha(i,j) = sum_{k=i}^{j-1} bar(alpha(i,k)) ^ alpha(k+1,j).
struct DefiningSystem {
    std::size_t length = 0;
    std::vector<int> degrees;  // degrees of the input classes
    std::map<std::pair<std::size_t, std::size_t>, GradedElement> forms;

    const GradedElement& at(std::size_t i, std::size_t j) const { return forms.at({i, j}); }
};

struct DefiningSystemFailure {
    std::size_t i = 0, j = 0;
    GradedElement rhs;
    std::string message;
};

struct DefiningSystemResult {
    std::optional<DefiningSystem> system;
    std::optional<DefiningSystemFailure> failure;
};

inline GradedElement defining_rhs(const DefiningSystem& s, std::size_t i, std::size_t j) {
    GradedElement sum;
    for (std::size_t k = i; k < j; ++k)
        sum += wedge(bar(s.at(i, k)), s.at(k + 1, j));
    return sum;
}

// Greedy construction by increasing j - i, then i (for t = 4: a12, a23, a34, a13, a24).
inline DefiningSystemResult defining_system(const CochainComplex& c, const std::vector<CohomologyClass>& classes,
                                            const PrimitiveTransform& post = {}) {
    const std::size_t t = classes.size();
    if (t < 2)
        throw CdgaError("a defining system needs at least two classes");
    DefiningSystem s;
    s.length = t;
    for (const auto& a : classes)
        s.degrees.push_back(a.degree());
    for (std::size_t i = 1; i <= t; ++i)
        s.forms[{i, i}] = GradedElement(c.presentation().table()) + classes[i - 1].representative();
    for (std::size_t gap = 1; gap + 1 < t; ++gap)
        for (std::size_t i = 1; i + gap <= t; ++i) {
            const std::size_t j = i + gap;
            GradedElement rhs = GradedElement(c.presentation().table()) + defining_rhs(s, i, j);
            auto u = find_primitive(c, rhs);
            if (!u) {
                std::string name = "alpha(" + std::to_string(i) + "," + std::to_string(j) + ")";
                return {std::nullopt, DefiningSystemFailure{i, j, rhs, "no " + name + " with d " + name + " = " +
                                                                            rhs.str()}};
            }
            s.forms[{i, j}] = post ? post(*u) : *u;
        }
    return {std::move(s), std::nullopt};
}

inline bool verify_defining_system(const CochainComplex& c, const DefiningSystem& s) {
    for (const auto& [ij, form] : s.forms) {
        if (ij.first == ij.second)
            continue;
        if (differential(c.presentation(), form) != defining_rhs(s, ij.first, ij.second))
            return false;
    }
    return true;
}

// Representative sum_{k=1}^{t-1} bar(alpha(1,k)) ^ alpha(k+1,t).
inline GradedElement defining_value_representative(const DefiningSystem& s) { return defining_rhs(s, 1, s.length); }

inline CohomologyClass massey_value(const CochainComplex& c, const DefiningSystem& s) {
    int k = 2 - static_cast<int>(s.length);
    for (int d : s.degrees)
        k += d;
    return class_of(c, defining_value_representative(s), k);
}

struct QuadrupleCertificate {
    std::vector<CohomologyClass> inputs;
    GradedElement sigma;
    std::optional<DefiningSystem> system;
    GradedElement psi;  // minus the defining-system value representative
    std::optional<CohomologyClass> sigma_psi;
    std::optional<ExactScalar> sigma_psi_top_value;
    std::vector<Check> checks;
    Verdict verdict = Verdict::Inconclusive;
};

// One-directional certificate for a quadruple of degree-2 classes: with the
// listed cohomology groups zero and sigma killing the outer representatives,
// [sigma ^ Psi] does not depend on the defining system, so a nonzero value
// shows the product does not contain zero.
inline QuadrupleCertificate certify_quadruple_nontrivial(const CochainComplex& c,
                                                         const std::vector<CohomologyClass>& classes,
                                                         const GradedElement& sigma,
                                                         const PrimitiveTransform& post = {}) {
    if (classes.size() != 4)
        throw CdgaError("quadruple certificate needs four classes");
    for (const auto& a : classes)
        if (a.degree() != 2)
            throw PreconditionError("quadruple certificate is stated for degree-2 classes");
    GradedElement sig = GradedElement(c.presentation().table()) + sigma;
    if (!sig.is_zero() && *sig.degree() != 2)
        throw PreconditionError("sigma must have degree 2");
    if (!differential(c.presentation(), sig).is_zero())
        throw NotClosedError(sig, differential(c.presentation(), sig));

    QuadrupleCertificate cert{classes, sig, std::nullopt, GradedElement(c.presentation().table()), std::nullopt,
                              std::nullopt, {}, Verdict::Inconclusive};
    auto ds = defining_system(c, classes, post);
    if (!ds.system)
        throw UndefinedProductError(ds.failure->message);
    cert.system = ds.system;

    const int p1 = classes[0].degree(), p2 = classes[1].degree(), p3 = classes[2].degree(), p4 = classes[3].degree();
    const std::pair<int, const char*> gaps[] = {{p2 + p3 - 1, "a2, a3"}, {p3 + p4 - 1, "a3, a4"}, {p1 + p2 - 1, "a1, a2"}};
    for (const auto& [k, which] : gaps) {
        const std::size_t b = betti_number(c, k);
        cert.checks.push_back({"H^" + std::to_string(k) + " = 0 (" + which + ")", b == 0, "dim " + std::to_string(b)});
    }
    auto s1 = wedge(sig, classes[0].representative());
    auto s4 = wedge(sig, classes[3].representative());
    cert.checks.push_back({"sigma ^ a1 = 0", s1.is_zero(), s1.str()});
    cert.checks.push_back({"sigma ^ a4 = 0", s4.is_zero(), s4.str()});

    cert.psi = -defining_value_representative(*cert.system);
    const int top = p1 + p2 + p3 + p4 - 2 + 2;
    auto sp = class_of(c, wedge(sig, cert.psi), top);
    cert.sigma_psi = sp;
    std::string witness = sp.is_zero() ? "0" : "nonzero";
    if (top == c.top_degree() && betti_number(c, top) == 1) {
        cert.sigma_psi_top_value = top_value(sp);
        witness = cert.sigma_psi_top_value->str() + "*[vol]";
    }
    cert.checks.push_back({"[sigma ^ Psi] != 0", !sp.is_zero(), witness});
    cert.verdict = all_pass(cert.checks) ? Verdict::NontrivialCertified : Verdict::Inconclusive;
    return cert;
}

struct GMasseyResult {
    CohomologyClass a;
    std::vector<CohomologyClass> xs;
    std::vector<GradedElement> primitives;  // d xi_i = alpha ^ beta_i
    GradedElement representative;
    CohomologyClass value;
    std::optional<ExactScalar> top_value;
    std::vector<std::vector<ExactScalar>> w_basis;
    std::vector<Check> checks;
    Verdict verdict = Verdict::Trivial;
};

// W = sum over i<j of <x_i, a, x_j> ∪ H^r, each triple product taken with its
// full coset (value plus indeterminacy); r makes the products land in degree
// value_degree (r = 3 for degree-2 inputs).
inline std::vector<std::vector<ExactScalar>> gmassey_indeterminacy(const CochainComplex& c, const CohomologyClass& a,
                                                                   const std::vector<CohomologyClass>& xs,
                                                                   int value_degree,
                                                                   const PrimitiveTransform& post = {}) {
    std::vector<std::vector<ExactScalar>> vs;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            auto t = triple_massey(c, xs[i], a, xs[j], post);
            const int k = t.value.degree();
            std::vector<CohomologyClass> coset{t.value};
            for (const auto& v : t.indeterminacy)
                coset.push_back(class_from_coordinates(c, k, v));
            for (const auto& h : cohomology_basis(c, value_degree - k))
                for (const auto& x : coset)
                    vs.push_back(cup(x, h).coordinates());
        }
    return detail::independent_vectors(vs, betti_number(c, value_degree));
}

// G-Massey product with explicit representatives and primitives.
inline GMasseyResult gmassey(const CochainComplex& c, const CohomologyClass& a, const std::vector<CohomologyClass>& xs,
                             std::vector<GradedElement> primitives, const PrimitiveTransform& post = {}) {
    if (xs.size() != 3 || primitives.size() != 3)
        throw CdgaError("G-Massey product takes three classes x1, x2, x3");
    if (a.degree() != 2)
        throw PreconditionError("G-Massey product is defined for degree-2 classes");
    for (const auto& x : xs)
        if (x.degree() != 2)
            throw PreconditionError("G-Massey product is defined for degree-2 classes");
    const auto& p = c.presentation();
    const auto& alpha = a.representative();
    std::vector<Check> checks;
    for (std::size_t i = 0; i < 3; ++i) {
        auto lhs = differential(p, primitives[i]);
        auto rhs = wedge(alpha, xs[i].representative());
        if (lhs != rhs)
            throw CdgaError("d(xi" + std::to_string(i + 1) + ") differs from a^x" + std::to_string(i + 1));
        checks.push_back({"d xi" + std::to_string(i + 1) + " = a ^ x" + std::to_string(i + 1), true, rhs.str()});
    }
    const auto& b = xs;
    GradedElement rep = wedge(primitives[0], primitives[1], b[2].representative()) +
                        wedge(primitives[1], primitives[2], b[0].representative()) +
                        wedge(primitives[2], primitives[0], b[1].representative());
    rep = GradedElement(p.table()) + rep;
    auto drep = differential(p, rep);
    checks.push_back({"representative closed", drep.is_zero(), drep.str()});
    if (!drep.is_zero())
        throw CdgaError("G-Massey representative is not closed: d = " + drep.str());
    const int k = 2 * (a.degree() + xs[0].degree() - 1) + xs[0].degree();
    CohomologyClass value = class_of(c, rep, k);
    auto w = gmassey_indeterminacy(c, a, xs, k, post);
    std::optional<ExactScalar> tv;
    if (k == c.top_degree() && betti_number(c, k) == 1)
        tv = top_value(value);
    Verdict v;
    if (value.is_zero())
        v = Verdict::Trivial;
    else if (!detail::in_span(w, value.coordinates()))
        v = Verdict::NontrivialCertified;
    else
        v = Verdict::InconclusiveInW;
    checks.push_back({"value outside W", v == Verdict::NontrivialCertified,
                      "dim W = " + std::to_string(w.size()) + (tv ? ", value = " + tv->str() + "*[vol]" : "")});
    return GMasseyResult{a, xs, std::move(primitives), std::move(rep), std::move(value), tv, std::move(w),
                         std::move(checks), v};
}

inline GMasseyResult gmassey(const CochainComplex& c, const CohomologyClass& a, const std::vector<CohomologyClass>& xs,
                             const PrimitiveTransform& post = {}) {
    if (xs.size() != 3)
        throw CdgaError("G-Massey product takes three classes x1, x2, x3");
    std::vector<GradedElement> prims;
    for (std::size_t i = 0; i < 3; ++i) {
        auto w = wedge(a.representative(), xs[i].representative());
        if (!cup(a, xs[i]).is_zero())
            throw UndefinedProductError("a ∪ x" + std::to_string(i + 1) + " is not zero");
        prims.push_back(detail::primitive_or_throw(c, w, "a^x" + std::to_string(i + 1), post));
    }
    return gmassey(c, a, xs, std::move(prims), post);
}

struct BracketExpansion {
    GradedElement chi;                   // d chi = alpha ^ alpha
    std::vector<GradedElement> xis;      // d xi_i = alpha ^ beta_i
    std::vector<GradedElement> etas;     // d eta_i = xi_i ^ alpha - beta_i ^ chi
    std::vector<GradedElement> brackets; // closed 5-forms paired with beta_3, beta_2, beta_1
    GradedElement gmassey_representative;
    GradedElement expansion;
    std::vector<Check> checks;
    bool pass() const { return all_pass(checks); }
};

// Rewrites the G-Massey representative as a sum of beta_k times closed forms,
// each of which represents an element of a triple-product coset.
inline BracketExpansion gmassey_bracket_expansion(const CochainComplex& c, const CohomologyClass& a,
                                      const std::vector<CohomologyClass>& xs, const PrimitiveTransform& post = {}) {
    if (xs.size() != 3)
        throw CdgaError("three classes x1, x2, x3 are required");
    if (betti_number(c, 5) != 0)
        throw PreconditionError("H^5 is not zero (dim " + std::to_string(betti_number(c, 5)) + ")");
    if (!cup(a, a).is_zero())
        throw PreconditionError("a ∪ a is not zero");
    for (std::size_t i = 0; i < 3; ++i)
        if (!cup(a, xs[i]).is_zero())
            throw PreconditionError("a ∪ x" + std::to_string(i + 1) + " is not zero");
    const auto& p = c.presentation();
    const auto& alpha = a.representative();
    BracketExpansion w;
    w.chi = detail::primitive_or_throw(c, wedge(alpha, alpha), "a^a", post);
    for (std::size_t i = 0; i < 3; ++i)
        w.xis.push_back(detail::primitive_or_throw(c, wedge(alpha, xs[i].representative()),
                                                   "a^x" + std::to_string(i + 1), post));
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& beta = xs[i].representative();
        auto rhs = GradedElement(p.table()) + wedge(w.xis[i], alpha) - wedge(beta, w.chi);
        auto u = find_primitive(c, rhs);
        if (!u)
            throw PreconditionError("xi" + std::to_string(i + 1) + "^a - x" + std::to_string(i + 1) +
                                    "^chi is not exact");
        w.etas.push_back(post ? post(*u) : *u);
    }
    const auto& b1 = xs[0].representative();
    const auto& b2 = xs[1].representative();
    const auto& b3 = xs[2].representative();
    const auto &x1 = w.xis[0], &x2 = w.xis[1], &x3 = w.xis[2];
    const auto &e1 = w.etas[0], &e2 = w.etas[1], &e3 = w.etas[2];
    w.brackets = {wedge(e1, b2) - wedge(e2, b1) + wedge(x1, x2), wedge(e3, b1) - wedge(e1, b3) + wedge(x3, x1),
                  wedge(e2, b3) - wedge(e3, b2) + wedge(x2, x3)};
    w.expansion = wedge(b3, w.brackets[0]) + wedge(b2, w.brackets[1]) + wedge(b1, w.brackets[2]);
    w.gmassey_representative = GradedElement(p.table()) + wedge(x1, x2, b3) + wedge(x2, x3, b1) + wedge(x3, x1, b2);
    auto diff = w.gmassey_representative - w.expansion;
    w.checks.push_back({"d chi = a ^ a", differential(p, w.chi) == wedge(alpha, alpha), w.chi.str()});
    for (std::size_t i = 0; i < 3; ++i) {
        auto expected = wedge(w.xis[i], alpha) - wedge(xs[i].representative(), w.chi);
        w.checks.push_back({"d eta" + std::to_string(i + 1) + " = xi" + std::to_string(i + 1) + " ^ a - x" +
                                std::to_string(i + 1) + " ^ chi",
                            differential(p, w.etas[i]) == expected, w.etas[i].str()});
    }
    for (std::size_t i = 0; i < 3; ++i) {
        auto d = differential(p, w.brackets[i]);
        w.checks.push_back({"bracket " + std::to_string(i + 1) + " closed", d.is_zero(), d.str()});
    }
    w.checks.push_back({"representative = expansion", diff.is_zero(), diff.str()});
    return w;
}

enum class FormalityVerdict { NonFormal, NoObstructionFound };

inline std::string to_string(FormalityVerdict v) {
    return v == FormalityVerdict::NonFormal ? "non-formal" : "no obstruction found";
}

inline FormalityVerdict formality_verdict(const std::vector<Verdict>& reports) {
    for (auto v : reports)
        if (v == Verdict::NontrivialCertified)
            return FormalityVerdict::NonFormal;
    return FormalityVerdict::NoObstructionFound;
}

} // namespace nilcdga
