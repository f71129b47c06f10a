#pragma once

#include "cohomology.hpp"
#include "dsl.hpp"
#include "exterior.hpp"
#include "matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nilcdga {

class GroupActionError : public CdgaError {
public:
    using CdgaError::CdgaError;
};

// Finite-order automorphism of a presentation, given by generator images.
class AlgebraAutomorphism {
public:
    AlgebraAutomorphism(CdgaPresentation p, std::string name, int order, std::vector<GradedElement> images)
        : presentation_(std::move(p)),
          name_(std::move(name)),
          order_(order),
          map_(presentation_.table(), presentation_.table(), std::move(images)) {
        if (order_ < 1)
            throw GroupActionError("action order must be positive");
    }

    static AlgebraAutomorphism from_source(const PresentationSource& src, const std::string& action) {
        const ActionDecl* decl = src.find_action(action);
        if (!decl)
            throw GroupActionError("no action named '" + action + "' in " + src.presentation.name());
        return AlgebraAutomorphism(src.presentation, decl->name, decl->order, decl->images);
    }

    static AlgebraAutomorphism identity(const CdgaPresentation& p) {
        std::vector<GradedElement> imgs;
        for (std::size_t i = 0; i < p.generator_count(); ++i)
            imgs.push_back(p.generator(i));
        return AlgebraAutomorphism(p, "id", 1, std::move(imgs));
    }

    const CdgaPresentation& presentation() const noexcept { return presentation_; }
    const std::string& name() const noexcept { return name_; }
    int order() const noexcept { return order_; }
    const AlgebraMorphism& map() const noexcept { return map_; }

    GradedElement apply(const GradedElement& x) const { return map_.apply(x); }

    GradedElement apply_power(const GradedElement& x, int k) const {
        GradedElement y = GradedElement(presentation_.table()) + x;
        for (int i = 0; i < k; ++i)
            y = map_.apply(y);
        return y;
    }

private:
    CdgaPresentation presentation_;
    std::string name_;
    int order_;
    AlgebraMorphism map_;
};

struct AutomorphismReport {
    bool commutes_with_d = true;
    std::vector<ChainMapFailure> failures;
    bool declared_order_is_identity = true;
    int computed_order = 0;  // 0 when no power up to the search bound is the identity
    bool pass() const { return commutes_with_d && declared_order_is_identity && computed_order > 0; }
};

inline AutomorphismReport verify_automorphism(const AlgebraAutomorphism& a, int search_bound = 1000) {
    AutomorphismReport r;
    const auto& p = a.presentation();
    r.failures = chain_map_failures(a.map(), p, p);
    r.commutes_with_d = r.failures.empty();
    auto is_identity = [&](const std::vector<GradedElement>& imgs) {
        for (std::size_t i = 0; i < imgs.size(); ++i)
            if (imgs[i] != p.generator(i))
                return false;
        return true;
    };
    std::vector<GradedElement> cur;
    for (std::size_t i = 0; i < p.generator_count(); ++i)
        cur.push_back(p.generator(i));
    for (int k = 1; k <= search_bound; ++k) {
        for (auto& g : cur)
            g = a.apply(g);
        if (k == a.order())
            r.declared_order_is_identity = is_identity(cur);
        if (r.computed_order == 0 && is_identity(cur))
            r.computed_order = k;
        if (r.computed_order && k >= a.order())
            break;
    }
    if (a.order() > search_bound)
        r.declared_order_is_identity = false;
    return r;
}

// (1/n) * sum_{k<n} rho^k x
inline GradedElement reynolds(const AlgebraAutomorphism& a, const GradedElement& x) {
    GradedElement sum(a.presentation().table());
    GradedElement y = GradedElement(a.presentation().table()) + x;
    for (int k = 0; k < a.order(); ++k) {
        sum += y;
        y = a.apply(y);
    }
    return ExactScalar(make_rational(1, a.order())) * sum;
}

// Matrix of the averaging projector on the degree-k monomials.
inline ExactMatrix reynolds_matrix(const AlgebraAutomorphism& a, int k) {
    const auto& p = a.presentation();
    auto monos = basis_of_degree(p, k);
    auto full = CochainComplex::full(p);
    ExactMatrix r(monos.size(), monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j) {
        auto img = reynolds(a, GradedElement::monomial(p.table(), monos[j], ExactScalar(1)));
        auto col = full.monomial_coordinates(img, k);
        for (std::size_t i = 0; i < monos.size(); ++i)
            r(i, j) = col[i];
    }
    return r;
}

// Per-degree basis of the invariant forms (RREF of the projector image).
inline CochainComplex invariant_subcomplex(const AlgebraAutomorphism& a) {
    auto report = verify_automorphism(a);
    if (!report.pass())
        throw GroupActionError("action '" + a.name() + "' is not a finite-order automorphism of the complex");
    const auto& p = a.presentation();
    std::vector<ExactMatrix> bases;
    for (int k = 0; k <= static_cast<int>(p.generator_count()); ++k) {
        auto r = reynolds_matrix(a, k);
        auto rows = row_space_basis(r.transpose());
        bases.push_back(ExactMatrix::from_columns(r.rows(), rows));
    }
    return CochainComplex::subcomplex(p, std::move(bases), p.name() + "/" + a.name());
}

struct IsotypicMultiplicities {
    std::size_t trivial = 0;
    std::size_t two_dimensional = 0;  // copies of the real rotation representation
};

inline IsotypicMultiplicities isotypic_multiplicities(const AlgebraAutomorphism& a, int k) {
    if (a.order() != 3)
        throw GroupActionError("isotypic decomposition is implemented for order-3 actions");
    const std::size_t total = basis_of_degree(a.presentation(), k).size();
    const std::size_t inv = rank(reynolds_matrix(a, k));
    if ((total - inv) % 2)
        throw GroupActionError("non-integral multiplicity of the two-dimensional representation in degree " +
                               std::to_string(k));
    return {inv, (total - inv) / 2};
}

// Matrix of the induced map on H^k in the chosen class basis.
inline ExactMatrix induced_on_cohomology(const CochainComplex& c, const AlgebraAutomorphism& a, int k) {
    auto basis = cohomology_basis(c, k);
    ExactMatrix m(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto img = class_of(c, a.apply(basis[j].representative()), k);
        for (std::size_t i = 0; i < basis.size(); ++i)
            m(i, j) = img.coordinates()[i];
    }
    return m;
}

// dim of the invariant part of H^k(c), via the averaged induced map.
inline std::size_t invariant_cohomology_dimension(const CochainComplex& c, const AlgebraAutomorphism& a, int k) {
    ExactMatrix p = induced_on_cohomology(c, a, k);
    const std::size_t n = p.rows();
    ExactMatrix sum(n, n), power = ExactMatrix::identity(n);
    for (int j = 0; j < a.order(); ++j) {
        sum = sum + power;
        power = power * p;
    }
    return rank(sum);
}

// Linear action on R^2 together with a rank-2 lattice (columns) it preserves.
struct LatticeAction {
    IntMatrix rho;
    IntMatrix lattice;

    LatticeAction(IntMatrix r, IntMatrix l) : rho(std::move(r)), lattice(std::move(l)) {
        if (rho.rows() != 2 || rho.cols() != 2 || lattice.rows() != 2 || lattice.cols() != 2)
            throw GroupActionError("lattice actions are 2x2");
        if (int_determinant(lattice) == 0)
            throw GroupActionError("lattice basis is degenerate");
        (void)in_lattice_coordinates();
    }

    // rho written in the lattice basis; must be integral.
    IntMatrix in_lattice_coordinates() const {
        ExactMatrix l = to_exact(lattice), r = to_exact(rho);
        ExactMatrix conj = inverse(l) * r * l;
        IntMatrix out(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const Rational& q = conj(i, j).rational_part();
                if (q.get_den() != 1)
                    throw GroupActionError("rho does not preserve the lattice");
                out(i, j) = q.get_num();
            }
        return out;
    }

    static ExactMatrix to_exact(const IntMatrix& m) {
        ExactMatrix out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out(i, j) = ExactScalar(Rational(m(i, j)));
        return out;
    }
};

inline IntMatrix standard_rotation3() { return to_int_matrix({{-1, -1}, {1, 0}}); }

// |det(rho - 1)| = index of (rho - 1)L in L, read off the Smith form.
inline BigInt fixed_point_count(const LatticeAction& l) {
    IntMatrix a = l.in_lattice_coordinates();
    a(0, 0) -= 1;
    a(1, 1) -= 1;
    auto s = smith_normal_form(a);
    BigInt count = 1;
    for (const auto& d : s.diag)
        count *= d;
    if (count == 0)
        throw GroupActionError("rho - 1 is singular: the fixed locus is not finite");
    return count;
}

// Fixed points of rho on R^2/L, in ambient coordinates, each reduced so that
// its lattice coordinates lie in [0,1).
inline std::vector<std::pair<Rational, Rational>> fixed_points(const LatticeAction& l) {
    IntMatrix a = l.in_lattice_coordinates();
    a(0, 0) -= 1;
    a(1, 1) -= 1;
    auto s = smith_normal_form(a);
    for (const auto& d : s.diag)
        if (d == 0)
            throw GroupActionError("rho - 1 is singular: the fixed locus is not finite");
    // (rho-1) x = z in Z^2, U (rho-1) V = D: x = V D^{-1} t for t in prod Z/d_i
    ExactMatrix v = LatticeAction::to_exact(s.right), lat = LatticeAction::to_exact(l.lattice);
    std::vector<std::pair<Rational, Rational>> out;
    const long d0 = s.diag[0].get_si(), d1 = s.diag[1].get_si();
    for (long t0 = 0; t0 < d0; ++t0)
        for (long t1 = 0; t1 < d1; ++t1) {
            std::vector<ExactScalar> y{ExactScalar::rational(t0, d0), ExactScalar::rational(t1, d1)};
            auto x = v.apply(y);
            for (auto& c : x) {
                Rational q = c.rational_part();
                mpz_class fl;
                mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
                c = ExactScalar(q - Rational(fl));
            }
            auto p = lat.apply(x);
            out.emplace_back(p[0].rational_part(), p[1].rational_part());
        }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& w) {
        return u.first != w.first ? u.first < w.first : u.second < w.second;
    });
    return out;
}

// Factor-by-factor count on a product of 2-tori.
inline BigInt product_fixed_point_count(const std::vector<LatticeAction>& factors) {
    BigInt n = 1;
    for (const auto& f : factors)
        n *= fixed_point_count(f);
    return n;
}

// chi(X/G) = chi(X)/n + sum over singular points of (1 - 1/|isotropy|)
inline Rational quotient_euler(long chi, long n, const std::vector<long>& isotropy_orders) {
    if (n < 1)
        throw GroupActionError("group order must be positive");
    Rational r = make_rational(chi, n);
    for (long m : isotropy_orders) {
        if (m < 1)
            throw GroupActionError("isotropy order must be positive");
        r += 1 - make_rational(1, m);
    }
    return r;
}

// Each resolved isolated point contributes three exceptional divisors.
inline long resolution_betti2(long b2_orbifold, long fixed_points) { return b2_orbifold + 3 * fixed_points; }

// The four 2-torus factors of M with the order-3 rotation: the flat factor,
// the two base factors (standard lattice) and the fiber lattice <(1,1),(3,0)>.
inline std::vector<LatticeAction> torus_factors_of_m() {
    auto std_lattice = to_int_matrix({{1, 0}, {0, 1}});
    auto fiber = to_int_matrix({{1, 3}, {1, 0}});
    return {LatticeAction(standard_rotation3(), std_lattice), LatticeAction(standard_rotation3(), std_lattice),
            LatticeAction(standard_rotation3(), std_lattice), LatticeAction(standard_rotation3(), fiber)};
}

} // namespace nilcdga
