#pragma once

#include "exterior.hpp"
#include "matrix.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilcdga {

class NotClosedError : public CdgaError {
public:
    NotClosedError(GradedElement z, GradedElement dz)
        : CdgaError("element is not closed: d(" + z.str() + ") = " + dz.str()), dz_(std::move(dz)) {}
    const GradedElement& dz() const noexcept { return dz_; }

private:
    GradedElement dz_;
};

class NotInSubcomplexError : public CdgaError {
public:
    explicit NotInSubcomplexError(const GradedElement& z)
        : CdgaError("element does not lie in the subcomplex: " + z.str()) {}
};

// Cochain complex of a presentation, or of a d-stable graded subspace given by
// explicit per-degree bases.  Cheap to copy; copies share cached cohomology.
class CochainComplex {
public:
    struct DegreeCohomology {
        std::vector<std::vector<ExactScalar>> cocycles;   // H^k representatives, complex coordinates
        std::vector<std::vector<ExactScalar>> boundaries; // basis of d(C^{k-1})
        std::optional<LinearSolver<ExactScalar>> splitter; // on [cocycles | boundaries]
        std::size_t cocycle_dim = 0;
    };

    static CochainComplex full(const CdgaPresentation& p) { return CochainComplex(p, std::nullopt, p.name()); }

    // bases[k] holds, as columns, the monomial coordinates of a basis of the
    // degree-k part.  Throws NotInSubcomplexError if d leaves the subspace.
    static CochainComplex subcomplex(const CdgaPresentation& p, std::vector<ExactMatrix> bases, std::string label) {
        if (bases.size() != p.generator_count() + 1)
            throw CdgaError("subcomplex needs one basis per degree 0.." + std::to_string(p.generator_count()));
        for (std::size_t k = 0; k < bases.size(); ++k) {
            if (bases[k].rows() != basis_of_degree(p.generator_count(), static_cast<int>(k)).size())
                throw CdgaError("subcomplex basis in degree " + std::to_string(k) + " has the wrong ambient size");
            if (rank(bases[k]) != bases[k].cols())
                throw CdgaError("subcomplex basis in degree " + std::to_string(k) + " is not independent");
        }
        return CochainComplex(p, std::move(bases), std::move(label));
    }

    const CdgaPresentation& presentation() const noexcept { return impl_->presentation; }
    const std::string& label() const noexcept { return impl_->label; }
    bool is_full() const noexcept { return !impl_->bases.has_value(); }
    int top_degree() const noexcept { return static_cast<int>(impl_->presentation.generator_count()); }
    bool same_as(const CochainComplex& o) const noexcept { return impl_ == o.impl_; }

    std::size_t dimension(int k) const {
        if (k < 0 || k > top_degree())
            return 0;
        return impl_->dims[static_cast<std::size_t>(k)];
    }

    // Matrix of d: C^k -> C^{k+1} in complex coordinates.
    const ExactMatrix& differential_matrix(int k) const { return impl_->dmat.at(static_cast<std::size_t>(k)); }

    // Monomial coordinates of a degree-k element, ordered as basis_of_degree.
    std::vector<ExactScalar> monomial_coordinates(const GradedElement& z, int k) const {
        const auto& index = impl_->mono_index.at(static_cast<std::size_t>(k));
        std::vector<ExactScalar> v(impl_->monos[static_cast<std::size_t>(k)].size());
        for (const auto& [m, c] : z.terms()) {
            if (m.degree() != k)
                throw CdgaError("element is not of degree " + std::to_string(k) + ": " + z.str());
            v[index.at(m.mask())] = c;
        }
        return v;
    }

    std::vector<ExactScalar> coordinates(const GradedElement& z, int k) const {
        if (k < 0 || k > top_degree()) {
            if (!z.is_zero())
                throw CdgaError("degree outside the complex");
            return {};
        }
        auto v = monomial_coordinates(z, k);
        if (is_full())
            return v;
        auto x = impl_->embed_solvers[static_cast<std::size_t>(k)]->solve(v);
        if (!x)
            throw NotInSubcomplexError(z);
        return *x;
    }

    bool contains(const GradedElement& z) const {
        if (z.is_zero())
            return true;
        auto k = z.degree();
        if (is_full())
            return true;
        return impl_->embed_solvers[static_cast<std::size_t>(*k)]->in_column_space(monomial_coordinates(z, *k));
    }

    GradedElement element(const std::vector<ExactScalar>& coords, int k) const {
        GradedElement out(impl_->presentation.table());
        if (k < 0 || k > top_degree())
            return out;
        const auto& monos = impl_->monos[static_cast<std::size_t>(k)];
        if (is_full()) {
            for (std::size_t i = 0; i < coords.size(); ++i)
                out.add_term(monos[i], coords[i]);
            return out;
        }
        const auto& b = (*impl_->bases)[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < coords.size(); ++j) {
            if (coords[j].is_zero())
                continue;
            for (std::size_t i = 0; i < b.rows(); ++i)
                if (!b(i, j).is_zero())
                    out.add_term(monos[i], coords[j] * b(i, j));
        }
        return out;
    }

    // Cohomology data of degree k, computed once and shared by all copies.
    const DegreeCohomology& degree_cohomology(int k) const {
        const auto idx = static_cast<std::size_t>(k);
        std::call_once(impl_->once[idx], [&] { impl_->cache[idx] = compute_degree(k); });
        return impl_->cache[idx];
    }

private:
    struct Impl {
        CdgaPresentation presentation;
        std::string label;
        std::optional<std::vector<ExactMatrix>> bases;
        std::vector<std::vector<Monomial>> monos;
        std::vector<std::unordered_map<std::uint64_t, std::size_t>> mono_index;
        std::vector<std::size_t> dims;
        std::vector<std::optional<LinearSolver<ExactScalar>>> embed_solvers;
        std::vector<ExactMatrix> dmat;
        std::unique_ptr<std::once_flag[]> once;
        std::vector<DegreeCohomology> cache;
    };

    CochainComplex(const CdgaPresentation& p, std::optional<std::vector<ExactMatrix>> bases, std::string label)
        : impl_(std::make_shared<Impl>(Impl{p, std::move(label), std::move(bases), {}, {}, {}, {}, {}, {}, {}})) {
        auto& im = *impl_;
        const std::size_t n = p.generator_count();
        im.once = std::make_unique<std::once_flag[]>(n + 1);
        im.cache.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            im.monos.push_back(basis_of_degree(n, static_cast<int>(k)));
            std::unordered_map<std::uint64_t, std::size_t> index;
            for (std::size_t i = 0; i < im.monos.back().size(); ++i)
                index.emplace(im.monos.back()[i].mask(), i);
            im.mono_index.push_back(std::move(index));
            im.dims.push_back(im.bases ? (*im.bases)[k].cols() : im.monos.back().size());
            if (im.bases)
                im.embed_solvers.emplace_back(LinearSolver<ExactScalar>((*im.bases)[k]));
            else
                im.embed_solvers.emplace_back(std::nullopt);
        }
        for (std::size_t k = 0; k <= n; ++k) {
            const std::size_t rows = k < n ? im.dims[k + 1] : 0;
            ExactMatrix d(rows, im.dims[k]);
            if (k < n) {
                for (std::size_t j = 0; j < im.dims[k]; ++j) {
                    std::vector<ExactScalar> e(im.dims[k]);
                    e[j] = 1;
                    GradedElement x = element(e, static_cast<int>(k));
                    GradedElement dx = differential(p, x);
                    auto col = coordinates(dx, static_cast<int>(k + 1));
                    for (std::size_t i = 0; i < rows; ++i)
                        d(i, j) = col[i];
                }
            }
            im.dmat.push_back(std::move(d));
        }
    }

    DegreeCohomology compute_degree(int k) const {
        DegreeCohomology out;
        const auto idx = static_cast<std::size_t>(k);
        auto cocycles = kernel_basis(impl_->dmat[idx]);
        out.cocycle_dim = cocycles.size();
        if (k > 0) {
            const auto& prev = impl_->dmat[idx - 1];
            auto red = rref(prev);
            for (auto c : red.pivots)
                out.boundaries.push_back(prev.column(c));
        }
        // Keep the boundary basis first so that the pivots landing in the
        // cocycle block pick a complement of the boundaries, leftmost first.
        const std::size_t nb = out.boundaries.size();
        std::vector<std::vector<ExactScalar>> cols = out.boundaries;
        cols.insert(cols.end(), cocycles.begin(), cocycles.end());
        const std::size_t dim = impl_->dims[idx];
        if (!cols.empty()) {
            auto red = rref(ExactMatrix::from_columns(dim, cols));
            for (auto c : red.pivots)
                if (c >= nb)
                    out.cocycles.push_back(cols[c]);
        }
        std::vector<std::vector<ExactScalar>> split = out.cocycles;
        split.insert(split.end(), out.boundaries.begin(), out.boundaries.end());
        if (!split.empty())
            out.splitter.emplace(ExactMatrix::from_columns(dim, split));
        return out;
    }

    std::shared_ptr<Impl> impl_;
};

class CohomologyClass {
public:
    CohomologyClass(CochainComplex complex, int degree, std::vector<ExactScalar> coords, GradedElement rep)
        : complex_(std::move(complex)), degree_(degree), coords_(std::move(coords)), rep_(std::move(rep)) {}

    const CochainComplex& complex() const noexcept { return complex_; }
    int degree() const noexcept { return degree_; }
    const std::vector<ExactScalar>& coordinates() const noexcept { return coords_; }
    const GradedElement& representative() const noexcept { return rep_; }
    bool is_zero() const { return is_zero_vector(coords_); }

    friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
        return a.complex_.same_as(b.complex_) && a.degree_ == b.degree_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const CohomologyClass& a, const CohomologyClass& b) { return !(a == b); }

private:
    CochainComplex complex_;
    int degree_;
    std::vector<ExactScalar> coords_;
    GradedElement rep_;
};

inline std::size_t betti_number(const CochainComplex& c, int k) {
    if (k < 0 || k > c.top_degree())
        return 0;
    return c.degree_cohomology(k).cocycles.size();
}

inline std::vector<CohomologyClass> cohomology_basis(const CochainComplex& c, int k) {
    std::vector<CohomologyClass> out;
    if (k < 0 || k > c.top_degree())
        return out;
    const auto& h = c.degree_cohomology(k);
    for (std::size_t i = 0; i < h.cocycles.size(); ++i) {
        std::vector<ExactScalar> e(h.cocycles.size());
        e[i] = 1;
        out.emplace_back(c, k, std::move(e), c.element(h.cocycles[i], k));
    }
    return out;
}

// Class of a closed element of degree k.
inline CohomologyClass class_of(const CochainComplex& c, const GradedElement& z, int k) {
    if (!z.is_zero() && *z.degree() != k)
        throw CdgaError("element is not of degree " + std::to_string(k) + ": " + z.str());
    GradedElement rep = GradedElement(c.presentation().table()) + z;
    if (k < 0 || k > c.top_degree())
        return CohomologyClass(c, k, {}, rep);
    GradedElement dz = differential(c.presentation(), rep);
    if (!dz.is_zero())
        throw NotClosedError(rep, dz);
    auto v = c.coordinates(rep, k);
    const auto& h = c.degree_cohomology(k);
    std::vector<ExactScalar> coords(h.cocycles.size());
    if (h.splitter) {
        auto x = h.splitter->solve(v);
        if (!x)
            throw CdgaError("internal error: cocycle outside cocycles + boundaries");
        std::copy(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(coords.size()), coords.begin());
    }
    return CohomologyClass(c, k, std::move(coords), std::move(rep));
}

inline CohomologyClass class_of(const CochainComplex& c, const GradedElement& z) {
    if (z.is_zero())
        throw CdgaError("the degree of the zero element is ambiguous; pass it explicitly");
    return class_of(c, z, *z.degree());
}

inline CohomologyClass zero_class(const CochainComplex& c, int k) {
    return CohomologyClass(c, k, std::vector<ExactScalar>(betti_number(c, k)), GradedElement(c.presentation().table()));
}

// Class with the given coordinates in the chosen basis of H^k.
inline CohomologyClass class_from_coordinates(const CochainComplex& c, int k, const std::vector<ExactScalar>& coords) {
    const auto& h = c.degree_cohomology(k);
    if (coords.size() != h.cocycles.size())
        throw CdgaError("coordinate vector has the wrong length for H^" + std::to_string(k));
    std::vector<ExactScalar> v(c.dimension(k));
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t r = 0; r < v.size(); ++r)
            v[r] += coords[i] * h.cocycles[i][r];
    return CohomologyClass(c, k, coords, c.element(v, k));
}

inline CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) {
    if (!a.complex().same_as(b.complex()))
        throw CdgaError("cup product of classes from different complexes");
    const int k = a.degree() + b.degree();
    if (k > a.complex().top_degree())
        return CohomologyClass(a.complex(), k, {}, GradedElement(a.complex().presentation().table()));
    return class_of(a.complex(), wedge(a.representative(), b.representative()), k);
}

inline CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b) {
    if (!a.complex().same_as(b.complex()) || a.degree() != b.degree())
        throw CdgaError("sum of classes from different groups");
    auto coords = a.coordinates();
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] += b.coordinates()[i];
    return CohomologyClass(a.complex(), a.degree(), std::move(coords), a.representative() + b.representative());
}

inline CohomologyClass operator*(const ExactScalar& s, const CohomologyClass& a) {
    auto coords = a.coordinates();
    for (auto& x : coords)
        x *= s;
    return CohomologyClass(a.complex(), a.degree(), std::move(coords), s * a.representative());
}

inline std::vector<std::size_t> betti_vector(const CochainComplex& c) {
    std::vector<std::size_t> out;
    for (int k = 0; k <= c.top_degree(); ++k)
        out.push_back(betti_number(c, k));
    return out;
}

inline long euler_characteristic(const CochainComplex& c) {
    long chi = 0;
    for (int k = 0; k <= c.top_degree(); ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long>(betti_number(c, k));
    return chi;
}

inline long chain_euler_characteristic(const CochainComplex& c) {
    long chi = 0;
    for (int k = 0; k <= c.top_degree(); ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long>(c.dimension(k));
    return chi;
}

// Some u with d(u) = z, or nullopt when z is not exact in the complex.
inline std::optional<GradedElement> find_primitive(const CochainComplex& c, const GradedElement& z, int k) {
    const auto table = c.presentation().table();
    if (z.is_zero())
        return GradedElement(table);
    if (k <= 0)
        return std::nullopt;
    if (k > c.top_degree())
        throw CdgaError("degree outside the complex");
    auto v = c.coordinates(z, k);
    auto u = solve(c.differential_matrix(k - 1), v);
    if (!u)
        return std::nullopt;
    return c.element(*u, k - 1);
}

inline std::optional<GradedElement> find_primitive(const CochainComplex& c, const GradedElement& z) {
    if (z.is_zero())
        return GradedElement(c.presentation().table());
    return find_primitive(c, z, *z.degree());
}

inline bool is_exact(const CochainComplex& c, const GradedElement& z) { return find_primitive(c, z).has_value(); }

// Top degree class of the monomial of all generators in table order.
inline CohomologyClass volume_class(const CochainComplex& c) {
    return class_of(c, c.presentation().volume(), c.top_degree());
}

// x = value * [vol] for a top-degree class x.
inline ExactScalar top_value(const CohomologyClass& x) {
    const auto& c = x.complex();
    if (x.degree() != c.top_degree())
        throw CdgaError("top_value needs a class of degree " + std::to_string(c.top_degree()));
    if (betti_number(c, c.top_degree()) != 1)
        throw CdgaError("top cohomology is not one-dimensional");
    auto vol = volume_class(c);
    if (vol.is_zero())
        throw CdgaError("volume monomial is exact");
    return x.coordinates()[0] / vol.coordinates()[0];
}

inline ExactScalar top_value(const CochainComplex& c, const GradedElement& z) {
    return top_value(class_of(c, z, c.top_degree()));
}

// Pairing H^k x H^{n-k} -> Q given by the top coefficient of the cup product.
inline ExactMatrix poincare_pairing(const CochainComplex& c, int k) {
    const int n = c.top_degree();
    if (betti_number(c, n) != 1)
        throw CdgaError("top cohomology is not one-dimensional");
    auto left = cohomology_basis(c, k), right = cohomology_basis(c, n - k);
    ExactMatrix m(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
            m(i, j) = top_value(cup(left[i], right[j]));
    return m;
}

// Basis of the kernel of x -> x ∪ omega^power on H^k.
inline std::vector<CohomologyClass> lefschetz_kernel(const CochainComplex& c, const CohomologyClass& omega, int k,
                                                     int power) {
    if (omega.degree() != 2)
        throw CdgaError("Lefschetz map needs a degree-2 class");
    if (power < 0)
        throw CdgaError("negative Lefschetz power");
    if (!omega.complex().same_as(c))
        throw CdgaError("class and complex differ");
    auto basis = cohomology_basis(c, k);
    const int target = k + 2 * power;
    const std::size_t rows = betti_number(c, target);
    ExactMatrix m(rows, basis.size());
    CohomologyClass om = class_of(c, power == 0 ? GradedElement::unit(c.presentation().table())
                                                : nilcdga::power(omega.representative(), power),
                                  2 * power);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto image = cup(basis[j], om);
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = image.coordinates()[i];
    }
    std::vector<CohomologyClass> out;
    for (const auto& v : kernel_basis(m))
        out.push_back(class_from_coordinates(c, k, v));
    return out;
}

// Rank of the span of the given classes (all of one degree).
inline std::size_t class_span_rank(const std::vector<CohomologyClass>& classes) {
    if (classes.empty())
        return 0;
    const std::size_t dim = classes.front().coordinates().size();
    std::vector<std::vector<ExactScalar>> cols;
    for (const auto& x : classes)
        cols.push_back(x.coordinates());
    return rank(ExactMatrix::from_columns(dim, cols));
}

} // namespace nilcdga
