#pragma once

#include "matrix.hpp"
#include "scalar.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nilcdga {

class CdgaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered, immutable list of degree-1 generator names.
class GeneratorTable {
public:
    static constexpr std::size_t max_generators = 64;

    explicit GeneratorTable(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > max_generators)
            throw CdgaError("at most 64 generators are supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty())
                throw CdgaError("empty generator name");
            if (!index_.emplace(names_[i], i).second)
                throw CdgaError("duplicate generator name '" + names_[i] + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    friend bool operator==(const GeneratorTable& a, const GeneratorTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline TablePtr make_table(std::vector<std::string> names) {
    return std::make_shared<const GeneratorTable>(std::move(names));
}

// Canonical exterior monomial: the set of generator indices, stored as a bit
// mask.  Reading the bits in increasing order gives the strictly increasing
// index list; the empty set is the unit.
class Monomial {
public:
    constexpr Monomial() = default;
    constexpr explicit Monomial(std::uint64_t mask) : mask_(mask) {}

    static Monomial from_indices(const std::vector<std::size_t>& idx) {
        std::uint64_t m = 0;
        for (auto i : idx) {
            const std::uint64_t bit = std::uint64_t{1} << i;
            if (m & bit)
                throw CdgaError("repeated generator index in monomial");
            m |= bit;
        }
        return Monomial(m);
    }

    constexpr std::uint64_t mask() const noexcept { return mask_; }
    int degree() const noexcept { return std::popcount(mask_); }
    bool is_unit() const noexcept { return mask_ == 0; }
    bool contains(std::size_t i) const noexcept { return (mask_ >> i) & 1u; }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint64_t m = mask_; m; m &= m - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    // Degree first, then lexicographic on the increasing index list.
    friend bool operator<(Monomial a, Monomial b) noexcept {
        const int da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        const std::uint64_t diff = a.mask_ ^ b.mask_;
        if (!diff)
            return false;
        return (a.mask_ & (diff & -diff)) != 0;
    }
    friend bool operator==(Monomial a, Monomial b) noexcept { return a.mask_ == b.mask_; }
    friend bool operator!=(Monomial a, Monomial b) noexcept { return a.mask_ != b.mask_; }

private:
    std::uint64_t mask_ = 0;
};

// Sign of a∧b relative to the merged increasing monomial; 0 when they share
// a generator.
inline int wedge_sign(Monomial a, Monomial b) noexcept {
    if (a.mask() & b.mask())
        return 0;
    int swaps = 0;
    for (std::uint64_t m = b.mask(); m; m &= m - 1) {
        const int j = std::countr_zero(m);
        const std::uint64_t above = j >= 63 ? 0 : (a.mask() >> (j + 1));
        swaps += std::popcount(above);
    }
    return (swaps & 1) ? -1 : 1;
}

// All C(n, k) increasing monomials of degree k, in lexicographic order.
inline std::vector<Monomial> basis_of_degree(std::size_t n, int k) {
    std::vector<Monomial> out;
    if (k < 0 || static_cast<std::size_t>(k) > n)
        return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    for (;;) {
        out.push_back(Monomial::from_indices(idx));
        std::size_t i = idx.size();
        while (i > 0 && idx[i - 1] == n - idx.size() + (i - 1))
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < idx.size(); ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline std::string monomial_string(const GeneratorTable& t, Monomial m) {
    if (m.is_unit())
        return "1";
    std::string s;
    for (auto i : m.indices()) {
        if (!s.empty())
            s += "^";
        s += t.name(i);
    }
    return s;
}

// Finite linear combination of monomials.  No zero coefficients are stored.
// A default-constructed element is a detached zero that adopts the table of
// whatever it is combined with.
class GradedElement {
public:
    using Terms = std::map<Monomial, ExactScalar>;

    GradedElement() = default;
    explicit GradedElement(TablePtr table) : table_(std::move(table)) {}

    static GradedElement unit(TablePtr table) { return monomial(std::move(table), Monomial{}, ExactScalar(1)); }

    static GradedElement generator(TablePtr table, std::size_t i) {
        if (i >= table->size())
            throw CdgaError("generator index out of range");
        return monomial(std::move(table), Monomial(std::uint64_t{1} << i), ExactScalar(1));
    }

    static GradedElement generator(TablePtr table, const std::string& name) {
        auto i = table->find(name);
        if (!i)
            throw CdgaError("unknown generator '" + name + "'");
        return generator(std::move(table), *i);
    }

    static GradedElement monomial(TablePtr table, Monomial m, ExactScalar c) {
        GradedElement e(std::move(table));
        e.add_term(m, c);
        return e;
    }

    const TablePtr& table() const noexcept { return table_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    ExactScalar coefficient(Monomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ExactScalar(0) : it->second;
    }

    void add_term(Monomial m, const ExactScalar& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    // Zero counts as homogeneous.
    bool is_homogeneous() const noexcept {
        if (terms_.empty())
            return true;
        const int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return false;
        return true;
    }

    // nullopt for zero; throws for inhomogeneous elements.
    std::optional<int> degree() const {
        if (terms_.empty())
            return std::nullopt;
        if (!is_homogeneous())
            throw CdgaError("element is inhomogeneous: " + str());
        return terms_.begin()->first.degree();
    }

    GradedElement& operator+=(const GradedElement& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    GradedElement& operator-=(const GradedElement& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    GradedElement& operator*=(const ExactScalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator-(GradedElement a) { return a *= ExactScalar(-1); }
    friend GradedElement operator*(const ExactScalar& s, GradedElement a) { return a *= s; }
    friend GradedElement operator*(GradedElement a, const ExactScalar& s) { return a *= s; }

    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        if (a.table_ && b.table_ && a.table_ != b.table_ && !(*a.table_ == *b.table_))
            return false;
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const GradedElement& e) { return os << e.str(); }

    // DSL expression syntax, e.g. "-1*b1^c1 + 2*b2^c2"; "0" for zero.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string name = table_ ? monomial_string(*table_, m) : std::string("?");
            bool negative = c.is_rational() && sgn(c.rational_part()) < 0;
            ExactScalar mag = negative ? -c : c;
            if (first) {
                if (negative)
                    os << "-";
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            if (!c.is_rational()) {
                os << "(" << c.str() << ")*" << name;
            } else if (mag == ExactScalar(1) && !m.is_unit()) {
                if (negative)
                    os << "1*";
                os << name;
            } else if (m.is_unit()) {
                os << mag.str();
            } else {
                os << mag.str() << "*" << name;
            }
        }
        return os.str();
    }

private:
    void adopt(const GradedElement& o) {
        if (!o.table_)
            return;
        if (!table_) {
            table_ = o.table_;
        } else if (table_ != o.table_ && !(*table_ == *o.table_)) {
            throw CdgaError("elements over different generator tables");
        }
    }

    friend GradedElement wedge(const GradedElement& x, const GradedElement& y);

    TablePtr table_;
    Terms terms_;
};

inline GradedElement wedge(const GradedElement& x, const GradedElement& y) {
    TablePtr t = x.table_ ? x.table_ : y.table_;
    if (x.table_ && y.table_ && x.table_ != y.table_ && !(*x.table_ == *y.table_))
        throw CdgaError("wedge of elements over different generator tables");
    GradedElement out(t);
    for (const auto& [mx, cx] : x.terms_)
        for (const auto& [my, cy] : y.terms_) {
            const int s = wedge_sign(mx, my);
            if (s == 0)
                continue;
            ExactScalar c = cx * cy;
            if (s < 0)
                c = -c;
            out.add_term(Monomial(mx.mask() | my.mask()), c);
        }
    return out;
}

template <class... Rest>
GradedElement wedge(const GradedElement& x, const GradedElement& y, const Rest&... rest) {
    return wedge(wedge(x, y), rest...);
}

inline GradedElement power(const GradedElement& x, int p) {
    if (p < 0)
        throw CdgaError("negative wedge power");
    GradedElement out = GradedElement::unit(x.table());
    for (int i = 0; i < p; ++i)
        out = wedge(out, x);
    return out;
}

// (-1)^deg x * x.
inline GradedElement bar(const GradedElement& x) {
    if (!x.is_homogeneous())
        throw CdgaError("bar of an inhomogeneous element");
    auto d = x.degree();
    if (d && (*d % 2))
        return -x;
    return x;
}

namespace detail {

// Leibniz extension of generator images to a monomial.
inline GradedElement differential_of_monomial(const TablePtr& table, const std::vector<GradedElement>& images,
                                              Monomial m) {
    GradedElement out(table);
    int position = 0;
    for (auto i : m.indices()) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        const Monomial prefix(m.mask() & (bit - 1));
        const Monomial suffix(m.mask() & ~((bit << 1) - 1));
        const bool odd = position % 2;
        for (const auto& [t, c] : images[i].terms()) {
            const int s1 = wedge_sign(prefix, t);
            if (s1 == 0)
                continue;
            const Monomial pt(prefix.mask() | t.mask());
            const int s2 = wedge_sign(pt, suffix);
            if (s2 == 0)
                continue;
            const int s = s1 * s2 * (odd ? -1 : 1);
            out.add_term(Monomial(pt.mask() | suffix.mask()), s < 0 ? -c : c);
        }
        ++position;
    }
    return out;
}

inline GradedElement apply_differential(const TablePtr& table, const std::vector<GradedElement>& images,
                                        const GradedElement& x) {
    GradedElement out(table);
    for (const auto& [m, c] : x.terms())
        out += c * differential_of_monomial(table, images, m);
    return out;
}

} // namespace detail

struct DSquaredFailure {
    std::string generator;
    GradedElement dd;
};

struct DSquaredReport {
    bool pass = true;
    std::vector<DSquaredFailure> failures;
};

// d(d(g)) for every generator, given raw generator images.
inline DSquaredReport check_d_squared(const TablePtr& table, const std::vector<GradedElement>& images) {
    DSquaredReport r;
    for (std::size_t i = 0; i < table->size(); ++i) {
        GradedElement dd = detail::apply_differential(table, images, images[i]);
        if (!dd.is_zero()) {
            r.pass = false;
            r.failures.push_back({table->name(i), std::move(dd)});
        }
    }
    return r;
}

// Free CDGA on degree-1 generators with the differential fixed by its values
// on generators.  Construction rejects images that are not homogeneous of
// degree 2 and differentials with d^2 != 0.
class CdgaPresentation {
public:
    CdgaPresentation(std::string name, TablePtr table, std::vector<GradedElement> images)
        : name_(std::move(name)), table_(std::move(table)), images_(std::move(images)) {
        if (images_.size() != table_->size())
            throw CdgaError("presentation needs one differential image per generator");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            auto& img = images_[i];
            if (img.table() && !(*img.table() == *table_))
                throw CdgaError("differential image of '" + table_->name(i) + "' uses a different table");
            img = GradedElement(table_) + img;
            if (!img.is_homogeneous() || (!img.is_zero() && *img.degree() != 2))
                throw CdgaError("differential image of '" + table_->name(i) + "' is not homogeneous of degree 2: " +
                                img.str());
        }
        auto report = nilcdga::check_d_squared(table_, images_);
        if (!report.pass)
            throw CdgaError("d^2 != 0 on generator '" + report.failures.front().generator +
                            "': d(d " + report.failures.front().generator + ") = " + report.failures.front().dd.str());
    }

    const std::string& name() const noexcept { return name_; }
    const TablePtr& table() const noexcept { return table_; }
    std::size_t generator_count() const noexcept { return table_->size(); }
    const GradedElement& image(std::size_t i) const { return images_.at(i); }
    const std::vector<GradedElement>& images() const noexcept { return images_; }

    GradedElement generator(const std::string& n) const { return GradedElement::generator(table_, n); }
    GradedElement generator(std::size_t i) const { return GradedElement::generator(table_, i); }
    GradedElement zero() const { return GradedElement(table_); }
    GradedElement unit() const { return GradedElement::unit(table_); }

    // Top monomial: every generator, in table order.
    GradedElement volume() const {
        const std::uint64_t all = table_->size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << table_->size()) - 1);
        return GradedElement::monomial(table_, Monomial(all), ExactScalar(1));
    }

    friend bool operator==(const CdgaPresentation& a, const CdgaPresentation& b) {
        return *a.table_ == *b.table_ && a.images_ == b.images_;
    }

private:
    std::string name_;
    TablePtr table_;
    std::vector<GradedElement> images_;
};

inline GradedElement differential(const CdgaPresentation& p, const GradedElement& x) {
    if (x.table() && !(*x.table() == *p.table()))
        throw CdgaError("element is not over the presentation's generator table");
    return detail::apply_differential(p.table(), p.images(), x);
}

inline DSquaredReport check_d_squared(const CdgaPresentation& p) {
    return check_d_squared(p.table(), p.images());
}

inline std::vector<Monomial> basis_of_degree(const CdgaPresentation& p, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > p.generator_count())
        throw CdgaError("degree " + std::to_string(k) + " outside 0.." + std::to_string(p.generator_count()));
    return basis_of_degree(p.generator_count(), k);
}

// Algebra map between free algebras, fixed by degree-1 generator images and
// extended multiplicatively.
class AlgebraMorphism {
public:
    AlgebraMorphism(TablePtr source, TablePtr target, std::vector<GradedElement> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != source_->size())
            throw CdgaError("algebra map needs one image per source generator");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            images_[i] = GradedElement(target_) + images_[i];
            if (!images_[i].is_zero() && (!images_[i].is_homogeneous() || *images_[i].degree() != 1))
                throw CdgaError("image of generator '" + source_->name(i) + "' is not of degree 1");
        }
    }

    const TablePtr& source() const noexcept { return source_; }
    const TablePtr& target() const noexcept { return target_; }
    const std::vector<GradedElement>& images() const noexcept { return images_; }

    GradedElement apply(Monomial m) const {
        GradedElement out = GradedElement::unit(target_);
        for (auto i : m.indices())
            out = wedge(out, images_[i]);
        return out;
    }

    GradedElement apply(const GradedElement& x) const {
        if (x.table() && !(*x.table() == *source_))
            throw CdgaError("element is not over the map's source table");
        GradedElement out(target_);
        for (const auto& [m, c] : x.terms())
            out += c * apply(m);
        return out;
    }

    // this after other
    AlgebraMorphism after(const AlgebraMorphism& other) const {
        std::vector<GradedElement> imgs;
        imgs.reserve(other.images_.size());
        for (const auto& g : other.images_)
            imgs.push_back(apply(g));
        return AlgebraMorphism(other.source_, target_, std::move(imgs));
    }

    friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) { return a.images_ == b.images_; }

private:
    TablePtr source_;
    TablePtr target_;
    std::vector<GradedElement> images_;
};

struct ChainMapFailure {
    std::string generator;
    GradedElement f_of_d;
    GradedElement d_of_f;
};

// f(d g) == d(f g) on every generator.
inline std::vector<ChainMapFailure> chain_map_failures(const AlgebraMorphism& f, const CdgaPresentation& source,
                                                       const CdgaPresentation& target) {
    std::vector<ChainMapFailure> out;
    for (std::size_t i = 0; i < source.generator_count(); ++i) {
        GradedElement lhs = f.apply(source.image(i));
        GradedElement rhs = differential(target, f.images()[i]);
        if (lhs != rhs)
            out.push_back({source.table()->name(i), std::move(lhs), std::move(rhs)});
    }
    return out;
}

// Coefficient matrix of degree-1 elements: row i holds the coordinates of
// elements[i] in the generators of `table`.
inline ExactMatrix linear_part_matrix(const TablePtr& table, const std::vector<GradedElement>& elements) {
    ExactMatrix m(elements.size(), table->size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (const auto& [mono, c] : elements[i].terms()) {
            if (mono.degree() != 1)
                throw CdgaError("expected a degree-1 element, got " + elements[i].str());
            m(i, mono.indices().front()) = c;
        }
    return m;
}

struct BasisChange {
    CdgaPresentation presentation;  // structure equations in the new basis
    AlgebraMorphism to_old;         // new generator -> its expression in the old generators
};

// Rewrites the structure equations of `old` in a new degree-1 basis.
// new_basis[j] expresses the j-th new generator in the old generators; the
// differential is transported through the inverse change of basis.
inline BasisChange change_basis(const CdgaPresentation& old, std::string name, std::vector<std::string> new_names,
                                const std::vector<GradedElement>& new_basis) {
    if (new_basis.size() != old.generator_count() || new_names.size() != new_basis.size())
        throw CdgaError("basis change must be square");
    auto new_table = make_table(std::move(new_names));
    ExactMatrix c = linear_part_matrix(old.table(), new_basis);
    ExactMatrix c_inv = inverse(c);  // old_l = sum_m c_inv(l, m) new_m
    std::vector<GradedElement> old_in_new;
    for (std::size_t l = 0; l < old.generator_count(); ++l) {
        GradedElement e(new_table);
        for (std::size_t m = 0; m < new_table->size(); ++m)
            e += c_inv(l, m) * GradedElement::generator(new_table, m);
        old_in_new.push_back(std::move(e));
    }
    AlgebraMorphism back(old.table(), new_table, old_in_new);
    std::vector<GradedElement> images;
    for (const auto& v : new_basis)
        images.push_back(back.apply(differential(old, v)));
    CdgaPresentation pres(std::move(name), new_table, std::move(images));
    AlgebraMorphism forward(new_table, old.table(), new_basis);
    return BasisChange{std::move(pres), std::move(forward)};
}

} // namespace nilcdga
