#pragma once

#include <nilcdga/check.hpp>
#include <nilcdga/exterior.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nilcdga {

// Named variables; the first `coordinates` of them carry differentials, the
// rest are constant parameters.
struct CoordinateSpace {
    std::vector<std::string> names;
    std::size_t coordinates = 0;
};

using SpacePtr = std::shared_ptr<const CoordinateSpace>;

inline SpacePtr make_space(std::vector<std::string> coords, std::vector<std::string> params = {}) {
    auto s = std::make_shared<CoordinateSpace>();
    s->coordinates = coords.size();
    s->names = std::move(coords);
    if (s->names.size() + params.size() > 64)
        throw CdgaError("at most 64 variables");
    for (auto& p : params)
        s->names.push_back(std::move(p));
    return s;
}

class Polynomial {
public:
    using Exponents = std::vector<unsigned>;

    Polynomial() = default;
    explicit Polynomial(SpacePtr s) : space_(std::move(s)) {}

    static Polynomial constant(SpacePtr s, const Rational& c) {
        Polynomial p(std::move(s));
        p.add_term(Exponents(p.space_->names.size(), 0), c);
        return p;
    }
    static Polynomial variable(SpacePtr s, std::size_t i) {
        Polynomial p(std::move(s));
        Exponents e(p.space_->names.size(), 0);
        e.at(i) = 1;
        p.add_term(e, 1);
        return p;
    }
    static Polynomial variable(SpacePtr s, const std::string& name) {
        for (std::size_t i = 0; i < s->names.size(); ++i)
            if (s->names[i] == name)
                return variable(s, i);
        throw CdgaError("unknown variable '" + name + "'");
    }

    const SpacePtr& space() const { return space_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0)
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial out(p.space_);
        for (const auto& [e, c] : p.terms_)
            out.add_term(e, s * c);
        return out;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.space_ ? a.space_ : b.space_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    Polynomial derivative(std::size_t i) const {
        Polynomial out(space_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0)
                continue;
            Exponents f = e;
            --f[i];
            out.add_term(f, c * e[i]);
        }
        return out;
    }

    // Replace every variable by the matching polynomial.
    Polynomial substitute(const std::vector<Polynomial>& values) const {
        if (!space_)
            return *this;
        if (values.size() != space_->names.size())
            throw CdgaError("substitution needs one value per variable");
        Polynomial out(values.empty() ? space_ : values.front().space());
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(out.space(), c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k)
                    t = t * values[i];
            out += t;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k)
                    mono += (mono.empty() ? "" : "*") + space_->names[i];
            Rational mag = abs(c);
            std::string body = mono.empty() ? rational_string(mag)
                                            : (mag == 1 ? mono : rational_string(mag) + "*" + mono);
            if (out.empty())
                out = (c < 0 ? "-" : "") + body;
            else
                out += (c < 0 ? " - " : " + ") + body;
        }
        return out;
    }

private:
    void adopt(const Polynomial& o) {
        if (!space_)
            space_ = o.space_;
    }

    SpacePtr space_;
    std::map<Exponents, Rational> terms_;
};

// Sum of polynomial * dx_I over increasing wedges of coordinate differentials.
class PolyForm {
public:
    PolyForm() = default;
    explicit PolyForm(SpacePtr s) : space_(std::move(s)) {}

    static PolyForm function(const Polynomial& p) {
        PolyForm f(p.space());
        f.add_term(0, p);
        return f;
    }
    static PolyForm differential_of(SpacePtr s, std::size_t i) {
        if (i >= s->coordinates)
            throw CdgaError("parameters have no differential");
        PolyForm f(s);
        f.add_term(std::uint64_t(1) << i, Polynomial::constant(s, 1));
        return f;
    }
    // 1 * dx_I for the coordinates in `mask`.
    static PolyForm basis_form(SpacePtr s, std::uint64_t mask) {
        PolyForm f(s);
        f.add_term(mask, Polynomial::constant(s, 1));
        return f;
    }
    static PolyForm differential_of(SpacePtr s, const std::string& name) {
        for (std::size_t i = 0; i < s->coordinates; ++i)
            if (s->names[i] == name)
                return differential_of(s, i);
        throw CdgaError("unknown coordinate '" + name + "'");
    }

    const SpacePtr& space() const { return space_; }
    const std::map<std::uint64_t, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::uint64_t mask, const Polynomial& p) {
        if (p.is_zero())
            return;
        auto it = terms_.find(mask);
        if (it == terms_.end()) {
            terms_.emplace(mask, p);
            return;
        }
        it->second += p;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    PolyForm& operator+=(const PolyForm& o) {
        if (!space_)
            space_ = o.space_;
        for (const auto& [m, p] : o.terms_)
            add_term(m, p);
        return *this;
    }
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a += Rational(-1) * b; }
    friend PolyForm operator*(const Rational& s, const PolyForm& f) {
        PolyForm out(f.space_);
        for (const auto& [m, p] : f.terms_)
            out.add_term(m, s * p);
        return out;
    }
    friend PolyForm operator*(const Polynomial& q, const PolyForm& f) {
        PolyForm out(f.space_ ? f.space_ : q.space());
        for (const auto& [m, p] : f.terms_)
            out.add_term(m, q * p);
        return out;
    }
    friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.terms_ == b.terms_; }

    friend PolyForm wedge(const PolyForm& a, const PolyForm& b) {
        PolyForm out(a.space_ ? a.space_ : b.space_);
        for (const auto& [ma, pa] : a.terms_)
            for (const auto& [mb, pb] : b.terms_) {
                int s = wedge_sign(Monomial(ma), Monomial(mb));
                if (s == 0)
                    continue;
                out.add_term(ma | mb, Rational(s) * (pa * pb));
            }
        return out;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [m, p] : terms_) {
            std::string diffs;
            for (std::size_t i = 0; i < 64; ++i)
                if (m >> i & 1)
                    diffs += (diffs.empty() ? "d" : "^d") + space_->names[i];
            std::string coef = p.terms().size() > 1 ? "(" + p.str() + ")" : p.str();
            bool negative = coef[0] == '-';
            if (negative && !out.empty())
                coef.erase(0, 1);
            std::string term = diffs.empty() ? coef : (coef == "1" ? diffs : coef == "-1" ? "-" + diffs : coef + "*" + diffs);
            out += (out.empty() ? "" : negative ? " - " : " + ") + term;
        }
        return out;
    }

private:
    SpacePtr space_;
    std::map<std::uint64_t, Polynomial> terms_;
};

inline PolyForm d(const PolyForm& f) {
    PolyForm out(f.space());
    if (!f.space())
        return out;
    for (const auto& [m, p] : f.terms())
        for (std::size_t i = 0; i < f.space()->coordinates; ++i) {
            auto dp = p.derivative(i);
            if (!dp.is_zero())
                out += wedge(PolyForm::differential_of(f.space(), i), dp * PolyForm::basis_form(f.space(), m));
        }
    return out;
}

// Coordinate images x_i -> m_i(x, params); parameters are left fixed.
struct PolyMap {
    SpacePtr space;
    std::vector<Polynomial> images;  // one per coordinate

    static PolyMap identity(SpacePtr s) {
        PolyMap m{s, {}};
        for (std::size_t i = 0; i < s->coordinates; ++i)
            m.images.push_back(Polynomial::variable(s, i));
        return m;
    }

    // Values for every variable: images for coordinates, parameters themselves.
    std::vector<Polynomial> substitution() const {
        if (images.size() != space->coordinates)
            throw CdgaError("map needs one image per coordinate");
        std::vector<Polynomial> v = images;
        for (std::size_t i = space->coordinates; i < space->names.size(); ++i)
            v.push_back(Polynomial::variable(space, i));
        return v;
    }
};

// (first o second)(x) = first(second(x)).
inline PolyMap compose(const PolyMap& first, const PolyMap& second) {
    auto sub = second.substitution();
    PolyMap out{second.space, {}};
    for (const auto& p : first.images)
        out.images.push_back(p.substitute(sub));
    return out;
}

inline Polynomial pullback(const PolyMap& m, const Polynomial& p) { return p.substitute(m.substitution()); }

inline PolyForm pullback(const PolyMap& m, const PolyForm& f) {
    auto sub = m.substitution();
    std::vector<PolyForm> dm;
    for (const auto& img : m.images)
        dm.push_back(d(PolyForm::function(img)));
    PolyForm out(m.space);
    for (const auto& [mask, p] : f.terms()) {
        PolyForm term = PolyForm::function(p.substitute(sub));
        for (std::size_t i = 0; i < m.space->coordinates; ++i)
            if (mask >> i & 1)
                term = wedge(term, dm[i]);
        out += term;
    }
    return out;
}

// Algebra map sending generator i to forms[i].
inline PolyForm realize(const GradedElement& x, const std::vector<PolyForm>& forms) {
    if (forms.empty())
        throw CdgaError("no generator forms");
    PolyForm out(forms.front().space());
    for (const auto& [m, c] : x.terms()) {
        if (!c.is_rational())
            throw CdgaError("coordinate forms need rational coefficients");
        PolyForm t = PolyForm::function(Polynomial::constant(out.space(), c.rational_part()));
        for (auto i : m.indices())
            t = wedge(t, forms.at(i));
        out += t;
    }
    return out;
}

// The coordinate model of the 8-dimensional nilmanifold: a flat factor
// (x1, x2) times the 6-dimensional group with coordinates (y, z, v).
namespace coords {

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"x1", "x2", "y1", "y2", "z1", "z2", "v1", "v2"};
    return n;
}

inline SpacePtr translation_space() {
    std::vector<std::string> params;
    for (const auto& n : names())
        params.push_back(n + "'");
    return make_space(names(), params);
}

inline SpacePtr product_space() {
    std::vector<std::string> all;
    for (const auto& n : names())
        all.push_back(n + "'");
    for (const auto& n : names())
        all.push_back(n);
    return make_space(all);
}

using Point = std::vector<Polynomial>;  // (x1, x2, y1, y2, z1, z2, v1, v2)

inline Point group_law(const Point& a, const Point& b) {
    auto r = [](long n) { return Rational(n); };
    const auto &x1a = a[0], &x2a = a[1], &y1a = a[2], &y2a = a[3], &v1a = a[6], &v2a = a[7];
    const auto &z1 = b[4], &z2 = b[5];
    return {b[0] + x1a,
            b[1] + x2a,
            b[2] + y1a,
            b[3] + y2a,
            b[4] + a[4],
            b[5] + a[5],
            b[6] + v1a + (y1a - y2a) * z1 - (y1a + r(2) * y2a) * z2,
            b[7] + v2a - (r(2) * y1a + y2a) * z1 + (y2a - y1a) * z2};
}

inline Point rho(const Point& p) {
    Point out(8);
    for (std::size_t k = 0; k < 8; k += 2) {
        out[k] = Rational(-1) * p[k] - p[k + 1];
        out[k + 1] = p[k];
    }
    return out;
}

inline Point point(const SpacePtr& s, std::size_t offset) {
    Point p;
    for (std::size_t i = 0; i < 8; ++i)
        p.push_back(Polynomial::variable(s, offset + i));
    return p;
}

// Generator forms of the M presentation, in the order a1 a2 b1 b2 c1 c2 e1 e2.
inline std::vector<PolyForm> generator_forms(const SpacePtr& s) {
    auto v = [&](const char* n) { return Polynomial::variable(s, n); };
    auto dx = [&](const char* n) { return PolyForm::differential_of(s, n); };
    auto r = [](long n) { return Rational(n); };
    std::vector<PolyForm> f{dx("x1"), dx("x2"), dx("y1"), dx("y2"), dx("z1"), dx("z2")};
    f.push_back(dx("v1") + (Rational(-1) * v("y1") + v("y2")) * dx("z1") + (v("y1") + r(2) * v("y2")) * dx("z2"));
    f.push_back(dx("v2") + (r(2) * v("y1") + v("y2")) * dx("z1") + (v("y1") - v("y2")) * dx("z2"));
    return f;
}

} // namespace coords

struct EquivarianceReport {
    bool pass = true;
    std::string first_difference;  // "component k: lhs vs rhs"
};

using PointMap = std::function<coords::Point(const coords::Point&)>;

// m(r(p'), r(p)) = r(m(p', p)) as polynomial maps in the 16 variables.
inline EquivarianceReport verify_equivariance(const PointMap& r = coords::rho) {
    auto s = coords::product_space();
    auto pp = coords::point(s, 0), p = coords::point(s, 8);
    auto lhs = coords::group_law(r(pp), r(p));
    auto rhs = r(coords::group_law(pp, p));
    for (std::size_t k = 0; k < lhs.size(); ++k)
        if (!(lhs[k] == rhs[k]))
            return {false, "component " + coords::names()[k] + ": " + lhs[k].str() + " vs " + rhs[k].str()};
    return {};
}

// v1 = v2 (mod 3) implies -v1 - v2 = v1 (mod 3), over all nine residue pairs.
inline std::vector<Check> lattice_stability_checks() {
    std::vector<Check> out;
    for (int v1 = 0; v1 < 3; ++v1)
        for (int v2 = 0; v2 < 3; ++v2) {
            bool in = (v1 - v2) % 3 == 0;
            bool image_in = ((-v1 - v2 - v1) % 3 + 3) % 3 == 0;
            out.push_back({"residues (" + std::to_string(v1) + "," + std::to_string(v2) + ")", !in || image_in,
                           in ? (image_in ? "stable" : "leaves lattice") : "not in lattice"});
        }
    return out;
}

// Checks the coordinate 1-forms against a presentation whose generators are
// a1 a2 b1 b2 c1 c2 e1 e2 (the M preset) and, optionally, its rho action.
inline std::vector<Check> coordinate_checks(const CdgaPresentation& p, const std::vector<GradedElement>* rho_images = nullptr) {
    if (p.generator_count() != 8)
        throw CdgaError("coordinate model needs the 8 generators a1 a2 b1 b2 c1 c2 e1 e2");
    std::vector<Check> out;
    auto s = coords::translation_space();
    auto forms = coords::generator_forms(s);
    for (std::size_t i = 0; i < 8; ++i) {
        auto lhs = d(forms[i]);
        auto rhs = realize(p.image(i), forms);
        out.push_back({"d " + p.table()->name(i) + " matches structure equation", lhs == rhs, lhs.str()});
    }
    PolyMap left{s, coords::group_law(coords::point(s, 8), coords::point(s, 0))};
    for (std::size_t i = 0; i < 8; ++i) {
        auto pulled = pullback(left, forms[i]);
        auto diff = pulled - forms[i];
        out.push_back({"left invariance of " + p.table()->name(i), diff.is_zero(), diff.str()});
    }
    if (rho_images) {
        PolyMap r{s, coords::rho(coords::point(s, 0))};
        for (std::size_t i = 0; i < 8; ++i) {
            auto lhs = pullback(r, forms[i]);
            auto rhs = realize((*rho_images)[i], forms);
            out.push_back({"rho pulls back " + p.table()->name(i) + " as declared", lhs == rhs, (lhs - rhs).str()});
        }
    }
    auto eq = verify_equivariance();
    out.push_back({"m(rho p', rho p) = rho m(p', p)", eq.pass, eq.pass ? "16 variables" : eq.first_difference});
    auto mod3 = lattice_stability_checks();
    out.push_back({"lattice stable under rho mod 3", all_pass(mod3), "9 residue pairs"});
    return out;
}

} // namespace nilcdga
