// nilcdga: command-line front end for presentations, cohomology, actions and obstructions.
//
// Exit codes: 0 success, 1 negative verdict from check / coordinate-verify / verify,
// 2 usage, parse or input errors.

#include <nilcdga/acceptance_suite.hpp>
#include <nilcdga/cohomology.hpp>
#include <nilcdga/coordinate_model.hpp>
#include <nilcdga/dsl.hpp>
#include <nilcdga/group_action.hpp>
#include <nilcdga/lattice_bundle.hpp>
#include <nilcdga/massey.hpp>
#include <nilcdga/presets.hpp>
#include <nilcdga/report_json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace nilcdga;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string preset_name;
    std::string file;
    std::string action;
    bool invariant = false;
    std::string format = "json";
    std::string output;
    int degree = -1;
    int power = 1;
    std::string sigma;
    std::string omega;
    std::vector<std::string> classes;
    std::vector<std::string> xs;
    std::vector<int> scan;
    std::string ring = "eisenstein";
    std::string suite_name = "paper";
};

struct Outcome {
    Json report;
    int code = 0;
};

struct Loaded {
    PresentationSource src;
    std::string label;
    std::optional<AlgebraAutomorphism> rho;
    std::optional<CochainComplex> complex;
    bool invariant = false;

    const CochainComplex& c() const { return *complex; }

    GradedElement element(const std::string& text) const {
        auto x = parse_element(text, src);
        if (invariant && !(rho->apply(x) == x))
            throw UsageError("'" + text + "' is not invariant under " + rho->name());
        return x;
    }
    CohomologyClass cls(const std::string& text) const { return class_of(c(), element(text)); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Loaded load(const Options& o, bool need_action = false) {
    if (o.preset_name.empty() == o.file.empty())
        throw UsageError("give exactly one of --preset or --file");
    auto source = [&] {
        if (o.file.empty()) {
            try {
                return preset(o.preset_name);
            } catch (const CdgaError& e) {
                throw UsageError(e.what());
            }
        }
        return parse_presentation(read_file(o.file));
    };
    Loaded l{source(), o.file.empty() ? "preset:" + o.preset_name : o.file, {}, {}};
    std::string action = o.action;
    if (action.empty() && (o.invariant || need_action)) {
        if (l.src.actions.size() != 1)
            throw UsageError("choose an action with --action");
        action = l.src.actions.front().name;
    }
    if (!action.empty()) {
        if (!l.src.find_action(action))
            throw UsageError("no action named '" + action + "'");
        l.rho = AlgebraAutomorphism::from_source(l.src, action);
    }
    if (o.invariant) {
        l.complex = invariant_subcomplex(*l.rho);
        l.invariant = true;
        l.label += "/" + action + "-invariant";
    } else {
        l.complex = CochainComplex::full(l.src.presentation);
    }
    return l;
}

Json sizes_json(const std::vector<std::size_t>& v) {
    Json out = Json::array();
    for (auto x : v)
        out.push_back(x);
    return out;
}

std::vector<CohomologyClass> exactly(const Loaded& l, const std::vector<std::string>& exprs, std::size_t n,
                                     const char* flag) {
    if (exprs.size() != n)
        throw UsageError(std::string("expected ") + std::to_string(n) + " " + flag + " arguments, got " +
                         std::to_string(exprs.size()));
    std::vector<CohomologyClass> out;
    for (const auto& e : exprs)
        out.push_back(l.cls(e));
    return out;
}

Outcome cmd_betti(const Options& o) {
    auto l = load(o);
    Json r = {{"betti", sizes_json(betti_vector(l.c()))}, {"euler_characteristic", euler_characteristic(l.c())}};
    return {make_report("betti", l.label, r)};
}

Outcome cmd_cohomology(const Options& o) {
    auto l = load(o);
    Json basis = Json::array();
    for (const auto& x : cohomology_basis(l.c(), o.degree))
        basis.push_back(x.representative().str());
    Json r = {{"degree", o.degree}, {"dimension", basis.size()}, {"basis", basis}};
    return {make_report("cohomology", l.label, r)};
}

Outcome cmd_check(const Options& o) {
    auto l = load(o);
    std::vector<Check> checks;
    auto d2 = check_d_squared(l.src.presentation);
    checks.push_back({"d^2 = 0", d2.pass, std::to_string(d2.failures.size()) + " failing generators"});
    Json actions = Json::array();
    for (const auto& a : l.src.actions) {
        if (!o.action.empty() && a.name != o.action)
            continue;
        auto rep = verify_automorphism(AlgebraAutomorphism::from_source(l.src, a.name));
        checks.push_back({a.name + " commutes with d", rep.commutes_with_d,
                          std::to_string(rep.failures.size()) + " failing generators"});
        checks.push_back({a.name + " has declared order " + std::to_string(a.order), rep.declared_order_is_identity,
                          "computed order " + std::to_string(rep.computed_order)});
        actions.push_back({{"name", a.name}, {"declared_order", a.order}, {"computed_order", rep.computed_order}});
    }
    Json r = {{"generators", l.src.presentation.generator_count()}, {"actions", actions}};
    return {make_report("check", l.label, r, checks), all_pass(checks) ? 0 : 1};
}

Outcome cmd_invariants(const Options& o) {
    auto l = load(o, true);
    auto inv = invariant_subcomplex(*l.rho);
    Json dims = Json::array(), trivial = Json::array(), two = Json::array();
    const int n = inv.top_degree();
    for (int k = 0; k <= n; ++k) {
        dims.push_back(inv.dimension(k));
        if (l.rho->order() == 3) {
            auto m = isotypic_multiplicities(*l.rho, k);
            trivial.push_back(m.trivial);
            two.push_back(m.two_dimensional);
        }
    }
    Json r = {{"action", l.rho->name()}, {"dimensions", dims}, {"betti", sizes_json(betti_vector(inv))}};
    if (l.rho->order() == 3)
        r["isotypic"] = {{"trivial", trivial}, {"two_dimensional", two}};
    return {make_report("invariants", l.label, r)};
}

Json point_json(const std::vector<std::pair<Rational, Rational>>& pts) {
    Json out = Json::array();
    for (const auto& [x, y] : pts)
        out.push_back({rational_string(x), rational_string(y)});
    return out;
}

Outcome cmd_fixed_points(const Options&) {
    Json factors = Json::array();
    for (const auto& f : torus_factors_of_m())
        factors.push_back({{"lattice", to_json(f.lattice)},
                           {"count", fixed_point_count(f).get_si()},
                           {"points", point_json(fixed_points(f))}});
    Json r = {{"factors", factors}, {"total", product_fixed_point_count(torus_factors_of_m()).get_si()}};
    return {make_report("fixed-points", "rotation of order 3 on four 2-tori", r)};
}

Outcome cmd_euler_quotient(const Options& o) {
    auto l = load(o, true);
    auto full = CochainComplex::full(l.src.presentation);
    auto inv = invariant_subcomplex(*l.rho);
    long fixed = product_fixed_point_count(torus_factors_of_m()).get_si();
    long chi = euler_characteristic(full);
    auto q = quotient_euler(chi, l.rho->order(), std::vector<long>(static_cast<std::size_t>(fixed), l.rho->order()));
    long chi_inv = euler_characteristic(inv);
    long b2 = static_cast<long>(betti_number(inv, 2));
    std::vector<Check> checks{{"formula agrees with invariant cohomology", q == chi_inv, std::to_string(chi_inv)}};
    Json r = {{"euler_characteristic", chi},
              {"fixed_points", fixed},
              {"quotient_euler_formula", rational_string(q)},
              {"quotient_euler_invariant", chi_inv},
              {"resolution_b2", resolution_betti2(b2, fixed)}};
    return {make_report("euler-quotient", l.label, r, checks)};
}

Outcome cmd_massey3(const Options& o) {
    auto l = load(o);
    if (!o.scan.empty()) {
        if (o.scan.size() != 3)
            throw UsageError("--scan takes three degrees");
        auto s = scan_triple_massey(l.c(), o.scan[0], o.scan[1], o.scan[2]);
        Json idx = Json::array();
        for (const auto& t : s.nontrivial_indices)
            idx.push_back({t[0], t[1], t[2]});
        Json r = {{"degrees", o.scan}, {"defined", s.defined}, {"nontrivial", s.nontrivial}, {"nontrivial_indices", idx}};
        return {make_report("massey3", l.label, r)};
    }
    auto a = exactly(l, o.classes, 3, "-a");
    auto t = triple_massey(l.c(), a[0], a[1], a[2]);
    Json indet = Json::array();
    for (const auto& v : t.indeterminacy)
        indet.push_back(to_json(v));
    Json r = {{"xi", t.xi.str()},
              {"eta", t.eta.str()},
              {"value", to_json(t.value)},
              {"indeterminacy", indet},
              {"verdict", to_string(t.verdict)}};
    return {make_report("massey3", l.label, r)};
}

Outcome cmd_massey4(const Options& o) {
    auto l = load(o);
    auto a = exactly(l, o.classes, 4, "-a");
    if (o.sigma.empty())
        throw UsageError("--sigma is required");
    auto cert = certify_quadruple_nontrivial(l.c(), a, l.element(o.sigma));
    Json forms = Json::object();
    if (cert.system)
        for (const auto& [ij, f] : cert.system->forms)
            forms["alpha(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")"] = f.str();
    Json r = {{"defining_system", forms},
              {"psi", cert.psi.str()},
              {"sigma_psi_top_value", cert.sigma_psi_top_value ? to_json(*cert.sigma_psi_top_value) : Json(nullptr)},
              {"verdict", to_string(cert.verdict)}};
    return {make_report("massey4-certify", l.label, r, cert.checks)};
}

Outcome cmd_gmassey(const Options& o) {
    auto l = load(o);
    auto a = exactly(l, o.classes, 1, "-a");
    auto x = exactly(l, o.xs, 3, "-x");
    auto g = gmassey(l.c(), a[0], x);
    Json prims = Json::array();
    for (const auto& p : g.primitives)
        prims.push_back(p.str());
    Json r = {{"primitives", prims},
              {"representative", g.representative.str()},
              {"value", to_json(g.value)},
              {"top_value", g.top_value ? to_json(*g.top_value) : Json(nullptr)},
              {"w_dimension", g.w_basis.size()},
              {"verdict", to_string(g.verdict)}};
    return {make_report("gmassey", l.label, r, g.checks)};
}

Outcome cmd_bracket_expansion(const Options& o) {
    auto l = load(o);
    auto a = exactly(l, o.classes, 1, "-a");
    auto x = exactly(l, o.xs, 3, "-x");
    auto w = gmassey_bracket_expansion(l.c(), a[0], x);
    Json brackets = Json::array();
    for (const auto& b : w.brackets)
        brackets.push_back(b.str());
    Json r = {{"chi", w.chi.str()}, {"brackets", brackets}, {"representative", w.gmassey_representative.str()}};
    return {make_report("lemma25", l.label, r, w.checks)};
}

Outcome cmd_symplectic(const Options& o) {
    auto l = load(o);
    if (o.omega.empty())
        throw UsageError("--omega is required");
    const auto& p = l.src.presentation;
    auto w = l.element(o.omega);
    const int n = static_cast<int>(p.generator_count());
    if (n % 2)
        throw UsageError("odd-dimensional algebra has no symplectic form");
    std::vector<Check> checks;
    auto dw = differential(p, w);
    checks.push_back({"d omega = 0", dw.is_zero(), dw.str()});
    if (l.rho)
        checks.push_back({l.rho->name() + " omega = omega", l.rho->apply(w) == w, l.rho->apply(w).str()});
    auto top = power(w, n / 2);
    auto coef = top.coefficient(Monomial(n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1));
    checks.push_back({"omega^" + std::to_string(n / 2) + " = c vol with c != 0", !coef.is_zero() && top == coef * p.volume(),
                      coef.str()});
    Json r = {{"top_power_coefficient", to_json(coef)}};
    return {make_report("symplectic-check", l.label, r, checks)};
}

Outcome cmd_lefschetz(const Options& o) {
    auto l = load(o);
    if (o.omega.empty())
        throw UsageError("--omega is required");
    auto w = class_of(l.c(), l.element(o.omega), 2);
    auto ker = lefschetz_kernel(l.c(), w, o.degree, o.power);
    Json basis = Json::array();
    for (const auto& x : ker)
        basis.push_back(x.representative().str());
    Json r = {{"degree", o.degree}, {"power", o.power}, {"kernel_dimension", ker.size()}, {"kernel", basis},
              {"injective", ker.empty()}};
    return {make_report("lefschetz", l.label, r)};
}

Outcome cmd_bundle(const Options& o) {
    QuadRing ring;
    try {
        ring = parse_ring(o.ring);
    } catch (const BundleError& e) {
        throw UsageError(e.what());
    }
    auto f = curvature_class_matrix(standard_bundle(ring));
    auto other = curvature_class_matrix(
        standard_bundle(ring == QuadRing::Eisenstein ? QuadRing::Gaussian : QuadRing::Eisenstein));
    Json r = {{"ring", to_string(ring)},
              {"curvature_matrix", to_json(f)},
              {"gram", to_json(image_gram_matrix(f))},
              {"invariant", image_lattice_q_determinant(f).get_si()},
              {"other_ring_invariant", image_lattice_q_determinant(other).get_si()},
              {"versus_other_ring", to_string(bundles_equivalent(f, other))}};
    return {make_report("bundle", to_string(ring), r)};
}

Outcome cmd_coordinate_verify(const Options& o) {
    Options with_default = o;
    if (o.preset_name.empty() && o.file.empty())
        with_default.preset_name = "M";
    auto l = load(with_default);
    std::optional<AlgebraAutomorphism> rho = l.rho;
    if (!rho && l.src.actions.size() == 1)
        rho = AlgebraAutomorphism::from_source(l.src, l.src.actions.front().name);
    auto checks = coordinate_checks(l.src.presentation, rho ? &rho->map().images() : nullptr);
    Json r = {{"checks_run", checks.size()}};
    return {make_report("coordinate-verify", l.label, r, checks), all_pass(checks) ? 0 : 1};
}

Outcome cmd_verify(const Options& o) {
    if (o.suite_name != "paper")
        throw UsageError("unknown suite '" + o.suite_name + "'");
    auto results = acceptance_suite();
    Json criteria = Json::array();
    std::vector<Check> summary;
    for (const auto& c : results) {
        criteria.push_back(to_json(c));
        summary.push_back({std::to_string(c.number) + " " + c.name, c.pass(), c.witness()});
    }
    Json r = {{"suite", o.suite_name}, {"criteria", criteria}, {"passed", all_pass(summary)}};
    return {make_report("verify", "suite:" + o.suite_name, r, summary), all_pass(summary) ? 0 : 1};
}

void render_text(std::ostream& os, const Json& report) {
    os << report["subcommand"].get<std::string>() << " on " << report["input"].get<std::string>() << '\n';
    const auto& result = report["result"];
    for (auto it = result.begin(); it != result.end(); ++it) {
        if (it.key() == "criteria")
            continue;
        os << "  " << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    }
    for (const auto& c : report["checks"]) {
        os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
        auto w = c["witness"].get<std::string>();
        if (!w.empty())
            os << "  [" << w << ']';
        os << '\n';
    }
}

void add_input(CLI::App* sub, Options& o) {
    auto* p = sub->add_option("--preset", o.preset_name, "built-in presentation: N, M, T2, T6, heisenberg-real");
    auto* f = sub->add_option("--file", o.file, "path to a .cdga presentation");
    p->excludes(f);
    sub->add_option("--action", o.action, "declared action to use");
    sub->add_flag("--invariant", o.invariant, "compute on the invariant subcomplex of the action");
}

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", o.output, "write the report here instead of standard output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for commutative differential graded algebras"};
    app.require_subcommand(1);
    Options o;
    std::map<CLI::App*, std::function<Outcome(const Options&)>> handlers;
    auto sub = [&](const char* name, const char* help, std::function<Outcome(const Options&)> h, bool input = true) {
        auto* s = app.add_subcommand(name, help);
        if (input)
            add_input(s, o);
        add_output(s, o);
        handlers[s] = std::move(h);
        return s;
    };

    sub("betti", "Betti numbers and Euler characteristic", cmd_betti);
    sub("cohomology", "cohomology basis in one degree", cmd_cohomology)
        ->add_option("--degree", o.degree, "degree k")
        ->required();
    sub("check", "d^2 = 0 and declared actions", cmd_check);
    sub("invariants", "invariant subcomplex dimensions and isotypic multiplicities", cmd_invariants);
    sub("fixed-points", "fixed points of the order-3 rotation on the torus factors", cmd_fixed_points, false);
    sub("euler-quotient", "orbifold Euler characteristic and resolution b2", cmd_euler_quotient);
    auto* m3 = sub("massey3", "triple Massey product, or a scan over basis classes", cmd_massey3);
    m3->add_option("-a,--class", o.classes, "class representative (three times)");
    m3->add_option("--scan", o.scan, "three degrees to scan")->expected(3);
    auto* m4 = sub("massey4-certify", "quadruple Massey product certificate", cmd_massey4);
    m4->add_option("-a,--class", o.classes, "class representative (four times)");
    m4->add_option("--sigma", o.sigma, "closed form multiplied against the value");
    auto* gm = sub("gmassey", "G-Massey product <a; x1, x2, x3>", cmd_gmassey);
    gm->add_option("-a,--class", o.classes, "the class a");
    gm->add_option("-x", o.xs, "the classes x1, x2, x3");
    auto* l25 = sub("lemma25", "rewrite the G-Massey representative through triple-product brackets", cmd_bracket_expansion);
    l25->add_option("-a,--class", o.classes, "the class a");
    l25->add_option("-x", o.xs, "the classes x1, x2, x3");
    sub("symplectic-check", "closedness, invariance and top power of a 2-form", cmd_symplectic)
        ->add_option("--omega", o.omega, "the 2-form");
    auto* lf = sub("lefschetz", "kernel of cup with omega^p on H^k", cmd_lefschetz);
    lf->add_option("--omega", o.omega, "the 2-form");
    lf->add_option("--degree", o.degree, "degree k")->required();
    lf->add_option("--power", o.power, "power p");
    sub("bundle", "curvature matrix and lattice invariant of a torus bundle", cmd_bundle, false)
        ->add_option("--ring", o.ring, "eisenstein or gaussian");
    sub("coordinate-verify", "coordinate 1-forms, group law and action (default preset M)", cmd_coordinate_verify);
    sub("verify", "run an acceptance suite", cmd_verify, false)->add_option("--suite", o.suite_name, "suite name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Outcome out;
    try {
        out = handlers.at(chosen)(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    std::ostringstream text;
    if (o.format == "json")
        text << out.report.dump(2) << '\n';
    else
        render_text(text, out.report);
    if (o.output.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream f(o.output);
        if (!f) {
            std::cerr << "usage error: cannot write '" << o.output << "'\n";
            return 2;
        }
        f << text.str();
    }
    return out.code;
}
