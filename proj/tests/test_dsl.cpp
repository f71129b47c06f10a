#include <nilcdga/dsl.hpp>
#include <nilcdga/presets.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace nilcdga;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* const kN = R"(algebra N
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
)";

} // namespace

TEST(Dsl, ParsesReferenceSource) {
    auto src = parse_presentation(kN);
    const auto& p = src.presentation;
    EXPECT_EQ(p.name(), "N");
    EXPECT_EQ(p.generator_count(), 6u);
    auto b1 = p.generator("b1"), b2 = p.generator("b2"), c1 = p.generator("c1"), c2 = p.generator("c2");
    auto de1 = -wedge(b1, c1) + wedge(b2, c1) + wedge(b1, c2) + ExactScalar(2) * wedge(b2, c2);
    EXPECT_EQ(differential(p, p.generator("e1")), de1);
    EXPECT_TRUE(differential(p, p.unit()).is_zero());
    auto z = parse_element("b1^e2 - b2^e1", src);
    EXPECT_TRUE(differential(p, z).is_zero());
}

TEST(Dsl, RepeatedGeneratorWedgesToZero) {
    auto src = parse_presentation("algebra X\ngenerator b1 1\ngenerator c1 1\ngenerator e1 1\nd e1 = b1^b1\n");
    EXPECT_TRUE(src.presentation.image(2).is_zero());
}

TEST(Dsl, UnknownGeneratorIsLocated) {
    try {
        parse_presentation("algebra X\ngenerator c1 1\ngenerator e1 1\nd e1 = q1^c1\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_EQ(e.column(), 8u);
        EXPECT_EQ(e.token(), "q1");
        EXPECT_NE(e.message().find("q1"), std::string::npos);
    }
}

TEST(Dsl, StructuralErrors) {
    EXPECT_THROW(parse_presentation("generator x 1\n"), ParseError);                           // no algebra
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\ngenerator x 1\n"), ParseError);  // duplicate
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 2\n"), ParseError);                 // degree
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\ngenerator y 1\nd y = x\n"), ParseError);
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\ngenerator y 1\nd y = 0\nd y = 0\n"), ParseError);
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\nfrobnicate x\n"), ParseError);
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\ngenerator y 1\nd y = 1/0*x^x\n"), ParseError);
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\nd x = 2*\n"), ParseError);
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\nd x = 0 $\n"), ParseError);
    // action missing an image
    EXPECT_THROW(parse_presentation("algebra A\ngenerator x 1\ngenerator y 1\naction r order 2\nr x = y\n"),
                 ParseError);
}

TEST(Dsl, DSquaredFailureNamesGenerator) {
    const char* src = "algebra B\ngenerator b1 1\ngenerator c1 1\ngenerator e 1\nd c1 = b1^e\nd e = b1^c1\n";
    // d(dc1) = -b1^de = -b1^b1^c1 = 0, d(de) = -b1^dc1 = 0: this one is a complex
    EXPECT_NO_THROW(parse_presentation(src));
    const char* bad = "algebra B\ngenerator w 1\ngenerator x 1\ngenerator y 1\ngenerator z 1\nd w = x^y\nd x = z^w\n";
    try {
        parse_presentation(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(e.message().find("d^2"), std::string::npos);
        EXPECT_EQ(e.line(), 6u);
    }
}

TEST(Dsl, CommentsAndJuxtaposedCoefficients) {
    auto m = preset("M");
    auto s1 = parse_element("2 a1^c2 - a2^c1 + a1^c1 + a2^c2", m);
    auto s2 = parse_element("2*a1^c2 - a2^c1 + a1^c1 + a2^c2  # sigma", m);
    EXPECT_EQ(s1, s2);
    EXPECT_EQ(s1, *m.find_element("sigma"));
    EXPECT_TRUE(parse_element("0", m).is_zero());
    EXPECT_EQ(parse_element("b1^b2", m), *m.find_element("theta"));
}

TEST(Dsl, SerializeRoundTrip) {
    for (const char* name : {"N", "M", "T2", "T6"}) {
        auto src = preset(name);
        auto text = serialize(src);
        auto again = parse_presentation(text);
        EXPECT_EQ(again.presentation, src.presentation) << name;
        EXPECT_EQ(serialize(again), text) << name;
        ASSERT_EQ(again.actions.size(), src.actions.size());
        for (std::size_t i = 0; i < src.actions.size(); ++i)
            EXPECT_EQ(again.actions[i].images, src.actions[i].images);
        ASSERT_EQ(again.elements.size(), src.elements.size());
    }
}

TEST(Dsl, ShippedFilesMatchPresets) {
    for (const char* name : {"N", "M", "T2", "T6"}) {
        auto text = read_file(std::string(NILCDGA_PRESET_DIR) + "/" + name + ".cdga");
        ASSERT_FALSE(text.empty()) << name;
        EXPECT_EQ(serialize(parse_presentation(text)), serialize(preset(name))) << name;
    }
}

TEST(Dsl, PresetsAreComplexes) {
    for (const auto& name : preset_names())
        EXPECT_TRUE(check_d_squared(preset(name).presentation).pass) << name;
    auto t2 = preset("T2");
    for (const auto& img : t2.presentation.images())
        EXPECT_TRUE(img.is_zero());
    EXPECT_THROW(preset("K3"), CdgaError);
}

TEST(Dsl, RhoOnMPreset) {
    auto m = preset("M");
    const auto* rho = m.find_action("rho");
    ASSERT_NE(rho, nullptr);
    EXPECT_EQ(rho->order, 3);
    auto e1 = m.presentation.generator("e1"), e2 = m.presentation.generator("e2");
    EXPECT_EQ(rho->images[6], -e1 - e2);
    EXPECT_EQ(rho->images[7], e1);
}

TEST(Dsl, HeisenbergRealStructureEquations) {
    auto h = preset("heisenberg-real").presentation;
    auto g = [&](const char* s) { return h.generator(s); };
    EXPECT_EQ(differential(h, g("theta1")), wedge(g("mu1"), g("nu1")) - wedge(g("mu2"), g("nu2")));
    EXPECT_EQ(differential(h, g("theta2")), wedge(g("mu1"), g("nu2")) + wedge(g("mu2"), g("nu1")));
    for (const char* s : {"mu1", "mu2", "nu1", "nu2"})
        EXPECT_TRUE(differential(h, g(s)).is_zero());
    // the new structure constants are rational, so the result is writable as source
    EXPECT_EQ(parse_presentation(serialize(preset("heisenberg-real"))).presentation, h);
    auto m = preset("M");
    auto bad = m;
    bad.elements.emplace_back("r", ExactScalar::sqrt3() * m.presentation.generator("a1"));
    EXPECT_THROW(serialize(bad), CdgaError);
}

TEST(Dsl, ParsedWedgeMatchesWedgeOfParsed) {
    auto m = preset("M");
    const auto& names = m.presentation.table()->names();
    std::mt19937_64 rng(77);
    auto random_mono = [&](int deg) {
        std::string s;
        for (int i = 0; i < deg; ++i) {
            if (i)
                s += "^";
            s += names[rng() % names.size()];
        }
        return s;
    };
    auto random_expr = [&](std::vector<std::string>& monos, std::vector<int>& coefs) {
        std::string s;
        std::size_t terms = 1 + rng() % 3;
        for (std::size_t i = 0; i < terms; ++i) {
            int c = static_cast<int>(rng() % 7) - 3;
            if (c == 0)
                c = 1;
            monos.push_back(random_mono(1 + rng() % 2));
            coefs.push_back(c);
            s += (c < 0 ? " - " : " + ") + std::to_string(std::abs(c)) + "*" + monos.back();
        }
        return s;
    };
    for (int i = 0; i < 100; ++i) {
        std::vector<std::string> mx, my;
        std::vector<int> cx, cy;
        auto x = random_expr(mx, cx), y = random_expr(my, cy);
        std::string prod;
        for (std::size_t a = 0; a < mx.size(); ++a)
            for (std::size_t b = 0; b < my.size(); ++b) {
                int c = cx[a] * cy[b];
                prod += (c < 0 ? " - " : " + ") + std::to_string(std::abs(c)) + "*" + mx[a] + "^" + my[b];
            }
        EXPECT_EQ(wedge(parse_element(x, m), parse_element(y, m)), parse_element(prod, m)) << x << " | " << y;
    }
}
