#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/forms.hpp"
#include "mtc/modular.hpp"

using namespace mtc;
using C = Cyclotomic;

namespace {

// S = <g,h>/sqrt|G|, T = x q(g), built directly from the form.
ModularData small_weil(const QuadraticForm& q)
{
    const auto& G = q.group();
    auto b = polarization(q);
    auto x = canonical_x(q);
    size_t n = static_cast<size_t>(G.order());
    C root = C::sqrt_nonneg_int(G.order()).inverse();
    ModularData md;
    md.S.assign(n, std::vector<C>(n));
    for (size_t i = 0; i < n; ++i) {
        md.labels.push_back(std::to_string(i));
        md.T.push_back(x * C::phase(q.value_at(i)));
        for (size_t j = 0; j < n; ++j) md.S[i][j] = C::phase(b.value(G.element(i), G.element(j))) * root;
    }
    md.unit = G.index(G.zero());
    return md;
}

ModularData weil_of(const std::string& descriptors) { return small_weil(form_from_descriptors(parse_descriptors(descriptors)).q); }

ModularData trivial()
{
    ModularData md;
    md.labels = {"0"};
    md.S = {{C(1)}};
    md.T = {C(1)};
    return md;
}

IntMat identity(size_t n) { return identity_matrix(n); }

}  // namespace

TEST_CASE("modular data validation")
{
    auto md = weil_of("2^1_1");
    auto rep = validate_modular(md);
    CHECK(rep.ok());
    CHECK(rep.st_cube_phase == Rational(0));
    CHECK(rep.charge_conjugation == std::vector<size_t>{0, 1});

    CHECK(validate_modular(trivial()).ok());

    auto bad = md;
    bad.T[1] = bad.T[1] * C::root_of_unity(8, 1);
    auto r2 = validate_modular(bad);
    CHECK_FALSE(r2.ok());

    auto bad2 = md;
    bad2.S[0][1] = bad2.S[0][1] * C(2);
    CHECK_FALSE(validate_modular(bad2).ok());

    // x dropped: (ST)^3 is a phase times S^2
    auto unnorm = md;
    for (auto& t : unnorm.T) t = t * canonical_x(form_from_descriptors(parse_descriptors("2^1_1")).q).inverse();
    auto r3 = validate_modular(unnorm);
    CHECK_FALSE(r3.ok());
    REQUIRE(r3.st_cube_phase.has_value());
    CHECK(*r3.st_cube_phase == Rational(1, 8));

    for (auto d : {"3^1_+", "3^1_-", "5^1_+", "2^2_3", "2^12^1_ii", "3^1_+,2^1_-1", "7^1_-"}) {
        CAPTURE(d);
        CHECK(validate_modular(weil_of(d)).ok());
    }
}

TEST_CASE("charge conjugation of Z3")
{
    auto rep = validate_modular(weil_of("3^1_+"));
    REQUIRE(rep.ok());
    CHECK(rep.charge_conjugation == std::vector<size_t>{0, 2, 1});
}

TEST_CASE("verlinde on pointed data is group addition")
{
    for (auto d : {"3^1_+", "2^2_1", "2^12^1_i", "5^1_-", "3^1_+,2^1_1"}) {
        CAPTURE(d);
        auto q = form_from_descriptors(parse_descriptors(d)).q;
        const auto& G = q.group();
        auto md = small_weil(q);
        auto f = verlinde(md);
        CHECK(fusion_ring_defect(f, md.unit).empty());
        for (size_t a = 0; a < md.size(); ++a)
            for (size_t b = 0; b < md.size(); ++b)
                for (size_t c = 0; c < md.size(); ++c)
                    CHECK(f(a, b, c) == (G.index(G.add(G.element(a), G.element(b))) == c ? 1 : 0));
        auto g = verlinde_serial(md);
        CHECK(f.N == g.N);
    }
}

TEST_CASE("verlinde rejects non-integral data")
{
    // S of a 2x2 rotation that is unitary but not modular
    ModularData md;
    md.labels = {"a", "b"};
    C r3 = C::sqrt_nonneg_int(3);
    md.S = {{C(Rational(1, 2)), r3 * C(Rational(1, 2))}, {r3 * C(Rational(1, 2)), C(Rational(-1, 2))}};
    md.T = {C(1), C(1)};
    CHECK_THROWS_AS(verlinde(md), std::domain_error);
}

TEST_CASE("fusion ring defects")
{
    FusionRules f;
    f.n = 2;
    f.N = {1, 0, 0, 1, 0, 1, 1, 0};
    CHECK(fusion_ring_defect(f, 0).empty());
    f.N[7] = 1;  // N_{11}^1 = 1: Fibonacci, still a fusion ring
    CHECK(fusion_ring_defect(f, 0).empty());
    f.N[6] = 0;  // no dual for 1
    CHECK_FALSE(fusion_ring_defect(f, 0).empty());
    f.N = {1, 0, 0, 1, 0, 1, 1, 0};
    f.N[2] = 1;  // unit row broken
    CHECK_FALSE(fusion_ring_defect(f, 0).empty());
}

TEST_CASE("deligne product")
{
    auto a = weil_of("3^1_+"), b = weil_of("2^1_1");
    auto p = deligne_product(a, b);
    CHECK(p.size() == 6);
    CHECK(p.labels[1] == "0|1");
    CHECK(validate_modular(p).ok());
}

TEST_CASE("simple currents of pointed data")
{
    for (auto d : {"3^1_+", "2^2_1", "2^12^1_ii", "3^1_+,3^1_-", "2^1_1,2^1_1"}) {
        CAPTURE(d);
        auto q = form_from_descriptors(parse_descriptors(d)).q;
        auto md = small_weil(q);
        auto sc = simple_currents(md);
        size_t n = md.size();
        CHECK(sc.group.order() == static_cast<long long>(n));
        CHECK(sc.group.factors() == q.group().factors());
        CHECK(sc.primary[0] == md.unit);
        CHECK(sc.sufficiently_nonzero);
        auto f = verlinde(md);
        for (size_t j = 0; j < n; ++j) {
            // j acts by fusion
            for (size_t a = 0; a < n; ++a) CHECK(f(sc.primary[j], a, sc.act(j, a)) == 1);
            // q(j) = T_jj / T_00 and it matches the form
            CHECK(sc.q[j] == q.value_at(sc.primary[j]));
            // <j,j'> symmetric, and Q_{jb}(j') = <j,j'> + Q_b(j')
            for (size_t jp = 0; jp < n; ++jp) {
                CHECK(sc.pairing(j, jp) == sc.pairing(jp, j));
                for (size_t b = 0; b < n; ++b)
                    CHECK(sc.Q[sc.act(j, b)][jp] == mod1(sc.pairing(j, jp) + sc.Q[b][jp]));
            }
            // quaternionic iff q(j)^{ord j} = -1
            long long o = sc.group.element_order(sc.group.element(j));
            CHECK(sc.quaternionic[j] == (mod1(sc.q[j] * o) == Rational(1, 2)));
        }
    }
}

TEST_CASE("quaternionic currents")
{
    // Z2 with q(1) = i: i^2 = -1
    auto sc = simple_currents(weil_of("2^1_1"));
    CHECK(sc.q[1] == Rational(1, 4));
    CHECK(sc.quaternionic[1]);
    // two copies of q = -i: the diagonal element has q = -1 and is not quaternionic
    auto sq = simple_currents(weil_of("2^1_-1,2^1_-1"));
    size_t quat = 0;
    for (bool b : sq.quaternionic) quat += b;
    CHECK(quat == 2);
    // Z4 with q(1) = e^{2 pi i/8}: 1^4 -> e^{pi i}, quaternionic; q(2) = -1 has order 2, not
    auto s4 = simple_currents(weil_of("2^2_1"));
    quat = 0;
    for (bool b : s4.quaternionic) quat += b;
    CHECK(quat == 2);
}

TEST_CASE("invariant checks")
{
    auto md = weil_of("3^1_+");
    CHECK(check_invariant(md, identity(3)).ok);
    IntMat Cc = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    CHECK(check_invariant(md, Cc).ok);
    IntMat ones(3, std::vector<long long>(3, 1));
    CHECK_FALSE(check_invariant(md, ones).ok);
    IntMat neg = identity(3);
    neg[1][1] = -1;
    CHECK_FALSE(check_invariant(md, neg).ok);
    IntMat z0 = identity(3);
    z0[0][0] = 2;
    CHECK_FALSE(check_invariant(md, z0).ok);
    CHECK_THROWS(check_invariant(md, identity(2)));

    auto sc = simple_currents(md);
    auto r = check_invariant(md, identity(3), &sc);
    CHECK(r.proposition1.empty());
}

TEST_CASE("brute force oracle on small data")
{
    CHECK(brute_force_invariants(trivial()).size() == 1);
    // Z2 with q = i: only the identity
    auto z2 = brute_force_invariants(weil_of("2^1_1"));
    REQUIRE(z2.size() == 1);
    CHECK(z2[0].matrix == identity(2));
    // Z3: identity and charge conjugation
    CHECK(brute_force_invariants(weil_of("3^1_+")).size() == 2);
    // Z4 with q(l) = e^{2 pi i l^2/8}: identity, C, and the extension by {0,2} is not allowed (q(2)=-1)
    auto z4 = brute_force_invariants(weil_of("2^2_1"));
    CHECK(z4.size() == 2);
    for (auto d : {"2^1_1,2^1_1", "2^12^1_ii", "2^12^1_i", "5^1_+", "3^1_+,3^1_-"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto par = brute_force_invariants(md);
        auto ser = brute_force_invariants_serial(md);
        REQUIRE(par.size() == ser.size());
        for (size_t i = 0; i < par.size(); ++i) CHECK(par[i].matrix == ser[i].matrix);
        for (const auto& z : par) {
            CHECK(check_invariant(md, z.matrix).ok);
            auto sc = simple_currents(md);
            CHECK(check_invariant(md, z.matrix, &sc).proposition1.empty());
        }
        CHECK(std::find_if(par.begin(), par.end(), [&](const ModularInvariant& z) { return z.matrix == identity(md.size()); }) != par.end());
    }
}

TEST_CASE("commutant dimension")
{
    // Z3: span of identity and C
    CHECK(commutant_dimension(weil_of("3^1_+")) == 2);
    CHECK(commutant_dimension(weil_of("2^1_1")) == 1);
}
