#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/lattice.hpp"
#include "mtc/ty.hpp"

using namespace mtc;

namespace {

bool same_form(const QuadraticForm& a, const QuadraticForm& b)
{
    return a.group() == b.group() && forms_equivalent(a, b).has_value();
}

QuadraticForm cyclic(long long n, Rational r)
{
    return QuadraticForm::from_components({n}, [=](const std::vector<long long>& a) { return mod1(r * a[0] * a[0]); });
}

long long det_of(const Glued& g) { return determinant(g.lattice.gram); }

const std::vector<std::string> kNamed = {"A1", "A2", "A3", "A4", "A7", "A8", "A10", "D4", "D5", "D6", "D7", "D8",
                                         "E6", "E7", "E8", "sqrt2n(1)", "sqrt2n(2)", "sqrt2n(3)", "sqrt2n(5)", "sqrt2n(8)"};

const std::vector<std::string> kDescriptors = {
    "3^1_+", "3^1_-", "5^1_+", "5^1_-", "7^1_+", "7^1_-", "3^2_+", "3^2_-", "11^1_+", "11^1_-", "13^1_+", "13^1_-",
    "2^1_1", "2^1_-1", "2^1_3", "2^1_-3", "2^2_1", "2^2_-1", "2^2_3", "2^2_-3", "2^3_1", "2^3_-1", "2^3_3", "2^3_-3",
    "2^4_1", "2^4_-1", "2^4_3", "2^4_-3", "2^1 2^1_i", "2^1 2^1_ii", "2^2 2^2_i", "2^2 2^2_ii", "3^1_+,5^1_-", "2^1_1,3^1_-"};

}  // namespace

TEST_CASE("gram validation")
{
    CHECK_THROWS_AS(make_lattice({{1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{2, 1}, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{2, 3}, {3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{-2}}), std::invalid_argument);
    CHECK_NOTHROW(make_lattice({{2, -1}, {-1, 2}}));
    CHECK_THROWS_AS(named("F4"), std::invalid_argument);
    CHECK_THROWS_AS(named("E9"), std::invalid_argument);
    CHECK_THROWS_AS(named("D2"), std::invalid_argument);
}

TEST_CASE("discriminants of named lattices")
{
    CHECK(discriminant(named("E8")).group.order() == 1);
    auto a2 = discriminant(named("A2"));
    CHECK(same_form(a2.q, cyclic(3, Rational(1, 3))));
    auto a1 = discriminant(named("A1"));
    CHECK(same_form(a1.q, cyclic(2, Rational(1, 4))));
    auto e7 = discriminant(named("E7"));
    CHECK(same_form(e7.q, cyclic(2, Rational(3, 4))));
    for (long long n = 1; n <= 8; ++n) {
        auto d = discriminant(named("sqrt2n(" + std::to_string(n) + ")"));
        CHECK(same_form(d.q, cyclic(2 * n, Rational(1, 4 * n))));
    }
    auto d4 = discriminant(named("D4"));
    CHECK(d4.group == FinAbGroup::parse("2x2"));
    // D4: all three nonzero classes have norm 1
    for (const auto& e : d4.group.elements())
        if (!d4.group.is_zero(e)) CHECK(d4.q.value(e) == Rational(1, 2));
    CHECK(named("sqrt2n:3").gram == named("sqrt2n(3)").gram);
    CHECK(named("A_4").gram == named("A4").gram);
}

TEST_CASE("A_{n-1} generator norm (n-1)/n")
{
    for (long long n : {3, 5, 7, 9, 11, 25, 27}) {
        auto d = discriminant(named("A" + std::to_string(n - 1)));
        CHECK(d.group == FinAbGroup::from_cyclic_orders({n}));
        bool seen = false;
        for (const auto& e : d.group.elements())
            if (d.group.element_order(e) == n) seen = seen || d.q.value(e) == Rational(n - 1, 2 * n);
        CHECK(seen);
    }
}

TEST_CASE("det equals discriminant order, Milgram signature")
{
    for (const auto& nm : kNamed) {
        auto L = named(nm);
        auto d = discriminant(L);
        INFO(nm);
        CHECK(determinant(L.gram) == d.group.order());
        CHECK(gauss_sum(d.q).signature_mod_8 == static_cast<int>(L.rank() % 8));
        for (const auto& u : d.reps) CHECK(in_dual(L, u));
        for (size_t i = 0; i < d.reps.size(); ++i) CHECK(d.group.index(d.class_of(d.reps[i])) == i);
    }
}

TEST_CASE("gluing")
{
    auto L = named("A3");
    CHECK(glue(L, {}).gram == L.gram);

    auto base = direct_sum(named("A2"), named("E6"));
    auto d = discriminant(base);
    // diagonal order-3 isotropic class
    std::optional<DualVector> diag;
    for (size_t i = 0; i < d.reps.size(); ++i) {
        const auto& e = d.group.element(i);
        if (d.group.element_order(e) != 3 || d.q.value_at(i) != 0) continue;
        bool both = false, left = false;
        for (size_t j = 0; j < 2; ++j) left = left || d.reps[i][j].denominator() != 1;
        for (size_t j = 2; j < 8; ++j) both = both || d.reps[i][j].denominator() != 1;
        if (left && both) diag = d.reps[i];
    }
    REQUIRE(diag);
    auto E8ish = glue(base, {*diag});
    CHECK(determinant(E8ish.gram) == 1);
    CHECK(E8ish.defect().empty());

    // odd norm and non-dual vectors are refused
    CHECK_THROWS_AS(glue(named("A1"), {{Rational(1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(glue(named("A2"), {{Rational(1, 2), Rational(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(glue(Lattice{{{4}}}, {{Rational(1, 4)}}), std::invalid_argument);

    // determinant law on isotropic subgroups of a few sums
    for (auto spec : std::vector<std::vector<std::string>>{{"A1", "A1", "A1", "A1"}, {"A2", "A2", "A2"}, {"D4", "D4"}, {"sqrt2n(8)"}, {"A3", "A3"}}) {
        Lattice S{{}};
        for (auto& n : spec) S = direct_sum(S, named(n));
        auto ds = discriminant(S);
        for (const auto& H : all_subgroups(ds.group)) {
            bool iso = true;
            for (const auto& h : H.elements()) iso = iso && ds.q.value(h) == 0;
            if (!iso) continue;
            std::vector<DualVector> us;
            for (const auto& h : H.basis()) us.push_back(ds.reps[ds.group.index(h)]);
            auto g = glue_with_basis(S, us);
            CHECK(det_of(g) * H.order() * H.order() == determinant(S.gram));
            CHECK(gauss_sum(discriminant(g.lattice).q).signature_mod_8 == static_cast<int>(S.rank() % 8));
        }
    }
}

TEST_CASE("2^k_3 gluing")
{
    for (int k = 1; k <= 5; ++k) {
        long long n = 1LL << k;
        auto Lp = named(k % 2 == 0 ? "A2" : "E6");
        auto dp = discriminant(Lp);
        std::optional<DualVector> gamma;
        for (size_t i = 0; i < dp.reps.size(); ++i)
            if (dp.q.value_at(i) == mod1(Rational(n, 3))) gamma = dp.reps[i];
        REQUIRE(gamma);
        DualVector v{Rational(1, 3)};
        v.insert(v.end(), gamma->begin(), gamma->end());
        auto L = glue(direct_sum(Lattice{{{3 * n}}}, Lp), {v});
        CHECK(same_form(discriminant(L).q, cyclic(n, Rational(3, 2 * n))));
    }
}

TEST_CASE("realize descriptors")
{
    for (const auto& text : kDescriptors) {
        INFO(text);
        auto ds = parse_descriptors(text);
        auto r = realize(ds);
        auto d = discriminant(r.lattice);
        CHECK(r.lattice.defect().empty());
        CHECK(same_form(d.q, form_from_descriptors(ds).q));
        CHECK(gauss_sum(d.q).signature_mod_8 == static_cast<int>(r.lattice.rank() % 8));
    }
    CHECK(realize(parse_descriptors("3^1_+")).lattice.gram == named("A2").gram);
    CHECK(realize(parse_descriptors("7^1_-")).lattice.gram == named("A6").gram);
    CHECK(realize(parse_descriptors("2^3_1")).lattice.gram == IntMat{{8}});
    CHECK(realize(std::vector<Descriptor>{}).lattice.gram == named("E8").gram);
}

TEST_CASE("realize a form by search")
{
    // Z2 x Z2 with q(l,m) = (-1)^{lm}
    auto hyp = QuadraticForm::from_components({2, 2}, [](const std::vector<long long>& a) { return mod1(Rational(a[0] * a[1], 2)); });
    auto r = realize(hyp);
    CHECK(same_form(discriminant(r.lattice).q, hyp));
    auto z3 = cyclic(3, Rational(2, 3));
    CHECK(same_form(discriminant(realize(z3).lattice).q, z3));
    SearchBounds tiny;
    tiny.max_components = 1;
    tiny.max_glue_order = 1;
    CHECK_THROWS_AS(realize(cyclic(13, Rational(1, 13)), tiny), NotRealized);
}

TEST_CASE("realize is stable on the named table")
{
    for (const auto& nm : kNamed) {
        auto q = discriminant(named(nm)).q;
        if (q.group().order() > 16) continue;
        INFO(nm);
        CHECK(same_form(discriminant(realize(q).lattice).q, q));
    }
}

TEST_CASE("intermediate lattices")
{
    // L = sqrt(32) Z inside M = sqrt2 Z
    auto L = make_lattice({{32}});
    auto O = overlattice(L, {{Rational(1, 4)}});
    REQUIRE(O.quotient.order() == 4);
    auto G = O.quotient.as_group();
    auto gamma = Pairing::square(G, RatMat{{Rational(1, 4)}});

    auto triv = intermediate_lattice(O, Subgroup::trivial(G));
    CHECK(triv.lattice.gram == L.gram);
    auto full = intermediate_lattice(O, Subgroup::full(G));
    CHECK(full.lattice.gram == IntMat{{2}});

    auto H = subgroups_of_order(G, 2).front();
    auto pr = intermediate(O, H, gamma);
    CHECK(pr.lower.lattice.gram == IntMat{{8}});
    CHECK(pr.upper.lattice.gram == IntMat{{8}});  // H^perp = H here

    CHECK_THROWS_AS(overlattice(L, {{Rational(1, 3)}}), std::invalid_argument);
    CHECK_THROWS_AS(overlattice(L, {{Rational(1, 8)}}), std::invalid_argument);  // odd norm 1/2
}

TEST_CASE("intermediate correspondence and tower")
{
    // L = A1^4 + D4 inside a lattice with M/L = Z2 x Z2
    Lattice L = direct_sum(direct_sum(named("A1"), named("A1")), direct_sum(named("A1"), named("A1")));
    L = direct_sum(L, named("D4"));
    auto d = discriminant(L);
    std::vector<DualVector> iso;
    DualVector all_a1{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), 0, 0, 0, 0};
    iso.push_back(all_a1);
    // two A1 halves plus a D4 class
    for (size_t i = 0; i < d.reps.size(); ++i) {
        auto e = d.group.element(i);
        const auto& u = d.reps[i];
        bool a1 = u[0].denominator() == 2 && u[1].denominator() == 2 && u[2].denominator() == 1 && u[3].denominator() == 1;
        bool d4 = false;
        for (size_t j = 4; j < 8; ++j) d4 = d4 || u[j].denominator() != 1;
        if (a1 && d4 && d.q.value_at(i) == 0) {
            iso.push_back(u);
            break;
        }
    }
    REQUIRE(iso.size() == 2);
    auto O = overlattice(L, iso);
    auto G = O.quotient.as_group();
    REQUIRE(G.order() == 4);
    auto gamma = standard_pairing(G);
    REQUIRE(gamma.is_nondegenerate());
    auto subs = all_subgroups(G);
    for (const auto& H : subs) {
        auto pr = intermediate(O, H, gamma);
        CHECK(determinant(pr.lower.lattice.gram) * H.order() * H.order() == determinant(L.gram));
        auto Hp = pairing_perp(gamma, H);
        CHECK(determinant(pr.upper.lattice.gram) * Hp.order() * Hp.order() == determinant(L.gram));
        for (const auto& K : subs) {
            if (!K.contains(H)) continue;
            auto lk = intermediate_lattice(O, K);
            CHECK(lattice_contains(lk.basis, pr.lower.basis));
            // M^H / M^K has order |K/H|
            auto uk = intermediate(O, K, gamma).upper;
            CHECK(lattice_contains(pr.upper.basis, uk.basis));
            CHECK(determinant(pr.upper.lattice.gram) * (K.order() / H.order()) * (K.order() / H.order()) == determinant(uk.lattice.gram));
        }
    }
    CHECK_THROWS_AS(intermediate(O, subs.front(), Pairing::zero(G, G)), std::invalid_argument);
}
