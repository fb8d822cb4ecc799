#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/abelian.hpp"

#include <random>
#include <set>

using namespace mtc;

namespace {

// Oracle: subgroups as closed element subsets, found by closing every subset of generators.
size_t count_subgroups_by_closure(const FinAbGroup& G)
{
    auto elems = G.elements();
    std::set<std::vector<size_t>> seen;
    std::vector<std::vector<size_t>> work{{G.index(G.zero())}};
    seen.insert(work[0]);
    while (!work.empty()) {
        auto S = work.back();
        work.pop_back();
        for (const auto& g : elems) {
            std::set<size_t> cl(S.begin(), S.end());
            if (cl.count(G.index(g))) continue;
            std::vector<size_t> frontier(S.begin(), S.end());
            frontier.push_back(G.index(g));
            cl.insert(G.index(g));
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<size_t> cur(cl.begin(), cl.end());
                for (auto a : cur)
                    for (auto b : cur) {
                        size_t c = G.index(G.add(G.element(a), G.element(b)));
                        if (cl.insert(c).second) grew = true;
                    }
            }
            std::vector<size_t> v(cl.begin(), cl.end());
            if (seen.insert(v).second) work.push_back(v);
        }
    }
    return seen.size();
}

bool is_diagonal_chain(const IntMat& D)
{
    long long prev = 1;
    for (size_t i = 0; i < std::min(D.size(), D.empty() ? 0 : D[0].size()); ++i) {
        for (size_t j = 0; j < D[0].size(); ++j)
            if (i != j && D[i][j] != 0) return false;
        long long d = D[i][i];
        if (d < 0) return false;
        if (prev == 0 && d != 0) return false;
        if (prev != 0 && d % prev != 0 && d != 0) return false;
        prev = d;
    }
    return true;
}

}  // namespace

TEST_CASE("smith normal form")
{
    auto s = smith_normal_form({{1, 0}, {0, 1}});
    CHECK(s.D == IntMat{{1, 0}, {0, 1}});
    s = smith_normal_form({{2, 4}, {-2, 6}});
    CHECK(s.D == IntMat{{2, 0}, {0, 10}});
    s = smith_normal_form({{0, 0}, {0, 0}});
    CHECK(s.D == IntMat{{0, 0}, {0, 0}});

    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
        IntMat M(m, std::vector<long long>(n));
        for (auto& r : M)
            for (auto& v : r) v = static_cast<long long>(rng() % 13) - 6;
        auto f = smith_normal_form(M);
        CHECK(mat_mul(mat_mul(f.P, M), f.Q) == f.D);
        CHECK(mat_mul(mat_mul(f.Pinv, f.D), f.Qinv) == M);
        CHECK(mat_mul(f.P, f.Pinv) == identity_matrix(m));
        CHECK(mat_mul(f.Q, f.Qinv) == identity_matrix(n));
        CHECK(is_diagonal_chain(f.D));
    }
}

TEST_CASE("group basics")
{
    CHECK_THROWS(FinAbGroup({2, 4}));
    FinAbGroup G = FinAbGroup::parse("2x3");
    CHECK(G.factors() == std::vector<long long>{6});
    G = FinAbGroup::parse("2x4x2");
    CHECK(G.factors() == std::vector<long long>{4, 2, 2});
    CHECK(FinAbGroup::parse("1").order() == 1);
    for (size_t i = 0; i < static_cast<size_t>(G.order()); ++i) CHECK(G.index(G.element(i)) == i);
}

TEST_CASE("subgroup enumeration")
{
    CHECK(all_subgroups(FinAbGroup({4})).size() == 3);
    CHECK(all_subgroups(FinAbGroup({2, 2})).size() == 5);
    CHECK(all_subgroups(FinAbGroup({6})).size() == 4);
    for (long long p : {2, 3, 5, 7}) CHECK(all_subgroups(FinAbGroup({p, p})).size() == static_cast<size_t>(p + 3));
    for (auto f : std::vector<std::vector<long long>>{{}, {8}, {4, 2}, {2, 2, 2}, {6, 2}, {4, 4}, {12}, {3, 3}, {9, 3}})
        CHECK(all_subgroups(FinAbGroup(f)).size() == count_subgroups_by_closure(FinAbGroup(f)));
}

TEST_CASE("canonical form is set-determined")
{
    FinAbGroup G({4, 2});
    auto a = Subgroup::generated(G, {{2, 0}, {0, 1}});
    auto b = Subgroup::generated(G, {{2, 1}, {0, 1}, {0, 0}});
    CHECK(a == b);
    CHECK(a.order() == 4);
    CHECK(a.elements().size() == 4);
    for (const auto& H : all_subgroups(G)) {
        auto again = Subgroup::generated(G, H.elements());
        CHECK(again == H);
        long long prod = 1;
        for (auto o : H.basis_orders()) prod *= o;
        CHECK(prod == H.order());
        for (const auto& e : H.elements()) {
            auto c = H.coordinates(e);
            Element s = G.zero();
            for (size_t i = 0; i < c.size(); ++i) s = G.add(s, G.scale(c[i], H.basis()[i]));
            CHECK(s == e);
        }
    }
}

TEST_CASE("quotients")
{
    FinAbGroup Z4({4});
    auto q = quotient(Z4, Subgroup::generated(Z4, {{2}}));
    CHECK(q.group.factors() == std::vector<long long>{2});
    FinAbGroup V({2, 2});
    q = quotient(V, Subgroup::generated(V, {{1, 1}}));
    CHECK(q.group.factors() == std::vector<long long>{2});
    q = quotient(V, Subgroup::full(V));
    CHECK(q.group.order() == 1);

    // |G/H| = |G/K| |K/H| along random chains, kernel of projection is H
    std::mt19937 rng(11);
    for (auto f : std::vector<std::vector<long long>>{{12, 2}, {4, 4}, {8, 2}, {6, 6}, {2, 2, 2}}) {
        FinAbGroup G(f);
        auto subs = all_subgroups(G);
        for (int t = 0; t < 20; ++t) {
            const auto& H = subs[rng() % subs.size()];
            const auto& K = subs[rng() % subs.size()];
            auto HK = H.join(K);
            auto qG = quotient(G, H);
            auto qK = quotient(G, HK);
            CHECK(qG.group.order() == qK.group.order() * (HK.order() / H.order()));
            for (const auto& g : G.elements())
                CHECK(qG.group.is_zero(qG.projection(g)) == H.contains(g));
            for (size_t i = 0; i < qG.representatives.size(); ++i)
                CHECK(qG.group.index(qG.projection(qG.representatives[i])) == i);
        }
    }
}

TEST_CASE("kernel and image")
{
    FinAbGroup Z4({4});
    auto [k0, i0] = hom_kernel_image(Hom(Z4, Z4, {{0}}));
    CHECK(k0.order() == 4);
    CHECK(i0.order() == 1);
    auto [k1, i1] = hom_kernel_image(Hom(Z4, Z4, {{2}}));
    CHECK(k1 == Subgroup::generated(Z4, {{2}}));
    CHECK(i1 == Subgroup::generated(Z4, {{2}}));
    FinAbGroup Z2({2});
    auto [k2, i2] = hom_kernel_image(Hom(Z2, Z4, {{2}}));
    CHECK(k2.order() == 1);
    CHECK(i2.order() == 2);
    CHECK_THROWS(Hom(Z4, Z2, {{1}}) .compose(Hom(Z2, Z4, {{3}})));
    CHECK_THROWS(Hom(Z2, Z4, {{1}}));
}

TEST_CASE("automorphisms")
{
    CHECK(automorphisms(FinAbGroup({3})).size() == 2);
    CHECK(automorphisms(FinAbGroup({2, 2})).size() == 6);
    CHECK(automorphisms(FinAbGroup({4})).size() == 2);
    CHECK(automorphisms(FinAbGroup({2, 2, 2})).size() == 168);
    CHECK(automorphisms(FinAbGroup({4, 2})).size() == 8);
    auto A = automorphisms(FinAbGroup({4, 2}));
    for (const auto& a : A)
        for (const auto& b : A) CHECK(std::find(A.begin(), A.end(), a.compose(b)) != A.end());
}

TEST_CASE("characters")
{
    CHECK(dual_characters(FinAbGroup()).size() == 1);
    auto d = dual_characters(FinAbGroup({2}));
    CHECK(d.size() == 2);
    CHECK(d[1].value({1}) == Rational(1, 2));
    CHECK(dual_characters(FinAbGroup({4}))[1].value({1}) == Rational(1, 4));
    // orthogonality: sum_g chi(g) conj chi'(g) = |G| delta
    for (auto f : std::vector<std::vector<long long>>{{6}, {4, 2}, {3, 3}}) {
        FinAbGroup G(f);
        auto chars = dual_characters(G);
        for (const auto& a : chars)
            for (const auto& b : chars) {
                Cyclotomic s;
                for (const auto& g : G.elements()) s += Cyclotomic::phase(a.value(g) - b.value(g));
                CHECK(s == Cyclotomic(a.exponents == b.exponents ? G.order() : 0));
            }
    }
}
