#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/simple_current.hpp"

#include <set>

using namespace mtc;
using C = Cyclotomic;

namespace {

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

QuadraticForm form_of(const std::string& d) { return form_from_descriptors(parse_descriptors(d)).q; }
ModularData weil_of(const std::string& d) { return small_weil(form_of(d)); }

// discriminant form of sqrt(2n)Z: Z_{2n}, q(a) = a^2/(4n)
ModularData root_lattice_data(long long n)
{
    return small_weil(QuadraticForm::from_components({2 * n}, [n](const std::vector<long long>& a) {
        return Rational(a[0] * a[0], 4 * n);
    }));
}

long long divisors(long long n)
{
    long long c = 0;
    for (long long d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

std::set<IntMat> oracle_set(const ModularData& md)
{
    std::set<IntMat> s;
    for (auto& z : brute_force_invariants(md)) s.insert(z.matrix);
    return s;
}

Subgroup gen(const SimpleCurrentStructure& sc, const std::vector<Element>& g) { return Subgroup::generated(sc.group, g); }

}  // namespace

TEST_CASE("base epsilon")
{
    auto md = weil_of("2^2_1");  // Z4, q(a) = a^2/8
    auto sc = simple_currents(md);
    auto J = gen(sc, {sc.group.scale(2, sc.group.basis(0))});
    auto eps = base_epsilon(sc, J);
    CHECK(eps.matrix() == RatMat{{Rational(1, 2)}});
    CHECK(epsilon_defect(sc, J, eps).empty());

    auto triv = Subgroup::trivial(sc.group);
    CHECK(base_epsilon(sc, triv).matrix().empty());

    auto z2 = weil_of("2^1_1");
    auto s2 = simple_currents(z2);
    try {
        base_epsilon(s2, Subgroup::full(s2.group));
        FAIL("expected a quaternionic error");
    } catch (const QuaternionicElement& e) {
        CHECK(e.order == 2);
        CHECK(e.power == Rational(1, 2));
        CHECK_FALSE(s2.group.is_zero(e.witness));
    }
}

TEST_CASE("base epsilon satisfies both constraints on many subgroups")
{
    for (auto d : {"3^1_+,3^1_+", "2^12^1_ii", "2^2_1,2^1_1", "5^1_-,3^1_+", "2^12^1_i,2^1_1", "2^3_1,2^1_-1", "3^2_+,3^1_-"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        for (auto& J : all_subgroups(sc.group)) {
            bool quat = false;
            for (auto& j : J.elements()) quat = quat || sc.quaternionic[current_index(sc, j)];
            if (quat) {
                CHECK_THROWS_AS(base_epsilon(sc, J), QuaternionicElement);
                continue;
            }
            auto eps = base_epsilon(sc, J);
            CHECK(epsilon_defect(sc, J, eps).empty());
            // a non-alternating perturbation breaks the constraints
            for (auto& g : symmetric_pairings(J.as_group())) {
                if (g.is_alternating()) continue;
                CHECK_FALSE(epsilon_defect(sc, J, g * eps).empty());
                break;
            }
        }
    }
}

TEST_CASE("make epsilon")
{
    auto md = weil_of("3^1_+,3^1_+");
    auto sc = simple_currents(md);
    auto J = Subgroup::full(sc.group);
    std::set<Pairing> eps;
    auto alts = alternating_pairings(J.as_group());
    CHECK(alts.size() == 3);
    for (auto& psi : alts) eps.insert(make_epsilon(sc, J, psi).epsilon);
    CHECK(eps.size() == 3);

    auto z4 = weil_of("2^2_1");
    auto s4 = simple_currents(z4);
    auto cyc = gen(s4, {s4.group.scale(2, s4.group.basis(0))});
    auto p = make_epsilon(s4, cyc, Pairing::zero(cyc.as_group(), cyc.as_group()));
    CHECK(p.epsilon == base_epsilon(s4, cyc));

    RatMat bad = {{Rational(1, 2)}};
    CHECK_THROWS(make_epsilon(s4, cyc, Pairing::square(cyc.as_group(), bad)));
}

TEST_CASE("simple-current matrices")
{
    auto md = weil_of("2^2_1");
    auto sc = simple_currents(md);
    auto triv = Subgroup::trivial(sc.group);
    auto p0 = make_epsilon(sc, triv, Pairing::zero(triv.as_group(), triv.as_group()));
    CHECK(sc_matrix(md, sc, p0).matrix == identity_matrix(4));

    auto J = gen(sc, {sc.group.scale(2, sc.group.basis(0))});
    auto p = make_epsilon(sc, J, Pairing::zero(J.as_group(), J.as_group()));
    auto Z = sc_matrix(md, sc, p).matrix;
    CHECK(check_invariant(md, Z).ok);
    auto oracle = oracle_set(md);
    CHECK(oracle.size() == 2);
    CHECK(oracle.count(Z) == 1);
    CHECK(Z != identity_matrix(4));
}

TEST_CASE("charge conjugation from J = 2G and eps(j) = -j/2")
{
    for (auto d : {"3^1_+", "5^1_-", "3^1_+,3^1_-", "7^1_+", "3^1_+,5^1_+"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        const auto& G = sc.group;
        auto J = Subgroup::full(G);  // 2G = G for odd order
        long long half = (G.exponent() + 1) / 2;  // inverse of 2
        auto eps = Pairing::square(J.as_group(), [&] {
            auto B = J.basis();
            RatMat E(B.size(), std::vector<Rational>(B.size()));
            for (size_t a = 0; a < B.size(); ++a)
                for (size_t b = 0; b < B.size(); ++b)
                    E[a][b] = mod1(sc.pairing(current_index(sc, G.neg(G.scale(half, B[a]))), current_index(sc, B[b])));
            return E;
        }());
        CHECK(epsilon_defect(sc, J, eps).empty());
        auto Z = sc_matrix_raw(sc, J, eps);
        auto rep = validate_modular(md);
        const auto& Cc = rep.charge_conjugation;
        for (size_t a = 0; a < md.size(); ++a)
            for (size_t b = 0; b < md.size(); ++b) CHECK(Z[a][b] == (Cc[a] == b ? 1 : 0));
    }
}

TEST_CASE("enumeration on small data")
{
    auto z2 = weil_of("2^1_1");
    auto e2 = enumerate_sc(z2, simple_currents(z2));
    REQUIRE(e2.entries.size() == 1);
    CHECK(e2.entries[0].param.J.order() == 1);

    ModularData triv;
    triv.labels = {"0"};
    triv.S = {{C(1)}};
    triv.T = {C(1)};
    CHECK(enumerate_sc(triv, simple_currents(triv)).entries.size() == 1);

    for (long long n = 1; n <= 6; ++n) {
        CAPTURE(n);
        auto md = root_lattice_data(n);
        auto sc = simple_currents(md);
        auto e = enumerate_sc(md, sc);
        CHECK(static_cast<long long>(e.distinct.size()) == divisors(n));
        CHECK(e.collisions.empty());
    }
}

TEST_CASE("enumeration agrees with the oracle on Weil data")
{
    for (auto d : {"3^1_+", "2^1_1,2^1_1", "2^12^1_ii", "2^12^1_i", "2^2_1", "2^2_3", "5^1_+", "3^1_+,3^1_+", "3^1_+,3^1_-",
                   "2^3_1", "2^1_1,3^1_+", "2^2_1,2^1_1", "7^1_+", "2^1_-1,2^1_-1,2^1_1"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        REQUIRE(sc.sufficiently_nonzero);
        auto e = enumerate_sc(md, sc);
        CHECK(e.collisions.empty());
        std::set<IntMat> mine(e.distinct.begin(), e.distinct.end());
        CHECK(mine == oracle_set(md));
        for (const auto& en : e.entries) {
            auto chk = check_invariant(md, en.invariant.matrix, &sc);
            CHECK(chk.ok);
            CHECK(chk.proposition1.empty());
            // nonzero entries only on current orbits
            for (size_t a = 0; a < md.size(); ++a)
                for (size_t b = 0; b < md.size(); ++b)
                    if (en.invariant.matrix[a][b] != 0) {
                        bool orbit = false;
                        for (size_t j = 0; j < sc.primary.size(); ++j) orbit = orbit || sc.act(j, a) == b;
                        CHECK(orbit);
                    }
        }
        auto s = enumerate_sc_serial(md, sc);
        CHECK(s.distinct == e.distinct);
        CHECK(s.entries.size() == e.entries.size());
    }
}

TEST_CASE("recovering parameters from an invariant")
{
    for (auto d : {"2^2_1", "3^1_+,3^1_+", "2^12^1_ii", "2^3_1", "2^1_1,3^1_+"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        auto e = enumerate_sc(md, sc);
        for (const auto& en : e.entries) {
            auto r = recover_parameters(sc, en.invariant.matrix);
            REQUIRE(r.has_value());
            CHECK(r->J == en.param.J);
            CHECK(r->epsilon == en.param.epsilon);
        }
    }
}

TEST_CASE("generator chain independence of the enumerated set")
{
    auto md = weil_of("2^2_1,2^1_1");  // Z4 x Z2
    auto sc = simple_currents(md);
    const auto& G = sc.group;
    auto e = enumerate_sc(md, sc);
    std::set<IntMat> alt;
    for (auto& J : all_subgroups(G)) {
        bool quat = false;
        for (auto& j : J.elements()) quat = quat || sc.quaternionic[current_index(sc, j)];
        if (quat) continue;
        auto B = J.basis();
        std::vector<Element> chain = B;
        if (B.size() == 2) chain[0] = G.add(B[0], B[1]);  // (h1 + h2, h2) also decomposes J
        auto base = chain_epsilon(sc, J, chain);
        CHECK(epsilon_defect(sc, J, base).empty());
        for (auto& psi : alternating_pairings(J.as_group())) alt.insert(sc_matrix_raw(sc, J, psi * base));
    }
    CHECK(alt == std::set<IntMat>(e.distinct.begin(), e.distinct.end()));
}

TEST_CASE("products of simple-current invariants")
{
    for (auto d : {"2^2_1", "3^1_+,3^1_+", "2^12^1_ii", "2^3_1", "2^1_1,3^1_+", "5^1_+", "2^2_1,2^1_1"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        auto e = enumerate_sc(md, sc);
        for (size_t i = 0; i < e.entries.size(); ++i)
            for (size_t k = 0; k < e.entries.size(); ++k) {
                auto r = invariant_product(md, sc, e, i, k);
                CHECK(r.divisible);
                CHECK(r.entry.has_value());
                CHECK(r.formula_defect == "");
                if (i == k) {
                    // J'' is the common kernel J0 of eps, which is J only when eps vanishes
                    const auto& P = e.entries[i].param;
                    std::vector<Element> k0;
                    for (auto& x : pairing_image_data(P.epsilon).J0.elements()) k0.push_back(subgroup_element(P.J, x));
                    CHECK(r.J_formula == Subgroup::generated(sc.group, k0));
                    REQUIRE(r.eps_formula.has_value());
                    CHECK(*r.eps_formula == base_epsilon(sc, r.J_formula));
                }
                if (r.entry) CHECK(e.entries[*r.entry].param.J == r.J_formula);
            }
        // identity times identity
        auto r = invariant_product(md, sc, e, 0, 0);
        CHECK(r.n == 1);
        CHECK(r.Z3 == identity_matrix(md.size()));
    }
}

TEST_CASE("transpose of a simple-current invariant")
{
    for (auto d : {"3^1_+,3^1_+", "2^3_1", "2^2_1,2^1_1", "3^1_+,3^1_-"}) {
        CAPTURE(d);
        auto md = weil_of(d);
        auto sc = simple_currents(md);
        for (const auto& en : enumerate_sc(md, sc).entries)
            CHECK(transpose(en.invariant.matrix) == sc_matrix_raw(sc, en.param.J, en.param.epsilon.transpose()));
    }
}

TEST_CASE("S-only variant")
{
    auto md = weil_of("2^2_1");
    auto sc = simple_currents(md);
    auto J = gen(sc, {sc.group.scale(2, sc.group.basis(0))});
    auto zero = Pairing::zero(J.as_group(), J.as_group());
    CHECK(s_only_matrix(sc, J, zero, {1}) == sc_matrix(md, sc, make_epsilon(sc, J, zero)).matrix);
    auto M = s_only_matrix(sc, J, zero, {-1});
    CHECK(commutes_with_s(md, M));
    CHECK_FALSE(check_invariant(md, M).ok);
    for (const auto& z : oracle_set(md)) CHECK(M != z);

    auto triv = Subgroup::trivial(sc.group);
    CHECK(s_only_matrix(sc, triv, Pairing::zero(triv.as_group(), triv.as_group()), {}) == identity_matrix(4));

    auto z3 = weil_of("3^1_+");
    auto s3 = simple_currents(z3);
    auto J3 = Subgroup::full(s3.group);
    CHECK_THROWS_AS(s_only_matrix(s3, J3, Pairing::zero(J3.as_group(), J3.as_group()), {-1}), std::invalid_argument);

    // every sign choice gives an S-commuting matrix
    for (auto d : {"2^2_1,2^1_1", "2^12^1_ii", "2^3_1,2^1_1"}) {
        CAPTURE(d);
        auto m = weil_of(d);
        auto s = simple_currents(m);
        for (auto& JJ : all_subgroups(s.group)) {
            bool quat = false;
            for (auto& j : JJ.elements()) quat = quat || s.quaternionic[current_index(s, j)];
            if (quat) continue;
            auto ords = JJ.basis_orders();
            size_t r = ords.size();
            for (size_t mask = 0; mask < (1u << r); ++mask) {
                std::vector<int> phi(r, 1);
                bool ok = true;
                for (size_t i = 0; i < r; ++i)
                    if (mask >> i & 1) {
                        phi[i] = -1;
                        ok = ok && ords[i] % 2 == 0;
                    }
                if (!ok) continue;
                for (auto& psi : alternating_pairings(JJ.as_group())) {
                    auto Z = s_only_matrix(s, JJ, psi, phi);
                    CHECK(commutes_with_s(m, Z));
                    CHECK(Z[m.unit][m.unit] == 1);
                }
            }
        }
    }
}
