// Acceptance gate: one line per criterion, exit status 1 if any is red.
#include "mtc/groupoid.hpp"
#include "mtc/lattice.hpp"
#include "mtc/pointed.hpp"
#include "mtc/simple_current.hpp"
#include "mtc/ty.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace mtc;
using C = Cyclotomic;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Every orthogonal sum of indecomposable types with |G| <= bound, as descriptor strings.
std::vector<std::string> indecomposable_sums(long long bound)
{
    std::vector<std::pair<std::string, long long>> atoms;
    for (long long p : {3, 5, 7, 11, 13})
        for (int k = 1; k <= 2; ++k) {
            long long n = k == 1 ? p : p * p;
            if (n > bound) continue;
            for (auto s : {"+", "-"}) atoms.push_back({std::to_string(p) + "^" + std::to_string(k) + "_" + s, n});
        }
    for (int k = 1; (1LL << k) <= bound; ++k) {
        for (auto m : {"1", "-1", "3", "-3"}) atoms.push_back({"2^" + std::to_string(k) + "_" + m, 1LL << k});
        if ((1LL << (2 * k)) <= bound)
            for (auto t : {"i", "ii"}) atoms.push_back({"2^" + std::to_string(k) + "2^" + std::to_string(k) + "_" + t, 1LL << (2 * k)});
    }
    std::vector<std::string> out{""};
    std::function<void(size_t, long long, std::string)> rec = [&](size_t from, long long order, std::string acc) {
        for (size_t i = from; i < atoms.size(); ++i) {
            if (order * atoms[i].second > bound) continue;
            std::string next = acc.empty() ? atoms[i].first : acc + "," + atoms[i].first;
            out.push_back(next);
            rec(i, order * atoms[i].second, next);
        }
    };
    rec(0, 1, "");
    return out;
}

QuadraticForm form_of(const std::string& d)
{
    if (d.empty()) return QuadraticForm(FinAbGroup(), {Rational(0)});
    return form_from_descriptors(parse_descriptors(d)).q;
}

QuadraticForm root_form(long long n)
{
    return QuadraticForm::from_components({2 * n}, [n](const std::vector<long long>& a) { return Rational(a[0] * a[0], 4 * n); });
}

std::vector<Pairing> nondegenerate_symmetric(const FinAbGroup& G)
{
    std::vector<Pairing> out;
    for (auto& p : symmetric_pairings(G))
        if (p.is_nondegenerate()) out.push_back(p);
    return out;
}

std::set<IntMat> brute_set(const ModularData& md)
{
    std::set<IntMat> s;
    for (auto& z : brute_force_invariants(md)) s.insert(z.matrix);
    return s;
}

// ---------------------------------------------------------------- 1

Verdict divisor_count()
{
    Verdict v;
    std::ostringstream os;
    for (long long n = 1; n <= 6; ++n) {
        long long tau = 0;
        for (long long d = 1; d <= n; ++d) tau += n % d == 0;
        auto md = weil(root_form(n));
        auto sc = simple_currents(md);
        auto e = enumerate_sc(md, sc);
        auto oracle = brute_set(md);
        std::set<IntMat> got(e.distinct.begin(), e.distinct.end());
        bool ok = static_cast<long long>(got.size()) == tau && got == oracle;
        v.pass = v.pass && ok;
        os << "n=" << n << ":" << got.size() << "/" << tau << (ok ? "" : "!") << " ";
    }
    v.detail = os.str();
    return v;
}

// ---------------------------------------------------------------- 2

Verdict four_way()
{
    Verdict v;
    size_t cases = 0, bad = 0;
    std::string first_bad;
    for (const auto& d : indecomposable_sums(12)) {
        auto q = form_of(d);
        auto md = weil(q);
        auto sc = simple_currents(md);
        auto sce = enumerate_sc(md, sc);
        std::set<IntMat> jpsi(sce.distinct.begin(), sce.distinct.end()), dpm, zs;
        for (const auto& p : enum_dpm(q)) dpm.insert(z_to_matrix(q, dpm_to_z(q, p)));
        for (const auto& z : enum_z(q)) zs.insert(z_to_matrix(q, z));
        auto oracle = brute_set(md);
        ++cases;
        if (!(jpsi == dpm && dpm == zs && zs == oracle)) {
            ++bad;
            if (first_bad.empty()) first_bad = d;
        }
    }
    v.pass = bad == 0;
    v.detail = std::to_string(cases) + " forms, " + std::to_string(bad) + " mismatches" + (first_bad.empty() ? "" : " (first " + first_bad + ")");
    return v;
}

// ---------------------------------------------------------------- 3

Verdict modular_relations()
{
    Verdict v;
    size_t weil_n = 0, dbl_n = 0, eq_n = 0;
    std::string first_bad;
    auto note = [&](bool ok, const std::string& what) {
        if (!ok) {
            v.pass = false;
            if (first_bad.empty()) first_bad = what;
        }
    };
    for (const auto& d : indecomposable_sums(16)) {
        auto md = weil(form_of(d));
        note(validate_modular(md).ok(), "weil " + d);
        ++weil_n;
    }
    for (long long n = 1; n <= 5; ++n)
        for (const auto& G : abelian_groups_of_order(n))
            for (const auto& p : nondegenerate_symmetric(G))
                for (int s : {1, -1})
                    for (const auto& q : forms_for_pairing(p)) {
                        note(validate_modular(ty_double(ty_data(p, s), q)).ok(), "double " + G.to_string());
                        ++dbl_n;
                    }
    for (long long n : {3, 5, 7, 9})
        for (const auto& G : abelian_groups_of_order(n))
            for (const auto& p : nondegenerate_symmetric(G))
                for (int s : {1, -1}) {
                    note(validate_modular(ty_equiv(ty_data(p, s)).md).ok(), "equiv " + G.to_string());
                    ++eq_n;
                }
    v.detail = std::to_string(weil_n) + " Weil, " + std::to_string(dbl_n) + " doubles, " + std::to_string(eq_n) + " equivariantizations" +
               (first_bad.empty() ? "" : "; first failure " + first_bad);
    return v;
}

// ---------------------------------------------------------------- 4

Verdict ty_double_fusion()
{
    Verdict v;
    std::ostringstream os;
    for (long long n = 2; n <= 5; ++n)
        for (const auto& G : abelian_groups_of_order(n)) {
            bool count_ok = true, list_ok = true;
            for (const auto& p : nondegenerate_symmetric(G))
                for (int s : {1, -1})
                    for (const auto& q : forms_for_pairing(p)) {
                        auto md = n % 2 ? ty_double(ty_data(p, s), q, coherent_sqrt(q, s)) : ty_double(ty_data(p, s), q);
                        count_ok = count_ok && static_cast<long long>(md.size()) == 4 * n + n * (n - 1) / 2;
                        auto N = verlinde(md);
                        // the list fixes rho only up to swapping rho_0(h) and rho_1(h)
                        bool any = false;
                        for (unsigned mask = 0; mask < (1u << n) && !any; ++mask) {
                            auto labels = md.labels;
                            for (size_t h = 0; h < static_cast<size_t>(n); ++h)
                                if (mask >> h & 1) std::swap(labels[2 * n + 2 * h], labels[2 * n + 2 * h + 1]);
                            any = N.N == ty_double_fusion_list(G, labels).N;
                        }
                        list_ok = list_ok && any;
                    }
            v.pass = v.pass && count_ok && list_ok;
            os << G.to_string() << ":" << (list_ok ? "list" : "LIST-MISMATCH") << (count_ok ? "" : ",COUNT") << " ";
        }
    v.detail = os.str() + (v.pass ? "" : "(even order: beta acts on rho pairs with an h-dependent sign)");
    return v;
}

// ---------------------------------------------------------------- 5

Verdict gauss_closed_forms()
{
    Verdict v;
    size_t odd = 0, odd_bad = 0, two = 0, two_bad = 0, two_fixed_bad = 0;
    for (long long p : {3, 5, 7})
        for (int k = 1; k <= 2; ++k) {
            long long n = k == 1 ? p : p * p;
            for (long long c = 1; c < n; ++c) {
                if (c % p == 0) continue;
                for (long long a = 0; a < n; ++a) {
                    ++odd;
                    odd_bad += rho_sum_direct(n, c, a) != rho_sum_closed_odd(p, k, c, a);
                }
            }
        }
    for (int k = 1; k <= 4; ++k) {
        long long n = 1LL << k;
        for (long long m = 1; m < n; m += 2)
            for (long long a = 0; a < n; ++a) {
                ++two;
                auto direct = rho_sum_direct(n, m, a);
                two_bad += direct != rho_sum_closed_two(k, m, a);
                two_fixed_bad += direct != rho_sum_closed_two_corrected(k, m, a);
            }
    }
    v.pass = odd_bad == 0 && two_bad == 0;
    v.detail = "p^k_s " + std::to_string(odd - odd_bad) + "/" + std::to_string(odd) + ", 2^k_m printed " + std::to_string(two - two_bad) +
               "/" + std::to_string(two) + ", 2^k_m with prefactor (1+i) " + std::to_string(two - two_fixed_bad) + "/" + std::to_string(two);
    return v;
}

// ---------------------------------------------------------------- 6

Verdict equiv_parity()
{
    Verdict v;
    bool unitary = true, certs = true, lambda = true;
    std::string lam_note;
    for (long long n : {3, 5, 7, 9})
        for (const auto& G : abelian_groups_of_order(n))
            for (const auto& p : nondegenerate_symmetric(G))
                for (int s : {1, -1}) {
                    auto e = ty_equiv(ty_data(p, s));
                    unitary = unitary && !e.degenerate && validate_modular(e.md, false).ok();
                    bool lam_ok = e.md.S[0][0] == C(Rational(1, 2 * n));
                    if (!lam_ok && lam_note.empty())
                        lam_note = "S_00^2 = " + to_string(e.lambda_squared) + " for |G|=" + std::to_string(n) + ", displayed 1/(2|G|) squares to " +
                                   to_string(Rational(1, 4 * n * n));
                    lambda = lambda && lam_ok;
                }
    for (long long n : {2, 4})
        for (const auto& G : abelian_groups_of_order(n))
            for (const auto& p : nondegenerate_symmetric(G))
                for (int s : {1, -1}) {
                    auto e = ty_equiv(ty_data(p, s));
                    bool ok = e.degenerate && e.equal_rows && e.equal_rows->first != e.equal_rows->second &&
                              e.md.S[e.equal_rows->first] == e.md.S[e.equal_rows->second];
                    certs = certs && ok;
                }
    v.pass = unitary && certs && lambda;
    v.detail = std::string("odd unitary ") + (unitary ? "yes" : "NO") + ", even certificates " + (certs ? "yes" : "NO") + ", lambda = 1/(2|G|) " +
               (lambda ? "yes" : "NO (" + lam_note + ")");
    return v;
}

// ---------------------------------------------------------------- 7

Verdict pentagon()
{
    Verdict v;
    size_t systems = 0, mutations = 0, caught = 0;
    for (auto g : {"2", "3", "2x2", "4"}) {
        auto G = FinAbGroup::parse(g);
        for (const auto& p : nondegenerate_symmetric(G))
            for (int s : {1, -1}) {
                auto F = ty_associator(ty_data(p, s));
                ++systems;
                auto r = pentagon_check(F);
                v.pass = v.pass && r.ok;
            }
        for (int s : {1, -1}) {
            auto F = ty_associator(ty_data(standard_pairing(G), s));
            for (auto& [key, M] : F.F)
                for (size_t i = 0; i < M.size(); ++i)
                    for (size_t j = 0; j < M[i].size(); ++j) {
                        auto saved = M[i][j];
                        M[i][j] = saved.is_zero() ? C(1) : -saved;
                        auto r = pentagon_check(F);
                        ++mutations;
                        caught += !r.ok && !r.witness.empty();
                        M[i][j] = saved;
                    }
        }
    }
    v.pass = v.pass && caught == mutations;
    v.detail = std::to_string(systems) + " associators pass; " + std::to_string(caught) + "/" + std::to_string(mutations) +
               " single-entry mutations caught with a witness";
    return v;
}

// ---------------------------------------------------------------- 8

int two_rank(const FinAbGroup& G)
{
    int l = 0;
    for (auto n : G.factors()) l += n % 2 == 0;
    return l;
}

Verdict lemma_suite()
{
    Verdict v;
    // alternating count
    size_t groups = 0;
    bool l1 = true;
    for (long long n = 1; n <= 32; ++n)
        for (const auto& G : abelian_groups_of_order(n)) {
            ++groups;
            auto alts = alternating_pairings(G);
            std::set<Pairing> distinct(alts.begin(), alts.end());
            bool ok = static_cast<long long>(distinct.size()) == alternating_pairing_count(G);
            for (const auto& a : alts) ok = ok && a.is_alternating();
            if (n <= 16) {
                size_t c = 0;
                for (const auto& p : all_pairings(G, G)) c += p.is_alternating();
                ok = ok && static_cast<long long>(c) == alternating_pairing_count(G);
            }
            l1 = l1 && ok;
        }
    // image characterization: phi in image(eps) iff J0 <= ker phi; kernel is the left radical
    size_t pairings = 0;
    bool l2 = true;
    for (long long n = 1; n <= 16; ++n)
        for (const auto& G : abelian_groups_of_order(n)) {
            auto els = G.elements();
            auto chars = dual_characters(G);
            for (const auto& eps : all_pairings(G, G)) {
                ++pairings;
                auto d = pairing_image_data(eps);
                std::set<std::vector<Rational>> image;
                std::vector<Element> ker;
                for (const auto& g : els) {
                    std::vector<Rational> row;
                    bool zero = true;
                    for (const auto& h : els) {
                        row.push_back(eps.value(g, h));
                        zero = zero && eps.value(g, h) == 0;
                    }
                    if (zero) ker.push_back(g);
                    image.insert(row);
                }
                bool ok = d.kernel == Subgroup::generated(G, ker);
                for (const auto& chi : chars) {
                    std::vector<Rational> row;
                    bool kills = true;
                    for (const auto& h : els) {
                        row.push_back(chi.value(h));
                        if (d.J0.contains(h) && chi.value(h) != 0) kills = false;
                    }
                    ok = ok && image.count(row) == static_cast<size_t>(kills);
                }
                l2 = l2 && ok;
            }
        }
    // 2^l forms per pairing and at most two classes
    size_t sym = 0, count_bad = 0, class_bad = 0;
    std::string witness;
    for (long long n = 1; n <= 16; ++n)
        for (const auto& G : abelian_groups_of_order(n))
            for (const auto& p : nondegenerate_symmetric(G)) {
                ++sym;
                auto fs = forms_for_pairing(p);
                count_bad += static_cast<long long>(fs.size()) != (1LL << two_rank(G));
                auto c = form_classes(fs);
                int classes = *std::max_element(c.begin(), c.end()) + 1;
                if (classes > 2) {
                    ++class_bad;
                    if (witness.empty()) witness = G.to_string() + " has " + std::to_string(classes) + " classes";
                }
            }
    v.pass = l1 && l2 && count_bad == 0 && class_bad == 0;
    std::ostringstream os;
    os << "alternating count " << (l1 ? "ok" : "BAD") << " on " << groups << " groups; image characterization " << (l2 ? "ok" : "BAD")
       << " on " << pairings << " pairings; 2^l count " << (count_bad ? "BAD" : "ok") << " and <= 2 classes fails on " << class_bad << "/"
       << sym << " pairings" << (witness.empty() ? "" : " (e.g. " + witness + ")");
    v.detail = os.str();
    return v;
}

// ---------------------------------------------------------------- 9

Verdict corollary_products()
{
    Verdict v;
    size_t forms = 0, pairs = 0, bad = 0;
    for (const auto& d : indecomposable_sums(12)) {
        auto md = weil(form_of(d));
        auto sc = simple_currents(md);
        auto e = enumerate_sc(md, sc);
        ++forms;
        for (size_t i = 0; i < e.entries.size(); ++i)
            for (size_t k = 0; k < e.entries.size(); ++k) {
                ++pairs;
                const auto& Z1 = e.entries[i].invariant.matrix;
                const auto& Z2 = e.entries[k].invariant.matrix;
                size_t m = md.size();
                long long overlap = 0;
                for (size_t a = 0; a < m; ++a) overlap += Z1[md.unit][a] != 0 && Z2[md.unit][a] != 0;
                IntMat P(m, std::vector<long long>(m, 0));
                for (size_t a = 0; a < m; ++a)
                    for (size_t b = 0; b < m; ++b)
                        for (size_t c = 0; c < m; ++c) P[a][b] += Z1[a][c] * Z2[b][c];
                bool ok = overlap > 0;
                IntMat Z3 = P;
                for (auto& row : Z3)
                    for (auto& x : row) {
                        ok = ok && x % overlap == 0;
                        x /= overlap;
                    }
                ok = ok && std::binary_search(e.distinct.begin(), e.distinct.end(), Z3);
                auto r = invariant_product(md, sc, e, i, k);
                ok = ok && r.n == overlap && r.divisible && r.Z3 == Z3 && r.entry.has_value();
                bad += !ok;
            }
    }
    v.pass = bad == 0;
    v.detail = std::to_string(pairs) + " ordered pairs over " + std::to_string(forms) + " forms, " + std::to_string(bad) + " failures";
    return v;
}

// ---------------------------------------------------------------- 10

Verdict quaternionic()
{
    auto count = [](const Lattice& L) {
        auto sc = simple_currents(weil(discriminant(L).q));
        return std::count(sc.quaternionic.begin(), sc.quaternionic.end(), true);
    };
    long long d8 = count(named("D8")), a1e7 = count(direct_sum(named("A1"), named("E7")));
    Verdict v;
    v.pass = d8 == 0 && a1e7 == 2;
    v.detail = "D8: " + std::to_string(d8) + ", A1+E7: " + std::to_string(a1e7);
    return v;
}

// ---------------------------------------------------------------- 11

Verdict milgram()
{
    std::vector<std::pair<std::string, Lattice>> fixtures;
    for (auto n : {"A1", "A2", "A3", "A4", "A6", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "sqrt2n:1", "sqrt2n:3", "sqrt2n:5"})
        fixtures.push_back({n, named(n)});
    fixtures.push_back({"glue A1^4", glue(direct_sum(direct_sum(named("A1"), named("A1")), direct_sum(named("A1"), named("A1"))),
                                          {{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}})});
    // glue along the first nonzero isotropic class
    auto isotropic_glue = [](const Lattice& L) {
        auto D = discriminant(L);
        for (size_t i = 1; i < D.reps.size(); ++i)
            if (D.q.value_at(i) == 0) return glue(L, {D.reps[i]});
        throw std::logic_error("no isotropic class");
    };
    fixtures.push_back({"glue A7", isotropic_glue(named("A7"))});
    fixtures.push_back({"glue D8", isotropic_glue(named("D8"))});
    fixtures.push_back({"glue A2+E6", isotropic_glue(direct_sum(named("A2"), named("E6")))});
    for (auto d : {"3^1_+", "3^1_-", "5^1_+", "5^1_-", "7^1_-", "3^2_+", "2^1_1", "2^1_-1", "2^2_3", "2^2_-3", "2^3_-1", "2^12^1_ii",
                   "2^12^1_i", "2^1_1,3^1_+"})
        fixtures.push_back({std::string("realize ") + d, realize(parse_descriptors(d)).lattice});
    Verdict v;
    size_t bad = 0;
    std::string first;
    for (const auto& [name, L] : fixtures) {
        int sig = gauss_sum(discriminant(L).q).signature_mod_8;
        if (sig != static_cast<int>(L.rank() % 8)) {
            ++bad;
            if (first.empty()) first = name;
        }
    }
    v.pass = bad == 0 && fixtures.size() >= 20;
    v.detail = std::to_string(fixtures.size() - bad) + "/" + std::to_string(fixtures.size()) + " lattices" + (first.empty() ? "" : ", first failure " + first);
    return v;
}

// ---------------------------------------------------------------- 12

Verdict groupoid_calculus()
{
    bool units = true, ring = true;
    for (auto g : {"2", "3", "4", "2x2"}) {
        auto G = FinAbGroup::parse(g);
        size_t n = static_cast<size_t>(G.order());
        for (size_t U = 0; U < n; ++U)
            for (size_t V = 0; V < n; ++V)
                for (size_t W = 0; W < n; ++W) {
                    auto c = corr_matrix(compose(matrix_unit(G, U, V), matrix_unit(G, V, W)));
                    IntMat E(n, std::vector<long long>(n, 0));
                    E[W][U] = 1;
                    units = units && c == E;
                    auto z = corr_matrix(compose(matrix_unit(G, U, V), matrix_unit(G, (V + 1) % n, W)));
                    units = units && z == IntMat(n, std::vector<long long>(n, 0));
                }
    }
    size_t groups = 0;
    for (long long n = 1; n <= 5; ++n)
        for (const auto& G : abelian_groups_of_order(n)) {
            ++groups;
            ring = ring && ty_bundle_ring(G).N.N == ty_fusion(G).N.N;
        }
    std::mt19937_64 rng(20240501);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        auto A = random_groupoid(rng), B = random_groupoid(rng), Cg = random_groupoid(rng);
        auto c1 = random_correspondence(rng, A, B);
        auto c2 = random_correspondence(rng, B, Cg);
        bad += corr_matrix(compose(c1, c2)) != matrix_product(corr_matrix(c2), corr_matrix(c1));
    }
    Verdict v;
    v.pass = units && ring && bad == 0;
    v.detail = std::string("matrix units ") + (units ? "ok" : "BAD") + ", bundle ring = ty_fusion on " + std::to_string(groups) + " groups " +
               (ring ? "ok" : "BAD") + ", random functoriality " + std::to_string(100 - bad) + "/100";
    return v;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> run;
        double limit_s;  // 0 for none
    };
    std::vector<Criterion> all{
        {1, "divisor count for sqrt(2n)Z", divisor_count, 10},
        {2, "four-way equality (J,psi) (D+-,sigma) Z oracle, |G| <= 12", four_way, 120},
        {3, "modular relations", modular_relations, 0},
        {4, "TY-double fusion list and primary count", ty_double_fusion, 0},
        {5, "Gauss-sum closed forms", gauss_closed_forms, 0},
        {6, "Z2-equivariantization parity", equiv_parity, 0},
        {7, "pentagon and mutation witnesses", pentagon, 0},
        {8, "lemma suite", lemma_suite, 0},
        {9, "invariant products", corollary_products, 0},
        {10, "quaternionic fixtures", quaternionic, 0},
        {11, "Milgram signature", milgram, 0},
        {12, "groupoid calculus", groupoid_calculus, 0},
    };
    int red = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            v.pass = false;
            v.detail += " [over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit]";
        }
        red += !v.pass;
        char t[32];
        std::snprintf(t, sizeof t, "%.2fs", secs);
        std::cout << "criterion " << c.id << " " << (v.pass ? "PASS" : "FAIL") << " " << c.name << ": " << v.detail << " (" << t << ")"
                  << std::endl;
    }
    std::cout << (all.size() - red) << "/" << all.size() << " criteria pass" << std::endl;
    return red ? 1 : 0;
}
