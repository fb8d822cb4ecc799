#include "mtc/lattice.hpp"

#include "mtc/pointed.hpp"
#include "mtc/simple_current.hpp"
#include "mtc/ty.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <map>
#include <regex>

namespace mtc {

namespace {

using QMat = std::vector<std::vector<mpq_class>>;

Rational to_rat(const mpq_class& x)
{
    mpz_class n = x.get_num(), d = x.get_den();
    if (!n.fits_slong_p() || !d.fits_slong_p()) throw std::overflow_error("lattice: rational out of range");
    return Rational(n.get_si(), d.get_si());
}

QMat to_q(const IntMat& M)
{
    QMat A(M.size());
    for (size_t i = 0; i < M.size(); ++i)
        for (long long v : M[i]) A[i].emplace_back(static_cast<long>(v));
    return A;
}

// Gauss-Jordan on [A | I]; returns false if singular.
bool invert(QMat A, QMat& inv)
{
    size_t n = A.size();
    inv.assign(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) return false;
        std::swap(A[p], A[c]);
        std::swap(inv[p], inv[c]);
        mpq_class piv = A[c][c];
        for (size_t j = 0; j < n; ++j) {
            A[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            mpq_class f = A[r][c];
            for (size_t j = 0; j < n; ++j) {
                A[r][j] -= f * A[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return true;
}

mpq_class det_q(QMat A)
{
    size_t n = A.size();
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(A[p], A[c]);
            det = -det;
        }
        det *= A[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (A[r][c] == 0) continue;
            mpq_class f = A[r][c] / A[c][c];
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return det;
}

long long lcm_den(const std::vector<DualVector>& vs)
{
    long long D = 1;
    for (const auto& v : vs)
        for (const auto& x : v) D = lcm_ll(D, x.denominator());
    return D;
}

// Z-basis of the span of the rows (rational, common coordinates).
std::vector<DualVector> span_basis(const std::vector<DualVector>& rows, size_t n)
{
    long long D = lcm_den(rows);
    IntMat A;
    for (const auto& r : rows) {
        std::vector<long long> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = (r[i] * D).numerator();
        A.push_back(v);
    }
    auto s = smith_normal_form(A);
    std::vector<DualVector> out;
    for (size_t i = 0; i < std::min(s.D.size(), n); ++i) {
        long long d = s.D[i][i];
        if (d == 0) continue;
        DualVector b(n);
        for (size_t j = 0; j < n; ++j) b[j] = Rational(d * s.Qinv[i][j], D);
        out.push_back(b);
    }
    return out;
}

DualVector unit(size_t n, size_t i, Rational x = 1)
{
    DualVector v(n, Rational(0));
    v[i] = x;
    return v;
}

DualVector concat(std::initializer_list<DualVector> parts)
{
    DualVector out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

DualVector zeros(size_t n) { return DualVector(n, Rational(0)); }

}  // namespace

std::string Lattice::defect() const
{
    size_t n = gram.size();
    for (const auto& row : gram)
        if (row.size() != n) return "gram matrix is not square";
    for (size_t i = 0; i < n; ++i) {
        if (gram[i][i] % 2 != 0) return "diagonal entry " + std::to_string(i) + " is odd";
        for (size_t j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) return "gram matrix is not symmetric";
    }
    auto A = to_q(gram);
    for (size_t k = 1; k <= n; ++k) {
        QMat M(k);
        for (size_t i = 0; i < k; ++i) M[i].assign(A[i].begin(), A[i].begin() + static_cast<long>(k));
        if (det_q(M) <= 0) return "leading minor " + std::to_string(k) + " is not positive";
    }
    return {};
}

Lattice make_lattice(IntMat gram)
{
    Lattice L{std::move(gram)};
    auto d = L.defect();
    if (!d.empty()) throw std::invalid_argument("lattice: " + d);
    return L;
}

Lattice direct_sum(const Lattice& a, const Lattice& b)
{
    size_t n = a.rank(), m = b.rank();
    IntMat g(n + m, std::vector<long long>(n + m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
    return Lattice{g};
}

long long determinant(const IntMat& M)
{
    mpq_class d = det_q(to_q(M));
    return to_rat(d).numerator();
}

RatMat inverse_matrix(const IntMat& M)
{
    QMat inv;
    if (!invert(to_q(M), inv)) throw std::invalid_argument("inverse_matrix: singular");
    RatMat out(inv.size());
    for (size_t i = 0; i < inv.size(); ++i)
        for (const auto& x : inv[i]) out[i].push_back(to_rat(x));
    return out;
}

Rational dot(const Lattice& L, const DualVector& u, const DualVector& v)
{
    Rational s = 0;
    for (size_t i = 0; i < L.rank(); ++i) {
        if (u[i] == 0) continue;
        for (size_t j = 0; j < L.rank(); ++j)
            if (v[j] != 0 && L.gram[i][j] != 0) s += u[i] * L.gram[i][j] * v[j];
    }
    return s;
}

bool in_dual(const Lattice& L, const DualVector& u)
{
    for (size_t i = 0; i < L.rank(); ++i) {
        Rational y = 0;
        for (size_t j = 0; j < L.rank(); ++j) y += Rational(L.gram[i][j]) * u[j];
        if (y.denominator() != 1) return false;
    }
    return true;
}

Element Discriminant::class_of(const DualVector& u) const
{
    size_t n = u.size();
    std::vector<long long> y(n, 0);
    for (size_t i = 0; i < n; ++i) {
        Rational s = 0;
        for (size_t j = 0; j < n; ++j) s += Rational(gram[i][j]) * u[j];
        if (s.denominator() != 1) throw std::invalid_argument("class_of: vector is not in the dual lattice");
        y[i] = s.numerator();
    }
    return pres.map(y);
}

Discriminant discriminant(const Lattice& L)
{
    Discriminant d;
    size_t n = L.rank();
    d.gram = L.gram;
    d.pres = Presentation::from_relations(n, L.gram);
    d.group = d.pres.group;
    auto inv = inverse_matrix(L.gram);
    std::vector<Rational> vals;
    for (const auto& e : d.group.elements()) {
        auto y = d.pres.lift(e);
        DualVector u(n, Rational(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) u[i] += inv[i][j] * y[j];
        vals.push_back(mod1(dot(L, u, u) / 2));
        d.reps.push_back(std::move(u));
    }
    d.q = QuadraticForm(d.group, vals);
    return d;
}

Glued glue_with_basis(const Lattice& L, const std::vector<DualVector>& cosets)
{
    size_t n = L.rank();
    for (size_t i = 0; i < cosets.size(); ++i) {
        if (cosets[i].size() != n) throw std::invalid_argument("glue: coset vector has the wrong length");
        if (!in_dual(L, cosets[i])) throw std::invalid_argument("glue: coset " + std::to_string(i) + " is not in the dual lattice");
        Rational nn = dot(L, cosets[i], cosets[i]);
        if (nn.denominator() != 1 || nn.numerator() % 2 != 0)
            throw std::invalid_argument("glue: coset " + std::to_string(i) + " has norm " + to_string(nn) + ", not even");
        for (size_t j = 0; j < i; ++j)
            if (dot(L, cosets[i], cosets[j]).denominator() != 1)
                throw std::invalid_argument("glue: cosets " + std::to_string(j) + "," + std::to_string(i) + " pair non-integrally");
    }
    std::vector<DualVector> rows;
    for (size_t i = 0; i < n; ++i) rows.push_back(unit(n, i));
    rows.insert(rows.end(), cosets.begin(), cosets.end());
    Glued g;
    g.basis = span_basis(rows, n);
    IntMat gram(n, std::vector<long long>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gram[i][j] = dot(L, g.basis[i], g.basis[j]).numerator();
    g.lattice = make_lattice(gram);
    return g;
}

Lattice glue(const Lattice& L, const std::vector<DualVector>& cosets) { return glue_with_basis(L, cosets).lattice; }

bool lattice_contains(const std::vector<DualVector>& big, const std::vector<DualVector>& small)
{
    if (big.empty()) return small.empty();
    size_t n = big[0].size();
    long long D = lcm_ll(lcm_den(big), lcm_den(small));
    IntMat B(n, std::vector<long long>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) B[i][j] = (big[i][j] * D).numerator();
    auto inv = inverse_matrix(B);
    for (const auto& v : small)
        for (size_t j = 0; j < n; ++j) {
            Rational c = 0;
            for (size_t i = 0; i < n; ++i) c += (v[i] * D) * inv[i][j];
            if (c.denominator() != 1) return false;
        }
    return true;
}

Lattice named(const std::string& name)
{
    static const std::regex re(R"(^\s*(A|D|E)_?(\d+)\s*$|^\s*sqrt2n\s*[(:]\s*(\d+)\s*\)?\s*$)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) throw std::invalid_argument("named: unknown lattice " + name);
    if (m[3].matched) {
        long long n = std::stoll(m[3]);
        if (n < 1) throw std::invalid_argument("named: sqrt2n needs n >= 1");
        return make_lattice({{2 * n}});
    }
    std::string kind = m[1];
    long long n = std::stoll(m[2]);
    auto cartan = [](size_t r) { return IntMat(r, std::vector<long long>(r, 0)); };
    if (kind == "A") {
        if (n < 1) throw std::invalid_argument("named: A_n needs n >= 1");
        auto g = cartan(static_cast<size_t>(n));
        for (size_t i = 0; i < g.size(); ++i) {
            g[i][i] = 2;
            if (i + 1 < g.size()) g[i][i + 1] = g[i + 1][i] = -1;
        }
        return make_lattice(g);
    }
    if (kind == "D") {
        if (n < 3) throw std::invalid_argument("named: D_n needs n >= 3");
        auto g = cartan(static_cast<size_t>(n));
        for (size_t i = 0; i < g.size(); ++i) g[i][i] = 2;
        for (size_t i = 0; i + 2 < g.size(); ++i) g[i][i + 1] = g[i + 1][i] = -1;
        size_t a = g.size() - 3, b = g.size() - 1;
        g[a][b] = g[b][a] = -1;  // fork at node n-3
        return make_lattice(g);
    }
    if (n < 6 || n > 8) throw std::invalid_argument("named: E_n needs n in 6..8");
    // chain 0-1-...-(n-2), extra node n-1 attached to node 2
    auto g = cartan(static_cast<size_t>(n));
    for (size_t i = 0; i < g.size(); ++i) g[i][i] = 2;
    for (size_t i = 0; i + 2 < g.size(); ++i) g[i][i + 1] = g[i + 1][i] = -1;
    size_t x = g.size() - 1;
    g[2][x] = g[x][2] = -1;
    return make_lattice(g);
}

namespace {

struct Atom {
    std::string name;
    Lattice L;
    long long order;
    int sig;
};

const std::vector<Atom>& atoms()
{
    static const std::vector<Atom> table = [] {
        std::vector<std::string> names;
        for (int n = 1; n <= 12; ++n) names.push_back("A" + std::to_string(n));
        for (int n = 4; n <= 12; ++n) names.push_back("D" + std::to_string(n));
        names.push_back("E6");
        names.push_back("E7");
        for (int n = 2; n <= 16; ++n) names.push_back("sqrt2n(" + std::to_string(n) + ")");
        std::vector<Atom> out;
        for (auto& nm : names) {
            auto L = named(nm);
            out.push_back({nm, L, determinant(L.gram), static_cast<int>(L.rank() % 8)});
        }
        return out;
    }();
    return table;
}

Lattice sum_of(const std::vector<size_t>& idx)
{
    Lattice L{{}};
    for (size_t i : idx) L = direct_sum(L, atoms()[i].L);
    return L;
}

bool equivalent(const QuadraticForm& a, const QuadraticForm& b)
{
    if (a.group().order() != b.group().order()) return false;
    return forms_equivalent(a, b).has_value();
}

std::optional<Realization> try_glue(const Lattice& base, const std::string& label, const QuadraticForm& target, long long s)
{
    auto d = discriminant(base);
    std::vector<Subgroup> cands = s == 1 ? std::vector<Subgroup>{Subgroup::trivial(d.group)} : subgroups_of_order(d.group, s);
    for (const auto& D : cands) {
        bool iso = true;
        for (const auto& h : D.elements()) iso = iso && d.q.value(h) == 0;
        if (!iso) continue;
        auto data = isotropic_data(d.q, D);
        if (!equivalent(data.induced, target)) continue;
        std::vector<DualVector> glue_vecs;
        for (const auto& h : D.basis()) glue_vecs.push_back(d.reps[d.group.index(h)]);
        return Realization{glue(base, glue_vecs), label + (s == 1 ? "" : " glued along an isotropic subgroup of order " + std::to_string(s))};
    }
    return std::nullopt;
}

Realization search(const QuadraticForm& target, const SearchBounds& b)
{
    long long N = target.group().order();
    int sigma = gauss_sum(target).signature_mod_8;
    if (N == 1) return {named("E8"), "E8"};
    const auto& A = atoms();
    struct Cand {
        long long s;
        size_t rank;
        std::vector<size_t> idx;
    };
    std::vector<Cand> cands;
    std::vector<size_t> cur;
    std::function<void(size_t, long long, size_t)> rec = [&](size_t start, long long order, size_t rank) {
        if (!cur.empty() && static_cast<int>(rank % 8) == sigma && order % N == 0) {
            long long r = order / N, s = 1;
            while (s * s < r) ++s;
            if (s * s == r && s <= b.max_glue_order) cands.push_back({s, rank, cur});
        }
        if (static_cast<int>(cur.size()) == b.max_components) return;
        for (size_t i = start; i < A.size(); ++i) {
            long long o = order * A[i].order;
            if (o > N * b.max_glue_order * b.max_glue_order) continue;
            cur.push_back(i);
            rec(i, o, rank + A[i].L.rank());
            cur.pop_back();
        }
    };
    rec(0, 1, 0);
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return std::tie(x.s, x.rank) < std::tie(y.s, y.rank); });
    // first hit in (s, rank) order wins, whichever thread finds it
    long long best = static_cast<long long>(cands.size());
    std::optional<Realization> found;
#pragma omp parallel for schedule(dynamic)
    for (long long ci = 0; ci < static_cast<long long>(cands.size()); ++ci) {
        long long cur_best;
#pragma omp atomic read
        cur_best = best;
        if (ci > cur_best) continue;
        const auto& c = cands[static_cast<size_t>(ci)];
        std::string label;
        for (size_t i : c.idx) label += (label.empty() ? "" : "+") + A[i].name;
        std::optional<Realization> r;
        try {
            r = try_glue(sum_of(c.idx), label, target, c.s);
        } catch (const std::exception&) {
        }
        if (!r) continue;
#pragma omp critical(lattice_search)
        if (ci < best) {
            best = ci;
            found = std::move(r);
        }
    }
    if (found) return *found;
    throw NotRealized("realize: no gluing of at most " + std::to_string(b.max_components) +
                      " named lattices along an isotropic subgroup of order <= " + std::to_string(b.max_glue_order) +
                      " realizes the form (search bound, not a proof of nonexistence)");
}

bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int legendre(long long a, long long p)
{
    a = mod_ll(a, p);
    if (a == 0) return 0;
    long long r = 1, e = (p - 1) / 2, x = a;
    while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// A dual vector of order n whose class has q = r.
DualVector find_class(const Discriminant& d, long long n, const Rational& r)
{
    for (const auto& e : d.group.elements())
        if (d.group.element_order(e) == n && d.q.value(e) == mod1(r)) return d.reps[d.group.index(e)];
    throw std::logic_error("realize: no class with the requested norm");
}

Realization realize_one(const Descriptor& ds, const SearchBounds& b)
{
    auto target = indecomposable_form(ds).q;
    Realization out;
    if (ds.kind == Descriptor::Kind::OddPrime) {
        long long pk = 1;
        for (int i = 0; i < ds.k; ++i) pk *= ds.p;
        std::optional<Lattice> A;
        if (ds.p % 4 == 3) A = named("A" + std::to_string(pk - 1));
        if (A && equivalent(discriminant(*A).q, target)) {
            out = {*A, "A" + std::to_string(pk - 1)};
        } else {
            // p' p^k = 3 mod 4 keeps the first glue vector even; (2 p^k / p') = 1 lets A_{p'-1} carry gamma when p' = 3 mod 4
            long long pp = 3;
            while (pp < b.prime_bound && !(pp != ds.p && is_prime(pp) && (pp * pk) % 4 == 3 && legendre(pp, ds.p) == ds.s &&
                                           legendre(2 * pk, pp) == 1))
                pp += 2;
            if (pp >= b.prime_bound) throw NotRealized("realize: no auxiliary prime below " + std::to_string(b.prime_bound));
            // L' with Z_{p'} and gamma.gamma = -2 p^k / p' mod 2
            Descriptor aux;
            aux.p = pp;
            aux.s = legendre(-pk, pp);
            auto Lp = realize_one(aux, b);
            auto gamma = find_class(discriminant(Lp.lattice), pp, Rational(-pk, pp));
            long long N1 = 2 * pp * pk;
            Lattice base = direct_sum(direct_sum(Lattice{{{N1}}}, Lp.lattice), Lattice{{{2}}});
            size_t m = Lp.lattice.rank();
            auto v1 = concat({DualVector{Rational(pp * pk, N1)}, zeros(m), DualVector{Rational(1, 2)}});
            auto v2 = concat({DualVector{Rational(2 * pk, N1)}, gamma, DualVector{Rational(0)}});
            out = {glue(base, {v1, v2}), "(sqrt(" + std::to_string(N1) + ")Z + " + Lp.construction + " + sqrt2 Z) glued, p' = " + std::to_string(pp)};
        }
    } else if (ds.kind == Descriptor::Kind::TwoCyclic) {
        long long n = 1LL << ds.k;
        if (ds.m == 1) {
            out = {Lattice{{{n}}}, "sqrt(" + std::to_string(n) + ")Z"};
        } else if (ds.m == 3) {
            auto Lp = named(ds.k % 2 == 0 ? "A2" : "E6");
            auto gamma = find_class(discriminant(Lp), 3, Rational(n, 3));
            Lattice base = direct_sum(Lattice{{{3 * n}}}, Lp);
            auto v = concat({DualVector{Rational(n, 3 * n)}, gamma});
            out = {glue(base, {v}), "(sqrt(" + std::to_string(3 * n) + ")Z + " + std::string(ds.k % 2 == 0 ? "A2" : "E6") + ") glued"};
        } else {
            // A_{n-1} has q = (n-1)/2n; D_n (n odd) has Z4 with q = n/8
            std::vector<std::pair<std::string, long long>> tries;
            if (ds.m == -1) tries = {{"A" + std::to_string(n - 1), 1}, {"D7", 1}, {"E7", 1}};
            else tries = {{"A1", 1}, {"D5", 1}, {"A" + std::to_string(3 * n - 1) + "+A2", 3}, {"A" + std::to_string(3 * n - 1) + "+E6", 3}};
            std::optional<Realization> r;
            for (const auto& [spec, s] : tries) {
                Lattice base{{}};
                for (size_t at = 0, nx; at <= spec.size(); at = nx + 1) {
                    nx = spec.find('+', at);
                    if (nx == std::string::npos) nx = spec.size();
                    base = direct_sum(base, named(spec.substr(at, nx - at)));
                }
                if ((r = try_glue(base, spec, target, s))) break;
            }
            out = r ? *r : search(target, b);
        }
    } else {
        long long n = 1LL << ds.k;
        Descriptor sub;
        sub.kind = Descriptor::Kind::TwoCyclic;
        sub.k = ds.k;
        sub.m = ds.kind == Descriptor::Kind::TwoTwoI ? -1 : -3;
        try {
            auto Lp = realize_one(sub, b);
            auto gamma = find_class(discriminant(Lp.lattice), n, Rational(sub.m, 2 * n));
            size_t m = Lp.lattice.rank();
            Lattice base;
            DualVector v;
            auto e = DualVector{Rational(1, n)};
            if (ds.kind == Descriptor::Kind::TwoTwoI) {
                base = direct_sum(direct_sum(Lattice{{{n}}}, Lattice{{{n}}}), direct_sum(Lp.lattice, Lp.lattice));
                v = concat({e, e, gamma, gamma});
            } else {
                base = direct_sum(direct_sum(Lattice{{{n}}}, Lattice{{{n}}}), direct_sum(Lattice{{{n}}}, Lp.lattice));
                v = concat({e, e, e, gamma});
            }
            (void)m;
            auto L = glue(base, {v});
            if (equivalent(discriminant(L).q, target)) out = {L, "(sqrt(" + std::to_string(n) + ")Z^" + (ds.kind == Descriptor::Kind::TwoTwoI ? "2 + 2 L'" : "3 + L'") + ") glued, L' = " + Lp.construction};
            else out = search(target, b);
        } catch (const NotRealized&) {
            out = search(target, b);
        }
    }
    if (!equivalent(discriminant(out.lattice).q, target))
        throw std::logic_error("realize: construction " + out.construction + " does not realize " + ds.to_string());
    return out;
}

}  // namespace

Realization realize(const std::vector<Descriptor>& ds, const SearchBounds& b)
{
    if (ds.empty()) return {named("E8"), "E8"};
    Realization out{Lattice{{}}, ""};
    for (const auto& d : ds) {
        auto r = realize_one(d, b);
        out.lattice = direct_sum(out.lattice, r.lattice);
        out.construction += (out.construction.empty() ? "" : " + ") + ("[" + r.construction + "]");
    }
    return out;
}

Realization realize(const QuadraticForm& q, const SearchBounds& b)
{
    auto e = q.defect();
    if (!e.empty()) throw std::invalid_argument("realize: " + e);
    return search(q, b);
}

Overlattice overlattice(const Lattice& L, const std::vector<DualVector>& gens)
{
    Overlattice O{L, gens, discriminant(L), {}};
    std::vector<Element> cls;
    for (const auto& g : gens) {
        if (!in_dual(L, g)) throw std::invalid_argument("overlattice: generator is not in the dual lattice");
        cls.push_back(O.disc.class_of(g));
    }
    glue(L, gens);  // M must be even
    O.quotient = Subgroup::generated(O.disc.group, cls);
    return O;
}

Glued intermediate_lattice(const Overlattice& O, const Subgroup& H)
{
    if (H.ambient() != O.quotient.as_group()) throw std::invalid_argument("intermediate: H is not a subgroup of M/L");
    std::vector<DualVector> vs;
    for (const auto& h : H.basis()) {
        auto e = subgroup_element(O.quotient, h);
        vs.push_back(O.disc.reps[O.disc.group.index(e)]);
    }
    return glue_with_basis(O.L, vs);
}

IntermediatePair intermediate(const Overlattice& O, const Subgroup& H, const Pairing& gamma)
{
    auto G = O.quotient.as_group();
    if (gamma.left() != G || gamma.right() != G || !gamma.is_nondegenerate())
        throw std::invalid_argument("intermediate: gamma must be a nondegenerate pairing on M/L");
    return {intermediate_lattice(O, H), intermediate_lattice(O, pairing_perp(gamma, H))};
}

}  // namespace mtc
