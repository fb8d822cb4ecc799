#include "mtc/modular.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mtc {

namespace {

std::atomic<size_t> g_free_limit{60};

std::string pos(size_t i, size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

Rational exponent_or_throw(const Cyclotomic& z, const char* what)
{
    auto e = z.root_of_unity_exponent();
    if (!e) throw std::domain_error(std::string(what) + " is not a root of unity");
    return *e;
}

}  // namespace

size_t oracle_free_limit() { return g_free_limit.load(); }
void set_oracle_free_limit(size_t n) { g_free_limit.store(n); }

CycMat cyc_mul(const CycMat& A, const CycMat& B)
{
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    CycMat C(n, std::vector<Cyclotomic>(m));
#pragma omp parallel for schedule(dynamic) if (n * m * k > 4096)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        for (size_t t = 0; t < k; ++t) {
            const auto& a = A[static_cast<size_t>(i)][t];
            if (a.is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!B[t][j].is_zero()) C[static_cast<size_t>(i)][j] += a * B[t][j];
        }
    return C;
}

CycMat cyc_mul_diag(const CycMat& A, const std::vector<Cyclotomic>& d)
{
    CycMat C = A;
    for (auto& row : C)
        for (size_t j = 0; j < row.size(); ++j) row[j] *= d[j];
    return C;
}

CycMat cyc_adjoint(const CycMat& A)
{
    size_t n = A.size(), m = A.empty() ? 0 : A[0].size();
    CycMat C(m, std::vector<Cyclotomic>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) C[j][i] = A[i][j].conj();
    return C;
}

CycMat cyc_identity(size_t n)
{
    CycMat I(n, std::vector<Cyclotomic>(n));
    for (size_t i = 0; i < n; ++i) I[i][i] = Cyclotomic(1);
    return I;
}

long long common_order(const CycMat& A)
{
    long long L = 1;
    for (const auto& r : A)
        for (const auto& z : r) L = lcm_ll(L, z.order());
    return L;
}

size_t ModularData::index(const std::string& label) const
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::out_of_range("no primary labelled " + label);
    return static_cast<size_t>(it - labels.begin());
}

long long ModularData::field_order() const
{
    long long L = common_order(S);
    for (const auto& t : T) L = lcm_ll(L, t.order());
    return L;
}

ModularData ModularData::embedded() const
{
    ModularData out = *this;
    long long L = field_order();
    for (auto& r : out.S)
        for (auto& z : r) z = z.embed(L);
    for (auto& t : out.T) t = t.embed(L);
    return out;
}

ModularData deligne_product(const ModularData& a, const ModularData& b)
{
    ModularData out;
    size_t na = a.size(), nb = b.size();
    out.S.assign(na * nb, std::vector<Cyclotomic>(na * nb));
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j) {
            out.labels.push_back(a.labels[i] + "|" + b.labels[j]);
            out.T.push_back(a.T[i] * b.T[j]);
            for (size_t k = 0; k < na; ++k)
                for (size_t l = 0; l < nb; ++l) out.S[i * nb + j][k * nb + l] = a.S[i][k] * b.S[j][l];
        }
    out.unit = a.unit * nb + b.unit;
    return out;
}

ValidationReport validate_modular(const ModularData& raw, bool check_verlinde)
{
    ValidationReport rep;
    size_t n = raw.size();
    if (raw.S.size() != n || raw.T.size() != n) {
        rep.failures.push_back("S and T sizes do not match the label count");
        return rep;
    }
    for (const auto& r : raw.S)
        if (r.size() != n) {
            rep.failures.push_back("S is not square");
            return rep;
        }
    if (raw.unit >= n) {
        rep.failures.push_back("unit index out of range");
        return rep;
    }
    std::set<std::string> seen(raw.labels.begin(), raw.labels.end());
    if (seen.size() != n) rep.failures.push_back("labels are not distinct");

    ModularData md = raw.embedded();
    const auto& S = md.S;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j)
            if (S[i][j] != S[j][i]) {
                rep.failures.push_back("S is not symmetric at " + pos(i, j));
                i = n;
                break;
            }
    auto SSd = cyc_mul(S, cyc_adjoint(S));
    if (SSd != cyc_identity(n)) rep.failures.push_back("S is not unitary");
    bool t_ok = true;
    for (size_t i = 0; i < n; ++i)
        if (!md.T[i].root_of_unity_exponent()) {
            rep.failures.push_back("T entry " + std::to_string(i) + " is not a root of unity");
            t_ok = false;
        }

    auto S2 = cyc_mul(S, S);
    std::vector<size_t> C(n, n);
    bool perm = true;
    for (size_t i = 0; i < n && perm; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (S2[i][j].is_zero()) continue;
            if (S2[i][j] != Cyclotomic(1) || C[i] != n) {
                perm = false;
                break;
            }
            C[i] = j;
        }
    for (size_t i = 0; i < n && perm; ++i) perm = C[i] < n;
    if (!perm) {
        rep.failures.push_back("S^2 is not a permutation matrix");
    } else {
        bool inv = true;
        for (size_t i = 0; i < n; ++i) inv = inv && C[C[i]] == i;
        if (!inv) rep.failures.push_back("C^2 != I");
        if (C[md.unit] != md.unit) rep.failures.push_back("C does not fix the unit");
        rep.charge_conjugation = C;
    }

    if (t_ok) {
        auto ST = cyc_mul_diag(S, md.T);
        auto M = cyc_mul(cyc_mul(ST, ST), ST);
        if (M == S2) {
            rep.st_cube_phase = Rational(0);
        } else {
            // look for (ST)^3 = kappa S^2
            std::optional<Cyclotomic> kappa;
            for (size_t i = 0; i < n && !kappa; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (!S2[i][j].is_zero()) {
                        kappa = M[i][j] / S2[i][j];
                        break;
                    }
            bool prop = kappa.has_value();
            for (size_t i = 0; i < n && prop; ++i)
                for (size_t j = 0; j < n && prop; ++j) prop = M[i][j] == *kappa * S2[i][j];
            std::string msg = "(ST)^3 != S^2";
            if (prop) {
                if (auto e = kappa->root_of_unity_exponent()) {
                    rep.st_cube_phase = *e;
                    msg += " ((ST)^3 = e^{2 pi i " + to_string(*e) + "} S^2)";
                }
            }
            rep.failures.push_back(msg);
        }
    }

    if (check_verlinde && rep.failures.empty()) {
        try {
            verlinde(md);
        } catch (const std::domain_error& e) {
            rep.failures.push_back(std::string("Verlinde: ") + e.what());
        }
    }
    return rep;
}

namespace {

FusionRules verlinde_impl(const ModularData& raw, bool parallel)
{
    ModularData md = raw.embedded();
    size_t n = md.size(), u = md.unit;
    const auto& S = md.S;
    std::vector<Cyclotomic> inv0(n);
    for (size_t d = 0; d < n; ++d) {
        if (S[u][d].is_zero()) throw std::domain_error("S_{0,d} = 0; Verlinde formula undefined");
        inv0[d] = S[u][d].inverse();
    }
    CycMat A(n, std::vector<Cyclotomic>(n)), Sc(n, std::vector<Cyclotomic>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t d = 0; d < n; ++d) {
            A[a][d] = S[a][d] * inv0[d];
            Sc[a][d] = S[a][d].conj();
        }
    FusionRules f;
    f.n = n;
    f.N.assign(n * n * n, 0);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) pairs.emplace_back(a, b);
    std::string error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long t = 0; t < static_cast<long long>(pairs.size()); ++t) {
        auto [a, b] = pairs[static_cast<size_t>(t)];
        std::vector<Cyclotomic> U(n);
        for (size_t d = 0; d < n; ++d) U[d] = A[a][d] * S[b][d];
        for (size_t c = 0; c < n; ++c) {
            Cyclotomic s;
            for (size_t d = 0; d < n; ++d)
                if (!U[d].is_zero() && !Sc[c][d].is_zero()) s += U[d] * Sc[c][d];
            bool good = s.is_rational() && s.to_rational().denominator() == 1 && s.to_rational().numerator() >= 0;
            if (!good) {
#pragma omp critical
                error = "N_{" + std::to_string(a) + "," + std::to_string(b) + "}^" + std::to_string(c) + " = " +
                        s.to_string() + " is not a nonnegative integer";
                continue;
            }
            long long v = s.to_rational().numerator();
            f.N[(a * n + b) * n + c] = v;
            f.N[(b * n + a) * n + c] = v;
        }
    }
    if (!error.empty()) throw std::domain_error(error);
    return f;
}

}  // namespace

FusionRules verlinde(const ModularData& md) { return verlinde_impl(md, true); }

FusionRules verlinde_serial(const ModularData& raw)
{
    ModularData md = raw.embedded();
    size_t n = md.size(), u = md.unit;
    FusionRules f;
    f.n = n;
    f.N.assign(n * n * n, 0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Cyclotomic s;
                for (size_t d = 0; d < n; ++d) s += md.S[a][d] * md.S[b][d] * md.S[c][d].conj() / md.S[u][d];
                if (!s.is_rational() || s.to_rational().denominator() != 1 || s.to_rational().numerator() < 0)
                    throw std::domain_error("Verlinde coefficient " + s.to_string() + " is not a nonnegative integer");
                f.N[(a * n + b) * n + c] = s.to_rational().numerator();
            }
    return f;
}

std::string fusion_ring_defect(const FusionRules& f, size_t unit)
{
    size_t n = f.n;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                if (f(a, b, c) != f(b, a, c)) return "not commutative at " + pos(a, b);
                if (f(unit, b, c) != (b == c ? 1 : 0)) return "unit row is not the identity";
            }
    for (size_t a = 0; a < n; ++a) {
        size_t duals = 0;
        for (size_t b = 0; b < n; ++b) {
            if (f(a, b, unit) > 1) return "N_{a,b}^0 > 1";
            duals += f(a, b, unit);
        }
        if (duals != 1) return "primary " + std::to_string(a) + " has no unique dual";
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d) {
                    long long l = 0, r = 0;
                    for (size_t e = 0; e < n; ++e) {
                        l += f(a, b, e) * f(e, c, d);
                        r += f(b, c, e) * f(a, e, d);
                    }
                    if (l != r) return "not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                       std::to_string(c) + ";" + std::to_string(d) + ")";
                }
    return {};
}

SimpleCurrentStructure simple_currents(const ModularData& raw)
{
    ModularData md = raw.embedded();
    size_t n = md.size(), u = md.unit;
    const auto& S = md.S;
    std::vector<Cyclotomic> inv0(n);
    for (size_t b = 0; b < n; ++b) {
        if (S[u][b].is_zero()) throw std::domain_error("S_{0,b} = 0; data is not unitary");
        inv0[b] = S[u][b].inverse();
    }
    // rows of S keyed by rounded numerical values, confirmed exactly
    std::vector<std::vector<std::complex<double>>> Snum(n, std::vector<std::complex<double>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Snum[i][j] = S[i][j].to_complex();
    auto key = [](const std::vector<std::complex<double>>& v) {
        std::vector<long long> k;
        for (const auto& z : v) {
            k.push_back(std::llround(z.real() * 1e6));
            k.push_back(std::llround(z.imag() * 1e6));
        }
        return k;
    };
    std::map<std::vector<long long>, std::vector<size_t>> rows;
    for (size_t i = 0; i < n; ++i) rows[key(Snum[i])].push_back(i);

    std::vector<size_t> cur;
    std::map<size_t, std::vector<size_t>> perm_of;
    for (size_t j = 0; j < n; ++j) {
        if (S[j][u] != S[u][u]) continue;
        std::vector<Cyclotomic> Qj(n);
        std::vector<std::complex<double>> Qn(n);
        for (size_t x = 0; x < n; ++x) {
            Qj[x] = S[j][x] * inv0[x];
            Qn[x] = Qj[x].to_complex();
        }
        std::vector<size_t> p(n, n);
        bool ok = true;
        for (size_t b = 0; b < n && ok; ++b) {
            std::vector<std::complex<double>> target(n);
            for (size_t x = 0; x < n; ++x) target[x] = Qn[x] * Snum[b][x];
            auto it = rows.find(key(target));
            ok = false;
            if (it == rows.end()) break;
            for (size_t c : it->second) {
                bool match = true;
                for (size_t x = 0; x < n && match; ++x) match = S[c][x] == Qj[x] * S[b][x];
                if (match) {
                    p[b] = c;
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) continue;
        cur.push_back(j);
        perm_of[j] = p;
    }
    std::sort(cur.begin(), cur.end(), [&](size_t a, size_t b) { return (a == u) != (b == u) ? a == u : a < b; });

    // presentation of the current group from its multiplication
    std::map<size_t, size_t> pos_of;
    for (size_t i = 0; i < cur.size(); ++i) pos_of[cur[i]] = i;
    auto mult = [&](size_t a, size_t b) { return perm_of.at(a)[b]; };
    std::vector<size_t> gens;
    std::set<size_t> covered{u};
    for (size_t c : cur) {
        if (covered.count(c)) continue;
        gens.push_back(c);
        std::vector<size_t> work(covered.begin(), covered.end());
        while (!work.empty()) {
            size_t x = work.back();
            work.pop_back();
            for (size_t g : gens) {
                size_t y = mult(g, x);
                if (covered.insert(y).second) work.push_back(y);
            }
        }
    }
    size_t r = gens.size();
    std::map<size_t, std::vector<long long>> coords;
    coords[u] = std::vector<long long>(r, 0);
    IntMat rels;
    std::vector<size_t> queue{u};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        size_t x = queue[qi];
        for (size_t i = 0; i < r; ++i) {
            size_t y = mult(gens[i], x);
            auto c = coords[x];
            c[i] += 1;
            auto it = coords.find(y);
            if (it == coords.end()) {
                coords[y] = c;
                queue.push_back(y);
            } else {
                std::vector<long long> rel(r);
                for (size_t k = 0; k < r; ++k) rel[k] = c[k] - it->second[k];
                if (std::any_of(rel.begin(), rel.end(), [](long long v) { return v != 0; })) rels.push_back(rel);
            }
        }
    }
    SimpleCurrentStructure sc;
    if (r == 0) {
        sc.group = FinAbGroup();
    } else {
        auto P = Presentation::from_relations(r, rels);
        sc.group = P.group;
        if (sc.group.order() != static_cast<long long>(cur.size()))
            throw std::logic_error("simple currents do not form a group of the expected order");
        sc.primary.assign(cur.size(), n);
        for (size_t c : cur) sc.primary[sc.group.index(P.map(coords[c]))] = c;
    }
    if (r == 0) sc.primary = {u};
    sc.element.assign(n, SimpleCurrentStructure::npos);
    for (size_t e = 0; e < sc.primary.size(); ++e) sc.element[sc.primary[e]] = e;
    for (size_t e = 0; e < sc.primary.size(); ++e) sc.perm.push_back(perm_of.at(sc.primary[e]));

    size_t m = sc.primary.size();
    sc.Q.assign(n, std::vector<Rational>(m));
    for (size_t b = 0; b < n; ++b)
        for (size_t e = 0; e < m; ++e) sc.Q[b][e] = exponent_or_throw(S[sc.primary[e]][b] * inv0[b], "grading value");
    Cyclotomic t0 = md.T[u].conj();
    for (size_t e = 0; e < m; ++e) {
        Rational qe = exponent_or_throw(md.T[sc.primary[e]] * t0, "T ratio");
        sc.q.push_back(qe);
        long long ord = sc.group.element_order(sc.group.element(e));
        sc.quaternionic.push_back(mod1(qe * ord) == Rational(1, 2));
    }

    std::map<std::vector<Rational>, std::vector<size_t>> classes;
    for (size_t b = 0; b < n; ++b) classes[sc.Q[b]].push_back(b);
    sc.sufficiently_nonzero = classes.size() == m;
    for (auto i = classes.begin(); i != classes.end() && sc.sufficiently_nonzero; ++i)
        for (auto j = classes.begin(); j != classes.end() && sc.sufficiently_nonzero; ++j) {
            bool found = false;
            for (size_t a : i->second) {
                for (size_t b : j->second)
                    if (!S[a][b].is_zero()) {
                        found = true;
                        break;
                    }
                if (found) break;
            }
            sc.sufficiently_nonzero = found;
        }
    return sc;
}

InvariantCheck check_invariant(const ModularData& raw, const IntMat& Z, const SimpleCurrentStructure* sc)
{
    size_t n = raw.size();
    if (Z.size() != n) throw std::invalid_argument("invariant has wrong dimension");
    for (const auto& r : Z)
        if (r.size() != n) throw std::invalid_argument("invariant has wrong dimension");
    ModularData md = raw.embedded();
    InvariantCheck out;
    size_t u = md.unit;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (Z[a][b] < 0) {
                out.failures.push_back("negative entry at " + pos(a, b));
                a = n;
                break;
            }
    if (Z[u][u] != 1) out.failures.push_back("Z_{0,0} != 1");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (Z[a][b] != 0 && md.T[a] != md.T[b]) {
                out.failures.push_back("ZT != TZ at " + pos(a, b));
                a = n;
                break;
            }
    CycMat SZ(n, std::vector<Cyclotomic>(n)), ZS(n, std::vector<Cyclotomic>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (Z[a][b] == 0) continue;
            Cyclotomic z(Z[a][b]);
            for (size_t c = 0; c < n; ++c) {
                SZ[c][b] += md.S[c][a] * z;
                ZS[a][c] += z * md.S[b][c];
            }
        }
    if (SZ != ZS) out.failures.push_back("ZS != SZ");
    out.ok = out.failures.empty();

    if (sc) {
        size_t m = sc->primary.size();
        for (size_t j = 0; j < m; ++j)
            for (size_t jp = 0; jp < m; ++jp) {
                if (Z[sc->primary[j]][sc->primary[jp]] == 0) continue;
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = 0; b < n; ++b) {
                        if (Z[sc->act(j, a)][sc->act(jp, b)] != Z[a][b])
                            out.proposition1.push_back("Z_{ja,j'b} != Z_{a,b} for j=" + std::to_string(j) +
                                                       " j'=" + std::to_string(jp) + " at " + pos(a, b));
                        if (Z[a][b] != 0 && sc->Q[a][j] != sc->Q[b][jp])
                            out.proposition1.push_back("grading mismatch for j=" + std::to_string(j) + " j'=" +
                                                       std::to_string(jp) + " at " + pos(a, b));
                    }
            }
    }
    return out;
}

namespace {

using u64 = unsigned long long;
const u64 kPrime = (1ULL << 61) - 1;

u64 mulmod(u64 a, u64 b) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % kPrime); }
u64 powmod(u64 a, u64 e)
{
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}
u64 to_mod(const Rational& q)
{
    long long num = q.numerator(), den = q.denominator();
    u64 a = static_cast<u64>(num % static_cast<long long>(kPrime) + static_cast<long long>(kPrime)) % kPrime;
    u64 d = static_cast<u64>(den) % kPrime;
    if (d == 0) throw std::domain_error("denominator divisible by the screening prime");
    return mulmod(a, powmod(d, kPrime - 2));
}

struct LinearSystem {
    std::vector<std::pair<size_t, size_t>> unknowns;
    std::vector<std::vector<mpq_class>> rows;  // rref rows, last entry is the right-hand side
    std::vector<size_t> pivot_col;
    std::vector<size_t> free_cols;
    bool inconsistent = false;
};

// Exact linear system for Z commuting with S and T, plus Z_{0,0} = 1.
LinearSystem commutant_system(const ModularData& raw)
{
    ModularData md = raw.embedded();
    size_t n = md.size();
    if (static_cast<long long>(n) > enumeration_guard())
        throw GuardExceeded("brute_force_invariants: |Phi| = " + std::to_string(n) + " exceeds guard");
    LinearSystem sys;
    std::vector<Rational> texp(n);
    for (size_t i = 0; i < n; ++i) texp[i] = exponent_or_throw(md.T[i], "T entry");
    std::vector<std::vector<long>> uid(n, std::vector<long>(n, -1));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (texp[a] == texp[b]) {
                uid[a][b] = static_cast<long>(sys.unknowns.size());
                sys.unknowns.emplace_back(a, b);
            }
    size_t U = sys.unknowns.size();
    long long L = md.field_order();
    size_t phi = static_cast<size_t>(euler_phi(L));
    // coordinates of S entries, exact and mod p
    std::vector<std::vector<std::vector<Rational>>> coord(n, std::vector<std::vector<Rational>>(n));
    std::vector<std::vector<std::vector<u64>>> cmod(n, std::vector<std::vector<u64>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto c = md.S[i][j].coeffs();
            c.resize(phi);
            for (const auto& r : c) cmod[i][j].push_back(to_mod(r));
            coord[i][j] = std::move(c);
        }

    // screening elimination mod p to pick independent equations
    struct Eq {
        size_t c, d, k;
    };
    std::vector<Eq> chosen;
    std::vector<std::vector<u64>> piv;
    std::vector<size_t> pcol;
    for (size_t c = 0; c < n && piv.size() < U; ++c)
        for (size_t d = 0; d < n && piv.size() < U; ++d)
            for (size_t k = 0; k < phi && piv.size() < U; ++k) {
                std::vector<u64> row(U, 0);
                bool any = false;
                for (size_t b = 0; b < n; ++b)
                    if (uid[b][d] >= 0 && cmod[c][b][k]) {
                        auto& x = row[static_cast<size_t>(uid[b][d])];
                        x = (x + cmod[c][b][k]) % kPrime;
                        any = true;
                    }
                for (size_t a = 0; a < n; ++a)
                    if (uid[c][a] >= 0 && cmod[a][d][k]) {
                        auto& x = row[static_cast<size_t>(uid[c][a])];
                        x = (x + kPrime - cmod[a][d][k]) % kPrime;
                        any = true;
                    }
                if (!any) continue;
                for (size_t p = 0; p < piv.size(); ++p) {
                    u64 f = row[pcol[p]];
                    if (!f) continue;
                    for (size_t t = 0; t < U; ++t)
                        if (piv[p][t]) row[t] = (row[t] + kPrime - mulmod(f, piv[p][t])) % kPrime;
                }
                size_t lead = U;
                for (size_t t = 0; t < U; ++t)
                    if (row[t]) {
                        lead = t;
                        break;
                    }
                if (lead == U) continue;
                u64 inv = powmod(row[lead], kPrime - 2);
                for (auto& v : row) v = mulmod(v, inv);
                piv.push_back(std::move(row));
                pcol.push_back(lead);
                chosen.push_back({c, d, k});
            }

    // exact rational elimination on the chosen equations plus Z_{0,0} = 1
    std::vector<std::vector<mpq_class>> M;
    for (const auto& e : chosen) {
        std::vector<mpq_class> row(U + 1, 0);
        for (size_t b = 0; b < n; ++b)
            if (uid[b][e.d] >= 0) {
                const auto& q = coord[e.c][b][e.k];
                row[static_cast<size_t>(uid[b][e.d])] += mpq_class(static_cast<long>(q.numerator()), static_cast<unsigned long>(q.denominator()));
            }
        for (size_t a = 0; a < n; ++a)
            if (uid[e.c][a] >= 0) {
                const auto& q = coord[a][e.d][e.k];
                row[static_cast<size_t>(uid[e.c][a])] -= mpq_class(static_cast<long>(q.numerator()), static_cast<unsigned long>(q.denominator()));
            }
        for (auto& v : row) v.canonicalize();
        M.push_back(std::move(row));
    }
    {
        std::vector<mpq_class> row(U + 1, 0);
        row[static_cast<size_t>(uid[md.unit][md.unit])] = 1;
        row[U] = 1;
        M.push_back(std::move(row));
    }
    size_t r = 0;
    for (size_t col = 0; col < U && r < M.size(); ++col) {
        size_t p = r;
        while (p < M.size() && M[p][col] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[r]);
        mpq_class inv = 1 / M[r][col];
        for (auto& v : M[r]) v *= inv;
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][col] == 0) continue;
            mpq_class f = M[i][col];
            for (size_t t = col; t <= U; ++t) M[i][t] -= f * M[r][t];
        }
        sys.pivot_col.push_back(col);
        ++r;
    }
    for (size_t i = r; i < M.size(); ++i)
        if (M[i][U] != 0) sys.inconsistent = true;
    M.resize(r);
    sys.rows = std::move(M);
    std::vector<bool> is_piv(U, false);
    for (auto c : sys.pivot_col) is_piv[c] = true;
    for (size_t c = 0; c < U; ++c)
        if (!is_piv[c]) sys.free_cols.push_back(c);
    return sys;
}

struct IntRow {
    long long D;                 // D * x_pivot = C - sum R_f x_f
    long long C;
    std::vector<long long> R;    // indexed by free position
    std::vector<long long> sufmin, sufmax;  // contribution range of -R_f x_f for positions >= k
    size_t last;                 // last free position with nonzero coefficient (+1)
};

std::vector<IntMat> search(const LinearSystem& sys, size_t n, long long B, bool parallel)
{
    size_t F = sys.free_cols.size();
    std::vector<IntRow> rows;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        const auto& row = sys.rows[i];
        mpz_class den = 1;
        for (size_t f = 0; f < F; ++f) den = lcm(den, mpz_class(row[sys.free_cols[f]].get_den()));
        den = lcm(den, mpz_class(row.back().get_den()));
        IntRow ir;
        auto to_ll = [](const mpq_class& q) {
            if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::overflow_error("commutant basis entries too large");
            return static_cast<long long>(q.get_num().get_si());
        };
        ir.D = to_ll(mpq_class(den));
        ir.C = to_ll(row.back() * den);
        ir.R.resize(F);
        ir.last = 0;
        for (size_t f = 0; f < F; ++f) {
            ir.R[f] = to_ll(row[sys.free_cols[f]] * den);
            if (ir.R[f] != 0) ir.last = f + 1;
        }
        ir.sufmin.assign(F + 1, 0);
        ir.sufmax.assign(F + 1, 0);
        for (size_t f = F; f-- > 0;) {
            long long lo = std::min(0LL, -ir.R[f] * B), hi = std::max(0LL, -ir.R[f] * B);
            ir.sufmin[f] = ir.sufmin[f + 1] + lo;
            ir.sufmax[f] = ir.sufmax[f + 1] + hi;
        }
        rows.push_back(std::move(ir));
    }

    auto build = [&](const std::vector<long long>& x) {
        IntMat Z(n, std::vector<long long>(n, 0));
        for (size_t f = 0; f < F; ++f) {
            auto [a, b] = sys.unknowns[sys.free_cols[f]];
            Z[a][b] = x[f];
        }
        for (size_t i = 0; i < rows.size(); ++i) {
            long long num = rows[i].C;
            for (size_t f = 0; f < F; ++f) num -= rows[i].R[f] * x[f];
            auto [a, b] = sys.unknowns[sys.pivot_col[i]];
            Z[a][b] = num / rows[i].D;
        }
        return Z;
    };

    // depth-first search over free variables with interval pruning
    auto dfs_from = [&](std::vector<long long> x, size_t start, std::vector<long long> partial, std::vector<IntMat>& out) {
        std::vector<size_t> stack_pos;
        std::function<void(size_t)> rec = [&](size_t k) {
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                long long lo = partial[i] + r.sufmin[k], hi = partial[i] + r.sufmax[k];
                if (hi < 0 || lo > B * r.D) return;
                if (k >= r.last && partial[i] % r.D != 0) return;
            }
            if (k == F) {
                out.push_back(build(x));
                return;
            }
            for (long long v = 0; v <= B; ++v) {
                x[k] = v;
                for (size_t i = 0; i < rows.size(); ++i) partial[i] -= rows[i].R[k] * v;
                rec(k + 1);
                for (size_t i = 0; i < rows.size(); ++i) partial[i] += rows[i].R[k] * v;
            }
            x[k] = 0;
        };
        rec(start);
    };

    std::vector<long long> base_partial;
    for (const auto& r : rows) base_partial.push_back(r.C);
    std::vector<IntMat> result;
    if (F == 0) {
        dfs_from({}, 0, base_partial, result);
        return result;
    }
    std::vector<std::vector<IntMat>> parts(static_cast<size_t>(B + 1));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long v = 0; v <= B; ++v) {
        std::vector<long long> x(F, 0), partial = base_partial;
        x[0] = v;
        for (size_t i = 0; i < rows.size(); ++i) partial[i] -= rows[i].R[0] * v;
        dfs_from(x, 1, partial, parts[static_cast<size_t>(v)]);
    }
    for (auto& p : parts)
        for (auto& z : p) result.push_back(std::move(z));
    return result;
}

std::vector<ModularInvariant> oracle_impl(const ModularData& md, long long bound, bool parallel)
{
    size_t n = md.size();
    if (bound < 0) bound = static_cast<long long>(n);
    auto sys = commutant_system(md);
    if (sys.inconsistent) return {};
    if (sys.free_cols.size() > oracle_free_limit())
        throw GuardExceeded("commutant dimension " + std::to_string(sys.free_cols.size()) + " above enumeration limit");
    auto found = search(sys, n, bound, parallel);
    std::vector<ModularInvariant> out;
    for (auto& Z : found) {
        bool in_range = true;
        for (const auto& r : Z)
            for (auto v : r) in_range = in_range && v >= 0 && v <= bound;
        if (!in_range) continue;
        if (!check_invariant(md, Z).ok) continue;
        out.push_back({std::move(Z), "oracle"});
    }
    std::sort(out.begin(), out.end(), [](const ModularInvariant& a, const ModularInvariant& b) { return a.matrix < b.matrix; });
    return out;
}

}  // namespace

std::vector<ModularInvariant> brute_force_invariants(const ModularData& md, long long entry_bound)
{
    return oracle_impl(md, entry_bound, true);
}

std::vector<ModularInvariant> brute_force_invariants_serial(const ModularData& md, long long entry_bound)
{
    return oracle_impl(md, entry_bound, false);
}

size_t commutant_dimension(const ModularData& md)
{
    auto sys = commutant_system(md);
    // Z_{0,0} = 1 is never implied by the homogeneous equations, so it costs exactly one dimension
    return sys.free_cols.size() + 1;
}

}  // namespace mtc
