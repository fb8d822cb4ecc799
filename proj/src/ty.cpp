#include "mtc/ty.hpp"

#include "mtc/pointed.hpp"
#include "mtc/simple_current.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mtc {

namespace {

Cyclotomic ph(const Rational& r) { return Cyclotomic::phase(r); }

long long powmod(long long b, long long e, long long m)
{
    long long r = 1 % m;
    b = mod_ll(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<long long>((__int128)r * b % m);
        b = static_cast<long long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

int legendre_symbol(long long a, long long p)
{
    long long r = powmod(a, (p - 1) / 2, p);
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

// Kronecker symbol (2/m) for odd m, read off m mod 8.
int two_symbol(long long m)
{
    long long r = mod_ll(m, 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

long long inverse_mod(long long a, long long n)
{
    for (long long x = 1; x < n; ++x)
        if (mod_ll(a * x, n) == 1) return x;
    throw std::invalid_argument("not invertible");
}

void check_ty(const TYData& d)
{
    auto e = d.defect();
    if (!e.empty()) throw std::invalid_argument("TY data: " + e);
}

std::string pos4(size_t a, size_t b, size_t c, size_t d)
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + ")";
}

}  // namespace

std::string TYData::defect() const
{
    if (sign != 1 && sign != -1) return "sign must be +1 or -1";
    if (pairing.left() != G || pairing.right() != G) return "pairing is not on G";
    if (!pairing.is_symmetric()) return "pairing is not symmetric";
    if (!pairing.is_nondegenerate()) return "pairing is degenerate";
    return {};
}

TYData ty_data(const Pairing& pairing, int sign)
{
    TYData d{pairing.left(), pairing, sign};
    check_ty(d);
    return d;
}

SqrtConvention canonical_sqrt(const QuadraticForm& q, int sign)
{
    SqrtConvention c;
    for (const auto& v : q.values()) c.sqrt_q.push_back(mod1(v) / 2);
    auto r = (Cyclotomic(sign) * canonical_x(q).pow(3)).root_of_unity_exponent();
    c.inv_sqrt_sx3 = mod1(-*r / 2);
    return c;
}

SqrtConvention coherent_sqrt(const QuadraticForm& q, int sign)
{
    const auto& G = q.group();
    if (G.order() % 2 == 0) throw std::invalid_argument("coherent_sqrt: |G| must be odd");
    auto c = canonical_sqrt(q, sign);
    for (const auto& g : G.elements()) {
        // g = 2 (g/2) with g/2 = ((|G|+1)/2) g
        auto half = G.scale((G.order() + 1) / 2, g);
        c.sqrt_q[G.index(g)] = mod1(2 * q.value(half));
    }
    return c;
}

std::string SqrtConvention::defect(const QuadraticForm& q, int sign) const
{
    if (sqrt_q.size() != q.values().size()) return "wrong number of square roots";
    for (size_t i = 0; i < sqrt_q.size(); ++i)
        if (mod1(2 * sqrt_q[i] - q.value_at(i)) != 0) return "sqrt q at index " + std::to_string(i) + " does not square to q";
    auto r = (Cyclotomic(sign) * canonical_x(q).pow(3)).root_of_unity_exponent();
    if (mod1(-2 * inv_sqrt_sx3 - *r) != 0) return "(s x^3)^{-1/2} does not square to (s x^3)^{-1}";
    return {};
}

size_t FusionRing::index(const std::string& label) const
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::out_of_range("no simple " + label);
    return static_cast<size_t>(it - labels.begin());
}

FusionRing ty_fusion(const FinAbGroup& G)
{
    FusionRing R;
    auto els = G.elements();
    size_t n = els.size(), r = n + 1;
    for (const auto& g : els) R.labels.push_back("alpha(" + element_label(g) + ")");
    R.labels.push_back("rho");
    R.unit = G.index(G.zero());
    R.N.n = r;
    R.N.N.assign(r * r * r, 0);
    auto set = [&](size_t a, size_t b, size_t c) { R.N.N[(a * r + b) * r + c] = 1; };
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) set(a, b, G.index(G.add(els[a], els[b])));
        set(a, n, n);
        set(n, a, n);
        set(n, n, a);
    }
    return R;
}

double pf_dimension(const FusionRing& R, size_t a)
{
    size_t n = R.N.n;
    std::vector<double> v(n, 1.0), w(n);
    double lam = 0;
    for (int it = 0; it < 500; ++it) {
        for (size_t c = 0; c < n; ++c) {
            w[c] = v[c];
            for (size_t b = 0; b < n; ++b) w[c] += static_cast<double>(R.N(a, b, c)) * v[b];
        }
        double norm = 0;
        for (double x : w) norm = std::max(norm, std::abs(x));
        lam = norm;
        for (size_t c = 0; c < n; ++c) v[c] = w[c] / norm;
    }
    return lam - 1.0;
}

std::vector<size_t> FSymbols::rows(size_t a, size_t b, size_t c, size_t d) const
{
    std::vector<size_t> out;
    for (size_t e = 0; e < ring.N.n; ++e)
        if (ring.N(a, b, e) && ring.N(e, c, d)) out.push_back(e);
    return out;
}

std::vector<size_t> FSymbols::cols(size_t a, size_t b, size_t c, size_t d) const
{
    std::vector<size_t> out;
    for (size_t f = 0; f < ring.N.n; ++f)
        if (ring.N(b, c, f) && ring.N(a, f, d)) out.push_back(f);
    return out;
}

Cyclotomic FSymbols::entry(size_t a, size_t b, size_t c, size_t d, size_t e, size_t f) const
{
    auto it = F.find({a, b, c, d});
    if (it == F.end()) return Cyclotomic(0);
    auto r = rows(a, b, c, d), cl = cols(a, b, c, d);
    auto ie = std::find(r.begin(), r.end(), e), jf = std::find(cl.begin(), cl.end(), f);
    if (ie == r.end() || jf == cl.end()) return Cyclotomic(0);
    return it->second[static_cast<size_t>(ie - r.begin())][static_cast<size_t>(jf - cl.begin())];
}

FSymbols ty_associator(const TYData& d)
{
    check_ty(d);
    FSymbols out;
    out.ring = ty_fusion(d.G);
    auto els = d.G.elements();
    size_t n = els.size(), rho = n, r = n + 1;
    Cyclotomic scale = Cyclotomic(d.sign) * Cyclotomic::sqrt_nonneg_int(static_cast<long long>(n)).inverse();
    auto chi = [&](size_t a, size_t b) { return ph(d.pairing.value(els[a], els[b])); };
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b)
            for (size_t c = 0; c < r; ++c)
                for (size_t x = 0; x < r; ++x) {
                    auto rw = out.rows(a, b, c, x), cl = out.cols(a, b, c, x);
                    if (rw.empty()) continue;
                    CycMat M(rw.size(), std::vector<Cyclotomic>(cl.size(), Cyclotomic(1)));
                    if (a == rho && b == rho && c == rho) {
                        for (size_t i = 0; i < rw.size(); ++i)
                            for (size_t j = 0; j < cl.size(); ++j) M[i][j] = scale * chi(rw[i], cl[j]).conj();
                    } else if (a != rho && b == rho && c != rho) {
                        M[0][0] = chi(a, c);
                    } else if (a == rho && b != rho && c == rho) {
                        M[0][0] = chi(b, x);
                    }
                    out.F[{a, b, c, x}] = std::move(M);
                }
    return out;
}

namespace {

PentagonReport pentagon_impl(const FSymbols& F, bool parallel)
{
    const auto& N = F.ring.N;
    size_t r = N.n;
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b)
            for (size_t c = 0; c < r; ++c)
                for (size_t d = 0; d < r; ++d) {
                    auto rw = F.rows(a, b, c, d), cl = F.cols(a, b, c, d);
                    auto it = F.F.find({a, b, c, d});
                    if (rw.empty()) {
                        if (it != F.F.end()) throw std::invalid_argument("pentagon_check: F" + pos4(a, b, c, d) + " on an empty space");
                        continue;
                    }
                    if (it == F.F.end()) throw std::invalid_argument("pentagon_check: F" + pos4(a, b, c, d) + " missing");
                    bool shape = it->second.size() == rw.size();
                    for (const auto& row : it->second) shape = shape && row.size() == cl.size();
                    if (!shape)
                        throw std::invalid_argument("pentagon_check: F" + pos4(a, b, c, d) + " should be " +
                                                    std::to_string(rw.size()) + "x" + std::to_string(cl.size()));
                }

    size_t pairs = r * r;
    std::vector<std::string> witness(pairs);
    std::vector<size_t> count(pairs, 0);
    auto work = [&](size_t ab) {
        size_t a = ab / r, b = ab % r;
        for (size_t c = 0; c < r; ++c)
            for (size_t d = 0; d < r; ++d)
                for (size_t e = 0; e < r; ++e)
                    for (size_t f = 0; f < r; ++f) {
                        if (!N(a, b, f)) continue;
                        for (size_t g = 0; g < r; ++g) {
                            if (!N(f, c, g) || !N(g, d, e)) continue;
                            for (size_t l = 0; l < r; ++l) {
                                if (!N(c, d, l)) continue;
                                for (size_t k = 0; k < r; ++k) {
                                    if (!N(b, l, k) || !N(a, k, e)) continue;
                                    Cyclotomic lhs = F.entry(f, c, d, e, g, l) * F.entry(a, b, l, e, f, k);
                                    Cyclotomic rhs(0);
                                    for (size_t h = 0; h < r; ++h) {
                                        if (!N(b, c, h) || !N(a, h, g) || !N(h, d, k)) continue;
                                        rhs += F.entry(a, b, c, g, f, h) * F.entry(a, h, d, e, g, k) * F.entry(b, c, d, k, h, l);
                                    }
                                    ++count[ab];
                                    if (lhs != rhs && witness[ab].empty()) {
                                        std::ostringstream os;
                                        os << "a,b,c,d,e=" << F.ring.labels[a] << "," << F.ring.labels[b] << ","
                                           << F.ring.labels[c] << "," << F.ring.labels[d] << "," << F.ring.labels[e]
                                           << " f,g,l,k=" << F.ring.labels[f] << "," << F.ring.labels[g] << ","
                                           << F.ring.labels[l] << "," << F.ring.labels[k] << ": " << lhs.to_string()
                                           << " != " << rhs.to_string();
                                        witness[ab] = os.str();
                                    }
                                }
                            }
                        }
                    }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (size_t ab = 0; ab < pairs; ++ab) work(ab);
    } else {
        for (size_t ab = 0; ab < pairs; ++ab) work(ab);
    }
    PentagonReport rep;
    for (size_t ab = 0; ab < pairs; ++ab) {
        rep.equations += count[ab];
        if (rep.ok && !witness[ab].empty()) {
            rep.ok = false;
            rep.witness = witness[ab];
        }
    }
    return rep;
}

}  // namespace

PentagonReport pentagon_check(const FSymbols& F) { return pentagon_impl(F, true); }
PentagonReport pentagon_check_serial(const FSymbols& F) { return pentagon_impl(F, false); }

ModularData ty_double(const TYData& d, const QuadraticForm& q) { return ty_double(d, q, canonical_sqrt(q, d.sign)); }

ModularData ty_double(const TYData& d, const QuadraticForm& q, const SqrtConvention& conv)
{
    check_ty(d);
    if (q.group() != d.G) throw std::invalid_argument("ty_double: q is on a different group");
    auto pol = polarization(q);
    for (size_t i = 0; i < d.G.rank(); ++i)
        for (size_t j = 0; j < d.G.rank(); ++j)
            if (mod1(pol.value(d.G.basis(i), d.G.basis(j)) - d.pairing.value(d.G.basis(i), d.G.basis(j))) != 0)
                throw std::invalid_argument("ty_double: q does not polarize to the pairing");
    auto cd = conv.defect(q, d.sign);
    if (!cd.empty()) throw std::invalid_argument("ty_double: " + cd);

    const auto& G = d.G;
    auto els = G.elements();
    size_t n = els.size();
    auto pr = [&](size_t a, size_t b) { return d.pairing.value(els[a], els[b]); };
    auto add = [&](size_t a, size_t b) { return G.index(G.add(els[a], els[b])); };

    enum Kind { Beta, Rho, Sigma };
    struct Lab {
        Kind kind;
        size_t g, h;
        int i;
    };
    std::vector<Lab> labs;
    ModularData md;
    for (size_t g = 0; g < n; ++g)
        for (int i = 0; i < 2; ++i) {
            labs.push_back({Beta, g, 0, i});
            md.labels.push_back("beta_" + std::to_string(i) + "(" + element_label(els[g]) + ")");
        }
    for (size_t g = 0; g < n; ++g)
        for (int i = 0; i < 2; ++i) {
            labs.push_back({Rho, g, 0, i});
            md.labels.push_back("rho_" + std::to_string(i) + "(" + element_label(els[g]) + ")");
        }
    for (size_t g = 0; g < n; ++g)
        for (size_t h = g + 1; h < n; ++h) {
            labs.push_back({Sigma, g, h, 0});
            md.labels.push_back("sigma(" + element_label(els[g]) + ";" + element_label(els[h]) + ")");
        }
    md.unit = 2 * G.index(G.zero());

    long long nn = static_cast<long long>(n);
    Cyclotomic rootn = Cyclotomic::sqrt_nonneg_int(nn);
    Cyclotomic inv_2n = Cyclotomic(Rational(1, 2 * nn)), inv_n = Cyclotomic(Rational(1, nn));
    Cyclotomic inv_2rootn = (Cyclotomic(2) * rootn).inverse();
    Cyclotomic x3inv = (Cyclotomic(d.sign) * canonical_x(q).pow(3)).inverse();

    // sum_k <k - c, k> for each c
    std::vector<Cyclotomic> ksum(n, Cyclotomic(0));
    for (size_t c = 0; c < n; ++c)
        for (size_t k = 0; k < n; ++k) ksum[c] += ph(d.pairing.value(G.sub(els[k], els[c]), els[k]));

    size_t m = labs.size();
    md.T.resize(m);
    md.S.assign(m, std::vector<Cyclotomic>(m, Cyclotomic(0)));
    for (size_t a = 0; a < m; ++a) {
        const auto& A = labs[a];
        switch (A.kind) {
        case Beta: md.T[a] = ph(pr(A.g, A.g)); break;
        case Rho: md.T[a] = Cyclotomic(A.i ? -1 : 1) * ph(conv.inv_sqrt_sx3 - conv.sqrt_q[A.g]); break;
        case Sigma: md.T[a] = ph(pr(A.g, A.h)); break;
        }
    }
    auto sgn = [](int i) { return Cyclotomic(i ? -1 : 1); };
#pragma omp parallel for schedule(dynamic)
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b) {
            Lab A = labs[a], B = labs[b];
            bool swapped = false;
            if (A.kind > B.kind) {
                std::swap(A, B);
                swapped = true;
            }
            (void)swapped;
            Cyclotomic v(0);
            if (A.kind == Beta && B.kind == Beta) {
                v = ph(-2 * pr(A.g, B.g)) * inv_2n;
            } else if (A.kind == Beta && B.kind == Rho) {
                v = sgn(A.i) * ph(-pr(A.g, B.g)) * inv_2rootn;
            } else if (A.kind == Beta && B.kind == Sigma) {
                v = ph(-pr(A.g, add(B.g, B.h))) * inv_n;
            } else if (A.kind == Rho && B.kind == Rho) {
                v = sgn((A.i + B.i) % 2) * x3inv * inv_2n * ph(-conv.sqrt_q[A.g] - conv.sqrt_q[B.g]) * ksum[add(A.g, B.g)];
            } else if (A.kind == Sigma && B.kind == Sigma) {
                v = (ph(-pr(A.g, B.h) - pr(A.h, B.g)) + ph(-pr(A.g, B.g) - pr(A.h, B.h))) * inv_n;
            }
            md.S[a][b] = v;
            md.S[b][a] = v;
        }
    return md;
}

FusionRules ty_double_fusion_list(const FinAbGroup& G, const std::vector<std::string>& labels)
{
    auto els = G.elements();
    size_t n = els.size(), m = labels.size();
    auto find = [&](const std::string& s) {
        auto it = std::find(labels.begin(), labels.end(), s);
        if (it == labels.end()) throw std::out_of_range("no label " + s);
        return static_cast<size_t>(it - labels.begin());
    };
    auto L = [&](size_t g) { return element_label(els[g]); };
    auto beta = [&](size_t g, int i) { return find("beta_" + std::to_string(i) + "(" + L(g) + ")"); };
    auto rho = [&](size_t g, int i) { return find("rho_" + std::to_string(i) + "(" + L(g) + ")"); };
    auto add = [&](size_t a, size_t b) { return G.index(G.add(els[a], els[b])); };
    auto sub = [&](size_t a, size_t b) { return G.index(G.sub(els[a], els[b])); };
    FusionRules f;
    f.n = m;
    f.N.assign(m * m * m, 0);
    // sigma_{g,h} as a list of primaries, with sigma_{k,k} = beta_0(k) + beta_1(k)
    auto sigma = [&](size_t g, size_t h) -> std::vector<size_t> {
        if (g == h) return {beta(g, 0), beta(g, 1)};
        if (g > h) std::swap(g, h);
        return {find("sigma(" + L(g) + ";" + L(h) + ")")};
    };
    auto put = [&](size_t a, size_t b, const std::vector<size_t>& cs) {
        for (size_t c : cs) {
            f.N[(a * m + b) * m + c] += 1;
            if (a != b) f.N[(b * m + a) * m + c] += 1;
        }
    };
    std::vector<std::pair<size_t, size_t>> sig;
    for (size_t g = 0; g < n; ++g)
        for (size_t h = g + 1; h < n; ++h) sig.push_back({g, h});

    for (size_t g = 0; g < n; ++g)
        for (int i = 0; i < 2; ++i) {
            for (size_t h = 0; h < n; ++h)
                for (int j = 0; j < 2; ++j) {
                    if (beta(h, j) < beta(g, i)) continue;
                    put(beta(g, i), beta(h, j), {beta(add(g, h), i ^ j)});
                }
            for (auto [a, b] : sig) put(beta(g, i), sigma(a, b)[0], sigma(add(a, g), add(b, g)));
            for (size_t h = 0; h < n; ++h)
                for (int j = 0; j < 2; ++j) put(beta(g, i), rho(h, j), {rho(add(h, add(g, g)), i ^ j)});
        }
    for (size_t s1 = 0; s1 < sig.size(); ++s1) {
        auto [g, h] = sig[s1];
        for (size_t s2 = s1; s2 < sig.size(); ++s2) {
            auto [g2, h2] = sig[s2];
            auto x = sigma(add(g, g2), add(h, h2)), y = sigma(add(g, h2), add(h, g2));
            x.insert(x.end(), y.begin(), y.end());
            put(sigma(g, h)[0], sigma(g2, h2)[0], x);
        }
        for (size_t k = 0; k < n; ++k)
            for (int j = 0; j < 2; ++j) {
                size_t t = add(add(g, h), k);
                put(sigma(g, h)[0], rho(k, j), {rho(t, 0), rho(t, 1)});
            }
    }
    for (size_t g = 0; g < n; ++g)
        for (int i = 0; i < 2; ++i)
            for (size_t h = 0; h < n; ++h)
                for (int j = 0; j < 2; ++j) {
                    if (rho(h, j) < rho(g, i)) continue;
                    size_t t = add(g, h);
                    std::vector<size_t> out;
                    for (size_t k = 0; k < n; ++k) {
                        size_t k2 = sub(t, k);
                        if (k < k2) out.push_back(sigma(k, k2)[0]);
                        if (k == k2) out.push_back(beta(k, i ^ j));
                    }
                    put(rho(g, i), rho(h, j), out);
                }
    return f;
}

Cyclotomic rho_sum_direct(long long modulus, long long c, long long a)
{
    Cyclotomic s(0);
    for (long long l = 0; l < modulus; ++l) s += Cyclotomic::root_of_unity(modulus, mod_ll(c * mod_ll(l - a, modulus) % modulus * l, modulus));
    return s;
}

Cyclotomic rho_sum_closed_odd(long long p, int k, long long c, long long a)
{
    long long n = 1;
    for (int i = 0; i < k; ++i) n *= p;
    int s = legendre_symbol(c, p);
    if (s == 0) throw std::invalid_argument("rho_sum_closed_odd: c must be prime to p");
    Cyclotomic eps = n % 4 == 1 ? Cyclotomic(1) : -Cyclotomic::root_of_unity(4, 1);
    long long h = mod_ll(a * inverse_mod(2, n), n);
    Cyclotomic half = Cyclotomic::root_of_unity(n, mod_ll(c * h % n * h, n));
    Cyclotomic sk = Cyclotomic((k % 2 == 1) ? s : 1);
    return eps.inverse() * sk * half.conj() * Cyclotomic::sqrt_nonneg_int(n);
}

namespace {

Cyclotomic closed_two(int k, long long m, long long a, const Cyclotomic& prefactor)
{
    if (m % 2 == 0) throw std::invalid_argument("rho_sum_closed_two: m must be odd");
    long long n = 1LL << k;
    if (k == 1) return Cyclotomic(mod_ll(a, 2) == 1 ? 2 : 0);
    if (mod_ll(a, 2) == 1) return Cyclotomic(0);
    Cyclotomic eps = mod_ll(m, 4) == 1 ? Cyclotomic(1) : -Cyclotomic::root_of_unity(4, 1);
    long long h = mod_ll(a, n) / 2;
    Cyclotomic half = Cyclotomic::root_of_unity(n, mod_ll(m * h % n * h, n));
    int j = (k % 2 == 1) ? two_symbol(m) : 1;
    return prefactor * eps * Cyclotomic::sqrt_nonneg_int(n) * Cyclotomic(j) * half.conj();
}

}  // namespace

Cyclotomic rho_sum_closed_two(int k, long long m, long long a)
{
    return closed_two(k, m, a, Cyclotomic(1) - Cyclotomic::root_of_unity(4, 1));
}

Cyclotomic rho_sum_closed_two_corrected(int k, long long m, long long a)
{
    return closed_two(k, m, a, Cyclotomic(1) + Cyclotomic::root_of_unity(4, 1));
}

namespace {

struct EquivLayout {
    std::vector<std::string> labels;
    std::vector<int> kind;      // 0 beta, 1 sigma, 2 rho
    std::vector<int> t;         // sign for beta and rho
    std::vector<size_t> g;      // element index (beta: h, sigma: representative)
};

EquivLayout equiv_layout(const FinAbGroup& G)
{
    EquivLayout L;
    auto els = G.elements();
    bool odd = G.order() % 2 == 1;
    for (size_t h = 0; h < els.size(); ++h) {
        if (!G.is_zero(G.add(els[h], els[h]))) continue;
        for (int t : {1, -1}) {
            L.labels.push_back(std::string(t > 0 ? "beta+" : "beta-") + (odd ? "" : "(" + element_label(els[h]) + ")"));
            L.kind.push_back(0);
            L.t.push_back(t);
            L.g.push_back(h);
        }
    }
    for (size_t g = 0; g < els.size(); ++g) {
        size_t ng = G.index(G.neg(els[g]));
        if (ng <= g) continue;
        L.labels.push_back("sigma(" + element_label(els[g]) + ")");
        L.kind.push_back(1);
        L.t.push_back(0);
        L.g.push_back(g);
    }
    for (int t : {1, -1}) {
        L.labels.push_back(t > 0 ? "rho+" : "rho-");
        L.kind.push_back(2);
        L.t.push_back(t);
        L.g.push_back(0);
    }
    return L;
}

int jacobi_minus_two(long long n)
{
    int a = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
    return a * two_symbol(n);
}

}  // namespace

TYEquivariant ty_equiv(const TYData& d)
{
    check_ty(d);
    const auto& G = d.G;
    auto els = G.elements();
    long long n = G.order();
    auto L = equiv_layout(G);
    size_t m = L.labels.size();
    auto q = forms_for_pairing(d.pairing).front();
    auto x3 = canonical_x(q).pow(3);
    auto r = (Cyclotomic(d.sign) * x3).root_of_unity_exponent();
    Cyclotomic rho_twist = ph(mod1(-*r / 2));

    Cyclotomic lam = (Cyclotomic(2) * Cyclotomic::sqrt_nonneg_int(n)).inverse();
    Cyclotomic half(Rational(1, 2));
    Cyclotomic c = Cyclotomic(d.sign * (n % 2 == 1 ? jacobi_minus_two(n) : 1));

    TYEquivariant out;
    out.md.labels = L.labels;
    out.md.unit = 0;
    out.md.S.assign(m, std::vector<Cyclotomic>(m, Cyclotomic(0)));
    std::vector<Cyclotomic> theta(m);
    for (size_t a = 0; a < m; ++a) {
        if (L.kind[a] == 0) theta[a] = Cyclotomic(1);
        if (L.kind[a] == 1) theta[a] = ph(d.pairing.value(els[L.g[a]], els[L.g[a]]));
        if (L.kind[a] == 2) theta[a] = Cyclotomic(L.t[a]) * rho_twist;
        for (size_t b = 0; b < m; ++b) {
            int ka = L.kind[a], kb = L.kind[b];
            Cyclotomic v(0);
            if (ka == 0 && kb == 0) v = lam;
            else if ((ka == 0 && kb == 1) || (ka == 1 && kb == 0)) v = Cyclotomic(2) * lam;
            else if (ka == 1 && kb == 1) {
                auto p2 = ph(2 * d.pairing.value(els[L.g[a]], els[L.g[b]]));
                v = Cyclotomic(2) * lam * (p2 + p2.conj());
            } else if (ka == 0 && kb == 2) v = Cyclotomic(L.t[a]) * half;
            else if (ka == 2 && kb == 0) v = Cyclotomic(L.t[b]) * half;
            else if (ka == 2 && kb == 2) v = c * Cyclotomic(L.t[a] * L.t[b]) * half;
            out.md.S[a][b] = v;
        }
    }
    out.lambda_squared = Rational(1, 4 * n);
    if (n % 2 == 0) {
        out.degenerate = true;
        for (size_t a = 0; a < m && !out.equal_rows; ++a)
            for (size_t b = a + 1; b < m; ++b)
                if (out.md.S[a] == out.md.S[b]) {
                    out.equal_rows = std::make_pair(a, b);
                    break;
                }
        out.x = Cyclotomic(1);
        out.md.T = theta;
        return out;
    }
    // (S theta)^3 = (p_+/D) S^2 with p_+ = sum theta_a d_a^2; T = x theta, x^3 = D/p_+
    Cyclotomic p(0);
    for (size_t a = 0; a < m; ++a) {
        Cyclotomic da = out.md.S[0][a] / out.md.S[0][0];
        p += theta[a] * da * da;
    }
    auto kappa = (p * out.md.S[0][0]).root_of_unity_exponent();
    if (!kappa) throw std::logic_error("ty_equiv: Gauss sum is not a phase times the global dimension");
    out.x = ph(-*kappa / 3);
    out.md.T.resize(m);
    for (size_t a = 0; a < m; ++a) out.md.T[a] = out.x * theta[a];
    return out;
}

ModularData ty_equiv_literal(const TYData& d)
{
    check_ty(d);
    const auto& G = d.G;
    long long n = G.order();
    if (n % 2 == 0) throw std::invalid_argument("ty_equiv_literal: |G| must be odd");
    auto els = G.elements();
    auto L = equiv_layout(G);
    size_t m = L.labels.size();
    auto q = forms_for_pairing(d.pairing).front();
    auto r = (Cyclotomic(d.sign) * canonical_x(q).pow(3)).root_of_unity_exponent();
    Cyclotomic lam(Rational(1, 2 * n)), half(Rational(1, 2));
    int e = static_cast<int>(((n * n - 1) / 2) % 2 == 0 ? 1 : -1);
    ModularData md;
    md.labels = L.labels;
    md.S.assign(m, std::vector<Cyclotomic>(m, Cyclotomic(0)));
    md.T.resize(m);
    for (size_t a = 0; a < m; ++a) {
        if (L.kind[a] == 0) md.T[a] = Cyclotomic(1);
        if (L.kind[a] == 1) md.T[a] = ph(d.pairing.value(els[L.g[a]], els[L.g[a]]));
        if (L.kind[a] == 2) md.T[a] = Cyclotomic(L.t[a]) * ph(mod1(-*r / 2));
        for (size_t b = 0; b < m; ++b) {
            int ka = L.kind[a], kb = L.kind[b];
            Cyclotomic v(0);
            if (ka == 0 && kb == 0) v = lam;
            else if ((ka == 0 && kb == 1) || (ka == 1 && kb == 0)) v = Cyclotomic(2) * lam;
            else if (ka == 1 && kb == 1) {
                auto p2 = ph(2 * d.pairing.value(els[L.g[a]], els[L.g[b]]));
                v = Cyclotomic(2) * lam * (p2 + p2.conj());
            } else if ((ka == 0 && kb == 2) || (ka == 2 && kb == 0)) v = Cyclotomic(L.t[a] * L.t[b]) * half;
            else if (ka == 2 && kb == 2) v = Cyclotomic(e * L.t[a] * L.t[b]) * half;
            md.S[a][b] = v;
        }
    }
    return md;
}

QuadraticForm ty_lattice_form(const TYData& d)
{
    check_ty(d);
    std::vector<Rational> v;
    for (const auto& g : d.G.elements()) v.push_back(mod1(d.pairing.value(g, g)));
    return QuadraticForm(d.G, v);
}

Subgroup pairing_perp(const Pairing& p, const Subgroup& H)
{
    const auto& G = p.left();
    std::vector<Element> gens;
    auto hb = H.basis();
    for (const auto& g : G.elements()) {
        bool ok = true;
        for (const auto& h : hb) ok = ok && mod1(p.value(g, h)) == 0;
        if (ok) gens.push_back(g);
    }
    return Subgroup::generated(G, gens);
}

namespace {

struct ModuleLayout {
    const TYData* d;
    Subgroup H;
    std::vector<Element> rgens;      // radical generators in G
    std::vector<long long> rorders;  // their orders
    FinAbGroup R;                    // radical, invariant-factor coordinates
    Quotient cosets;
    long long dim = 1;

    // character <g, .> restricted to the radical, as exponents on the generators
    Element char_of(const Element& g) const
    {
        Element e(rgens.size());
        for (size_t i = 0; i < rgens.size(); ++i) e[i] = mod_ll((d->pairing.value(g, rgens[i]) * rorders[i]).numerator(), rorders[i]);
        return e;
    }
};

ModuleLayout module_layout(const TYData& d, const Subgroup& H, const Pairing& psi)
{
    if (H.ambient() != d.G) throw std::invalid_argument("ty_module_nimrep: H is not a subgroup of G");
    auto HG = H.as_group();
    if (psi.left() != HG || psi.right() != HG) throw std::invalid_argument("ty_module_nimrep: psi is not on H");
    if (!psi.is_alternating()) throw std::invalid_argument("ty_module_nimrep: psi is not alternating");
    ModuleLayout L{&d, H, {}, {}, {}, quotient(d.G, H), 1};
    auto rad = pairing_radical(psi);
    L.R = rad.as_group();
    for (const auto& b : rad.basis()) {
        L.rgens.push_back(subgroup_element(H, b));
        L.rorders.push_back(HG.element_order(b));
    }
    long long idx = H.order() / rad.order();
    long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(idx))));
    if (s * s != idx) throw std::logic_error("ty_module_nimrep: [H : rad psi] is not a square");
    L.dim = s;
    return L;
}

}  // namespace

ModuleNimrep ty_module_nimrep(const TYData& d, const Subgroup& H, const Pairing& psi)
{
    check_ty(d);
    auto L = module_layout(d, H, psi);
    const auto& G = d.G;
    auto els = G.elements();
    // characters of the radical as exponent vectors on rgens
    std::vector<Element> chars;
    {
        std::vector<long long> ords = L.rorders;
        Element cur(ords.size(), 0);
        size_t total = 1;
        for (auto o : ords) total *= static_cast<size_t>(o);
        for (size_t t = 0; t < total; ++t) {
            chars.push_back(cur);
            for (size_t i = ords.size(); i-- > 0;) {
                if (++cur[i] < ords[i]) break;
                cur[i] = 0;
            }
        }
    }
    std::map<Element, size_t> char_index;
    for (size_t i = 0; i < chars.size(); ++i) char_index[chars[i]] = i;
    ModuleNimrep out;
    out.irreps = chars.size();
    out.irrep_dim = L.dim;
    for (const auto& c : chars) out.labels.push_back("chi(" + element_label(c) + ")");
    size_t nc = L.cosets.representatives.size();
    for (const auto& k : L.cosets.representatives) out.labels.push_back("rho[" + element_label(k) + "]");
    size_t m = out.labels.size();
    auto coset = [&](const Element& g) { return chars.size() + L.cosets.group.index(L.cosets.projection(g)); };

    for (const auto& g : els) {
        IntMat M(m, std::vector<long long>(m, 0));
        auto phi = L.char_of(g);
        for (size_t i = 0; i < chars.size(); ++i) {
            Element t(chars[i].size());
            for (size_t j = 0; j < t.size(); ++j) t[j] = mod_ll(chars[i][j] + phi[j], L.rorders[j]);
            M[char_index.at(t)][i] += 1;
        }
        for (size_t k = 0; k < nc; ++k) M[coset(G.add(L.cosets.representatives[k], g))][chars.size() + k] += 1;
        out.matrices.push_back(std::move(M));
    }
    IntMat P(m, std::vector<long long>(m, 0));
    for (size_t i = 0; i < chars.size(); ++i)
        for (size_t k = 0; k < nc; ++k) {
            P[chars.size() + k][i] = L.dim;
            P[i][chars.size() + k] = L.dim;
        }
    out.matrices.push_back(std::move(P));
    return out;
}

std::string nimrep_defect(const FusionRing& R, const std::vector<IntMat>& M)
{
    size_t r = R.N.n;
    if (M.size() != r) return "expected one matrix per simple";
    size_t m = M.empty() ? 0 : M[0].size();
    for (size_t x = 0; x < r; ++x)
        for (const auto& row : M[x])
            for (long long v : row)
                if (v < 0) return "negative entry";
    for (size_t x = 0; x < r; ++x)
        for (size_t y = 0; y < r; ++y) {
            IntMat lhs = mat_mul(M[x], M[y]);
            IntMat rhs(m, std::vector<long long>(m, 0));
            for (size_t z = 0; z < r; ++z) {
                long long c = R.N(x, y, z);
                if (!c) continue;
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < m; ++j) rhs[i][j] += c * M[z][i][j];
            }
            if (lhs != rhs) return "M_" + R.labels[x] + " M_" + R.labels[y] + " != sum N M";
        }
    if (m && M[R.unit] != identity_matrix(m)) return "unit does not act as the identity";
    return {};
}

std::vector<size_t> module_equivalence(const TYData& d, const Subgroup& H)
{
    check_ty(d);
    const auto& G = d.G;
    Subgroup Hp = pairing_perp(d.pairing, H);
    auto triv = [](const Subgroup& K) { auto KG = K.as_group(); return Pairing::zero(KG, KG); };
    auto A = module_layout(d, H, triv(H));
    auto B = module_layout(d, Hp, triv(Hp));
    auto na = ty_module_nimrep(d, H, triv(H)), nb = ty_module_nimrep(d, Hp, triv(Hp));
    std::vector<size_t> out(na.labels.size(), static_cast<size_t>(-1));
    auto els = G.elements();
    for (const auto& g : els) {
        // chi = <g,.>|_H  <->  rho[g + H^perp]
        auto ca = A.char_of(g);
        std::string la = "chi(" + element_label(ca) + ")";
        std::string lb = "rho[" + element_label(B.cosets.representatives[B.cosets.group.index(B.cosets.projection(g))]) + "]";
        size_t ia = static_cast<size_t>(std::find(na.labels.begin(), na.labels.end(), la) - na.labels.begin());
        size_t ib = static_cast<size_t>(std::find(nb.labels.begin(), nb.labels.end(), lb) - nb.labels.begin());
        out[ia] = ib;
        // rho[g + H]  <->  <g,.>|_{H^perp}
        std::string la2 = "rho[" + element_label(A.cosets.representatives[A.cosets.group.index(A.cosets.projection(g))]) + "]";
        std::string lb2 = "chi(" + element_label(B.char_of(g)) + ")";
        size_t ia2 = static_cast<size_t>(std::find(na.labels.begin(), na.labels.end(), la2) - na.labels.begin());
        size_t ib2 = static_cast<size_t>(std::find(nb.labels.begin(), nb.labels.end(), lb2) - nb.labels.begin());
        out[ia2] = ib2;
    }
    for (size_t v : out)
        if (v == static_cast<size_t>(-1)) throw std::logic_error("module_equivalence: incomplete bijection");
    return out;
}

IntMat branching_matrix(const TYData& d)
{
    check_ty(d);
    const auto& G = d.G;
    auto els = G.elements();
    auto L = equiv_layout(G);
    IntMat B(L.labels.size(), std::vector<long long>(els.size(), 0));
    for (size_t a = 0; a < L.labels.size(); ++a) {
        if (L.kind[a] == 0) B[a][L.g[a]] = 1;
        if (L.kind[a] == 1) {
            B[a][L.g[a]] += 1;
            B[a][G.index(G.neg(els[L.g[a]]))] += 1;
        }
    }
    return B;
}

ModularInvariant equiv_invariant(const TYData& d, const QuadraticForm& q, const Subgroup& H, const Pairing& psi)
{
    check_ty(d);
    const auto& G = d.G;
    if (G.order() % 2 == 0) throw std::invalid_argument("equiv_invariant: |G| must be odd");
    if (q.group() != G) throw std::invalid_argument("equiv_invariant: q is on a different group");
    for (const auto& g : G.elements())
        if (mod1(q.value(g) - d.pairing.value(g, g)) != 0)
            throw std::invalid_argument("equiv_invariant: q(g) must equal <g,g>");
    auto md = weil(q);
    auto sc = simple_currents(md);
    auto to_sc = [&](const Element& g) { return sc.group.element(sc.element[G.index(g)]); };
    auto to_G = [&](const Element& e) { return G.element(sc.primary[sc.group.index(e)]); };
    std::vector<Element> gens;
    for (const auto& h : H.basis()) gens.push_back(to_sc(h));
    Subgroup J = Subgroup::generated(sc.group, gens);
    auto JG = J.as_group();
    auto jb = J.basis();
    RatMat E(jb.size(), std::vector<Rational>(jb.size()));
    for (size_t i = 0; i < jb.size(); ++i)
        for (size_t k = 0; k < jb.size(); ++k)
            E[i][k] = psi.value(H.coordinates(to_G(jb[i])), H.coordinates(to_G(jb[k])));
    SCParam p;
    try {
        p = make_epsilon(sc, J, Pairing::square(JG, E));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("equiv_invariant: parameter invalid: ") + e.what());
    }
    auto Z = sc_matrix(md, sc, p).matrix;
    auto B = branching_matrix(d);
    return {mat_mul(mat_mul(B, Z), transpose(B)), "TY equivariantization from lattice (H, psi), |H| = " + std::to_string(H.order())};
}

FusionRing hg_fusion(long long nu)
{
    if (nu < 1 || nu % 2 == 0) throw std::invalid_argument("hg_fusion: nu must be an odd positive integer");
    FinAbGroup A = FinAbGroup::from_cyclic_orders({nu, nu});
    long long M = nu * nu + 4;
    FusionRing R;
    R.labels = {"0", "b"};
    std::map<Element, size_t> cidx;
    for (const auto& a : A.elements()) {
        if (A.is_zero(a)) continue;
        auto na = A.neg(a);
        if (cidx.count(na)) {
            cidx[a] = cidx[na];
            continue;
        }
        cidx[a] = R.labels.size();
        R.labels.push_back("c(" + element_label(a) + ")");
    }
    std::vector<size_t> didx(static_cast<size_t>(M));
    for (long long a = 1; a < M; ++a) {
        if (a > M - a) {
            didx[a] = didx[M - a];
            continue;
        }
        didx[a] = R.labels.size();
        R.labels.push_back("d(" + std::to_string(a) + ")");
    }
    size_t r = R.labels.size();
    using Vec = std::vector<long long>;
    Vec all(r, 1), minus = all;
    minus[0] = 0;
    auto unit = [&](size_t i) { Vec v(r, 0); v[i] = 1; return v; };
    // c_0 = 0 + b, d_0 = b - 0
    auto cvec = [&](const Element& a) {
        if (A.is_zero(a)) { Vec v(r, 0); v[0] = 1; v[1] = 1; return v; }
        return unit(cidx.at(a));
    };
    auto dvec = [&](long long a) {
        a = mod_ll(a, M);
        if (a == 0) { Vec v(r, 0); v[0] = -1; v[1] = 1; return v; }
        return unit(didx[a]);
    };
    auto plus = [](Vec a, const Vec& b, long long s) { for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i]; return a; };

    std::vector<Element> crep(r);
    std::vector<long long> drep(r, 0);
    for (const auto& [a, i] : cidx)
        if (crep[i].empty()) crep[i] = a;
    for (long long a = 1; a < M; ++a)
        if (drep[didx[a]] == 0) drep[didx[a]] = a;
    auto is_c = [&](size_t i) { return !crep[i].empty(); };
    auto is_d = [&](size_t i) { return drep[i] != 0; };

    R.unit = 0;
    R.N.n = r;
    R.N.N.assign(r * r * r, 0);
    for (size_t x = 0; x < r; ++x)
        for (size_t y = 0; y < r; ++y) {
            Vec v;
            if (x == 0) v = unit(y);
            else if (y == 0) v = unit(x);
            else if (x == 1 && y == 1) v = all;
            else if (x == 1 || y == 1) {
                size_t o = x == 1 ? y : x;
                v = plus(minus, unit(o), is_c(o) ? 1 : -1);
            } else if (is_c(x) && is_c(y)) {
                v = plus(plus(minus, cvec(A.add(crep[x], crep[y])), 1), cvec(A.sub(crep[x], crep[y])), 1);
            } else if (is_d(x) && is_d(y)) {
                v = plus(plus(minus, dvec(drep[x] + drep[y]), -1), dvec(drep[x] - drep[y]), -1);
            } else {
                v = minus;
            }
            for (size_t z = 0; z < r; ++z) {
                if (v[z] < 0) throw std::logic_error("hg_fusion: negative coefficient in " + R.labels[x] + " " + R.labels[y]);
                R.N.N[(x * r + y) * r + z] = v[z];
            }
        }
    return R;
}

}  // namespace mtc
