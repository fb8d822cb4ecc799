#include "mtc/forms.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mtc {

namespace {

long long common_denominator(const std::vector<Rational>& v)
{
    long long L = 1;
    for (const auto& r : v) L = lcm_ll(L, r.denominator());
    return L;
}

std::vector<long long> int_table(const std::vector<Rational>& v, long long L)
{
    std::vector<long long> t(v.size());
    for (size_t i = 0; i < v.size(); ++i) t[i] = v[i].numerator() * (L / v[i].denominator());
    return t;
}

// succ[j][i] = index of element(i) + e_j
std::vector<std::vector<size_t>> successor_tables(const FinAbGroup& G)
{
    size_t n = static_cast<size_t>(G.order());
    std::vector<std::vector<size_t>> succ(G.rank(), std::vector<size_t>(n));
    for (size_t i = 0; i < n; ++i) {
        Element g = G.element(i);
        for (size_t j = 0; j < G.rank(); ++j) succ[j][i] = G.index(G.add(g, G.basis(j)));
    }
    return succ;
}

std::vector<size_t> index_image(const Hom& a, const FinAbGroup& G)
{
    size_t n = static_cast<size_t>(G.order());
    std::vector<size_t> img(n);
    for (size_t i = 0; i < n; ++i) img[i] = a.codomain().index(a(G.element(i)));
    return img;
}

void check_pairing_matrix(const FinAbGroup& L, const FinAbGroup& R, const RatMat& E)
{
    if (E.size() != L.rank()) throw std::invalid_argument("pairing matrix has wrong row count");
    for (size_t i = 0; i < L.rank(); ++i) {
        if (E[i].size() != R.rank()) throw std::invalid_argument("pairing matrix has wrong column count");
        for (size_t j = 0; j < R.rank(); ++j) {
            if ((E[i][j] * L.factors()[i]).denominator() != 1 || (E[i][j] * R.factors()[j]).denominator() != 1)
                throw std::invalid_argument("pairing matrix entry is not well defined on the group");
        }
    }
}

long long legendre(long long a, long long p)
{
    a = mod_ll(a, p);
    if (a == 0) return 0;
    long long r = 1, b = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) r = static_cast<long long>((__int128)r * b % p);
        b = static_cast<long long>((__int128)b * b % p);
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void guard_count(long long count, const char* what)
{
    if (count > 4'000'000) throw GuardExceeded(std::string(what) + ": too many candidates");
}

}  // namespace

Pairing::Pairing(FinAbGroup left, FinAbGroup right, RatMat E) : L_(std::move(left)), R_(std::move(right)), E_(std::move(E))
{
    check_pairing_matrix(L_, R_, E_);
    for (auto& row : E_)
        for (auto& v : row) v = mod1(v);
}

Pairing Pairing::zero(const FinAbGroup& left, const FinAbGroup& right)
{
    return Pairing(left, right, RatMat(left.rank(), std::vector<Rational>(right.rank())));
}

Rational Pairing::value(const Element& g, const Element& h) const
{
    Rational s = 0;
    for (size_t i = 0; i < E_.size(); ++i) {
        if (g[i] == 0) continue;
        for (size_t j = 0; j < E_[i].size(); ++j)
            if (h[j] != 0) s += E_[i][j] * (g[i] * h[j]);
    }
    return mod1(s);
}

bool Pairing::is_symmetric() const
{
    if (!is_square()) return false;
    for (size_t i = 0; i < E_.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (E_[i][j] != E_[j][i]) return false;
    return true;
}

bool Pairing::is_alternating() const
{
    if (!is_square()) return false;
    for (size_t i = 0; i < E_.size(); ++i) {
        if (E_[i][i].numerator() != 0) return false;
        for (size_t j = 0; j < i; ++j)
            if (mod1(E_[i][j] + E_[j][i]).numerator() != 0) return false;
    }
    return true;
}

bool Pairing::is_nondegenerate() const { return is_square() && pairing_radical(*this).order() == 1; }

Pairing Pairing::transpose() const
{
    RatMat T(R_.rank(), std::vector<Rational>(L_.rank()));
    for (size_t i = 0; i < L_.rank(); ++i)
        for (size_t j = 0; j < R_.rank(); ++j) T[j][i] = E_[i][j];
    return Pairing(R_, L_, T);
}

Pairing Pairing::operator*(const Pairing& o) const
{
    if (L_ != o.L_ || R_ != o.R_) throw std::invalid_argument("pairings on different groups");
    RatMat E = E_;
    for (size_t i = 0; i < E.size(); ++i)
        for (size_t j = 0; j < E[i].size(); ++j) E[i][j] += o.E_[i][j];
    return Pairing(L_, R_, E);
}

Pairing Pairing::inverse() const
{
    RatMat E = E_;
    for (auto& row : E)
        for (auto& v : row) v = -v;
    return Pairing(L_, R_, E);
}

Pairing standard_pairing(const FinAbGroup& G)
{
    RatMat E(G.rank(), std::vector<Rational>(G.rank()));
    for (size_t i = 0; i < G.rank(); ++i) E[i][i] = Rational(1, G.factors()[i]);
    return Pairing::square(G, E);
}

Subgroup pairing_radical(const Pairing& g)
{
    if (!g.is_square()) throw std::invalid_argument("radical needs a pairing of a group with itself");
    const auto& G = g.left();
    std::vector<Element> rad;
    for (const auto& x : G.elements()) {
        bool in = true;
        for (size_t j = 0; j < G.rank() && in; ++j) in = g.value(x, G.basis(j)).numerator() == 0;
        if (in) rad.push_back(x);
    }
    return Subgroup::generated(G, rad);
}

std::vector<Pairing> all_pairings(const FinAbGroup& left, const FinAbGroup& right)
{
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long long> mods;
    long long count = 1;
    for (size_t i = 0; i < left.rank(); ++i)
        for (size_t j = 0; j < right.rank(); ++j) {
            slots.push_back({i, j});
            mods.push_back(gcd_ll(left.factors()[i], right.factors()[j]));
            count *= mods.back();
            guard_count(count, "all_pairings");
        }
    std::vector<Pairing> out;
    std::vector<long long> c(slots.size(), 0);
    for (long long t = 0; t < count; ++t) {
        RatMat E(left.rank(), std::vector<Rational>(right.rank()));
        for (size_t s = 0; s < slots.size(); ++s) E[slots[s].first][slots[s].second] = Rational(c[s], mods[s]);
        out.emplace_back(left, right, E);
        for (size_t s = slots.size(); s-- > 0;) {
            if (++c[s] < mods[s]) break;
            c[s] = 0;
        }
    }
    return out;
}

std::vector<Pairing> symmetric_pairings(const FinAbGroup& G)
{
    size_t r = G.rank();
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long long> mods;
    long long count = 1;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i; j < r; ++j) {
            slots.push_back({i, j});
            mods.push_back(G.factors()[j]);
            count *= mods.back();
            guard_count(count, "symmetric_pairings");
        }
    std::vector<Pairing> out;
    std::vector<long long> c(slots.size(), 0);
    for (long long t = 0; t < count; ++t) {
        RatMat E(r, std::vector<Rational>(r));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [i, j] = slots[s];
            E[i][j] = E[j][i] = Rational(c[s], mods[s]);
        }
        out.push_back(Pairing::square(G, E));
        for (size_t s = slots.size(); s-- > 0;) {
            if (++c[s] < mods[s]) break;
            c[s] = 0;
        }
    }
    return out;
}

std::vector<Pairing> alternating_pairings(const FinAbGroup& G)
{
    size_t r = G.rank();
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long long> mods;
    long long count = 1;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            slots.push_back({i, j});
            mods.push_back(G.factors()[j]);
            count *= mods.back();
            guard_count(count, "alternating_pairings");
        }
    std::vector<Pairing> out;
    std::vector<long long> c(slots.size(), 0);
    for (long long t = 0; t < count; ++t) {
        RatMat E(r, std::vector<Rational>(r));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [i, j] = slots[s];
            E[i][j] = Rational(c[s], mods[s]);
            E[j][i] = -E[i][j];
        }
        out.push_back(Pairing::square(G, E));
        for (size_t s = slots.size(); s-- > 0;) {
            if (++c[s] < mods[s]) break;
            c[s] = 0;
        }
    }
    return out;
}

long long alternating_pairing_count(const FinAbGroup& G)
{
    long long c = 1;
    for (size_t i = 1; i < G.rank(); ++i) c *= ipow(G.factors()[i], static_cast<int>(i));
    return c;
}

QuadraticForm::QuadraticForm(FinAbGroup G, std::vector<Rational> values, bool check)
    : G_(std::move(G)), v_(std::move(values))
{
    if (v_.size() != static_cast<size_t>(G_.order())) throw std::invalid_argument("form table has wrong length");
    for (auto& v : v_) v = mod1(v);
    if (check) {
        auto d = defect();
        if (!d.empty()) throw std::invalid_argument("not a quadratic form: " + d);
    }
}

QuadraticForm QuadraticForm::from_components(const std::vector<long long>& orders,
                                             const std::function<Rational(const std::vector<long long>&)>& f)
{
    size_t r = orders.size();
    IntMat rel(r, std::vector<long long>(r, 0));
    long long n = 1;
    for (size_t i = 0; i < r; ++i) {
        rel[i][i] = orders[i];
        n *= orders[i];
    }
    auto P = Presentation::from_relations(r, rel);
    std::vector<Rational> v(static_cast<size_t>(n));
    std::vector<long long> x(r, 0);
    for (long long t = 0; t < n; ++t) {
        v[P.group.index(P.map(x))] = f(x);
        for (size_t i = r; i-- > 0;) {
            if (++x[i] < orders[i]) break;
            x[i] = 0;
        }
    }
    return QuadraticForm(P.group, v);
}

std::string QuadraticForm::defect() const
{
    size_t n = v_.size();
    if (v_[0].numerator() != 0) return "q(0) != 1";
    for (size_t i = 0; i < n; ++i)
        if (v_[G_.index(G_.neg(G_.element(i)))] != v_[i]) return "q(-g) != q(g) at " + std::to_string(i);
    long long L = common_denominator(v_);
    auto q = int_table(v_, L);
    auto succ = successor_tables(G_);
    // b(g,h) = q(g)+q(h)-q(g+h); need b(g,h+e_j) = b(g,h)+b(g,e_j)
    std::atomic<bool> bad{false};
    size_t r = G_.rank();
    auto elems = G_.elements();
#pragma omp parallel for schedule(static) if (n > 256)
    for (long long gi = 0; gi < static_cast<long long>(n); ++gi) {
        if (bad) continue;
        const Element& g = elems[static_cast<size_t>(gi)];
        std::vector<long long> row(n);
        for (size_t h = 0; h < n; ++h)
            row[h] = q[static_cast<size_t>(gi)] + q[h] - q[G_.index(G_.add(g, elems[h]))];
        for (size_t h = 0; h < n && !bad; ++h)
            for (size_t j = 0; j < r; ++j)
                if (mod_ll(row[succ[j][h]] - row[h] - row[succ[j][0]], L) != 0) {
                    bad = true;
                    break;
                }
    }
    if (bad) return "polarization is not biadditive";
    for (size_t i = 1; i < n; ++i) {
        bool zero = true;
        for (size_t j = 0; j < r && zero; ++j)
            zero = mod_ll(q[i] + q[succ[j][0]] - q[succ[j][i]], L) == 0;
        if (zero) return "polarization is degenerate";
    }
    return {};
}

QuadraticForm QuadraticForm::conj() const
{
    auto v = v_;
    for (auto& x : v) x = -x;
    return QuadraticForm(G_, v, false);
}

QuadraticForm QuadraticForm::pullback(const Hom& a) const
{
    if (a.codomain() != G_) throw std::invalid_argument("pullback along a map into another group");
    const auto& H = a.domain();
    std::vector<Rational> v(static_cast<size_t>(H.order()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = value(a(H.element(i)));
    return QuadraticForm(H, v, false);
}

QuadraticForm QuadraticForm::times_character(const Character& c) const
{
    if (c.group != G_) throw std::invalid_argument("character on another group");
    auto v = v_;
    for (size_t i = 0; i < v.size(); ++i) v[i] += c.value(G_.element(i));
    return QuadraticForm(G_, v, false);
}

QuadraticForm orthogonal_sum(const QuadraticForm& a, const QuadraticForm& b)
{
    auto orders = a.group().factors();
    size_t ra = orders.size();
    for (auto f : b.group().factors()) orders.push_back(f);
    return QuadraticForm::from_components(orders, [&](const std::vector<long long>& x) {
        Element xa(x.begin(), x.begin() + static_cast<long>(ra)), xb(x.begin() + static_cast<long>(ra), x.end());
        return a.value(xa) + b.value(xb);
    });
}

Pairing polarization(const QuadraticForm& q)
{
    auto d = q.defect();
    if (!d.empty()) throw std::invalid_argument("not a quadratic form: " + d);
    const auto& G = q.group();
    RatMat E(G.rank(), std::vector<Rational>(G.rank()));
    for (size_t i = 0; i < G.rank(); ++i)
        for (size_t j = 0; j < G.rank(); ++j) {
            auto ei = G.basis(i), ej = G.basis(j);
            E[i][j] = q.value(ei) + q.value(ej) - q.value(G.add(ei, ej));
        }
    return Pairing::square(G, E);
}

std::vector<QuadraticForm> forms_for_pairing(const Pairing& g)
{
    if (!g.is_symmetric()) throw std::invalid_argument("forms_for_pairing needs a symmetric pairing");
    if (!g.is_nondegenerate()) throw std::invalid_argument("forms_for_pairing needs a nondegenerate pairing");
    const auto& G = g.left();
    const auto& E = g.matrix();
    size_t r = G.rank();
    std::vector<size_t> even;
    for (size_t i = 0; i < r; ++i)
        if (G.factors()[i] % 2 == 0) even.push_back(i);

    std::vector<QuadraticForm> out;
    auto elems = G.elements();
    for (long long choice = 0; choice < (1LL << even.size()); ++choice) {
        std::vector<Rational> base(r);
        for (size_t i = 0; i < r; ++i) {
            long long m = G.factors()[i];
            if (m % 2 == 1)
                base[i] = E[i][i] * ((m - 1) / 2);
            else
                base[i] = -E[i][i] / 2;
        }
        for (size_t t = 0; t < even.size(); ++t)
            if ((choice >> t) & 1) base[even[t]] += Rational(1, 2);
        std::vector<Rational> v(elems.size());
        for (size_t idx = 0; idx < elems.size(); ++idx) {
            const auto& k = elems[idx];
            Rational s = 0;
            for (size_t i = 0; i < r; ++i) {
                s += base[i] * (k[i] * k[i]);
                for (size_t j = i + 1; j < r; ++j) s -= E[i][j] * (k[i] * k[j]);
            }
            v[idx] = s;
        }
        QuadraticForm q(G, v);
        if (polarization(q) != g) throw std::logic_error("constructed form does not polarize to the pairing");
        out.push_back(std::move(q));
    }
    return out;
}

GaussSum gauss_sum(const QuadraticForm& q)
{
    const auto& v = q.values();
    long long L = common_denominator(v);
    std::vector<Rational> counts(static_cast<size_t>(L), Rational(0));
    for (auto t : int_table(v, L)) counts[static_cast<size_t>(t)] += 1;
    GaussSum out;
    out.sum = Cyclotomic::from_coeffs(L, counts);
    Cyclotomic root = Cyclotomic::sqrt_nonneg_int(q.group().order());
    for (int s = 0; s < 8; ++s) {
        Cyclotomic z = Cyclotomic::root_of_unity(8, s);
        if (z * root == out.sum) {
            out.normalized = z;
            out.signature_mod_8 = s;
            return out;
        }
    }
    throw std::invalid_argument("Gauss sum is not an eighth root of unity times sqrt|G|; form is degenerate");
}

Cyclotomic canonical_x(const QuadraticForm& q)
{
    return Cyclotomic::phase(Rational(-gauss_sum(q).signature_mod_8, 24));
}

Descriptor Descriptor::parse(const std::string& text)
{
    static const std::regex odd(R"(^\s*(\d+)\^(\d+)_([+-]1?)\s*$)");
    static const std::regex two(R"(^\s*2\^(\d+)_([+-]?[13])\s*$)");
    static const std::regex pair(R"(^\s*2\^(\d+)[x ]?2\^\1_(i|ii)\s*$)");
    std::smatch m;
    Descriptor d;
    if (std::regex_match(text, m, pair)) {
        d.p = 2;
        d.k = std::stoi(m[1]);
        d.kind = m[2] == "i" ? Kind::TwoTwoI : Kind::TwoTwoII;
    } else if (std::regex_match(text, m, two)) {
        d.kind = Kind::TwoCyclic;
        d.p = 2;
        d.k = std::stoi(m[1]);
        d.m = std::stoi(m[2]);
    } else if (std::regex_match(text, m, odd)) {
        d.kind = Kind::OddPrime;
        d.p = std::stoll(m[1]);
        d.k = std::stoi(m[2]);
        d.s = m[3].str()[0] == '-' ? -1 : 1;
        if (d.p == 2 || !is_prime(d.p)) throw std::invalid_argument("descriptor prime must be odd: " + text);
    } else {
        throw std::invalid_argument("invalid form descriptor: " + text);
    }
    if (d.k < 1 || d.k > 30) throw std::invalid_argument("descriptor exponent out of range: " + text);
    return d;
}

std::string Descriptor::to_string() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::OddPrime: os << p << '^' << k << '_' << (s > 0 ? '+' : '-'); break;
    case Kind::TwoCyclic: os << "2^" << k << '_' << m; break;
    case Kind::TwoTwoI: os << "2^" << k << "2^" << k << "_i"; break;
    case Kind::TwoTwoII: os << "2^" << k << "2^" << k << "_ii"; break;
    }
    return os.str();
}

std::vector<Descriptor> parse_descriptors(const std::string& text)
{
    std::vector<Descriptor> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(Descriptor::parse(item));
    }
    return out;
}

IndecomposableForm indecomposable_form(const Descriptor& d)
{
    IndecomposableForm out;
    switch (d.kind) {
    case Descriptor::Kind::OddPrime: {
        if (d.p < 3 || !is_prime(d.p) || (d.s != 1 && d.s != -1) || d.k < 1)
            throw std::invalid_argument("invalid descriptor " + d.to_string());
        long long n = ipow(d.p, d.k);
        long long m = 1;
        while (legendre(m, d.p) != d.s) ++m;
        out.q = QuadraticForm::from_components({n}, [&](const std::vector<long long>& x) {
            return Rational(mod_ll(m * x[0] % n * x[0], n), n);
        });
        Cyclotomic eps = n % 4 == 1 ? Cyclotomic(1) : -Cyclotomic::root_of_unity(4, 1);
        out.x_cubed = ((d.k % 2 == 1 && d.s == -1) ? Cyclotomic(-1) : Cyclotomic(1)) * eps;
        break;
    }
    case Descriptor::Kind::TwoCyclic: {
        if (d.m != 1 && d.m != -1 && d.m != 3 && d.m != -3) throw std::invalid_argument("invalid descriptor " + d.to_string());
        long long n = ipow(2, d.k);
        out.q = QuadraticForm::from_components({n}, [&](const std::vector<long long>& x) {
            return Rational(d.m * x[0] * x[0], 2 * n);
        });
        bool flip = d.k % 2 == 1 && (d.m == 3 || d.m == -3);
        out.x_cubed = Cyclotomic(flip ? -1 : 1) * Cyclotomic::root_of_unity(8, -d.m);
        break;
    }
    case Descriptor::Kind::TwoTwoI: {
        long long n = ipow(2, d.k);
        out.q = QuadraticForm::from_components({n, n}, [&](const std::vector<long long>& x) {
            return Rational(x[0] * x[1], n);
        });
        out.x_cubed = Cyclotomic(1);
        break;
    }
    case Descriptor::Kind::TwoTwoII: {
        long long n = ipow(2, d.k);
        out.q = QuadraticForm::from_components({n, n}, [&](const std::vector<long long>& x) {
            return Rational(x[0] * x[0] + x[0] * x[1] + x[1] * x[1], n);
        });
        out.x_cubed = Cyclotomic(d.k % 2 == 0 ? 1 : -1);
        break;
    }
    }
    return out;
}

IndecomposableForm form_from_descriptors(const std::vector<Descriptor>& ds)
{
    IndecomposableForm acc{QuadraticForm(FinAbGroup(), {Rational(0)}), Cyclotomic(1)};
    for (const auto& d : ds) {
        auto f = indecomposable_form(d);
        acc.q = orthogonal_sum(acc.q, f.q);
        acc.x_cubed *= f.x_cubed;
    }
    return acc;
}

const std::vector<Hom>& cached_automorphisms(const FinAbGroup& G)
{
    static std::mutex mu;
    static std::map<std::vector<long long>, std::vector<Hom>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(G.factors());
        if (it != cache.end()) return it->second;
    }
    auto autos = automorphisms(G);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(G.factors(), std::move(autos)).first->second;
}

std::optional<Hom> forms_equivalent(const QuadraticForm& a, const QuadraticForm& b)
{
    const auto& G = a.group();
    if (G.order() != b.group().order()) throw std::invalid_argument("forms on groups of different order");
    if (G.order() > enumeration_guard())
        throw GuardExceeded("forms_equivalent: group order " + std::to_string(G.order()) + " exceeds guard");
    if (G != b.group()) return std::nullopt;
    auto sa = a.values(), sb = b.values();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    const auto& autos = cached_automorphisms(G);
    auto elems = G.elements();
    for (const auto& al : autos) {
        bool ok = true;
        for (size_t i = 0; i < elems.size() && ok; ++i) ok = a.value(al(elems[i])) == b.value_at(i);
        if (ok) return al;
    }
    return std::nullopt;
}

namespace {

std::vector<int> classes_impl(const std::vector<QuadraticForm>& forms, bool parallel)
{
    std::vector<int> cls(forms.size(), -1);
    if (forms.empty()) return cls;
    const auto& G = forms[0].group();
    for (const auto& f : forms)
        if (f.group() != G) throw std::invalid_argument("form_classes needs forms on one group");
    long long L = 1;
    for (const auto& f : forms) L = lcm_ll(L, common_denominator(f.values()));
    std::vector<std::vector<long long>> tabs;
    for (const auto& f : forms) tabs.push_back(int_table(f.values(), L));
    const auto& autos = cached_automorphisms(G);
    std::vector<std::vector<size_t>> imgs(autos.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (long long t = 0; t < static_cast<long long>(autos.size()); ++t)
        imgs[static_cast<size_t>(t)] = index_image(autos[static_cast<size_t>(t)], G);

    int next = 0;
    for (size_t s = 0; s < forms.size(); ++s) {
        if (cls[s] >= 0) continue;
        cls[s] = next;
        std::vector<std::vector<long long>> orbit(autos.size());
        const auto& base = tabs[s];
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
        for (long long t = 0; t < static_cast<long long>(autos.size()); ++t) {
            const auto& img = imgs[static_cast<size_t>(t)];
            std::vector<long long> w(base.size());
            for (size_t i = 0; i < base.size(); ++i) w[i] = base[img[i]];
            orbit[static_cast<size_t>(t)] = std::move(w);
        }
        std::set<std::vector<long long>> orb(orbit.begin(), orbit.end());
        for (size_t u = s + 1; u < forms.size(); ++u)
            if (cls[u] < 0 && orb.count(tabs[u])) cls[u] = next;
        ++next;
    }
    return cls;
}

}  // namespace

std::vector<int> form_classes(const std::vector<QuadraticForm>& forms) { return classes_impl(forms, true); }
std::vector<int> form_classes_serial(const std::vector<QuadraticForm>& forms) { return classes_impl(forms, false); }

ImageData pairing_image_data(const Pairing& eps)
{
    const auto& J1 = eps.left();
    const auto& J2 = eps.right();
    std::vector<Element> j0, ker;
    for (const auto& h : J2.elements()) {
        bool in = true;
        for (size_t i = 0; i < J1.rank() && in; ++i) in = eps.value(J1.basis(i), h).numerator() == 0;
        if (in) j0.push_back(h);
    }
    for (const auto& g : J1.elements()) {
        bool in = true;
        for (size_t j = 0; j < J2.rank() && in; ++j) in = eps.value(g, J2.basis(j)).numerator() == 0;
        if (in) ker.push_back(g);
    }
    ImageData out{Subgroup::generated(J2, j0), Subgroup::generated(J1, ker)};
    if (quotient(J1, out.kernel).group != quotient(J2, out.J0).group)
        throw std::logic_error("J1/ker and J2/J0 are not isomorphic");
    return out;
}

std::vector<FinAbGroup> abelian_groups_of_order(long long n)
{
    if (n < 1) throw std::invalid_argument("group order must be positive");
    std::vector<std::pair<long long, int>> pf;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            pf.push_back({p, e});
        }
    if (m > 1) pf.push_back({m, 1});

    std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> parts =
        [&](int rem, int maxp, std::vector<int>& cur, std::vector<std::vector<int>>& acc) {
            if (rem == 0) {
                acc.push_back(cur);
                return;
            }
            for (int x = std::min(rem, maxp); x >= 1; --x) {
                cur.push_back(x);
                parts(rem - x, x, cur, acc);
                cur.pop_back();
            }
        };
    std::vector<std::vector<long long>> combos{{}};
    for (auto [p, e] : pf) {
        std::vector<std::vector<int>> ps;
        std::vector<int> cur;
        parts(e, e, cur, ps);
        std::vector<std::vector<long long>> next;
        for (const auto& c : combos)
            for (const auto& part : ps) {
                auto o = c;
                for (int x : part) o.push_back(ipow(p, x));
                next.push_back(o);
            }
        combos = std::move(next);
    }
    std::vector<FinAbGroup> out;
    for (const auto& c : combos) out.push_back(FinAbGroup::from_cyclic_orders(c));
    return out;
}

}  // namespace mtc
