#include "mtc/scalars.hpp"

#include <gmpxx.h>

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace mtc {

namespace {

using i128 = __int128;

std::atomic<long long> g_order_guard{1000000};

long long narrow(i128 v)
{
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("cyclotomic coefficient overflow");
    return static_cast<long long>(v);
}

i128 mul128(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

i128 add128(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

i128 gcd128(i128 a, i128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct FieldData {
    long long N;
    long long phi;
    std::vector<long long> poly;              // Phi_N, degree phi, monic
    std::vector<std::pair<long long, long long>> tail;  // nonzero (index, coeff) below the leading term
};

std::mutex g_field_mutex;
std::map<long long, std::unique_ptr<FieldData>> g_fields;

std::vector<long long> poly_divide_exact(std::vector<long long> a, const std::vector<long long>& b)
{
    // b monic
    size_t db = b.size() - 1;
    if (a.size() < b.size()) return {0};
    std::vector<long long> q(a.size() - db, 0);
    for (size_t i = a.size(); i-- > db;) {
        long long c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

const FieldData& field(long long N)
{
    {
        std::lock_guard<std::mutex> lock(g_field_mutex);
        auto it = g_fields.find(N);
        if (it != g_fields.end()) return *it->second;
    }
    if (N > g_order_guard.load()) throw GuardExceeded("cyclotomic order " + std::to_string(N) + " exceeds guard");
    std::vector<long long> p(N + 1, 0);
    p[0] = -1;
    p[N] = 1;
    for (long long d = 1; d < N; ++d)
        if (N % d == 0) p = poly_divide_exact(p, field(d).poly);
    auto fd = std::make_unique<FieldData>();
    fd->N = N;
    fd->phi = static_cast<long long>(p.size()) - 1;
    for (long long j = 0; j < fd->phi; ++j)
        if (p[j] != 0) fd->tail.emplace_back(j, p[j]);
    fd->poly = std::move(p);
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto [it, inserted] = g_fields.emplace(N, std::move(fd));
    return *it->second;
}

// Reduce a polynomial modulo Phi_N in place; returns coefficients below phi.
void reduce(std::vector<i128>& a, const FieldData& f)
{
    for (long long d = static_cast<long long>(a.size()) - 1; d >= f.phi; --d) {
        i128 c = a[d];
        if (c == 0) continue;
        a[d] = 0;
        long long base = d - f.phi;
        for (auto [j, pj] : f.tail) a[base + j] = add128(a[base + j], -mul128(c, pj));
    }
    a.resize(f.phi);
}

long long lcm_checked(long long a, long long b)
{
    long long g = std::gcd(a, b);
    return narrow(mul128(a / g, b));
}

}  // namespace

long long cyclotomic_order_guard() { return g_order_guard.load(); }
void set_cyclotomic_order_guard(long long n) { g_order_guard.store(n); }

long long euler_phi(long long n)
{
    long long r = n;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<long long>& cyclotomic_polynomial(long long N)
{
    if (N < 1) throw std::invalid_argument("cyclotomic order must be positive");
    return field(N).poly;
}

Rational mod1(const Rational& r)
{
    long long n = r.numerator() % r.denominator();
    if (n < 0) n += r.denominator();
    return Rational(n, r.denominator());
}

Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational '" + s + "'");
    }
}

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Cyclotomic::Cyclotomic() : N_(1), num_(1, 0), den_(1) {}

Cyclotomic::Cyclotomic(long long n) : N_(1), num_(1, n), den_(1) {}

Cyclotomic::Cyclotomic(const Rational& r) : N_(1), num_(1, r.numerator()), den_(r.denominator()) {}

void Cyclotomic::normalize()
{
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    long long g = den_;
    for (auto c : num_) {
        if (g == 1) break;
        g = std::gcd(g, c);
    }
    if (g > 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
    bool zero = true;
    for (auto c : num_) zero = zero && c == 0;
    if (zero) den_ = 1;
}

Cyclotomic Cyclotomic::from_coeffs(long long N, const std::vector<Rational>& c)
{
    if (N < 1) throw std::invalid_argument("cyclotomic order must be positive");
    if (static_cast<long long>(c.size()) > N) throw std::invalid_argument("too many coefficients");
    const FieldData& f = field(N);
    long long den = 1;
    for (const auto& r : c) den = lcm_checked(den, r.denominator());
    std::vector<i128> a(std::max<long long>(N, f.phi), 0);
    for (size_t k = 0; k < c.size(); ++k) a[k] = mul128(c[k].numerator(), den / c[k].denominator());
    reduce(a, f);
    Cyclotomic out;
    out.N_ = N;
    out.den_ = den;
    out.num_.resize(f.phi);
    for (long long k = 0; k < f.phi; ++k) out.num_[k] = narrow(a[k]);
    out.normalize();
    return out;
}

Cyclotomic Cyclotomic::root_of_unity(long long N, long long k)
{
    if (N < 1) throw std::invalid_argument("root_of_unity: order must be positive");
    k %= N;
    if (k < 0) k += N;
    long long g = std::gcd(N, k);
    if (k == 0) g = N;
    long long M = N / g;
    long long e = k / g;
    const FieldData& f = field(M);
    std::vector<i128> a(std::max<long long>(M, f.phi), 0);
    a[e] = 1;
    reduce(a, f);
    Cyclotomic out;
    out.N_ = M;
    out.num_.resize(f.phi);
    for (long long j = 0; j < f.phi; ++j) out.num_[j] = narrow(a[j]);
    return out;
}

Cyclotomic Cyclotomic::phase(const Rational& r)
{
    Rational m = mod1(r);
    return root_of_unity(m.denominator(), m.numerator());
}

Cyclotomic Cyclotomic::sqrt_nonneg_int(long long n)
{
    if (n < 0) throw std::invalid_argument("sqrt_nonneg_int: negative argument");
    if (n == 0) return Cyclotomic(0);
    long long square = 1, free = 1, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square *= p;
        if (e % 2) free *= p;
    }
    if (m > 1) free *= m;
    Cyclotomic out(square);
    long long f = free;
    if (f % 2 == 0) {
        out *= root_of_unity(8, 1) + root_of_unity(8, -1);
        f /= 2;
    }
    for (long long p = 3; p <= f; p += 2) {
        if (f % p) continue;
        f /= p;
        // quadratic Gauss sum g_p = sum (a/p) z_p^a; g_p^2 = (-1/p) p
        Cyclotomic g;
        for (long long a = 1; a < p; ++a) {
            long long leg = 1, base = a % p, e = (p - 1) / 2;
            for (; e; e >>= 1, base = base * base % p)
                if (e & 1) leg = leg * base % p;
            g += root_of_unity(p, a) * Cyclotomic(leg == 1 ? 1 : -1);
        }
        if (p % 4 == 3) g *= root_of_unity(4, -1);
        out *= g;
    }
    return out;
}

std::vector<Rational> Cyclotomic::coeffs() const
{
    std::vector<Rational> c(N_, Rational(0));
    for (size_t k = 0; k < num_.size(); ++k) c[k] = Rational(num_[k], den_);
    return c;
}

Cyclotomic Cyclotomic::embed(long long M) const
{
    if (M % N_ != 0) throw std::invalid_argument("embed: target order must be a multiple");
    if (M == N_) return *this;
    const FieldData& f = field(M);
    long long step = M / N_;
    std::vector<i128> a(std::max<long long>(M, f.phi), 0);
    for (size_t k = 0; k < num_.size(); ++k) a[k * step] = num_[k];
    reduce(a, f);
    Cyclotomic out;
    out.N_ = M;
    out.den_ = den_;
    out.num_.resize(f.phi);
    for (long long j = 0; j < f.phi; ++j) out.num_[j] = narrow(a[j]);
    out.normalize();
    return out;
}

bool Cyclotomic::is_zero() const
{
    for (auto c : num_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (size_t k = 1; k < num_.size(); ++k)
        if (num_[k] != 0) return false;
    return true;
}

Rational Cyclotomic::to_rational() const
{
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return Rational(num_[0], den_);
}

std::complex<double> Cyclotomic::to_complex() const
{
    std::complex<double> z = 0;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (size_t k = 0; k < num_.size(); ++k)
        if (num_[k]) z += static_cast<double>(num_[k]) * std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(N_));
    return z / static_cast<double>(den_);
}

std::optional<Rational> Cyclotomic::root_of_unity_exponent() const
{
    auto z = to_complex();
    if (std::abs(std::abs(z) - 1.0) > 1e-6) return std::nullopt;
    long long L = (N_ % 2) ? 2 * N_ : N_;
    double t = std::arg(z) / (2.0 * std::acos(-1.0)) * static_cast<double>(L);
    long long k = std::llround(t);
    k %= L;
    if (k < 0) k += L;
    if (!(root_of_unity(L, k) == *this)) return std::nullopt;
    return Rational(k, L);
}

Cyclotomic Cyclotomic::conj() const
{
    const FieldData& f = field(N_);
    std::vector<i128> a(std::max<long long>(N_, f.phi), 0);
    for (size_t k = 0; k < num_.size(); ++k) a[(N_ - static_cast<long long>(k)) % N_] = num_[k];
    reduce(a, f);
    Cyclotomic out;
    out.N_ = N_;
    out.den_ = den_;
    out.num_.resize(f.phi);
    for (long long j = 0; j < f.phi; ++j) out.num_[j] = narrow(a[j]);
    return out;
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero()) throw std::domain_error("division by zero cyclotomic");
    if (is_rational()) return Cyclotomic(Rational(den_, num_[0]));
    // solve (multiplication by *this) x = 1 over Q
    const FieldData& f = field(N_);
    long long n = f.phi;
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (long long j = 0; j < n; ++j) {
        std::vector<i128> a(2 * n, 0);
        for (long long k = 0; k < n; ++k) a[k + j] = num_[k];
        reduce(a, f);
        for (long long i = 0; i < n; ++i) m[i][j] = mpq_class(static_cast<long>(narrow(a[i])));
    }
    m[0][n] = 1;
    for (long long c = 0; c < n; ++c) {
        long long p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("singular multiplication matrix");
        std::swap(m[p], m[c]);
        for (long long r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            mpq_class fct = m[r][c] / m[c][c];
            for (long long k = c; k <= n; ++k) m[r][k] -= fct * m[c][k];
        }
    }
    std::vector<Rational> sol(n);
    for (long long i = 0; i < n; ++i) {
        mpq_class v = m[i][n] / m[i][i] * mpq_class(static_cast<long>(den_));
        v.canonicalize();
        if (!v.get_num().fits_slong_p() || !v.get_den().fits_slong_p())
            throw std::overflow_error("cyclotomic coefficient overflow");
        sol[i] = Rational(v.get_num().get_si(), v.get_den().get_si());
    }
    return from_coeffs(N_, sol);
}

Cyclotomic Cyclotomic::pow(long long e) const
{
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r(1), b = *this;
    for (; e; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::add(const Cyclotomic& o, long long sign)
{
    if (o.N_ != N_) {
        long long L = lcm_checked(N_, o.N_);
        if (L != N_) *this = embed(L);
        if (L != o.N_) return add(o.embed(L), sign);
    }
    long long g = std::gcd(den_, o.den_);
    i128 fa = o.den_ / g, fb = den_ / g;
    for (size_t k = 0; k < num_.size(); ++k)
        num_[k] = narrow(add128(mul128(num_[k], fa), sign * mul128(o.num_[k], fb)));
    den_ = narrow(mul128(den_, fa));
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) { return add(o, 1); }
Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return add(o, -1); }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    if (o.N_ != N_) {
        long long L = lcm_checked(N_, o.N_);
        if (L != N_) *this = embed(L);
        if (L != o.N_) return *this *= o.embed(L);
    }
    if (N_ == 1) {
        i128 a = mul128(num_[0], o.num_[0]);
        i128 d = mul128(den_, o.den_);
        i128 g = gcd128(a, d);
        if (g == 0) g = 1;
        num_[0] = narrow(a / g);
        den_ = narrow(d / g);
        normalize();
        return *this;
    }
    const FieldData& f = field(N_);
    std::vector<i128> a(2 * f.phi, 0);
    for (long long i = 0; i < f.phi; ++i) {
        if (num_[i] == 0) continue;
        for (long long j = 0; j < f.phi; ++j)
            if (o.num_[j] != 0) a[i + j] = add128(a[i + j], mul128(num_[i], o.num_[j]));
    }
    reduce(a, f);
    i128 d = mul128(den_, o.den_);
    i128 g = d;
    for (auto c : a) {
        if (g == 1) break;
        g = gcd128(g, c);
    }
    for (long long k = 0; k < f.phi; ++k) num_[k] = narrow(a[k] / g);
    den_ = narrow(d / g);
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.N_ == b.N_) return a.den_ == b.den_ && a.num_ == b.num_;
    long long L = lcm_checked(a.N_, b.N_);
    Cyclotomic x = a.embed(L), y = b.embed(L);
    return x.den_ == y.den_ && x.num_ == y.num_;
}

bool compare(const Cyclotomic& a, const Cyclotomic& b) { return a == b; }

std::string Cyclotomic::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < num_.size(); ++k) {
        if (num_[k] == 0) continue;
        Rational c(num_[k], den_);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rational a = c < 0 ? -c : c;
        if (k == 0) os << mtc::to_string(a);
        else {
            if (a != 1) os << mtc::to_string(a) << "*";
            os << "z" << N_;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace mtc
