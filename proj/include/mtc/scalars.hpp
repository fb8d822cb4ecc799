#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Under C++20 rewritten comparisons, boost's templated rational == integer
// overloads call each other forever; these exact matches win overload resolution.
namespace boost {
#define MTC_RATIONAL_INT_EQ(T)                                                                      \
    inline bool operator==(const rational<long long>& a, T b) { return a.denominator() == 1 && a.numerator() == b; } \
    inline bool operator==(T b, const rational<long long>& a) { return a == b; }                    \
    inline bool operator!=(const rational<long long>& a, T b) { return !(a == b); }                 \
    inline bool operator!=(T b, const rational<long long>& a) { return !(a == b); }
MTC_RATIONAL_INT_EQ(int)
MTC_RATIONAL_INT_EQ(long)
MTC_RATIONAL_INT_EQ(long long)
#undef MTC_RATIONAL_INT_EQ
}  // namespace boost

namespace mtc {

using Rational = boost::rational<long long>;

// Exponent of a phase e^{2 pi i r}, kept in [0,1).
Rational mod1(const Rational& r);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Upper bound on cyclotomic orders; 10^6 unless changed.
long long cyclotomic_order_guard();
void set_cyclotomic_order_guard(long long n);

// Element of Q(zeta_N), stored as integer numerators over one common
// denominator in the power basis 1, z, ..., z^{phi(N)-1} modulo Phi_N.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long long n);  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& r);  // NOLINT(google-explicit-constructor)

    static Cyclotomic root_of_unity(long long N, long long k);
    // e^{2 pi i r}
    static Cyclotomic phase(const Rational& r);
    static Cyclotomic sqrt_nonneg_int(long long n);
    static Cyclotomic from_coeffs(long long N, const std::vector<Rational>& c);

    long long order() const { return N_; }
    // Exactly N coefficients; entries past phi(N) are zero.
    std::vector<Rational> coeffs() const;
    Cyclotomic embed(long long M) const;

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;
    std::complex<double> to_complex() const;  // display and rounding hints only
    // Returns r in [0,1) when the value is e^{2 pi i r}.
    std::optional<Rational> root_of_unity_exponent() const;

    Cyclotomic conj() const;
    Cyclotomic inverse() const;
    Cyclotomic pow(long long e) const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    std::string to_string() const;

private:
    long long N_ = 1;
    std::vector<long long> num_;  // length phi(N)
    long long den_ = 1;

    void normalize();
    Cyclotomic& add(const Cyclotomic& o, long long sign);
};

bool compare(const Cyclotomic& a, const Cyclotomic& b);

// Cyclotomic polynomial coefficients, constant term first.
const std::vector<long long>& cyclotomic_polynomial(long long N);
long long euler_phi(long long n);

}  // namespace mtc
