#pragma once

#include "mtc/forms.hpp"
#include "mtc/modular.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtc {

struct TYData {
    FinAbGroup G;
    Pairing pairing;  // symmetric nondegenerate on G
    int sign = 1;
    std::string defect() const;  // empty if valid
};
TYData ty_data(const Pairing& pairing, int sign);  // throws invalid_argument on a bad pairing or sign

// Exponents of the chosen square roots; the canonical choice halves the exponent in [0,1).
struct SqrtConvention {
    std::vector<Rational> sqrt_q;  // sqrt(q(g)) by element index
    Rational inv_sqrt_sx3;         // (s x^3)^{-1/2}
    std::string defect(const QuadraticForm& q, int sign) const;
};
SqrtConvention canonical_sqrt(const QuadraticForm& q, int sign);
// |G| odd: sqrt q(h) = q(h/2)^2, so that sqrt q(h+2g) = sqrt q(h) q(g)^2 conj<h,g>.
// With it beta^g_s rho^h_s' = rho^{h+2g}_{ss'} holds label for label. Throws for even |G|.
SqrtConvention coherent_sqrt(const QuadraticForm& q, int sign);

struct FusionRing {
    std::vector<std::string> labels;
    size_t unit = 0;
    FusionRules N;
    size_t index(const std::string& label) const;
};
// alpha(g) in element order, then rho.
FusionRing ty_fusion(const FinAbGroup& G);
// Largest eigenvalue of the fusion matrix of a (power iteration; a display value).
double pf_dimension(const FusionRing& R, size_t a);

// F^{abc}_d: rows e with a b -> e, e c -> d; columns f with b c -> f, a f -> d.
struct FSymbols {
    FusionRing ring;
    std::map<std::array<size_t, 4>, CycMat> F;
    std::vector<size_t> rows(size_t a, size_t b, size_t c, size_t d) const;
    std::vector<size_t> cols(size_t a, size_t b, size_t c, size_t d) const;
    Cyclotomic entry(size_t a, size_t b, size_t c, size_t d, size_t e, size_t f) const;
};
// a_{psi,rho,phi} = <psi,phi>, a_{rho,psi,rho} = <psi,phi> on the phi component,
// a_{rho,rho,rho} = s |G|^{-1/2} conj<psi,phi>; everything else 1.
FSymbols ty_associator(const TYData& d);

struct PentagonReport {
    bool ok = true;
    size_t equations = 0;
    std::string witness;  // first violation
};
// Throws invalid_argument when an F matrix has the wrong shape.
PentagonReport pentagon_check(const FSymbols& F);
PentagonReport pentagon_check_serial(const FSymbols& F);

// Labels beta_i(g), rho_i(g), sigma(g;h) with g < h in element order; unit beta_0(0).
ModularData ty_double(const TYData& d, const QuadraticForm& q, const SqrtConvention& conv);
ModularData ty_double(const TYData& d, const QuadraticForm& q);
// N from the fusion list of the double, with s = + read as i = 0.
FusionRules ty_double_fusion_list(const FinAbGroup& G, const std::vector<std::string>& labels);

// sum_k <k - a, k> for the pairing <l,l'> = zeta_{p^k}^{c l l'} (resp. zeta_{2^k}^{m l l'}).
Cyclotomic rho_sum_direct(long long modulus, long long c, long long a);
// Closed forms: type p^k_s with s the Legendre symbol of c, and type 2^k_m.
Cyclotomic rho_sum_closed_odd(long long p, int k, long long c, long long a);
Cyclotomic rho_sum_closed_two(int k, long long m, long long a);            // as printed, prefactor (1 - i)
Cyclotomic rho_sum_closed_two_corrected(int k, long long m, long long a);  // prefactor (1 + i)

struct TYEquivariant {
    ModularData md;
    bool degenerate = false;
    std::optional<std::pair<size_t, size_t>> equal_rows;  // certificate when degenerate
    Rational lambda_squared;                                // S_{beta+,beta+}^2
    Cyclotomic x;                                           // T = x theta
};
// |G| odd: beta+, beta-, sigma(g) for g a representative of {g,-g}, rho+, rho-.
// |G| even: beta+(h), beta-(h) for 2h = 0 replace beta+-, and the S matrix is degenerate.
TYEquivariant ty_equiv(const TYData& d);
// The displayed formulas verbatim (lambda = 1/(2|G|), S_{rho,beta} = tt'/2); not modular data.
ModularData ty_equiv_literal(const TYData& d);

// q_L(g) = <g,g>, the form whose Weil T matches the sigma twists.
QuadraticForm ty_lattice_form(const TYData& d);

struct ModuleNimrep {
    std::vector<std::string> labels;  // chi(lambda) for characters of rad(psi), then rho[k] for cosets
    std::vector<IntMat> matrices;     // per ty_fusion simple, M[target][source]
    size_t irreps = 0;                // number of chi labels
    long long irrep_dim = 1;
};
// psi: alternating pairing on H.as_group().
ModuleNimrep ty_module_nimrep(const TYData& d, const Subgroup& H, const Pairing& psi);
// Empty if M_X M_Y = sum_Z N_{XY}^Z M_Z for all X, Y.
std::string nimrep_defect(const FusionRing& R, const std::vector<IntMat>& M);
Subgroup pairing_perp(const Pairing& p, const Subgroup& H);
// Label bijection Bun(X//H) -> Bun(X//H^perp) (psi trivial): target index per source index.
std::vector<size_t> module_equivalence(const TYData& d, const Subgroup& H);

// B Z B^T for the simple-current invariant of Weil(q) with parameters (H, psi); q must satisfy q(g) = <g,g>.
ModularInvariant equiv_invariant(const TYData& d, const QuadraticForm& q, const Subgroup& H, const Pairing& psi);
IntMat branching_matrix(const TYData& d);  // ty_equiv primaries x elements of G

// 0, b, c(alpha) for alpha over (Z_nu^2 - 0)/+-, d(a) for a over (Z_{nu^2+4} - 0)/+-.
FusionRing hg_fusion(long long nu);

}  // namespace mtc
