#pragma once

#include "mtc/abelian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtc {

using CycMat = std::vector<std::vector<Cyclotomic>>;

CycMat cyc_mul(const CycMat& A, const CycMat& B);
CycMat cyc_mul_diag(const CycMat& A, const std::vector<Cyclotomic>& d);  // A * diag(d)
CycMat cyc_adjoint(const CycMat& A);
CycMat cyc_identity(size_t n);
long long common_order(const CycMat& A);

struct ModularData {
    std::vector<std::string> labels;
    CycMat S;
    std::vector<Cyclotomic> T;
    size_t unit = 0;

    size_t size() const { return labels.size(); }
    size_t index(const std::string& label) const;  // throws if absent
    long long field_order() const;
    // Same data with every entry written at the common cyclotomic order.
    ModularData embedded() const;
};

// Deligne product; labels "a|b", unit (u1,u2).
ModularData deligne_product(const ModularData& a, const ModularData& b);

struct ValidationReport {
    std::vector<std::string> failures;
    std::vector<size_t> charge_conjugation;  // empty if S^2 is not a permutation
    // (ST)^3 = e^{2 pi i r} S^2 when the two are proportional by a root of unity
    std::optional<Rational> st_cube_phase;
    bool ok() const { return failures.empty(); }
};
ValidationReport validate_modular(const ModularData& md, bool check_verlinde = true);

struct FusionRules {
    size_t n = 0;
    std::vector<long long> N;  // N[(a*n+b)*n+c] = N_{ab}^c
    long long operator()(size_t a, size_t b, size_t c) const { return N[(a * n + b) * n + c]; }
};
// Throws std::domain_error when a coefficient is not a nonnegative integer.
FusionRules verlinde(const ModularData& md);
FusionRules verlinde_serial(const ModularData& md);
// Commutativity, unit, associativity and duality; empty if all hold.
std::string fusion_ring_defect(const FusionRules& f, size_t unit);

struct SimpleCurrentStructure {
    FinAbGroup group;
    std::vector<size_t> primary;            // group element index -> primary
    std::vector<size_t> element;            // primary -> group element index, npos if not a current
    std::vector<std::vector<size_t>> perm;  // group element index -> permutation of primaries
    std::vector<std::vector<Rational>> Q;   // Q[b][j]: Q_b(j) = S_{j,b}/S_{0,b} = e^{2 pi i Q[b][j]}
    std::vector<Rational> q;                // q(j) = T_{j,j} conj T_{0,0}
    std::vector<bool> quaternionic;
    bool sufficiently_nonzero = false;

    static constexpr size_t npos = static_cast<size_t>(-1);
    size_t act(size_t j, size_t a) const { return perm[j][a]; }
    Rational pairing(size_t j, size_t jp) const { return Q[primary[j]][jp]; }  // <j,j'> = Q_j(j')
};
SimpleCurrentStructure simple_currents(const ModularData& md);

struct ModularInvariant {
    IntMat matrix;
    std::string provenance;
};

struct InvariantCheck {
    bool ok = false;
    std::vector<std::string> failures;
    std::vector<std::string> proposition1;  // violated consequences of Z_{j,j'} != 0
};
InvariantCheck check_invariant(const ModularData& md, const IntMat& Z, const SimpleCurrentStructure* sc = nullptr);

// All nonnegative integer Z commuting with S and T with Z_{0,0} = 1 and entries <= bound
// (bound < 0 means |Phi|). Sorted lexicographically.
std::vector<ModularInvariant> brute_force_invariants(const ModularData& md, long long entry_bound = -1);
std::vector<ModularInvariant> brute_force_invariants_serial(const ModularData& md, long long entry_bound = -1);
// Dimension of the commutant of S and T over Q.
size_t commutant_dimension(const ModularData& md);

// Upper limit on free variables in the integer search; 60 unless changed.
size_t oracle_free_limit();
void set_oracle_free_limit(size_t n);

}  // namespace mtc
