#pragma once

#include "mtc/forms.hpp"
#include "mtc/modular.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtc {

// Pairings on a subgroup J of the simple currents are written on J.as_group(), whose
// i-th generator is J.basis()[i]; value(j, j') is the exponent of eps_j(j').

struct QuaternionicElement : std::domain_error {
    Element witness;       // element of the simple-current group
    long long order;       // ord(j)
    Rational power;        // q(j)^{ord j} = e^{2 pi i power}, here 1/2
    QuaternionicElement(const std::string& what, Element w, long long o, Rational p)
        : std::domain_error(what), witness(std::move(w)), order(o), power(p) {}
};

struct SCParam {
    Subgroup J;
    Pairing psi;
    Pairing epsilon;
    std::vector<int> phi;  // signs on J.basis(); empty unless built for the S-only variant
};

// Element of the ambient current group for J-coordinates x.
Element subgroup_element(const Subgroup& J, const Element& x);
// Index into sc.primary of the ambient element.
size_t current_index(const SimpleCurrentStructure& sc, const Element& g);

// Throws QuaternionicElement naming the first quaternionic element of J.
void require_quaternionic_free(const SimpleCurrentStructure& sc, const Subgroup& J);

// eps^J built from the generator chain h_1..h_s (default J.basis()); phi multiplies q(h_i) by a sign.
Pairing base_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const std::vector<int>& phi = {});
Pairing chain_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const std::vector<Element>& chain,
                      const std::vector<int>& phi = {});
// Empty if eps obeys Q_j(j') eps_j(j') eps_j'(j) = 1 and (when with_t) eps_j(j) = q(j).
std::string epsilon_defect(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& eps, bool with_t = true);

SCParam make_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& psi);

// Z_{a,ja} = |J0|/||J0 a|| wherever Q_a|_J = eps_j.
IntMat sc_matrix_raw(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& eps);
ModularInvariant sc_matrix(const ModularData& md, const SimpleCurrentStructure& sc, const SCParam& p);

struct SCEntry {
    SCParam param;
    ModularInvariant invariant;
};
struct SCEnumeration {
    std::vector<SCEntry> entries;
    std::vector<std::pair<size_t, size_t>> collisions;  // (later, earlier) entries with equal matrices
    std::vector<IntMat> distinct;                        // sorted
    bool sufficiently_nonzero = false;
};
SCEnumeration enumerate_sc(const ModularData& md, const SimpleCurrentStructure& sc);
SCEnumeration enumerate_sc_serial(const ModularData& md, const SimpleCurrentStructure& sc);

// Theorem 1(b) direction: the (J, eps) of a simple-current invariant read off from its entries.
struct RecoveredParam {
    Subgroup J;
    Pairing epsilon;
};
std::optional<RecoveredParam> recover_parameters(const SimpleCurrentStructure& sc, const IntMat& Z);

struct ProductResult {
    long long n = 0;
    IntMat Z3;                  // Z1 Z2^T / n
    bool divisible = false;
    std::optional<size_t> entry;  // index into the enumeration with matrix Z3
    Subgroup J_formula;           // {j0 - j0' : eps_*(j0) = eps'_*(j0') on J cap J'}
    std::optional<Pairing> eps_formula;
    std::string formula_defect;   // empty when eps_formula is a well-defined pairing reproducing Z3
};
ProductResult invariant_product(const ModularData& md, const SimpleCurrentStructure& sc, const SCEnumeration& all,
                                size_t i1, size_t i2);

// Theorem 1(c): commutes with S, not necessarily T. phi are signs on J.basis().
IntMat s_only_matrix(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& psi, const std::vector<int>& phi);
bool commutes_with_s(const ModularData& md, const IntMat& Z);

IntMat transpose(const IntMat& Z);

}  // namespace mtc
