#pragma once

#include "mtc/forms.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mtc {

struct Lattice {
    IntMat gram;
    size_t rank() const { return gram.size(); }
    std::string defect() const;  // empty if symmetric, even and positive definite
};
Lattice make_lattice(IntMat gram);  // throws invalid_argument unless even positive definite
Lattice direct_sum(const Lattice& a, const Lattice& b);
long long determinant(const IntMat& M);
RatMat inverse_matrix(const IntMat& M);

// Rational coordinates with respect to the lattice basis.
using DualVector = std::vector<Rational>;
Rational dot(const Lattice& L, const DualVector& u, const DualVector& v);
bool in_dual(const Lattice& L, const DualVector& u);

struct Discriminant {
    FinAbGroup group;
    QuadraticForm q;               // q([u]) = u.u/2 mod 1
    std::vector<DualVector> reps;  // by element index
    Presentation pres;             // Z^n / gram Z^n, with y = gram u
    IntMat gram;
    Element class_of(const DualVector& u) const;
};
Discriminant discriminant(const Lattice& L);

struct Glued {
    Lattice lattice;
    std::vector<DualVector> basis;  // new basis in the old coordinates
};
// L + sum Z u_i; each u_i in L*, u_i.u_i even, u_i.u_j integral.
Glued glue_with_basis(const Lattice& L, const std::vector<DualVector>& cosets);
Lattice glue(const Lattice& L, const std::vector<DualVector>& cosets);
// Every vector of small lies in the Z-span of big (both in common coordinates).
bool lattice_contains(const std::vector<DualVector>& big, const std::vector<DualVector>& small);

// "A_n", "D_n", "E6", "E7", "E8", "sqrt2n(n)"; "A2", "D4", "sqrt2n:3" are accepted too.
Lattice named(const std::string& name);

struct SearchBounds {
    int max_components = 4;        // summands of the base lattice
    long long max_glue_order = 16;
    long long prime_bound = 10000;  // p' search for p = 1 mod 4
};
struct NotRealized : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Realization {
    Lattice lattice;
    std::string construction;
};
// Indecomposables are built as in the constructive proof where it applies, else by bounded search.
Realization realize(const std::vector<Descriptor>& ds, const SearchBounds& b = {});
// Bounded search over gluings of sums of named lattices.
Realization realize(const QuadraticForm& q, const SearchBounds& b = {});

// L inside M = L + sum Z gens; M/L is a subgroup of the discriminant group of L.
struct Overlattice {
    Lattice L;
    std::vector<DualVector> gens;
    Discriminant disc;
    Subgroup quotient;  // M/L in disc.group
};
Overlattice overlattice(const Lattice& L, const std::vector<DualVector>& gens);
// M_H for H a subgroup of O.quotient.as_group().
Glued intermediate_lattice(const Overlattice& O, const Subgroup& H);
struct IntermediatePair {
    Glued lower;  // M_H
    Glued upper;  // M^H = M_{H^perp}
};
IntermediatePair intermediate(const Overlattice& O, const Subgroup& H, const Pairing& gamma);

}  // namespace mtc
