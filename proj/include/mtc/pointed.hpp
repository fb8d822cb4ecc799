#pragma once

#include "mtc/simple_current.hpp"

#include <map>

namespace mtc {

struct PointedData {
    QuadraticForm q;
    Cyclotomic x;  // x^3 times the normalized Gauss sum is 1
    const FinAbGroup& group() const { return q.group(); }
};
PointedData pointed_data(const QuadraticForm& q);

// Primaries are the elements of G in lexicographic index order; labels "a,b,...".
ModularData weil(const QuadraticForm& q);
std::string element_label(const Element& g);

// top/bottom with bottom <= top <= G, and lookup tables for the projection.
struct SubQuotient {
    Subgroup top, bottom;
    FinAbGroup group;
    std::map<Element, Element> project;  // element of top -> class
    std::vector<Element> lift;           // class index -> representative in top
};
SubQuotient subquotient(const Subgroup& top, const Subgroup& bottom);

Subgroup perp(const QuadraticForm& q, const Subgroup& D);

struct Isotropic {
    Subgroup D, Dperp;
    SubQuotient quotient;   // D^perp / D
    QuadraticForm induced;  // q on D^perp / D
};
std::vector<Isotropic> isotropic_subgroups(const QuadraticForm& q);
Isotropic isotropic_data(const QuadraticForm& q, const Subgroup& D);

// All isomorphisms a -> b carrying qa to qb.
std::vector<Hom> isometries(const QuadraticForm& qa, const QuadraticForm& qb);

struct DPMParam {
    Subgroup D_plus, D_minus;
    Hom sigma;  // isotropic_data(q, D_plus).quotient.group -> isotropic_data(q, D_minus).quotient.group
};
std::string dpm_defect(const QuadraticForm& q, const DPMParam& p);
std::vector<DPMParam> enum_dpm(const QuadraticForm& q);
std::vector<DPMParam> enum_dpm_serial(const QuadraticForm& q);

// G x G with coordinates (g, h).
struct DoubleGroup {
    FinAbGroup G, GG;
    Presentation pres;
    explicit DoubleGroup(const FinAbGroup& g);
    Element pair(const Element& g, const Element& h) const;
    std::pair<Element, Element> split(const Element& e) const;
};

struct ZParam {
    Subgroup Z;  // of DoubleGroup(G).GG
};
// Z = Z^perp for <(g,h),(g',h')>_2 = <g,g'> conj<h,h'>, and q(g) conj q(h) = 1 on Z if isotropic.
std::string z_defect(const QuadraticForm& q, const ZParam& z, bool require_isotropy = true);
std::vector<ZParam> enum_z(const QuadraticForm& q, bool require_isotropy = true);
IntMat z_to_matrix(const QuadraticForm& q, const ZParam& z);

// Pull-back 0 -> D_- -> Z -> D_+^perp -> 0.
ZParam dpm_to_z(const QuadraticForm& q, const DPMParam& p);
DPMParam z_to_dpm(const QuadraticForm& q, const ZParam& z);
// sc must come from weil(q), whose primary indices are the element indices of G.
DPMParam jpsi_to_dpm(const QuadraticForm& q, const SimpleCurrentStructure& sc, const SCParam& p);

// Matrix for g at index G.index(g) acting on Z[G/J] by [h] -> [g+h].
struct Nimrep {
    Quotient classes;
    std::vector<IntMat> matrices;
};
Nimrep nimrep(const FinAbGroup& G, const Subgroup& J);

// The full system is the push-out of G <- D_+^perp -> G/D_-, an extension of G/D_+^perp by G/D_-.
struct AlphaInduction {
    FinAbGroup full;
    Hom alpha_plus, alpha_minus;  // G -> full
};
AlphaInduction alpha_induction(const PointedData& pd, const DPMParam& p);
IntMat alpha_matrix(const AlphaInduction& a);  // delta(alpha_+(l), alpha_-(m))

}  // namespace mtc
