#pragma once

#include "mtc/scalars.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mtc {

using IntMat = std::vector<std::vector<long long>>;
using Element = std::vector<long long>;

// Enumeration guard for brute-force routines; 1024 unless changed.
long long enumeration_guard();
void set_enumeration_guard(long long n);

struct SmithForm {
    IntMat P, D, Q;      // P*M*Q = D
    IntMat Pinv, Qinv;
};

SmithForm smith_normal_form(const IntMat& M);
IntMat mat_mul(const IntMat& A, const IntMat& B);
IntMat identity_matrix(size_t n);

class FinAbGroup {
public:
    FinAbGroup() = default;
    // factors must satisfy n_t | ... | n_1, all >= 2
    explicit FinAbGroup(std::vector<long long> factors);
    // Any list of cyclic orders; normalized to invariant factors (no coordinate map).
    static FinAbGroup from_cyclic_orders(const std::vector<long long>& orders);
    static FinAbGroup parse(const std::string& spec);  // "3", "2x2", "4x2"

    const std::vector<long long>& factors() const { return factors_; }
    size_t rank() const { return factors_.size(); }
    long long order() const;
    long long exponent() const { return factors_.empty() ? 1 : factors_[0]; }

    Element zero() const { return Element(rank(), 0); }
    Element reduce(Element e) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scale(long long k, const Element& a) const;
    long long element_order(const Element& a) const;
    bool is_zero(const Element& a) const;

    // lexicographic enumeration (last coordinate fastest)
    size_t index(const Element& a) const;
    Element element(size_t idx) const;
    std::vector<Element> elements() const;
    Element basis(size_t i) const;

    std::string to_string() const;
    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) { return !(a == b); }

private:
    std::vector<long long> factors_;
};

FinAbGroup direct_product(const FinAbGroup& a, const FinAbGroup& b);

// Z^k modulo a relation lattice, rewritten in invariant-factor coordinates.
struct Presentation {
    FinAbGroup group;
    IntMat Q, Qinv;
    std::vector<size_t> cols;  // SNF columns carrying factor i
    std::vector<long long> divisors;

    // relations: rows of an integer matrix with k columns
    static Presentation from_relations(size_t k, const IntMat& relations);
    Element map(const std::vector<long long>& x) const;
    std::vector<long long> lift(const Element& e) const;
};

class Subgroup {
public:
    Subgroup() = default;
    static Subgroup generated(const FinAbGroup& G, const std::vector<Element>& gens);
    static Subgroup trivial(const FinAbGroup& G);
    static Subgroup full(const FinAbGroup& G);

    const FinAbGroup& ambient() const { return G_; }
    const IntMat& hnf() const { return H_; }
    long long order() const;
    long long index() const { return G_.order() / order(); }
    bool contains(const Element& e) const;
    bool contains(const Subgroup& K) const;
    std::vector<Element> elements() const;
    // Invariant-factor generators h_1..h_s with ord(h_s) | ... | ord(h_1).
    std::vector<Element> basis() const;
    std::vector<long long> basis_orders() const;
    // Coordinates of an element of H with respect to basis().
    std::vector<long long> coordinates(const Element& e) const;
    Subgroup join(const Subgroup& K) const;
    Subgroup meet(const Subgroup& K) const;
    // As an abstract group in invariant-factor form.
    FinAbGroup as_group() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.G_ == b.G_ && a.H_ == b.H_; }
    friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }
    friend bool operator<(const Subgroup& a, const Subgroup& b);

private:
    FinAbGroup G_;
    IntMat H_;  // upper triangular, positive diagonal dividing n_i
    mutable std::vector<Element> basis_cache_;
    mutable std::vector<long long> basis_orders_cache_;
    void compute_basis() const;
};

struct Character {
    FinAbGroup group;
    Element exponents;
    Rational value(const Element& g) const;  // exponent r of e^{2 pi i r}
};

class Hom {
public:
    Hom() = default;
    // matrix has codomain.rank() rows and domain.rank() columns; column j is the image of basis j
    Hom(FinAbGroup domain, FinAbGroup codomain, IntMat matrix);
    static Hom from_images(const FinAbGroup& domain, const FinAbGroup& codomain, const std::vector<Element>& images);

    const FinAbGroup& domain() const { return dom_; }
    const FinAbGroup& codomain() const { return cod_; }
    const IntMat& matrix() const { return M_; }
    Element operator()(const Element& g) const;
    Hom compose(const Hom& inner) const;  // this o inner
    friend bool operator==(const Hom& a, const Hom& b);

private:
    FinAbGroup dom_, cod_;
    IntMat M_;
};

struct Quotient {
    FinAbGroup group;
    Hom projection;
    std::vector<Element> representatives;  // indexed by quotient element index
};

std::vector<Subgroup> all_subgroups(const FinAbGroup& G);
// Subgroups of a given order, enumerated without building the whole lattice.
std::vector<Subgroup> subgroups_of_order(const FinAbGroup& G, long long order);
Quotient quotient(const FinAbGroup& G, const Subgroup& H);
std::pair<Subgroup, Subgroup> hom_kernel_image(const Hom& f);
std::vector<Hom> automorphisms(const FinAbGroup& G);
std::vector<Character> dual_characters(const FinAbGroup& G);

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
long long mod_ll(long long a, long long n);

}  // namespace mtc
