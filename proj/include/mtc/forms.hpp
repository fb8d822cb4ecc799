#pragma once

#include "mtc/abelian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtc {

using RatMat = std::vector<std::vector<Rational>>;

// gamma: left x right -> T, gamma(g,h) = e^{2 pi i g^T E h}
class Pairing {
public:
    Pairing() = default;
    Pairing(FinAbGroup left, FinAbGroup right, RatMat E);
    static Pairing square(const FinAbGroup& G, RatMat E) { return Pairing(G, G, std::move(E)); }
    static Pairing zero(const FinAbGroup& left, const FinAbGroup& right);

    const FinAbGroup& left() const { return L_; }
    const FinAbGroup& right() const { return R_; }
    const RatMat& matrix() const { return E_; }
    Rational value(const Element& g, const Element& h) const;

    bool is_square() const { return L_ == R_; }
    bool is_symmetric() const;
    bool is_alternating() const;  // gamma(g,g) = 1 for all g
    bool is_nondegenerate() const;

    Pairing transpose() const;
    Pairing operator*(const Pairing& o) const;  // pointwise product
    Pairing inverse() const;
    friend bool operator==(const Pairing& a, const Pairing& b) { return a.L_ == b.L_ && a.R_ == b.R_ && a.E_ == b.E_; }
    friend bool operator!=(const Pairing& a, const Pairing& b) { return !(a == b); }
    friend bool operator<(const Pairing& a, const Pairing& b) { return a.E_ < b.E_; }

private:
    FinAbGroup L_, R_;
    RatMat E_;
};

Pairing standard_pairing(const FinAbGroup& G);
Subgroup pairing_radical(const Pairing& g);
// Every pairing left x right -> T (finite enumeration for tests and lemma checks).
std::vector<Pairing> all_pairings(const FinAbGroup& left, const FinAbGroup& right);
std::vector<Pairing> symmetric_pairings(const FinAbGroup& G);
std::vector<Pairing> alternating_pairings(const FinAbGroup& G);
long long alternating_pairing_count(const FinAbGroup& G);  // prod_{i>=2} n_i^{i-1}

class QuadraticForm {
public:
    QuadraticForm() = default;
    // values indexed by lexicographic element index; validated unless check = false
    QuadraticForm(FinAbGroup G, std::vector<Rational> values, bool check = true);
    // Builds the table on the invariant-factor group of Z_{o_1} x ... x Z_{o_r}.
    static QuadraticForm from_components(const std::vector<long long>& orders,
                                         const std::function<Rational(const std::vector<long long>&)>& f);

    const FinAbGroup& group() const { return G_; }
    const std::vector<Rational>& values() const { return v_; }
    Rational value(const Element& g) const { return v_[G_.index(g)]; }
    Rational value_at(size_t idx) const { return v_[idx]; }
    // first failure of q(-g)=q(g), biadditivity or nondegeneracy; empty if valid
    std::string defect() const;

    QuadraticForm conj() const;
    QuadraticForm pullback(const Hom& a) const;  // q o a
    QuadraticForm times_character(const Character& c) const;
    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) { return a.G_ == b.G_ && a.v_ == b.v_; }
    friend bool operator!=(const QuadraticForm& a, const QuadraticForm& b) { return !(a == b); }

private:
    FinAbGroup G_;
    std::vector<Rational> v_;
};

// Orthogonal sum on the invariant-factor form of G1 x G2.
QuadraticForm orthogonal_sum(const QuadraticForm& a, const QuadraticForm& b);
Pairing polarization(const QuadraticForm& q);
std::vector<QuadraticForm> forms_for_pairing(const Pairing& g);

struct GaussSum {
    Cyclotomic sum;
    Cyclotomic normalized;
    int signature_mod_8 = 0;
};
GaussSum gauss_sum(const QuadraticForm& q);
// canonical x = e^{-2 pi i sigma/24}
Cyclotomic canonical_x(const QuadraticForm& q);

struct Descriptor {
    enum class Kind { OddPrime, TwoCyclic, TwoTwoI, TwoTwoII };
    Kind kind = Kind::OddPrime;
    long long p = 3;
    int k = 1;
    int s = 1;  // OddPrime: Legendre symbol of m
    int m = 1;  // TwoCyclic: one of 1,-1,3,-3
    static Descriptor parse(const std::string& text);
    std::string to_string() const;
};
std::vector<Descriptor> parse_descriptors(const std::string& text);  // comma separated orthogonal sum

struct IndecomposableForm {
    QuadraticForm q;
    Cyclotomic x_cubed;
};
IndecomposableForm indecomposable_form(const Descriptor& d);
IndecomposableForm form_from_descriptors(const std::vector<Descriptor>& ds);

std::optional<Hom> forms_equivalent(const QuadraticForm& a, const QuadraticForm& b);
// Aut(G)-orbit classes of a list of forms on one group: class index per form.
std::vector<int> form_classes(const std::vector<QuadraticForm>& forms);
std::vector<int> form_classes_serial(const std::vector<QuadraticForm>& forms);
const std::vector<Hom>& cached_automorphisms(const FinAbGroup& G);

struct ImageData {
    Subgroup J0;      // in the right group
    Subgroup kernel;  // in the left group
};
ImageData pairing_image_data(const Pairing& eps);

// Every abelian group (invariant factors) of the given order.
std::vector<FinAbGroup> abelian_groups_of_order(long long n);

}  // namespace mtc
