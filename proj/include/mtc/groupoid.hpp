#pragma once

#include "mtc/forms.hpp"
#include "mtc/ty.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mtc {

// X//G for a finite set X and a finite abelian group G.
struct ActionGroupoid {
    FinAbGroup G;
    std::vector<std::string> points;
    std::vector<std::vector<size_t>> act;  // act[g index][x]
    std::optional<Pairing> twist;          // alternating, seen only through stabilizers
    size_t size() const { return points.size(); }
    size_t apply(const Element& g, size_t x) const { return act[G.index(g)][x]; }
    std::string defect() const;  // empty if the table is an action
};
ActionGroupoid make_groupoid(const FinAbGroup& G, std::vector<std::string> points,
                             const std::function<size_t(const Element&, size_t)>& act,
                             std::optional<Pairing> twist = std::nullopt);
ActionGroupoid point_groupoid(const FinAbGroup& G);           // pt//G
ActionGroupoid discrete_groupoid(size_t n);                   // n points, trivial group
ActionGroupoid coset_groupoid(const FinAbGroup& G, const Subgroup& S);  // G/S with G translating

struct Orbit {
    size_t rep;  // smallest point of the orbit
    std::vector<size_t> points;
    Subgroup stabilizer;
};
std::vector<Orbit> orbits(const ActionGroupoid& X);

// Per orbit, the characters of the stabilizer (untwisted) or of the twist's radical on it (twisted).
struct KBasis {
    std::vector<Orbit> orbits;
    std::vector<size_t> orbit_of;              // per point
    std::vector<Subgroup> character_domain;    // per orbit: stabilizer, or the radical when twisted
    std::vector<size_t> label_orbit;           // per label
    std::vector<Element> label_character;      // exponents of a character of G restricting to it
    std::vector<long long> label_dim;          // 1, or sqrt(|S/R|) when twisted
    std::vector<std::string> names;
    size_t size() const { return label_orbit.size(); }
    // Label on orbit o whose character takes value chi(s) on every s in the stabilizer (radical if twisted).
    std::optional<size_t> find(size_t o, const std::function<Rational(const Element&)>& chi) const;
};
KBasis k_basis(const ActionGroupoid& X);

// A functor of action groupoids: an equivariant map on points over a homomorphism.
struct GroupoidMap {
    std::vector<size_t> on_points;
    Hom on_groups;
};
std::string map_defect(const ActionGroupoid& src, const ActionGroupoid& tgt, const GroupoidMap& m);
GroupoidMap identity_map(const ActionGroupoid& X);

// source <-f- (mid, E) -b-> target; E is a K-class on mid in k_basis(mid) coordinates.
struct Correspondence {
    ActionGroupoid source, mid, target;
    GroupoidMap f, b;
    std::vector<long long> E;
    std::string defect() const;
};
// b_!(f^*(-) (x) E) as a matrix: rows k_basis(target), columns k_basis(source). Untwisted groupoids only.
IntMat corr_matrix(const Correspondence& c);
// c1 then c2 through the weak pullback; corr_matrix(compose(c1, c2)) = corr_matrix(c2) corr_matrix(c1).
Correspondence compose(const Correspondence& c1, const Correspondence& c2);
Correspondence identity_correspondence(const ActionGroupoid& X);
// pt <- n points -> pt
Correspondence number_correspondence(long long n);
// pt <- (pt//G, V) -> pt//G with V given by multiplicities over k_basis(point_groupoid(G))
Correspondence representation_correspondence(const FinAbGroup& G, const std::vector<long long>& V);
// pt <- (x//G_x, V) -> X for a basis label of X
Correspondence basis_correspondence(const ActionGroupoid& X, size_t label);
// The two legs (pt//G, V*) -> pt and pt -> (pt//G, W), with V, W labels of k_basis(point_groupoid(G)).
std::pair<Correspondence, Correspondence> matrix_unit_legs(const FinAbGroup& G, size_t V, size_t W);
Correspondence matrix_unit(const FinAbGroup& G, size_t V, size_t W);
IntMat matrix_product(const IntMat& A, const IntMat& B);

// Small random correspondence between given groupoids (used for functoriality checks).
Correspondence random_correspondence(std::mt19937_64& rng, const ActionGroupoid& source, const ActionGroupoid& target);
ActionGroupoid random_groupoid(std::mt19937_64& rng);

// Product of bundles over X//G from M : X x X -> X and a diagonally stable Y in X x X.
struct ProductRule {
    std::vector<std::vector<size_t>> M;  // M[x][y]
    std::vector<std::vector<bool>> Y;    // Y[x][y]
};
std::string product_defect(const ActionGroupoid& X, const ProductRule& r);
std::vector<long long> bundle_product(const ActionGroupoid& X, const ProductRule& r, const std::vector<long long>& a,
                                      const std::vector<long long>& b);
FusionRing bundle_ring(const ActionGroupoid& X, const ProductRule& r);

// Rep(G): X = pt.
FusionRing rep_bundle_ring(const FinAbGroup& G);
// X = G u pt with the Tambara-Yamagami M and Y; labels alpha(g) then rho as in ty_fusion.
ActionGroupoid ty_groupoid(const FinAbGroup& G);
ProductRule ty_product_rule(const FinAbGroup& G);
FusionRing ty_bundle_ring(const FinAbGroup& G);

// Bundles on X//H (H <= G acting on X = G u pt) as a module over ty_bundle_ring(G):
// M_X[target][source] per ty_fusion simple X. Untwisted. The pairing enters through the
// identification of the second factor's group with the dual: alpha_psi moves rho_[g] to rho_[psi-hat + g],
// and ty_fusion's alpha(g) is the bundle at pt with character <g, .>.
std::vector<IntMat> ty_bundle_nimrep(const TYData& d, const Subgroup& H);

}  // namespace mtc
