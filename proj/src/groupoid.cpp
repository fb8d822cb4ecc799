#include "mtc/groupoid.hpp"

#include "mtc/simple_current.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mtc {

namespace {

const FinAbGroup kTrivial{};

Rational char_value(const FinAbGroup& G, const Element& a, const Element& g) { return Character{G, a}.value(g); }

// Z^{r1+r2} / (factors of A, factors of B) in invariant-factor form.
struct ProductGroup {
    FinAbGroup A, B, AB;
    Presentation pres;
    ProductGroup(const FinAbGroup& a, const FinAbGroup& b) : A(a), B(b)
    {
        size_t r = a.rank() + b.rank();
        IntMat rel(r, std::vector<long long>(r, 0));
        for (size_t i = 0; i < a.rank(); ++i) rel[i][i] = a.factors()[i];
        for (size_t i = 0; i < b.rank(); ++i) rel[a.rank() + i][a.rank() + i] = b.factors()[i];
        pres = Presentation::from_relations(r, rel);
        AB = pres.group;
    }
    Element pair(const Element& x, const Element& y) const
    {
        std::vector<long long> v(x.begin(), x.end());
        v.insert(v.end(), y.begin(), y.end());
        return pres.map(v);
    }
    std::pair<Element, Element> split(const Element& e) const
    {
        auto v = pres.lift(e);
        Element x(v.begin(), v.begin() + static_cast<long>(A.rank()));
        Element y(v.begin() + static_cast<long>(A.rank()), v.end());
        return {A.reduce(x), B.reduce(y)};
    }
    Hom first() const
    {
        std::vector<Element> imgs;
        for (size_t j = 0; j < AB.rank(); ++j) imgs.push_back(split(AB.basis(j)).first);
        return Hom::from_images(AB, A, imgs);
    }
    Hom second() const
    {
        std::vector<Element> imgs;
        for (size_t j = 0; j < AB.rank(); ++j) imgs.push_back(split(AB.basis(j)).second);
        return Hom::from_images(AB, B, imgs);
    }
};

Subgroup twist_radical(const Pairing& psi, const Subgroup& S)
{
    std::vector<Element> rad;
    auto elems = S.elements();
    for (const auto& s : elems) {
        bool ok = true;
        for (const auto& t : elems) ok = ok && psi.value(s, t) == 0;
        if (ok) rad.push_back(s);
    }
    return Subgroup::generated(S.ambient(), rad);
}

long long isqrt_exact(long long n)
{
    long long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != n) throw std::logic_error("twisted stabilizer: index of the radical is not a square");
    return r;
}

std::string elem_str(const Element& e)
{
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

void require_untwisted(const ActionGroupoid& X, const char* what)
{
    if (X.twist) throw std::invalid_argument(std::string(what) + ": twisted groupoids are not supported");
}

// Products of basis labels: V on X//G, W on X'//H, H acting on X through phi.
struct ModuleSetup {
    const ActionGroupoid& X;
    const ActionGroupoid& Xp;
    const Hom& phi;
    const ProductRule& r;
    KBasis kx, kp;
    // Delta' identification: a character psi at this fixed point of X moves the product point by psi-hat
    std::function<size_t(size_t la, size_t m)> shift = nullptr;
    size_t shift_point = 0;
};

std::vector<long long> basis_product(const ModuleSetup& s, size_t la, size_t lb)
{
    std::vector<long long> out(s.kp.size(), 0);
    const auto& H = s.Xp.G;
    const auto& oa = s.kx.orbits[s.kx.label_orbit[la]];
    const auto& ob = s.kp.orbits[s.kp.label_orbit[lb]];
    std::set<std::pair<size_t, size_t>> seen;
    for (size_t x : oa.points)
        for (size_t y : ob.points) {
            if (!s.r.Y[x][y] || seen.count({x, y})) continue;
            // H-orbit of (x, y) and its stabilizer
            std::vector<Element> stab;
            for (const auto& h : H.elements()) {
                size_t hx = s.X.apply(s.phi(h), x), hy = s.Xp.apply(h, y);
                seen.insert({hx, hy});
                if (hx == x && hy == y) stab.push_back(h);
            }
            auto S = Subgroup::generated(H, stab);
            size_t m = s.r.M[x][y];
            if (s.shift && x == s.shift_point) m = s.shift(la, m);
            auto chi = [&](const Element& h) {
                return mod1(char_value(s.X.G, s.kx.label_character[la], s.phi(h)) + char_value(H, s.kp.label_character[lb], h));
            };
            size_t om = s.kp.orbit_of[m];
            for (size_t t = 0; t < s.kp.size(); ++t) {
                if (s.kp.label_orbit[t] != om) continue;
                bool ok = true;
                for (const auto& g : S.basis()) ok = ok && char_value(H, s.kp.label_character[t], g) == chi(g);
                if (ok) out[t] += 1;
            }
        }
    return out;
}

std::string module_rule_defect(const ActionGroupoid& X, const ActionGroupoid& Xp, const Hom& phi, const ProductRule& r)
{
    if (r.M.size() != X.size() || r.Y.size() != X.size()) return "product rule has the wrong number of rows";
    for (size_t x = 0; x < X.size(); ++x) {
        if (r.M[x].size() != Xp.size() || r.Y[x].size() != Xp.size()) return "product rule has the wrong number of columns";
        for (size_t y = 0; y < Xp.size(); ++y)
            if (r.M[x][y] >= Xp.size()) return "M takes a value outside X";
    }
    for (const auto& h : Xp.G.elements()) {
        auto g = phi(h);
        for (size_t x = 0; x < X.size(); ++x)
            for (size_t y = 0; y < Xp.size(); ++y) {
                size_t gx = X.apply(g, x), hy = Xp.apply(h, y);
                if (r.M[gx][hy] != Xp.apply(h, r.M[x][y])) return "M is not equivariant at (" + X.points[x] + "," + Xp.points[y] + ")";
                if (r.Y[gx][hy] != r.Y[x][y]) return "Y is not stable at (" + X.points[x] + "," + Xp.points[y] + ")";
            }
    }
    return {};
}

}  // namespace

std::string ActionGroupoid::defect() const
{
    auto elems = G.elements();
    if (act.size() != elems.size()) return "action table needs one row per group element";
    for (const auto& row : act) {
        if (row.size() != size()) return "action row has the wrong length";
        for (size_t x : row)
            if (x >= size()) return "action sends a point outside X";
    }
    for (size_t x = 0; x < size(); ++x)
        if (act[G.index(G.zero())][x] != x) return "identity does not fix " + points[x];
    for (const auto& g : elems)
        for (const auto& h : elems)
            for (size_t x = 0; x < size(); ++x)
                if (apply(G.add(g, h), x) != apply(g, apply(h, x))) return "action is not compatible with the group law";
    if (twist) {
        if (twist->left() != G || twist->right() != G) return "twist must be a pairing on G";
        for (const auto& g : elems)
            if (twist->value(g, g) != 0) return "twist is not alternating";
    }
    return {};
}

ActionGroupoid make_groupoid(const FinAbGroup& G, std::vector<std::string> points,
                             const std::function<size_t(const Element&, size_t)>& act, std::optional<Pairing> twist)
{
    ActionGroupoid X{G, std::move(points), {}, std::move(twist)};
    for (const auto& g : G.elements()) {
        std::vector<size_t> row;
        for (size_t x = 0; x < X.size(); ++x) row.push_back(act(g, x));
        X.act.push_back(std::move(row));
    }
    auto d = X.defect();
    if (!d.empty()) throw std::invalid_argument("groupoid: " + d);
    return X;
}

ActionGroupoid point_groupoid(const FinAbGroup& G)
{
    return make_groupoid(G, {"pt"}, [](const Element&, size_t x) { return x; });
}

ActionGroupoid discrete_groupoid(size_t n)
{
    std::vector<std::string> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
    return make_groupoid(kTrivial, pts, [](const Element&, size_t x) { return x; });
}

ActionGroupoid coset_groupoid(const FinAbGroup& G, const Subgroup& S)
{
    auto Q = quotient(G, S);
    std::vector<std::string> pts;
    for (const auto& r : Q.representatives) pts.push_back(elem_str(r) + "+S");
    return make_groupoid(G, pts, [&](const Element& g, size_t x) {
        return Q.group.index(Q.group.add(Q.projection(g), Q.group.element(x)));
    });
}

std::vector<Orbit> orbits(const ActionGroupoid& X)
{
    std::vector<Orbit> out;
    std::vector<bool> done(X.size(), false);
    auto elems = X.G.elements();
    for (size_t x = 0; x < X.size(); ++x) {
        if (done[x]) continue;
        Orbit o;
        o.rep = x;
        std::vector<Element> stab;
        std::set<size_t> pts;
        for (const auto& g : elems) {
            size_t y = X.apply(g, x);
            pts.insert(y);
            if (y == x) stab.push_back(g);
        }
        o.points.assign(pts.begin(), pts.end());
        for (size_t y : o.points) done[y] = true;
        o.stabilizer = Subgroup::generated(X.G, stab);
        out.push_back(std::move(o));
    }
    return out;
}

KBasis k_basis(const ActionGroupoid& X)
{
    KBasis k;
    k.orbits = orbits(X);
    k.orbit_of.assign(X.size(), 0);
    auto chars = X.G.elements();  // exponents of characters of G
    for (size_t o = 0; o < k.orbits.size(); ++o) {
        for (size_t y : k.orbits[o].points) k.orbit_of[y] = o;
        const auto& S = k.orbits[o].stabilizer;
        Subgroup R = X.twist ? twist_radical(*X.twist, S) : S;
        long long dim = X.twist ? isqrt_exact(S.order() / R.order()) : 1;
        k.character_domain.push_back(R);
        std::set<std::vector<Rational>> seen;
        for (const auto& a : chars) {
            std::vector<Rational> key;
            for (const auto& g : R.basis()) key.push_back(char_value(X.G, a, g));
            if (!seen.insert(key).second) continue;
            k.label_orbit.push_back(o);
            k.label_character.push_back(a);
            k.label_dim.push_back(dim);
            std::string nm = X.points[k.orbits[o].rep];
            if (R.order() > 1) nm += ":" + elem_str(a);
            k.names.push_back(nm);
        }
    }
    return k;
}

std::optional<size_t> KBasis::find(size_t o, const std::function<Rational(const Element&)>& chi) const
{
    for (size_t l = 0; l < size(); ++l) {
        if (label_orbit[l] != o) continue;
        const auto& S = character_domain[o];
        bool ok = true;
        for (const auto& g : S.basis()) ok = ok && Character{S.ambient(), label_character[l]}.value(g) == mod1(chi(g));
        if (ok) return l;
    }
    return std::nullopt;
}

std::string map_defect(const ActionGroupoid& src, const ActionGroupoid& tgt, const GroupoidMap& m)
{
    if (m.on_points.size() != src.size()) return "map needs one image per point";
    for (size_t x : m.on_points)
        if (x >= tgt.size()) return "map sends a point outside the target";
    if (m.on_groups.domain() != src.G || m.on_groups.codomain() != tgt.G) return "homomorphism has the wrong domain or codomain";
    for (const auto& g : src.G.elements())
        for (size_t x = 0; x < src.size(); ++x)
            if (m.on_points[src.apply(g, x)] != tgt.apply(m.on_groups(g), m.on_points[x]))
                return "map is not equivariant at " + src.points[x];
    return {};
}

GroupoidMap identity_map(const ActionGroupoid& X)
{
    std::vector<size_t> pts(X.size());
    std::iota(pts.begin(), pts.end(), size_t{0});
    std::vector<Element> imgs;
    for (size_t j = 0; j < X.G.rank(); ++j) imgs.push_back(X.G.basis(j));
    return {pts, Hom::from_images(X.G, X.G, imgs)};
}

std::string Correspondence::defect() const
{
    for (const auto* g : {&source, &mid, &target}) {
        auto d = g->defect();
        if (!d.empty()) return d;
    }
    auto d = map_defect(mid, source, f);
    if (!d.empty()) return "forward map: " + d;
    d = map_defect(mid, target, b);
    if (!d.empty()) return "backward map: " + d;
    if (E.size() != k_basis(mid).size()) return "bundle E has the wrong length";
    return {};
}

IntMat corr_matrix(const Correspondence& c)
{
    auto d = c.defect();
    if (!d.empty()) throw std::invalid_argument("corr_matrix: " + d);
    for (const auto* g : {&c.source, &c.mid, &c.target}) require_untwisted(*g, "corr_matrix");
    auto ks = k_basis(c.source), km = k_basis(c.mid), kt = k_basis(c.target);
    IntMat out(kt.size(), std::vector<long long>(ks.size(), 0));
    for (size_t e = 0; e < km.size(); ++e) {
        if (c.E[e] == 0) continue;
        size_t oz = km.label_orbit[e];
        const auto& Z = km.orbits[oz];
        size_t x = c.f.on_points[Z.rep], y = c.b.on_points[Z.rep];
        size_t ox = ks.orbit_of[x], oy = kt.orbit_of[y];
        for (size_t a = 0; a < ks.size(); ++a) {
            if (ks.label_orbit[a] != ox) continue;
            // f^* a (x) e on the stabilizer of the mid point, then induced along b
            auto chi = [&](const Element& s) {
                return mod1(char_value(c.source.G, ks.label_character[a], c.f.on_groups(s)) + char_value(c.mid.G, km.label_character[e], s));
            };
            for (size_t t = 0; t < kt.size(); ++t) {
                if (kt.label_orbit[t] != oy) continue;
                bool ok = true;
                for (const auto& s : Z.stabilizer.basis()) ok = ok && char_value(c.target.G, kt.label_character[t], c.b.on_groups(s)) == chi(s);
                if (ok) out[t][a] += c.E[e];
            }
        }
    }
    return out;
}

Correspondence compose(const Correspondence& c1, const Correspondence& c2)
{
    if (c1.target.G != c2.source.G || c1.target.points != c2.source.points || c1.target.act != c2.source.act)
        throw std::invalid_argument("compose: target of the first correspondence is not the source of the second");
    for (const auto* g : {&c1.mid, &c2.mid, &c1.target}) require_untwisted(*g, "compose");
    const auto& Z1 = c1.mid;
    const auto& Z2 = c2.mid;
    const auto& M = c1.target;
    ProductGroup HH(Z1.G, Z2.G);

    // objects (z1, z2, g) with g b1(z1) = f2(z2)
    struct Obj {
        size_t z1, z2;
        Element g;
    };
    std::vector<Obj> objs;
    std::map<std::tuple<size_t, size_t, size_t>, size_t> index;
    for (size_t z1 = 0; z1 < Z1.size(); ++z1)
        for (size_t z2 = 0; z2 < Z2.size(); ++z2)
            for (const auto& g : M.G.elements())
                if (M.apply(g, c1.b.on_points[z1]) == c2.f.on_points[z2]) {
                    index[{z1, z2, M.G.index(g)}] = objs.size();
                    objs.push_back({z1, z2, g});
                }
    std::vector<std::string> names;
    for (const auto& o : objs) names.push_back("(" + Z1.points[o.z1] + "," + Z2.points[o.z2] + "," + elem_str(o.g) + ")");
    auto P = make_groupoid(HH.AB, names, [&](const Element& h, size_t p) {
        auto [h1, h2] = HH.split(h);
        const auto& o = objs[p];
        auto g = M.G.sub(M.G.add(o.g, c2.f.on_groups(h2)), c1.b.on_groups(h1));
        return index.at({Z1.apply(h1, o.z1), Z2.apply(h2, o.z2), M.G.index(g)});
    });

    Correspondence out;
    out.source = c1.source;
    out.target = c2.target;
    out.mid = P;
    std::vector<size_t> fp, bp;
    for (const auto& o : objs) {
        fp.push_back(c1.f.on_points[o.z1]);
        bp.push_back(c2.b.on_points[o.z2]);
    }
    out.f = {fp, c1.f.on_groups.compose(HH.first())};
    out.b = {bp, c2.b.on_groups.compose(HH.second())};

    // E1 (x) E2 restricted to P
    auto k1 = k_basis(Z1), k2 = k_basis(Z2), kp = k_basis(P);
    out.E.assign(kp.size(), 0);
    for (size_t op = 0; op < kp.orbits.size(); ++op) {
        const auto& o = objs[kp.orbits[op].rep];
        size_t o1 = k1.orbit_of[o.z1], o2 = k2.orbit_of[o.z2];
        for (size_t e1 = 0; e1 < k1.size(); ++e1) {
            if (k1.label_orbit[e1] != o1 || c1.E[e1] == 0) continue;
            for (size_t e2 = 0; e2 < k2.size(); ++e2) {
                if (k2.label_orbit[e2] != o2 || c2.E[e2] == 0) continue;
                auto l = kp.find(op, [&](const Element& h) {
                    auto [h1, h2] = HH.split(h);
                    return char_value(Z1.G, k1.label_character[e1], h1) + char_value(Z2.G, k2.label_character[e2], h2);
                });
                if (!l) throw std::logic_error("compose: restricted character not found");
                out.E[*l] += c1.E[e1] * c2.E[e2];
            }
        }
    }
    return out;
}

Correspondence identity_correspondence(const ActionGroupoid& X)
{
    auto k = k_basis(X);
    std::vector<long long> E(k.size(), 0);
    for (size_t o = 0; o < k.orbits.size(); ++o) E[*k.find(o, [](const Element&) { return Rational(0); })] = 1;
    return {X, X, X, identity_map(X), identity_map(X), E};
}

Correspondence number_correspondence(long long n)
{
    if (n < 0) throw std::invalid_argument("number_correspondence: n must be nonnegative");
    auto pt = point_groupoid(kTrivial);
    auto mid = discrete_groupoid(static_cast<size_t>(n));
    Hom triv(kTrivial, kTrivial, {});
    GroupoidMap to_pt{std::vector<size_t>(static_cast<size_t>(n), 0), triv};
    return {pt, mid, pt, to_pt, to_pt, std::vector<long long>(static_cast<size_t>(n), 1)};
}

namespace {

Hom zero_hom(const FinAbGroup& A, const FinAbGroup& B) { return Hom(A, B, IntMat(B.rank(), std::vector<long long>(A.rank(), 0))); }

}  // namespace

Correspondence representation_correspondence(const FinAbGroup& G, const std::vector<long long>& V)
{
    auto X = point_groupoid(G);
    if (V.size() != k_basis(X).size()) throw std::invalid_argument("representation_correspondence: V has the wrong length");
    return {point_groupoid(kTrivial), X, X, {{0}, zero_hom(G, kTrivial)}, identity_map(X), V};
}

Correspondence basis_correspondence(const ActionGroupoid& X, size_t label)
{
    require_untwisted(X, "basis_correspondence");
    auto k = k_basis(X);
    if (label >= k.size()) throw std::invalid_argument("basis_correspondence: no such label");
    const auto& O = k.orbits[k.label_orbit[label]];
    auto S = O.stabilizer.as_group();
    auto gens = O.stabilizer.basis();
    auto iota = Hom::from_images(S, X.G, gens);
    auto mid = point_groupoid(S);
    auto km = k_basis(mid);
    auto e = km.find(0, [&](const Element& s) { return char_value(X.G, k.label_character[label], iota(s)); });
    std::vector<long long> E(km.size(), 0);
    E.at(*e) = 1;
    return {point_groupoid(kTrivial), mid, X, {{0}, zero_hom(S, kTrivial)}, {{O.rep}, iota}, E};
}

std::pair<Correspondence, Correspondence> matrix_unit_legs(const FinAbGroup& G, size_t V, size_t W)
{
    auto X = point_groupoid(G);
    auto k = k_basis(X);
    if (V >= k.size() || W >= k.size()) throw std::invalid_argument("matrix_unit: no such character");
    auto pt = point_groupoid(kTrivial);
    std::vector<long long> Ev(k.size(), 0), Ew(k.size(), 0);
    Ev[*k.find(0, [&](const Element& g) { return -char_value(G, k.label_character[V], g); })] = 1;  // V*
    Ew[W] = 1;
    Correspondence left{X, X, pt, identity_map(X), {{0}, zero_hom(G, kTrivial)}, Ev};
    Correspondence right{pt, X, X, {{0}, zero_hom(G, kTrivial)}, identity_map(X), Ew};
    return {left, right};
}

Correspondence matrix_unit(const FinAbGroup& G, size_t V, size_t W)
{
    auto [l, r] = matrix_unit_legs(G, V, W);
    return compose(l, r);
}

IntMat matrix_product(const IntMat& A, const IntMat& B)
{
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    IntMat C(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != k) throw std::invalid_argument("matrix_product: shapes do not match");
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
    return C;
}

ActionGroupoid random_groupoid(std::mt19937_64& rng)
{
    static const std::vector<std::string> groups = {"1", "2", "3", "4", "2x2"};
    auto spec = groups[std::uniform_int_distribution<size_t>(0, groups.size() - 1)(rng)];
    FinAbGroup G = spec == "1" ? kTrivial : FinAbGroup::parse(spec);
    auto subs = all_subgroups(G);
    size_t norb = std::uniform_int_distribution<size_t>(1, 2)(rng);
    std::vector<std::string> pts;
    std::vector<std::pair<size_t, Quotient>> parts;  // offset, quotient
    for (size_t i = 0; i < norb; ++i) {
        auto S = subs[std::uniform_int_distribution<size_t>(0, subs.size() - 1)(rng)];
        auto Q = quotient(G, S);
        parts.emplace_back(pts.size(), Q);
        for (size_t j = 0; j < Q.representatives.size(); ++j) pts.push_back("o" + std::to_string(i) + "." + std::to_string(j));
    }
    return make_groupoid(G, pts, [&](const Element& g, size_t x) {
        for (size_t i = parts.size(); i-- > 0;) {
            const auto& [off, Q] = parts[i];
            if (x >= off) return off + Q.group.index(Q.group.add(Q.projection(g), Q.group.element(x - off)));
        }
        return x;
    });
}

namespace {

std::optional<Hom> random_hom(std::mt19937_64& rng, const FinAbGroup& A, const FinAbGroup& B)
{
    auto elems = B.elements();
    for (int tries = 0; tries < 50; ++tries) {
        std::vector<Element> imgs;
        for (size_t j = 0; j < A.rank(); ++j) imgs.push_back(elems[std::uniform_int_distribution<size_t>(0, elems.size() - 1)(rng)]);
        try {
            return Hom::from_images(A, B, imgs);
        } catch (const std::invalid_argument&) {
        }
    }
    return zero_hom(A, B);
}

// Equivariant map Z -> X over phi: choose an admissible image for each orbit representative.
std::optional<GroupoidMap> random_map(std::mt19937_64& rng, const ActionGroupoid& Z, const ActionGroupoid& X, const Hom& phi)
{
    std::vector<size_t> img(Z.size(), 0);
    for (const auto& o : orbits(Z)) {
        std::vector<size_t> ok;
        for (size_t x = 0; x < X.size(); ++x) {
            bool fixes = true;
            for (const auto& s : o.stabilizer.basis()) fixes = fixes && X.apply(phi(s), x) == x;
            if (fixes) ok.push_back(x);
        }
        if (ok.empty()) return std::nullopt;
        size_t x = ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(rng)];
        for (const auto& g : Z.G.elements()) img[Z.apply(g, o.rep)] = X.apply(phi(g), x);
    }
    GroupoidMap m{img, phi};
    if (!map_defect(Z, X, m).empty()) return std::nullopt;
    return m;
}

}  // namespace

Correspondence random_correspondence(std::mt19937_64& rng, const ActionGroupoid& source, const ActionGroupoid& target)
{
    for (;;) {
        auto Z = random_groupoid(rng);
        auto pf = random_hom(rng, Z.G, source.G);
        auto pb = random_hom(rng, Z.G, target.G);
        auto f = random_map(rng, Z, source, *pf);
        auto b = random_map(rng, Z, target, *pb);
        if (!f || !b) continue;
        auto k = k_basis(Z);
        std::vector<long long> E(k.size());
        for (auto& e : E) e = std::uniform_int_distribution<long long>(-1, 2)(rng);
        return {source, Z, target, *f, *b, E};
    }
}

std::string product_defect(const ActionGroupoid& X, const ProductRule& r) { return module_rule_defect(X, X, identity_map(X).on_groups, r); }

std::vector<long long> bundle_product(const ActionGroupoid& X, const ProductRule& r, const std::vector<long long>& a,
                                      const std::vector<long long>& b)
{
    require_untwisted(X, "bundle_product");
    auto d = product_defect(X, r);
    if (!d.empty()) throw std::invalid_argument("bundle_product: " + d);
    auto id = identity_map(X).on_groups;
    ModuleSetup s{X, X, id, r, k_basis(X), k_basis(X)};
    if (a.size() != s.kx.size() || b.size() != s.kx.size()) throw std::invalid_argument("bundle_product: bundle has the wrong length");
    std::vector<long long> out(s.kx.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            if (a[i] == 0 || b[j] == 0) continue;
            auto p = basis_product(s, i, j);
            for (size_t t = 0; t < out.size(); ++t) out[t] += a[i] * b[j] * p[t];
        }
    return out;
}

FusionRing bundle_ring(const ActionGroupoid& X, const ProductRule& r)
{
    require_untwisted(X, "bundle_ring");
    auto d = product_defect(X, r);
    if (!d.empty()) throw std::invalid_argument("bundle_ring: " + d);
    auto id = identity_map(X).on_groups;
    ModuleSetup s{X, X, id, r, k_basis(X), k_basis(X)};
    FusionRing R;
    R.labels = s.kx.names;
    size_t n = s.kx.size();
    R.N.n = n;
    R.N.N.assign(n * n * n, 0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            auto p = basis_product(s, a, b);
            for (size_t c = 0; c < n; ++c) R.N.N[(a * n + b) * n + c] = p[c];
        }
    // unit: the label whose products are identities
    for (size_t u = 0; u < n; ++u) {
        bool unit = true;
        for (size_t a = 0; a < n && unit; ++a)
            for (size_t c = 0; c < n; ++c) unit = unit && R.N(u, a, c) == (a == c ? 1 : 0);
        if (unit) {
            R.unit = u;
            break;
        }
    }
    return R;
}

FusionRing rep_bundle_ring(const FinAbGroup& G)
{
    return bundle_ring(point_groupoid(G), {{{0}}, {{true}}});
}

ActionGroupoid ty_groupoid(const FinAbGroup& G)
{
    std::vector<std::string> pts;
    for (const auto& g : G.elements()) pts.push_back(elem_str(g));
    pts.push_back("pt");
    size_t n = static_cast<size_t>(G.order());
    return make_groupoid(G, pts, [&, n](const Element& g, size_t x) { return x == n ? n : G.index(G.add(g, G.element(x))); });
}

ProductRule ty_product_rule(const FinAbGroup& G)
{
    size_t n = static_cast<size_t>(G.order());
    ProductRule r;
    r.M.assign(n + 1, std::vector<size_t>(n + 1, n));
    r.Y.assign(n + 1, std::vector<bool>(n + 1, false));
    for (size_t x = 0; x <= n; ++x)
        for (size_t y = 0; y <= n; ++y) {
            if (x == n) r.M[x][y] = y;
            else if (y == n) r.M[x][y] = x;
            // pt x pt, pt x G, G x pt and the diagonal
            r.Y[x][y] = x == n || y == n || x == y;
        }
    return r;
}

FusionRing ty_bundle_ring(const FinAbGroup& G)
{
    auto X = ty_groupoid(G);
    auto raw = bundle_ring(X, ty_product_rule(G));
    auto k = k_basis(X);
    // alpha(g) is the character of G at pt with exponent g, rho the free orbit
    size_t n = static_cast<size_t>(G.order());
    std::vector<size_t> perm(n + 1);  // ty_fusion index -> raw index
    size_t pt_orbit = k.orbit_of[n];
    for (size_t l = 0; l < k.size(); ++l) {
        if (k.label_orbit[l] == pt_orbit) perm[G.index(k.label_character[l])] = l;
        else perm[n] = l;
    }
    auto ref = ty_fusion(G);
    FusionRing R;
    R.labels = ref.labels;
    R.N.n = n + 1;
    R.N.N.assign((n + 1) * (n + 1) * (n + 1), 0);
    for (size_t a = 0; a <= n; ++a)
        for (size_t b = 0; b <= n; ++b)
            for (size_t c = 0; c <= n; ++c) R.N.N[(a * (n + 1) + b) * (n + 1) + c] = raw.N(perm[a], perm[b], perm[c]);
    R.unit = ref.unit;
    return R;
}

std::vector<IntMat> ty_bundle_nimrep(const TYData& d, const Subgroup& H)
{
    const auto& G = d.G;
    if (H.ambient() != G) throw std::invalid_argument("ty_bundle_nimrep: H is not a subgroup of G");
    auto X = ty_groupoid(G);
    auto Hg = H.as_group();
    auto iota = Hom::from_images(Hg, G, H.basis());
    size_t n = static_cast<size_t>(G.order());
    auto Xp = make_groupoid(Hg, X.points, [&, n](const Element& h, size_t x) { return x == n ? n : G.index(G.add(iota(h), G.element(x))); });
    auto r = ty_product_rule(G);
    auto defect = module_rule_defect(X, Xp, iota, r);
    if (!defect.empty()) throw std::logic_error("ty_bundle_nimrep: " + defect);
    ModuleSetup s{X, Xp, iota, r, k_basis(X), k_basis(Xp)};
    // psi-hat: the element g with <g, .> = psi
    std::vector<Element> hat(s.kx.size());
    for (size_t l = 0; l < s.kx.size(); ++l)
        for (const auto& g : G.elements()) {
            bool ok = true;
            for (size_t j = 0; j < G.rank(); ++j) ok = ok && d.pairing.value(g, G.basis(j)) == char_value(G, s.kx.label_character[l], G.basis(j));
            if (ok) hat[l] = g;
        }
    s.shift = [&, n](size_t la, size_t m) { return m == n ? n : G.index(G.add(hat[la], G.element(m))); };
    s.shift_point = n;
    // alpha(g) is the bundle at pt with character <g, .>
    size_t pt_orbit = s.kx.orbit_of[n];
    std::vector<size_t> simple_to_label(n + 1);
    for (size_t a = 0; a < n; ++a) simple_to_label[a] = *s.kx.find(pt_orbit, [&](const Element& t) { return d.pairing.value(G.element(a), t); });
    simple_to_label[n] = s.kx.find(s.kx.orbit_of[0], [](const Element&) { return Rational(0); }).value();
    std::vector<IntMat> out;
    size_t m = s.kp.size();
    for (size_t a = 0; a <= n; ++a) {
        IntMat Mx(m, std::vector<long long>(m, 0));
        for (size_t src = 0; src < m; ++src) {
            auto p = basis_product(s, simple_to_label[a], src);
            for (size_t t = 0; t < m; ++t) Mx[t][src] = p[t];
        }
        out.push_back(std::move(Mx));
    }
    return out;
}

}  // namespace mtc
