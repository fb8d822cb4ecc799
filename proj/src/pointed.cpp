#include "mtc/pointed.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mtc {

namespace {

std::vector<long long> concat(const Element& a, const Element& b)
{
    std::vector<long long> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return v;
}

IntMat diagonal_relations(const std::vector<long long>& orders)
{
    IntMat R(orders.size(), std::vector<long long>(orders.size(), 0));
    for (size_t i = 0; i < orders.size(); ++i) R[i][i] = orders[i];
    return R;
}

bool generates(const FinAbGroup& B, const std::vector<Element>& imgs)
{
    return Subgroup::generated(B, imgs).order() == B.order();
}

}  // namespace

PointedData pointed_data(const QuadraticForm& q)
{
    auto x = canonical_x(q);
    if (x.pow(3) * gauss_sum(q).normalized != Cyclotomic(1)) throw std::logic_error("x^3 is not the inverse Gauss phase");
    return {q, x};
}

std::string element_label(const Element& g)
{
    if (g.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    return os.str();
}

ModularData weil(const QuadraticForm& q)
{
    auto d = q.defect();
    if (!d.empty()) throw std::invalid_argument("weil: " + d);
    const auto& G = q.group();
    auto b = polarization(q);
    auto x = canonical_x(q);
    size_t n = static_cast<size_t>(G.order());
    Cyclotomic root = Cyclotomic::sqrt_nonneg_int(G.order()).inverse();
    ModularData md;
    md.S.assign(n, std::vector<Cyclotomic>(n));
    auto els = G.elements();
    for (size_t i = 0; i < n; ++i) {
        md.labels.push_back(element_label(els[i]));
        md.T.push_back(x * Cyclotomic::phase(q.value_at(i)));
        for (size_t j = i; j < n; ++j) md.S[i][j] = md.S[j][i] = Cyclotomic::phase(b.value(els[i], els[j])) * root;
    }
    md.unit = G.index(G.zero());
    return md;
}

SubQuotient subquotient(const Subgroup& top, const Subgroup& bottom)
{
    if (!top.contains(bottom)) throw std::invalid_argument("subquotient: bottom is not inside top");
    SubQuotient s{top, bottom, {}, {}, {}};
    auto T = top.as_group();
    std::vector<Element> gens;
    for (const auto& b : bottom.basis()) gens.push_back(top.coordinates(b));
    auto Qt = quotient(T, Subgroup::generated(T, gens));
    s.group = Qt.group;
    for (const auto& x : T.elements()) s.project[subgroup_element(top, x)] = Qt.projection(x);
    for (const auto& r : Qt.representatives) s.lift.push_back(subgroup_element(top, r));
    return s;
}

Subgroup perp(const QuadraticForm& q, const Subgroup& D)
{
    const auto& G = q.group();
    auto b = polarization(q);
    auto B = D.basis();
    std::vector<Element> in;
    for (const auto& g : G.elements()) {
        bool ok = true;
        for (const auto& d : B) ok = ok && b.value(g, d) == 0;
        if (ok) in.push_back(g);
    }
    return Subgroup::generated(G, in);
}

Isotropic isotropic_data(const QuadraticForm& q, const Subgroup& D)
{
    for (const auto& d : D.elements())
        if (q.value(d) != 0) throw std::invalid_argument("subgroup is not isotropic");
    Isotropic iso{D, perp(q, D), {}, {}};
    iso.quotient = subquotient(iso.Dperp, D);
    std::vector<Rational> vals;
    for (const auto& r : iso.quotient.lift) vals.push_back(q.value(r));
    for (const auto& [g, k] : iso.quotient.project)
        if (q.value(g) != vals[iso.quotient.group.index(k)]) throw std::logic_error("q is not constant on D-cosets");
    iso.induced = QuadraticForm(iso.quotient.group, vals);
    return iso;
}

std::vector<Isotropic> isotropic_subgroups(const QuadraticForm& q)
{
    const auto& G = q.group();
    if (G.order() > enumeration_guard()) throw GuardExceeded("isotropic_subgroups: |G| exceeds guard");
    std::vector<Subgroup> cand;
    for (auto& D : all_subgroups(G)) {
        bool iso = true;
        for (const auto& d : D.elements()) iso = iso && q.value(d) == 0;
        if (iso) cand.push_back(D);
    }
    std::sort(cand.begin(), cand.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.order() != b.order() ? a.order() < b.order() : a < b;
    });
    std::vector<Isotropic> out(cand.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(cand.size()); ++i)
        out[static_cast<size_t>(i)] = isotropic_data(q, cand[static_cast<size_t>(i)]);
    return out;
}

std::vector<Hom> isometries(const QuadraticForm& qa, const QuadraticForm& qb)
{
    const auto& A = qa.group();
    const auto& B = qb.group();
    std::vector<Hom> out;
    if (A.factors() != B.factors()) return out;
    auto ba = polarization(qa), bb = polarization(qb);
    size_t r = A.rank();
    std::vector<std::vector<Element>> cand(r);
    auto Bels = B.elements();
    for (size_t i = 0; i < r; ++i)
        for (const auto& y : Bels)
            if (B.element_order(y) == A.factors()[i] && qb.value(y) == qa.value(A.basis(i))) cand[i].push_back(y);
    std::vector<Element> img(r);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == r) {
            if (generates(B, img)) out.push_back(Hom::from_images(A, B, img));
            return;
        }
        for (const auto& y : cand[i]) {
            bool ok = true;
            for (size_t k = 0; k < i && ok; ++k) ok = bb.value(y, img[k]) == ba.value(A.basis(i), A.basis(k));
            if (!ok) continue;
            img[i] = y;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::string dpm_defect(const QuadraticForm& q, const DPMParam& p)
{
    Isotropic ip, im;
    try {
        ip = isotropic_data(q, p.D_plus);
        im = isotropic_data(q, p.D_minus);
    } catch (const std::exception& e) {
        return e.what();
    }
    if (p.sigma.domain() != ip.quotient.group || p.sigma.codomain() != im.quotient.group) return "sigma has the wrong domain or codomain";
    std::vector<Element> imgs;
    for (size_t i = 0; i < ip.quotient.group.rank(); ++i) imgs.push_back(p.sigma(ip.quotient.group.basis(i)));
    if (ip.quotient.group.order() != im.quotient.group.order() || !generates(im.quotient.group, imgs)) return "sigma is not an isomorphism";
    for (const auto& k : ip.quotient.group.elements())
        if (ip.induced.value(k) != im.induced.value(p.sigma(k))) return "sigma does not preserve q";
    return {};
}

namespace {

std::vector<DPMParam> enum_dpm_impl(const QuadraticForm& q, bool parallel)
{
    auto iso = isotropic_subgroups(q);
    for (const auto& i : iso)
        if (i.quotient.group.order() > 64) throw GuardExceeded("enum_dpm: |D^perp/D| above 64");
    std::vector<std::vector<DPMParam>> parts(iso.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < static_cast<long long>(iso.size()); ++i) {
        const auto& a = iso[static_cast<size_t>(i)];
        for (const auto& b : iso)
            for (auto& s : isometries(a.induced, b.induced)) parts[static_cast<size_t>(i)].push_back({a.D, b.D, s});
    }
    std::vector<DPMParam> out;
    for (auto& p : parts)
        for (auto& d : p) out.push_back(std::move(d));
    return out;
}

}  // namespace

std::vector<DPMParam> enum_dpm(const QuadraticForm& q) { return enum_dpm_impl(q, true); }
std::vector<DPMParam> enum_dpm_serial(const QuadraticForm& q) { return enum_dpm_impl(q, false); }

DoubleGroup::DoubleGroup(const FinAbGroup& g) : G(g)
{
    auto o = G.factors();
    o.insert(o.end(), G.factors().begin(), G.factors().end());
    if (o.empty()) {
        GG = FinAbGroup();
        return;
    }
    pres = Presentation::from_relations(o.size(), diagonal_relations(o));
    GG = pres.group;
}

Element DoubleGroup::pair(const Element& g, const Element& h) const
{
    if (G.rank() == 0) return GG.zero();
    return pres.map(concat(g, h));
}

std::pair<Element, Element> DoubleGroup::split(const Element& e) const
{
    if (G.rank() == 0) return {G.zero(), G.zero()};
    auto v = pres.lift(e);
    size_t r = G.rank();
    Element a(v.begin(), v.begin() + static_cast<long>(r)), b(v.begin() + static_cast<long>(r), v.end());
    return {G.reduce(a), G.reduce(b)};
}

std::string z_defect(const QuadraticForm& q, const ZParam& z, bool require_isotropy)
{
    const auto& G = q.group();
    DoubleGroup D(G);
    if (z.Z.ambient() != D.GG) return "Z is not a subgroup of G x G";
    if (z.Z.order() != G.order()) return "|Z| != |G|";
    auto b = polarization(q);
    std::vector<std::pair<Element, Element>> B;
    for (const auto& e : z.Z.basis()) B.push_back(D.split(e));
    for (size_t i = 0; i < B.size(); ++i) {
        for (size_t k = i; k < B.size(); ++k)
            if (mod1(b.value(B[i].first, B[k].first) - b.value(B[i].second, B[k].second)) != 0) return "Z is not inside Z^perp";
        if (require_isotropy && mod1(q.value(B[i].first) - q.value(B[i].second)) != 0) return "q_2 does not vanish on Z";
    }
    return {};
}

std::vector<ZParam> enum_z(const QuadraticForm& q, bool require_isotropy)
{
    const auto& G = q.group();
    if (G.order() * G.order() > enumeration_guard()) throw GuardExceeded("enum_z: |G|^2 exceeds guard");
    DoubleGroup D(G);
    auto subs = subgroups_of_order(D.GG, G.order());
    std::vector<char> keep(subs.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(subs.size()); ++i)
        keep[static_cast<size_t>(i)] = z_defect(q, {subs[static_cast<size_t>(i)]}, require_isotropy).empty();
    std::vector<ZParam> out;
    for (size_t i = 0; i < subs.size(); ++i)
        if (keep[i]) out.push_back({subs[i]});
    return out;
}

IntMat z_to_matrix(const QuadraticForm& q, const ZParam& z)
{
    const auto& G = q.group();
    DoubleGroup D(G);
    size_t n = static_cast<size_t>(G.order());
    IntMat M(n, std::vector<long long>(n, 0));
    for (const auto& e : z.Z.elements()) {
        auto [g, h] = D.split(e);
        M[G.index(g)][G.index(h)] = 1;
    }
    return M;
}

ZParam dpm_to_z(const QuadraticForm& q, const DPMParam& p)
{
    auto ip = isotropic_data(q, p.D_plus);
    auto im = isotropic_data(q, p.D_minus);
    const auto& G = q.group();
    DoubleGroup D(G);
    std::vector<Element> gens;
    for (const auto& d : p.D_minus.basis()) gens.push_back(D.pair(G.zero(), d));
    for (const auto& a : ip.Dperp.basis()) {
        auto s = p.sigma(ip.quotient.project.at(a));
        gens.push_back(D.pair(a, im.quotient.lift[im.quotient.group.index(s)]));
    }
    ZParam z{Subgroup::generated(D.GG, gens)};
    if (z.Z.order() != G.order()) throw std::logic_error("dpm_to_z: pull-back has the wrong order");
    return z;
}

DPMParam z_to_dpm(const QuadraticForm& q, const ZParam& z)
{
    const auto& G = q.group();
    DoubleGroup D(G);
    std::vector<Element> dp, dm;
    std::map<Element, Element> partner;
    for (const auto& e : z.Z.elements()) {
        auto [g, h] = D.split(e);
        if (G.is_zero(h)) dp.push_back(g);
        if (G.is_zero(g)) dm.push_back(h);
        partner.emplace(g, h);
    }
    DPMParam p{Subgroup::generated(G, dp), Subgroup::generated(G, dm), {}};
    auto ip = isotropic_data(q, p.D_plus);
    auto im = isotropic_data(q, p.D_minus);
    std::vector<Element> imgs;
    for (size_t i = 0; i < ip.quotient.group.rank(); ++i) {
        const auto& a = ip.quotient.lift[ip.quotient.group.index(ip.quotient.group.basis(i))];
        imgs.push_back(im.quotient.project.at(partner.at(a)));
    }
    p.sigma = Hom::from_images(ip.quotient.group, im.quotient.group, imgs);
    return p;
}

DPMParam jpsi_to_dpm(const QuadraticForm& q, const SimpleCurrentStructure& sc, const SCParam& p)
{
    const auto& G = q.group();
    if (sc.group.order() != G.order()) throw std::invalid_argument("jpsi_to_dpm: simple currents are not all of G");
    auto to_G = [&](const Element& e) { return G.element(sc.primary[sc.group.index(e)]); };
    auto JG = p.J.as_group();
    auto Jels = JG.elements();
    size_t s = JG.rank();
    std::vector<size_t> bidx;
    for (const auto& b : p.J.basis()) bidx.push_back(current_index(sc, b));
    std::vector<Element> dm, dp;
    // eps as a character table on the basis, per element of J
    std::map<std::vector<Rational>, Element> by_char;
    for (const auto& x : Jels) {
        Element j = subgroup_element(p.J, x);
        size_t ji = current_index(sc, j);
        std::vector<Rational> chi(s);
        bool ker = true, plus = true;
        for (size_t i = 0; i < s; ++i) {
            chi[i] = p.epsilon.value(x, JG.basis(i));
            ker = ker && chi[i] == 0;
            plus = plus && mod1(chi[i] + sc.pairing(ji, bidx[i])) == 0;
        }
        if (ker) dm.push_back(to_G(j));
        if (plus) dp.push_back(to_G(j));
        by_char.emplace(chi, j);
    }
    DPMParam out{Subgroup::generated(G, dp), Subgroup::generated(G, dm), {}};
    auto ip = isotropic_data(q, out.D_plus);
    auto im = isotropic_data(q, out.D_minus);
    // sigma(a) = a + j + D_-, where <a, .> = eps_j on J
    std::vector<Element> imgs;
    for (size_t i = 0; i < ip.quotient.group.rank(); ++i) {
        const auto& a = ip.quotient.lift[ip.quotient.group.index(ip.quotient.group.basis(i))];
        std::vector<Rational> chi(s);
        for (size_t k = 0; k < s; ++k) chi[k] = sc.Q[G.index(a)][bidx[k]];
        auto it = by_char.find(chi);
        if (it == by_char.end()) throw std::logic_error("jpsi_to_dpm: <a, .> is not in the image of eps");
        imgs.push_back(im.quotient.project.at(G.add(a, to_G(it->second))));
    }
    out.sigma = Hom::from_images(ip.quotient.group, im.quotient.group, imgs);
    return out;
}

Nimrep nimrep(const FinAbGroup& G, const Subgroup& J)
{
    Nimrep out{quotient(G, J), {}};
    size_t n = static_cast<size_t>(out.classes.group.order());
    for (const auto& g : G.elements()) {
        IntMat M(n, std::vector<long long>(n, 0));
        for (size_t c = 0; c < n; ++c) {
            auto h = out.classes.representatives[c];
            M[out.classes.group.index(out.classes.projection(G.add(g, h)))][c] = 1;
        }
        out.matrices.push_back(std::move(M));
    }
    return out;
}

AlphaInduction alpha_induction(const PointedData& pd, const DPMParam& p)
{
    const auto& q = pd.q;
    const auto& G = q.group();
    auto ip = isotropic_data(q, p.D_plus);
    auto im = isotropic_data(q, p.D_minus);
    auto Qm = quotient(G, p.D_minus);
    std::vector<long long> orders = G.factors();
    orders.insert(orders.end(), Qm.group.factors().begin(), Qm.group.factors().end());
    AlphaInduction out;
    std::vector<Element> ap, am;
    if (orders.empty()) {
        for (size_t i = 0; i < G.rank(); ++i) ap.push_back({});
        out.alpha_plus = Hom::from_images(G, out.full, ap);
        out.alpha_minus = Hom::from_images(G, out.full, ap);
        return out;
    }
    IntMat rel = diagonal_relations(orders);
    for (const auto& d : ip.Dperp.basis()) {
        auto s = p.sigma(ip.quotient.project.at(d));
        auto img = Qm.projection(im.quotient.lift[im.quotient.group.index(s)]);
        auto row = concat(d, img);
        for (size_t k = G.rank(); k < row.size(); ++k) row[k] = -row[k];
        rel.push_back(row);
    }
    auto P = Presentation::from_relations(orders.size(), rel);
    out.full = P.group;
    for (size_t i = 0; i < G.rank(); ++i) {
        ap.push_back(P.map(concat(G.basis(i), Qm.group.zero())));
        am.push_back(P.map(concat(G.zero(), Qm.projection(G.basis(i)))));
    }
    out.alpha_plus = Hom::from_images(G, out.full, ap);
    out.alpha_minus = Hom::from_images(G, out.full, am);
    return out;
}

IntMat alpha_matrix(const AlphaInduction& a)
{
    const auto& G = a.alpha_plus.domain();
    auto els = G.elements();
    size_t n = els.size();
    std::vector<Element> plus, minus;
    for (const auto& g : els) {
        plus.push_back(a.full.reduce(a.alpha_plus(g)));
        minus.push_back(a.full.reduce(a.alpha_minus(g)));
    }
    IntMat M(n, std::vector<long long>(n, 0));
    for (size_t l = 0; l < n; ++l)
        for (size_t m = 0; m < n; ++m) M[l][m] = plus[l] == minus[m];
    return M;
}

}  // namespace mtc
