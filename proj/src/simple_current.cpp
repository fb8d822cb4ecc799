#include "mtc/simple_current.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mtc {

namespace {

// ambient element -> J coordinates
std::map<Element, Element> coordinate_table(const Subgroup& J)
{
    std::map<Element, Element> out;
    auto JG = J.as_group();
    for (const auto& x : JG.elements()) out[subgroup_element(J, x)] = x;
    return out;
}

Rational pair_exp(const SimpleCurrentStructure& sc, const Element& a, const Element& b)
{
    return sc.pairing(current_index(sc, a), current_index(sc, b));
}

Rational q_exp(const SimpleCurrentStructure& sc, const Element& a) { return sc.q[current_index(sc, a)]; }

Pairing pairing_from_function(const Subgroup& J, const std::function<Rational(const Element&, const Element&)>& f)
{
    auto B = J.basis();
    RatMat E(B.size(), std::vector<Rational>(B.size()));
    for (size_t a = 0; a < B.size(); ++a)
        for (size_t b = 0; b < B.size(); ++b) E[a][b] = mod1(f(B[a], B[b]));
    return Pairing::square(J.as_group(), E);
}

std::string describe(const Subgroup& J, const Pairing& eps)
{
    std::ostringstream os;
    os << "J=<";
    auto B = J.basis();
    for (size_t i = 0; i < B.size(); ++i) {
        if (i) os << ",";
        os << "(";
        for (size_t k = 0; k < B[i].size(); ++k) os << (k ? " " : "") << B[i][k];
        os << ")";
    }
    os << "> eps=[";
    const auto& E = eps.matrix();
    for (size_t i = 0; i < E.size(); ++i) {
        if (i) os << ";";
        for (size_t k = 0; k < E[i].size(); ++k) os << (k ? " " : "") << to_string(E[i][k]);
    }
    os << "]";
    return os.str();
}

}  // namespace

Element subgroup_element(const Subgroup& J, const Element& x)
{
    const auto& G = J.ambient();
    auto B = J.basis();
    Element e = G.zero();
    for (size_t i = 0; i < B.size(); ++i) e = G.add(e, G.scale(x[i], B[i]));
    return e;
}

size_t current_index(const SimpleCurrentStructure& sc, const Element& g) { return sc.group.index(g); }

void require_quaternionic_free(const SimpleCurrentStructure& sc, const Subgroup& J)
{
    for (const auto& j : J.elements()) {
        size_t idx = current_index(sc, j);
        if (!sc.quaternionic[idx]) continue;
        long long o = sc.group.element_order(j);
        std::ostringstream os;
        os << "quaternionic simple current in J: primary " << sc.primary[idx] << " of order " << o << " has q(j)^" << o
           << " = -1 (q(j) = e^{2 pi i " << to_string(sc.q[idx]) << "})";
        throw QuaternionicElement(os.str(), j, o, mod1(sc.q[idx] * o));
    }
}

Pairing chain_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const std::vector<Element>& chain,
                      const std::vector<int>& phi)
{
    require_quaternionic_free(sc, J);
    const auto& G = sc.group;
    size_t s = chain.size();
    if (!phi.empty() && phi.size() != s) throw std::invalid_argument("phi needs one sign per generator");
    std::vector<long long> ord(s);
    long long prod = 1;
    for (size_t i = 0; i < s; ++i) {
        if (!J.contains(chain[i])) throw std::invalid_argument("chain element outside J");
        ord[i] = G.element_order(chain[i]);
        prod *= ord[i];
        if (!phi.empty() && phi[i] == -1 && ord[i] % 2 != 0)
            throw std::invalid_argument("phi is not a character: sign -1 on an element of odd order");
    }
    if (prod != J.order()) throw std::invalid_argument("chain does not decompose J");
    // chain coordinates of every element
    std::map<Element, std::vector<long long>> coords;
    std::vector<long long> c(s, 0);
    for (long long t = 0; t < prod; ++t) {
        long long r = t;
        Element e = G.zero();
        for (size_t i = 0; i < s; ++i) {
            c[i] = r % ord[i];
            r /= ord[i];
            e = G.add(e, G.scale(c[i], chain[i]));
        }
        if (!coords.emplace(e, c).second) throw std::invalid_argument("chain does not decompose J");
    }
    std::vector<Rational> qh(s);
    for (size_t i = 0; i < s; ++i) qh[i] = q_exp(sc, chain[i]) + ((!phi.empty() && phi[i] == -1) ? Rational(1, 2) : Rational(0));
    std::vector<std::vector<Rational>> cross(s, std::vector<Rational>(s));
    for (size_t k = 0; k < s; ++k)
        for (size_t i = 0; i < s; ++i) cross[k][i] = -pair_exp(sc, chain[k], chain[i]);
    auto eps = [&](const Element& a, const Element& b) {
        const auto& x = coords.at(G.reduce(a));
        const auto& y = coords.at(G.reduce(b));
        Rational r(0);
        for (size_t i = 0; i < s; ++i) {
            r += qh[i] * (x[i] * y[i]);
            for (size_t k = i + 1; k < s; ++k) r += cross[k][i] * (x[k] * y[i]);
        }
        return r;
    };
    return pairing_from_function(J, eps);
}

Pairing base_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const std::vector<int>& phi)
{
    return chain_epsilon(sc, J, J.basis(), phi);
}

std::string epsilon_defect(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& eps, bool with_t)
{
    auto JG = J.as_group();
    if (eps.left() != JG || eps.right() != JG) return "pairing is not on J";
    auto els = JG.elements();
    for (const auto& x : els) {
        Element j = subgroup_element(J, x);
        for (const auto& y : els) {
            Element jp = subgroup_element(J, y);
            if (mod1(pair_exp(sc, j, jp) + eps.value(x, y) + eps.value(y, x)) != 0)
                return "Q_j(j') eps_j(j') eps_j'(j) != 1";
        }
        if (with_t && mod1(eps.value(x, x) - q_exp(sc, j)) != 0) return "eps_j(j) != q(j)";
    }
    return {};
}

SCParam make_epsilon(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& psi)
{
    auto base = base_epsilon(sc, J);
    if (psi.left() != base.left() || psi.right() != base.right()) throw std::invalid_argument("psi is not a pairing on J");
    if (!psi.is_alternating()) throw std::invalid_argument("psi is not alternating");
    SCParam p{J, psi, psi * base, {}};
    auto d = epsilon_defect(sc, J, p.epsilon);
    if (!d.empty()) throw std::logic_error("epsilon failed validation: " + d);
    return p;
}

IntMat sc_matrix_raw(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& eps)
{
    size_t n = sc.Q.size();
    auto JG = J.as_group();
    auto B = J.basis();
    std::vector<size_t> bidx;
    for (const auto& b : B) bidx.push_back(current_index(sc, b));
    auto J0 = pairing_image_data(eps).J0;
    std::vector<size_t> j0idx;
    for (const auto& x : J0.elements()) j0idx.push_back(current_index(sc, subgroup_element(J, x)));
    IntMat Z(n, std::vector<long long>(n, 0));
    for (const auto& x : JG.elements()) {
        size_t j = current_index(sc, subgroup_element(J, x));
        std::vector<Rational> target;
        for (size_t i = 0; i < B.size(); ++i) target.push_back(eps.value(x, JG.basis(i)));
        for (size_t a = 0; a < n; ++a) {
            bool match = true;
            for (size_t i = 0; i < B.size() && match; ++i) match = sc.Q[a][bidx[i]] == target[i];
            if (!match) continue;
            long long stab = 0;
            for (size_t k : j0idx) stab += sc.act(k, a) == a;
            Z[a][sc.act(j, a)] = stab;
        }
    }
    return Z;
}

ModularInvariant sc_matrix(const ModularData&, const SimpleCurrentStructure& sc, const SCParam& p)
{
    require_quaternionic_free(sc, p.J);
    auto d = epsilon_defect(sc, p.J, p.epsilon, p.phi.empty());
    if (!d.empty()) throw std::invalid_argument("invalid epsilon: " + d);
    return {sc_matrix_raw(sc, p.J, p.epsilon), "simple-current " + describe(p.J, p.epsilon)};
}

namespace {

SCEnumeration enumerate_impl(const ModularData& md, const SimpleCurrentStructure& sc, bool parallel)
{
    if (sc.group.order() > enumeration_guard())
        throw GuardExceeded("enumerate_sc: |J| = " + std::to_string(sc.group.order()) + " exceeds guard");
    std::vector<Subgroup> subs;
    for (auto& J : all_subgroups(sc.group)) {
        bool ok = true;
        for (const auto& j : J.elements()) ok = ok && !sc.quaternionic[current_index(sc, j)];
        if (ok) subs.push_back(J);
    }
    std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.order() != b.order() ? a.order() < b.order() : a < b;
    });
    std::vector<std::vector<SCEntry>> parts(subs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long s = 0; s < static_cast<long long>(subs.size()); ++s) {
        const auto& J = subs[static_cast<size_t>(s)];
        for (const auto& psi : alternating_pairings(J.as_group())) {
            auto p = make_epsilon(sc, J, psi);
            auto Z = sc_matrix(md, sc, p);
            parts[static_cast<size_t>(s)].push_back({std::move(p), std::move(Z)});
        }
    }
    SCEnumeration out;
    out.sufficiently_nonzero = sc.sufficiently_nonzero;
    for (auto& p : parts)
        for (auto& e : p) out.entries.push_back(std::move(e));
    std::map<IntMat, size_t> first;
    for (size_t i = 0; i < out.entries.size(); ++i) {
        auto [it, fresh] = first.emplace(out.entries[i].invariant.matrix, i);
        if (!fresh) out.collisions.emplace_back(i, it->second);
    }
    for (auto& [m, i] : first) out.distinct.push_back(m);
    return out;
}

}  // namespace

SCEnumeration enumerate_sc(const ModularData& md, const SimpleCurrentStructure& sc) { return enumerate_impl(md, sc, true); }
SCEnumeration enumerate_sc_serial(const ModularData& md, const SimpleCurrentStructure& sc) { return enumerate_impl(md, sc, false); }

std::optional<RecoveredParam> recover_parameters(const SimpleCurrentStructure& sc, const IntMat& Z)
{
    size_t n = sc.Q.size(), m = sc.primary.size();
    if (Z.size() != n) throw std::invalid_argument("invariant has wrong dimension");
    size_t u = sc.primary[0];
    std::vector<size_t> JR;
    for (size_t j = 0; j < m; ++j)
        if (Z[u][sc.primary[j]] != 0) JR.push_back(j);
    // witnesses (j, a) with a J_R-free
    std::vector<std::pair<size_t, size_t>> wit;
    for (size_t a = 0; a < n; ++a) {
        bool free = true;
        for (size_t j : JR) free = free && (j == 0 || sc.act(j, a) != a);
        if (!free) continue;
        for (size_t j = 0; j < m; ++j)
            if (Z[a][sc.act(j, a)] != 0) wit.emplace_back(j, a);
    }
    std::vector<Element> gens;
    for (auto& w : wit) gens.push_back(sc.group.element(w.first));
    if (gens.empty()) return std::nullopt;
    auto J = Subgroup::generated(sc.group, gens);
    auto B = J.basis();
    std::vector<size_t> bidx;
    for (const auto& b : B) bidx.push_back(current_index(sc, b));
    // eps_j restricted to the basis of J, filled by witnesses then by additivity
    std::map<size_t, std::vector<Rational>> eps;
    for (auto [j, a] : wit) {
        std::vector<Rational> v;
        for (size_t b : bidx) v.push_back(sc.Q[a][b]);
        auto [it, fresh] = eps.emplace(j, v);
        if (!fresh && it->second != v) return std::nullopt;
    }
    bool grew = true;
    while (grew && eps.size() < static_cast<size_t>(J.order())) {
        grew = false;
        auto snapshot = eps;
        for (auto& [x, vx] : snapshot)
            for (auto& [y, vy] : snapshot) {
                size_t z = current_index(sc, sc.group.add(sc.group.element(x), sc.group.element(y)));
                std::vector<Rational> v(vx.size());
                for (size_t i = 0; i < v.size(); ++i) v[i] = mod1(vx[i] + vy[i]);
                auto [it, fresh] = eps.emplace(z, v);
                if (fresh) grew = true;
                else if (it->second != v) return std::nullopt;
            }
    }
    if (eps.size() != static_cast<size_t>(J.order())) return std::nullopt;
    RatMat E(B.size(), std::vector<Rational>(B.size()));
    for (size_t i = 0; i < B.size(); ++i) E[i] = eps.at(bidx[i]);
    try {
        return RecoveredParam{J, Pairing::square(J.as_group(), E)};
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

IntMat transpose(const IntMat& Z)
{
    IntMat out(Z.empty() ? 0 : Z[0].size(), std::vector<long long>(Z.size()));
    for (size_t i = 0; i < Z.size(); ++i)
        for (size_t j = 0; j < Z[i].size(); ++j) out[j][i] = Z[i][j];
    return out;
}

ProductResult invariant_product(const ModularData& md, const SimpleCurrentStructure& sc, const SCEnumeration& all,
                                size_t i1, size_t i2)
{
    const auto& e1 = all.entries.at(i1);
    const auto& e2 = all.entries.at(i2);
    const auto& Z1 = e1.invariant.matrix;
    const auto& Z2 = e2.invariant.matrix;
    size_t n = md.size(), u = md.unit;
    ProductResult r;
    for (size_t a = 0; a < n; ++a) r.n += (Z1[u][a] != 0 && Z2[u][a] != 0);
    auto P = mat_mul(Z1, transpose(Z2));
    r.divisible = true;
    r.Z3 = P;
    for (auto& row : r.Z3)
        for (auto& v : row) {
            if (v % r.n != 0) r.divisible = false;
            v /= r.n;
        }
    for (size_t i = 0; i < all.entries.size() && r.divisible; ++i)
        if (all.entries[i].invariant.matrix == r.Z3) {
            r.entry = i;
            break;
        }

    // J'' and eps'' from the two parameter sets
    const auto& G = sc.group;
    const auto &J = e1.param.J, &Jp = e2.param.J;
    const auto &eps = e1.param.epsilon, &epsp = e2.param.epsilon;
    auto cJ = coordinate_table(J), cJp = coordinate_table(Jp);
    auto meet = J.meet(Jp);
    auto meet_els = meet.elements();
    std::map<Element, std::vector<std::pair<Element, Element>>> reps;  // j0 - j0' -> (j0, j0')
    for (auto& [j0, x0] : cJ)
        for (auto& [j0p, y0] : cJp) {
            bool ok = true;
            for (const auto& j : meet_els) {
                if (!ok) break;
                ok = mod1(eps.value(cJ.at(j), x0) - epsp.value(cJp.at(j), y0)) == 0;
            }
            if (ok) reps[G.sub(j0, j0p)].emplace_back(j0, j0p);
        }
    std::vector<Element> gens;
    for (auto& kv : reps) gens.push_back(kv.first);
    r.J_formula = Subgroup::generated(G, gens);
    if (static_cast<long long>(reps.size()) != r.J_formula.order()) {
        r.formula_defect = "the J'' set is not a subgroup";
        return r;
    }
    // eps''_{j0-j0'}(j-j') = eps_{j0}(j) Q_{j0}(j') eps'_{j'}(j0')
    std::map<std::pair<Element, Element>, Rational> table;
    for (auto& [k, rk] : reps)
        for (auto& [l, rl] : reps)
            for (auto& [j0, j0p] : rk)
                for (auto& [j, jp] : rl) {
                    Rational v = mod1(eps.value(cJ.at(j0), cJ.at(j)) + pair_exp(sc, j0, jp) + epsp.value(cJp.at(jp), cJp.at(j0p)));
                    auto [it, fresh] = table.emplace(std::make_pair(k, l), v);
                    if (!fresh && it->second != v) {
                        r.formula_defect = "eps'' depends on the choice of j0, j0'";
                        return r;
                    }
                }
    try {
        r.eps_formula = pairing_from_function(r.J_formula, [&](const Element& a, const Element& b) {
            return table.at({G.reduce(a), G.reduce(b)});
        });
    } catch (const std::exception& ex) {
        r.formula_defect = std::string("eps'' is not a pairing: ") + ex.what();
        return r;
    }
    // biadditivity on all of J'', not only the generators
    auto JG = r.J_formula.as_group();
    for (const auto& x : JG.elements())
        for (const auto& y : JG.elements())
            if (r.eps_formula->value(x, y) != table.at({subgroup_element(r.J_formula, x), subgroup_element(r.J_formula, y)})) {
                r.formula_defect = "eps'' is not biadditive";
                return r;
            }
    if (!r.divisible) {
        r.formula_defect = "Z Z'^T is not divisible by n";
    } else if (sc_matrix_raw(sc, r.J_formula, *r.eps_formula) != r.Z3) {
        r.formula_defect = "Z(J'', eps'') differs from Z Z'^T / n";
    }
    return r;
}

IntMat s_only_matrix(const SimpleCurrentStructure& sc, const Subgroup& J, const Pairing& psi, const std::vector<int>& phi)
{
    auto base = base_epsilon(sc, J, phi);
    if (!psi.is_alternating()) throw std::invalid_argument("psi is not alternating");
    auto eps = psi * base;
    auto d = epsilon_defect(sc, J, eps, false);
    if (!d.empty()) throw std::logic_error("epsilon failed validation: " + d);
    return sc_matrix_raw(sc, J, eps);
}

bool commutes_with_s(const ModularData& raw, const IntMat& Z)
{
    ModularData md = raw.embedded();
    size_t n = md.size();
    CycMat SZ(n, std::vector<Cyclotomic>(n)), ZS(n, std::vector<Cyclotomic>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (Z[a][b] == 0) continue;
            Cyclotomic z(Z[a][b]);
            for (size_t c = 0; c < n; ++c) {
                SZ[c][b] += md.S[c][a] * z;
                ZS[a][c] += z * md.S[b][c];
            }
        }
    return SZ == ZS;
}

}  // namespace mtc
