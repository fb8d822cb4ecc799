#include "mtc/abelian.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>

namespace mtc {

namespace {

std::atomic<long long> g_enum_guard{1024};

void require_guard(long long n, const char* what)
{
    if (n > g_enum_guard.load())
        throw GuardExceeded(std::string(what) + ": group order " + std::to_string(n) + " exceeds guard " +
                            std::to_string(g_enum_guard.load()));
}

}  // namespace

long long enumeration_guard() { return g_enum_guard.load(); }
void set_enumeration_guard(long long n) { g_enum_guard.store(n); }

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
long long lcm_ll(long long a, long long b) { return (a == 0 || b == 0) ? 0 : a / std::gcd(a, b) * b; }
long long mod_ll(long long a, long long n)
{
    long long r = a % n;
    return r < 0 ? r + n : r;
}

IntMat identity_matrix(size_t n)
{
    IntMat I(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B)
{
    size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    IntMat C(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            long long a = A[i][l];
            if (a == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += a * B[l][j];
        }
    return C;
}

SmithForm smith_normal_form(const IntMat& M)
{
    size_t m = M.size(), n = m ? M[0].size() : 0;
    SmithForm s;
    IntMat A = M;
    s.P = identity_matrix(m);
    s.Pinv = identity_matrix(m);
    s.Q = identity_matrix(n);
    s.Qinv = identity_matrix(n);

    auto row_add = [&](size_t i, size_t j, long long c) {  // row_i += c row_j
        if (c == 0) return;
        for (size_t k = 0; k < n; ++k) A[i][k] += c * A[j][k];
        for (size_t k = 0; k < m; ++k) s.P[i][k] += c * s.P[j][k];
        for (size_t k = 0; k < m; ++k) s.Pinv[k][j] -= c * s.Pinv[k][i];
    };
    auto col_add = [&](size_t i, size_t j, long long c) {  // col_i += c col_j
        if (c == 0) return;
        for (size_t k = 0; k < m; ++k) A[k][i] += c * A[k][j];
        for (size_t k = 0; k < n; ++k) s.Q[k][i] += c * s.Q[k][j];
        for (size_t k = 0; k < n; ++k) s.Qinv[j][k] -= c * s.Qinv[i][k];
    };
    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        std::swap(A[i], A[j]);
        std::swap(s.P[i], s.P[j]);
        for (size_t k = 0; k < m; ++k) std::swap(s.Pinv[k][i], s.Pinv[k][j]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < m; ++k) std::swap(A[k][i], A[k][j]);
        for (size_t k = 0; k < n; ++k) std::swap(s.Q[k][i], s.Q[k][j]);
        std::swap(s.Qinv[i], s.Qinv[j]);
    };
    auto row_neg = [&](size_t i) {
        for (size_t k = 0; k < n; ++k) A[i][k] = -A[i][k];
        for (size_t k = 0; k < m; ++k) s.P[i][k] = -s.P[i][k];
        for (size_t k = 0; k < m; ++k) s.Pinv[k][i] = -s.Pinv[k][i];
    };

    for (size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block becomes the pivot
            long long best = 0;
            size_t bi = t, bj = t;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
                        best = std::llabs(A[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) goto done;
            row_swap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                row_add(i, t, -(A[i][t] / A[t][t]));
                if (A[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                col_add(j, t, -(A[t][j] / A[t][t]));
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (A[t][t] < 0) row_neg(t);
    }
done:
    s.D = A;
    return s;
}

FinAbGroup::FinAbGroup(std::vector<long long> factors) : factors_(std::move(factors))
{
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && factors_[i - 1] % factors_[i] != 0)
            throw std::invalid_argument("invariant factors must satisfy n_t | ... | n_1");
    }
}

FinAbGroup FinAbGroup::from_cyclic_orders(const std::vector<long long>& orders)
{
    IntMat R(orders.size(), std::vector<long long>(orders.size(), 0));
    for (size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw std::invalid_argument("cyclic orders must be positive");
        R[i][i] = orders[i];
    }
    return Presentation::from_relations(orders.size(), R).group;
}

FinAbGroup FinAbGroup::parse(const std::string& spec)
{
    if (spec.empty() || spec.back() == 'x') throw std::invalid_argument("bad group spec '" + spec + "'");
    std::vector<long long> orders;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        if (tok.empty()) throw std::invalid_argument("bad group spec '" + spec + "'");
        try {
            orders.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad group spec '" + spec + "'");
        }
    }
    return from_cyclic_orders(orders);
}

long long FinAbGroup::order() const
{
    long long o = 1;
    for (auto n : factors_) o *= n;
    return o;
}

Element FinAbGroup::reduce(Element e) const
{
    if (e.size() != rank()) throw std::invalid_argument("element has wrong length");
    for (size_t i = 0; i < e.size(); ++i) e[i] = mod_ll(e[i], factors_[i]);
    return e;
}

Element FinAbGroup::add(const Element& a, const Element& b) const
{
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = mod_ll(a[i] + b[i], factors_[i]);
    return r;
}

Element FinAbGroup::sub(const Element& a, const Element& b) const
{
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = mod_ll(a[i] - b[i], factors_[i]);
    return r;
}

Element FinAbGroup::neg(const Element& a) const
{
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = mod_ll(-a[i], factors_[i]);
    return r;
}

Element FinAbGroup::scale(long long k, const Element& a) const
{
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = mod_ll(k % factors_[i] * a[i], factors_[i]);
    return r;
}

long long FinAbGroup::element_order(const Element& a) const
{
    long long o = 1;
    for (size_t i = 0; i < rank(); ++i) o = lcm_ll(o, factors_[i] / std::gcd(factors_[i], mod_ll(a[i], factors_[i])));
    return o;
}

bool FinAbGroup::is_zero(const Element& a) const
{
    for (size_t i = 0; i < rank(); ++i)
        if (mod_ll(a[i], factors_[i]) != 0) return false;
    return true;
}

size_t FinAbGroup::index(const Element& a) const
{
    size_t idx = 0;
    for (size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + mod_ll(a[i], factors_[i]);
    return idx;
}

Element FinAbGroup::element(size_t idx) const
{
    Element e(rank());
    for (size_t i = rank(); i-- > 0;) {
        e[i] = static_cast<long long>(idx % factors_[i]);
        idx /= factors_[i];
    }
    return e;
}

std::vector<Element> FinAbGroup::elements() const
{
    std::vector<Element> out;
    long long n = order();
    out.reserve(n);
    for (long long i = 0; i < n; ++i) out.push_back(element(i));
    return out;
}

Element FinAbGroup::basis(size_t i) const
{
    Element e = zero();
    e[i] = 1 % factors_[i];
    return e;
}

std::string FinAbGroup::to_string() const
{
    if (factors_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) s += (i ? "x" : "") + std::to_string(factors_[i]);
    return s;
}

FinAbGroup direct_product(const FinAbGroup& a, const FinAbGroup& b)
{
    std::vector<long long> o = a.factors();
    o.insert(o.end(), b.factors().begin(), b.factors().end());
    return FinAbGroup::from_cyclic_orders(o);
}

Presentation Presentation::from_relations(size_t k, const IntMat& relations)
{
    Presentation p;
    IntMat R = relations;
    if (R.empty()) R.push_back(std::vector<long long>(k, 0));
    SmithForm s = smith_normal_form(R);
    p.Q = s.Q;
    p.Qinv = s.Qinv;
    std::vector<std::pair<long long, size_t>> nontrivial;
    for (size_t i = 0; i < k; ++i) {
        long long d = i < s.D.size() ? s.D[i][i] : 0;
        if (d == 0) throw std::invalid_argument("presentation defines an infinite group");
        if (d > 1) nontrivial.emplace_back(d, i);
    }
    std::reverse(nontrivial.begin(), nontrivial.end());
    std::vector<long long> f;
    for (auto [d, i] : nontrivial) {
        f.push_back(d);
        p.cols.push_back(i);
        p.divisors.push_back(d);
    }
    p.group = FinAbGroup(f);
    return p;
}

Element Presentation::map(const std::vector<long long>& x) const
{
    Element e(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) {
        long long y = 0;
        for (size_t r = 0; r < x.size(); ++r) y = mod_ll(y + mod_ll(x[r], divisors[i]) * mod_ll(Q[r][cols[i]], divisors[i]), divisors[i]);
        e[i] = y;
    }
    return e;
}

std::vector<long long> Presentation::lift(const Element& e) const
{
    size_t k = Q.size();
    std::vector<long long> x(k, 0);
    for (size_t i = 0; i < cols.size(); ++i)
        for (size_t c = 0; c < k; ++c) x[c] += e[i] * Qinv[cols[i]][c];
    return x;
}

namespace {

// Hermite form of the lattice spanned by rows (the ambient relations are added by the caller).
IntMat hermite(IntMat rows, size_t t)
{
    IntMat H;
    for (size_t c = 0; c < t; ++c) {
        // rows with nonzero entry in column c among the remaining ones
        while (true) {
            size_t best = rows.size();
            for (size_t r = 0; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) best = r;
            if (best == rows.size()) throw std::logic_error("hermite: lattice not of full rank");
            bool done = true;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == best || rows[r][c] == 0) continue;
                long long q = rows[r][c] / rows[best][c];
                for (size_t k = c; k < t; ++k) rows[r][k] -= q * rows[best][k];
                if (rows[r][c] != 0) done = false;
            }
            if (done) {
                std::vector<long long> piv = rows[best];
                rows.erase(rows.begin() + static_cast<long>(best));
                if (piv[c] < 0)
                    for (auto& v : piv) v = -v;
                H.push_back(piv);
                break;
            }
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const std::vector<long long>& r) {
                                      return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
                                  }),
                   rows.end());
    }
    for (size_t c = 0; c < t; ++c)
        for (size_t r = 0; r < c; ++r) {
            long long q = H[r][c] >= 0 ? H[r][c] / H[c][c] : -((-H[r][c] + H[c][c] - 1) / H[c][c]);
            if (q)
                for (size_t k = c; k < t; ++k) H[r][k] -= q * H[c][k];
        }
    return H;
}

}  // namespace

Subgroup Subgroup::generated(const FinAbGroup& G, const std::vector<Element>& gens)
{
    size_t t = G.rank();
    IntMat rows;
    for (const auto& g : gens) rows.push_back(G.reduce(g));
    for (size_t i = 0; i < t; ++i) {
        std::vector<long long> r(t, 0);
        r[i] = G.factors()[i];
        rows.push_back(r);
    }
    Subgroup s;
    s.G_ = G;
    s.H_ = hermite(rows, t);
    return s;
}

Subgroup Subgroup::trivial(const FinAbGroup& G) { return generated(G, {}); }

Subgroup Subgroup::full(const FinAbGroup& G)
{
    std::vector<Element> gens;
    for (size_t i = 0; i < G.rank(); ++i) gens.push_back(G.basis(i));
    return generated(G, gens);
}

long long Subgroup::order() const
{
    long long o = 1;
    for (size_t c = 0; c < H_.size(); ++c) o *= G_.factors()[c] / H_[c][c];
    return o;
}

namespace {

// Write x as sum k_c * row_c modulo the ambient relations; false if x is not in the lattice.
bool decompose(const IntMat& H, const FinAbGroup& G, Element x, std::vector<long long>& k)
{
    size_t t = H.size();
    k.assign(t, 0);
    for (size_t c = 0; c < t; ++c) {
        long long n = G.factors()[c];
        long long r = mod_ll(x[c], n);
        if (r % H[c][c] != 0) return false;
        k[c] = r / H[c][c];
        for (size_t j = c; j < t; ++j) x[j] -= k[c] * H[c][j];
    }
    return true;
}

}  // namespace

bool Subgroup::contains(const Element& e) const
{
    std::vector<long long> k;
    return decompose(H_, G_, G_.reduce(e), k);
}

bool Subgroup::contains(const Subgroup& K) const
{
    for (const auto& row : K.H_)
        if (!contains(row)) return false;
    return true;
}

std::vector<Element> Subgroup::elements() const
{
    size_t t = H_.size();
    std::vector<long long> range(t);
    for (size_t c = 0; c < t; ++c) range[c] = G_.factors()[c] / H_[c][c];
    std::vector<Element> out;
    std::vector<long long> k(t, 0);
    while (true) {
        Element e = G_.zero();
        for (size_t c = 0; c < t; ++c)
            for (size_t j = c; j < t; ++j) e[j] += k[c] * H_[c][j];
        out.push_back(G_.reduce(e));
        size_t c = t;
        while (c > 0 && ++k[c - 1] == range[c - 1]) k[--c] = 0;
        if (c == 0) break;
    }
    std::sort(out.begin(), out.end(), [&](const Element& a, const Element& b) { return G_.index(a) < G_.index(b); });
    return out;
}

void Subgroup::compute_basis() const
{
    if (!basis_orders_cache_.empty() || order() == 1) return;
    size_t t = H_.size();
    IntMat rel;
    for (size_t c = 0; c < t; ++c) {
        long long m = G_.factors()[c] / H_[c][c];
        Element v = G_.zero();
        for (size_t j = c; j < t; ++j) v[j] = m * H_[c][j];
        std::vector<long long> k;
        decompose(H_, G_, G_.reduce(v), k);
        std::vector<long long> r(t, 0);
        for (size_t j = 0; j < t; ++j) r[j] = -k[j];
        r[c] += m;
        rel.push_back(r);
    }
    Presentation p = Presentation::from_relations(t, rel);
    for (size_t i = 0; i < p.group.rank(); ++i) {
        auto x = p.lift(p.group.basis(i));
        Element e = G_.zero();
        for (size_t c = 0; c < t; ++c)
            for (size_t j = 0; j < t; ++j) e[j] = mod_ll(e[j] + mod_ll(x[c], G_.factors()[j]) * H_[c][j], G_.factors()[j]);
        basis_cache_.push_back(G_.reduce(e));
        basis_orders_cache_.push_back(p.group.factors()[i]);
    }
}

std::vector<Element> Subgroup::basis() const
{
    compute_basis();
    return basis_cache_;
}

std::vector<long long> Subgroup::basis_orders() const
{
    compute_basis();
    return basis_orders_cache_;
}

std::vector<long long> Subgroup::coordinates(const Element& e) const
{
    auto b = basis();
    auto o = basis_orders();
    // small groups: solve by enumeration over the basis chain
    std::vector<long long> c(b.size(), 0);
    Element target = G_.reduce(e);
    if (b.empty()) {
        if (!G_.is_zero(target)) throw std::invalid_argument("element not in subgroup");
        return c;
    }
    while (true) {
        Element s = G_.zero();
        for (size_t i = 0; i < b.size(); ++i) s = G_.add(s, G_.scale(c[i], b[i]));
        if (s == target) return c;
        size_t i = b.size();
        while (i > 0) {
            --i;
            if (++c[i] < o[i]) break;
            c[i] = 0;
            if (i == 0) throw std::invalid_argument("element not in subgroup");
        }
    }
}

Subgroup Subgroup::join(const Subgroup& K) const
{
    std::vector<Element> gens(H_.begin(), H_.end());
    gens.insert(gens.end(), K.H_.begin(), K.H_.end());
    return generated(G_, gens);
}

Subgroup Subgroup::meet(const Subgroup& K) const
{
    std::vector<Element> gens;
    for (const auto& e : elements())
        if (K.contains(e)) gens.push_back(e);
    return generated(G_, gens);
}

FinAbGroup Subgroup::as_group() const
{
    return FinAbGroup(basis_orders());
}

bool operator<(const Subgroup& a, const Subgroup& b)
{
    if (a.G_.factors() != b.G_.factors()) return a.G_.factors() < b.G_.factors();
    return a.H_ < b.H_;
}

Rational Character::value(const Element& g) const
{
    Rational r(0);
    for (size_t i = 0; i < group.rank(); ++i) r += Rational(exponents[i] * g[i], group.factors()[i]);
    return mod1(r);
}

Hom::Hom(FinAbGroup domain, FinAbGroup codomain, IntMat matrix)
    : dom_(std::move(domain)), cod_(std::move(codomain)), M_(std::move(matrix))
{
    if (M_.size() != cod_.rank()) throw std::invalid_argument("hom matrix has wrong row count");
    for (const auto& row : M_)
        if (row.size() != dom_.rank()) throw std::invalid_argument("hom matrix has wrong column count");
    for (size_t j = 0; j < dom_.rank(); ++j) {
        Element img(cod_.rank());
        for (size_t i = 0; i < cod_.rank(); ++i) img[i] = M_[i][j];
        if (!cod_.is_zero(cod_.scale(dom_.factors()[j], img)))
            throw std::invalid_argument("hom matrix is not well defined on the domain relations");
        for (size_t i = 0; i < cod_.rank(); ++i) M_[i][j] = mod_ll(M_[i][j], cod_.factors()[i]);
    }
}

Hom Hom::from_images(const FinAbGroup& domain, const FinAbGroup& codomain, const std::vector<Element>& images)
{
    IntMat M(codomain.rank(), std::vector<long long>(domain.rank(), 0));
    for (size_t j = 0; j < domain.rank(); ++j)
        for (size_t i = 0; i < codomain.rank(); ++i) M[i][j] = images.at(j)[i];
    return Hom(domain, codomain, M);
}

Element Hom::operator()(const Element& g) const
{
    Element r(cod_.rank(), 0);
    for (size_t i = 0; i < cod_.rank(); ++i) {
        long long n = cod_.factors()[i], s = 0;
        for (size_t j = 0; j < dom_.rank(); ++j) s = (s + M_[i][j] * mod_ll(g[j], dom_.factors()[j])) % n;
        r[i] = s;
    }
    return r;
}

Hom Hom::compose(const Hom& inner) const
{
    if (inner.cod_ != dom_) throw std::invalid_argument("compose: mismatched groups");
    std::vector<Element> imgs;
    for (size_t j = 0; j < inner.dom_.rank(); ++j) imgs.push_back((*this)(inner(inner.dom_.basis(j))));
    return from_images(inner.dom_, cod_, imgs);
}

bool operator==(const Hom& a, const Hom& b) { return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.M_ == b.M_; }

std::vector<Subgroup> all_subgroups(const FinAbGroup& G)
{
    require_guard(G.order(), "all_subgroups");
    std::set<Subgroup> cyclic;
    for (const auto& g : G.elements()) cyclic.insert(Subgroup::generated(G, {g}));
    std::set<Subgroup> seen(cyclic.begin(), cyclic.end());
    std::vector<Subgroup> work(cyclic.begin(), cyclic.end());
    while (!work.empty()) {
        Subgroup H = work.back();
        work.pop_back();
        for (const auto& C : cyclic) {
            if (H.contains(C)) continue;
            Subgroup K = H.join(C);
            if (seen.insert(K).second) work.push_back(K);
        }
    }
    std::vector<Subgroup> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
    return out;
}

std::vector<Subgroup> subgroups_of_order(const FinAbGroup& G, long long order)
{
    std::vector<Subgroup> out;
    for (auto& H : all_subgroups(G))
        if (H.order() == order) out.push_back(H);
    return out;
}

Quotient quotient(const FinAbGroup& G, const Subgroup& H)
{
    if (H.ambient() != G) throw std::invalid_argument("quotient: subgroup of a different group");
    Presentation p = Presentation::from_relations(G.rank(), H.hnf());
    Quotient q;
    q.group = p.group;
    std::vector<Element> imgs;
    for (size_t j = 0; j < G.rank(); ++j) {
        std::vector<long long> x(G.rank(), 0);
        x[j] = 1;
        imgs.push_back(p.map(x));
    }
    q.projection = Hom::from_images(G, q.group, imgs);
    for (const auto& c : q.group.elements()) q.representatives.push_back(G.reduce(p.lift(c)));
    return q;
}

std::pair<Subgroup, Subgroup> hom_kernel_image(const Hom& f)
{
    require_guard(f.domain().order(), "hom_kernel_image");
    std::vector<Element> ker, img;
    for (const auto& g : f.domain().elements()) {
        Element v = f(g);
        if (f.codomain().is_zero(v)) ker.push_back(g);
    }
    for (size_t j = 0; j < f.domain().rank(); ++j) img.push_back(f(f.domain().basis(j)));
    Subgroup K = Subgroup::generated(f.domain(), ker);
    Subgroup I = Subgroup::generated(f.codomain(), img);
    if (K.order() * I.order() != f.domain().order()) throw std::logic_error("kernel/image orders inconsistent");
    return {K, I};
}

std::vector<Hom> automorphisms(const FinAbGroup& G)
{
    require_guard(G.order(), "automorphisms");
    size_t t = G.rank();
    std::vector<std::vector<Element>> cand(t);
    double total = 1;
    auto elems = G.elements();
    for (size_t j = 0; j < t; ++j) {
        for (const auto& e : elems)
            if (G.factors()[j] % G.element_order(e) == 0) cand[j].push_back(e);
        total *= static_cast<double>(cand[j].size());
    }
    if (total > 2e7) throw GuardExceeded("automorphisms: candidate count exceeds brute-force limit");
    std::vector<Hom> out;
    std::vector<size_t> pick(t, 0);
    std::vector<Element> imgs(t);
    long long n = G.order();
    std::function<void(size_t)> rec = [&](size_t j) {
        if (j == t) {
            if (Subgroup::generated(G, imgs).order() == n) out.push_back(Hom::from_images(G, G, imgs));
            return;
        }
        for (const auto& e : cand[j]) {
            // an automorphism preserves element orders
            if (G.element_order(e) != G.factors()[j]) continue;
            imgs[j] = e;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Character> dual_characters(const FinAbGroup& G)
{
    std::vector<Character> out;
    for (const auto& e : G.elements()) out.push_back(Character{G, e});
    return out;
}

}  // namespace mtc
