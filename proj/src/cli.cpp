#include "mtc/cli.hpp"

#include "mtc/groupoid.hpp"
#include "mtc/io.hpp"
#include "mtc/lattice.hpp"
#include "mtc/pointed.hpp"
#include "mtc/simple_current.hpp"
#include "mtc/ty.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace mtc {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    bool json = false, csv = false;
    long long max_order = 1024;
    int threads = 1;
    std::string out;

    std::string group, pairing = "standard", form, other, lattice, md, inv, via = "jpsi", sign = "+";
    std::string subgroup, psi, gram, name, glue, chain, rep;
    size_t first = 0, second = 0, from = 0, to = 0;
    long long nu = 1;
    int random = 0;
    unsigned long long seed = 1;
    bool ty_double = false;
};

struct Output {
    Json json;
    std::optional<std::string> csv;  // set when the verb has a CSV rendering
    int status = kOk;
};

using Handler = std::function<Output(const Options&)>;

void require_order(const Options& o, long long n, const std::string& what)
{
    if (n > o.max_order)
        throw GuardExceeded(what + ": order " + std::to_string(n) + " exceeds --max-order " + std::to_string(o.max_order));
}

FinAbGroup need_group(const Options& o)
{
    if (o.group.empty()) throw UsageError("--group is required");
    auto G = FinAbGroup::parse(o.group);
    require_order(o, G.order(), "group");
    return G;
}

int parse_sign(const std::string& s)
{
    if (s == "+" || s == "1" || s == "+1") return 1;
    if (s == "-" || s == "-1") return -1;
    throw UsageError("--sign must be + or -");
}

Lattice lattice_from_names(const std::string& spec)
{
    std::optional<Lattice> L;
    std::string part;
    std::istringstream is(spec);
    while (std::getline(is, part, '+')) {
        auto M = named(part);
        L = L ? direct_sum(*L, M) : M;
    }
    if (!L) throw UsageError("empty lattice name");
    return *L;
}

Lattice load_lattice(const Options& o)
{
    if (!o.gram.empty() && !o.name.empty()) throw UsageError("give one of --gram and --name");
    if (!o.gram.empty()) return make_lattice(parse_int_matrix(o.gram));
    if (!o.name.empty()) return lattice_from_names(o.name);
    if (!o.lattice.empty()) return lattice_from_names(o.lattice);
    throw UsageError("--gram or --name is required");
}

QuadraticForm form_from_arg(const std::string& arg)
{
    if (std::filesystem::exists(arg)) {
        Json j;
        try {
            j = Json::parse(read_file(arg));
        } catch (const Json::exception& e) {
            throw UsageError(arg + ": " + e.what());
        }
        return form_from_json(j);
    }
    return form_from_descriptors(parse_descriptors(arg)).q;
}

QuadraticForm load_form(const Options& o)
{
    if (!o.form.empty() && !o.lattice.empty()) throw UsageError("give one of --form and --lattice");
    QuadraticForm q;
    if (!o.lattice.empty()) q = discriminant(lattice_from_names(o.lattice)).q;
    else if (!o.form.empty()) q = form_from_arg(o.form);
    else throw UsageError("--form or --lattice is required");
    require_order(o, q.group().order(), "form");
    return q;
}

ModularData load_md(const Options& o)
{
    if (!o.md.empty()) {
        if (!o.form.empty() || !o.lattice.empty()) throw UsageError("give one of --md, --form and --lattice");
        Json j;
        try {
            j = Json::parse(read_file(o.md));
        } catch (const Json::exception& e) {
            throw UsageError(o.md + ": " + e.what());
        }
        auto md = modular_data_from_json(j);
        require_order(o, static_cast<long long>(md.size()), "modular data");
        return md;
    }
    return weil(load_form(o));
}

TYData load_ty(const Options& o)
{
    auto G = need_group(o);
    return ty_data(parse_pairing(G, o.pairing), parse_sign(o.sign));
}

Json int_mats(const std::vector<IntMat>& v) { return Json(v); }

std::vector<IntMat> sorted_unique(std::vector<IntMat> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

size_t position(const std::vector<IntMat>& sorted, const IntMat& Z)
{
    return static_cast<size_t>(std::lower_bound(sorted.begin(), sorted.end(), Z) - sorted.begin());
}

Output with_csv(Json j, const std::vector<IntMat>& mats, int status = kOk)
{
    Output r;
    r.json = std::move(j);
    r.csv = invariants_to_csv(mats);
    r.status = status;
    return r;
}

Output plain(Json j, int status = kOk)
{
    Output r;
    r.json = std::move(j);
    r.status = status;
    return r;
}

// ---- group, forms, weil

Output group_subgroups(const Options& o)
{
    auto G = need_group(o);
    Json list = Json::array();
    for (const auto& H : all_subgroups(G)) list.push_back(to_json(H));
    return plain({{"group", G.to_string()}, {"count", list.size()}, {"subgroups", list}});
}

Output group_autos(const Options& o)
{
    auto G = need_group(o);
    Json list = Json::array();
    for (const auto& a : automorphisms(G)) list.push_back(a.matrix());
    return plain({{"group", G.to_string()}, {"count", list.size()}, {"automorphisms", list}});
}

Output forms_list(const Options& o)
{
    auto G = need_group(o);
    std::vector<QuadraticForm> all;
    for (const auto& p : symmetric_pairings(G))
        if (p.is_nondegenerate())
            for (auto& q : forms_for_pairing(p)) all.push_back(q);
    std::sort(all.begin(), all.end(), [](const QuadraticForm& a, const QuadraticForm& b) { return a.values() < b.values(); });
    auto cls = form_classes(all);
    Json list = Json::array();
    int classes = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        Json f = to_json(all[i]);
        f["class"] = cls[i];
        f["signature_mod_8"] = gauss_sum(all[i]).signature_mod_8;
        classes = std::max(classes, cls[i] + 1);
        list.push_back(f);
    }
    return plain({{"group", G.to_string()}, {"count", list.size()}, {"classes", classes}, {"forms", list}});
}

Output forms_gauss(const Options& o)
{
    auto q = load_form(o);
    auto g = gauss_sum(q);
    return plain({{"form", to_json(q)},
                  {"sum", to_json(g.sum)},
                  {"normalized", to_json(g.normalized)},
                  {"signature_mod_8", g.signature_mod_8}});
}

Output forms_equiv(const Options& o)
{
    if (o.other.empty()) throw UsageError("--other is required");
    auto a = load_form(o);
    auto b = form_from_arg(o.other);
    auto m = a.group() == b.group() ? forms_equivalent(a, b) : std::nullopt;
    Json j{{"equivalent", m.has_value()}};
    j["map"] = m ? Json(m->matrix()) : Json(nullptr);
    return plain(j);
}

Output weil_verb(const Options& o)
{
    auto md = weil(load_form(o));
    return plain(to_json(md));
}

// ---- invariants

struct Enumerated {
    std::vector<IntMat> matrices;  // sorted, distinct
    Json parameters = Json::array();
};

Enumerated enumerate_via(const Options& o, const std::string& via)
{
    Enumerated e;
    if (via == "jpsi") {
        auto md = load_md(o);
        auto sc = simple_currents(md);
        auto all = enumerate_sc(md, sc);
        e.matrices = all.distinct;
        for (const auto& en : all.entries)
            e.parameters.push_back({{"J", to_json(en.param.J)},
                                    {"psi", to_json(en.param.psi)},
                                    {"epsilon", to_json(en.param.epsilon)},
                                    {"matrix", position(e.matrices, en.invariant.matrix)}});
    } else if (via == "brute") {
        auto md = load_md(o);
        std::vector<IntMat> v;
        for (auto& z : brute_force_invariants(md)) v.push_back(z.matrix);
        e.matrices = sorted_unique(v);
    } else if (via == "dpm" || via == "z") {
        if (!o.md.empty()) throw UsageError("--via " + via + " needs --form or --lattice");
        auto q = load_form(o);
        std::vector<IntMat> v;
        std::vector<std::pair<Json, IntMat>> params;
        if (via == "dpm") {
            for (const auto& p : enum_dpm(q)) {
                auto Z = z_to_matrix(q, dpm_to_z(q, p));
                v.push_back(Z);
                params.push_back({{{"D_plus", to_json(p.D_plus)}, {"D_minus", to_json(p.D_minus)}, {"sigma", p.sigma.matrix()}}, Z});
            }
        } else {
            for (const auto& z : enum_z(q)) {
                auto Z = z_to_matrix(q, z);
                v.push_back(Z);
                params.push_back({{{"Z", to_json(z.Z)}}, Z});
            }
        }
        e.matrices = sorted_unique(v);
        for (auto& [j, Z] : params) {
            j["matrix"] = position(e.matrices, Z);
            e.parameters.push_back(j);
        }
    } else {
        throw UsageError("--via must be jpsi, dpm, z or brute");
    }
    return e;
}

Output invariants_enumerate(const Options& o)
{
    auto e = enumerate_via(o, o.via);
    return with_csv({{"via", o.via}, {"count", e.matrices.size()}, {"invariants", int_mats(e.matrices)}, {"parameters", e.parameters}},
                    e.matrices);
}

Output invariants_product(const Options& o)
{
    auto md = load_md(o);
    auto sc = simple_currents(md);
    auto all = enumerate_sc(md, sc);
    if (o.first >= all.entries.size() || o.second >= all.entries.size())
        throw UsageError("--first/--second must be below " + std::to_string(all.entries.size()));
    auto r = invariant_product(md, sc, all, o.first, o.second);
    Json j{{"n", r.n}, {"Z3", r.Z3}, {"divisible", r.divisible}, {"J_formula", to_json(r.J_formula)}, {"formula_defect", r.formula_defect}};
    j["entry"] = r.entry ? Json(*r.entry) : Json(nullptr);
    bool ok = r.divisible && r.entry.has_value() && r.formula_defect.empty();
    return with_csv(j, {r.Z3}, ok ? kOk : kInconsistent);
}

Json check_list(const ModularData& md, const std::vector<IntMat>& Z, bool& all_ok)
{
    auto sc = simple_currents(md);
    Json list = Json::array();
    all_ok = true;
    for (const auto& z : Z) {
        if (z.size() != md.size()) throw UsageError("invariant size does not match the modular data");
        auto c = check_invariant(md, z, &sc);
        all_ok = all_ok && c.ok;
        list.push_back({{"ok", c.ok}, {"failures", c.failures}, {"proposition1", c.proposition1}});
    }
    return list;
}

Output invariants_check(const Options& o)
{
    if (o.inv.empty()) throw UsageError("--inv is required");
    auto md = load_md(o);
    auto Z = invariants_from_text(read_file(o.inv));
    if (Z.empty()) throw UsageError(o.inv + ": no matrices");
    bool ok = false;
    Json list = check_list(md, Z, ok);
    return plain({{"ok", ok}, {"checks", list}}, ok ? kOk : kInconsistent);
}

Output verify(const Options& o)
{
    if (o.md.empty()) throw UsageError("--md is required");
    auto md = load_md(o);
    auto v = validate_modular(md);
    Json j{{"modular", v.ok()}, {"failures", v.failures}};
    bool ok = v.ok();
    if (!o.inv.empty()) {
        bool inv_ok = false;
        j["checks"] = check_list(md, invariants_from_text(read_file(o.inv)), inv_ok);
        ok = ok && inv_ok;
    }
    j["ok"] = ok;
    return plain(j, ok ? kOk : kInconsistent);
}

// ---- ty

Output ty_fusion_verb(const Options& o) { return plain(to_json(ty_fusion(need_group(o)))); }

Output ty_assoc(const Options& o)
{
    auto F = ty_associator(load_ty(o));
    Json list = Json::array();
    for (const auto& [k, M] : F.F) {
        Json rows = Json::array();
        for (const auto& r : M) {
            Json row = Json::array();
            for (const auto& x : r) row.push_back(to_json(x));
            rows.push_back(row);
        }
        list.push_back({{"abcd", k}, {"rows", F.rows(k[0], k[1], k[2], k[3])}, {"cols", F.cols(k[0], k[1], k[2], k[3])}, {"F", rows}});
    }
    return plain({{"labels", F.ring.labels}, {"F", list}});
}

Output ty_pentagon(const Options& o)
{
    auto r = pentagon_check(ty_associator(load_ty(o)));
    return plain({{"ok", r.ok}, {"equations", r.equations}, {"witness", r.witness}}, r.ok ? kOk : kInconsistent);
}

QuadraticForm ty_form(const Options& o, const TYData& d)
{
    if (!o.form.empty()) return form_from_arg(o.form);
    auto forms = forms_for_pairing(d.pairing);
    if (forms.empty()) throw UsageError("no quadratic form polarizes to the pairing");
    return forms.front();
}

ModularData ty_double_md(const Options& o)
{
    auto d = load_ty(o);
    return ty_double(d, ty_form(o, d));
}

Output ty_double_verb(const Options& o) { return plain(to_json(ty_double_md(o))); }

Output ty_equiv_verb(const Options& o)
{
    auto e = ty_equiv(load_ty(o));
    Json j{{"degenerate", e.degenerate}, {"lambda_squared", to_json(e.lambda_squared)}, {"x", to_json(e.x)}, {"modular_data", to_json(e.md)}};
    j["equal_rows"] = e.equal_rows ? Json{e.equal_rows->first, e.equal_rows->second} : Json(nullptr);
    return plain(j);
}

std::vector<Subgroup> chosen_subgroups(const Options& o, const FinAbGroup& G)
{
    if (!o.subgroup.empty()) return {parse_subgroup(G, o.subgroup)};
    return all_subgroups(G);
}

Output ty_nimrep(const Options& o)
{
    auto d = load_ty(o);
    auto R = ty_fusion(d.G);
    Json list = Json::array();
    bool ok = true;
    for (const auto& H : chosen_subgroups(o, d.G)) {
        auto HG = H.as_group();
        Pairing psi = o.psi.empty() ? Pairing::zero(HG, HG) : parse_pairing(HG, o.psi);
        auto M = ty_module_nimrep(d, H, psi);
        auto defect = nimrep_defect(R, M.matrices);
        ok = ok && defect.empty();
        list.push_back({{"subgroup", to_json(H)}, {"psi", to_json(psi)}, {"labels", M.labels}, {"matrices", M.matrices}, {"defect", defect}});
    }
    return plain({{"simples", R.labels}, {"modules", list}}, ok ? kOk : kInconsistent);
}

Output ty_invariant(const Options& o)
{
    auto d = load_ty(o);
    auto e = ty_equiv(d);
    if (e.degenerate) throw std::domain_error("ty invariant: the equivariantization is degenerate for even |G|");
    auto q = ty_lattice_form(d);
    Json list = Json::array();
    std::vector<IntMat> mats;
    bool ok = true;
    for (const auto& H : chosen_subgroups(o, d.G))
        for (const auto& psi : alternating_pairings(H.as_group())) {
            ModularInvariant Z;
            try {
                Z = equiv_invariant(d, q, H, psi);
            } catch (const std::invalid_argument& ex) {
                list.push_back({{"subgroup", to_json(H)}, {"psi", to_json(psi)}, {"skipped", ex.what()}});
                continue;
            }
            auto c = check_invariant(e.md, Z.matrix);
            ok = ok && c.ok;
            mats.push_back(Z.matrix);
            list.push_back({{"subgroup", to_json(H)}, {"psi", to_json(psi)}, {"matrix", Z.matrix}, {"ok", c.ok}, {"failures", c.failures}});
        }
    return with_csv({{"labels", e.md.labels}, {"invariants", list}}, mats, ok ? kOk : kInconsistent);
}

Output ty_hg(const Options& o) { return plain(to_json(hg_fusion(o.nu))); }

// ---- lattice

Json lattice_json(const Lattice& L)
{
    return {{"gram", L.gram}, {"rank", L.rank()}, {"det", determinant(L.gram)}};
}

Output lattice_named(const Options& o)
{
    if (o.name.empty()) throw UsageError("--name is required");
    auto j = lattice_json(lattice_from_names(o.name));
    j["name"] = o.name;
    return plain(j);
}

Output lattice_disc(const Options& o)
{
    auto L = load_lattice(o);
    auto D = discriminant(L);
    auto g = gauss_sum(D.q);
    bool milgram = g.signature_mod_8 == static_cast<int>(L.rank() % 8);
    auto j = lattice_json(L);
    j["form"] = to_json(D.q);
    j["signature_mod_8"] = g.signature_mod_8;
    j["milgram"] = milgram;
    return plain(j, milgram ? kOk : kInconsistent);
}

Output lattice_glue(const Options& o)
{
    if (o.glue.empty()) throw UsageError("--glue is required");
    auto L = load_lattice(o);
    auto G = glue_with_basis(L, parse_rat_matrix(o.glue));
    auto j = lattice_json(G.lattice);
    Json basis = Json::array();
    for (const auto& v : G.basis) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        basis.push_back(row);
    }
    j["basis"] = basis;
    j["group"] = discriminant(G.lattice).group.to_string();
    return plain(j);
}

Output lattice_realize(const Options& o)
{
    if (o.form.empty()) throw UsageError("--form is required");
    Realization r;
    QuadraticForm target;
    if (std::filesystem::exists(o.form)) {
        target = form_from_arg(o.form);
        r = realize(target);
    } else {
        auto ds = parse_descriptors(o.form);
        target = form_from_descriptors(ds).q;
        r = realize(ds);
    }
    auto D = discriminant(r.lattice);
    bool ok = D.group == target.group() && forms_equivalent(D.q, target).has_value();
    auto j = lattice_json(r.lattice);
    j["construction"] = r.construction;
    j["verified"] = ok;
    return plain(j, ok ? kOk : kInconsistent);
}

// ---- groupoid

size_t point_label(const FinAbGroup& G, size_t i)
{
    if (i >= static_cast<size_t>(G.order())) throw UsageError("label index out of range");
    return i;
}

Output groupoid_corr(const Options& o)
{
    auto G = need_group(o);
    auto k = k_basis(point_groupoid(G));
    Correspondence c;
    if (!o.rep.empty()) {
        auto V = parse_int_matrix(o.rep);
        if (V.size() != 1 || V[0].size() != k.size()) throw UsageError("--rep needs one multiplicity per label");
        c = representation_correspondence(G, V[0]);
    } else {
        c = matrix_unit(G, point_label(G, o.from), point_label(G, o.to));
    }
    return plain({{"labels", k.names}, {"matrix", corr_matrix(c)}});
}

Output groupoid_compose(const Options& o)
{
    Json j;
    bool ok = true;
    if (o.random > 0) {
        std::mt19937_64 rng(o.seed);
        int bad = 0;
        for (int t = 0; t < o.random; ++t) {
            auto A = random_groupoid(rng), B = random_groupoid(rng), C = random_groupoid(rng);
            auto c1 = random_correspondence(rng, A, B);
            auto c2 = random_correspondence(rng, B, C);
            if (corr_matrix(compose(c1, c2)) != matrix_product(corr_matrix(c2), corr_matrix(c1))) ++bad;
        }
        ok = bad == 0;
        j = {{"cases", o.random}, {"seed", o.seed}, {"failures", bad}};
    } else {
        if (o.chain.empty()) throw UsageError("--chain or --random is required");
        auto G = need_group(o);
        auto steps = parse_int_matrix(o.chain);
        std::optional<Correspondence> c;
        std::optional<IntMat> product;
        for (const auto& s : steps) {
            if (s.size() != 2 || s[0] < 0 || s[1] < 0) throw UsageError("--chain entries are V,W pairs");
            auto u = matrix_unit(G, point_label(G, static_cast<size_t>(s[0])), point_label(G, static_cast<size_t>(s[1])));
            auto m = corr_matrix(u);
            product = product ? matrix_product(m, *product) : m;
            c = c ? compose(*c, u) : u;
        }
        auto composed = corr_matrix(*c);
        ok = composed == *product;
        j = {{"labels", k_basis(point_groupoid(G)).names}, {"composed", composed}, {"product", *product}};
    }
    j["ok"] = ok;
    return plain(j, ok ? kOk : kInconsistent);
}

// ---- cross-check

Output cross_check(const Options& o)
{
    Json sets;
    if (o.ty_double) {
        auto md = ty_double_md(o);
        require_order(o, static_cast<long long>(md.size()), "modular data");
        auto sc = simple_currents(md);
        auto sce = enumerate_sc(md, sc).distinct;
        std::vector<IntMat> brute;
        for (auto& z : brute_force_invariants(md)) brute.push_back(z.matrix);
        brute = sorted_unique(brute);
        bool subset = std::includes(brute.begin(), brute.end(), sce.begin(), sce.end());
        bool equal = subset && sce.size() == brute.size();
        return plain({{"kind", "ty-double"},
                      {"primaries", md.size()},
                      {"sets", {{"jpsi", sce.size()}, {"brute", brute.size()}}},
                      {"jpsi_subset_of_brute", subset},
                      {"equal", equal}},
                     subset ? kOk : kInconsistent);
    }
    std::map<std::string, std::vector<IntMat>> got;
    for (auto via : {"jpsi", "dpm", "z", "brute"}) got[via] = enumerate_via(o, via).matrices;
    bool equal = true;
    for (const auto& [k, v] : got) {
        sets[k] = v.size();
        equal = equal && v == got["brute"];
    }
    return plain({{"kind", "weil"}, {"sets", sets}, {"equal", equal}, {"size", got["brute"].size()}}, equal ? kOk : kInconsistent);
}

void write_output(const Options& o, const Output& r, std::ostream& out)
{
    std::string text;
    if (o.csv) {
        if (!r.csv) throw UsageError("--csv is only available for invariant matrices");
        text = *r.csv;
    } else {
        text = r.json.dump() + "\n";
    }
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Modular data, modular invariants and Tambara-Yamagami tools", "mtc"};
    app.require_subcommand(1);
    app.fallthrough();
    auto* fmt = app.add_option_group("format");
    fmt->add_flag("--json", o.json, "JSON output (default)");
    fmt->add_flag("--csv", o.csv, "CSV output for invariant matrices");
    fmt->require_option(0, 1);
    app.add_option("--max-order", o.max_order, "guard on group and modular-data sizes")->check(CLI::PositiveNumber);
    app.add_option("--threads", o.threads, "OpenMP threads")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "write output to a file");

    std::vector<std::pair<CLI::App*, Handler>> leaves;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        leaves.emplace_back(s, std::move(h));
        return s;
    };
    auto verb = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->require_subcommand(1);
        return s;
    };
    auto form_opts = [&](CLI::App* s) {
        s->add_option("--form", o.form, "form descriptor (e.g. 3^1_+,2^1_1) or JSON file {group, values}");
        s->add_option("--lattice", o.lattice, "discriminant form of a named lattice sum (e.g. sqrt2n:4, A1+E7)");
    };
    auto md_opts = [&](CLI::App* s) {
        form_opts(s);
        s->add_option("--md", o.md, "modular data JSON file");
    };
    auto ty_opts = [&](CLI::App* s) {
        s->add_option("--group", o.group, "group spec (e.g. 3, 2x2)")->required();
        s->add_option("--pairing", o.pairing, "standard or an E-matrix such as 1/2,0;0,1/2");
        s->add_option("--sign", o.sign, "+ or -");
    };
    auto group_opt = [&](CLI::App* s) { s->add_option("--group", o.group, "group spec (e.g. 3, 2x2)")->required(); };

    auto* group = verb("group", "finite abelian groups");
    group_opt(leaf(group, "subgroups", "all subgroups", group_subgroups));
    group_opt(leaf(group, "autos", "automorphisms", group_autos));

    auto* forms = verb("forms", "quadratic forms");
    group_opt(leaf(forms, "list", "nondegenerate forms with Aut(G) classes", forms_list));
    form_opts(leaf(forms, "gauss", "Gauss sum and signature", forms_gauss));
    auto* fe = leaf(forms, "equiv", "equivalence of two forms", forms_equiv);
    form_opts(fe);
    fe->add_option("--other", o.other, "second form")->required();

    form_opts(leaf(&app, "weil", "Weil modular data of a form", weil_verb));

    auto* inv = verb("invariants", "modular invariants");
    auto* ie = leaf(inv, "enumerate", "enumerate modular invariants", invariants_enumerate);
    md_opts(ie);
    ie->add_option("--via", o.via, "jpsi, dpm, z or brute")->check(CLI::IsMember({"jpsi", "dpm", "z", "brute"}));
    auto* ip = leaf(inv, "product", "product of two simple-current invariants", invariants_product);
    md_opts(ip);
    ip->add_option("--first", o.first, "entry index")->required();
    ip->add_option("--second", o.second, "entry index")->required();
    auto* ic = leaf(inv, "check", "check claimed invariants", invariants_check);
    md_opts(ic);
    ic->add_option("--inv", o.inv, "CSV or JSON matrices")->required();

    auto* vf = leaf(&app, "verify", "validate modular data and optional invariants", verify);
    vf->add_option("--md", o.md, "modular data JSON file")->required();
    vf->add_option("--inv", o.inv, "CSV or JSON matrices");

    auto* ty = verb("ty", "Tambara-Yamagami categories");
    group_opt(leaf(ty, "fusion", "fusion ring", ty_fusion_verb));
    ty_opts(leaf(ty, "assoc", "F-symbols", ty_assoc));
    ty_opts(leaf(ty, "pentagon", "exhaustive pentagon check", ty_pentagon));
    auto* td = leaf(ty, "double", "modular data of the double", ty_double_verb);
    ty_opts(td);
    td->add_option("--form", o.form, "quadratic form polarizing to the pairing");
    ty_opts(leaf(ty, "equiv", "Z2-equivariantization", ty_equiv_verb));
    auto* tn = leaf(ty, "nimrep", "module categories from subgroups", ty_nimrep);
    ty_opts(tn);
    tn->add_option("--subgroup", o.subgroup, "generators, e.g. 1;0 (default: every subgroup)");
    tn->add_option("--psi", o.psi, "alternating E-matrix on the subgroup");
    auto* ti = leaf(ty, "invariant", "equivariantization invariants from subgroups", ty_invariant);
    ty_opts(ti);
    ti->add_option("--subgroup", o.subgroup, "generators (default: every subgroup)");
    leaf(ty, "hg", "Haagerup-Izumi double fusion ring", ty_hg)->add_option("--nu", o.nu, "odd nu")->required();

    auto* lat = verb("lattice", "even lattices");
    auto lat_opts = [&](CLI::App* s) {
        s->add_option("--gram", o.gram, "Gram matrix, rows split by ;");
        s->add_option("--name", o.name, "named lattices joined by +");
    };
    lat_opts(leaf(lat, "disc", "discriminant form", lattice_disc));
    auto* lg = leaf(lat, "glue", "glue dual vectors", lattice_glue);
    lat_opts(lg);
    lg->add_option("--glue", o.glue, "dual vectors in basis coordinates, split by ;")->required();
    leaf(lat, "realize", "lattice with a given discriminant form", lattice_realize)
        ->add_option("--form", o.form, "descriptors or form JSON file")
        ->required();
    leaf(lat, "named", "Gram matrix of a named lattice", lattice_named)->add_option("--name", o.name, "e.g. E8, D4+A2")->required();

    auto* gr = verb("groupoid", "correspondences of action groupoids");
    auto* gc = leaf(gr, "corr", "matrix of a correspondence over pt//G", groupoid_corr);
    group_opt(gc);
    gc->add_option("--from", o.from, "source label index (matrix unit)");
    gc->add_option("--to", o.to, "target label index (matrix unit)");
    gc->add_option("--rep", o.rep, "multiplicities V for pt <- pt//G -> pt//G");
    auto* gm = leaf(gr, "compose", "compose matrix units or random correspondences", groupoid_compose);
    gm->add_option("--group", o.group, "group spec");
    gm->add_option("--chain", o.chain, "matrix units V,W;V,W;...");
    gm->add_option("--random", o.random, "number of random functoriality cases");
    gm->add_option("--seed", o.seed, "seed for --random");

    auto* cc = leaf(&app, "cross-check", "compare every parametrization with the oracle", cross_check);
    form_opts(cc);
    cc->add_flag("--ty-double", o.ty_double, "use the double of a TY category");
    cc->add_option("--group", o.group, "group for --ty-double");
    cc->add_option("--pairing", o.pairing, "pairing for --ty-double");
    cc->add_option("--sign", o.sign, "sign for --ty-double");

    std::vector<const char*> argv{"mtc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    set_enumeration_guard(o.max_order);
    omp_set_num_threads(o.threads);
    try {
        for (auto& [s, h] : leaves)
            if (s->parsed()) {
                auto r = h(o);
                write_output(o, r, out);
                return r.status;
            }
        err << app.help();
        return kUsage;
    } catch (const GuardExceeded& e) {
        err << "guard: " << e.what() << "\n";
        return kGuard;
    } catch (const NotRealized& e) {
        err << "guard: " << e.what() << "\n";
        return kGuard;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << "\n";
        return kInconsistent;
    }
}

}  // namespace mtc
