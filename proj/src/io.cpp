#include "mtc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtc {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& s)
{
    std::string t = trim(s);
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer '" + t + "'");
    }
    if (pos != t.size()) throw std::invalid_argument("bad integer '" + t + "'");
    return v;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(trim(j.get<std::string>()));
    throw std::invalid_argument("expected a rational (integer or \"a/b\")");
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing JSON field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Cyclotomic& c)
{
    auto co = c.coeffs();
    while (!co.empty() && co.back() == 0) co.pop_back();
    Json arr = Json::array();
    for (const auto& r : co) arr.push_back(to_string(r));
    return Json{{"N", c.order()}, {"c", arr}};
}

Cyclotomic cyclotomic_from_json(const Json& j)
{
    if (j.is_number_integer() || j.is_string()) return Cyclotomic(rational_from_json(j));
    long long N = field(j, "N").get<long long>();
    std::vector<Rational> c;
    for (const auto& x : field(j, "c")) c.push_back(rational_from_json(x));
    return Cyclotomic::from_coeffs(N, c);
}

Json to_json(const ModularData& md)
{
    Json S = Json::array();
    for (const auto& row : md.S) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        S.push_back(r);
    }
    Json T = Json::array();
    for (const auto& x : md.T) T.push_back(to_json(x));
    return Json{{"labels", md.labels}, {"unit", md.unit}, {"S", S}, {"T", T}};
}

ModularData modular_data_from_json(const Json& j)
{
    ModularData md;
    try {
        md.labels = field(j, "labels").get<std::vector<std::string>>();
        md.unit = field(j, "unit").get<size_t>();
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("modular data: ") + e.what());
    }
    size_t n = md.labels.size();
    const Json& S = field(j, "S");
    const Json& T = field(j, "T");
    if (n == 0 || md.unit >= n) throw std::invalid_argument("modular data: unit out of range");
    if (!S.is_array() || S.size() != n || !T.is_array() || T.size() != n)
        throw std::invalid_argument("modular data: S must be n x n and T of length n");
    for (const auto& row : S) {
        if (!row.is_array() || row.size() != n) throw std::invalid_argument("modular data: S must be square");
        std::vector<Cyclotomic> r;
        for (const auto& x : row) r.push_back(cyclotomic_from_json(x));
        md.S.push_back(std::move(r));
    }
    for (const auto& x : T) md.T.push_back(cyclotomic_from_json(x));
    return md;
}

Json to_json(const QuadraticForm& q)
{
    Json v = Json::array();
    for (const auto& r : q.values()) v.push_back(to_string(r));
    return Json{{"group", q.group().to_string()}, {"values", v}};
}

QuadraticForm form_from_json(const Json& j)
{
    auto G = FinAbGroup::parse(field(j, "group").get<std::string>());
    std::vector<Rational> v;
    for (const auto& x : field(j, "values")) v.push_back(mod1(rational_from_json(x)));
    if (static_cast<long long>(v.size()) != G.order()) throw std::invalid_argument("form: need one value per group element");
    return QuadraticForm(G, v);
}

Json to_json(const FusionRing& R)
{
    Json N = Json::array();
    size_t n = R.N.n;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (R.N(a, b, c) != 0) N.push_back({a, b, c, R.N(a, b, c)});
    return Json{{"labels", R.labels}, {"unit", R.unit}, {"N", N}};
}

Json to_json(const Subgroup& H) { return Json{{"order", H.order()}, {"generators", H.basis()}}; }

Json to_json(const Pairing& p)
{
    Json E = Json::array();
    for (const auto& row : p.matrix()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        E.push_back(r);
    }
    return Json{{"left", p.left().to_string()}, {"right", p.right().to_string()}, {"E", E}};
}

RatMat parse_rat_matrix(const std::string& text)
{
    RatMat M;
    for (const auto& row : split(text, ';')) {
        std::vector<Rational> r;
        for (const auto& x : split(row, ',')) r.push_back(parse_rational(trim(x)));
        M.push_back(std::move(r));
    }
    for (const auto& r : M)
        if (r.size() != M[0].size()) throw std::invalid_argument("matrix rows have different lengths: " + text);
    return M;
}

IntMat parse_int_matrix(const std::string& text)
{
    IntMat M;
    for (const auto& row : split(text, ';')) {
        std::vector<long long> r;
        for (const auto& x : split(row, ',')) r.push_back(parse_int(x));
        M.push_back(std::move(r));
    }
    for (const auto& r : M)
        if (r.size() != M[0].size()) throw std::invalid_argument("matrix rows have different lengths: " + text);
    return M;
}

Subgroup parse_subgroup(const FinAbGroup& G, const std::string& text)
{
    std::string t = trim(text);
    if (t.empty() || t == "0") return Subgroup::trivial(G);
    if (t == "all") return Subgroup::full(G);
    std::vector<Element> gens;
    for (const auto& g : parse_int_matrix(t)) {
        if (g.size() != G.rank()) throw std::invalid_argument("subgroup generator has the wrong number of coordinates");
        gens.push_back(G.reduce(g));
    }
    return Subgroup::generated(G, gens);
}

Pairing parse_pairing(const FinAbGroup& G, const std::string& text)
{
    if (trim(text) == "standard") return standard_pairing(G);
    auto E = parse_rat_matrix(text);
    if (E.size() != G.rank() || (!E.empty() && E[0].size() != G.rank()))
        throw std::invalid_argument("pairing matrix must be " + std::to_string(G.rank()) + " x " + std::to_string(G.rank()));
    return Pairing::square(G, E);
}

std::string invariants_to_csv(const std::vector<IntMat>& Z)
{
    std::ostringstream os;
    for (size_t k = 0; k < Z.size(); ++k) {
        if (k) os << '\n';
        for (const auto& row : Z[k]) {
            for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
            os << '\n';
        }
    }
    return os.str();
}

std::vector<IntMat> invariants_from_csv(const std::string& text)
{
    std::vector<IntMat> out;
    IntMat cur;
    std::istringstream is(text);
    std::string line;
    auto flush = [&] {
        if (cur.empty()) return;
        for (const auto& r : cur)
            if (r.size() != cur.size()) throw std::invalid_argument("invariant CSV: matrix is not square");
        out.push_back(std::move(cur));
        cur.clear();
    };
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) {
            flush();
            continue;
        }
        std::vector<long long> r;
        for (const auto& x : split(line, ',')) r.push_back(parse_int(x));
        cur.push_back(std::move(r));
    }
    flush();
    return out;
}

std::vector<IntMat> invariants_from_text(const std::string& text)
{
    std::string t = trim(text);
    if (t.empty() || (t[0] != '[' && t[0] != '{')) return invariants_from_csv(text);
    Json j;
    try {
        j = Json::parse(t);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("invariants JSON: ") + e.what());
    }
    if (j.is_object()) j = field(j, "invariants");
    try {
        if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_number()) return {j.get<IntMat>()};
        return j.get<std::vector<IntMat>>();
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("invariants JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace mtc
