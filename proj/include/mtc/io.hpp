#pragma once

#include "mtc/groupoid.hpp"
#include "mtc/lattice.hpp"
#include "mtc/modular.hpp"
#include "mtc/ty.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mtc {

using Json = nlohmann::json;

// {"N": order, "c": [rational strings]}, power basis coefficients with trailing zeros dropped.
Json to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const Json& j);
Json to_json(const ModularData& md);  // {"labels","unit","S","T"}
ModularData modular_data_from_json(const Json& j);
Json to_json(const QuadraticForm& q);  // {"group","values"}
QuadraticForm form_from_json(const Json& j);
Json to_json(const FusionRing& R);  // {"labels","unit","N"}, N a list of nonzero [a, b, c, N_ab^c]
Json to_json(const Subgroup& H);   // {"order","generators"}
Json to_json(const Pairing& p);    // {"left","right","E"}
Json to_json(const Rational& r);   // "a/b"

// "1/2,0;0,1/2": rows split by ';', entries by ','.
RatMat parse_rat_matrix(const std::string& text);
IntMat parse_int_matrix(const std::string& text);
// Generators in coordinates, separated by ';'. Empty or "0" gives the trivial subgroup.
Subgroup parse_subgroup(const FinAbGroup& G, const std::string& text);
// "standard" or an E-matrix as above.
Pairing parse_pairing(const FinAbGroup& G, const std::string& text);

// Invariant matrices: rows of comma-separated integers, matrices separated by blank lines, '#' comments.
std::string invariants_to_csv(const std::vector<IntMat>& Z);
std::vector<IntMat> invariants_from_csv(const std::string& text);
// JSON matrix, array of matrices, {"invariants": [...]} or CSV.
std::vector<IntMat> invariants_from_text(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace mtc
