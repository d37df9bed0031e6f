#pragma once

#include <optional>
#include <string>

#include "bispectral/concomitant.hpp"
#include "bispectral/context.hpp"
#include "bispectral/darboux.hpp"
#include "bispectral/grassmannian.hpp"
#include "json.hpp"

namespace bispectral::cli {

using Json = nlohmann::ordered_json;

// Raised for schema problems (missing or ill-typed fields); maps to exit code 1.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::string context_kind = "exp";
  std::optional<std::string> nu;  // text
  ParamEnv params;
  std::vector<std::pair<std::string, std::string>> param_texts;
  std::optional<std::string> u_text;
  std::string u_dialect = "generators";  // generators | raw
  std::optional<std::string> p_text;
  std::optional<std::string> q_text;
  std::string x_point = "1";
  std::string y_point = "1";
  std::string x_mode = "sym";
  std::string y_mode = "sym";
  std::optional<int> L;
  std::optional<int> M;
  CandidateBounds bounds;
};

Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& p);
CandidateBounds bounds_from_json(const Json& j);

// Resolves parameters first so that endpoints and nu can refer to them.
ParamEnv resolve_params(const std::vector<std::pair<std::string, std::string>>& texts);

Context make_context(const Problem& p);
EndpointSpec make_endpoints(const Problem& p);
DarbouxTransform make_transform(const Problem& p, const Context& ctx);
// max(1, d1 * d2) unless given.
std::pair<int, int> default_degrees(const Problem& p, const DarbouxTransform& t);

// Prints p with its variable renamed to var.
std::string poly_text(const Poly& p, const char* var);

Json pair_to_json(const CandidatePair& c);
Json transform_to_json(const DarbouxTransform& t);
Json result_to_json(const Problem& p, const DarbouxTransform& t, int L, int M, const SolveResult& r);

struct ConditionsFile {
  std::vector<ConditionFunctional> conditions;
  std::optional<ExponentMultiset> ambient;
  Problem solve;  // endpoints, L, M, params for --solve
};

ConditionsFile conditions_from_json(const Json& j);

}  // namespace bispectral::cli
