#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snforge/applications.hpp"
#include "snforge/backends.hpp"

namespace snforge::io {

using json = nlohmann::json;

inline constexpr const char* kProblemSchema = "snforge-problem/1";
inline constexpr const char* kCertificateSchema = "snforge-certificate/1";

/// Sorted keys, no whitespace. nlohmann's object type is an ordered map,
/// so a plain compact dump is already canonical.
std::string canonical_dump(const json& j);
std::string sha256_hex(const std::string& data);

// Values. Field elements are strings ("-3/4"); polynomials and curve-ring
// elements are strings in x, y, z; other elements are arrays.
Field field_from_json(const json& j, const std::string& path = "");
json field_to_json(Field f);
/// Parses "3/4*x^2*y - (x + 1)^2" style expressions into a polynomial,
/// curve or field element of s.
RingElement parse_element(const RingPtr& s, const std::string& text, const std::string& path = "");
json element_to_json(const RingElement& x);
RingElement element_from_json(const RingPtr& s, const json& j, const std::string& path = "");
json tensor_to_json(const TensorElement& u);
TensorElement tensor_from_json(const AlgebraPtr& r, const RingPtr& s, const json& j, const std::string& path = "");
json vec_to_json(const Vec& v);
Vec vec_from_json(Field f, std::size_t size, const json& j, const std::string& path = "");

/// Named descriptors are emitted when the algebra is one of the standard
/// constructions (matrix, quaternion, ...), otherwise the sparse table.
json algebra_to_json(const AlgebraPtr& a);
AlgebraPtr algebra_from_json(const json& j, const std::string& path = "");
json ring_to_json(const RingPtr& s);
RingPtr ring_from_json(const json& j, const std::string& path = "");

enum class Task { validate, solve, decompose_aut, derivation, flip_check };
std::string task_name(Task t);

/// Parsed problem file. Only the fields of its task are set.
struct Problem {
  Task task = Task::solve;
  AlgebraPtr r;
  RingPtr s;
  // validate / solve
  std::vector<TensorElement> images;
  std::optional<TensorElement> conjugator;
  std::optional<std::string> backend;
  // decompose-aut
  std::size_t n = 0;
  std::optional<AutData> automorphism;
  std::optional<AutData> inverse;
  // derivation
  std::optional<Bimodule> bimodule;
  bool regular_bimodule = false;
  std::vector<Vec> values;

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> trials;
};

/// Throws InputError naming the JSON pointer of the first problem; unknown
/// fields are errors. Mathematical validation happens later.
Problem problem_from_json(const json& j);
json problem_to_json(const Problem& p);
std::string problem_digest(const Problem& p);

/// Problem for a solve of phi, optionally with its conjugation presentation.
Problem solve_problem(const HomSpec& phi, std::optional<TensorElement> conjugator = std::nullopt);

/// sha256 over the problem digest and the transcript lines.
std::string transcript_digest(const std::string& problem_digest, const std::vector<std::string>& transcript);

json certificate_to_json(const Certificate& cert, const std::string& problem_digest, bool emit_coefficients = false);
json aut_certificate_to_json(const AutDecomposition& d, const std::string& problem_digest);
json derivation_certificate_to_json(const DerivationWitness& w, const std::string& problem_digest);
json flip_certificate_to_json(const FlipResult& f, const std::string& problem_digest);

/// JSON Schema documents for the two file formats.
json problem_schema();
json certificate_schema();

}  // namespace snforge::io
