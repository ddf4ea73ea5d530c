#ifndef ISOFOCAL_TOOLS_CLI_HPP
#define ISOFOCAL_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "isofocal/marden.hpp"

namespace isofocal::cli {

enum ExitCode { kOk = 0, kInvalid = 2, kNumerical = 3, kNoDecomposition = 4 };

struct JobConfig {
  std::string command;
  // Pencil form, coefficients in ascending degree.
  std::optional<Poly> phi, f, g;
  // Configuration form.
  std::optional<MassedConfig> config;

  double t0 = 0.0, t1 = 1.0;
  int grid = 11;
  double tol = kDefaultTol;
  std::string format;  ///< json, csv or svg; empty picks the command default
  std::string out;
  std::uint64_t seed = 0;

  // family
  int n = 0;
  std::vector<cplx> params;
  // elliptic
  std::string mode = "odd";
  int m = 0, m_prime = 1;
  double k = 0.5;
  std::optional<Poly> P, Q;
  // arith
  int odd_max = 99, pow2_max = 12;
  // corpus
  int count = 10;
};

struct JobResult {
  int status = kOk;
  std::string artifact;
  std::string diagnostic;  ///< JSON, on failure
};

JobResult execute(const JobConfig& job);

/// Throws InvalidInput when more or fewer than one input form is given or a tolerance is not positive.
void check_job(const JobConfig& job);

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const VectorXc& v);
nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const JobConfig& job);
cplx complex_from_json(const nlohmann::json& j);
VectorXc vector_from_json(const nlohmann::json& j);
Poly poly_from_json(const nlohmann::json& j);
JobConfig job_from_json(const nlohmann::json& j);

/// "1,-2.5,0:1" with re:im for complex entries.
std::vector<cplx> parse_complex_list(const std::string& text);

std::string format_number(double x);

}  // namespace isofocal::cli

#endif  // ISOFOCAL_TOOLS_CLI_HPP
