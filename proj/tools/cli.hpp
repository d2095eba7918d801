#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "vortexlab/error.hpp"
#include "vortexlab/hyperbolic.hpp"
#include "vortexlab/kw_solver.hpp"

namespace vortexlab::cli {

// Exit-code contract.
enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kBradlow = 2,
  kNotConverged = 3,
  kConstraint = 4,
  kParse = 5,
};

int exit_code_for(ErrorCode code);

/// Configuration error with a JSON-pointer-like field path ("zeros[1].mult")
/// or a line/column for malformed JSON.
class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, std::string field, const std::string& message)
      : Error(code, field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  VortexProblem problem;
  int nLat = 64;
  int nLon = 128;
  SolverConfig solver;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a config file; malformed JSON raises SyntaxError with line
/// and column.
RunConfig load_config(const std::string& path);

/// JSON text with 17-significant-digit floats, non-finite values as null,
/// key order preserved.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);
std::string format_double(double x);

/// {"code": ..., "message": ..., ["field": ...]} on one line.
std::string error_json(const Error& e);

/// Thread cap from VORTEXLAB_THREADS; the core runs single-threaded, so any
/// valid value maps to 1 worker. Throws InvalidInput on garbage.
int thread_cap();

int cmd_solve(const std::string& configPath, const std::string& outDir, std::ostream& log,
              std::ostream& err);

struct HyperbolicArgs {
  KRSWeights wX;
  KRSWeights wY;
  std::string map = "z";
  double tau = 1.0;
  int samples = 100;
  unsigned seed = 1;
  std::string outDir = ".";
};
KRSWeights parse_weights(const std::string& text);
int cmd_hyperbolic(const HyperbolicArgs& args, std::ostream& log, std::ostream& err);

struct ModuliArgs {
  int g = 0;
  int d = 1;
  int n = 1;
  double V = 4.0 * 3.14159265358979323846;
  double eSq = 1.0;
  double tau = 1.0;
  double alphaSum = 0.0;
  bool table = false;
  int gMax = 2;
  int dMax = 6;
  std::optional<std::string> zb;          // "m,lN,lS,b"; V is VolY
  std::optional<std::string> regularity;  // "alpha,beta"
};
int cmd_moduli(const ModuliArgs& args, std::ostream& out, std::ostream& err);

/// Recomputes the report from a dumped u.csv and compares it against
/// report.json in the same directory.
int cmd_verify(const std::string& configPath, const std::string& dir, std::ostream& out,
               std::ostream& err);

/// Reads a theta,phi,value CSV onto the given grid.
ScalarField read_field_csv(const std::string& path, const SphericalGrid& grid);

}  // namespace vortexlab::cli
