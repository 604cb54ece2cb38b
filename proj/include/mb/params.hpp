#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mb {

enum class Family { Laguerre, Jacobi, LaguerreThetaZero };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// Thrown for parameter or input validation failures.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iteration fails to converge or a precision budget is exceeded.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnsembleParams {
  Family family = Family::Laguerre;
  double theta = 1.0;
  double c = 0.0;   // Laguerre exponent
  double c1 = 0.0;  // Jacobi exponents
  double c2 = 0.0;
  int n = 1;

  static EnsembleParams laguerre(double theta, double c, int n);
  static EnsembleParams jacobi(double theta, double c1, double c2, int n);
  static EnsembleParams theta_zero(double c, int n);

  void validate() const;
  bool is_jacobi() const { return family == Family::Jacobi; }
  // Exponent entering the alpha sequence (c for Laguerre, c1 for Jacobi).
  double alpha_base() const { return family == Family::Jacobi ? c1 : c; }
  // Jacobi base beta of the beta sequence; identical to c2.
  double beta() const { return c2; }
};

std::vector<double> alpha_sequence(double theta, double c, int n);
std::vector<double> alpha_sequence(const EnsembleParams& p);
// beta_k = beta + n - k, k = 1..n
std::vector<double> beta_sequence(double beta, int n);

struct LogDensity {
  double value = 0.0;
  bool degenerate = false;  // coincident eigenvalues; value is -inf
};

LogDensity log_pdf_laguerre(const EnsembleParams& p, std::span<const double> spectrum);
LogDensity log_pdf_jacobi(const EnsembleParams& p, std::span<const double> spectrum);
LogDensity log_pdf_theta0(const EnsembleParams& p, std::span<const double> spectrum);
LogDensity log_pdf(const EnsembleParams& p, std::span<const double> spectrum);

void to_json(nlohmann::json& j, const EnsembleParams& p);
void from_json(const nlohmann::json& j, EnsembleParams& p);

}  // namespace mb
