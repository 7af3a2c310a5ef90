#pragma once

// Report assembly and deterministic JSON / text rendering for every CLI
// subcommand. JSON objects have sorted keys; rationals are "p" or "p/q"
// strings; complexes are rendered as in the .crn format.

#include "crnkit/realization.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnkit {

enum class ReportFormat { Json, Text };

struct AnalysisReport {
  std::string input;
  std::vector<std::string> species;
  std::vector<Complex> vertices;
  NetworkReport network;
  NetReactionMap net_map;
  bool wr0 = false;
  /// Deficiency Zero Theorem conclusion; set exactly when wr0 holds.
  bool complex_balanced_for_all_rates = false;
};

AnalysisReport analyze(const MassActionSystem& sys, std::string input);

struct NetVectorDifference {
  Complex vertex;
  RatVector first;
  RatVector second;
};

struct EquivalenceReport {
  std::string input_a;
  std::string input_b;
  std::vector<std::string> species;
  bool equivalent = false;
  /// Restriction set when checking equivalence on a subset of complexes.
  std::optional<std::vector<Complex>> subset;
  std::vector<NetVectorDifference> differences;
};

/// `b` must already use a's species order (see align_species).
EquivalenceReport compare_systems(const MassActionSystem& a, const MassActionSystem& b, std::string input_a,
                                  std::string input_b, std::optional<std::vector<Complex>> subset = std::nullopt);

struct NetVectorReport {
  std::string input;
  OdeSystem ode;
  NetReactionMap net_map;
};

NetVectorReport net_vectors(const MassActionSystem& sys, std::string input);

struct RealizationReport {
  std::string input;
  OdeSystem ode;
  std::vector<Complex> vertices;
  std::optional<std::size_t> required_linkage_count;
  RealizationResult result;
  std::optional<AnalysisReport> analysis;
};

RealizationReport realize(const OdeSystem& ode, std::string input, const SearchOptions& options = {});

struct CertificateReport {
  std::string input;
  OdeSystem ode;
  std::vector<Complex> vertices;
  UniquenessCertificate certificate;
};

CertificateReport certify(const OdeSystem& ode, std::string input, std::size_t max_vertices,
                          const SearchOptions& options = {});

struct SimulationReport {
  std::string input;
  std::vector<std::string> species;
  SimulationOptions options;
  Trajectory trajectory;
  /// max |complex-balance residual| at the last recorded state.
  double terminal_residual = 0.0;
  /// Largest increase between consecutive Lyapunov samples (<= 0 when
  /// monotone); absent without a reference state.
  std::optional<double> lyapunov_max_increase;
};

SimulationReport run_simulation(const MassActionSystem& sys, const Eigen::VectorXd& x0,
                                const SimulationOptions& options, std::string input);

nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json to_json(const EquivalenceReport& r);
nlohmann::json to_json(const NetVectorReport& r);
nlohmann::json to_json(const RealizationReport& r);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const SimulationReport& r);

std::string emit_report(const AnalysisReport& r, ReportFormat format);
std::string emit_report(const EquivalenceReport& r, ReportFormat format);
std::string emit_report(const NetVectorReport& r, ReportFormat format);
std::string emit_report(const RealizationReport& r, ReportFormat format);
std::string emit_report(const CertificateReport& r, ReportFormat format);
std::string emit_report(const SimulationReport& r, ReportFormat format);

}  // namespace crnkit
