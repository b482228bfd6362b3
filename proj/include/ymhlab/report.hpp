// Experiment configuration, metric collection, and deterministic JSON
// report/CSV emission for the batch runner.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ymhlab/algebra.hpp"
#include "ymhlab/geometry.hpp"

namespace ymhlab {

using Json = nlohmann::ordered_json;

struct Metric {
  double value = 0;
  double tolerance = 0;
  bool pass = false;
  // comparison direction: value <= tolerance (default) or value >= tolerance
  bool atLeast = false;
};

class MetricSet {
 public:
  void addUpperBound(const std::string& name, double value, double tolerance);
  void addLowerBound(const std::string& name, double value, double threshold);
  void addBoolean(const std::string& name, bool value, bool expected);
  bool allPass() const;
  const std::map<std::string, Metric>& metrics() const { return metrics_; }
  Json toJson() const;

 private:
  std::map<std::string, Metric> metrics_;
};

struct ExperimentConfig {
  std::string experiment;
  Json scenario;      // free-form scenario block, schema checked per experiment
  std::string outDir = ".";
  std::uint64_t seed = 0;
  bool seedSet = false;
  int gridOverride = 0;
  double tolOverride = 0;
  bool tolSet = false;

  static ExperimentConfig fromJsonFile(const std::string& path);
  static ExperimentConfig fromJson(const Json& j);
};

// writes <outDir>/report.json; returns the serialized document. The timing
// block is the only non-deterministic part of the report.
Json writeReport(const ExperimentConfig& cfg, const MetricSet& metrics,
                 const std::string& path, double runtimeSeconds = -1.0);

void writeCsv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows);

int threadCapFromEnvironment();  // YMHLAB_THREADS, 0 when unset

// complex matrix as {"rows", "cols", "data"} with row-major re/im interleaving
Json matrixToJson(const Matrix& m);
// broken-ray configuration with keys "r", "s", "kappa", "xi", "eta", "points"
Json interactionGeometryToJson(const InteractionGeometry& g);

// scenario-block parsers: {"factors": ["SU3","SU2","U1"], "weights": [...]}
// and {"rep": "electroweak"|"smhiggs"|"inclusion"|"adjoint", "nY": 3}
GroupSpec groupSpecFromJson(const Json& scenario);
RepSpec repSpecFromJson(const Json& scenario);

}  // namespace ymhlab
