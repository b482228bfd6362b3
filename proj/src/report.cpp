#include "ymhlab/report.hpp"

#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace ymhlab {

void MetricSet::addUpperBound(const std::string& name, double value, double tolerance) {
  metrics_[name] = Metric{value, tolerance, value <= tolerance, false};
}

void MetricSet::addLowerBound(const std::string& name, double value, double threshold) {
  metrics_[name] = Metric{value, threshold, value >= threshold, true};
}

void MetricSet::addBoolean(const std::string& name, bool value, bool expected) {
  metrics_[name] = Metric{value ? 1.0 : 0.0, expected ? 1.0 : 0.0, value == expected, false};
}

bool MetricSet::allPass() const {
  for (const auto& [k, m] : metrics_)
    if (!m.pass) return false;
  return true;
}

Json MetricSet::toJson() const {
  Json j = Json::object();
  for (const auto& [k, m] : metrics_) {
    j[k] = Json{{"value", m.value},
                {"tolerance", m.tolerance},
                {"direction", m.atLeast ? ">=" : "<="},
                {"pass", m.pass}};
  }
  return j;
}

namespace {

const std::vector<std::string> kTopLevelKeys = {"experiment", "scenario", "out",
                                                "seed",       "grid",     "tol"};

}  // namespace

ExperimentConfig ExperimentConfig::fromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : kTopLevelKeys) known = known || (it.key() == k);
    if (!known) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  }
  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw std::invalid_argument("config: 'experiment' string is required");
  cfg.experiment = j["experiment"].get<std::string>();
  if (j.contains("scenario")) cfg.scenario = j["scenario"];
  if (j.contains("out")) cfg.outDir = j["out"].get<std::string>();
  if (j.contains("seed")) {
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.seedSet = true;
  }
  if (j.contains("grid")) cfg.gridOverride = j["grid"].get<int>();
  if (j.contains("tol")) {
    cfg.tolOverride = j["tol"].get<double>();
    cfg.tolSet = true;
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::fromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  return fromJson(j);
}

Json writeReport(const ExperimentConfig& cfg, const MetricSet& metrics,
                 const std::string& path, double runtimeSeconds) {
  Json j = Json::object();
  j["experiment"] = cfg.experiment;
  Json c = Json::object();
  c["scenario"] = cfg.scenario;
  c["out"] = cfg.outDir;
  if (cfg.gridOverride) c["grid"] = cfg.gridOverride;
  if (cfg.tolSet) c["tol"] = cfg.tolOverride;
  j["config"] = c;
  j["metrics"] = metrics.toJson();
  if (runtimeSeconds >= 0) j["timing"] = Json{{"runtime_s", runtimeSeconds}};
  j["provenance"] = Json{{"seed", cfg.seed},
                         {"versions", Json{{"ymhlab", "0.1.0"},
                                           {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                         std::to_string(EIGEN_MAJOR_VERSION) +
                                                         "." +
                                                         std::to_string(EIGEN_MINOR_VERSION)}}}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("writeReport: cannot open " + path);
  out << j.dump(2) << "\n";
  return j;
}

void writeCsv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("writeCsv: cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 == header.size() ? "\n" : ",");
  out.precision(17);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << r[i] << (i + 1 == r.size() ? "\n" : ",");
  }
}

Json matrixToJson(const Matrix& m) {
  Json data = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

namespace {
Json covectorToJson(const Covector& v) { return Json{v(0), v(1), v(2), v(3)}; }
}  // namespace

Json interactionGeometryToJson(const InteractionGeometry& g) {
  Json j;
  j["r"] = g.r;
  j["s"] = g.s;
  j["kappa"] = Json{g.kappa(0), g.kappa(1), g.kappa(2)};
  j["xi"] = Json{covectorToJson(g.xi[0]), covectorToJson(g.xi[1]), covectorToJson(g.xi[2])};
  j["eta"] = covectorToJson(g.eta);
  j["points"] = Json{{"x1", covectorToJson(g.x[0])}, {"x2", covectorToJson(g.x[1])},
                     {"x3", covectorToJson(g.x[2])}, {"y", covectorToJson(g.y)},
                     {"z", covectorToJson(g.z)}};
  return j;
}

GroupSpec groupSpecFromJson(const Json& scenario) {
  if (!scenario.is_object() || !scenario.contains("factors"))
    throw std::invalid_argument("scenario: 'factors' array is required");
  std::vector<FactorKind> factors;
  for (const auto& f : scenario["factors"]) {
    std::string s = f.get<std::string>();
    if (s == "U1") factors.push_back(FactorKind::U1);
    else if (s == "SU2") factors.push_back(FactorKind::SU2);
    else if (s == "SU3") factors.push_back(FactorKind::SU3);
    else throw std::invalid_argument("scenario: unknown factor '" + s + "'");
  }
  std::vector<double> weights;
  if (scenario.contains("weights")) weights = scenario["weights"].get<std::vector<double>>();
  return GroupSpec(factors, weights);
}

RepSpec repSpecFromJson(const Json& scenario) {
  if (!scenario.is_object() || !scenario.contains("rep"))
    throw std::invalid_argument("scenario: 'rep' string is required");
  std::string s = scenario["rep"].get<std::string>();
  int nY = scenario.contains("nY") ? scenario["nY"].get<int>() : 3;
  if (s == "electroweak") return RepSpec::Electroweak(nY);
  if (s == "smhiggs") return RepSpec::SMHiggs(nY);
  if (s == "inclusion") return RepSpec::Inclusion();
  if (s == "adjoint") return RepSpec::Adjoint();
  throw std::invalid_argument("scenario: unknown representation '" + s + "'");
}

int threadCapFromEnvironment() {
  const char* v = std::getenv("YMHLAB_THREADS");
  if (!v) return 0;
  int n = std::atoi(v);
  return n > 0 ? n : 0;
}

}  // namespace ymhlab
