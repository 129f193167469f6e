#include "experiment_config.hpp"

#include <fstream>
#include <sstream>

#include "ipep/errors.hpp"
#include "ipep/rng.hpp"

namespace ipep::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidParameterError("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return from_string(buf.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw InvalidParameterError(origin + ":" + std::to_string(lineno) +
                                    ": malformed section header: " + t);
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameterError(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value, got: " + t);
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw InvalidParameterError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw InvalidParameterError(origin + ":" + std::to_string(lineno) +
                                  ": key outside any [section]: " + key);
    }
    cfg.kv_[section + "." + key] = value;
  }
  return cfg;
}

void KeyValueConfig::set(const std::string& dotted_key, const std::string& value) {
  if (dotted_key.find('.') == std::string::npos) {
    throw InvalidParameterError("override key must be section.key, got: " + dotted_key);
  }
  kv_[dotted_key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError("key " + key + ": expected a number, got '" + it->second + "'");
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError("key " + key + ": expected an integer, got '" + it->second + "'");
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError("key " + key + ": expected an unsigned integer, got '" +
                                it->second + "'");
  }
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  auto it = kv_.find(key);
  std::vector<double> out;
  if (it == kv_.end()) return out;
  std::string s = it->second;
  for (auto& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) {
    throw InvalidParameterError("key " + key + ": expected a list of numbers, got '" +
                                it->second + "'");
  }
  return out;
}

StepsizeSchedule schedule_from_cfg(const KeyValueConfig& cfg, int K) {
  std::string kind = cfg.get("schedule.kind", "ogm-a");
  if (kind == "ogm-a") {
    return schedule_ogm_a(cfg.get_double("schedule.a", 4.0), K);
  }
  if (kind == "constant") {
    return schedule_constant(K);
  }
  if (kind == "lambda") {
    auto lam = cfg.get_double_list("schedule.lambda");
    if (lam.empty()) {
      throw InvalidParameterError("schedule.kind = lambda needs schedule.lambda = l1 l2 ...");
    }
    if (static_cast<int>(lam.size()) == 1 && K > 1) {
      lam.assign(K, lam[0]);  // a single value repeats
    }
    return schedule_from_lambda(lam, K);
  }
  throw InvalidParameterError("key schedule.kind: unknown kind '" + kind +
                              "' (lambda | ogm-a | constant)");
}

Eigen::VectorXd ExperimentConfig::starting_point() const {
  Eigen::VectorXd offset = x0_radius * RandomStream(x0_seed).unit_vector(problem.dimension);
  if (problem.minimizer) return *problem.minimizer + offset;
  return offset;
}

ExperimentConfig resolve_experiment(const KeyValueConfig& cfg) {
  ExperimentConfig e;
  e.method = cfg.get("method.name", "igogm");
  static const char* known[] = {"igogm", "igfgm", "ifgm", "istm", "ogm", "gd-baseline"};
  bool ok = false;
  for (const char* m : known) ok = ok || e.method == m;
  if (!ok) {
    throw InvalidParameterError("key method.name: unknown method '" + e.method + "'");
  }
  e.K = cfg.get_int("method.K", 20);
  if (e.K < 1) throw InvalidParameterError("key method.K: must be >= 1");
  e.ogm_last_adjustment = cfg.get("method.adjusted", "false") == "true";

  e.schedule = schedule_from_cfg(cfg, e.K);

  std::map<std::string, std::string> pkv;
  pkv["name"] = cfg.get("problem.name", "quadratic-random");
  pkv["dimension"] = cfg.get("problem.dimension", "10");
  pkv["seed"] = cfg.get("problem.seed", "0");
  if (cfg.has("problem.sigma")) pkv["sigma"] = cfg.get("problem.sigma", "1.0");
  if (cfg.has("problem.offset_scale")) {
    pkv["offset_scale"] = cfg.get("problem.offset_scale", "1.0");
  }
  e.problem = problem_from_config(pkv);
  double L_override = cfg.get_double("problem.L_override", 0.0);
  if (L_override > 0) e.problem.lipschitz = L_override;

  e.policy = error_policy_from_string(cfg.get("oracle.policy", "random-unit-sphere"));
  auto blist = cfg.get_double_list("oracle.b");
  if (blist.empty()) {
    e.inexactness = InexactnessSchedule::constant(cfg.get_double("oracle.b", 0.0), e.K);
  } else if (blist.size() == 1) {
    e.inexactness = InexactnessSchedule::constant(blist[0], e.K);
  } else {
    if (static_cast<int>(blist.size()) != e.K) {
      throw InvalidParameterError("key oracle.b: need 1 or K values, got " +
                                  std::to_string(blist.size()));
    }
    e.inexactness.b = Eigen::Map<Eigen::VectorXd>(blist.data(), blist.size());
  }
  for (int k = 0; k < e.inexactness.horizon(); ++k) {
    if (e.inexactness.b[k] < 0) throw InvalidParameterError("key oracle.b: negative entry");
  }
  e.oracle_seed = cfg.get_u64("oracle.seed", 1);

  e.x0_radius = cfg.get_double("run.x0_radius", 1.0);
  e.x0_seed = cfg.get_u64("run.seed", 0);
  e.output_dir = cfg.get("output.dir", "out");
  return e;
}

}  // namespace ipep::cli
