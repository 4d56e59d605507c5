#ifndef ALB_HARNESS_CONFIG_HPP
#define ALB_HARNESS_CONFIG_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alb/envs.hpp"
#include "alb/errors.hpp"

namespace alb {

// Configuration/format errors carry the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind { norm, dim_continuum, dim_finite, realdata };

inline const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::norm: return "norm";
    case ExperimentKind::dim_continuum: return "dim_continuum";
    case ExperimentKind::dim_finite: return "dim_finite";
    case ExperimentKind::realdata: return "realdata";
  }
  return "?";
}

// Flat typed config: [experiment] scope, [instance] ground truth, [algorithm]
// learner parameters. Unknown keys are errors.
struct ExperimentConfig {
  // [experiment]
  ExperimentKind kind = ExperimentKind::norm;
  long trials = 1;
  std::uint64_t base_seed = 1;
  long horizon = 1000;

  // [instance]
  long d = 2;
  long K = 2;
  double sigma = 0.5;
  double theta_norm = 0.0;                               // norm
  ContextLaw context_law = ContextLaw::standard_normal;  // norm
  long d_star = 1;                                       // dim_*
  double gamma = 0.1;                                    // dim_*
  std::vector<long> ladder;                              // dim_finite
  long m_star = 1;                                       // dim_finite
  double feature_tau = 1.0;                              // dim_finite ("tau")
  std::string arms_csv;                                  // realdata

  // [algorithm]
  long tau = 0;  // 2*tau estimation pulls (norm; 0 = rely on b1)
  long long first_epoch_len = 100;
  double delta1 = 0.1;
  double delta_s = 0.1;
  std::optional<double> b1;
  long long t0 = 100;
  double delta = 0.1;
  long candidates = 512;
  double threshold_base = 2.0;

  void validate() const;
  std::string serialize() const;
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const std::string& field) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: field '" + field + "' expects a number, got '" + v + "'");
  }
}

inline long long parse_int(const std::string& v, const std::string& field) {
  try {
    size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: field '" + field + "' expects an integer, got '" + v + "'");
  }
}

inline std::vector<long> parse_ladder(const std::string& v, const std::string& field) {
  std::vector<long> out;
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, '|'))
    out.push_back(static_cast<long>(parse_int(trim(part), field)));
  if (out.empty()) throw ConfigError("config: field '" + field + "' is empty");
  return out;
}

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

inline void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("config: [experiment] trials must be >= 1");
  if (horizon < 1) throw ConfigError("config: [experiment] horizon must be >= 1");
  if (d < 1) throw ConfigError("config: [instance] d must be >= 1");
  if (sigma < 0) throw ConfigError("config: [instance] sigma must be >= 0");
  switch (kind) {
    case ExperimentKind::norm:
      if (K < 1) throw ConfigError("config: [instance] K must be >= 1");
      if (!b1 && tau < d)
        throw ConfigError("config: [algorithm] tau must be >= d when b1 is not set");
      if (!b1 && horizon < 2 * tau + K)
        throw ConfigError("config: [experiment] horizon must cover the 2*tau + K warm-up");
      if (b1 && horizon < K)
        throw ConfigError("config: [experiment] horizon must cover the K seed pulls");
      if (first_epoch_len < 1)
        throw ConfigError("config: [algorithm] T1 must be >= 1");
      if (!(delta1 > 0 && delta1 < 1))
        throw ConfigError("config: [algorithm] delta1 must lie in (0,1)");
      if (!(delta_s > 0 && delta_s < 1))
        throw ConfigError("config: [algorithm] delta_s must lie in (0,1)");
      break;
    case ExperimentKind::dim_continuum:
      if (d_star < 1 || d_star > d)
        throw ConfigError("config: [instance] d_star must lie in [1, d]");
      if (!(gamma > 0)) throw ConfigError("config: [instance] gamma must be > 0");
      if (t0 < 1) throw ConfigError("config: [algorithm] T0 must be >= 1");
      if (!(delta > 0 && delta < 1))
        throw ConfigError("config: [algorithm] delta must lie in (0,1)");
      if (candidates < 1)
        throw ConfigError("config: [algorithm] candidates must be >= 1");
      if (!(threshold_base > 1))
        throw ConfigError("config: [algorithm] threshold_base must be > 1");
      break;
    case ExperimentKind::dim_finite:
      if (ladder.empty()) throw ConfigError("config: [instance] ladder is required");
      for (size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
          throw ConfigError("config: [instance] ladder must be strictly increasing");
      if (ladder.back() != d)
        throw ConfigError("config: [instance] ladder must end at d");
      if (m_star < 1 || m_star > static_cast<long>(ladder.size()))
        throw ConfigError("config: [instance] m_star must index the ladder");
      if (K < 1) throw ConfigError("config: [instance] K must be >= 1");
      if (!(feature_tau > 0)) throw ConfigError("config: [instance] tau must be > 0");
      if (!(gamma > 0)) throw ConfigError("config: [instance] gamma must be > 0");
      if (t0 < 1) throw ConfigError("config: [algorithm] T0 must be >= 1");
      if (!(delta > 0 && delta < 1))
        throw ConfigError("config: [algorithm] delta must lie in (0,1)");
      break;
    case ExperimentKind::realdata:
      if (arms_csv.empty())
        throw ConfigError("config: [instance] arms_csv is required for realdata");
      if (!b1 && tau < d)
        throw ConfigError("config: [algorithm] tau must be >= d when b1 is not set");
      if (!(delta1 > 0 && delta1 < 1))
        throw ConfigError("config: [algorithm] delta1 must lie in (0,1)");
      break;
  }
}

inline std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << kind_name(kind) << "\n";
  out << "trials = " << trials << "\n";
  out << "base_seed = " << base_seed << "\n";
  out << "horizon = " << horizon << "\n";
  out << "\n[instance]\n";
  out << "d = " << d << "\n";
  out << "sigma = " << detail::fmt_double(sigma) << "\n";
  switch (kind) {
    case ExperimentKind::norm:
      out << "K = " << K << "\n";
      out << "theta_norm = " << detail::fmt_double(theta_norm) << "\n";
      out << "context_law = "
          << (context_law == ContextLaw::standard_normal ? "standard_normal"
                                                         : "uniform_sphere")
          << "\n";
      break;
    case ExperimentKind::dim_continuum:
      out << "d_star = " << d_star << "\n";
      out << "gamma = " << detail::fmt_double(gamma) << "\n";
      break;
    case ExperimentKind::dim_finite: {
      out << "K = " << K << "\n";
      out << "ladder = ";
      for (size_t i = 0; i < ladder.size(); ++i)
        out << (i ? "|" : "") << ladder[i];
      out << "\n";
      out << "m_star = " << m_star << "\n";
      out << "tau = " << detail::fmt_double(feature_tau) << "\n";
      out << "gamma = " << detail::fmt_double(gamma) << "\n";
      break;
    }
    case ExperimentKind::realdata:
      out << "arms_csv = " << arms_csv << "\n";
      break;
  }
  out << "\n[algorithm]\n";
  switch (kind) {
    case ExperimentKind::norm:
    case ExperimentKind::realdata:
      out << "tau = " << tau << "\n";
      out << "T1 = " << first_epoch_len << "\n";
      out << "delta1 = " << detail::fmt_double(delta1) << "\n";
      out << "delta_s = " << detail::fmt_double(delta_s) << "\n";
      if (b1) out << "b1 = " << detail::fmt_double(*b1) << "\n";
      break;
    case ExperimentKind::dim_continuum:
      out << "T0 = " << t0 << "\n";
      out << "delta = " << detail::fmt_double(delta) << "\n";
      out << "candidates = " << candidates << "\n";
      out << "threshold_base = " << detail::fmt_double(threshold_base) << "\n";
      break;
    case ExperimentKind::dim_finite:
      out << "T0 = " << t0 << "\n";
      out << "delta = " << detail::fmt_double(delta) << "\n";
      out << "threshold_base = " << detail::fmt_double(threshold_base) << "\n";
      break;
  }
  return out.str();
}

inline ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line, section;
  long line_no = 0;
  bool saw_b1 = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      section = s.substr(1, s.size() - 2);
      if (section != "experiment" && section != "instance" && section != "algorithm")
        throw ConfigError("config: unknown section [" + section + "]");
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key = detail::trim(s.substr(0, eq));
    std::string val = detail::trim(s.substr(eq + 1));
    std::string field = "[" + section + "] " + key;
    if (section == "experiment") {
      if (key == "kind") {
        if (val == "norm") cfg.kind = ExperimentKind::norm;
        else if (val == "dim_continuum") cfg.kind = ExperimentKind::dim_continuum;
        else if (val == "dim_finite") cfg.kind = ExperimentKind::dim_finite;
        else if (val == "realdata") cfg.kind = ExperimentKind::realdata;
        else throw ConfigError("config: unknown experiment kind '" + val + "'");
      } else if (key == "trials") cfg.trials = static_cast<long>(detail::parse_int(val, field));
      else if (key == "base_seed") cfg.base_seed = static_cast<std::uint64_t>(detail::parse_int(val, field));
      else if (key == "horizon") cfg.horizon = static_cast<long>(detail::parse_int(val, field));
      else throw ConfigError("config: unknown key '" + key + "' in [experiment]");
    } else if (section == "instance") {
      if (key == "d") cfg.d = static_cast<long>(detail::parse_int(val, field));
      else if (key == "K") cfg.K = static_cast<long>(detail::parse_int(val, field));
      else if (key == "sigma") cfg.sigma = detail::parse_double(val, field);
      else if (key == "theta_norm") cfg.theta_norm = detail::parse_double(val, field);
      else if (key == "context_law") {
        if (val == "standard_normal") cfg.context_law = ContextLaw::standard_normal;
        else if (val == "uniform_sphere") cfg.context_law = ContextLaw::uniform_sphere;
        else throw ConfigError("config: unknown context_law '" + val + "'");
      } else if (key == "d_star") cfg.d_star = static_cast<long>(detail::parse_int(val, field));
      else if (key == "gamma") cfg.gamma = detail::parse_double(val, field);
      else if (key == "ladder") cfg.ladder = detail::parse_ladder(val, field);
      else if (key == "m_star") cfg.m_star = static_cast<long>(detail::parse_int(val, field));
      else if (key == "tau") cfg.feature_tau = detail::parse_double(val, field);
      else if (key == "arms_csv") cfg.arms_csv = val;
      else throw ConfigError("config: unknown key '" + key + "' in [instance]");
    } else if (section == "algorithm") {
      if (key == "tau") cfg.tau = static_cast<long>(detail::parse_int(val, field));
      else if (key == "T1") cfg.first_epoch_len = detail::parse_int(val, field);
      else if (key == "delta1") cfg.delta1 = detail::parse_double(val, field);
      else if (key == "delta_s") cfg.delta_s = detail::parse_double(val, field);
      else if (key == "b1") { cfg.b1 = detail::parse_double(val, field); saw_b1 = true; }
      else if (key == "T0") cfg.t0 = detail::parse_int(val, field);
      else if (key == "delta") cfg.delta = detail::parse_double(val, field);
      else if (key == "candidates") cfg.candidates = static_cast<long>(detail::parse_int(val, field));
      else if (key == "threshold_base") cfg.threshold_base = detail::parse_double(val, field);
      else throw ConfigError("config: unknown key '" + key + "' in [algorithm]");
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": key outside any section");
    }
  }
  if (!saw_b1) cfg.b1.reset();
  cfg.validate();
  return cfg;
}

inline ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse(in);
}

}  // namespace alb

#endif  // ALB_HARNESS_CONFIG_HPP
