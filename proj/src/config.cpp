#include "bhs/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bhs/rng.hpp"

namespace bhs {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                              what);
}

double to_double(const std::string& token, int line, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(line, "field '" + field + "': cannot parse number '" + token + "'");
  }
}

std::vector<double> to_double_list(const std::string& value, int line,
                                   const std::string& field) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string token;
  while (in >> token) out.push_back(to_double(token, line, field));
  return out;
}

Eigen::VectorXd to_vector(const std::string& value, int line,
                          const std::string& field) {
  const std::vector<double> list = to_double_list(value, line, field);
  Eigen::VectorXd out(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) out[i] = list[i];
  return out;
}

Eigen::MatrixXd to_matrix(const std::string& value, int line,
                          const std::string& field) {
  std::vector<std::vector<double>> rows;
  std::string chunk;
  std::istringstream in(value);
  while (std::getline(in, chunk, ';')) {
    const std::vector<double> row = to_double_list(chunk, line, field);
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) return Eigen::MatrixXd();
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows)
    if (row.size() != cols) fail(line, "field '" + field + "': ragged matrix");
  Eigen::MatrixXd out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = rows[r][c];
  return out;
}

long long to_integer(const std::string& value, int line,
                     const std::string& field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(line, "field '" + field + "': cannot parse integer '" + value + "'");
  }
}

std::uint64_t to_uint64(const std::string& value, int line,
                        const std::string& field) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(line, "field '" + field + "': cannot parse integer '" + value + "'");
  }
}

bool to_bool(const std::string& value, int line, const std::string& field) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(line, "field '" + field + "': expected true or false, got '" + value +
                 "'");
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

std::string matrix_text(const Eigen::MatrixXd& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    if (r) out += " ; ";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_double(m(r, c));
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (qual == "run.sampler") {
      if (value != "bhs" && value != "qbhs" && value != "cbhs" &&
          value != "gibbs")
        fail(line, "unknown sampler '" + value + "'");
      cfg.sampler = value;
    } else if (qual == "target.dim") {
      const long long d = to_integer(value, line, qual);
      if (d < 1) fail(line, "dim must be >= 1");
      cfg.dim = static_cast<int>(d);
    } else if (qual == "target.mean") {
      cfg.mean = to_vector(value, line, qual);
    } else if (qual == "target.covariance") {
      cfg.covariance = to_matrix(value, line, qual);
    } else if (qual == "guide.kind") {
      if (value != "zero" && value != "grad_potential" && value != "linear")
        fail(line, "unknown guide kind '" + value + "'");
      cfg.guide_kind = value;
    } else if (qual == "guide.matrix") {
      cfg.guide_matrix = to_matrix(value, line, qual);
    } else if (qual == "constraints.F") {
      cfg.F = to_matrix(value, line, qual);
    } else if (qual == "constraints.h") {
      cfg.h = to_vector(value, line, qual);
    } else if (qual == "sampler.lambda0") {
      cfg.lambda0 = to_double(value, line, qual);
    } else if (qual == "sampler.T_total") {
      cfg.T_total = to_double(value, line, qual);
    } else if (qual == "sampler.delta") {
      cfg.delta = to_double(value, line, qual);
    } else if (qual == "sampler.seed") {
      cfg.seed = to_uint64(value, line, qual);
    } else if (qual == "sampler.refresh_angle") {
      cfg.refresh_angle = to_double(value, line, qual);
    } else if (qual == "sampler.bounce_kernel") {
      if (value != "deterministic" && value != "stochastic")
        fail(line, "unknown bounce kernel '" + value + "'");
      cfg.bounce_kernel = value;
    } else if (qual == "sampler.gamma") {
      cfg.gamma = to_double_list(value, line, qual);
    } else if (qual == "sampler.corrupt_kernel") {
      cfg.corrupt_kernel = to_bool(value, line, qual);
    } else if (qual == "sampler.initial_position") {
      cfg.initial_position = to_vector(value, line, qual);
    } else if (qual == "sampler.initial_velocity") {
      cfg.initial_velocity = to_vector(value, line, qual);
    } else if (qual == "qbhs.a") {
      cfg.qbhs_a = to_double(value, line, qual);
    } else if (qual == "qbhs.P") {
      cfg.qbhs_P = to_matrix(value, line, qual);
    } else if (qual == "gibbs.n_samples") {
      const long long n = to_integer(value, line, qual);
      if (n < 0) fail(line, "n_samples must be >= 0");
      cfg.gibbs_samples = static_cast<int>(n);
    } else if (qual == "benchmark.replications") {
      const long long n = to_integer(value, line, qual);
      if (n < 2) fail(line, "replications must be >= 2");
      cfg.replications = static_cast<int>(n);
    } else if (qual == "gentest.threshold") {
      cfg.gentest_threshold = to_double(value, line, qual);
    } else if (qual == "output.dir") {
      cfg.output_dir = value;
    } else if (qual == "output.histogram_edges") {
      cfg.histogram_edges = to_double_list(value, line, qual);
    } else {
      fail(line, "unknown key '" + key + "' in section [" + section + "]");
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  const auto kv = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " =";
    if (!value.empty()) {
      out += ' ';
      out += value;
    }
    out += '\n';
  };

  out += "[run]\n";
  kv("sampler", cfg.sampler);
  out += "\n[target]\n";
  kv("dim", std::to_string(cfg.dim));
  kv("mean", vector_text(cfg.mean));
  kv("covariance", matrix_text(cfg.covariance));
  out += "\n[guide]\n";
  kv("kind", cfg.guide_kind);
  kv("matrix", matrix_text(cfg.guide_matrix));
  out += "\n[constraints]\n";
  kv("F", matrix_text(cfg.F));
  kv("h", vector_text(cfg.h));
  out += "\n[sampler]\n";
  kv("lambda0", format_double(cfg.lambda0));
  kv("T_total", format_double(cfg.T_total));
  kv("delta", format_double(cfg.delta));
  kv("seed", std::to_string(cfg.seed));
  kv("refresh_angle", format_double(cfg.refresh_angle));
  kv("bounce_kernel", cfg.bounce_kernel);
  kv("gamma", list_text(cfg.gamma));
  kv("corrupt_kernel", cfg.corrupt_kernel ? "true" : "false");
  kv("initial_position", vector_text(cfg.initial_position));
  kv("initial_velocity", vector_text(cfg.initial_velocity));
  out += "\n[qbhs]\n";
  kv("a", format_double(cfg.qbhs_a));
  kv("P", matrix_text(cfg.qbhs_P));
  out += "\n[gibbs]\n";
  kv("n_samples", std::to_string(cfg.gibbs_samples));
  out += "\n[benchmark]\n";
  kv("replications", std::to_string(cfg.replications));
  out += "\n[gentest]\n";
  kv("threshold", format_double(cfg.gentest_threshold));
  out += "\n[output]\n";
  kv("dir", cfg.output_dir);
  kv("histogram_edges", list_text(cfg.histogram_edges));
  return out;
}

TargetModel ExperimentConfig::build_target() const {
  Eigen::VectorXd mu = mean;
  if (mu.size() == 0) mu = Eigen::VectorXd::Zero(dim);
  Eigen::MatrixXd cov = covariance;
  if (cov.size() == 0) cov = Eigen::MatrixXd::Identity(dim, dim);
  if (mu.size() != dim || cov.rows() != dim || cov.cols() != dim)
    throw std::invalid_argument("config: target dimensions disagree with dim");
  return TargetModel::gaussian(mu, cov);
}

ConstraintSet ExperimentConfig::build_constraints() const {
  if (F.size() == 0) {
    if (h.size() != 0)
      throw std::invalid_argument("config: constraints.h given without F");
    return ConstraintSet::none(dim);
  }
  if (F.rows() != dim)
    throw std::invalid_argument("config: constraints.F must have dim rows");
  if (h.size() != F.cols())
    throw std::invalid_argument(
        "config: constraints.h length must match F columns");
  return ConstraintSet::make(F, h);
}

SamplerConfig ExperimentConfig::build_sampler_config() const {
  SamplerConfig out;
  out.lambda0 = lambda0;
  out.T_total = T_total;
  out.delta = delta;
  out.seed = seed;
  out.refresh_angle = refresh_angle;
  out.bounce_kernel.variant = bounce_kernel == "stochastic"
                                  ? BounceKernelSpec::Variant::Stochastic
                                  : BounceKernelSpec::Variant::Deterministic;
  out.cbhs_gamma = gamma;
  out.corrupt_kernel = corrupt_kernel;
  if (guide_kind == "zero") {
    out.guide = GuideField::zero();
  } else if (guide_kind == "grad_potential") {
    out.guide = GuideField::grad_potential();
  } else {
    if (guide_matrix.rows() != dim || guide_matrix.cols() != dim)
      throw std::invalid_argument(
          "config: guide.matrix must be dim x dim for kind = linear");
    out.guide = GuideField::linear(guide_matrix);
  }
  out.validate();
  return out;
}

State ExperimentConfig::build_initial_state() const {
  State out;
  if (initial_position.size() == dim) {
    out.position = initial_position;
  } else if (initial_position.size() == 0) {
    if (F.size() != 0)
      throw std::invalid_argument(
          "config: initial_position is required when constraints are set");
    out.position = mean.size() == dim ? mean : Eigen::VectorXd::Zero(dim);
  } else {
    throw std::invalid_argument("config: initial_position has wrong length");
  }
  if (initial_velocity.size() == dim) {
    out.velocity = initial_velocity;
  } else if (initial_velocity.size() == 0) {
    // Dedicated stream, decoupled from the chain's own draws.
    RngStream rng(seed ^ 0x9e3779b97f4a7c15ull);
    out.velocity = rng.normal_vector(dim);
  } else {
    throw std::invalid_argument("config: initial_velocity has wrong length");
  }
  out.time = 0.0;
  return out;
}

}  // namespace bhs
