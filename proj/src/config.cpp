#include "mista/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mista/io.hpp"

namespace mista {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double req_num(const json& j, const char* key, const std::string& path) {
  return num(require(j, key, path), path + "." + key);
}

std::size_t req_index(const json& j, const char* key,
                      const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_unsigned())
    fail(path + "." + key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string req_str(const json& j, const char* key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> num_array(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      fail(path + "[" + std::to_string(i) + "]", "expected a number");
    const double v = j[i].get<double>();
    if (!std::isfinite(v))
      fail(path + "[" + std::to_string(i) + "]", "must be finite");
    out.push_back(v);
  }
  return out;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

LinearOp parse_operator(const json& j, const std::string& path) {
  const std::string kind = req_str(j, "kind", path);
  try {
    if (kind == "matrix") {
      const json& rows = require(j, "entries", path);
      if (!rows.is_array() || rows.empty())
        fail(path + ".entries", "expected a nonempty array of rows");
      const std::size_t ncols = rows[0].is_array() ? rows[0].size() : 0;
      Eigen::MatrixXd m(rows.size(), ncols);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row =
            num_array(rows[r], path + ".entries[" + std::to_string(r) + "]");
        if (row.size() != ncols)
          fail(path + ".entries", "rows must have equal length");
        for (std::size_t c = 0; c < ncols; ++c) m(r, c) = row[c];
      }
      return matrix_op(m);
    }
    if (kind == "conv1d") {
      const auto kernel = num_array(require(j, "kernel", path), path + ".kernel");
      return conv1d_op(kernel, req_index(j, "n", path));
    }
    if (kind == "haar-synthesis") {
      return adjoint_op(haar_analysis(req_index(j, "n", path)));
    }
    if (kind == "sum-space") {
      return sum_space_op(parse_operator(require(j, "inner", path),
                                         path + ".inner"));
    }
    if (kind == "multiframe") {
      LinearOp outer =
          parse_operator(require(j, "outer", path), path + ".outer");
      const json& frames = require(j, "frames", path);
      if (!frames.is_array() || frames.empty())
        fail(path + ".frames", "expected a nonempty array");
      std::vector<LinearOp> syn;
      for (std::size_t i = 0; i < frames.size(); ++i)
        syn.push_back(parse_operator(
            frames[i], path + ".frames[" + std::to_string(i) + "]"));
      return multiframe_op(std::move(outer), std::move(syn));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".kind",
       "unknown operator kind (matrix | conv1d | haar-synthesis | "
       "sum-space | multiframe)");
}

PenaltyCfg parse_penalty(const json& j, const std::string& path) {
  PenaltyCfg cfg;
  cfg.mode = req_str(j, "mode", path);
  if (cfg.mode != "partitioned" && cfg.mode != "stacked")
    fail(path + ".mode", "must be 'partitioned' or 'stacked'");
  const json& groups = require(j, "groups", path);
  if (!groups.is_array() || groups.empty())
    fail(path + ".groups", "expected a nonempty array");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string gp = path + ".groups[" + std::to_string(i) + "]";
    const json& g = groups[i];
    PenaltyGroupCfg out;
    if (g.contains("weights"))
      out.weights = num_array(g["weights"], gp + ".weights");
    else
      out.weight = req_num(g, "weight", gp);
    out.exponent = req_num(g, "exponent", gp);
    if (!(out.exponent >= 1.0 && out.exponent <= 2.0))
      fail(gp + ".exponent", "must lie in [1, 2]");
    if (g.contains("multiplier")) {
      out.multiplier = num(g["multiplier"], gp + ".multiplier");
      if (!(out.multiplier > 0.0)) fail(gp + ".multiplier", "must be > 0");
    }
    if (out.weight && !(*out.weight > 0.0)) fail(gp + ".weight", "must be > 0");
    if (out.weights)
      for (double w : *out.weights)
        if (!(w > 0.0)) fail(gp + ".weights", "entries must be > 0");
    if (g.contains("range")) {
      const json& r = g["range"];
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() ||
          !r[1].is_number_unsigned())
        fail(gp + ".range", "expected [begin, end] with integers");
      out.range = {r[0].get<std::size_t>(), r[1].get<std::size_t>()};
      if (out.range->first >= out.range->second)
        fail(gp + ".range", "must be a nonempty half-open interval");
    }
    cfg.groups.push_back(std::move(out));
  }
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": expected a JSON object");

  ExperimentConfig cfg;
  if (j.contains("experiment")) cfg.experiment = req_str(j, "experiment", "");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw ConfigError("seed: expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) cfg.out = req_str(j, "out", "");

  if (j.contains("operator"))
    cfg.op = parse_operator(j["operator"], "operator");

  if (j.contains("signal")) {
    const json& s = j["signal"];
    if (s.contains("values")) {
      cfg.signal_values = to_vec(num_array(s["values"], "signal.values"));
    } else if (s.contains("generator")) {
      const json& g = s["generator"];
      GeneratorSpec gen;
      gen.n = req_index(g, "n", "signal.generator");
      if (gen.n == 0) fail("signal.generator.n", "must be positive");
      gen.spikes = req_index(g, "spikes", "signal.generator");
      gen.spike_scale = req_num(g, "spike_scale", "signal.generator");
      gen.smooth_scale = req_num(g, "smooth_scale", "signal.generator");
      if (g.contains("seed")) gen.seed = g["seed"].get<std::uint64_t>();
      cfg.signal_gen = gen;
    } else {
      fail("signal", "needs either 'values' or 'generator'");
    }
  }

  if (j.contains("noise")) {
    const json& n = j["noise"];
    cfg.noise_norm = req_num(n, "norm", "noise");
    if (!(cfg.noise_norm >= 0.0)) fail("noise.norm", "must be >= 0");
    if (n.contains("seed")) cfg.noise_seed = n["seed"].get<std::uint64_t>();
  }

  if (j.contains("penalty"))
    cfg.penalty = parse_penalty(j["penalty"], "penalty");

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("f0") && !(s["f0"].is_string() && s["f0"] == "zero"))
      cfg.f0 = to_vec(num_array(s["f0"], "solver.f0"));
    if (s.contains("max_iters")) {
      cfg.stop.max_iters = req_index(s, "max_iters", "solver");
      if (cfg.stop.max_iters == 0) fail("solver.max_iters", "must be >= 1");
    }
    if (s.contains("step_tol")) {
      cfg.stop.step_tol = num(s["step_tol"], "solver.step_tol");
      if (!(cfg.stop.step_tol >= 0.0)) fail("solver.step_tol", "must be >= 0");
    }
    if (s.contains("trace_every")) {
      cfg.trace_every = req_index(s, "trace_every", "solver");
      if (cfg.trace_every == 0) fail("solver.trace_every", "must be >= 1");
    }
  }

  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    ScheduleCfg sc;
    sc.eps0 = req_num(s, "eps0", "schedule");
    sc.ratio = req_num(s, "ratio", "schedule");
    sc.count = req_index(s, "count", "schedule");
    sc.exponent = req_num(s, "exponent", "schedule");
    cfg.schedule = sc;
  }

  if (j.contains("shrink_table")) {
    const json& s = j["shrink_table"];
    ShrinkTableCfg st;
    const json& terms = require(s, "terms", "shrink_table");
    if (!terms.is_array() || terms.empty())
      fail("shrink_table.terms", "expected a nonempty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = "shrink_table.terms[" + std::to_string(i) + "]";
      PenaltyTerm t{req_num(terms[i], "weight", tp),
                    req_num(terms[i], "exponent", tp)};
      try {
        validate(t);
      } catch (const std::invalid_argument& e) {
        fail(tp, e.what());
      }
      st.terms.push_back(t);
    }
    const json& r = require(s, "range", "shrink_table");
    if (!r.is_array() || r.size() != 2)
      fail("shrink_table.range", "expected [lo, hi]");
    st.lo = num(r[0], "shrink_table.range[0]");
    st.hi = num(r[1], "shrink_table.range[1]");
    if (!(st.lo < st.hi)) fail("shrink_table.range", "lo must be below hi");
    st.points = static_cast<int>(req_index(s, "points", "shrink_table"));
    if (st.points < 2) fail("shrink_table.points", "must be >= 2");
    cfg.shrink_table = st;
  }

  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.filename().string());
}

std::uint64_t signal_seed(const ExperimentConfig& cfg) {
  if (cfg.signal_gen && cfg.signal_gen->seed) return *cfg.signal_gen->seed;
  return mix_seed(cfg.seed, 1);
}

std::uint64_t derived_noise_seed(const ExperimentConfig& cfg) {
  return cfg.noise_seed ? *cfg.noise_seed : mix_seed(cfg.seed, 2);
}

Vec build_signal(const ExperimentConfig& cfg) {
  if (cfg.signal_values) return *cfg.signal_values;
  if (!cfg.signal_gen) throw ConfigError("signal: section required");
  const GeneratorSpec& g = *cfg.signal_gen;
  std::mt19937_64 rng(signal_seed(cfg));
  Vec f = Vec::Zero(g.n);
  for (std::size_t s = 0; s < g.spikes; ++s) {
    const std::size_t pos = static_cast<std::size_t>(rng() % g.n);
    const double sign = (rng() & 1) ? 1.0 : -1.0;
    f[pos] += sign * g.spike_scale * (0.5 + 0.5 * uniform01(rng));
  }
  if (g.smooth_scale != 0.0) {
    const double p1 = 2.0 * M_PI * uniform01(rng);
    const double p2 = 2.0 * M_PI * uniform01(rng);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(g.n);
      f[i] += g.smooth_scale * (0.6 * std::sin(2.0 * M_PI * x + p1) +
                                0.4 * std::sin(6.0 * M_PI * x + p2));
    }
  }
  return f;
}

PenaltySpec build_penalty(const PenaltyCfg& cfg, std::size_t dim) {
  std::vector<double> mults;
  for (const auto& g : cfg.groups) mults.push_back(g.multiplier);

  if (cfg.mode == "stacked") {
    for (std::size_t i = 0; i < cfg.groups.size(); ++i) {
      if (cfg.groups[i].range)
        throw ConfigError("penalty.groups[" + std::to_string(i) +
                          "].range: not allowed in stacked mode");
      if (cfg.groups[i].weights)
        throw ConfigError("penalty.groups[" + std::to_string(i) +
                          "].weights: stacked mode takes scalar weights");
    }
    std::vector<PenaltyTerm> terms;
    for (const auto& g : cfg.groups)
      terms.push_back({*g.weight, g.exponent});
    return PenaltySpec::stacked(dim, terms).with_multipliers(mults);
  }

  // Partitioned: a single full-range group may omit its range.
  std::vector<int> group_of(dim, -1);
  std::vector<double> weights(dim, 0.0);
  std::vector<double> exps;
  for (std::size_t gi = 0; gi < cfg.groups.size(); ++gi) {
    const auto& g = cfg.groups[gi];
    const std::string gp = "penalty.groups[" + std::to_string(gi) + "]";
    std::size_t begin = 0, end = dim;
    if (g.range) {
      begin = g.range->first;
      end = g.range->second;
      if (end > dim) throw ConfigError(gp + ".range: exceeds dimension " +
                                       std::to_string(dim));
    } else if (cfg.groups.size() > 1) {
      throw ConfigError(gp + ".range: required when several groups partition "
                        "the index set");
    }
    if (g.weights && g.weights->size() != end - begin)
      throw ConfigError(gp + ".weights: expected " +
                        std::to_string(end - begin) + " entries");
    for (std::size_t i = begin; i < end; ++i) {
      if (group_of[i] != -1)
        throw ConfigError(gp + ".range: overlaps another group at index " +
                          std::to_string(i));
      group_of[i] = static_cast<int>(gi);
      weights[i] = g.weights ? (*g.weights)[i - begin] : *g.weight;
    }
    exps.push_back(g.exponent);
  }
  for (std::size_t i = 0; i < dim; ++i)
    if (group_of[i] == -1)
      throw ConfigError("penalty.groups: index " + std::to_string(i) +
                        " is not covered by any group range");
  return PenaltySpec::partitioned_weights(group_of, weights, exps)
      .with_multipliers(mults);
}

}  // namespace mista
