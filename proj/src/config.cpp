#include "jt/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "jt/errors.hpp"
#include "jt/io.hpp"
#include "jt/twa.hpp"

namespace jt {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::quantum:
      return "quantum";
    case Engine::semiclassical:
      return "semiclassical";
    case Engine::twa:
      return "twa";
    case Engine::gauge:
      return "gauge";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key) + ": cannot parse '" + std::string(text) + "'", line);
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text, std::size_t line) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(text) + "'",
                    line);
}

std::vector<double> parse_list(std::string_view key, std::string_view text, std::size_t line) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(parse_number<double>(key, item, line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value, std::size_t line) {
  value = trim(value);
  key = trim(key);
  auto num = [&](auto& field) {
    field = parse_number<std::remove_reference_t<decltype(field)>>(key, value, line);
  };

  if (key == "engine") {
    if (value == "quantum") c.engine = Engine::quantum;
    else if (value == "semiclassical") c.engine = Engine::semiclassical;
    else if (value == "twa") c.engine = Engine::twa;
    else if (value == "gauge") c.engine = Engine::gauge;
    else throw ConfigError("engine: unknown engine '" + std::string(value) + "'", line);
  } else if (key == "model.omega") num(c.model.omega);
  else if (key == "model.k") num(c.model.k);
  else if (key == "model.spin_factor") num(c.spin_factor);
  else if (key == "initial.x0") num(c.initial.x0);
  else if (key == "initial.y0") num(c.initial.y0);
  else if (key == "initial.sigma") num(c.initial.sigma);
  else if (key == "initial.channel") {
    const int ch = parse_number<int>(key, value, line);
    if (ch != 1 && ch != 2) throw ConfigError("initial.channel must be 1 or 2", line);
    c.initial.channel = ch == 1 ? Channel::one : Channel::two;
  } else if (key == "initial.spin0") {
    const auto v = parse_list(key, value, line);
    if (v.size() != 3) throw ConfigError("initial.spin0 needs three components", line);
    c.initial.spin0 = {v[0], v[1], v[2]};
  } else if (key == "grid.n") num(c.grid.n);
  else if (key == "grid.extent") num(c.grid.extent);
  else if (key == "plan.dt") num(c.plan.dt);
  else if (key == "plan.t_final") num(c.plan.t_final);
  else if (key == "plan.record_stride") num(c.plan.record_stride);
  else if (key == "twa.n_traj") num(c.twa.n_traj);
  else if (key == "twa.seed") num(c.twa.seed);
  else if (key == "twa.sample") c.twa.sample = parse_bool(key, value, line);
  else if (key == "twa.workers") num(c.twa.workers);
  else if (key == "twa.bins") num(c.twa.bins);
  else if (key == "output.dir") c.output.dir = std::string(value);
  else if (key == "output.snapshots") c.output.snapshots = parse_list(key, value, line);
  else if (key == "output.heatmaps") c.output.heatmaps = parse_bool(key, value, line);
  else throw ConfigError("unknown key '" + std::string(key) + "'", line);
}

void RunConfig::validate() const {
  try {
    model.validate();
    check_spin_factor(spin_factor);
    const Grid2D g(grid.n, grid.extent);
    plan.validate();
    if (!(initial.sigma > 0.0)) throw PreconditionError("initial.sigma must be > 0");
    if (engine == Engine::quantum) {
      const double margin = 5.0 * initial.sigma;
      if (std::abs(initial.x0) + margin > grid.extent ||
          std::abs(initial.y0) + margin > grid.extent) {
        throw PreconditionError("initial packet must sit 5 sigma inside grid.extent");
      }
    }
    if (engine == Engine::twa) {
      if (twa.bins < 2) throw PreconditionError("twa.bins must be >= 2");
      if (twa.workers < 0) throw PreconditionError("twa.workers must be >= 0");
      EnsembleSpec spec;
      spec.n_traj = twa.n_traj;
      spec.sigma = initial.sigma;
      spec.spin0 = initial.spin0;
      spec.dt = plan.dt;
      spec.t_final = plan.t_final;
      spec.spin_factor = spin_factor;
      spec.record_stride = plan.record_stride;
      spec.validate();
    }
    for (double t : output.snapshots) {
      if (!(t >= 0.0) || t > plan.t_final) {
        throw PreconditionError("output.snapshots must lie in [0, plan.t_final]");
      }
    }
    if (output.dir.empty()) throw PreconditionError("output.dir must not be empty");
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

bool RunConfig::operator==(const RunConfig& o) const {
  return engine == o.engine && model.omega == o.model.omega && model.k == o.model.k &&
         spin_factor == o.spin_factor && initial == o.initial && grid == o.grid &&
         plan.dt == o.plan.dt && plan.t_final == o.plan.t_final &&
         plan.record_stride == o.plan.record_stride && twa == o.twa && output == o.output;
}

RunConfig default_config() { return RunConfig{}; }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1-quantum", "fig1-twa", "fig1-semiclassical",
                                              "gauge-report"};
  return names;
}

RunConfig preset_config(std::string_view name) {
  RunConfig c = default_config();
  if (name == "fig1-quantum") return c;
  if (name == "fig1-twa") {
    c.engine = Engine::twa;
    c.twa.n_traj = 50000;
    return c;
  }
  if (name == "fig1-semiclassical") {
    c.engine = Engine::semiclassical;
    c.plan.dt = 0.01;
    c.plan.record_stride = 100;
    return c;
  }
  if (name == "gauge-report") {
    c.engine = Engine::gauge;
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'section.key = value', got '" + std::string(line) + "'",
                        line_no);
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    apply_setting(c, key, line.substr(eq + 1), line_no);
  }
  c.validate();
  return c;
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream out;
  auto kv = [&](const char* k, const std::string& v) { out << k << " = " << v << '\n'; };
  auto num = [](double v) { return format_double(v); };
  kv("engine", std::string(to_string(c.engine)));
  kv("model.omega", num(c.model.omega));
  kv("model.k", num(c.model.k));
  kv("model.spin_factor", std::to_string(c.spin_factor));
  kv("initial.x0", num(c.initial.x0));
  kv("initial.y0", num(c.initial.y0));
  kv("initial.sigma", num(c.initial.sigma));
  kv("initial.channel", c.initial.channel == Channel::one ? "1" : "2");
  kv("initial.spin0", join({c.initial.spin0.begin(), c.initial.spin0.end()}));
  kv("grid.n", std::to_string(c.grid.n));
  kv("grid.extent", num(c.grid.extent));
  kv("plan.dt", num(c.plan.dt));
  kv("plan.t_final", num(c.plan.t_final));
  kv("plan.record_stride", std::to_string(c.plan.record_stride));
  kv("twa.n_traj", std::to_string(c.twa.n_traj));
  kv("twa.seed", std::to_string(c.twa.seed));
  kv("twa.sample", c.twa.sample ? "true" : "false");
  kv("twa.workers", std::to_string(c.twa.workers));
  kv("twa.bins", std::to_string(c.twa.bins));
  kv("output.dir", c.output.dir);
  kv("output.snapshots", join(c.output.snapshots));
  kv("output.heatmaps", c.output.heatmaps ? "true" : "false");
  return out.str();
}

}  // namespace jt
