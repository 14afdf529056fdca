#include "mcl/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace mcl::cli {

namespace pt = boost::property_tree;

std::string_view to_string(ConfigErrorKind kind) noexcept {
  switch (kind) {
    case ConfigErrorKind::missing_file:
      return "missing_file";
    case ConfigErrorKind::parse:
      return "parse";
    case ConfigErrorKind::validation:
      return "validation";
  }
  return "unknown";
}

std::string_view to_string(Solver s) noexcept {
  switch (s) {
    case Solver::riemannian:
      return "riemannian";
    case Solver::lorentzian:
      return "lorentzian";
    case Solver::gowdy:
      return "gowdy";
  }
  return "unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw ConfigError(ConfigErrorKind::validation, msg); }

class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (const auto child = root.get_child_optional(pt::ptree::path_type(name_, '\0'))) node_ = &*child;
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    const auto raw = raw_value(key);
    if (!raw) return fallback;
    if constexpr (std::is_same_v<T, std::string>) {
      return *raw;
    } else if constexpr (std::is_floating_point_v<T>) {
      return parse_double(key, *raw);
    } else {
      const double d = parse_double(key, *raw);
      if (d < 0.0 || d != static_cast<double>(static_cast<long long>(d)))
        invalid(fmt::format("[{}] {} must be a non-negative integer, got '{}'", name_, key, *raw));
      return static_cast<T>(d);
    }
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& known) {
    const auto value = get<std::string>(key, fallback);
    if (std::find(known.begin(), known.end(), value) == known.end())
      invalid(fmt::format("[{}] unknown {} '{}' (known: {})", name_, key, value, fmt::join(known, ", ")));
    return value;
  }

  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) {
    const auto raw = get<std::string>(key, "");
    if (raw.empty()) return fallback;
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    return out;
  }

  /// Rejects keys that were never requested.
  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : *node_)
      if (!used_.count(key))
        invalid(fmt::format("[{}] unknown key '{}' (known: {})", name_, key, fmt::join(used_, ", ")));
  }

 private:
  std::optional<std::string> raw_value(const std::string& key) const {
    if (!node_) return std::nullopt;
    const auto v = node_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return *v;
  }

  double parse_double(const std::string& key, const std::string& raw) const {
    std::istringstream is(raw);
    is.imbue(std::locale::classic());
    double d = 0.0;
    is >> d;
    if (!is || !(is >> std::ws).eof() || !std::isfinite(d))
      invalid(fmt::format("[{}] {} must be a number, got '{}'", name_, key, raw));
    return d;
  }

  std::string name_;
  const pt::ptree* node_ = nullptr;
  std::set<std::string> used_;
};

InitialProfile read_profile(Section& s, const InitialProfile& defaults) {
  InitialProfile p;
  p.family = s.choice("initial", defaults.family, {"constant", "sine", "riemann"});
  p.mean = s.get("initial_mean", defaults.mean);
  p.amplitude = s.get("initial_amplitude", defaults.amplitude);
  p.left = s.get("initial_left", defaults.left);
  p.right = s.get("initial_right", defaults.right);
  return p;
}

std::array<double, 2> profile_range(const InitialProfile& p) {
  if (p.family == "constant") return {p.mean, p.mean};
  if (p.family == "sine") return {p.mean - std::abs(p.amplitude), p.mean + std::abs(p.amplitude)};
  return {std::min(p.left, p.right), std::max(p.left, p.right)};
}

template <class F>
void as_validation(F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    invalid(e.what());
  }
}

RiemannianRun read_riemannian(Section& s) {
  const RiemannianRun d;
  RiemannianRun r;
  r.mesh = s.choice("mesh", d.mesh, {"circle", "torus"});
  r.n_cells = s.get("n_cells", d.n_cells);
  r.length = s.get("length", d.length);
  r.n_x = s.get("n_x", d.n_x);
  r.n_y = s.get("n_y", d.n_y);
  r.length_x = s.get("length_x", d.length_x);
  r.length_y = s.get("length_y", d.length_y);
  r.metric = s.choice("metric", d.metric, {"flat", "sine"});
  r.metric_amplitude = s.get("metric_amplitude", d.metric_amplitude);
  const bool torus = r.mesh == "torus";
  r.flux = s.choice("flux", torus ? "stream" : d.flux,
                    torus ? std::vector<std::string>{"stream"}
                          : std::vector<std::string>{"burgers", "potential", "field"});
  r.potential = {s.get("potential_c1", d.potential[0]), s.get("potential_c2", d.potential[1]),
                 s.get("potential_c3", d.potential[2])};
  r.field_amplitude = s.get("field_amplitude", d.field_amplitude);
  r.stream_amplitude = s.get("stream_amplitude", d.stream_amplitude);
  r.initial = read_profile(s, d.initial);
  r.fv.cfl = s.get("cfl", d.fv.cfl);
  r.fv.t_end = s.get("t_end", d.fv.t_end);
  r.fv.numerical_flux = parse_numerical_flux(
      s.choice("numerical_flux", std::string(to_string(d.fv.numerical_flux)), {"rusanov", "godunov_scalar"}));
  r.fv.record_every = s.get("record_every", d.fv.record_every);
  r.snapshot_every = s.get("snapshot_every", d.snapshot_every);

  as_validation([&] { r.fv.validate(); });
  const double bound = torus ? 0.8 : 1.0;
  if (!(std::abs(r.metric_amplitude) < bound))
    invalid(fmt::format("[riemannian] metric_amplitude must satisfy |A| < {} for a positive metric", bound));
  if (torus ? (r.n_x < 4 || r.n_y < 4) : r.n_cells < 4) invalid("[riemannian] meshes need at least 4 cells per axis");
  if (!(r.length > 0.0 && r.length_x > 0.0 && r.length_y > 0.0)) invalid("[riemannian] lengths must be positive");
  if (r.fv.numerical_flux == NumericalFlux::godunov_scalar && (torus || r.flux == "field"))
    invalid("[riemannian] godunov_scalar needs a single-term flux on the circle (burgers or potential)");
  return r;
}

LorentzianRun read_lorentzian(Section& s) {
  const LorentzianRun d;
  LorentzianRun r;
  r.foliation = s.choice("foliation", d.foliation, {"minkowski", "lapse_wave", "expanding"});
  r.n_cells = s.get("n_cells", d.n_cells);
  r.period = s.get("period", d.period);
  r.amplitude = s.get("foliation_amplitude", d.amplitude);
  r.omega = s.get("foliation_omega", d.omega);
  r.hubble = s.get("hubble", d.hubble);
  r.flux = s.choice("flux", d.flux, {"transport", "burgers"});
  r.speed = s.get("speed", d.speed);
  r.chi.amplitude = s.get("chi_amplitude", d.chi.amplitude);
  r.chi.omega = s.get("chi_omega", d.chi.omega);
  r.state_min = s.get("state_min", d.state_min);
  r.state_max = s.get("state_max", d.state_max);
  r.initial = read_profile(s, d.initial);
  r.pair_phase = s.get("pair_phase", d.pair_phase);
  r.kruzkov_k = s.list("kruzkov_k", d.kruzkov_k);
  r.lorentz.cfl = s.get("cfl", d.lorentz.cfl);
  r.lorentz.t_end = s.get("t_end", d.lorentz.t_end);
  r.lorentz.record_every = s.get("record_every", d.lorentz.record_every);
  r.snapshot_every = s.get("snapshot_every", d.snapshot_every);

  as_validation([&] {
    r.lorentz.validate();
    const auto fol = make_foliation(r.foliation, r.n_cells, r.period, r.amplitude, r.omega, r.hubble);
    const auto flux = make_timelike_flux(r.flux, r.speed, r.chi, r.state_min, r.state_max);
    const auto report = check_timelike(flux, fol, timelike_sample_grid(flux, fol, r.lorentz.t_end));
    if (!report.timelike())
      invalid(fmt::format("[lorentzian] flux '{}' is not time-like on foliation '{}' up to t_end (max g(df, df) = {})",
                          r.flux, r.foliation, report.max_norm));
  });
  const auto [lo, hi] = profile_range(r.initial);
  if (lo < r.state_min || hi > r.state_max)
    invalid(fmt::format("[lorentzian] initial data range [{}, {}] leaves the state range [{}, {}]", lo, hi, r.state_min,
                        r.state_max));
  return r;
}

GowdyRun read_gowdy(Section& s) {
  const GowdyRun d;
  GowdyRun r;
  auto& n = r.numerics;
  n.kappa = s.get("kappa", d.numerics.kappa);
  n.c_s = s.get("c_s", d.numerics.c_s);
  n.n_cells = s.get("n_cells", d.numerics.n_cells);
  n.length = s.get("length", d.numerics.length);
  n.cfl = s.get("cfl", d.numerics.cfl);
  n.t_end = s.get("t_end", d.numerics.t_end);
  n.vdc_base = s.get("vdc_base", d.numerics.vdc_base);
  n.splitting = gowdy::parse_splitting(s.choice("splitting", "lie", {"lie", "strang"}));
  n.record_every = s.get("record_every", d.numerics.record_every);
  n.thresholds.alpha_b_ceiling = s.get("alpha_b_ceiling", d.numerics.thresholds.alpha_b_ceiling);
  n.thresholds.mu_ceiling = s.get("mu_ceiling", d.numerics.thresholds.mu_ceiling);
  n.thresholds.beta_floor = s.get("beta_floor", d.numerics.thresholds.beta_floor);
  r.initial = s.choice("initial", d.initial, {"compatible", "riemann"});
  r.family.mu = s.get("mu", d.family.mu);
  r.family.bt0 = s.get("bt0", d.family.bt0);
  r.family.ct0 = s.get("ct0", d.family.ct0);
  r.family.eps = s.get("eps", d.family.eps);
  r.family.a0 = s.get("a0", d.family.a0);
  r.family.b0 = s.get("b0", d.family.b0);
  r.left = {s.get("left_mu", d.left.mu), s.get("left_v", d.left.v)};
  r.right = {s.get("right_mu", d.right.mu), s.get("right_v", d.right.v)};
  r.snapshot_every = s.get("snapshot_every", d.snapshot_every);

  as_validation([&] {
    n.validate();
    if (r.initial == "riemann") {
      gowdy::check_physical(r.left);
      gowdy::check_physical(r.right);
    } else {
      if (!(r.family.mu > 0.0)) invalid("[gowdy] mu must be > 0");
      if (r.family.bt0 == 0.0) invalid("[gowdy] bt0 must be nonzero for constraint-compatible data");
    }
  });
  return r;
}

}  // namespace

RunConfig parse_config_text(std::string_view text) {
  pt::ptree root;
  try {
    std::istringstream is{std::string(text)};
    pt::ini_parser::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(ConfigErrorKind::parse, fmt::format("malformed configuration: {}", e.message()));
  }
  if (root.empty()) throw ConfigError(ConfigErrorKind::parse, "configuration is empty");
  for (const auto& [name, node] : root) {
    if (name != "run" && name != "riemannian" && name != "lorentzian" && name != "gowdy")
      invalid(fmt::format("unknown section [{}] (known: run, riemannian, lorentzian, gowdy)", name));
    if (node.empty() && !node.data().empty())
      throw ConfigError(ConfigErrorKind::parse, fmt::format("key '{}' outside of a section", name));
  }

  RunConfig cfg;
  Section run(root, "run");
  const auto solver = run.choice("solver", "", {"riemannian", "lorentzian", "gowdy"});
  cfg.output_dir = run.get<std::string>("output_dir", cfg.output_dir);
  run.finish();
  if (cfg.output_dir.empty()) invalid("[run] output_dir must not be empty");

  Section section(root, solver);
  if (solver == "riemannian") {
    cfg.solver = Solver::riemannian;
    cfg.riemannian = read_riemannian(section);
  } else if (solver == "lorentzian") {
    cfg.solver = Solver::lorentzian;
    cfg.lorentzian = read_lorentzian(section);
  } else {
    cfg.solver = Solver::gowdy;
    cfg.gowdy = read_gowdy(section);
  }
  section.finish();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorKind::missing_file, fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["solver"] = to_string(cfg.solver);
  j["output_dir"] = cfg.output_dir;
  const auto profile = [](const InitialProfile& p) {
    return nlohmann::json{{"initial", p.family},
                          {"initial_mean", p.mean},
                          {"initial_amplitude", p.amplitude},
                          {"initial_left", p.left},
                          {"initial_right", p.right}};
  };
  nlohmann::json s;
  switch (cfg.solver) {
    case Solver::riemannian: {
      const auto& r = cfg.riemannian;
      s = {{"mesh", r.mesh},
           {"n_cells", r.n_cells},
           {"length", r.length},
           {"n_x", r.n_x},
           {"n_y", r.n_y},
           {"length_x", r.length_x},
           {"length_y", r.length_y},
           {"metric", r.metric},
           {"metric_amplitude", r.metric_amplitude},
           {"flux", r.flux},
           {"potential_c1", r.potential[0]},
           {"potential_c2", r.potential[1]},
           {"potential_c3", r.potential[2]},
           {"field_amplitude", r.field_amplitude},
           {"stream_amplitude", r.stream_amplitude},
           {"cfl", r.fv.cfl},
           {"t_end", r.fv.t_end},
           {"numerical_flux", to_string(r.fv.numerical_flux)},
           {"record_every", r.fv.record_every},
           {"snapshot_every", r.snapshot_every}};
      s.update(profile(r.initial));
      break;
    }
    case Solver::lorentzian: {
      const auto& r = cfg.lorentzian;
      s = {{"foliation", r.foliation},
           {"n_cells", r.n_cells},
           {"period", r.period},
           {"foliation_amplitude", r.amplitude},
           {"foliation_omega", r.omega},
           {"hubble", r.hubble},
           {"flux", r.flux},
           {"speed", r.speed},
           {"chi_amplitude", r.chi.amplitude},
           {"chi_omega", r.chi.omega},
           {"state_min", r.state_min},
           {"state_max", r.state_max},
           {"pair_phase", r.pair_phase},
           {"kruzkov_k", r.kruzkov_k},
           {"cfl", r.lorentz.cfl},
           {"t_end", r.lorentz.t_end},
           {"record_every", r.lorentz.record_every},
           {"snapshot_every", r.snapshot_every}};
      s.update(profile(r.initial));
      break;
    }
    case Solver::gowdy: {
      const auto& r = cfg.gowdy;
      const auto& n = r.numerics;
      s = {{"kappa", n.kappa},
           {"c_s", n.c_s},
           {"n_cells", n.n_cells},
           {"length", n.length},
           {"cfl", n.cfl},
           {"t_end", n.t_end},
           {"vdc_base", n.vdc_base},
           {"splitting", gowdy::to_string(n.splitting)},
           {"record_every", n.record_every},
           {"alpha_b_ceiling", n.thresholds.alpha_b_ceiling},
           {"mu_ceiling", n.thresholds.mu_ceiling},
           {"beta_floor", n.thresholds.beta_floor},
           {"initial", r.initial},
           {"mu", r.family.mu},
           {"bt0", r.family.bt0},
           {"ct0", r.family.ct0},
           {"eps", r.family.eps},
           {"a0", r.family.a0},
           {"b0", r.family.b0},
           {"left_mu", r.left.mu},
           {"left_v", r.left.v},
           {"right_mu", r.right.mu},
           {"right_v", r.right.v},
           {"snapshot_every", r.snapshot_every}};
      break;
    }
  }
  j[std::string(to_string(cfg.solver))] = s;
  return j;
}

}  // namespace mcl::cli
