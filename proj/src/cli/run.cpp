#include "mcl/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mcl/flux_entropy.hpp"
#include "mcl/geometry.hpp"
#include "mcl/gowdy/solver.hpp"
#include "mcl/lorentzian_fv.hpp"
#include "mcl/riemannian_fv.hpp"

namespace mcl::cli {

const std::vector<CsvSchema>& csv_schemas() {
  static const std::vector<CsvSchema> schemas{
      {"norms.csv", {"t", "l1", "l2", "linf", "mass"}},
      {"field_<step>.csv", {"cell_id", "x", "y", "u"}},
      {"traces.csv", {"t", "entropy_name", "trace_norm"}},
      {"distance.csv", {"t", "l1_flux_distance"}},
      {"gowdy_fluid_<step>.csv", {"cell", "x", "mu", "v", "tau", "S"}},
      {"gowdy_geo_<step>.csv", {"cell", "x", "a", "b", "c", "at", "ax", "bt", "bx", "ct", "cx", "alpha", "beta"}},
      {"gowdy_series.csv",
       {"t", "tv_mu", "tv_v", "tv_w", "sup_alpha_b", "sup_mu", "max_r1", "max_r2", "verdict"}},
  };
  return schemas;
}

std::vector<std::string_view> field_columns(bool two_dimensional) {
  if (two_dimensional) return {"cell_id", "x", "y", "u"};
  return {"cell_id", "x", "u"};
}

std::string describe_schemas() {
  std::string out;
  for (const auto& s : csv_schemas()) {
    out += fmt::format("{}: {}\n", s.file, fmt::join(s.columns, ","));
    if (s.file == "field_<step>.csv") out += "  (y only on the torus mesh)\n";
  }
  out += "numbers are written with 17 significant digits; verdict is one of running, geometry_blowup, "
         "matter_blowup, completed\n";
  return out;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_out, const RunConfig& cfg) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (const char* env = std::getenv("MCL_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) { return fmt::format("{:.17g}", v); }

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::vector<std::string_view>& columns) : out_(path) {
    if (!out_) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out_ << fmt::format("{}\n", fmt::join(columns, ","));
  }

  void row(const std::vector<std::string>& cells) { out_ << fmt::format("{}\n", fmt::join(cells, ",")); }

 private:
  std::ofstream out_;
};

const std::vector<std::string_view>& columns_of(std::string_view file) {
  for (const auto& s : csv_schemas())
    if (s.file == file) return s.columns;
  throw std::logic_error("unknown schema");
}

class Outputs {
 public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  CsvFile open(const std::string& name, const std::vector<std::string_view>& columns) {
    files_.push_back(name);
    return CsvFile(dir_ / name, columns);
  }

  const std::vector<std::string>& files() const noexcept { return files_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

bool snapshot_due(std::size_t step, std::size_t every) { return step == 0 || (every > 0 && step % every == 0); }

double profile_value(const InitialProfile& p, double x, double length, double y_factor = 1.0) {
  if (p.family == "constant") return p.mean;
  if (p.family == "sine") return p.mean + p.amplitude * std::sin(kTwoPi * x / length) * y_factor;
  return x < 0.5 * length ? p.left : p.right;
}

nlohmann::json norms_json(const NormSample& s) {
  return {{"l1", s.l1}, {"l2", s.l2}, {"linf", s.linf}, {"mass", s.mass}};
}

// ---------------------------------------------------------------- riemannian

struct RiemannianSetup {
  std::optional<Metric1D> circle;
  std::optional<Metric2D> torus;
  std::optional<FluxField> flux;
  CellField u0;

  const CellComplex& complex() const { return circle ? circle->complex() : torus->complex(); }
  std::pair<double, double> center(Index c) const {
    if (circle) return {circle->center(c), 0.0};
    return torus->center(c);
  }
};

RiemannianSetup setup_riemannian(const RiemannianRun& r) {
  RiemannianSetup s;
  const double A = r.metric == "sine" ? r.metric_amplitude : 0.0;
  const Potential phi(r.potential[0], r.potential[1], r.potential[2]);
  std::vector<double> u;
  if (r.mesh == "circle") {
    const double L = r.length;
    s.circle = build_circle_mesh(r.n_cells, L, [=](double x) { return 1.0 + A * std::sin(kTwoPi * x / L); });
    if (r.flux == "burgers")
      s.flux = burgers_1d(*s.circle);
    else if (r.flux == "potential")
      s.flux = flux_from_potential_1d(*s.circle, phi);
    else
      s.flux = flux_from_field_1d(
          *s.circle, [=, F = r.field_amplitude](double x) { return 1.0 + F * std::sin(kTwoPi * x / L); }, phi);
    for (Index i = 0; i < r.n_cells; ++i) u.push_back(profile_value(r.initial, s.circle->center(i), L));
    s.u0 = CellField(u, s.circle->mesh_id());
  } else {
    const double Lx = r.length_x;
    const double Ly = r.length_y;
    s.torus = build_torus_mesh(r.n_x, r.n_y, Lx, Ly, [=](double x, double y) {
      return Sym2{1.0 + A * std::sin(kTwoPi * x / Lx), 0.25 * A * std::sin(kTwoPi * (x / Lx + y / Ly)),
                  1.0 + A * std::cos(kTwoPi * y / Ly)};
    });
    const auto corners = sample_corners(*s.torus, [=, S = r.stream_amplitude](double x, double y) {
      return S * std::sin(kTwoPi * x / Lx) * std::sin(kTwoPi * y / Ly);
    });
    s.flux = flux_from_stream_2d(*s.torus, {StreamTerm{corners, phi}});
    for (Index c = 0; c < s.torus->n_cells(); ++c) {
      const auto [x, y] = s.torus->center(c);
      u.push_back(profile_value(r.initial, x, Lx, std::cos(kTwoPi * y / Ly)));
    }
    s.u0 = CellField(u, s.torus->mesh_id());
  }
  return s;
}

void write_field(Outputs& out, const RiemannianSetup& s, std::size_t step, std::span<const double> u) {
  const bool two_d = s.torus.has_value();
  auto csv = out.open(fmt::format("field_{}.csv", step), field_columns(two_d));
  for (Index c = 0; c < u.size(); ++c) {
    const auto [x, y] = s.center(c);
    if (two_d)
      csv.row({std::to_string(c), num(x), num(y), num(u[c])});
    else
      csv.row({std::to_string(c), num(x), num(u[c])});
  }
}

nlohmann::json run_riemannian(const RiemannianRun& r, Outputs& out) {
  const auto s = setup_riemannian(r);
  std::size_t last_written = static_cast<std::size_t>(-1);
  const auto res = solve(s.complex(), s.u0, *s.flux, r.fv, [&](std::size_t step, double, const CellField& u) {
    if (snapshot_due(step, r.snapshot_every)) {
      write_field(out, s, step, u.values());
      last_written = step;
    }
  });
  if (last_written != res.steps) write_field(out, s, res.steps, res.u.values());

  auto csv = out.open("norms.csv", columns_of("norms.csv"));
  const auto& n = res.norms;
  double rise_l1 = 0.0, rise_l2 = 0.0, rise_linf = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    csv.row({num(n.times[k]), num(n.l1[k]), num(n.l2[k]), num(n.linf[k]), num(n.mass[k])});
    if (k > 0) {
      rise_l1 = std::max(rise_l1, n.l1[k] - n.l1[k - 1]);
      rise_l2 = std::max(rise_l2, n.l2[k] - n.l2[k - 1]);
      rise_linf = std::max(rise_linf, n.linf[k] - n.linf[k - 1]);
    }
  }
  const auto at = [&](std::size_t k) { return NormSample{n.l1[k], n.l2[k], n.linf[k], n.mass[k]}; };
  return {{"t", res.t},
          {"steps", res.steps},
          {"initial_norms", norms_json(at(0))},
          {"final_norms", norms_json(at(n.size() - 1))},
          {"mass_drift", n.mass.back() - n.mass.front()},
          {"max_norm_increase", {{"l1", rise_l1}, {"l2", rise_l2}, {"linf", rise_linf}}}};
}

// ---------------------------------------------------------------- lorentzian

nlohmann::json run_lorentzian(const LorentzianRun& r, Outputs& out) {
  const auto fol = make_foliation(r.foliation, r.n_cells, r.period, r.amplitude, r.omega, r.hubble);
  const auto flux = make_timelike_flux(r.flux, r.speed, r.chi, r.state_min, r.state_max);
  std::vector<double> u0(r.n_cells), v0(r.n_cells);
  for (Index i = 0; i < r.n_cells; ++i) {
    const double x = fol.center(i);
    u0[i] = profile_value(r.initial, x, r.period);
    v0[i] = profile_value(r.initial, std::fmod(x + r.pair_phase * r.period, r.period), r.period);
  }
  const auto [ru, rv] = evolve_pair(u0, v0, flux, fol, r.lorentz);

  std::vector<SliceEntropy> entropies{SliceEntropy::quadratic()};
  for (double k : r.kruzkov_k) entropies.push_back(SliceEntropy::kruzkov_at(k));

  auto norms = out.open("norms.csv", columns_of("norms.csv"));
  auto traces = out.open("traces.csv", columns_of("traces.csv"));
  auto distance = out.open("distance.csv", columns_of("distance.csv"));
  nlohmann::json final_traces;
  NormSample first{}, last{};
  double first_distance = 0.0, last_distance = 0.0;
  for (std::size_t k = 0; k < ru.times.size(); ++k) {
    const double t = ru.times[k];
    const auto& u = ru.states[k];
    NormSample s;
    double l2 = 0.0;
    for (Index i = 0; i < u.size(); ++i) {
      const double w = fol.dx() * fol.spatial_sqrt_g(t, i);
      s.l1 += w * std::abs(u[i]);
      l2 += w * u[i] * u[i];
      s.linf = std::max(s.linf, std::abs(u[i]));
    }
    s.l2 = std::sqrt(l2);
    s.mass = slice_mass(u, flux, fol, t);
    norms.row({num(t), num(s.l1), num(s.l2), num(s.linf), num(s.mass)});
    for (const auto& e : entropies) {
      const double tr = trace_entropy_norm(u, e, flux, fol, t);
      traces.row({num(t), e.name, num(tr)});
      if (k + 1 == ru.times.size()) final_traces[e.name] = tr;
    }
    const double d = l1_flux_distance(u, rv.states[k], flux, fol, t);
    distance.row({num(t), num(d)});
    if (k == 0) {
      first = s;
      first_distance = d;
    }
    last = s;
    last_distance = d;
  }

  for (std::size_t k = 0; k < ru.times.size(); ++k) {
    const bool final_record = k + 1 == ru.times.size();
    const std::size_t step = final_record ? ru.steps : k * r.lorentz.record_every;
    if (!final_record && !snapshot_due(step, r.snapshot_every)) continue;
    auto csv = out.open(fmt::format("field_{}.csv", step), field_columns(false));
    for (Index i = 0; i < r.n_cells; ++i) csv.row({std::to_string(i), num(fol.center(i)), num(ru.states[k][i])});
  }

  return {{"t", ru.times.back()},
          {"steps", ru.steps},
          {"initial_norms", norms_json(first)},
          {"final_norms", norms_json(last)},
          {"final_traces", final_traces},
          {"initial_l1_flux_distance", first_distance},
          {"final_l1_flux_distance", last_distance}};
}

// ---------------------------------------------------------------- gowdy

void write_gowdy_snapshot(Outputs& out, std::size_t step, const gowdy::GowdyData& d, const gowdy::GowdyConfig& cfg) {
  const double dx = cfg.dx();
  auto fluid = out.open(fmt::format("gowdy_fluid_{}.csv", step), columns_of("gowdy_fluid_<step>.csv"));
  for (std::size_t i = 0; i < d.fluid.size(); ++i) {
    const auto q = gowdy::primitive_to_conserved(d.fluid[i], cfg.c_s);
    fluid.row({std::to_string(i), num(i * dx), num(d.fluid[i].mu), num(d.fluid[i].v), num(q.tau), num(q.S)});
  }
  auto geo = out.open(fmt::format("gowdy_geo_{}.csv", step), columns_of("gowdy_geo_<step>.csv"));
  const auto& g = d.geo;
  for (std::size_t i = 0; i < g.size(); ++i)
    geo.row({std::to_string(i), num(i * dx), num(g.a[i]), num(g.b[i]), num(g.c[i]), num(g.at[i]), num(g.ax[i]),
             num(g.bt[i]), num(g.bx[i]), num(g.ct[i]), num(g.cx[i]), num(g.alpha(i)), num(g.beta(i))});
}

nlohmann::json run_gowdy_solver(const GowdyRun& r, Outputs& out) {
  const auto& cfg = r.numerics;
  const auto data = r.initial == "riemann" ? gowdy::riemann_data(r.left, r.right, cfg)
                                           : gowdy::constraint_compatible_data(r.family, cfg);
  std::size_t last_written = static_cast<std::size_t>(-1);
  const auto res = gowdy::run_gowdy(data, cfg, [&](std::size_t step, double, const gowdy::GowdyData& d) {
    if (snapshot_due(step, r.snapshot_every)) {
      write_gowdy_snapshot(out, step, d, cfg);
      last_written = step;
    }
  });
  if (last_written != res.steps) write_gowdy_snapshot(out, res.steps, res.state, cfg);

  auto csv = out.open("gowdy_series.csv", columns_of("gowdy_series.csv"));
  for (const auto& row : res.series)
    csv.row({num(row.t), num(row.tv_mu), num(row.tv_v), num(row.tv_w), num(row.sup_alpha_b), num(row.sup_mu),
             num(row.max_r1), num(row.max_r2), std::string(gowdy::to_string(row.verdict))});

  const auto& f = res.series.back();
  nlohmann::json j{{"t", res.t},
                   {"steps", res.steps},
                   {"verdict", gowdy::to_string(res.verdict)},
                   {"final",
                    {{"tv_mu", f.tv_mu},
                     {"tv_v", f.tv_v},
                     {"tv_w", f.tv_w},
                     {"sup_alpha_b", f.sup_alpha_b},
                     {"sup_mu", f.sup_mu},
                     {"max_r1", f.max_r1},
                     {"max_r2", f.max_r2},
                     {"min_beta", f.min_beta}}}};
  if (!res.message.empty()) j["verdict_detail"] = res.message;
  return j;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  Outputs out(out_dir);
  RunOutcome outcome;
  auto& summary = outcome.summary;
  summary["config"] = to_json(cfg);
  summary["config"]["output_dir"] = out_dir.string();
  try {
    switch (cfg.solver) {
      case Solver::riemannian:
        summary["result"] = run_riemannian(cfg.riemannian, out);
        break;
      case Solver::lorentzian:
        summary["result"] = run_lorentzian(cfg.lorentzian, out);
        break;
      case Solver::gowdy:
        summary["result"] = run_gowdy_solver(cfg.gowdy, out);
        break;
    }
    summary["status"] = "ok";
  } catch (const Error& e) {
    summary["status"] = "numerical_failure";
    summary["error"] = e.what();
    outcome.exit_code = kExitNumerical;
  }
  summary["outputs"] = out.files();
  summary["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream(out.dir() / "summary.json") << summary.dump(2) << '\n';
  return outcome;
}

}  // namespace mcl::cli
