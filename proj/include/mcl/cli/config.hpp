#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcl/error.hpp"
#include "mcl/gowdy/solver.hpp"
#include "mcl/lorentzian_fv.hpp"
#include "mcl/riemannian_fv.hpp"

namespace mcl::cli {

enum class ConfigErrorKind { missing_file, parse, validation };
std::string_view to_string(ConfigErrorKind kind) noexcept;

class ConfigError : public Error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ConfigErrorKind kind() const noexcept { return kind_; }

 private:
  ConfigErrorKind kind_;
};

enum class Solver { riemannian, lorentzian, gowdy };
std::string_view to_string(Solver s) noexcept;

/// constant: u = mean; sine: u = mean + amplitude sin(2 pi x / L) (times
/// cos(2 pi y / L_y) on the torus); riemann: left for x < L/2, right after.
struct InitialProfile {
  std::string family = "sine";
  double mean = 0.5;
  double amplitude = 0.25;
  double left = 1.0;
  double right = 0.0;
};

struct RiemannianRun {
  std::string mesh = "circle";  // circle | torus
  std::size_t n_cells = 128;
  double length = 1.0;
  std::size_t n_x = 32;
  std::size_t n_y = 32;
  double length_x = 1.0;
  double length_y = 1.0;
  std::string metric = "flat";  // flat | sine
  double metric_amplitude = 0.3;
  std::string flux = "burgers";  // circle: burgers | potential | field; torus: stream
  std::array<double, 3> potential{0.0, 1.0, 0.0};
  double field_amplitude = 0.5;
  double stream_amplitude = 1.0;
  InitialProfile initial;
  FvConfig fv;
  std::size_t snapshot_every = 0;
};

struct LorentzianRun {
  std::string foliation = "minkowski";
  std::size_t n_cells = 128;
  double period = 1.0;
  double amplitude = 0.2;
  double omega = 1.0;
  double hubble = 0.2;
  std::string flux = "burgers";  // transport | burgers
  double speed = 0.8;
  StreamCorrection chi;
  double state_min = -1.0;
  double state_max = 1.0;
  InitialProfile initial;
  double pair_phase = 0.25;
  std::vector<double> kruzkov_k{-0.5, 0.0, 0.5};
  LorentzConfig lorentz;
  std::size_t snapshot_every = 0;
};

struct GowdyRun {
  gowdy::GowdyConfig numerics;
  std::string initial = "compatible";  // compatible | riemann
  gowdy::CompatibleFamily family;
  gowdy::FluidState left{2.0, 0.0};
  gowdy::FluidState right{1.0, 0.0};
  std::size_t snapshot_every = 0;
};

/// One run. Only the member selected by `solver` is used; every default is
/// filled in by the parser.
struct RunConfig {
  Solver solver = Solver::riemannian;
  std::string output_dir = "mcl_output";
  RiemannianRun riemannian;
  LorentzianRun lorentzian;
  GowdyRun gowdy;
};

/// INI document with a [run] section (solver, output_dir) and one section
/// named after the solver. Unknown keys and family names are rejected.
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// The active solver section with all values materialized.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace mcl::cli
