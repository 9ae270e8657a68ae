#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "subplanck/grid_io.hpp"
#include "subplanck/optomech.hpp"
#include "subplanck/sensitivity.hpp"
#include "subplanck/states.hpp"
#include "subplanck/wigner.hpp"

namespace subplanck::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutputDirEnv = "SUBPLANCK_OUTPUT_DIR";

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("bad " + what + " '" + text + "'");
  return v;
}

struct OutputOptions {
  std::string out_dir;
  std::string name;
  std::string format = "csv";
  bool image = false;
  unsigned threads = 0;

  void add_to(CLI::App* app) {
    app->add_option("--out-dir", out_dir, "Output directory (default: $SUBPLANCK_OUTPUT_DIR or .)");
    app->add_option("--name", name, "Output file stem");
    app->add_option("--format", format, "Data format")->check(CLI::IsMember({"csv", "json", "image"}));
    app->add_flag("--image", image, "Also write a PNG heatmap");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  fs::path directory() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return ".";
  }

  fs::path path_for(const std::string& stem, const std::string& ext) const {
    return directory() / (stem + ext);
  }

  std::string stem_or(const std::string& fallback) const { return name.empty() ? fallback : name; }
};

struct GridOptions {
  std::string grid;
  std::string pgrid;

  void add_to(CLI::App* app) {
    app->add_option("--grid", grid, "Grid min:max:count, both axes");
    app->add_option("--pgrid", pgrid, "Momentum-axis override min:max:count");
  }

  GridSpec resolve(const GridSpec& fallback) const {
    GridSpec spec = grid.empty() ? fallback : parse_grid_axis(grid);
    if (!pgrid.empty()) {
      const GridSpec p = parse_grid_axis(pgrid);
      spec.p_min = p.p_min;
      spec.p_max = p.p_max;
      spec.np = p.np;
    }
    spec.validate();
    return spec;
  }
};

/// Writes a grid in the requested format(s) and reports the paths.
void emit_grid(const ScalarGrid& grid, const OutputOptions& opt, const std::string& stem, std::ostream& out) {
  if (opt.format == "csv") {
    const auto path = opt.path_for(stem, ".csv");
    write_text_file(path, grid_to_csv(grid));
    out << "wrote " << path.string() << '\n';
  } else if (opt.format == "json") {
    const auto path = opt.path_for(stem, ".json");
    write_text_file(path, grid_to_json(grid));
    out << "wrote " << path.string() << '\n';
  }
  if (opt.image || opt.format == "image") {
    const auto path = opt.path_for(stem, ".png");
    write_heatmap_png(grid, path);
    out << "wrote " << path.string() << '\n';
  }
}

std::string tag(double v) { return format_double(v); }

struct StateOptions {
  int L = 0;
  double beta = 0.0;
  std::optional<double> theta;
  std::string phases;

  void add_to(CLI::App* app) {
    app->add_option("--L", L, "Number of coherent components");
    app->add_option("--beta", beta, "Coherent amplitude")->required();
    app->add_option("--theta", theta, "Relative phase of the second component (L = 2)");
    app->add_option("--phases", phases, "Comma-separated component phases (radians)");
  }

  std::vector<double> phase_list() const {
    if (theta && !phases.empty()) throw std::invalid_argument("--theta and --phases are mutually exclusive");
    if (theta) {
      if (L != 2) throw std::invalid_argument("--theta applies to L = 2 only");
      return {0.0, *theta};
    }
    if (phases.empty()) return {};
    return parse_number_list(phases);
  }

  bool default_phases() const {
    const auto ph = phase_list();
    return std::all_of(ph.begin(), ph.end(), [](double v) { return v == 0.0; });
  }

  CoherentSuperposition build() const {
    if (L < 1) throw std::invalid_argument("--L must be a positive integer");
    const auto ph = phase_list();
    return make_cat(beta, L, ph);
  }
};

int cmd_wigner(const StateOptions& st, const GridOptions& go, const OutputOptions& oo, bool center_only,
               std::ostream& out) {
  const GridSpec spec = go.resolve(default_wigner_grid(st.beta));
  ScalarGrid grid;
  std::string stem;
  if (center_only) {
    if (!st.default_phases()) throw std::invalid_argument("--center-only assumes equal (zero) phases");
    if (st.L < 2 || st.L % 2 != 0) throw std::invalid_argument("--center-only needs an even L >= 2");
    grid = central_interference_grid(st.L, st.beta, spec, oo.threads);
    stem = oo.stem_or("wigner_center_L" + std::to_string(st.L) + "_beta" + tag(st.beta));
  } else {
    grid = wigner_grid(st.build(), spec, oo.threads);
    stem = oo.stem_or("wigner_L" + std::to_string(st.L) + "_beta" + tag(st.beta));
  }
  emit_grid(grid, oo, stem, out);
  out << "integral " << format_double(grid.integral()) << '\n';
  if (!center_only) out << "purity " << format_double(std::numbers::pi * grid.integral_of_square()) << '\n';
  return kOk;
}

int cmd_overlap(const StateOptions& st, bool coherent, const std::string& mode, bool zeros, double threshold,
                const GridOptions& go, const OutputOptions& oo, std::ostream& out) {
  const GridSpec spec = go.resolve(default_overlap_grid());
  if (!std::isfinite(threshold)) throw std::invalid_argument("--threshold must be finite");
  ScalarGrid grid;
  std::string stem;
  if (coherent) {
    if (mode != "exact") throw std::invalid_argument("--coherent supports --mode exact only");
    grid = overlap_grid(CoherentSuperposition::coherent(st.beta), spec, oo.threads);
    stem = oo.stem_or("overlap_coherent_beta" + tag(st.beta));
  } else {
    if (st.L < 1) throw std::invalid_argument("--L must be a positive integer (or use --coherent)");
    if (mode == "exact") {
      grid = overlap_grid(st.build(), spec, oo.threads);
    } else {
      if (!st.default_phases()) throw std::invalid_argument("--mode " + mode + " assumes equal phases");
      grid = mode == "diagonal" ? overlap_grid_diagonal(st.L, st.beta, spec, oo.threads)
                                : overlap_grid_bessel(st.beta, spec, oo.threads);
    }
    stem = oo.stem_or("overlap_" + mode + "_L" + std::to_string(st.L) + "_beta" + tag(st.beta));
  }
  emit_grid(grid, oo, stem, out);
  if (zeros) {
    const ScalarGrid mask = zero_mask(grid, threshold);
    emit_grid(mask, oo, stem + "_zeros", out);
    double count = 0.0;
    for (double v : mask.values) count += v;
    out << "zero_cells " << static_cast<long long>(count) << '\n';
  }
  return kOk;
}

int cmd_extension(int L, const std::string& betas, const std::string& dirs, const OutputOptions& oo,
                  std::ostream& out) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("--L must be an even integer >= 2");
  const auto beta_list = parse_number_list(betas);
  const auto dir_list = parse_number_list(dirs);
  std::string csv = "L,beta,direction_degrees,width,no_zero\n";
  nlohmann::json rows = nlohmann::json::array();
  for (double beta : beta_list) {
    if (!(beta > 0.0)) throw std::invalid_argument("--betas entries must be positive");
    for (double deg : dir_list) {
      const PatchExtension e = patch_extension(L, beta, deg * std::numbers::pi / 180.0);
      csv += std::to_string(L) + ',' + format_double(beta) + ',' + format_double(deg) + ',' +
             format_double(e.width) + ',' + (e.no_zero ? "1" : "0") + '\n';
      rows.push_back({{"L", L}, {"beta", beta}, {"direction_degrees", deg}, {"width", e.width},
                      {"no_zero", e.no_zero}});
    }
  }
  const std::string stem = oo.stem_or("extension_L" + std::to_string(L));
  const bool json = oo.format == "json";
  const auto path = oo.path_for(stem, json ? ".json" : ".csv");
  write_text_file(path, json ? rows.dump(2) + '\n' : csv);
  out << "wrote " << path.string() << '\n';
  return kOk;
}

nlohmann::json complex_json(complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json superposition_json(const CoherentSuperposition& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms()) terms.push_back({{"coeff", complex_json(t.coeff)}, {"label", complex_json(t.label)}});
  return terms;
}

struct OptomechOptions {
  int M = 0;
  std::string ksq = "1/240";
  double alpha0 = 8.0;
  double alpha0_im = 0.0;
  double beta_m = 0.0;
  double beta_m_im = 0.0;
  bool wigner = false;
  bool purity = false;
  std::optional<double> t;
  int cutoff = 0;
};

int cmd_optomech(const OptomechOptions& o, const GridOptions& go, const OutputOptions& oo, std::ostream& out) {
  if (o.M < 1) throw std::invalid_argument("--M must be a positive integer");
  OptomechConfig cfg;
  cfg.k_squared = Rational::parse(o.ksq);
  cfg.alpha0 = {o.alpha0, o.alpha0_im};
  cfg.beta_m = {o.beta_m, o.beta_m_im};
  cfg.M = o.M;

  const Rational frac = revival_fraction(cfg.M, cfg.k_squared);
  const GaussCoefficients gauss = gauss_coefficients(frac.num, frac.den);
  const CoherentSuperposition analogue = cavity_state_at_revival(cfg);
  const CoherentSuperposition ideal = matched_ideal_cat(cfg);
  const double fid = fidelity(analogue, ideal);

  const std::string stem = oo.stem_or("optomech_M" + std::to_string(cfg.M));
  nlohmann::json state = {{"M", cfg.M},
                          {"ksq", std::to_string(cfg.k_squared.num) + "/" + std::to_string(cfg.k_squared.den)},
                          {"p", gauss.p},
                          {"q", gauss.q},
                          {"l", gauss.l},
                          {"terms", superposition_json(analogue)}};
  const auto state_path = oo.path_for(stem + "_state", ".json");
  write_text_file(state_path, state.dump(2) + '\n');
  out << "wrote " << state_path.string() << '\n';

  nlohmann::json report = {{"M", cfg.M},
                           {"components", gauss.component_count()},
                           {"norm", analogue.norm_squared()},
                           {"fidelity_vs_ideal_cat", fid},
                           {"ideal_cat", superposition_json(ideal)}};
  out << "components " << gauss.component_count() << '\n';
  out << "fidelity " << format_double(fid) << '\n';

  if (o.purity) {
    const double t = o.t.value_or(cfg.revival_time());
    const int cutoff = o.cutoff > 0 ? o.cutoff : default_cutoff(std::abs(cfg.alpha0));
    const JointState js = joint_state(cfg, t, cutoff);
    const double purity = reduced_cavity_purity(js);
    report["t"] = t;
    report["purity"] = purity;
    report["truncation_warning"] = js.truncation_warning;
    out << "purity " << format_double(purity) << '\n';
  } else if (o.t) {
    throw std::invalid_argument("--t requires --purity");
  }
  const auto report_path = oo.path_for(stem + "_report", ".json");
  write_text_file(report_path, report.dump(2) + '\n');
  out << "wrote " << report_path.string() << '\n';

  if (o.wigner) {
    const GridSpec spec = go.resolve(default_wigner_grid(std::abs(cfg.alpha0)));
    emit_grid(wigner_grid(analogue, spec, oo.threads), oo, stem + "_wigner", out);
  }
  return kOk;
}

}  // namespace

GridSpec parse_grid_axis(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw std::invalid_argument("grid must look like min:max:count, got '" + text + "'");
  const double lo = parse_real(text.substr(0, first), "grid minimum");
  const double hi = parse_real(text.substr(first + 1, second - first - 1), "grid maximum");
  const double n = parse_real(text.substr(second + 1), "grid count");
  if (n != std::floor(n) || n < 2 || n > 1e6) throw std::invalid_argument("grid count must be an integer >= 2");
  GridSpec spec = GridSpec::square(lo, hi, static_cast<int>(n));
  spec.validate();
  return spec;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) tokens.push_back(tok);
  std::vector<double> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "...") {
      out.push_back(parse_real(tokens[i], "list entry"));
      continue;
    }
    if (out.size() < 2 || i + 1 >= tokens.size())
      throw std::invalid_argument("'...' needs two leading values and an end value");
    const double step = out[out.size() - 1] - out[out.size() - 2];
    const double end = parse_real(tokens[i + 1], "list entry");
    if (step == 0.0 || (end - out.back()) / step < 0.0) throw std::invalid_argument("'...' progression does not reach its end value");
    const double start = out.back();
    const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9));
    if (count > 100000) throw std::invalid_argument("'...' progression is too long");
    for (long k = 1; k <= count; ++k) out.push_back(start + k * step);
    if (std::abs(out.back() - end) > 1e-9 * std::max(1.0, std::abs(end))) out.push_back(end);
    ++i;
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wigner functions, displacement sensitivity and optomechanical analogues of multicomponent cat states",
               "subplanck"};
  app.require_subcommand(1);

  StateOptions wigner_state;
  GridOptions wigner_grid_opt;
  OutputOptions wigner_out;
  bool center_only = false;
  auto* wigner = app.add_subcommand("wigner", "Wigner function grid of an L-component cat");
  wigner_state.add_to(wigner);
  wigner_grid_opt.add_to(wigner);
  wigner_out.add_to(wigner);
  wigner->add_flag("--center-only", center_only, "Evaluate only the central interference term");

  StateOptions overlap_state;
  GridOptions overlap_grid_opt;
  OutputOptions overlap_out;
  bool coherent = false;
  bool zeros = false;
  double threshold = kZeroRegionThreshold;
  std::string mode = "exact";
  auto* overlap = app.add_subcommand("overlap", "Overlap |<psi|D(delta)|psi>|^2 over displacements");
  overlap_state.add_to(overlap);
  overlap_grid_opt.add_to(overlap);
  overlap_out.add_to(overlap);
  overlap->add_flag("--coherent", coherent, "Use the single coherent state |beta>");
  overlap->add_flag("--zeros", zeros, "Also write the zero-region mask");
  overlap->add_option("--threshold", threshold, "Zero-region threshold");
  overlap->add_option("--mode", mode, "Computation path")->check(CLI::IsMember({"exact", "diagonal", "bessel"}));

  int ext_L = 0;
  std::string betas;
  std::string dirs = "0,90";
  OutputOptions ext_out;
  auto* extension = app.add_subcommand("extension", "Central patch widths over beta and direction");
  extension->add_option("--L", ext_L, "Number of coherent components")->required();
  extension->add_option("--betas", betas, "Comma-separated amplitudes")->required();
  extension->add_option("--dirs", dirs, "Comma-separated directions in degrees; a,b,...,c expands");
  ext_out.add_to(extension);

  OptomechOptions opto;
  GridOptions opto_grid;
  OutputOptions opto_out;
  auto* optomech = app.add_subcommand("optomech", "Cavity state at a separable revival time");
  optomech->add_option("--M", opto.M, "Revival index, t = 2 pi M")->required();
  optomech->add_option("--ksq", opto.ksq, "Squared coupling as an exact fraction a/b");
  optomech->add_option("--alpha0", opto.alpha0, "Initial cavity amplitude (real part)");
  optomech->add_option("--alpha0-im", opto.alpha0_im, "Initial cavity amplitude (imaginary part)");
  optomech->add_option("--beta-m", opto.beta_m, "Initial mirror amplitude (real part)");
  optomech->add_option("--beta-m-im", opto.beta_m_im, "Initial mirror amplitude (imaginary part)");
  optomech->add_flag("--wigner", opto.wigner, "Write the Wigner grid of the analogue state");
  optomech->add_flag("--purity", opto.purity, "Report reduced cavity purity of the joint state");
  optomech->add_option("--t", opto.t, "Evolution time for --purity (default 2 pi M)");
  optomech->add_option("--cutoff", opto.cutoff, "Fock cutoff for --purity");
  opto_grid.add_to(optomech);
  opto_out.add_to(optomech);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid-argument: " << e.what() << '\n';
    return kInvalidArgument;
  }

  try {
    if (*wigner) return cmd_wigner(wigner_state, wigner_grid_opt, wigner_out, center_only, out);
    if (*overlap) return cmd_overlap(overlap_state, coherent, mode, zeros, threshold, overlap_grid_opt, overlap_out, out);
    if (*extension) return cmd_extension(ext_L, betas, dirs, ext_out, out);
    if (*optomech) return cmd_optomech(opto, opto_grid, opto_out, out);
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid-argument: " << e.what() << '\n';
    return kInvalidArgument;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInvalidArgument;
  }
  return kInvalidArgument;
}

}  // namespace subplanck::cli
