// Command-line front end for the symtorus library.
//
// Exit status: 0 success, 1 a check failed, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symtorus/config.hpp"
#include "symtorus/deformations.hpp"
#include "symtorus/io.hpp"
#include "symtorus/scenarios.hpp"
#include "symtorus/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace symtorus;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::optional<int> grid;
  std::optional<std::size_t> steps;
  std::optional<int> n;
  std::optional<double> tol_closed, tol_path_closed, tol_endpoint, tol_flux, tol_inverse;
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
  std::optional<std::string> delta_mode;
};

RunConfig resolve(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  if (g.n) cfg.n = *g.n;
  if (g.grid) cfg.grid_size = *g.grid;
  if (g.steps) cfg.time_steps = *g.steps;
  if (g.tol_closed) cfg.closed_tol = *g.tol_closed;
  if (g.tol_path_closed) cfg.path_closed_tol = *g.tol_path_closed;
  if (g.tol_endpoint) cfg.endpoint_tol = *g.tol_endpoint;
  if (g.tol_flux) cfg.flux_tol = *g.tol_flux;
  if (g.tol_inverse) cfg.inverse_tol = *g.tol_inverse;
  if (g.seed) cfg.seed = *g.seed;
  if (g.order) cfg.interp_order = *g.order;
  if (g.delta_mode) cfg.set("delta_mode", *g.delta_mode);
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  cfg.validate();
  return cfg;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / name;
}

void emit(const RunConfig& cfg, const std::string& name, const json& j) {
  io::write_json(out_path(cfg, name), j);
  std::cout << j.dump(2) << '\n';
}

json lengths_json(const LengthReport& r) {
  return {{"l_inf", r.l_inf}, {"l_1inf", r.l_1inf}, {"l_sym_inf", r.l_sym_inf}, {"l_sym_1inf", r.l_sym_1inf}};
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad integer list '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad number list '" + s + "'");
    }
  }
  return out;
}

Region parse_region(const std::string& spec, const Grid& g) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "strip") {
    const auto v = parse_doubles(args);
    if (v.size() != 1) throw Error(ErrorCode::Parse, "strip region takes one width: strip:NU");
    return Region::strip(v[0]);
  }
  if (kind == "ball") {
    auto v = parse_doubles(args);
    if (static_cast<int>(v.size()) != g.dim() + 1) throw Error(ErrorCode::Parse, "ball region: ball:C1,...,C2n,R");
    const double r = v.back();
    v.pop_back();
    return Region::ball(v, r);
  }
  if (kind == "whole") return Region::whole(g);
  throw Error(ErrorCode::Parse, "unknown region kind '" + kind + "'");
}

std::string join(const std::vector<int>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(m[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments with symplectic isotopies of the flat torus"};
  app.require_subcommand(1);
  Globals G;
  app.add_option("--config", G.config_path, "key = value configuration file");
  app.add_option("--out", G.out_dir, "output directory");
  app.add_option("--grid", G.grid, "grid points per axis");
  app.add_option("--steps", G.steps, "time steps");
  app.add_option("--n", G.n, "half dimension n of T^{2n}");
  app.add_option("--tol-closed", G.tol_closed, "closedness tolerance");
  app.add_option("--tol-path-closed", G.tol_path_closed, "closedness tolerance for recovered velocities");
  app.add_option("--tol-endpoint", G.tol_endpoint, "endpoint / check tolerance");
  app.add_option("--tol-flux", G.tol_flux, "flux tolerance");
  app.add_option("--tol-inverse", G.tol_inverse, "inverse-map residual tolerance");
  app.add_option("--delta-mode", G.delta_mode, "outer | inner time index in the group law integral");
  app.add_option("--seed", G.seed, "random seed");
  app.add_option("--order", G.order, "spatial interpolation order (odd, 1 to 9)");
  app.fallthrough();

  int status = kOk;
  std::function<void()> action;

  // integrate
  std::string gen_a, gen_b, iso_file;
  auto* integrate_cmd = app.add_subcommand("integrate", "integrate a generator into an isotopy");
  integrate_cmd->add_option("generator", gen_a, "generator manifest or analytic description")->required();
  integrate_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const auto opt = cfg.numeric();
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      const Isotopy phi = integrate(g, opt);
      io::save_isotopy(out_path(cfg, "isotopy.json"), phi);
      emit(cfg, "integrate.json",
           {{"samples", phi.samples()},
            {"lengths", lengths_json(length_report(g, group_inverse(g, phi, opt)))},
            {"lift_continuity_defect", lift_continuity_defect(phi)},
            {"volume_defect", volume_defect(phi)},
            {"time_one_c0_to_identity", c0_to_identity(phi.maps.back())}});
    };
  });

  auto* genof_cmd = app.add_subcommand("generator-of", "recover the generator of a sampled isotopy");
  genof_cmd->add_option("isotopy", iso_file, "isotopy manifest")->required();
  genof_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Isotopy phi = io::load_isotopy(iso_file);
      const Generator g = generator_of(phi, cfg.numeric());
      io::save_generator(out_path(cfg, "generator.json"), g);
      emit(cfg, "generator_of.json", {{"samples", g.samples()}, {"l_inf", length_linf(g)}, {"flux", flux(g).harmonic_rep.lambda}});
    };
  });

  auto* product_cmd = app.add_subcommand("product", "group product of two generators");
  product_cmd->add_option("a", gen_a)->required();
  product_cmd->add_option("b", gen_b)->required();
  product_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const auto opt = cfg.numeric();
      const Generator a = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      const Generator b = io::load_generator(gen_b, cfg.grid(), cfg.time_steps);
      const Isotopy pa = integrate(a, opt);
      const Generator ab = group_product(a, b, pa, opt);
      io::save_generator(out_path(cfg, "product.json"), ab);
      const auto d = path_distance(integrate(ab, opt), compose(pa, integrate(b, opt), opt), opt);
      emit(cfg, "product_report.json", {{"dbar_vs_composition", d.dbar}, {"l_inf", length_linf(ab)}});
      if (d.dbar > cfg.endpoint_tol) status = kCheckFailed;
    };
  });

  auto* inverse_cmd = app.add_subcommand("inverse", "group inverse of a generator");
  inverse_cmd->add_option("generator", gen_a)->required();
  inverse_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const auto opt = cfg.numeric();
      const Generator a = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      const Isotopy pa = integrate(a, opt);
      const Generator ai = group_inverse(a, pa, opt);
      io::save_generator(out_path(cfg, "inverse.json"), ai);
      const auto d = path_distance(integrate(ai, opt), invert(pa, opt), opt);
      emit(cfg, "inverse_report.json", {{"dbar_vs_inverse_path", d.dbar}, {"l_inf", length_linf(ai)}});
      if (d.dbar > cfg.endpoint_tol) status = kCheckFailed;
    };
  });

  auto* flux_cmd = app.add_subcommand("flux", "flux class and Hamiltonian classification");
  flux_cmd->add_option("generator", gen_a)->required();
  flux_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      const Isotopy phi = integrate(g, cfg.numeric());
      const auto rep = hamiltonian_classifier(g, cfg.flux_tol);
      emit(cfg, "flux.json",
           {{"flux", flux(g).harmonic_rep.lambda},
            {"flux_direct", flux_direct(phi).harmonic_rep.lambda},
            {"flux_norm", rep.flux_norm},
            {"harmonic_residual", rep.harmonic_residual},
            {"classification", to_string(rep.verdict)},
            {"note", rep.note}});
    };
  });

  std::string m_list;
  auto* massflow_cmd = app.add_subcommand("massflow", "mass flow by formula and by lifted displacement");
  massflow_cmd->add_option("generator", gen_a)->required();
  massflow_cmd->add_option("--m", m_list, "class vector, comma separated (default: all +-e_i)");
  auto* duality_cmd = app.add_subcommand("duality", "gap between the two mass-flow routes");
  duality_cmd->add_option("generator", gen_a)->required();
  auto massflow_action = [&](bool gate) {
    return [&, gate] {
      action = [&, gate] {
        const RunConfig cfg = resolve(G);
        const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
        const Isotopy phi = integrate(g, cfg.numeric());
        std::vector<std::vector<int>> classes =
            m_list.empty() ? signed_basis_classes(cfg.n) : std::vector<std::vector<int>>{parse_ints(m_list)};
        const auto rows = duality_table(g, phi, classes);
        std::ofstream csv(out_path(cfg, gate ? "duality.csv" : "massflow.csv"));
        io::CsvWriter w(csv);
        w.row("m", "formula", "direct", "gap");
        io::CsvWriter wo(std::cout);
        wo.row("m", "formula", "direct", "gap");
        double worst = 0.0;
        for (const auto& r : rows) {
          w.row(join(r.m), r.formula, r.direct, r.gap);
          wo.row(join(r.m), r.formula, r.direct, r.gap);
          worst = std::max(worst, r.gap);
        }
        if (gate && worst > cfg.endpoint_tol) status = kCheckFailed;
      };
    };
  };
  massflow_cmd->callback(massflow_action(false));
  duality_cmd->callback(massflow_action(true));

  double shift_s = 0.0;
  auto* shift_cmd = app.add_subcommand("shift", "time-shifted path t -> phi_{t+s} o phi_s^{-1}");
  shift_cmd->add_option("generator", gen_a)->required();
  shift_cmd->add_option("--s", shift_s, "shift (a sample time)")->required();
  shift_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const auto opt = cfg.numeric();
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      const Isotopy shifted = time_shift(integrate(g, opt), shift_s, opt);
      const Generator sg = shift_generator(g, shift_s);
      io::save_isotopy(out_path(cfg, "shifted_isotopy.json"), shifted);
      io::save_generator(out_path(cfg, "shifted_generator.json"), sg);
      const double d = path_distance(shifted, integrate(sg, opt), opt).dbar;
      emit(cfg, "shift.json", {{"s", shift_s}, {"samples", shifted.samples()}, {"dbar_vs_shifted_generator", d}});
      if (d > cfg.endpoint_tol) status = kCheckFailed;
    };
  });

  auto* lengths_cmd = app.add_subcommand("lengths", "Hofer-like lengths of a generator");
  lengths_cmd->add_option("generator", gen_a)->required();
  lengths_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      emit(cfg, "lengths.json", lengths_json(length_report(g, cfg.numeric())));
    };
  });

  std::vector<std::string> candidate_files;
  std::string version_name = "linf";
  auto* norm_cmd = app.add_subcommand("norm-upper", "upper bound on the norm over candidate generators");
  norm_cmd->add_option("target", gen_a, "generator whose time-one map is the target")->required();
  norm_cmd->add_option("candidates", candidate_files, "candidate generators")->required();
  norm_cmd->add_option("--version", version_name, "linf or l1inf")->check(CLI::IsMember({"linf", "l1inf"}));
  norm_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const auto opt = cfg.numeric();
      const Generator target = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      GeneratorSeq cands;
      for (const auto& f : candidate_files) cands.push_back(io::load_generator(f, cfg.grid(), cfg.time_steps));
      const auto version = version_name == "linf" ? LengthVersion::Linf : LengthVersion::L1inf;
      const auto rep = norm_upper(target, cands, version, cfg.endpoint_tol, opt);
      json entries = json::array();
      for (const auto& e : rep.entries)
        entries.push_back({{"candidate", candidate_files[e.index]},
                           {"accepted", e.accepted},
                           {"endpoint_distance", e.endpoint_distance},
                           {"length", e.accepted ? json(e.length) : json(nullptr)}});
      emit(cfg, "norm_upper.json",
           {{"upper_bound", rep.bound}, {"best", candidate_files[rep.best]}, {"version", version_name}, {"candidates", entries}});
    };
  });

  double nu = 0.25, a1 = 0.3, conj_amp = 0.0, conj_width = 0.1;
  auto* displace_cmd = app.add_subcommand("displace", "strip displacement scenario");
  displace_cmd->add_option("--nu", nu, "strip width");
  displace_cmd->add_option("--a1", a1, "rotation amplitude along theta_1");
  displace_cmd->add_option("--conj-amp", conj_amp, "amplitude of a bump Hamiltonian conjugator (0: none)");
  displace_cmd->add_option("--conj-width", conj_width, "width of the bump conjugator");
  displace_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Grid g = cfg.grid();
      std::optional<Generator> conj;
      if (conj_amp != 0.0)
        conj = bump_conjugator(g, cfg.time_steps, std::vector<double>(g.dim(), 0.5), conj_width, conj_amp);
      const auto sc = build_strip_scenario(nu, a1, g, conj ? cfg.time_steps : 4, conj, cfg.numeric());
      for (const auto& w : sc.warnings) std::cerr << "warning: " << w << '\n';
      emit(cfg, "displace.json",
           {{"nu", nu},
            {"a1", a1},
            {"conjugated", conj.has_value()},
            {"displaced", sc.displacement.displaced},
            {"margin", sc.displacement.margin},
            {"guard", sc.displacement.guard},
            {"upper_bound", sc.energy_bound ? json(*sc.energy_bound) : json(nullptr)},
            {"warnings", sc.warnings}});
    };
  });

  std::string region_spec = "strip:0.25";
  double amp_step = 0.0, amp_max = 0.5;
  int axis = 0;
  auto* energy_cmd = app.add_subcommand("energy", "displacement-energy upper bound over rotations");
  energy_cmd->add_option("--region", region_spec, "strip:NU | ball:C1,..,C2n,R | whole");
  energy_cmd->add_option("--amp-step", amp_step, "rotation amplitude step (default half a grid cell)");
  energy_cmd->add_option("--amp-max", amp_max, "largest rotation amplitude");
  energy_cmd->add_option("--axis", axis, "rotation axis (0-based)");
  energy_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Grid g = cfg.grid();
      const Region region = parse_region(region_spec, g);
      const auto cands = rotation_candidates(g, axis, amplitude_ladder(amp_step > 0.0 ? amp_step : 0.5 / g.N, amp_max));
      const auto cert = displacement_energy_upper(region, cands, LengthVersion::Linf, cfg.numeric());
      std::ofstream csv(out_path(cfg, "energy_candidates.csv"));
      io::CsvWriter w(csv);
      w.row("candidate", "displaces", "margin", "length");
      for (const auto& e : cert.entries) w.row(e.label, e.displaces ? 1 : 0, e.margin, e.length);
      emit(cfg, "energy.json",
           {{"region", cert.region}, {"best_candidate", cert.best}, {"upper_bound", cert.bound}, {"margin", cert.margin}});
    };
  });

  auto* weinstein_cmd = app.add_subcommand("weinstein", "deform a zero-flux path into a Hamiltonian path");
  weinstein_cmd->add_option("generator", gen_a)->required();
  weinstein_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      WeinsteinOptions w;
      w.flux_tol = cfg.flux_tol;
      const auto res = weinstein_deform(g, w, cfg.numeric());
      io::save_isotopy(out_path(cfg, "hamiltonian_isotopy.json"), res.ham_isotopy);
      const auto h = homotopy_eval(res.family, integrate(g, cfg.numeric()));
      emit(cfg, "weinstein.json",
           {{"flux_norm", res.report.flux_norm},
            {"boundary_defect", res.report.boundary_defect},
            {"harmonic_residual", res.report.harmonic_residual},
            {"endpoint_defect", res.report.endpoint_defect},
            {"homotopy", {{"start", h.start_defect}, {"end", h.end_defect}, {"base", h.base_defect}}}});
      const double tol = cfg.endpoint_tol;
      if (res.report.boundary_defect > tol || res.report.harmonic_residual > tol || res.report.endpoint_defect > tol)
        status = kCheckFailed;
    };
  });

  std::size_t s_steps = 8;
  auto* ldefor_cmd = app.add_subcommand("ldefor2", "two-parameter deformation of a harmonic generator");
  ldefor_cmd->add_option("generator", gen_a, "generator with zero Hamiltonian part")->required();
  ldefor_cmd->add_option("--s-steps", s_steps, "steps in the deformation parameter");
  ldefor_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Generator g = io::load_generator(gen_a, cfg.grid(), cfg.time_steps);
      std::vector<VectorFieldGrid> Z;
      for (std::size_t k = 0; k < g.samples(); ++k) Z.push_back(detail::velocity_field(g, k));
      LDeforOptions lo;
      lo.s_steps = s_steps;
      const auto b = ldefor2_family(Z, g.dt, lo, cfg.numeric());
      double g1 = 0.0, ymax = 0.0, zmax = 0.0, vmax = 0.0;
      for (const auto& m : b.g_family.maps.back()) g1 = std::max(g1, c0_to_identity(m));
      for (const auto& y : b.y) ymax = std::max(ymax, field_norm(y));
      for (const auto& row : b.zst)
        for (const auto& z : row) zmax = std::max(zmax, field_norm(z));
      for (const auto& row : b.v)
        for (const auto& v : row) vmax = std::max(vmax, field_norm(v));
      emit(cfg, "ldefor2.json",
           {{"sup_Y", ymax}, {"sup_Zst", zmax}, {"sup_V", vmax}, {"G_s1_identity_defect", g1}, {"s_steps", s_steps}});
      if (g1 > cfg.endpoint_tol) status = kCheckFailed;
    };
  });

  std::vector<std::string> seq_files;
  std::string rot_v = "0.3,0.4";
  int seq_count = 6;
  auto* cauchy_cmd = app.add_subcommand("cauchy", "consecutive gaps of a generator sequence");
  cauchy_cmd->add_option("generators", seq_files, "generator files (default: reparametrized rotations)");
  cauchy_cmd->add_option("--v", rot_v, "rotation vector for the default sequence");
  cauchy_cmd->add_option("--count", seq_count, "length of the default sequence");
  cauchy_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      GeneratorSeq seq;
      if (seq_files.empty()) {
        for (int j = 1; j <= seq_count; ++j)
          seq.push_back(build_rotation(RotationSpec{parse_doubles(rot_v), j}, cfg.grid(), cfg.time_steps));
      } else {
        for (const auto& f : seq_files) seq.push_back(io::load_generator(f, cfg.grid(), cfg.time_steps));
      }
      const auto rep = cauchy_report_gen(seq, cfg.numeric());
      std::ofstream csv(out_path(cfg, "cauchy.csv"));
      io::CsvWriter w(csv), wo(std::cout);
      w.row("index", "d2", "linf_gap", "pushforward_gap");
      wo.row("index", "d2", "linf_gap", "pushforward_gap");
      for (const auto& r : rep.rows) {
        w.row(r.index, r.d2, r.linf_gap, r.pushforward_gap);
        wo.row(r.index, r.d2, r.linf_gap, r.pushforward_gap);
      }
      std::cout << "d2_nonincreasing," << rep.d2_nonincreasing << '\n';
    };
  });

  std::string suite;
  int trials = 3;
  auto* verify_cmd = app.add_subcommand("verify", "run a self-check suite");
  verify_cmd->add_option("suite", suite, "group | hodge | duality | weinstein | ldefor2 | examples | ugr")->required();
  verify_cmd->add_option("--trials", trials, "random trials per check");
  verify_cmd->callback([&] {
    action = [&] {
      verify::Options o;
      o.cfg = resolve(G);
      o.trials = trials;
      const auto checks = verify::run(suite, o);
      std::ofstream csv(out_path(o.cfg, "verify_" + suite + ".csv"));
      io::CsvWriter w(csv), wo(std::cout);
      w.row("suite", "check", "value", "threshold", "pass");
      wo.row("suite", "check", "value", "threshold", "pass");
      for (const auto& c : checks) {
        w.row(c.suite, c.name, c.value, c.threshold, c.pass ? "PASS" : "FAIL");
        wo.row(c.suite, c.name, c.value, c.threshold, c.pass ? "PASS" : "FAIL");
        if (!c.pass) status = kCheckFailed;
      }
    };
  });

  std::string example_name;
  auto* example_cmd = app.add_subcommand("example", "built-in worked examples");
  example_cmd->add_option("name", example_name, "rotation-lengths | conjugated | strip-table")
      ->required()
      ->check(CLI::IsMember({"rotation-lengths", "conjugated", "strip-table"}));
  example_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(G);
      const Grid g = cfg.grid();
      io::CsvWriter wo(std::cout);
      std::ofstream csv(out_path(cfg, "example_" + example_name + ".csv"));
      io::CsvWriter w(csv);
      if (example_name == "rotation-lengths") {
        w.row("j", "l_inf", "expected");
        wo.row("j", "l_inf", "expected");
        const std::vector<double> v = cfg.n == 1 ? std::vector<double>{0.3, 0.4} : std::vector<double>(g.dim(), 0.1);
        const double vnorm = flat(v).norm();
        for (int j : {1, 2, 3, 5, 10}) {
          const double l = length_linf(build_rotation(RotationSpec{v, j}, g, cfg.time_steps));
          const double e = j / (1.0 + j) * vnorm;
          w.row(j, l, e);
          wo.row(j, l, e);
          if (std::abs(l - e) > 1e-9) status = kCheckFailed;
        }
      } else if (example_name == "conjugated") {
        RotationSpec spec{std::vector<double>(g.dim(), 0.0), std::nullopt};
        spec.v[0] = 0.3;
        const auto rows = conjugator_sequence_trend(spec, g, cfg.time_steps, {0.2, 0.15, 0.1, 0.075}, 0.02,
                                                    cfg.numeric());
        w.row("width", "amplitude", "osc_mu", "gap", "l_inf");
        wo.row("width", "amplitude", "osc_mu", "gap", "l_inf");
        for (const auto& r : rows) {
          w.row(r.width, r.amplitude, r.osc_mu, r.gap, r.length);
          wo.row(r.width, r.amplitude, r.osc_mu, r.gap, r.length);
        }
      } else {
        w.row("nu", "a1", "displaced", "margin");
        wo.row("nu", "a1", "displaced", "margin");
        for (double nn : {0.1, 0.2, 0.25})
          for (int k = 1; k <= 10; ++k) {
            const double aa = 0.05 * k;
            const auto sc = build_strip_scenario(nn, aa, g, 4, std::nullopt, cfg.numeric());
            w.row(nn, aa, sc.displacement.displaced ? 1 : 0, sc.displacement.margin);
            wo.row(nn, aa, sc.displacement.displaced ? 1 : 0, sc.displacement.margin);
          }
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Parse:
      case ErrorCode::Io:
      case ErrorCode::InvalidArgument:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::DiscretizationMismatch:
        return kInputError;
      default:
        return kCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return status;
}
