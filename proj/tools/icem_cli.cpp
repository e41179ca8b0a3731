// icem: command-line front end for the entanglement measure library.
//
// Exit codes: 0 success, 2 parse error, 3 semantic error, 4 resource cap.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icem/char_poly.hpp"
#include "icem/convex_roof.hpp"
#include "icem/figures.hpp"
#include "icem/locc.hpp"
#include "icem/measures.hpp"
#include "icem/state.hpp"
#include "icem/state_io.hpp"
#include "icem/swap_sim.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitResource = 4;

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct GlobalOptions {
  std::string scheme = "binomial";
  double rank_eps = icem::kRankEps;
  std::optional<int> force_rank;
  std::size_t max_amplitudes = icem::kDefaultSwapAmplitudeCap;

  icem::MeasureOptions measure() const {
    return {icem::parse_scheme(scheme), force_rank};
  }
  icem::NumericConfig numeric() const { return {rank_eps, max_amplitudes}; }
};

std::vector<int> parse_cut(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw icem::DomainError("invalid cut entry '" + tok + "'");
    }
  }
  if (out.empty()) throw icem::DomainError("cut is empty");
  return out;
}

icem::PureState require_pure(const icem::StateFile& f, const std::string& cmd) {
  if (const auto* psi = std::get_if<icem::PureState>(&f)) return *psi;
  throw icem::DomainError(cmd + " needs a pure state file");
}

icem::Bipartition make_cut(const std::string& spec, int n) {
  return icem::Bipartition(parse_cut(spec), n);
}

void print_components(const std::vector<double>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::cout << "C_" << i << ": " << fmt9(c[i]) << '\n';
  }
}

// measure ---------------------------------------------------------------------

int cmd_measure(const GlobalOptions& g, const std::string& file,
                const std::string& cut_spec) {
  const auto psi = require_pure(icem::read_state_file(file, g.numeric()), "measure");
  const auto cut = make_cut(cut_spec, psi.num_subsystems());
  const auto spec = icem::schmidt_decompose(psi, cut, g.rank_eps);
  const auto rep = icem::icem_pure(spec, g.measure());
  const auto bm = icem::bipartite_matrix(psi, cut);
  const int d = static_cast<int>(std::min(bm.rows(), bm.cols()));

  std::cout << "value: " << fmt9(rep.value) << '\n'
            << "scheme: " << icem::to_string(rep.scheme) << '\n'
            << "rank_used: " << rep.rank_used << '\n';
  print_components(rep.components);
  std::cout << "schmidt:";
  for (double v : spec.values()) std::cout << ' ' << fmt9(v);
  std::cout << '\n'
            << "concurrence: " << fmt9(icem::concurrence_pure(spec, d)) << '\n'
            << "concentratable: " << fmt9(icem::concentratable_pure(psi, cut)) << '\n'
            << "verdict: "
            << (std::abs(rep.value) < icem::kMeasureEps ? "separable" : "entangled")
            << '\n';
  return 0;
}

// multipartite / classify -----------------------------------------------------

int cmd_multipartite(const GlobalOptions& g, const std::string& file,
                     bool verbose) {
  const auto psi =
      require_pure(icem::read_state_file(file, g.numeric()), "multipartite");
  const auto opts = g.measure();
  const double arith = icem::icem_mean_arithmetic(psi, opts, g.rank_eps);
  const double geo = icem::icem_mean_geometric(psi, opts, g.rank_eps);
  const auto verdict = icem::classify_pure(psi, opts, g.rank_eps);
  if (verbose) {
    const auto cuts = icem::all_bipartitions(psi.num_subsystems());
    const auto values = icem::icem_over_bipartitions(psi, opts, g.rank_eps);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      std::cout << "cut {";
      for (std::size_t k = 0; k < cuts[i].subset().size(); ++k) {
        std::cout << (k ? "," : "") << cuts[i].subset()[k];
      }
      std::cout << "}: " << fmt9(values[i]) << '\n';
    }
  }
  std::cout << "arithmetic: " << fmt9(arith) << '\n'
            << "geometric: " << fmt9(geo) << '\n'
            << "verdict: " << icem::to_string(verdict) << '\n';
  return 0;
}

// locc ------------------------------------------------------------------------

icem::SchmidtSpectrum spectrum_of(const icem::StateFile& f,
                                  const std::string& cut_spec, double eps) {
  if (const auto* s = std::get_if<icem::SchmidtSpectrum>(&f)) return *s;
  if (const auto* psi = std::get_if<icem::PureState>(&f)) {
    return icem::schmidt_decompose(*psi, make_cut(cut_spec, psi->num_subsystems()),
                                   eps);
  }
  throw icem::DomainError("locc needs spectrum or pure state files");
}

int cmd_locc(const GlobalOptions& g, const std::string& fx, const std::string& fy,
             const std::string& cut_spec) {
  const auto x = spectrum_of(icem::read_state_file(fx, g.numeric()), cut_spec, g.rank_eps);
  const auto y = spectrum_of(icem::read_state_file(fy, g.numeric()), cut_spec, g.rank_eps);
  const auto v = icem::locc_verdict(x, y, icem::parse_scheme(g.scheme));
  const char* relation = v.forward && v.backward ? "equivalent"
                         : v.forward             ? "forward-only"
                         : v.backward            ? "backward-only"
                                                 : "incomparable";
  std::cout << "forward: " << (v.forward ? "true" : "false") << '\n'
            << "backward: " << (v.backward ? "true" : "false") << '\n'
            << "relation: " << relation << '\n'
            << "components_forward_ordered: "
            << (v.components_forward_ordered ? "true" : "false") << '\n'
            << "components_backward_ordered: "
            << (v.components_backward_ordered ? "true" : "false") << '\n'
            << "i,C_i(x),C_i(y),holds\n";
  for (const auto& c : v.components) {
    std::cout << c.index << ',' << fmt9(c.lhs) << ',' << fmt9(c.rhs) << ','
              << (c.holds ? 1 : 0) << '\n';
  }
  return 0;
}

// roof ------------------------------------------------------------------------

int cmd_roof(const GlobalOptions& g, const std::string& file,
             const std::string& cut_spec, icem::RoofConfig cfg) {
  const auto f = icem::read_state_file(file, g.numeric());
  std::optional<icem::DensityMatrix> rho;
  if (const auto* psi = std::get_if<icem::PureState>(&f)) {
    rho = icem::DensityMatrix::from_pure(*psi);
  } else if (const auto* dm = std::get_if<icem::DensityMatrix>(&f)) {
    rho = *dm;
  } else {
    throw icem::DomainError("roof needs a pure or density state file");
  }
  const auto cut = make_cut(cut_spec, static_cast<int>(rho->dims().size()));
  cfg.measure = g.measure();
  cfg.rank_eps = g.rank_eps;
  const auto res = icem::roof_minimize(*rho, cut, cfg);
  const double err = (icem::reconstruct(res.best_ensemble) - rho->matrix()).norm();
  std::cout << "value_upper_bound: " << fmt9(res.value) << '\n'
            << "scheme: " << g.scheme << '\n'
            << "restarts_used: " << res.restarts_used << '\n'
            << "converged: " << (res.converged ? "true" : "false") << '\n'
            << "ensemble_size: " << res.ensemble_size << '\n'
            << "members: " << res.best_ensemble.states.size() << '\n'
            << "reconstruction_error: " << fmt9(err) << '\n';
  return 0;
}

// swaptest --------------------------------------------------------------------

int cmd_swaptest(const GlobalOptions& g, const std::string& file,
                 const std::string& cut_spec, std::optional<int> r,
                 std::optional<std::size_t> shots, std::uint64_t seed) {
  const auto psi = require_pure(icem::read_state_file(file, g.numeric()), "swaptest");
  const auto cut = make_cut(cut_spec, psi.num_subsystems());
  icem::SwapCheckOptions opts;
  opts.force_r = r ? r : g.force_rank;
  opts.shots = shots;
  opts.seed = seed;
  opts.rank_eps = g.rank_eps;
  opts.sim.max_amplitudes = g.max_amplitudes;
  const auto rep = icem::check_swap_test(psi, cut, opts);
  std::cout << "r: " << rep.r << '\n'
            << "simulated_1_minus_p0: " << fmt9(rep.simulated) << '\n'
            << "closed_form_1_minus_p0: " << fmt9(rep.closed_form) << '\n'
            << "icem_binomial: " << fmt9(rep.icem_binomial) << '\n'
            << "icem_printed: " << fmt9(rep.icem_permutation) << '\n'
            << "diff_sim_closed: " << fmt9(rep.diff_sim_closed) << '\n'
            << "diff_sim_binomial: " << fmt9(rep.diff_sim_binomial) << '\n'
            << "diff_sim_printed: " << fmt9(rep.diff_sim_permutation) << '\n'
            << "diff_closed_binomial: " << fmt9(rep.diff_closed_binomial) << '\n'
            << "predicted_gap: " << fmt9(rep.predicted_gap) << '\n';
  if (rep.shots) {
    std::cout << "shots: " << rep.shots->shots << '\n'
              << "sampled_1_minus_p0: " << fmt9(1.0 - rep.shots->p_zero) << '\n'
              << "sampled_std_error: " << fmt9(rep.shots->std_error) << '\n';
  }
  return 0;
}

// figures ---------------------------------------------------------------------

template <class Write>
void emit(const std::string& out_path, Write&& write) {
  if (out_path.empty()) {
    write(std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw icem::DomainError("cannot write " + out_path);
    write(out);
  }
}

int cmd_figure1(std::size_t samples, const std::string& out_path) {
  const auto pts = icem::figure1_points(samples);
  emit(out_path, [&](std::ostream& os) { icem::write_figure1_csv(os, pts); });
  return 0;
}

int cmd_figure2(const GlobalOptions& g, std::size_t samples,
                const std::string& out_path) {
  const auto res = icem::figure2_sweep(samples, icem::parse_scheme(g.scheme));
  emit(out_path, [&](std::ostream& os) { icem::write_figure2_csv(os, res); });
  // with CSV on stdout the point list goes to stderr
  std::ostream& info = out_path.empty() ? std::cerr : std::cout;
  info << "# equality points (t, beta1, beta2, beta3): "
       << res.equality_points.size() << '\n';
  for (const auto& p : res.equality_points) {
    info << "# " << fmt9(p.t) << ',' << fmt9(p.beta[0]) << ','
         << fmt9(p.beta[1]) << ',' << fmt9(p.beta[2]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Informationally complete entanglement measures"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--scheme", g.scheme, "Coefficient scheme")
      ->check(CLI::IsMember({"binomial", "printed"}))
      ->capture_default_str();
  app.add_option("--rank-eps", g.rank_eps, "Zero threshold for Schmidt rank")
      ->capture_default_str();
  app.add_option("--force-rank", g.force_rank,
                 "Pin r (Schmidt rank minus one) instead of the numerical rank");
  app.add_option("--max-amplitudes", g.max_amplitudes,
                 "Dense buffer cap for states and SWAP-test registers")
      ->capture_default_str();

  std::string file;
  std::string file_y;
  std::string cut = "0";
  std::string out_path;

  auto* measure = app.add_subcommand("measure", "Bipartite ICEM of a pure state");
  measure->add_option("file", file, "State file")->required();
  measure->add_option("--cut", cut, "Comma-separated subsystems on side A")
      ->capture_default_str();

  auto* multi = app.add_subcommand("multipartite",
                                   "Arithmetic and geometric ICEM over all cuts");
  multi->add_option("file", file, "State file")->required();
  bool verbose = false;
  multi->add_flag("--per-cut", verbose, "Print the value of every cut");

  auto* classify = app.add_subcommand("classify", "Separability verdict");
  classify->add_option("file", file, "State file")->required();

  auto* locc = app.add_subcommand("locc", "LOCC comparison of two states");
  locc->add_option("x", file, "Spectrum or pure state file")->required();
  locc->add_option("y", file_y, "Spectrum or pure state file")->required();
  locc->add_option("--cut", cut, "Cut used for pure state files")
      ->capture_default_str();

  icem::RoofConfig roof_cfg;
  std::optional<int> roof_m;
  auto* roof = app.add_subcommand("roof", "Convex-roof ICEM of a mixed state");
  roof->add_option("file", file, "State file")->required();
  roof->add_option("--cut", cut, "Comma-separated subsystems on side A")
      ->capture_default_str();
  roof->add_option("--restarts", roof_cfg.restarts)->capture_default_str();
  roof->add_option("--seed", roof_cfg.seed)->capture_default_str();
  roof->add_option("--m", roof_m, "Ensemble size (default min(rank^2, 16))");
  roof->add_option("--tolerance", roof_cfg.tolerance)->capture_default_str();
  roof->add_option("--patience", roof_cfg.patience)->capture_default_str();
  roof->add_option("--max-iterations", roof_cfg.max_iterations)
      ->capture_default_str();

  std::optional<int> swap_r;
  std::optional<std::size_t> shots;
  std::uint64_t swap_seed = 0;
  auto* swap = app.add_subcommand("swaptest", "Simulate the chained SWAP test");
  swap->add_option("file", file, "State file")->required();
  swap->add_option("--cut", cut, "Comma-separated subsystems on side A")
      ->capture_default_str();
  swap->add_option("--r", swap_r, "Ancilla count (default Schmidt rank - 1)");
  swap->add_option("--shots", shots, "Also sample this many shots");
  swap->add_option("--seed", swap_seed)->capture_default_str();

  std::size_t samples = 1000;
  auto* fig1 = app.add_subcommand("figure1", "CSV of the equal-purity ellipse");
  fig1->add_option("--samples", samples)->capture_default_str();
  fig1->add_option("--out", out_path, "Write CSV here instead of stdout");
  auto* fig2 = app.add_subcommand("figure2", "CSV of ICEM along the ellipse");
  fig2->add_option("--samples", samples)->capture_default_str();
  fig2->add_option("--out", out_path, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*measure) return cmd_measure(g, file, cut);
    if (*multi) return cmd_multipartite(g, file, verbose);
    if (*classify) {
      const auto psi =
          require_pure(icem::read_state_file(file, g.numeric()), "classify");
      std::cout << icem::to_string(icem::classify_pure(psi, g.measure(), g.rank_eps))
                << '\n';
      return 0;
    }
    if (*locc) return cmd_locc(g, file, file_y, cut);
    if (*roof) {
      roof_cfg.ensemble_size = roof_m;
      return cmd_roof(g, file, cut, roof_cfg);
    }
    if (*swap) return cmd_swaptest(g, file, cut, swap_r, shots, swap_seed);
    if (*fig1) return cmd_figure1(samples, out_path);
    if (*fig2) return cmd_figure2(g, samples, out_path);
  } catch (const icem::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const icem::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const icem::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSemantic;
  }
  return 0;
}
