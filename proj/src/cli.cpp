#include "mqsp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "mqsp/counterexample.hpp"
#include "mqsp/serialize.hpp"

namespace mqsp::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Empty path -> stdout.
void emit(const std::string& path, const std::string& text,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError(path, "cannot open output file");
  f << text;
  if (!text.empty() && text.back() != '\n') f << "\n";
}

PolyPair load_pair(const std::string& path) {
  return pair_from_json(parse_json_text(read_file(path), path), path);
}

UnitPhase phase_from_flags(const std::string& re, const std::string& im,
                           double angle, bool has_angle) {
  if (has_angle) return UnitPhase::angle(angle);
  return UnitPhase::exact(parse_rational(re), parse_rational(im));
}

}  // namespace

void sample_grid(const PolyPair& pair, int resolution, std::ostream& out) {
  if (resolution < 2)
    throw InvalidRange("sample: resolution must be at least 2");
  out << "theta_a,theta_b,abs_P2,abs_Q2,sum\n";
  char line[192];
  for (int ra = 0; ra < resolution; ++ra)
    for (int rb = 0; rb < resolution; ++rb) {
      const double ta = 2.0 * std::numbers::pi * ra / resolution;
      const double tb = 2.0 * std::numbers::pi * rb / resolution;
      const double p2 = std::norm(pair.p.evaluate(ta, tb));
      const double q2 = std::norm(pair.q.evaluate(ta, tb));
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", ta,
                    tb, p2, q2, p2 + q2);
      out << line;
    }
}

int run(const std::vector<std::string>& args) {
  return run(args, std::cout, std::cerr);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"M-QSP construction, condition checking, and phase recovery"};
  app.require_subcommand(1);

  // build
  auto* cmd_build = app.add_subcommand(
      "build", "Construct the (P, Q) pair of a phase protocol");
  std::string build_prot, build_out, build_mode = "auto";
  cmd_build->add_option("-p,--protocol", build_prot, "protocol JSON file")
      ->required();
  cmd_build->add_option("-o,--output", build_out, "output file (default stdout)");
  cmd_build->add_option("--mode", build_mode, "exact|float|auto")
      ->check(CLI::IsMember({"exact", "float", "auto"}));

  // check
  auto* cmd_check = app.add_subcommand(
      "check", "Check the necessary conditions at the coefficient level");
  std::string check_pair, check_variant = "revised", check_out;
  double check_tol = 1e-10;
  cmd_check->add_option("pair", check_pair, "pair JSON file")->required();
  cmd_check->add_option("--variant", check_variant, "original|revised")
      ->check(CLI::IsMember({"original", "revised"}));
  cmd_check->add_option("--tolerance", check_tol,
                        "absolute tolerance for float-backend checks");
  cmd_check->add_option("-o,--output", check_out, "output file");

  // decompose
  auto* cmd_dec = app.add_subcommand(
      "decompose", "Recover a phase protocol by backtracking peel-down");
  std::string dec_pair, dec_out;
  double dec_tol = 1e-9;
  cmd_dec->add_option("pair", dec_pair, "pair JSON file")->required();
  cmd_dec->add_option("--tolerance", dec_tol, "float rebuild tolerance");
  cmd_dec->add_option("-o,--output", dec_out, "output file");

  // demo-contradiction
  auto* cmd_demo = app.add_subcommand(
      "demo-contradiction",
      "Replay the forced-zero chain implied by the original conditions");
  int demo_n = 2, demo_m = 1;
  cmd_demo->add_option("-n", demo_n, "total degree")->required();
  cmd_demo->add_option("-m", demo_m, "a-degree")->required();
  std::string demo_out;
  cmd_demo->add_option("-o,--output", demo_out, "output file");

  // find-counterexample
  auto* cmd_find = app.add_subcommand(
      "find-counterexample",
      "Search for a unitarity-satisfying, proportionality-violating pair");
  SearchSpec spec;
  std::string find_out;
  cmd_find->add_option("-n", spec.n, "total degree (default 4)");
  cmd_find->add_option("-m", spec.m, "a-degree (default 2)");
  cmd_find->add_option("--seed", spec.seed, "RNG seed")->required();
  cmd_find->add_option("--budget", spec.budget, "max restarts");
  cmd_find->add_option("--residual-tol", spec.residual_tol,
                       "unitarity residual acceptance");
  cmd_find->add_option("--margin", spec.violation_margin,
                       "required proportionality-violation margin");
  cmd_find->add_option("-o,--output", find_out, "output file");

  // lift
  auto* cmd_lift = app.add_subcommand(
      "lift", "Extend a pair by the a-axis signal and a phase gate");
  std::string lift_pair, lift_out, lift_re = "3/5", lift_im = "4/5";
  double lift_angle = 0.0;
  cmd_lift->add_option("pair", lift_pair, "base pair JSON file")->required();
  cmd_lift->add_option("--phase-re", lift_re, "exact phase real part");
  cmd_lift->add_option("--phase-im", lift_im, "exact phase imaginary part");
  auto* lift_angle_opt =
      cmd_lift->add_option("--phase-angle", lift_angle, "float phase angle");
  cmd_lift->add_option("-o,--output", lift_out, "output file");

  // insufficiency
  auto* cmd_insuf = app.add_subcommand(
      "insufficiency",
      "Search, lift, re-check, and decompose end to end");
  SearchSpec ispec;
  std::string insuf_out, insuf_re = "3/5", insuf_im = "4/5";
  double insuf_angle = 0.0;
  cmd_insuf->add_option("-n", ispec.n, "total degree of the base pair");
  cmd_insuf->add_option("-m", ispec.m, "a-degree of the base pair");
  cmd_insuf->add_option("--seed", ispec.seed, "RNG seed")->required();
  cmd_insuf->add_option("--budget", ispec.budget, "max restarts");
  cmd_insuf->add_option("--phase-re", insuf_re, "lift phase real part");
  cmd_insuf->add_option("--phase-im", insuf_im, "lift phase imaginary part");
  auto* insuf_angle_opt = cmd_insuf->add_option("--phase-angle", insuf_angle,
                                                "float lift phase angle");
  cmd_insuf->add_option("-o,--output", insuf_out, "output file");

  // sample
  auto* cmd_sample = app.add_subcommand(
      "sample", "Emit |P|^2, |Q|^2 on a torus grid as CSV");
  std::string sample_pair, sample_out;
  int sample_res = 64;
  cmd_sample->add_option("pair", sample_pair, "pair JSON file")->required();
  cmd_sample->add_option("--resolution", sample_res, "grid points per axis")
      ->check(CLI::PositiveNumber);
  cmd_sample->add_option("-o,--output", sample_out, "output file");

  std::vector<const char*> argv;
  argv.push_back("mqsp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_build->parsed()) {
      const Protocol prot = protocol_from_json(
          parse_json_text(read_file(build_prot), build_prot), build_prot);
      std::optional<Backend> force;
      if (build_mode == "float") force = Backend::Float;
      if (build_mode == "exact" && prot.backend() == Backend::Float) {
        err << "error: protocol contains float phases, exact build "
               "impossible\n";
        return 2;
      }
      emit(build_out, to_json(build(prot, force)).dump(2), out);
      return 0;
    }

    if (cmd_check->parsed()) {
      const PolyPair pair = load_pair(check_pair);
      CheckOptions opts;
      opts.tol = check_tol;
      const ConditionReport report = check_conditions(
          pair, check_variant == "original" ? Variant::Original
                                            : Variant::Revised,
          opts);
      emit(check_out, to_json(report).dump(2), out);
      return report.overall() ? 0 : 1;
    }

    if (cmd_dec->parsed()) {
      const PolyPair pair = load_pair(dec_pair);
      DecomposeOptions opts;
      opts.coeff_tol = dec_tol;
      DecomposeResult result;
      try {
        result = decompose(pair, opts);
      } catch (const PrecondViolated& e) {
        err << "error: " << e.what() << "\n";
        return 1;
      }
      if (result.decomposable()) {
        emit(dec_out, to_json(*result.protocol).dump(2), out);
        return 0;
      }
      emit(dec_out, to_json(result).dump(2), out);
      return 1;
    }

    if (cmd_demo->parsed()) {
      emit(demo_out, to_json(forced_zero_trace(demo_n, demo_m)).dump(2), out);
      return 0;
    }

    if (cmd_find->parsed()) {
      const SearchOutcome found = search_nonrealizable(spec);
      if (!found.pair) {
        err << "no acceptable pair within " << spec.budget << " restarts\n";
        return 1;
      }
      emit(find_out, to_json(*found.pair).dump(2), out);
      err << "accepted after " << found.restarts_used
          << " restart(s); residual " << found.residual << ", margins "
          << found.margin_a << " / " << found.margin_b << "\n";
      return 0;
    }

    if (cmd_lift->parsed()) {
      const PolyPair base = load_pair(lift_pair);
      const UnitPhase phase = phase_from_flags(
          lift_re, lift_im, lift_angle, lift_angle_opt->count() > 0);
      emit(lift_out, to_json(lift(base, phase)).dump(2), out);
      return 0;
    }

    if (cmd_insuf->parsed()) {
      const UnitPhase phase = phase_from_flags(
          insuf_re, insuf_im, insuf_angle, insuf_angle_opt->count() > 0);
      InsufficiencyReport report;
      try {
        report = insufficiency_pipeline(ispec, phase);
      } catch (const PrecondViolated& e) {
        err << "error: " << e.what() << "\n";
        return 1;
      }
      emit(insuf_out, to_json(report).dump(2), out);
      return report.is_counterexample ? 0 : 1;
    }

    if (cmd_sample->parsed()) {
      const PolyPair pair = load_pair(sample_pair);
      std::ostringstream csv;
      sample_grid(pair, sample_res, csv);
      emit(sample_out, csv.str(), out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "input error at " << e.where << ": " << e.what() << "\n";
    return 2;
  } catch (const InvalidRange& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BackendMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace mqsp::cli
