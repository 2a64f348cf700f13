#pragma once

#include "sympack/acceptance.hpp"
#include "sympack/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>

namespace sympack::cli {

using nlohmann::json;

struct RunConfig {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  int samples = 100;
  std::string format = "json";  // json, csv, md, text
  std::string output_path;
  bool no_timestamp = false;
};

inline std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json make_report(const RunConfig& cfg, const std::string& command,
                        json inputs, json results, bool pass) {
  json rep{{"command", command},
           {"inputs", std::move(inputs)},
           {"results", std::move(results)},
           {"pass", pass}};
  if (!cfg.no_timestamp) rep["timestamp"] = iso_timestamp();
  return rep;
}

inline void emit(const RunConfig& cfg, const json& report, std::ostream& out) {
  const std::string payload = report.dump(2) + "\n";
  out << payload;
  if (!cfg.output_path.empty()) {
    std::ofstream f(cfg.output_path);
    if (!f) throw std::invalid_argument("cannot write to " + cfg.output_path);
    f << payload;
  }
}

namespace detail {

inline std::vector<Rat> parse_rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(rat_from_string(item));
  }
  if (out.empty()) throw std::invalid_argument("empty rational list");
  return out;
}

inline std::string table_csv(const std::vector<packing::PackingNumber>& rows) {
  std::ostringstream out;
  out << "k,p,lambda_star_sq,binding\n";
  for (const auto& r : rows) {
    out << r.k << "," << rat_to_string(r.value) << ","
        << rat_to_string(r.lambda_star_sq) << ",";
    if (r.binding) out << "\"" << lattice::to_string(*r.binding) << "\"";
    else out << "volume";
    out << "\n";
  }
  return out.str();
}

inline std::string table_md(const std::vector<packing::PackingNumber>& rows) {
  std::ostringstream out;
  out << "| k | p_k | lambda*^2 | binding |\n|---|-----|-----------|---------|\n";
  for (const auto& r : rows) {
    out << "| " << r.k << " | " << rat_to_string(r.value) << " | "
        << rat_to_string(r.lambda_star_sq) << " | "
        << (r.binding ? lattice::to_string(*r.binding) : std::string("volume"))
        << " |\n";
  }
  return out.str();
}

inline bool is_exact_json_matrix(const json& j) {
  for (const auto& row : j.at("rows"))
    for (const auto& cell : row)
      if (!cell.is_string() && !cell.is_number_integer()) return false;
  return true;
}

}  // namespace detail

/// Runs the command line given as argv-style tokens (excluding the program
/// name). Returns the process exit code: 0 success / feasible / pass,
/// 1 verification failure or infeasible, 2 usage or input errors.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"real symplectic packing and local blow-up model toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global options may follow the subcommand

  RunConfig cfg;
  if (const char* env_seed = std::getenv("SYMPACK_SEED"))
    cfg.seed = std::strtoull(env_seed, nullptr, 10);
  app.add_option("--seed", cfg.seed, "random seed (env SYMPACK_SEED overrides default)");
  app.add_option("--tol", cfg.tol, "numeric tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "sample count for verification")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format: json, csv, md, text");
  app.add_option("--output,-o", cfg.output_path, "also write the report to this file");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "omit timestamps (stable output)");
  bool root_paper_check = false;
  app.add_flag("--paper-check", root_paper_check, "run the acceptance scoreboard");

  // ---- acs ----
  auto* acs_cmd = app.add_subcommand(
      "acs", "compatible almost complex structure from a metric");
  std::string acs_metric, acs_omega, acs_phi;
  acs_cmd->add_option("--metric", acs_metric, "metric matrix JSON file")
      ->required();
  acs_cmd->add_option("--omega", acs_omega, "symplectic matrix JSON file")
      ->required();
  acs_cmd->add_option("--phi", acs_phi,
                      "optional involution JSON file (equivariant variant)");

  // ---- involution ----
  auto* inv_cmd = app.add_subcommand(
      "involution", "normalize an anti-symplectic involution fixing R^n");
  std::string inv_phi;
  bool inv_float = false;
  inv_cmd->add_option("--phi", inv_phi, "involution matrix JSON file")->required();
  inv_cmd->add_flag("--float", inv_float, "use floating arithmetic even for exact input");

  // ---- verify-forms ----
  auto* vf_cmd = app.add_subcommand("verify-forms",
                                    "verify local model form properties");
  std::string vf_form = "tau_tilde";
  double vf_lambda = 1.0, vf_eps = 0.25, vf_delta = 0.0, vf_kappa = 1.0;
  double vf_h = local::kDefaultFdStep;
  int vf_n = 2;
  std::string vf_mode = "exact";
  vf_cmd->add_option("--form", vf_form,
                     "tau_tilde | tau | rho | calculation | radial-kahler");
  vf_cmd->add_option("--lambda", vf_lambda, "lambda parameter");
  vf_cmd->add_option("--epsilon", vf_eps, "epsilon parameter");
  vf_cmd->add_option("--delta", vf_delta, "delta parameter (0 = default)");
  vf_cmd->add_option("--kappa", vf_kappa, "kappa parameter (rho only)");
  vf_cmd->add_option("--n", vf_n, "complex dimension");
  vf_cmd->add_option("--mode", vf_mode, "jacobian mode: exact | fd");
  vf_cmd->add_option("--fd-step", vf_h, "finite difference step");

  // ---- classes ----
  auto* classes_cmd =
      app.add_subcommand("classes", "enumerate exceptional homology classes");
  int classes_k = 1;
  bool classes_orbit = false;
  classes_cmd->add_option("--k", classes_k, "number of blow-up points (1..8)")
      ->required();
  classes_cmd->add_flag("--orbit", classes_orbit,
                        "cross-check against the reflection orbit closure");

  // ---- genpos ----
  auto* genpos_cmd = app.add_subcommand("genpos", "general position tools");
  genpos_cmd->require_subcommand(1);
  auto* gp_check = genpos_cmd->add_subcommand("check", "test a configuration");
  std::string gp_file;
  int gp_audit = 3;
  gp_check->add_option("--file", gp_file, "configuration JSON file")->required();
  gp_check->add_option("--audit-depth", gp_audit,
                       "quadratic-transform audit depth (0 disables)");
  auto* gp_perturb =
      genpos_cmd->add_subcommand("perturb", "move points into general position");
  std::string gp_pfile, gp_radius = "1/100";
  int gp_paudit = 1;
  gp_perturb->add_option("--file", gp_pfile, "configuration JSON file")->required();
  gp_perturb->add_option("--radius", gp_radius, "per-point budget, exact rational");
  gp_perturb->add_option("--audit-depth", gp_paudit,
                         "audit depth for the final check");

  // ---- pack ----
  auto* pack_cmd = app.add_subcommand("pack", "packing numbers and feasibility");
  std::string pack_mode;
  int pack_k = 0;
  std::string pack_radii, pack_weights;
  pack_cmd->add_option("mode", pack_mode, "optional: 'table'");
  pack_cmd->add_option("--k", pack_k, "equal-radius packing number for k balls");
  pack_cmd->add_option("--radii-sq", pack_radii,
                       "feasibility for squared radii, e.g. 2/5,2/5,2/5");
  pack_cmd->add_option("--weights", pack_weights,
                       "scaling bound along a weight profile");

  // ---- paper-check ----
  auto* check_cmd =
      app.add_subcommand("paper-check", "run the acceptance scoreboard");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help and friends
      return app.exit(e, out, err);
    }
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*acs_cmd) {
      const auto g_mat = io::matrix_from_json(io::load_json_file(acs_metric));
      const auto o_mat = io::matrix_from_json(io::load_json_file(acs_omega));
      const auto g = linalg::make_metric(g_mat, cfg.tol);
      const auto omega = linalg::make_symplectic_form(o_mat, cfg.tol);
      linalg::LinearMap j{0, {}, linalg::MapRole::Acs};
      json inputs{{"metric", acs_metric}, {"omega", acs_omega}};
      if (!acs_phi.empty()) {
        const auto phi_mat = io::matrix_from_json(io::load_json_file(acs_phi));
        const auto phi = linalg::make_involution(phi_mat, cfg.tol);
        j = linalg::equivariant_acs(g, omega, phi, cfg.tol);
        inputs["phi"] = acs_phi;
        const double equiv = linalg::max_abs(phi.mat * j.mat + j.mat * phi.mat);
        json results{{"J", io::matrix_to_json(j.mat)},
                     {"square_defect",
                      linalg::max_abs(j.mat * j.mat +
                                      linalg::Matrix::Identity(j.dim, j.dim))},
                     {"compatible", linalg::check_compatible(omega, j, cfg.tol)},
                     {"equivariance_defect", equiv}};
        emit(cfg, make_report(cfg, "acs", inputs, results, true), out);
      } else {
        j = linalg::compatible_acs_from_metric(g, omega, cfg.tol);
        json results{{"J", io::matrix_to_json(j.mat)},
                     {"square_defect",
                      linalg::max_abs(j.mat * j.mat +
                                      linalg::Matrix::Identity(j.dim, j.dim))},
                     {"compatible", linalg::check_compatible(omega, j, cfg.tol)}};
        emit(cfg, make_report(cfg, "acs", inputs, results, true), out);
      }
      return 0;
    }

    if (*inv_cmd) {
      const json raw = io::load_json_file(inv_phi);
      json inputs{{"phi", inv_phi}};
      if (!inv_float && detail::is_exact_json_matrix(raw)) {
        const RatMat phi = io::ratmat_from_json(raw);
        const RatMat psi = linalg::normalize_involution_exact(phi);
        json results{{"Psi", io::ratmat_to_json(psi)}, {"exact", true}};
        emit(cfg, make_report(cfg, "involution", inputs, results, true), out);
      } else {
        const auto phi_mat = io::matrix_from_json(raw);
        const auto phi = linalg::make_involution(phi_mat, cfg.tol);
        const auto omega0 = linalg::make_symplectic_form(
            linalg::omega0_matrix(phi.dim));
        const auto psi = linalg::normalize_involution(phi, omega0, cfg.tol);
        json results{{"Psi", io::matrix_to_json(psi.mat)}, {"exact", false}};
        emit(cfg, make_report(cfg, "involution", inputs, results, true), out);
      }
      return 0;
    }

    if (*vf_cmd) {
      const local::JacobianMode mode = vf_mode == "fd"
                                           ? local::JacobianMode::FiniteDifference
                                           : local::JacobianMode::Exact;
      std::vector<local::CheckReport> reports;
      json inputs{{"form", vf_form}, {"lambda", vf_lambda},
                  {"epsilon", vf_eps}, {"delta", vf_delta},
                  {"n", vf_n},         {"samples", cfg.samples},
                  {"seed", cfg.seed},  {"tol", cfg.tol}};
      if (vf_form == "calculation") {
        reports.push_back(local::verify_calculation_identity(
            vf_lambda, vf_n, cfg.samples, cfg.seed, cfg.tol, mode, vf_h));
      } else if (vf_form == "radial-kahler") {
        const auto spec = vf_delta > 0.0
                              ? local::RadialMapSpec::blow_down(vf_lambda,
                                                                vf_delta, vf_eps)
                              : local::RadialMapSpec::norm_graph(vf_lambda);
        reports = local::verify_radial_kahler(spec, vf_n, cfg.samples, cfg.seed,
                                              cfg.tol);
      } else if (vf_form == "tau_tilde") {
        const auto spec = local::RadialMapSpec::blow_up(
            vf_lambda, vf_eps, vf_delta > 0.0 ? vf_delta : 0.0);
        const auto form = local::tau_tilde_form(spec, mode, vf_h);
        const auto avoid = spec.branch_radii();
        const double outer = 1.0 + vf_eps;
        reports.push_back(local::verify_form_property(
            form, vf_n, outer * 1.01, 4.0 * outer,
            {local::FormCheck::EqualsScaledOmega0, vf_lambda * vf_lambda},
            cfg.samples, cfg.seed, cfg.tol));
        local::FormCheckSpec rho_spec{local::FormCheck::EqualsRho};
        rho_spec.kappa = 1.0;
        rho_spec.lambda = vf_lambda;
        reports.push_back(local::verify_form_property(
            form, vf_n, spec.delta / 8.0, spec.delta * 0.99, rho_spec,
            cfg.samples, cfg.seed + 1, cfg.tol));
        for (auto check : {local::FormCheck::Tame, local::FormCheck::Compatible,
                           local::FormCheck::AntiInvariant,
                           local::FormCheck::LagrangianRealLocus}) {
          reports.push_back(local::verify_form_property(
              form, vf_n, spec.delta / 8.0, 4.0 * outer, {check}, cfg.samples,
              cfg.seed + 2, std::max(cfg.tol, 1e-8), avoid));
        }
      } else if (vf_form == "tau") {
        const double delta = vf_delta > 0.0 ? vf_delta : 1.0;
        const auto spec =
            local::RadialMapSpec::blow_down(vf_lambda, delta, vf_eps);
        const auto form = local::tau_form(spec, mode, vf_h);
        const auto avoid = spec.branch_radii();
        reports.push_back(local::verify_form_property(
            form, vf_n, 0.05, 0.99,
            {local::FormCheck::EqualsScaledOmega0, vf_lambda * vf_lambda},
            cfg.samples, cfg.seed, cfg.tol));
        local::FormCheckSpec rho_spec{local::FormCheck::EqualsRho};
        rho_spec.kappa = delta;
        rho_spec.lambda = vf_lambda;
        reports.push_back(local::verify_form_property(
            form, vf_n, (1.0 + vf_eps) * 1.01, 4.0 * (1.0 + vf_eps), rho_spec,
            cfg.samples, cfg.seed + 1, cfg.tol));
        for (auto check : {local::FormCheck::Tame, local::FormCheck::Compatible,
                           local::FormCheck::AntiInvariant,
                           local::FormCheck::LagrangianRealLocus}) {
          reports.push_back(local::verify_form_property(
              form, vf_n, 0.05, 4.0 * (1.0 + vf_eps), {check}, cfg.samples,
              cfg.seed + 2, std::max(cfg.tol, 1e-8), avoid));
        }
      } else if (vf_form == "rho") {
        const auto form = local::rho_form(vf_kappa, vf_lambda);
        for (auto check : {local::FormCheck::Tame, local::FormCheck::Compatible,
                           local::FormCheck::AntiInvariant,
                           local::FormCheck::LagrangianRealLocus}) {
          reports.push_back(local::verify_form_property(
              form, vf_n, 0.05, 10.0, {check}, cfg.samples, cfg.seed,
              std::max(cfg.tol, 1e-9)));
        }
      } else {
        err << "unknown form: " << vf_form << "\n";
        return 2;
      }
      bool pass = true;
      json items = json::array();
      for (const auto& rep : reports) {
        pass = pass && rep.pass;
        items.push_back(io::check_report_to_json(rep));
      }
      emit(cfg, make_report(cfg, "verify-forms", inputs, items, pass), out);
      return pass ? 0 : 1;
    }

    if (*classes_cmd) {
      const auto classes = lattice::enumerate_exceptional_classes(classes_k);
      json arr = json::array();
      for (const auto& c : classes) arr.push_back(io::class_to_json(c));
      json results{{"count", classes.size()}, {"classes", std::move(arr)}};
      bool pass = true;
      if (classes_orbit && classes_k >= 3) {
        const auto orbit = lattice::cremona_orbit_of_basis(classes_k);
        const std::set<lattice::HomologyClass> brute(classes.begin(),
                                                     classes.end());
        results["orbit_matches"] = (orbit == brute);
        pass = orbit == brute;
      }
      emit(cfg,
           make_report(cfg, "classes", json{{"k", classes_k}}, results, pass),
           out);
      return pass ? 0 : 1;
    }

    if (*gp_check) {
      const auto config =
          io::configuration_from_json(io::load_json_file(gp_file));
      lattice::GenPosOptions opts;
      opts.audit_depth = gp_audit;
      const auto rep = lattice::general_position_test(config, opts);
      json results{{"pass", rep.pass},
                   {"reason", rep.reason},
                   {"witness", rep.witness},
                   {"audit_nodes", rep.audit_nodes},
                   {"checks_passed", rep.checks_passed}};
      emit(cfg,
           make_report(cfg, "genpos check", json{{"file", gp_file}}, results,
                       rep.pass),
           out);
      return rep.pass ? 0 : 1;
    }

    if (*gp_perturb) {
      const auto config =
          io::configuration_from_json(io::load_json_file(gp_pfile));
      lattice::GenPosOptions opts;
      opts.audit_depth = gp_paudit;
      const auto result = lattice::perturb_to_general_position(
          config, rat_from_string(gp_radius), cfg.seed, opts);
      json results{{"ok", result.ok},
                   {"rounds", result.rounds},
                   {"max_moved", rat_to_string(result.max_moved)},
                   {"configuration", io::configuration_to_json(result.cfg)}};
      emit(cfg,
           make_report(cfg, "genpos perturb",
                       json{{"file", gp_pfile}, {"radius", gp_radius},
                            {"seed", cfg.seed}},
                       results, result.ok),
           out);
      return result.ok ? 0 : 1;
    }

    if (*pack_cmd) {
      const bool k_given = pack_cmd->count("--k") > 0;
      if (pack_mode == "table" ||
          (pack_mode.empty() && !k_given && pack_radii.empty() &&
           pack_weights.empty())) {
        const auto rows = packing::packing_table();
        if (cfg.format == "csv") {
          out << detail::table_csv(rows);
          if (!cfg.output_path.empty()) {
            std::ofstream f(cfg.output_path);
            f << detail::table_csv(rows);
          }
        } else if (cfg.format == "md" || cfg.format == "text") {
          out << detail::table_md(rows);
        } else {
          json arr = json::array();
          for (const auto& r : rows) arr.push_back(io::packing_number_to_json(r));
          emit(cfg, make_report(cfg, "pack table", json::object(), arr, true),
               out);
        }
        return 0;
      }
      if (!pack_radii.empty()) {
        const auto lam = detail::parse_rat_list(pack_radii);
        const auto problem = packing::PackingProblem::of(lam);
        const auto result = packing::check_feasible(problem);
        json inputs{{"radii_sq", pack_radii}};
        emit(cfg,
             make_report(cfg, "pack", inputs,
                         io::packing_result_to_json(result), result.feasible),
             out);
        return result.feasible ? 0 : 1;
      }
      if (!pack_weights.empty()) {
        const auto w = detail::parse_rat_list(pack_weights);
        const auto sup = packing::sup_radius_profile(
            static_cast<int>(w.size()), w);
        json results{{"t_sq", rat_to_string(sup.t_sq)},
                     {"volume_binds", sup.volume_binds},
                     {"weight_norm_sq", rat_to_string(sup.weight_norm_sq)}};
        if (sup.t) results["t"] = rat_to_string(*sup.t);
        if (sup.binding) results["binding"] = io::class_to_json(*sup.binding);
        emit(cfg,
             make_report(cfg, "pack", json{{"weights", pack_weights}}, results,
                         true),
             out);
        return 0;
      }
      if (k_given) {
        const auto pn = packing::packing_number(pack_k);
        emit(cfg,
             make_report(cfg, "pack", json{{"k", pack_k}},
                         io::packing_number_to_json(pn), true),
             out);
        return 0;
      }
      err << "pack: nothing to do (try 'pack table', --k, --radii-sq, --weights)\n";
      return 2;
    }

    if (*check_cmd || root_paper_check) {
      const auto results = acceptance::run_all();
      const bool ok = acceptance::print_scoreboard(out, results);
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  err << app.help();
  return 2;
}

}  // namespace sympack::cli
