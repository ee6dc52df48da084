// geoplace: command-line front end for the placement simulator.
//
// Exit codes: 0 ok, 1 validation findings, 2 usage, 3 I/O, 4 parse/schema,
// 5 any other runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "geoplace/geoplace.hpp"

namespace {

using namespace geoplace;
using nlohmann::json;

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kIo = 3, kParse = 4, kRuntime = 5 };

bool g_json_errors = false;

int report(const char* kind, const std::string& message, int code, json extra = json::object()) {
  if (g_json_errors) {
    json e = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    for (auto& [k, v] : extra.items()) e[k] = v;
    std::cerr << json{{"error", e}}.dump() << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return code;
}

json findings_json(const std::vector<Finding>& f) {
  json a = json::array();
  for (const auto& x : f) a.push_back({{"entity", x.entity}, {"message", x.message}});
  return a;
}

void print_metrics(const char* label, const MetricsReport& m) {
  std::printf("%s\n", label);
  std::printf("  rid                       %s\n", format_number(m.rid).c_str());
  std::printf("  total_cost_usd            %s\n", format_number(m.total_cost_usd).c_str());
  std::printf("  total_carbon_g            %s\n", format_number(m.total_carbon_g).c_str());
  if (m.cost_reduction_vs_baseline)
    std::printf("  cost_reduction            %s\n", format_number(*m.cost_reduction_vs_baseline).c_str());
  if (m.carbon_reduction_vs_baseline)
    std::printf("  carbon_reduction          %s\n", format_number(*m.carbon_reduction_vs_baseline).c_str());
  std::printf("  sla_violation_rate        %s\n", format_number(m.sla_violation_rate).c_str());
  std::printf("  migration_cost_share      %s\n", format_number(m.migration_cost_share).c_str());
  std::printf("  mean_service_to_compute   %s ms\n", format_number(m.mean_service_to_compute_ms).c_str());
  for (const auto& [cls, s] : m.tier_shares)
    std::printf("  tiers %s                   local %s  regional %s  energy %s\n", cls.c_str(),
                format_number(s.local).c_str(), format_number(s.regional).c_str(),
                format_number(s.energy_oriented).c_str());
}

SweepSpec spec_or_default(const std::string& path, std::size_t threads) {
  SweepSpec s = path.empty() ? SweepSpec{} : load_sweep_spec(path);
  s.threads = threads;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency-constrained geographic placement simulator for inference workloads"};
  app.require_subcommand(1);
  app.add_flag("--json-errors", g_json_errors, "Print errors as a JSON object on stderr");
  app.set_version_flag("--version", kToolVersion);

  std::string scenario_path, spec_path, out_dir, policy_name = "joint";
  std::optional<double> multiplier;
  std::size_t threads = 1;
  int hours = 24;
  std::size_t max_tasks = 8;
  double capacity_scale = 1.0;

  auto add_scenario = [&](CLI::App* c) {
    c->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario and list findings");
  add_scenario(validate);

  auto* simulate = app.add_subcommand("simulate", "One horizon run plus metrics");
  add_scenario(simulate);
  simulate->add_option("--policy", policy_name,
                       "local_only | nearest_region | price_only | carbon_only | joint");
  simulate->add_option("--latency-multiplier", multiplier, "Scales every class latency budget");
  simulate->add_option("--out", out_dir, "Directory for CSV tables and manifest");

  auto* sweep = app.add_subcommand("sweep", "Latency sweep (energy-latency frontier)");
  add_scenario(sweep);
  sweep->add_option("--spec", spec_path, "Sweep spec JSON");
  sweep->add_option("--out", out_dir, "Directory for CSV tables and manifest");
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* classes = app.add_subcommand("classes", "Per-class tier allocation at one multiplier");
  add_scenario(classes);
  classes->add_option("--latency-multiplier", multiplier, "Latency multiplier")->required();
  classes->add_option("--out", out_dir, "Directory for CSV tables and manifest");
  classes->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* ablate = app.add_subcommand("ablate", "Friction / capacity / workload-mix sensitivity");
  add_scenario(ablate);
  ablate->add_option("--spec", spec_path, "Sweep spec JSON");
  ablate->add_option("--out", out_dir, "Directory for CSV tables and manifest");
  ablate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle-check", "Greedy versus exhaustive optimum on sub-instances");
  add_scenario(oracle);
  oracle->add_option("--hours", hours, "Hours to sample")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--max-tasks", max_tasks, "Tasks per sub-instance (<= 10)")
      ->required()
      ->check(CLI::Range(1, 10));
  oracle->add_option("--capacity-scale", capacity_scale, "Multiplier on sub-instance capacities")
      ->check(CLI::NonNegativeNumber);

  std::string export_path;
  int export_hours = 168;
  auto* exporter = app.add_subcommand("export-default", "Write the bundled default scenario");
  exporter->add_option("--out", export_path, "Output JSON path")->required();
  exporter->add_option("--hours", export_hours, "Horizon in hours")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (g_json_errors) return report("usage", e.what(), kUsage);
    app.exit(e);
    return kUsage;
  }

  try {
    if (exporter->parsed()) {
      save_scenario(default_scenario(export_hours), export_path);
      return kOk;
    }

    if (validate->parsed()) {
      std::ifstream in(scenario_path, std::ios::binary);
      if (!in) throw IoError("cannot read scenario file '" + scenario_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      const auto findings = validate_scenario(parse_scenario(buf.str()));
      for (const auto& f : findings) std::printf("%s: %s\n", f.entity.c_str(), f.message.c_str());
      if (findings.empty()) std::printf("ok\n");
      return findings.empty() ? kOk : kInvalid;
    }

    auto cfg = load_scenario(scenario_path);

    if (simulate->parsed()) {
      const auto kind = parse_policy(policy_name);
      if (!kind) return report("usage", "unknown policy '" + policy_name + "'", kUsage);
      if (multiplier) cfg.latency_multiplier = *multiplier;
      if (auto f = validate_scenario(cfg); !f.empty()) throw ValidationFailure(f);
      const auto baseline = run_horizon(cfg, PolicyKind::local_only);
      const auto trace = *kind == PolicyKind::local_only ? baseline : run_horizon(cfg, *kind);
      const auto m = compute_metrics(trace, cfg, &baseline);
      print_metrics((std::string(to_string(*kind)) + " @ multiplier " +
                     format_multiplier(cfg.latency_multiplier)).c_str(),
                    m);
      if (!out_dir.empty()) {
        SweepSpec spec;
        spec.policies = {*kind};
        FrontierTable ft;
        ft.rows.push_back({cfg.latency_multiplier, *kind, m});
        std::vector<ClassTierRow> tiers;
        for (const auto& [cls, s] : m.tier_shares) tiers.push_back({*kind, cls, s});
        auto manifest = base_manifest(cfg, "simulate");
        manifest["settings"] = {{"policy", to_string(*kind)},
                                {"latency_multiplier", cfg.latency_multiplier}};
        emit_results({frontier_table(cfg.id, ft, spec),
                      tiers_table(cfg.id, cfg.latency_multiplier, tiers),
                      flows_table(cfg.id, *kind, cfg.latency_multiplier, m.top_flows)},
                     out_dir, manifest);
      }
      return kOk;
    }

    if (sweep->parsed()) {
      const auto spec = spec_or_default(spec_path, threads);
      const auto ft = latency_sweep(cfg, spec);
      const auto table = frontier_table(cfg.id, ft, spec);
      if (out_dir.empty()) {
        std::cout << to_csv(table);
      } else {
        auto manifest = base_manifest(cfg, "sweep");
        manifest["settings"] = {{"multipliers", spec.multipliers},
                                {"frontier_friction", to_string(spec.frontier_friction)},
                                {"frontier_capacity", to_string(spec.frontier_capacity)}};
        emit_results({table}, out_dir, manifest);
      }
      return kOk;
    }

    if (classes->parsed()) {
      if (!(*multiplier > 0.0)) return report("usage", "latency multiplier must be positive", kUsage);
      const auto rows = class_analysis(cfg, *multiplier, {std::begin(kAllPolicies), std::end(kAllPolicies)},
                                       threads);
      const auto table = tiers_table(cfg.id, *multiplier, rows);
      if (out_dir.empty()) {
        std::cout << to_csv(table);
      } else {
        auto manifest = base_manifest(cfg, "classes");
        manifest["settings"] = {{"latency_multiplier", *multiplier}};
        emit_results({table}, out_dir, manifest);
      }
      return kOk;
    }

    if (ablate->parsed()) {
      const auto spec = spec_or_default(spec_path, threads);
      const auto table = ablation_table(cfg.id, sensitivity(cfg, spec));
      if (out_dir.empty()) {
        std::cout << to_csv(table);
      } else {
        auto manifest = base_manifest(cfg, "ablate");
        manifest["settings"] = {{"ablation_multiplier", spec.ablation_multiplier},
                                {"high_friction_factor", spec.high_friction_factor},
                                {"loose_capacity_factor", spec.loose_capacity_factor},
                                {"tight_capacity_factor", spec.tight_capacity_factor}};
        emit_results({table}, out_dir, manifest);
      }
      return kOk;
    }

    if (oracle->parsed()) {
      std::vector<BinaryInstance> insts;
      for (auto& s : extract_sub_instances(cfg, hours, max_tasks, capacity_scale))
        insts.push_back(std::move(s.instance));
      const auto r = compare_greedy_to_oracle(insts);
      const double agreement =
          r.both_feasible ? static_cast<double>(r.agreements) / static_cast<double>(r.both_feasible) : 0.0;
      std::cout << json{{"instances", r.instances},
                        {"both_feasible", r.both_feasible},
                        {"agreements", r.agreements},
                        {"agreement_rate", agreement},
                        {"greedy_infeasible", r.greedy_infeasible},
                        {"oracle_infeasible", r.oracle_infeasible},
                        {"max_relative_gap", r.max_relative_gap},
                        {"mean_relative_gap", r.mean_relative_gap}}
                       .dump(2)
                << "\n";
      return kOk;
    }
  } catch (const ValidationFailure& e) {
    return report("validation", e.what(), kInvalid, {{"findings", findings_json(e.findings)}});
  } catch (const ParseError& e) {
    return report("parse", e.what(), kParse, {{"line", e.line}, {"column", e.column}});
  } catch (const SchemaError& e) {
    return report("schema", e.what(), kParse);
  } catch (const IoError& e) {
    return report("io", e.what(), kIo);
  } catch (const std::exception& e) {
    return report("runtime", e.what(), kRuntime);
  }
  return kOk;
}
