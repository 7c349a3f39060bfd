// Command-line front end: rate-region sweeps, sum capacity, Gaussian closed
// forms, symbolic FME, the block-Markov / Shannon-strategy simulators, channel
// validation, and the verify-examples battery.
//
// Exit codes: 0 ok, 1 validation or resource error, 2 usage error,
// 3 verify-examples failure.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "macregions/acceptance.hpp"
#include "macregions/io.hpp"

namespace {

using namespace macregions;

struct ChannelArgs {
  std::string channel_path;
  std::string builtin_name;
  double p = 0.1;
};

void add_channel_flags(CLI::App* cmd, ChannelArgs& args) {
  auto* path = cmd->add_option("--channel", args.channel_path, "channel spec JSON file");
  auto* builtin = cmd->add_option("--builtin", args.builtin_name,
                                  "builtin channel {switch,mod2-selector,additive-binary-helper,fading-binary}");
  cmd->add_option("--p", args.p, "builtin channel parameter p");
  path->excludes(builtin);
}

ChannelSpec resolve_channel(const ChannelArgs& args, RunManifest& manifest) {
  if (!args.channel_path.empty()) {
    manifest_add_input(manifest, args.channel_path);
    return load_channel(args.channel_path);
  }
  if (!args.builtin_name.empty()) {
    BuiltinParams params;
    params.p = args.p;
    return builtin_channel(args.builtin_name, params);
  }
  throw validation_error("no channel given: pass --channel or --builtin");
}

BoundKind parse_bound(const std::string& name, bool& with_u) {
  with_u = false;
  if (name == "inner-sc") return BoundKind::InnerSc;
  if (name == "outer-sc") return BoundKind::OuterSc;
  if (name == "outer-sc-withU") {
    with_u = true;
    return BoundKind::OuterSc;
  }
  if (name == "prop1") return BoundKind::JointInput;
  if (name == "asym-inner") return BoundKind::AsymInner;
  if (name == "helper") return BoundKind::ProductInput;
  if (name == "causal") return BoundKind::Causal;
  if (name == "nostate") return BoundKind::NoState;
  throw validation_error("unknown bound: " + name);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

int run(int argc, char** argv) {
  CLI::App app{"finite-alphabet rate regions for the cooperative MAC with delayed CSI"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // ---- region ----
  auto* region_cmd = app.add_subcommand("region", "compute a rate-region sweep (CSV + JSON sidecar)");
  ChannelArgs region_ch;
  add_channel_flags(region_cmd, region_ch);
  std::string bound = "inner-sc", mode = "pentagon-union", out_path, sidecar_path;
  SearchConfig cfg;
  bool relax = false;
  region_cmd->add_option("--bound", bound,
                         "bound {inner-sc,outer-sc,outer-sc-withU,prop1,asym-inner,helper,causal,"
                         "nostate,indep-states}");
  region_cmd->add_option("--mode", mode, "region mode {pentagon-union,decoupled}");
  region_cmd->add_flag("--relax-constraint", relax, "evaluate the no-binning inner variant");
  region_cmd->add_option("--lambda-points", cfg.lambda_points, "support sweep grid size");
  region_cmd->add_option("--restarts", cfg.restarts, "random restarts per lambda");
  region_cmd->add_option("--sweeps", cfg.sweeps, "coordinate-ascent sweeps");
  region_cmd->add_option("--card-v", cfg.card_v, "auxiliary |V| (0 = bound default)");
  region_cmd->add_option("--card-u", cfg.card_u, "auxiliary |U| (0 = bound default)");
  region_cmd->add_option("--seed", cfg.seed, "search seed");
  double q1_cap = -1.0, q2_cap = -1.0;
  region_cmd->add_option("--q1", q1_cap, "input-weight cap on Pr{X1=1}");
  region_cmd->add_option("--q2", q2_cap, "input-weight cap on Pr{X2=1}");
  region_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  region_cmd->add_option("--sidecar", sidecar_path, "JSON sidecar path (default: <out>.json)");

  // ---- sum-capacity ----
  auto* sum_cmd = app.add_subcommand("sum-capacity", "max over joint inputs of I(X1,X2;Y)");
  ChannelArgs sum_ch;
  add_channel_flags(sum_cmd, sum_ch);
  std::string sum_out;
  sum_cmd->add_option("--out", sum_out, "JSON output path (stdout if omitted)");

  // ---- gaussian ----
  auto* g_cmd = app.add_subcommand("gaussian", "closed-form Gaussian capacities");
  std::string g_model = "example4";
  GaussianParams gp;
  std::string g_out;
  g_cmd->add_option("--model", g_model, "model {remark5,example4,remark7,example5}");
  g_cmd->add_option("--P1", gp.P1, "power budget P1");
  g_cmd->add_option("--P2", gp.P2, "power budget P2");
  g_cmd->add_option("--Q", gp.Q, "state variance Q");
  g_cmd->add_option("--N", gp.N, "noise variance N");
  g_cmd->add_option("--out", g_out, "JSON output path (stdout if omitted)");

  // ---- fme ----
  auto* f_cmd = app.add_subcommand("fme", "symbolic Fourier-Motzkin projection");
  std::string f_system = "appendixE", f_out;
  bool f_stages = false;
  std::vector<std::string> f_eliminate;
  f_cmd->add_option("--system", f_system, "builtin {appendixE,appendixJ} or a system JSON file");
  f_cmd->add_flag("--stages", f_stages, "include intermediate systems in the output");
  f_cmd->add_option("--eliminate", f_eliminate, "variables to project out of a file-given system");
  f_cmd->add_option("--out", f_out, "JSON output path (stdout if omitted)");

  // ---- simulate ----
  auto* s_cmd = app.add_subcommand("simulate", "Monte Carlo coding-scheme simulation");
  ChannelArgs sim_ch;
  add_channel_flags(s_cmd, sim_ch);
  std::string scheme = "block-markov", law_path, law_preset = "v-eq-s", sim_out, n_list;
  SimConfig sim_cfg;
  double rc = 0.0, r1 = 0.1, sim_q1 = 0.5, t_rate = -1.0, that_rate = -1.0;
  s_cmd->add_option("--scheme", scheme, "scheme {block-markov,shannon-strategy}");
  s_cmd->add_option("--rc", rc, "common rate");
  s_cmd->add_option("--r1", r1, "individual rate");
  s_cmd->add_option("--n", sim_cfg.n, "block length");
  s_cmd->add_option("--blocks", sim_cfg.blocks, "number of blocks B");
  s_cmd->add_option("--trials", sim_cfg.trials, "Monte Carlo trials");
  s_cmd->add_option("--epsilon", sim_cfg.epsilon, "typicality slack");
  s_cmd->add_option("--seed", sim_cfg.seed, "simulation seed");
  s_cmd->add_option("--t-rate", t_rate, "cell rate T override");
  s_cmd->add_option("--that-rate", that_rate, "compression rate T^ override");
  s_cmd->add_option("--law", law_path, "FactoredLaw JSON file");
  s_cmd->add_option("--law-preset", law_preset,
                    "{v-eq-s,uniform} for block-markov, {identity} for shannon-strategy");
  s_cmd->add_option("--q1", sim_q1, "Pr{X1=1} for the v-eq-s preset");
  s_cmd->add_option("--n-list", n_list, "comma-separated n values for a CSV sweep");
  s_cmd->add_option("--out", sim_out, "output path (stdout if omitted)");

  // ---- channel ----
  auto* c_cmd = app.add_subcommand("channel", "channel-spec utilities");
  c_cmd->require_subcommand(1);
  auto* cv_cmd = c_cmd->add_subcommand("validate", "validate a channel spec file");
  std::string cv_path;
  cv_cmd->add_option("--channel", cv_path, "channel spec JSON file")->required();
  auto* ce_cmd = c_cmd->add_subcommand("emit", "write a builtin channel as JSON");
  ChannelArgs ce_ch;
  ce_cmd->add_option("--builtin", ce_ch.builtin_name, "builtin channel name")->required();
  ce_cmd->add_option("--p", ce_ch.p, "builtin channel parameter p");
  std::string ce_out;
  ce_cmd->add_option("--out", ce_out, "output path (stdout if omitted)");

  // ---- verify-examples ----
  auto* v_cmd = app.add_subcommand("verify-examples", "run the acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  if (region_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "region";
    manifest.seed = cfg.seed;
    if (q1_cap >= 0.0) cfg.q1_cap = q1_cap;
    if (q2_cap >= 0.0) cfg.q2_cap = q2_cap;
    cfg.relax_constraint = relax;
    RegionMode rmode = mode == "decoupled" ? RegionMode::Decoupled : RegionMode::PentagonUnion;
    if (mode != "decoupled" && mode != "pentagon-union")
      throw validation_error("unknown mode: " + mode);
    json meta;
    RateRegion region;
    if (bound == "indep-states") {
      if (region_ch.channel_path.empty())
        throw validation_error("indep-states requires a two-state --channel file");
      manifest_add_input(manifest, region_ch.channel_path);
      TwoStateChannel ch2 = two_state_channel_from_json(json::parse(read_file(region_ch.channel_path)));
      region = compute_indep_states_region(ch2, cfg);
      meta["note"] = "rc column carries R2";
    } else {
      bool with_u = false;
      BoundKind kind = parse_bound(bound, with_u);
      ChannelSpec ch = resolve_channel(region_ch, manifest);
      if (with_u) {
        // two-auxiliary sweep: keep the U factor in the law family
        SearchConfig cfg_u = cfg;
        if (cfg_u.card_u == 0) cfg_u.card_u = 2;
        std::vector<double> lambdas = lambda_grid(cfg_u.lambda_points);
        std::vector<PentagonWitness> witnesses;
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
          double lam = lambdas[li];
          auto [law, corner] = ascend_law(ch, kind, cfg_u, 0x2000 + li,
                                          [lam](const CornerEvaluation& c) {
                                            return pentagon_support(pentagon_of(c), lam).value;
                                          },
                                          {}, true);
          witnesses.push_back({corner, law, law_digest(law)});
        }
        region = region_from_witnesses(std::move(witnesses), lambdas, rmode);
      } else {
        region = compute_region(ch, kind, cfg, rmode);
      }
      meta["bound"] = bound;
      if (kind == BoundKind::Causal) {
        meta["card_v"] = cfg.card_v > 0 ? cfg.card_v : detail_search::default_card_v(ch, kind, cfg);
        meta["card_u"] = cfg.card_u > 0 ? cfg.card_u : detail_search::default_card_u(ch, kind, cfg);
        meta["cardinality_rule"] = "Shannon-strategy sufficiency heuristic |V|=|X2|^|S|, |U|=|X1|^|S|";
      }
    }
    manifest.config = {{"bound", bound}, {"mode", mode}, {"lambda_points", cfg.lambda_points},
                       {"restarts", cfg.restarts}, {"sweeps", cfg.sweeps}, {"card_v", cfg.card_v},
                       {"card_u", cfg.card_u}, {"relax_constraint", relax}};
    if (cfg.q1_cap) manifest.config["q1_cap"] = *cfg.q1_cap;
    if (cfg.q2_cap) manifest.config["q2_cap"] = *cfg.q2_cap;
    manifest.wall_clock_s = elapsed();
    emit(out_path, region_csv(region, manifest));
    json sidecar = region_sidecar(region, manifest, meta);
    if (!out_path.empty()) {
      write_file(sidecar_path.empty() ? out_path + ".json" : sidecar_path, sidecar.dump(2) + "\n");
    } else {
      std::cout << sidecar.dump(2) << "\n";
    }
    return 0;
  }

  if (sum_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "sum-capacity";
    ChannelSpec ch = resolve_channel(sum_ch, manifest);
    double value = sum_capacity(ch);
    manifest.wall_clock_s = elapsed();
    json j = {{"manifest", manifest.to_json()}, {"sum_capacity_bits", value}};
    emit(sum_out, j.dump(2) + "\n");
    return 0;
  }

  if (g_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "gaussian";
    GaussianResult res = gaussian_capacity(g_model, gp);
    manifest.config = {{"model", g_model}, {"P1", gp.P1}, {"P2", gp.P2}, {"Q", gp.Q}, {"N", gp.N}};
    manifest.wall_clock_s = elapsed();
    json j = {{"manifest", manifest.to_json()},
              {"model", res.model},
              {"value_bits", res.value},
              {"rho_star", res.rho_star}};
    emit(g_out, j.dump(2) + "\n");
    return 0;
  }

  if (f_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "fme";
    json j;
    if (f_system == "appendixE" || f_system == "appendixJ") {
      fme::BuiltinResult res = fme::builtin_system(f_system);
      j["system"] = f_system;
      j["initial"] = system_to_json(res.initial);
      if (f_stages) {
        auto stages = json::array();
        for (const auto& st : res.stages) stages.push_back(system_to_json(st));
        j["stages"] = stages;
      }
      j["final"] = system_to_json(res.final);
      j["final_text"] = fme::render_system(res.final);
    } else {
      manifest_add_input(manifest, f_system);
      fme::SymbolicSystem sys = system_from_json(json::parse(read_file(f_system)));
      j["initial"] = system_to_json(fme::canonicalize(sys));
      for (const auto& var : f_eliminate) sys = fme::eliminate(sys, var);
      sys = fme::simplify(sys);
      j["final"] = system_to_json(sys);
      j["final_text"] = fme::render_system(sys);
    }
    manifest.config = {{"system", f_system}};
    manifest.wall_clock_s = elapsed();
    j["manifest"] = manifest.to_json();
    emit(f_out, j.dump(2) + "\n");
    return 0;
  }

  if (s_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "simulate";
    manifest.seed = sim_cfg.seed;
    ChannelSpec ch = resolve_channel(sim_ch, manifest);
    if (t_rate >= 0.0) sim_cfg.t_rate = t_rate;
    if (that_rate >= 0.0) sim_cfg.that_rate = that_rate;
    FactoredLaw law;
    if (!law_path.empty()) {
      manifest_add_input(manifest, law_path);
      law = law_from_json(json::parse(read_file(law_path)));
    } else if (scheme == "block-markov") {
      if (law_preset == "v-eq-s") {
        law = lawspace::blank_law(ch, BoundKind::InnerSc, ch.ns, 1);
        for (int x2 = 0; x2 < ch.nx2; ++x2) {
          law.p_x2[static_cast<std::size_t>(x2)] = 1.0 / ch.nx2;
          if (ch.nx1 == 2) {
            law.p_x1_g_x2[static_cast<std::size_t>(x2 * 2)] = 1.0 - sim_q1;
            law.p_x1_g_x2[static_cast<std::size_t>(x2 * 2 + 1)] = sim_q1;
          } else {
            for (int x1 = 0; x1 < ch.nx1; ++x1)
              law.p_x1_g_x2[static_cast<std::size_t>(x2 * ch.nx1 + x1)] = 1.0 / ch.nx1;
          }
        }
        for (int s = 0; s < ch.ns; ++s)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            law.p_v_g_sx2[static_cast<std::size_t>((s * ch.nx2 + x2) * ch.ns + s)] = 1.0;
      } else if (law_preset == "uniform") {
        law = lawspace::uniform_law(ch, BoundKind::InnerSc, ch.ns, 1);
      } else {
        throw validation_error("unknown block-markov law preset: " + law_preset);
      }
    } else {
      // identity strategies over the input letters
      law = lawspace::blank_law(ch, BoundKind::Causal, ch.nx2, ch.nx1);
      for (int v = 0; v < law.card_v; ++v) law.p_v[static_cast<std::size_t>(v)] = 1.0 / law.card_v;
      for (int v = 0; v < law.card_v; ++v)
        for (int u = 0; u < law.card_u; ++u)
          law.p_u_g_v[static_cast<std::size_t>(v * law.card_u + u)] = 1.0 / law.card_u;
      for (int v = 0; v < law.card_v; ++v)
        for (int s = 0; s < ch.ns; ++s)
          lawspace::set_delta(law.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, v);
      for (int s = 0; s < ch.ns; ++s)
        for (int v = 0; v < law.card_v; ++v)
          for (int u = 0; u < law.card_u; ++u)
            lawspace::set_delta(law.p_x1_g_svu.data() + ((s * law.card_v + v) * law.card_u + u) * ch.nx1,
                                ch.nx1, u);
    }

    auto run_one = [&](int n) {
      SimConfig c = sim_cfg;
      c.n = n;
      return scheme == "block-markov" ? run_block_markov(ch, {rc, r1}, law, c)
                                      : run_shannon_strategy(ch, {rc, r1}, law, c);
    };

    manifest.config = {{"scheme", scheme}, {"rc", rc}, {"r1", r1}, {"blocks", sim_cfg.blocks},
                       {"trials", sim_cfg.trials}, {"epsilon", sim_cfg.epsilon}};
    if (!n_list.empty()) {
      std::ostringstream csv;
      std::vector<int> ns;
      std::stringstream ss(n_list);
      for (std::string tok; std::getline(ss, tok, ',');) ns.push_back(std::stoi(tok));
      std::vector<SimResult> results;
      for (int n : ns) results.push_back(run_one(n));
      manifest.wall_clock_s = elapsed();
      csv << "# manifest: " << manifest.to_json().dump() << "\n";
      csv << "n,rate_rc,rate_r1,err,err_lo,err_hi\n";
      char buf[160];
      for (const auto& res : results) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", res.n, res.rate_rc,
                      res.rate_r1, res.err, res.err_lo, res.err_hi);
        csv << buf;
      }
      emit(sim_out, csv.str());
    } else {
      SimResult res = run_one(sim_cfg.n);
      manifest.wall_clock_s = elapsed();
      json j = sim_result_to_json(res);
      j["manifest"] = manifest.to_json();
      emit(sim_out, j.dump(2) + "\n");
    }
    return 0;
  }

  if (cv_cmd->parsed()) {
    RunManifest manifest;
    manifest.subcommand = "channel validate";
    manifest_add_input(manifest, cv_path);
    ChannelSpec ch = load_channel(cv_path);
    manifest.wall_clock_s = elapsed();
    json j = {{"manifest", manifest.to_json()},
              {"valid", true},
              {"sizes", {{"S", ch.ns}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}}},
              {"state_deterministic", is_state_deterministic(ch)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (ce_cmd->parsed()) {
    BuiltinParams params;
    params.p = ce_ch.p;
    ChannelSpec ch = builtin_channel(ce_ch.builtin_name, params);
    emit(ce_out, channel_to_json(ch).dump(2) + "\n");
    return 0;
  }

  if (v_cmd->parsed()) {
    auto results = run_acceptance(std::cout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    return all ? 0 : 3;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const macregions::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const macregions::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
