#pragma once

// Serialization: channel-spec JSON, symbolic-system JSON, run manifests with
// input digests, and the CSV sweep format.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "macregions/channel.hpp"
#include "macregions/fme.hpp"
#include "macregions/search.hpp"
#include "macregions/sim.hpp"

namespace macregions {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// --- channel JSON -------------------------------------------------------------

inline json channel_to_json(const ChannelSpec& ch) {
  json j;
  j["sizes"] = {{"S", ch.ns}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}};
  j["Q_S"] = ch.qs;
  auto w = json::array();
  for (int s = 0; s < ch.ns; ++s) {
    auto ws = json::array();
    for (int x1 = 0; x1 < ch.nx1; ++x1) {
      auto wx1 = json::array();
      for (int x2 = 0; x2 < ch.nx2; ++x2) {
        auto row = json::array();
        for (int y = 0; y < ch.ny; ++y) row.push_back(ch.wat(s, x1, x2, y));
        wx1.push_back(row);
      }
      ws.push_back(wx1);
    }
    w.push_back(ws);
  }
  j["W"] = w;
  return j;
}

inline ChannelSpec channel_from_json(const json& j) {
  ChannelSpec ch;
  try {
    ch.ns = j.at("sizes").at("S").get<int>();
    ch.nx1 = j.at("sizes").at("X1").get<int>();
    ch.nx2 = j.at("sizes").at("X2").get<int>();
    ch.ny = j.at("sizes").at("Y").get<int>();
    ch.qs = j.at("Q_S").get<std::vector<double>>();
    const auto& w = j.at("W");
    ch.w.reserve(static_cast<std::size_t>(ch.ns) * ch.nx1 * ch.nx2 * ch.ny);
    for (int s = 0; s < ch.ns; ++s)
      for (int x1 = 0; x1 < ch.nx1; ++x1)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          for (int y = 0; y < ch.ny; ++y)
            ch.w.push_back(w.at(static_cast<std::size_t>(s))
                               .at(static_cast<std::size_t>(x1))
                               .at(static_cast<std::size_t>(x2))
                               .at(static_cast<std::size_t>(y))
                               .get<double>());
  } catch (const json::exception& e) {
    throw validation_error(std::string("channel JSON malformed: ") + e.what());
  }
  ch.validate();
  return ch;
}

inline ChannelSpec load_channel(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw validation_error(std::string("channel JSON parse error: ") + e.what());
  }
  return channel_from_json(j);
}

// --- symbolic system JSON -------------------------------------------------------

inline json atom_to_json(const fme::Atom& a, const std::vector<std::string>& rv_order) {
  json j;
  j["first"] = a.first;
  j["second"] = a.second;
  j["cond"] = a.cond;
  j["name"] = a.render(rv_order);
  return j;
}

inline fme::Atom atom_from_json(const json& j) {
  return fme::Atom(j.at("first").get<std::vector<std::string>>(),
                   j.at("second").get<std::vector<std::string>>(),
                   j.value("cond", std::vector<std::string>{}));
}

inline json system_to_json(const fme::SymbolicSystem& sys) {
  json j;
  j["variables"] = sys.variables;
  j["rv_order"] = sys.rv_order;
  auto rows = json::array();
  for (const auto& r : sys.rows) {
    json row;
    json coeffs = json::object();
    for (const auto& [v, c] : r.vars) coeffs[v] = c.str();
    row["coeffs"] = coeffs;
    auto atoms = json::array();
    for (const auto& t : r.atoms) {
      json a = atom_to_json(t.atom, sys.rv_order);
      a["coeff"] = t.coeff.str();
      atoms.push_back(a);
    }
    row["atoms"] = atoms;
    row["const"] = r.constant.str();
    row["sense"] = "<=";
    row["strict"] = r.strict;
    row["text"] = fme::render_row(r, sys);
    rows.push_back(row);
  }
  j["inequalities"] = rows;
  return j;
}

inline fme::Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return fme::Rat(std::stoll(s));
  return fme::Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline fme::SymbolicSystem system_from_json(const json& j) {
  fme::SymbolicSystem sys;
  try {
    sys.variables = j.at("variables").get<std::vector<std::string>>();
    sys.rv_order = j.value("rv_order", std::vector<std::string>{});
    for (const auto& row : j.at("inequalities")) {
      fme::Inequality r;
      if (row.contains("coeffs"))
        for (auto it = row["coeffs"].begin(); it != row["coeffs"].end(); ++it)
          r.vars[it.key()] = it.value().is_number()
                                 ? fme::Rat(it.value().get<long long>())
                                 : rat_from_string(it.value().get<std::string>());
      for (const auto& a : row.value("atoms", json::array())) {
        fme::Rat c = a.contains("coeff")
                         ? (a["coeff"].is_number() ? fme::Rat(a["coeff"].get<long long>())
                                                   : rat_from_string(a["coeff"].get<std::string>()))
                         : fme::Rat(1);
        r.atoms.push_back({atom_from_json(a), c});
      }
      if (row.contains("const"))
        r.constant = row["const"].is_number() ? fme::Rat(row["const"].get<long long>())
                                              : rat_from_string(row["const"].get<std::string>());
      std::string sense = row.value("sense", "<=");
      r.strict = row.value("strict", sense == "<" || sense == ">");
      if (sense == ">=" || sense == ">") {  // flip to the <= normal form
        for (auto& [v, c] : r.vars) c = -c;
        for (auto& t : r.atoms) t.coeff = -t.coeff;
        r.constant = -r.constant;
      }
      sys.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("system JSON malformed: ") + e.what());
  }
  if (sys.rv_order.empty()) {
    for (const auto& r : sys.rows)
      for (const auto& t : r.atoms)
        for (const auto* g : {&t.atom.first, &t.atom.second, &t.atom.cond})
          for (const auto& v : *g)
            if (std::find(sys.rv_order.begin(), sys.rv_order.end(), v) == sys.rv_order.end())
              sys.rv_order.push_back(v);
  }
  sys.check_declared();
  return sys;
}

// --- factored laws -------------------------------------------------------------

inline json law_to_json(const FactoredLaw& law) {
  json j;
  j["bound_kind"] = bound_kind_name(law.kind);
  j["card_v"] = law.card_v;
  j["card_u"] = law.card_u;
  auto put = [&](const char* name, const std::vector<double>& t) {
    if (!t.empty()) j[name] = t;
  };
  put("P_X2", law.p_x2);
  put("P_X1_given_X2", law.p_x1_g_x2);
  put("P_V_given_SX2", law.p_v_g_sx2);
  put("P_V_given_SX1X2", law.p_v_g_sx1x2);
  put("P_U_given_SVX1X2", law.p_u_g_svx1x2);
  put("P_X1X2", law.p_x1x2);
  put("P_U", law.p_u);
  put("P_X2_given_U", law.p_x2_g_u);
  put("P_X1_given_U", law.p_x1_g_u);
  put("P_V_given_SUX2", law.p_v_g_sux2);
  put("P_X1", law.p_x1);
  put("P_V", law.p_v);
  put("P_U_given_V", law.p_u_g_v);
  put("P_X2_given_VS", law.p_x2_g_vs);
  put("P_X1_given_SVU", law.p_x1_g_svu);
  return j;
}

inline BoundKind bound_kind_from_name(const std::string& name) {
  for (BoundKind k : {BoundKind::InnerSc, BoundKind::OuterSc, BoundKind::JointInput,
                      BoundKind::AsymInner, BoundKind::ProductInput, BoundKind::Causal,
                      BoundKind::NoState})
    if (name == bound_kind_name(k)) return k;
  throw validation_error("unknown bound kind: " + name);
}

inline FactoredLaw law_from_json(const json& j) {
  FactoredLaw law;
  try {
    law.kind = bound_kind_from_name(j.at("bound_kind").get<std::string>());
    law.card_v = j.value("card_v", 1);
    law.card_u = j.value("card_u", 1);
    auto get = [&](const char* name, std::vector<double>& t) {
      if (j.contains(name)) t = j[name].get<std::vector<double>>();
    };
    get("P_X2", law.p_x2);
    get("P_X1_given_X2", law.p_x1_g_x2);
    get("P_V_given_SX2", law.p_v_g_sx2);
    get("P_V_given_SX1X2", law.p_v_g_sx1x2);
    get("P_U_given_SVX1X2", law.p_u_g_svx1x2);
    get("P_X1X2", law.p_x1x2);
    get("P_U", law.p_u);
    get("P_X2_given_U", law.p_x2_g_u);
    get("P_X1_given_U", law.p_x1_g_u);
    get("P_V_given_SUX2", law.p_v_g_sux2);
    get("P_X1", law.p_x1);
    get("P_V", law.p_v);
    get("P_U_given_V", law.p_u_g_v);
    get("P_X2_given_VS", law.p_x2_g_vs);
    get("P_X1_given_SVU", law.p_x1_g_svu);
  } catch (const json::exception& e) {
    throw validation_error(std::string("law JSON malformed: ") + e.what());
  }
  return law;
}

// --- two-state channels ---------------------------------------------------------

inline TwoStateChannel two_state_channel_from_json(const json& j) {
  TwoStateChannel ch;
  try {
    ch.ns1 = j.at("sizes").at("S1").get<int>();
    ch.ns2 = j.at("sizes").at("S2").get<int>();
    ch.nx1 = j.at("sizes").at("X1").get<int>();
    ch.nx2 = j.at("sizes").at("X2").get<int>();
    ch.ny = j.at("sizes").at("Y").get<int>();
    ch.qs1 = j.at("Q_S1").get<std::vector<double>>();
    ch.qs2 = j.at("Q_S2").get<std::vector<double>>();
    const auto& w = j.at("W");
    for (int s1 = 0; s1 < ch.ns1; ++s1)
      for (int s2 = 0; s2 < ch.ns2; ++s2)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            for (int y = 0; y < ch.ny; ++y)
              ch.w.push_back(w.at(static_cast<std::size_t>(s1))
                                 .at(static_cast<std::size_t>(s2))
                                 .at(static_cast<std::size_t>(x1))
                                 .at(static_cast<std::size_t>(x2))
                                 .at(static_cast<std::size_t>(y))
                                 .get<double>());
  } catch (const json::exception& e) {
    throw validation_error(std::string("two-state channel JSON malformed: ") + e.what());
  }
  ch.validate();
  return ch;
}

// --- run manifest -------------------------------------------------------------

struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  json config = json::object();
  std::uint64_t seed = 0;
  std::string version = "macregions 0.1.0";
  double wall_clock_s = 0.0;

  json to_json() const {
    json j;
    j["subcommand"] = subcommand;
    auto ins = json::array();
    for (const auto& [path, digest] : inputs) ins.push_back({{"path", path}, {"digest", digest}});
    j["inputs"] = ins;
    j["config"] = config;
    j["seed"] = seed;
    j["version"] = version;
    j["wall_clock_s"] = wall_clock_s;
    return j;
  }
};

inline void manifest_add_input(RunManifest& m, const std::string& path) {
  m.inputs.emplace_back(path, hex64(fnv1a64(read_file(path))));
}

// CSV: one leading comment line carries the manifest; the body below it is
// byte-identical across reruns with the same config and inputs.
inline std::string region_csv(const RateRegion& region, const RunManifest& manifest) {
  std::ostringstream out;
  out << "# manifest: " << manifest.to_json().dump() << "\n";
  out << "lambda,rc,r1,sum_cap,r1_cap,feasible\n";
  char buf[256];
  for (const auto& s : region.samples) {
    std::snprintf(buf, sizeof buf, "%.6f,%.9f,%.9f,%.9f,%.9f,%d\n", s.lambda, s.best.rc, s.best.r1,
                  s.sum_cap, s.r1_cap, s.feasible ? 1 : 0);
    out << buf;
  }
  return out.str();
}

inline json region_sidecar(const RateRegion& region, const RunManifest& manifest, json extra = {}) {
  json j;
  j["manifest"] = manifest.to_json();
  j["mode"] = region_mode_name(region.mode);
  auto hull = json::array();
  for (const auto& p : region.hull) hull.push_back({{"rc", p.rc}, {"r1", p.r1}});
  j["hull"] = hull;
  auto wit = json::array();
  for (const auto& w : region.witnesses)
    wit.push_back({{"digest", hex64(w.digest)},
                   {"r1_cap", w.corner.effective_r1_cap()},
                   {"sum_cap", w.corner.sum_cap},
                   {"feasible", w.corner.feasible}});
  j["witness_laws"] = wit;
  if (!extra.is_null() && !extra.empty()) j["metadata"] = extra;
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
}

inline json sim_result_to_json(const SimResult& r) {
  json j;
  j["trials"] = r.trials;
  j["errors"] = r.errors;
  j["err"] = r.err;
  j["err_lo"] = r.err_lo;
  j["err_hi"] = r.err_hi;
  j["n"] = r.n;
  j["rate_rc"] = r.rate_rc;
  j["rate_r1"] = r.rate_r1;
  json ev = json::object();
  for (const auto& [k, v] : r.events) ev[k] = v;
  j["events"] = ev;
  return j;
}

}  // namespace macregions
