// SPDX-License-Identifier: Apache-2.0
#include "finstack/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "finstack/enumerate.hpp"
#include "finstack/instance.hpp"

namespace finstack::cli {

namespace {

using json = nlohmann::ordered_json;

struct CommonOpts {
  std::vector<std::string> instance_paths;
  bool json_out = false;
  bool lint = false;
  std::string bounds_text;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--instance", opts.instance_paths, "instance file (repeatable)");
  cmd->add_flag("--json", opts.json_out, "machine-readable output");
  bool strict_dummy = false;
  cmd->add_flag("--strict", strict_dummy, "strict validation (default)");
  cmd->add_flag("--lint", opts.lint, "report violations instead of failing");
  cmd->add_option("--bounds", opts.bounds_text, "bounds, e.g. n=3,arrows=9,points=4");
  cmd->add_option("--seed", opts.seed, "seed for sampled modes");
}

Bounds parse_bounds(const std::string& text) {
  Bounds b;
  if (text.empty()) return b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw error(errc::parse_error, "bad bounds entry '" + item + "'");
    std::string key = item.substr(0, eq);
    int value = std::stoi(item.substr(eq + 1));
    if (key == "n") b.max_objects = value;
    else if (key == "arrows") b.max_arrows = value;
    else if (key == "points") b.max_module_points = value;
    else throw error(errc::parse_error, "unknown bounds key '" + key + "'");
  }
  return b;
}

InstanceFile load_instances(const CommonOpts& opts, Report* lint) {
  std::vector<InstanceFile> files;
  for (const auto& path : opts.instance_paths) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open instance file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    files.push_back(parse_instance(buf.str(), !opts.lint, lint));
  }
  return merge_instances(files);
}

const Groupoid& need_groupoid(const InstanceFile& f, const std::string& name) {
  auto it = f.groupoids.find(name);
  if (it == f.groupoids.end())
    throw error(errc::dangling_reference, "unknown groupoid '" + name + "'");
  return it->second.value;
}

const Subset& need_subset(const InstanceFile& f, const std::string& name) {
  auto it = f.subsets.find(name);
  if (it == f.subsets.end())
    throw error(errc::dangling_reference, "unknown subset '" + name + "'");
  return it->second.value;
}

const Subgroupoid& need_subgroupoid(const InstanceFile& f, const std::string& name) {
  auto it = f.subgroupoids.find(name);
  if (it == f.subgroupoids.end())
    throw error(errc::dangling_reference, "unknown subgroupoid '" + name + "'");
  return it->second.value;
}

const RightModule& need_module(const InstanceFile& f, const std::string& name) {
  auto it = f.modules.find(name);
  if (it == f.modules.end())
    throw error(errc::dangling_reference, "unknown module '" + name + "'");
  return it->second.value;
}

const InstanceFile::NamedBimodule& need_bimodule(const InstanceFile& f,
                                                 const std::string& name) {
  auto it = f.bimodules.find(name);
  if (it == f.bimodules.end())
    throw error(errc::dangling_reference, "unknown bimodule '" + name + "'");
  return it->second;
}

MoritaEquivalence as_morita(const InstanceFile& f, const std::string& name) {
  const Bimodule& b = need_bimodule(f, name).value;
  Report rep = validate_morita(b);
  if (!rep.ok())
    throw error(errc::validation_error, "bimodule '" + name + "' is not a Morita equivalence:\n" +
                                            rep.str());
  return MoritaEquivalence{b};
}

json evidence_json(const Evidence& ev) {
  json j;
  j["notes"] = ev.notes;
  json iso = json::array();
  for (const auto& [a, b] : ev.iso) iso.push_back(json::array({a, b}));
  j["iso"] = iso;
  j["y"] = ev.y_members;
  return j;
}

void print_evidence(std::ostream& out, const Evidence& ev) {
  for (const auto& n : ev.notes) out << "  " << n << "\n";
  if (!ev.iso.empty()) {
    out << "  isomorphism:";
    for (const auto& [a, b] : ev.iso) out << " " << a << "->" << b;
    out << "\n";
  }
  if (!ev.y_members.empty()) {
    out << "  Y:";
    for (const auto& y : ev.y_members) out << " " << y;
    out << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite groupoid and resolution toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string groupoid_name, stable_name, sub_name, sub_left, sub_right;
  std::string bimodule_name, bimodule2_name, module_name, subset_name, l_name, kind;

  auto* validate_cmd = app.add_subcommand("validate", "validate every object in the instance");
  add_common(validate_cmd, opts);

  auto* orbits_cmd = app.add_subcommand("orbits", "print the orbit partition of a groupoid");
  add_common(orbits_cmd, opts);
  orbits_cmd->add_option("--groupoid", groupoid_name)->required();

  auto* transport_cmd =
      app.add_subcommand("transport", "transport a module or subset along a bimodule");
  add_common(transport_cmd, opts);
  transport_cmd->add_option("--bimodule", bimodule_name)->required();
  transport_cmd->add_option("--module", module_name);
  transport_cmd->add_option("--subset", subset_name);

  auto* resolve_cmd = app.add_subcommand("resolve", "build the resolution attached to a subgroupoid");
  add_common(resolve_cmd, opts);
  resolve_cmd->add_option("--groupoid", groupoid_name)->required();
  resolve_cmd->add_option("--stable", stable_name)->required();
  resolve_cmd->add_option("--sub", sub_name)->required();

  auto* recover_cmd =
      app.add_subcommand("recover", "recover the subgroupoid of an L-compatible resolution");
  add_common(recover_cmd, opts);
  recover_cmd->add_option("--module", module_name)->required();
  recover_cmd->add_option("--stable", stable_name)->required();
  recover_cmd->add_option("--L", l_name)->required();

  auto* compose_cmd = app.add_subcommand("compose", "compose two Morita equivalences");
  add_common(compose_cmd, opts);
  compose_cmd->add_option("--bimodule", bimodule_name)->required();
  compose_cmd->add_option("--bimodule2", bimodule2_name)->required();

  auto* fundprop_cmd =
      app.add_subcommand("fundprop", "check both sides of the resolution correspondence");
  add_common(fundprop_cmd, opts);
  fundprop_cmd->add_option("--bimodule", bimodule_name)->required();
  fundprop_cmd->add_option("--stable", stable_name)->required();
  fundprop_cmd->add_option("--sub-left", sub_left)->required();
  fundprop_cmd->add_option("--sub-right", sub_right)->required();

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "full correspondence round trip");
  add_common(roundtrip_cmd, opts);
  roundtrip_cmd->add_option("--groupoid", groupoid_name)->required();
  roundtrip_cmd->add_option("--stable", stable_name)->required();
  roundtrip_cmd->add_option("--sub", sub_name)->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate or sample instances");
  add_common(enum_cmd, opts);
  enum_cmd->add_option("--kind", kind, "spaces|groupoids|stable|subgroupoids|random-groupoid|random-bimodule")
      ->required();
  enum_cmd->add_option("--groupoid", groupoid_name);

  std::vector<const char*> argv;
  argv.push_back("finstack");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    Bounds bounds = parse_bounds(opts.bounds_text);
    bounds.seed = opts.seed;

    if (app.got_subcommand(validate_cmd)) {
      Report lint;
      InstanceFile f = load_instances(opts, &lint);
      std::size_t count = f.spaces.size() + f.maps.size() + f.groupoids.size() +
                          f.subsets.size() + f.subgroupoids.size() + f.modules.size() +
                          f.bimodules.size();
      if (opts.json_out) {
        json j;
        j["objects"] = count;
        j["violations"] = lint.violations;
        out << j.dump(2) << "\n";
      } else {
        out << count << " objects loaded\n";
        for (const auto& v : lint.violations) out << "lint: " << v << "\n";
        if (lint.ok()) out << "all objects valid\n";
      }
      return lint.ok() ? 0 : 2;
    }

    InstanceFile f = load_instances(opts, nullptr);

    if (app.got_subcommand(orbits_cmd)) {
      auto classes = orbit_classes(need_groupoid(f, groupoid_name));
      if (opts.json_out) {
        out << json(classes).dump(2) << "\n";
      } else {
        for (const auto& cls : classes) {
          out << "orbit:";
          for (const auto& m : cls) out << " " << m;
          out << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(transport_cmd)) {
      MoritaEquivalence x = as_morita(f, bimodule_name);
      const auto& named = need_bimodule(f, bimodule_name);
      if (module_name.empty() == subset_name.empty())
        throw error(errc::parse_error, "transport needs exactly one of --module or --subset");
      InstanceFile result;
      result.add_groupoid_auto("right", x.bimodule.right);
      if (!module_name.empty()) {
        RightModule moved = transport_module(x, need_module(f, module_name));
        result.add_module_auto("transported", "right", moved);
      } else {
        Subset moved = transport_subset(x, need_subset(f, subset_name));
        result.add_space("rightObjects", x.bimodule.right.objects);
        result.add_subset("transported", "rightObjects", moved);
      }
      (void)named;
      out << emit_instance(result);
      return 0;
    }

    if (app.got_subcommand(resolve_cmd)) {
      const Groupoid& g = need_groupoid(f, groupoid_name);
      StableSubset s = make_stable(g, need_subset(f, stable_name));
      ZofR z = build_Z_of_R(g, s, need_subgroupoid(f, sub_name));
      Report rep = validate_resolution(z.resolution);
      InstanceFile result;
      result.add_groupoid_auto("groupoid", g);
      result.add_module_auto("resolution", "groupoid", z.resolution.module);
      result.add_subset("target", "groupoid.objects", z.resolution.target.S);
      if (opts.json_out) {
        json j;
        j["valid"] = rep.ok();
        j["surjective"] = is_surjective_resolution(z.resolution);
        j["proper"] = is_proper_resolution(z.resolution);
        j["instance"] = json::parse(emit_instance(result));
        out << j.dump(2) << "\n";
      } else {
        out << emit_instance(result);
        out << "valid: " << (rep.ok() ? "yes" : "no") << "\n";
        out << "surjective: " << (is_surjective_resolution(z.resolution) ? "yes" : "no") << "\n";
        out << "proper: yes\n";
      }
      return rep.ok() ? 0 : 1;
    }

    if (app.got_subcommand(recover_cmd)) {
      const RightModule& m = need_module(f, module_name);
      StableSubset s = make_stable(m.groupoid, need_subset(f, stable_name));
      Resolution res{m, s};
      Report rep = validate_resolution(res);
      if (!rep.ok())
        throw error(errc::validation_error, "module is not a resolution:\n" + rep.str());
      auto comp = is_L_compatible(res, need_subset(f, l_name));
      if (!comp) {
        out << "not L-compatible: no admissible Ltilde\n";
        return 1;
      }
      Subgroupoid sub = recover_subgroupoid(*comp);
      if (opts.json_out) {
        json j;
        j["R"] = sub.R.names();
        j["L"] = sub.L.names();
        j["Ltilde"] = comp->Ltilde.names();
        out << j.dump(2) << "\n";
      } else {
        out << "Ltilde:";
        for (const auto& n : comp->Ltilde.names()) out << " " << n;
        out << "\nR:";
        for (const auto& n : sub.R.names()) out << " " << n;
        out << "\nL:";
        for (const auto& n : sub.L.names()) out << " " << n;
        out << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(compose_cmd)) {
      MoritaEquivalence x = as_morita(f, bimodule_name);
      MoritaEquivalence y = as_morita(f, bimodule2_name);
      MoritaEquivalence composed = compose_morita(x, y);
      InstanceFile result;
      result.add_groupoid_auto("left", composed.bimodule.left);
      result.add_groupoid_auto("right", composed.bimodule.right);
      result.add_bimodule_auto("composed", "left", "right", composed.bimodule);
      out << emit_instance(result);
      return 0;
    }

    if (app.got_subcommand(fundprop_cmd)) {
      MoritaEquivalence x = as_morita(f, bimodule_name);
      StableSubset s = make_stable(x.bimodule.left, need_subset(f, stable_name));
      FundPropResult r =
          fund_prop_check(x, s, need_subgroupoid(f, sub_left), need_subgroupoid(f, sub_right));
      if (opts.json_out) {
        json j;
        j["agree"] = r.agree;
        j["resolutions_coincide"] = r.verdict_i;
        j["subgroupoid_equivalence"] = r.verdict_ii;
        j["evidence"] = evidence_json(r.evidence);
        out << j.dump(2) << "\n";
      } else {
        out << "resolutions coincide: " << (r.verdict_i ? "yes" : "no") << "\n";
        out << "subgroupoid equivalence: " << (r.verdict_ii ? "yes" : "no") << "\n";
        out << "verdicts agree: " << (r.agree ? "yes" : "no") << "\n";
        print_evidence(out, r.evidence);
      }
      return (r.agree && r.verdict_i) ? 0 : 1;
    }

    if (app.got_subcommand(roundtrip_cmd)) {
      const Groupoid& g = need_groupoid(f, groupoid_name);
      StableSubset s = make_stable(g, need_subset(f, stable_name));
      RoundtripResult r = roundtrip_theorem_check(g, s, need_subgroupoid(f, sub_name));
      if (opts.json_out) {
        json j;
        j["ok"] = r.ok;
        j["evidence"] = evidence_json(r.evidence);
        out << j.dump(2) << "\n";
      } else {
        out << "roundtrip: " << (r.ok ? "ok" : "FAILED") << "\n";
        print_evidence(out, r.evidence);
      }
      return r.ok ? 0 : 1;
    }

    if (app.got_subcommand(enum_cmd)) {
      if (kind == "spaces") {
        auto spaces = enum_finspaces_upto(std::min(bounds.max_objects, 5));
        if (opts.json_out) {
          json arr = json::array();
          for (size_t i = 0; i < spaces.size(); ++i) {
            InstanceFile one;
            one.add_space("space" + std::to_string(i), spaces[i]);
            arr.push_back(json::parse(emit_instance(one)));
          }
          out << arr.dump(2) << "\n";
        } else {
          out << spaces.size() << " spaces up to isomorphism\n";
        }
        return 0;
      }
      if (kind == "groupoids") {
        auto gs = enum_groupoids(bounds);
        if (opts.json_out) {
          json arr = json::array();
          for (size_t i = 0; i < gs.size(); ++i) {
            InstanceFile one;
            one.add_groupoid_auto("G" + std::to_string(i), gs[i]);
            arr.push_back(json::parse(emit_instance(one)));
          }
          out << arr.dump(2) << "\n";
        } else {
          out << gs.size() << " groupoids up to isomorphism\n";
        }
        return 0;
      }
      if (kind == "stable") {
        const Groupoid& g = need_groupoid(f, groupoid_name);
        auto subsets = enum_stable_subsets(g);
        for (const auto& s : subsets) {
          out << "stable:";
          for (const auto& n : s.S.names()) out << " " << n;
          out << "\n";
        }
        return 0;
      }
      if (kind == "subgroupoids") {
        const Groupoid& g = need_groupoid(f, groupoid_name);
        auto subs = enum_subgroupoids(g);
        out << subs.size() << " subgroupoids\n";
        return 0;
      }
      if (kind == "random-groupoid") {
        InstanceFile one;
        one.add_groupoid_auto("G", random_groupoid(bounds));
        out << emit_instance(one);
        return 0;
      }
      if (kind == "random-bimodule") {
        MoritaEquivalence x = random_bimodule(bounds);
        InstanceFile one;
        one.add_groupoid_auto("left", x.bimodule.left);
        one.add_groupoid_auto("right", x.bimodule.right);
        one.add_bimodule_auto("X", "left", "right", x.bimodule);
        out << emit_instance(one);
        return 0;
      }
      throw error(errc::parse_error, "unknown enumerate kind '" + kind + "'");
    }

    err << "no subcommand\n";
    return 2;
  } catch (const error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace finstack::cli
