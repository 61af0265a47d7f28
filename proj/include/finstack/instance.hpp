// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "finstack/correspondence.hpp"

namespace finstack {

/// One named-object document.  Objects reference each other by name; values
/// are resolved on load so the in-memory structs are self-contained.
///
/// Canonical emission sorts sections in a fixed order, names alphabetically,
/// and points/pairs/triples lexicographically, so emission is byte-stable.
struct InstanceFile {
  struct NamedMap {
    std::string dom, cod;
    CMap map;
    bool operator==(const NamedMap&) const = default;
  };
  struct NamedGroupoid {
    std::string arrows, objects;
    Groupoid value;
    bool operator==(const NamedGroupoid&) const = default;
  };
  struct NamedSubset {
    std::string space;
    Subset value;
    bool operator==(const NamedSubset&) const = default;
  };
  struct NamedSubgroupoid {
    std::string groupoid;
    Subgroupoid value;
    bool operator==(const NamedSubgroupoid&) const = default;
  };
  struct NamedModule {
    std::string groupoid, space;
    RightModule value;
    bool operator==(const NamedModule&) const = default;
  };
  struct NamedBimodule {
    std::string left, right, space;
    Bimodule value;
    bool operator==(const NamedBimodule&) const = default;
  };

  std::map<std::string, FinSpace> spaces;
  std::map<std::string, NamedMap> maps;
  std::map<std::string, NamedGroupoid> groupoids;
  std::map<std::string, NamedSubset> subsets;
  std::map<std::string, NamedSubgroupoid> subgroupoids;
  std::map<std::string, NamedModule> modules;
  std::map<std::string, NamedBimodule> bimodules;

  bool operator==(const InstanceFile&) const = default;

  // registration helpers for programmatic construction; referenced spaces
  // must be registered first and match structurally
  void add_space(const std::string& name, FinSpace s);
  void add_map(const std::string& name, const std::string& dom, const std::string& cod,
               CMap f);
  void add_groupoid(const std::string& name, const std::string& arrows,
                    const std::string& objects, Groupoid g);
  void add_subset(const std::string& name, const std::string& space, Subset s);
  void add_subgroupoid(const std::string& name, const std::string& groupoid, Subgroupoid s);
  void add_module(const std::string& name, const std::string& groupoid,
                  const std::string& space, RightModule m);
  void add_bimodule(const std::string& name, const std::string& left,
                    const std::string& right, const std::string& space, Bimodule b);

  /// Registers a groupoid along with fresh spaces "<name>.arrows" and
  /// "<name>.objects" unless spaces equal to them are already present under
  /// those names.
  void add_groupoid_auto(const std::string& name, const Groupoid& g);
  void add_module_auto(const std::string& name, const std::string& groupoid,
                       const RightModule& m);
  void add_bimodule_auto(const std::string& name, const std::string& left,
                         const std::string& right, const Bimodule& b);
};

/// Parse a document.  In strict mode unknown fields are rejected and every
/// object must pass its validator; in lint mode both are reported instead.
/// Throws parse_error / dangling_reference / validation_error.
InstanceFile parse_instance(const std::string& text, bool strict = true,
                            Report* lint = nullptr);

/// Canonical text form; parse(emit(x)) == x.
std::string emit_instance(const InstanceFile& file);

/// Merge documents; duplicate names must agree structurally.
InstanceFile merge_instances(const std::vector<InstanceFile>& files);

}  // namespace finstack
