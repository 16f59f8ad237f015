#pragma once

#include "etw/domains/domain.hpp"
#include "etw/kernel/program.hpp"
#include "etw/numberings/wn_family.hpp"
#include "etw/trees/tree.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etw::cli {

using kernel::ParseError;

struct FamilyDecl {
  std::string kind;  // subsets, singleton, s_t, continuous
  FinSet set;
  std::string ref;
};

struct SpaceDecl {
  std::string kind;  // tree, domain
  std::string ref;
};

struct ScenarioDecl {
  std::string verb;
  std::vector<std::string> target;
  std::optional<std::uint64_t> budget, stages, bound;
};

/// A parsed .etw file. Every name is unique across all blocks.
///
///   program NAME { <one instruction per line> }
///   program NAME = identity | loop | constant N | finite {..} | codes (..) (..) | index N
///   tree NAME { () (0) (0 1) ... }
///   tree NAME = inseparable DEPTH ALPHABET
///   family NAME = subsets {..} | singleton {..} | s_t TREE | continuous DOMAIN
///   domain NAME { elements a b ... / leq a b ... }
///   space NAME = tree TREE | domain DOMAIN
///   scenario NAME = VERB KIND ARGS... [budget N] [stages N] [bound N]
///
/// `#` starts a comment.
struct InstanceFile {
  std::map<std::string, kernel::ProgramIndex> programs;
  std::map<std::string, trees::Tree> trees;
  std::map<std::string, FamilyDecl> families;
  std::map<std::string, domains::Domain> domains;
  std::map<std::string, SpaceDecl> spaces;
  std::map<std::string, ScenarioDecl> scenarios;

  bool empty() const;
  bool has(const std::string& name) const;

  /// SHA-256 over a canonical rendering of the parsed contents, so comments
  /// and layout do not change it.
  std::string digest() const;
  std::string canonical() const;

  const kernel::ProgramIndex& program(const std::string& name) const;
  const trees::Tree& tree(const std::string& name) const;
  const domains::Domain& domain(const std::string& name) const;
  numberings::WnFamily family(const std::string& name) const;
  const SpaceDecl& space(const std::string& name) const;
  const ScenarioDecl& scenario(const std::string& name) const;
};

/// Throws ParseError with the offending line.
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::string& path);

/// The fixture instance compiled into the tool.
std::string_view builtin_fixture_text();

}  // namespace etw::cli
