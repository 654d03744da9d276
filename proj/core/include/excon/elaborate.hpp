#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/error.hpp"
#include "excon/exact_context.hpp"
#include "excon/module.hpp"
#include "excon/presentation.hpp"

namespace excon {

struct AlgebraEntry {
  AlgebraPtr algebra;
  /// Set for `sub` (inclusion), `quotient` (projection) and `product`.
  std::optional<AlgebraMorphism> inclusion;
  std::optional<QuotientPresentation> quotient;
  std::optional<ProductAlgebra> product;
};

struct ModuleEntry {
  Module module;
  std::optional<QuotientModule> quotient_of;  // set for `quotient`
  std::optional<Module> parent;
};

struct ElementEntry {
  std::string owner;
  Vector value;
};

/// The verified context together with the family-specific data the oracles
/// and reports need.
struct ContextEntry {
  std::string family;  // exact, extension, rigid, milnor, pure, morita
  ExactContext context;
  std::optional<MoritaContext> morita;
  std::optional<PureContext> pure;
  std::optional<ExtensionContext> extension;
  std::optional<MilnorContext> milnor;
  std::optional<RigidContext> rigid;
};

using Entry = std::variant<AlgebraEntry, AlgebraMorphism, ModuleEntry, ModuleMap, Bimodule, ElementEntry, ContextEntry>;

class Environment {
 public:
  Field field;
  std::size_t max_dim = 256;

  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  const std::vector<std::string>& names() const { return order_; }
  DeclKind kind_of(const std::string& name) const;

  /// Lookups throw UnresolvedReference for unknown names and TypeMismatch for
  /// names of another kind.
  const AlgebraEntry& algebra(const std::string& name) const;
  const AlgebraMorphism& morphism(const std::string& name) const;
  const ModuleEntry& module(const std::string& name) const;
  const ModuleMap& map(const std::string& name) const;
  const Bimodule& bimodule(const std::string& name) const;
  const ElementEntry& element(const std::string& name) const;
  const ContextEntry& context(const std::string& name) const;

  /// Basis labels of a named algebra, module, bimodule (empty when the
  /// object has none).
  std::vector<std::string> labels_of(const std::string& name) const;

  void add(const std::string& name, DeclKind kind, Entry entry, std::vector<std::string> labels = {});

  /// Contexts whose construction failed a mathematical check (see
  /// `elaborate`); `context` rethrows the recorded error.
  void add_failure(const std::string& name, const Error& error);
  const Error* failure(const std::string& name) const;

 private:
  template <class T>
  const T& get(const std::string& name, DeclKind kind) const;

  std::map<std::string, std::pair<DeclKind, Entry>> entries_;
  std::map<std::string, std::vector<std::string>> labels_;
  std::map<std::string, Error> failures_;
  std::vector<std::string> order_;
};

/// Builds every declaration in order. The field comes from `field_override`,
/// else from the file, else Q. Errors carry the declaration's line in the
/// message; algebras larger than `max_dim` raise DimensionCap. With
/// `defer_context_failures`, a context that fails one of its defining checks
/// (see `is_verification_failure`) is recorded instead of aborting.
Environment elaborate(const PresentationFile& file, std::optional<Field> field_override = std::nullopt,
                      std::size_t max_dim = 256, bool defer_context_failures = false);

/// Codes that mean "the input is well-formed but the mathematics fails",
/// as opposed to malformed or ill-typed input.
bool is_verification_failure(ErrorCode code);

}  // namespace excon
