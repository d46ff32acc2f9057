#pragma once

// Line-oriented configuration:
//
//   # comment
//   [molecule:NAME]
//   transition = OMEGA_RAD_PER_S, D_SQUARED_C2M2     (repeatable)
//
//   [material:NAME]            NAME may carry a temperature tag, e.g. sapphire@77K
//   model = drude | constant | vacuum
//   plasma_frequency = ...     damping = ...          (drude)
//   eps_real = ...             eps_imag = ...         (constant)
//
//   [mirror:NAME]
//   type = halfspace | bragg | constant | stack
//   material = NAME                                   (halfspace)
//   material_a = NAME  material_b = NAME  pairs = N   (bragg; a faces the cavity)
//   design_omega = ...                                (bragg, optional)
//   r = ...                                           (constant)
//   layer = MATERIAL, THICKNESS_M                     (stack, repeatable)
//   layer = MATERIAL                                  (stack, final semi-infinite)
//
// All values are SI. Entries override built-ins of the same name.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpcav/materials.hpp"
#include "cpcav/molecules.hpp"

namespace cpcav {

struct HalfSpaceDef {
  std::string material;
};

struct BraggDef {
  std::string material_a;
  std::string material_b;
  int pairs;
  std::optional<double> design_omega;
};

struct StackDef {
  std::vector<std::pair<std::string, double>> layers;  // thickness inf for the final layer
};

using MirrorDef = std::variant<HalfSpaceDef, BraggDef, ConstantR, StackDef>;

struct Config {
  MoleculeRegistry molecules;
  std::map<std::string, PermittivityModel> materials;
  std::map<std::string, MirrorDef> mirrors;
  std::vector<std::string> warnings;

  /// Looks up NAME, then NAME@<T>K with T rounded to whole kelvin.
  const PermittivityModel& material(const std::string& name, std::optional<double> temperature = std::nullopt) const;

  /// Builds a mirror by name, or from an inline "constant:R" spec. Bragg mirrors
  /// without an explicit design frequency use `design_omega`.
  MirrorSpec mirror(const std::string& name, double temperature, double design_omega) const;
};

/// Built-in molecules, materials and mirrors.
Config default_config();

/// Built-ins overlaid with the entries read from `in`.
Config load_config(std::istream& in);
Config load_config_file(const std::string& path);

/// Parses "500um", "1.2mm", "3e-4", "77K" style quantities into SI.
double parse_quantity(const std::string& text, const std::string& field);

}  // namespace cpcav
