#include "cpcav/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "cpcav/errors.hpp"

namespace cpcav {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& text, int line, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + text + "'", line, field);
  }
  return v;
}

double parse_positive(const std::string& text, int line, const std::string& field) {
  const double v = parse_number(text, line, field);
  if (!(v > 0.0)) throw ConfigError("value must be positive", line, field);
  return v;
}

struct Section {
  enum class Kind { none, molecule, material, mirror } kind = Kind::none;
  std::string name;
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> values;
  std::vector<std::pair<std::string, int>> repeated;  // transition / layer entries
};

const std::pair<std::string, int>* find_value(const Section& s, const std::string& key) {
  auto it = s.values.find(key);
  return it == s.values.end() ? nullptr : &it->second;
}

const std::pair<std::string, int>& require(const Section& s, const std::string& key) {
  const auto* v = find_value(s, key);
  if (!v) throw ConfigError("missing required key in [" + s.name + "]", s.line, key);
  return *v;
}

void finish_molecule(const Section& s, Config& cfg) {
  Molecule mol{s.name, {}};
  for (const auto& [text, line] : s.repeated) {
    const auto parts = split_commas(text);
    if (parts.size() != 2) throw ConfigError("transition needs 'omega, d_squared'", line, "transition");
    const double omega = parse_number(parts[0], line, "omega");
    const double d2 = parse_number(parts[1], line, "d_squared");
    if (!(omega > 0.0)) throw ConfigError("transition frequency must be positive", line, "omega");
    if (!(d2 > 0.0)) throw ConfigError("squared dipole moment must be positive", line, "d_squared");
    mol.transitions.push_back({omega, d2});
  }
  if (mol.transitions.empty()) throw ConfigError("molecule has no transitions", s.line, "transition");
  std::sort(mol.transitions.begin(), mol.transitions.end(),
            [](const Transition& a, const Transition& b) { return a.omega < b.omega; });
  cfg.molecules.add(std::move(mol));
}

void finish_material(const Section& s, Config& cfg) {
  const auto& [model, line] = require(s, "model");
  PermittivityModel m;
  if (model == "vacuum") {
    m = Vacuum{};
  } else if (model == "drude") {
    const auto& wp = require(s, "plasma_frequency");
    const auto& g = require(s, "damping");
    m = Drude{parse_positive(wp.first, wp.second, "plasma_frequency"), parse_positive(g.first, g.second, "damping")};
  } else if (model == "constant") {
    const auto& re = require(s, "eps_real");
    double im = 0.0;
    if (const auto* v = find_value(s, "eps_imag")) {
      im = parse_number(v->first, v->second, "eps_imag");
      if (im < 0.0) throw ConfigError("imaginary permittivity must be >= 0", v->second, "eps_imag");
    }
    m = ConstantLossy{parse_number(re.first, re.second, "eps_real"), im};
  } else {
    throw ConfigError("unknown material model '" + model + "'", line, "model");
  }
  if (cfg.materials.contains(s.name)) cfg.warnings.push_back("material '" + s.name + "' overrides an earlier entry");
  cfg.materials.insert_or_assign(s.name, m);
}

void finish_mirror(const Section& s, Config& cfg) {
  const auto& [type, line] = require(s, "type");
  MirrorDef def;
  if (type == "halfspace") {
    def = HalfSpaceDef{require(s, "material").first};
  } else if (type == "bragg") {
    const auto& pairs = require(s, "pairs");
    const double n = parse_number(pairs.first, pairs.second, "pairs");
    if (n < 0.0 || n != std::floor(n)) throw ConfigError("pairs must be a non-negative integer", pairs.second, "pairs");
    BraggDef b{require(s, "material_a").first, require(s, "material_b").first, static_cast<int>(n), std::nullopt};
    if (const auto* w = find_value(s, "design_omega")) b.design_omega = parse_positive(w->first, w->second, "design_omega");
    def = b;
  } else if (type == "constant") {
    const auto& r = require(s, "r");
    const double v = parse_number(r.first, r.second, "r");
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError("r must lie in [0, 1)", r.second, "r");
    def = ConstantR{v};
  } else if (type == "stack") {
    StackDef st;
    for (std::size_t i = 0; i < s.repeated.size(); ++i) {
      const auto& [text, lline] = s.repeated[i];
      const auto parts = split_commas(text);
      const bool last = i + 1 == s.repeated.size();
      if (last && parts.size() == 1) {
        st.layers.emplace_back(parts[0], Layer::semi_infinite);
      } else if (!last && parts.size() == 2) {
        st.layers.emplace_back(parts[0], parse_positive(parts[1], lline, "thickness"));
      } else {
        throw ConfigError("inner layers need 'material, thickness'; the last layer only 'material'", lline, "layer");
      }
    }
    if (st.layers.empty()) throw ConfigError("stack has no layers", s.line, "layer");
    def = st;
  } else {
    throw ConfigError("unknown mirror type '" + type + "'", line, "type");
  }
  if (cfg.mirrors.contains(s.name)) cfg.warnings.push_back("mirror '" + s.name + "' overrides an earlier entry");
  cfg.mirrors.insert_or_assign(s.name, def);
}

void finish(const Section& s, Config& cfg) {
  switch (s.kind) {
    case Section::Kind::none: break;
    case Section::Kind::molecule: finish_molecule(s, cfg); break;
    case Section::Kind::material: finish_material(s, cfg); break;
    case Section::Kind::mirror: finish_mirror(s, cfg); break;
  }
}

bool repeated_key(Section::Kind kind, const std::string& key) {
  return (kind == Section::Kind::molecule && key == "transition") || (kind == Section::Kind::mirror && key == "layer");
}

}  // namespace

Config default_config() {
  Config cfg;
  cfg.materials = {
      {"vacuum", Vacuum{}},
      {"gold", Drude{1.37e16, 5.32e13}},
      {"GaAs", ConstantLossy{12.96, 0.02}},
      {"AlAs", ConstantLossy{10.96, 0.02}},
      {"GaAs-reduced", ConstantLossy{12.96, 0.002}},
      {"AlAs-reduced", ConstantLossy{10.96, 0.002}},
      {"GaAs-lossless", ConstantLossy{12.96, 0.0}},
      {"AlAs-lossless", ConstantLossy{10.96, 0.0}},
      {"sapphire@300K", ConstantLossy{10.0, 1e-4}},
      {"sapphire@77K", ConstantLossy{10.0, 1e-6}},
  };
  cfg.mirrors = {
      {"gold", HalfSpaceDef{"gold"}},
      {"sapphire-bragg", BraggDef{"sapphire", "vacuum", 10, std::nullopt}},
      {"gaas-bragg", BraggDef{"GaAs", "AlAs", 40, std::nullopt}},
  };
  return cfg;
}

Config load_config(std::istream& in) {
  Config cfg = default_config();
  Section current;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      finish(current, cfg);
      const std::string inner = line.substr(1, line.size() - 2);
      const auto colon = inner.find(':');
      if (colon == std::string::npos) throw ConfigError("section header must be [kind:name]", line_no);
      const std::string kind = trim(inner.substr(0, colon));
      current = Section{};
      current.name = trim(inner.substr(colon + 1));
      current.line = line_no;
      if (current.name.empty()) throw ConfigError("section name is empty", line_no);
      if (kind == "molecule") {
        current.kind = Section::Kind::molecule;
        if (cfg.molecules.contains(current.name)) {
          cfg.warnings.push_back("molecule '" + current.name + "' overrides an earlier entry");
        }
      } else if (kind == "material") {
        current.kind = Section::Kind::material;
      } else if (kind == "mirror") {
        current.kind = Section::Kind::mirror;
      } else {
        throw ConfigError("unknown section kind '" + kind + "'", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current.kind == Section::Kind::none) throw ConfigError("key outside any section", line_no, key);
    if (value.empty()) throw ConfigError("empty value", line_no, key);
    if (repeated_key(current.kind, key)) {
      current.repeated.emplace_back(value, line_no);
    } else {
      if (current.values.contains(key)) throw ConfigError("duplicate key", line_no, key);
      current.values.emplace(key, std::make_pair(value, line_no));
    }
  }
  finish(current, cfg);
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return load_config(in);
}

const PermittivityModel& Config::material(const std::string& name, std::optional<double> temperature) const {
  if (auto it = materials.find(name); it != materials.end()) return it->second;
  if (temperature) {
    const std::string tagged = name + "@" + std::to_string(static_cast<long>(std::lround(*temperature))) + "K";
    if (auto it = materials.find(tagged); it != materials.end()) return it->second;
    throw ConfigError("unknown material '" + name + "' (also tried '" + tagged + "')", 0, "material");
  }
  throw ConfigError("unknown material '" + name + "'", 0, "material");
}

MirrorSpec Config::mirror(const std::string& name, double temperature, double design_omega) const {
  if (name.rfind("constant:", 0) == 0) {
    const double r = parse_number(name.substr(9), 0, "mirror");
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("constant mirror needs 0 <= r < 1", 0, "mirror");
    return ConstantR{r};
  }
  auto it = mirrors.find(name);
  if (it == mirrors.end()) throw ConfigError("unknown mirror '" + name + "'", 0, "mirror");
  return std::visit(
      [&](const auto& def) -> MirrorSpec {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, HalfSpaceDef>) {
          return HalfSpace{material(def.material, temperature)};
        } else if constexpr (std::is_same_v<T, BraggDef>) {
          return Stack{quarter_wave_stack(material(def.material_a, temperature), material(def.material_b, temperature),
                                          def.pairs, def.design_omega.value_or(design_omega))};
        } else if constexpr (std::is_same_v<T, ConstantR>) {
          return def;
        } else {
          Stack st;
          for (const auto& [mat, d] : def.layers) st.layers.push_back({material(mat, temperature), d});
          return st;
        }
      },
      it->second);
}

double parse_quantity(const std::string& text, const std::string& field) {
  static const std::vector<std::pair<std::string, double>> suffixes = {
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}, {"K", 1.0}};
  const std::string t = trim(text);
  for (const auto& [suffix, scale] : suffixes) {
    if (t.size() > suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
      const std::string number = t.substr(0, t.size() - suffix.size());
      // "1e-3m" is fine, but guard against "1e" followed by a unit-looking tail
      if (!number.empty() && (std::isdigit(static_cast<unsigned char>(number.back())) || number.back() == '.')) {
        return parse_number(number, 0, field) * scale;
      }
    }
  }
  return parse_number(t, 0, field);
}

}  // namespace cpcav
