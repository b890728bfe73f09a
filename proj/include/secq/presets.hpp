#pragma once

#include <string>
#include <vector>

namespace secq {

struct Preset {
  std::string name;
  std::string description;
  std::string source;  // expression text accepted by parse()
};

// Built-in expectation-value expressions, each the sandwich of an operator
// between a correlated trial state and itself.
const std::vector<Preset>& presets();

// Throws Error when no preset has the given name.
const Preset& preset(const std::string& name);

}  // namespace secq
