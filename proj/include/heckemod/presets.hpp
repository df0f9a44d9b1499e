#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heckemod/lattice.hpp"

namespace heckemod {

struct CaseConfig {
  char type = 'A';
  int rank = 2;
  int rank_cap = 8;
  std::vector<int> parabolic;
  std::string lattice = "root";  // root | a3-omega2 | d4-so8 | d4-hspin8 | file:<path>
  long long prime = 0;           // 0 = integer coefficients
  bool congruence = true;
  bool oracle = false;
  int oracle_cap = 22;
  bool emit_localized = false;
  std::string out;
  std::string format = "json";  // json | text
  bool timings = false;
};

// The named case studies. "projective" leaves rank/prime to the caller.
std::vector<std::string> case_preset_names();
CaseConfig case_preset(const std::string& name);
std::vector<std::string> lattice_preset_names();

CharacterLattice make_lattice(const RootSystem& rs, const std::string& preset_or_file);

// Plain key=value config files; '#' starts a comment.
CaseConfig parse_config_file(const std::string& path);
std::vector<int> parse_parabolic(const std::string& csv);

}  // namespace heckemod
