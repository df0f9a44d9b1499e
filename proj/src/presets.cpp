#include "heckemod/presets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heckemod {

std::vector<std::string> case_preset_names() {
  return {"projective", "klein", "pgo8", "so8", "hspin8"};
}

CaseConfig case_preset(const std::string& name) {
  CaseConfig c;
  if (name == "projective") {
    c.type = 'A';
    c.rank = 2;
    c.prime = 3;
    c.lattice = "root";
    // parabolic filled from the rank at build time: {2, ..., n}
  } else if (name == "klein") {
    c.type = 'A';
    c.rank = 3;
    c.parabolic = {1, 3};
    c.lattice = "a3-omega2";
    c.prime = 2;
  } else if (name == "pgo8") {
    c.type = 'D';
    c.rank = 4;
    c.parabolic = {2, 3, 4};
    c.lattice = "root";
    c.prime = 2;
  } else if (name == "so8") {
    c.type = 'D';
    c.rank = 4;
    c.parabolic = {2, 3, 4};
    c.lattice = "d4-so8";
    c.prime = 2;
  } else if (name == "hspin8") {
    c.type = 'D';
    c.rank = 4;
    c.parabolic = {2, 3, 4};
    c.lattice = "d4-hspin8";
    c.prime = 2;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

std::vector<std::string> lattice_preset_names() {
  return {"root", "a3-omega2", "d4-so8", "d4-hspin8"};
}

CharacterLattice make_lattice(const RootSystem& rs, const std::string& preset_or_file) {
  if (preset_or_file == "root") return root_lattice(rs);
  if (preset_or_file == "a3-omega2") return a3_omega2_lattice(rs);
  if (preset_or_file == "d4-so8") return d4_so8_lattice(rs);
  if (preset_or_file == "d4-hspin8") return d4_hspin8_lattice(rs);
  if (preset_or_file.rfind("file:", 0) == 0) {
    std::string path = preset_or_file.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lattice file '" + path + "'");
    nlohmann::json j;
    in >> j;
    std::vector<std::string> labels = j.at("basis_labels").get<std::vector<std::string>>();
    auto coords = j.at("simple_root_coords").get<std::vector<std::vector<Coeff>>>();
    auto pairings = j.at("coroot_pairings").get<std::vector<std::vector<Coeff>>>();
    return CharacterLattice(rs, labels, coords, pairings);
  }
  throw std::invalid_argument("unknown lattice preset '" + preset_or_file + "'");
}

std::vector<int> parse_parabolic(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

CaseConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  CaseConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank)
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "type") {
      if (value.size() != 1) throw std::invalid_argument("type must be a single letter");
      c.type = value[0];
    } else if (key == "rank") {
      c.rank = std::stoi(value);
    } else if (key == "rank_cap") {
      c.rank_cap = std::stoi(value);
    } else if (key == "parabolic") {
      c.parabolic = parse_parabolic(value);
    } else if (key == "lattice") {
      c.lattice = value;
    } else if (key == "prime") {
      c.prime = std::stoll(value);
    } else if (key == "congruence") {
      c.congruence = value == "true" || value == "1";
    } else if (key == "oracle") {
      c.oracle = value == "true" || value == "1";
    } else if (key == "oracle_cap") {
      c.oracle_cap = std::stoi(value);
    } else if (key == "emit_localized") {
      c.emit_localized = value == "true" || value == "1";
    } else if (key == "out") {
      c.out = value;
    } else if (key == "format") {
      c.format = value;
    } else if (key == "timings") {
      c.timings = value == "true" || value == "1";
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return c;
}

}  // namespace heckemod
