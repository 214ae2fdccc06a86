#include "mage/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "mage/errors.hpp"

namespace mage {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_sign(std::string_view v, const std::string& key) {
  if (v == "1" || v == "+1") return 1;
  if (v == "-1") return -1;
  throw ParseError(key + " must be 1 or -1, got '" + std::string(v) + "'");
}

double parse_double(std::string_view v, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(std::string(v), &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ParseError(key + " must be a number, got '" + std::string(v) + "'");
}

std::uint64_t parse_seed(std::string_view v) {
  int base = 10;
  if (v.starts_with("0x") || v.starts_with("0X")) {
    v.remove_prefix(2);
    base = 16;
  }
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError("seed must be a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

}  // namespace

SampleOptions RunConfig::sample_options() const {
  SampleOptions o;
  o.seed = seed;
  o.tolerance = tolerance;
  o.half_width = box;
  return o;
}

void RunConfig::validate() const {
  if (!(tolerance > 0)) throw ParseError("tolerance must be positive");
  if (!(box > 0)) throw ParseError("box must be positive");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::size_t offset = 0;
  std::set<std::string> seen;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(offset, end - offset));
    std::size_t line_start = offset;
    offset = end + 1;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("config: unterminated section header", line_start);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "structure" && section != "fluids" && section != "generalized" && section != "run")
        throw ParseError("config: unknown section [" + section + "]", line_start);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected key = value", line_start);
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ParseError("config: key '" + key + "' outside a section", line_start);
    if (!seen.insert(section + "." + key).second)
      throw ParseError("config: duplicate key " + section + "." + key, line_start);
    auto unknown = [&] { return ParseError("config: unknown key '" + key + "' in [" + section + "]", line_start); };

    if (section == "structure") {
      if (key.size() != 1 || key[0] < 'A' || key[0] > 'E') throw unknown();
      cfg.structure[key] = std::string(value);
    } else if (section == "fluids") {
      if (key == "a")
        cfg.velocity_a = std::string(value);
      else if (key == "b")
        cfg.velocity_b = std::string(value);
      else if (key == "dP")
        cfg.fluid_dP = std::string(value);
      else if (key == "f")
        cfg.stream = std::string(value);
      else
        throw unknown();
    } else if (section == "generalized") {
      if (key.size() == 4 && key.starts_with("eps") && key[3] >= '1' && key[3] <= '3')
        cfg.eps[key[3] - '1'] = parse_sign(value, key);
      else if (key.size() == 2 && key[0] == 'a' && key[1] >= '1' && key[1] <= '3')
        cfg.combo[key[1] - '1'] = std::string(value);
      else if (key == "dP")
        cfg.generalized_dP = std::string(value);
      else
        throw unknown();
    } else {
      if (key == "tolerance")
        cfg.tolerance = parse_double(value, key);
      else if (key == "seed")
        cfg.seed = parse_seed(value);
      else if (key == "box")
        cfg.box = parse_double(value, key);
      else
        throw unknown();
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace mage
