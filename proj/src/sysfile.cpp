#include "lieq/sysfile.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace lieq {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> parts;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) parts.push_back(w);
  return parts;
}

VField parse_field(const std::string& value, const std::vector<std::string>& vars,
                   const std::string& key) {
  const std::vector<std::string> comps = split(value, ',');
  if (comps.size() != vars.size())
    throw FileError(key + " has " + std::to_string(comps.size()) + " components, expected " +
                    std::to_string(vars.size()));
  std::vector<Poly> polys;
  polys.reserve(comps.size());
  for (const auto& c : comps) polys.push_back(parse_polynomial(c, vars));
  return VField(vars, std::move(polys));
}

}  // namespace

SystemSpec parse_system_text(std::string_view text) {
  std::vector<std::string> vars;
  std::map<int, VField> controls;
  std::optional<VField> drift;
  std::optional<std::vector<Rational>> equilibrium;
  std::vector<int> asserted;

  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw FileError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "vars") {
      vars = split_ws(value);
      if (vars.empty()) throw FileError("vars must name at least one variable");
    } else if (key == "drift") {
      if (vars.empty()) throw FileError("vars must come before drift");
      drift = parse_field(value, vars, key);
    } else if (key.rfind("control_", 0) == 0) {
      if (vars.empty()) throw FileError("vars must come before controls");
      int idx = 0;
      try {
        idx = std::stoi(key.substr(8));
      } catch (...) {
        throw FileError("bad control key '" + key + "'");
      }
      if (idx < 1) throw FileError("control indices start at 1");
      controls.emplace(idx, parse_field(value, vars, key));
    } else if (key == "equilibrium") {
      std::vector<Rational> p;
      for (const auto& c : split(value, ',')) p.push_back(parse_rational(c));
      equilibrium = std::move(p);
    } else if (key == "assert_complete") {
      for (const auto& w : split_ws(value)) {
        try {
          asserted.push_back(std::stoi(w));
        } catch (...) {
          throw FileError("bad assert_complete index '" + w + "'");
        }
      }
    } else {
      throw FileError("unknown key '" + key + "' on line " + std::to_string(lineno));
    }
  }

  if (vars.empty()) throw FileError("missing vars");
  if (!drift) throw FileError("missing drift");
  if (controls.empty()) throw FileError("at least one control_k is required");
  std::vector<VField> ctrl;
  int expect = 1;
  for (const auto& [idx, g] : controls) {
    if (idx != expect)
      throw FileError("control indices must be consecutive starting at control_1");
    ++expect;
    ctrl.push_back(g);
  }
  if (equilibrium && equilibrium->size() != vars.size())
    throw FileError("equilibrium dimension does not match vars");

  SystemSpec spec(vars, *drift, std::move(ctrl));
  spec.candidate_equilibrium = equilibrium;
  for (int idx : asserted) {
    if (idx < 0 || idx > static_cast<int>(spec.controls.size()))
      throw FileError("assert_complete index out of range");
    spec.assert_complete[static_cast<std::size_t>(idx)] = true;
  }
  return spec;
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_text(buf.str());
}

std::string write_system_text(const SystemSpec& s) {
  std::ostringstream os;
  os << "vars =";
  for (const auto& v : s.vars) os << " " << v;
  os << "\n";
  auto field_line = [&](const std::string& key, const VField& f) {
    os << key << " = ";
    for (std::size_t i = 0; i < f.dimension(); ++i) {
      if (i) os << ", ";
      os << f.component(i).str();
    }
    os << "\n";
  };
  field_line("drift", s.drift);
  for (std::size_t k = 0; k < s.controls.size(); ++k)
    field_line("control_" + std::to_string(k + 1), s.controls[k]);
  if (s.candidate_equilibrium) {
    os << "equilibrium = ";
    for (std::size_t i = 0; i < s.candidate_equilibrium->size(); ++i) {
      if (i) os << ", ";
      os << to_string((*s.candidate_equilibrium)[i]);
    }
    os << "\n";
  }
  bool any = false;
  for (std::size_t k = 0; k < s.assert_complete.size(); ++k)
    if (s.assert_complete[k]) {
      if (!any) os << "assert_complete =";
      any = true;
      os << " " << k;
    }
  if (any) os << "\n";
  return os.str();
}

}  // namespace lieq
