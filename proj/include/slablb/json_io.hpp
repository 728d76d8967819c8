#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "slablb/poly.hpp"
#include "slablb/rational.hpp"

namespace slablb {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) {
  return Json{{"num", int_str(num(r))}, {"den", int_str(den(r))}};
}

inline Rational rational_from_json(const Json& j) {
  return rat_from_strings(j.at("num").get<std::string>(),
                          j.at("den").get<std::string>());
}

// {num_vars, degree_bound, terms:[{exps:[..], num:"..", den:".."}]}
inline Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json{{"exps", e},
                         {"num", int_str(num(c))},
                         {"den", int_str(den(c))}});
  }
  return Json{{"num_vars", p.num_vars()},
              {"degree_bound", p.degree_bound()},
              {"terms", terms}};
}

inline MultiPoly multipoly_from_json(const Json& j) {
  MultiPoly p(j.at("num_vars").get<int>(), j.at("degree_bound").get<int>());
  for (const auto& t : j.at("terms")) {
    p.add_term(t.at("exps").get<ExponentTuple>(),
               rat_from_strings(t.at("num").get<std::string>(),
                                t.at("den").get<std::string>()));
  }
  return p;
}

inline Json to_json(const UniPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"coeffs", coeffs}};
}

inline UniPoly unipoly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& v : j.at("coeffs")) c.push_back(rational_from_json(v));
  return UniPoly(std::move(c));
}

// write-temp-then-rename so report files are never observed half-written
inline void write_file_atomic(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << body;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return Json::parse(in);
}

}  // namespace slablb
