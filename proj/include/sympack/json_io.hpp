#pragma once

#include "sympack/forms.hpp"
#include "sympack/homology.hpp"
#include "sympack/packing.hpp"
#include "sympack/projective.hpp"
#include "sympack/ratmat.hpp"
#include "sympack/verify.hpp"

#include <json.hpp>

#include <fstream>

namespace sympack::io {

using nlohmann::json;

// ---- matrices -------------------------------------------------------------

inline json matrix_to_json(const linalg::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

inline linalg::Matrix matrix_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("rows"))
    throw std::invalid_argument("matrix JSON needs fields 'dim' and 'rows'");
  const int dim = j.at("dim").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw std::invalid_argument("matrix JSON: 'rows' must hold 'dim' rows");
  linalg::Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) +
                                  " has wrong length");
    for (int c = 0; c < dim; ++c) {
      const auto& cell = row.at(c);
      if (cell.is_string())
        m(i, c) = rat_to_double(rat_from_string(cell.get<std::string>()));
      else
        m(i, c) = cell.get<double>();
    }
  }
  return m;
}

/// Exact variant; numeric entries must be integral.
inline RatMat ratmat_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw std::invalid_argument("matrix JSON: 'rows' must hold 'dim' rows");
  RatMat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("matrix JSON: row has wrong length");
    for (int c = 0; c < dim; ++c) {
      const auto& cell = row.at(c);
      if (cell.is_string())
        m(i, c) = rat_from_string(cell.get<std::string>());
      else if (cell.is_number_integer())
        m(i, c) = Rat(cell.get<long long>());
      else
        throw std::invalid_argument(
            "exact matrix entries must be integers or 'p/q' strings");
    }
  }
  return m;
}

inline json ratmat_to_json(const RatMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m(i, c)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

// ---- lattice --------------------------------------------------------------

inline json class_to_json(const lattice::HomologyClass& c) {
  return json{{"k", c.k}, {"b", c.b}, {"m", c.m}};
}

inline lattice::HomologyClass class_from_json(const json& j) {
  lattice::HomologyClass c;
  c.k = j.at("k").get<int>();
  c.b = j.at("b").get<long long>();
  c.m = j.at("m").get<std::vector<long long>>();
  if (static_cast<int>(c.m.size()) != c.k)
    throw std::invalid_argument("class JSON: m must have k entries");
  return c;
}

inline json configuration_to_json(const lattice::Configuration& cfg) {
  json pts = json::array();
  for (const auto& p : cfg.pts) {
    json coords = json::array();
    for (const auto& c : p.x) coords.push_back(c.str());
    pts.push_back(std::move(coords));
  }
  return json{{"points", std::move(pts)}};
}

inline lattice::Configuration configuration_from_json(const json& j) {
  if (!j.contains("points"))
    throw std::invalid_argument("configuration JSON needs field 'points'");
  std::vector<lattice::ProjPoint> pts;
  for (const auto& coords : j.at("points")) {
    if (!coords.is_array() || coords.size() != 3)
      throw std::invalid_argument("each point needs 3 homogeneous coordinates");
    std::array<Rat, 3> c;
    for (int i = 0; i < 3; ++i) {
      const auto& cell = coords.at(i);
      if (cell.is_string())
        c[i] = rat_from_string(cell.get<std::string>());
      else if (cell.is_number_integer())
        c[i] = Rat(cell.get<long long>());
      else
        throw std::invalid_argument(
            "point coordinates must be integers or 'p/q' strings");
    }
    pts.push_back(lattice::make_point(c));
  }
  return lattice::Configuration::of(std::move(pts));
}

// ---- packing --------------------------------------------------------------

inline json packing_result_to_json(const packing::PackingResult& r) {
  json j{{"feasible", r.feasible},
         {"ratio", rat_to_string(r.ratio)},
         {"certificate", r.certificate},
         {"chern_pairing", rat_to_string(r.chern_pairing)},
         {"chern_positive", r.chern_pairing > 0},
         {"volume_binding", r.volume_binding}};
  if (r.binding) j["binding"] = class_to_json(*r.binding);
  return j;
}

inline json packing_number_to_json(const packing::PackingNumber& p) {
  json j{{"k", p.k},
         {"p", rat_to_string(p.value)},
         {"lambda_star_sq", rat_to_string(p.lambda_star_sq)},
         {"volume_binds", p.volume_binds}};
  if (p.binding) j["binding"] = class_to_json(*p.binding);
  return j;
}

// ---- verification reports ---------------------------------------------------

inline json cvec_to_json(const local::CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

inline json check_report_to_json(const local::CheckReport& r) {
  json j{{"check", r.check},
         {"region", r.region},
         {"samples", r.samples},
         {"max_residual", r.max_residual},
         {"tol", r.tol},
         {"pass", r.pass}};
  if (r.worst)
    j["witness"] = json{{"z", cvec_to_json(r.worst->z)},
                        {"v", cvec_to_json(r.worst->v)},
                        {"w", cvec_to_json(r.worst->w)},
                        {"value", r.worst->value}};
  return j;
}

// ---- files ------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace sympack::io
