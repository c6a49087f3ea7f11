#include "lmicenter/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lmicenter {

namespace {

using nlohmann::json;

double finite_double(const json& j, const std::string& field) {
  if (!j.is_number()) {
    throw ParseError("field '" + field + "': expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError("field '" + field + "': entry is not finite");
  }
  return v;
}

std::complex<double> parse_entry(const json& j, const std::string& field) {
  if (j.is_array()) {
    if (j.size() != 2) {
      throw ParseError("field '" + field +
                       "': complex entry must be a [re, im] pair");
    }
    return {finite_double(j[0], field), finite_double(j[1], field)};
  }
  return {finite_double(j, field), 0.0};
}

MatrixXcd parse_matrix(const json& doc, const std::string& field,
                       Eigen::Index rows, Eigen::Index cols) {
  if (!doc.contains(field)) {
    throw ParseError("missing field '" + field + "'");
  }
  const json& j = doc.at(field);
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError("field '" + field + "': expected " +
                     std::to_string(rows) + " rows");
  }
  MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("field '" + field + "': row " + std::to_string(i) +
                       " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = parse_entry(row[k], field);
    }
  }
  return m;
}

HermitianMatrix parse_hermitian(const json& doc, const std::string& field,
                                Eigen::Index n) {
  const MatrixXcd m = parse_matrix(doc, field, n, n);
  if (!m.isApprox(m.adjoint(), 0.0)) {
    throw ParseError("field '" + field + "': matrix is not Hermitian");
  }
  return HermitianMatrix(m);
}

json entry_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(entry_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::Index parse_dim(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc.at(field).is_number_integer()) {
    throw ParseError("field '" + field + "': expected a positive integer");
  }
  const auto v = doc.at(field).get<std::int64_t>();
  if (v <= 0 || v > 10000) {
    throw ParseError("field '" + field + "': dimension out of range");
  }
  return static_cast<Eigen::Index>(v);
}

}  // namespace

ModelDocument parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("top level must be a JSON object");
  }

  if (!doc.contains("time_domain") || !doc.at("time_domain").is_string()) {
    throw ParseError("field 'time_domain': expected a string");
  }
  const std::string domain_str = doc.at("time_domain").get<std::string>();
  TimeDomain domain;
  if (domain_str == "continuous") {
    domain = TimeDomain::continuous;
  } else if (domain_str == "discrete") {
    domain = TimeDomain::discrete;
  } else {
    throw ParseError(
        "field 'time_domain': must be 'continuous' or 'discrete'");
  }

  const Eigen::Index n = parse_dim(doc, "n");
  const Eigen::Index m = parse_dim(doc, "m");

  ModelDocument out;
  try {
    out.model = StateSpaceModel(parse_matrix(doc, "A", n, n),
                                parse_matrix(doc, "B", n, m),
                                parse_matrix(doc, "C", m, n),
                                parse_matrix(doc, "D", m, m), domain);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("model validation failed: ") + e.what());
  }

  if (doc.contains("weight")) {
    const json& w = doc.at("weight");
    if (!w.is_object()) {
      throw ParseError("field 'weight': expected an object");
    }
    GeneralizedWeight weight;
    weight.Q = parse_hermitian(w, "Q", n);
    weight.Cw = parse_matrix(w, "C", m, n);
    weight.R = parse_hermitian(w, "R", m);
    out.weight = std::move(weight);
  }
  if (doc.contains("X")) {
    out.x = parse_hermitian(doc, "X", n);
  }
  return out;
}

ModelDocument read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const ModelDocument& doc) {
  json j;
  j["time_domain"] = doc.model.time_domain == TimeDomain::continuous
                         ? "continuous"
                         : "discrete";
  j["n"] = doc.model.n();
  j["m"] = doc.model.m();
  j["A"] = matrix_to_json(doc.model.A);
  j["B"] = matrix_to_json(doc.model.B);
  j["C"] = matrix_to_json(doc.model.C);
  j["D"] = matrix_to_json(doc.model.D);
  if (doc.weight) {
    json w;
    w["Q"] = matrix_to_json(doc.weight->Q.mat());
    w["C"] = matrix_to_json(doc.weight->Cw);
    w["R"] = matrix_to_json(doc.weight->R.mat());
    j["weight"] = std::move(w);
  }
  if (doc.x) {
    j["X"] = matrix_to_json(doc.x->mat());
  }
  return j.dump(2) + "\n";
}

void write_model(const std::string& path, const ModelDocument& doc) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open file for writing: " + path);
  }
  out << serialize_model(doc);
}

}  // namespace lmicenter
