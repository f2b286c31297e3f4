#include "twistkit/serialize.hpp"

namespace twistkit {

namespace {

nlohmann::json complex_to_json(const Complex& c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a complex entry as an [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

// shape of a nested array of rows, rejecting ragged or empty input
std::pair<Eigen::Index, Eigen::Index> checked_shape(const nlohmann::json& j, const char* who) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw std::invalid_argument(std::string(who) + ": expected a nested array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  for (const auto& row : j)
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument(std::string(who) + ": rows have unequal lengths");
  return {rows, cols};
}

}  // namespace

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const SiegelPoint& z) {
  return nlohmann::json{{"x", to_json(z.x)}, {"y", to_json(z.y)}};
}

nlohmann::json to_json(const ComplexPlane& w) { return to_json(w.basis); }

nlohmann::json to_json(const TorsionTensor& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const Matrix& m : t.comp) out.push_back(to_json(m));
  return out;
}

nlohmann::json to_json(const CurvatureTensor& r) {
  const int d = 2 * r.n;
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < d; ++j) row.push_back(to_json(r.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const auto [rows, cols] = checked_shape(j, "matrix");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        throw std::invalid_argument("matrix: entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  return m;
}

CMatrix cmatrix_from_json(const nlohmann::json& j) {
  const auto [rows, cols] = checked_shape(j, "complex matrix");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  return m;
}

SiegelPoint siegel_point_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw std::invalid_argument("siegel point: expected an object with \"x\" and \"y\"");
  return SiegelPoint(matrix_from_json(j["x"]), matrix_from_json(j["y"]));
}

ComplexPlane plane_from_json(const nlohmann::json& j) {
  return ComplexPlane(cmatrix_from_json(j));
}

TorsionTensor torsion_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || j.size() % 2 != 0)
    throw std::invalid_argument("torsion tensor: expected 2n component matrices");
  std::vector<Matrix> comp;
  comp.reserve(j.size());
  for (const auto& m : j) comp.push_back(matrix_from_json(m));
  return TorsionTensor(static_cast<int>(j.size()) / 2, std::move(comp));
}

CurvatureTensor curvature_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || j.size() % 2 != 0)
    throw std::invalid_argument("curvature tensor: expected a 2n x 2n array of matrices");
  const int d = static_cast<int>(j.size());
  std::vector<Matrix> val;
  val.reserve(static_cast<size_t>(d) * d);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("curvature tensor: expected a 2n x 2n array of matrices");
    for (const auto& m : row) val.push_back(matrix_from_json(m));
  }
  return CurvatureTensor(d / 2, std::move(val));
}

}  // namespace twistkit
