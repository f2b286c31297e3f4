#pragma once

// JSON encoding of the library types. Matrices go to row-major nested arrays,
// complex entries to [re, im] pairs, and the structured types to small objects
// built from those. Decoders validate shape and reject malformed input.

#include <string>

#include "json.hpp"

#include "twistkit/integrability.hpp"
#include "twistkit/lagrangian.hpp"
#include "twistkit/siegel.hpp"
#include "twistkit/types.hpp"

namespace twistkit {

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const CMatrix& m);
nlohmann::json to_json(const SiegelPoint& z);   // {"x": [[...]], "y": [[...]]}
nlohmann::json to_json(const ComplexPlane& w);  // 2n x n nested [re, im] pairs
nlohmann::json to_json(const TorsionTensor& t);
nlohmann::json to_json(const CurvatureTensor& r);

Matrix matrix_from_json(const nlohmann::json& j);
CMatrix cmatrix_from_json(const nlohmann::json& j);
SiegelPoint siegel_point_from_json(const nlohmann::json& j);
ComplexPlane plane_from_json(const nlohmann::json& j);
TorsionTensor torsion_from_json(const nlohmann::json& j);
CurvatureTensor curvature_from_json(const nlohmann::json& j);

}  // namespace twistkit
