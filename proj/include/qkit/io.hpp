// JSON documents for vectors, operators and operator lists.
//
//   {"kind": "state",   "dims": [2, 2], "data": [[re, im], ...]}
//   {"kind": "density" | "unitary", "dims": [...], "data": [[[re, im], ...], ...]}
//   {"kind": "povm" | "instrument", "dims": [...], "labels": [...], "ops": [matrix, ...]}
//   {"kind": "kraus" | "superop", "d": 2, "ops": [matrix, ...]}
//
// "channel" is accepted as a synonym of "kraus" when it carries "dims".
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkit/channels.hpp"
#include "qkit/core.hpp"
#include "qkit/measurements.hpp"
#include "qkit/states.hpp"

namespace qkit {

using Json = nlohmann::ordered_json;

enum class DocKind { State, Density, Unitary, Povm, Instrument, Kraus, Superop };

const char* to_string(DocKind kind);

struct MatrixDoc {
  DocKind kind = DocKind::Density;
  SystemDims dims;
  std::vector<std::string> labels;  // povm and instrument only
  std::vector<CMatrix> matrices;    // one entry for state (a column), density and unitary
};

/// Schema violation; `pointer` is a JSON pointer such as "/ops/2/data/0/1".
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : Error(ErrorKind::Schema, pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

MatrixDoc parse_doc(const Json& j);
Json emit_doc(const MatrixDoc& doc);

/// Reads a file, or stdin when path is "-". Parse failures raise SchemaError at "".
Json read_json(const std::string& path);

Json matrix_to_json(const CMatrix& m);
Json vector_to_json(const CVector& v);
CMatrix matrix_from_json(const Json& j, const std::string& pointer = "");
CVector vector_from_json(const Json& j, const std::string& pointer = "");

MatrixDoc state_doc(const DensityOperator& rho);
MatrixDoc povm_doc(const POVM& povm);
MatrixDoc instrument_doc(const Instrument& inst);
MatrixDoc channel_doc(const KrausChannel& ch);

/// Interpretations of a parsed document; each throws SchemaError on a kind mismatch.
DensityOperator doc_to_state(const MatrixDoc& doc, const Tolerances& tol = {});
/// povm documents get the default square-root detection operators.
Instrument doc_to_instrument(const MatrixDoc& doc, const Tolerances& tol = {});
POVM doc_to_povm(const MatrixDoc& doc, const Tolerances& tol = {});
/// superop documents are converted through the Choi matrix.
KrausChannel doc_to_channel(const MatrixDoc& doc, const Tolerances& tol = {});

}  // namespace qkit
