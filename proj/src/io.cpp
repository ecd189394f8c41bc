#include "qkit/io.hpp"

#include <fstream>
#include <iostream>

namespace qkit {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

const Json& field(const Json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(pointer, key), "missing field");
  return *it;
}

Complex complex_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(pointer, "expected [re, im]");
  for (std::size_t k = 0; k < 2; ++k) {
    if (!j[k].is_number()) throw SchemaError(at(pointer, k), "expected a number");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

SystemDims dims_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) throw SchemaError(pointer, "expected a nonempty list of dimensions");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_integer() || j[k].get<long long>() < 1) {
      throw SchemaError(at(pointer, k), "dimension must be a positive integer");
    }
    dims.push_back(j[k].get<std::size_t>());
  }
  try {
    return SystemDims(std::move(dims));
  } catch (const Error& e) {
    throw SchemaError(pointer, e.what());
  }
}

Json dims_to_json(const SystemDims& dims) {
  Json out = Json::array();
  for (auto d : dims.values()) out.push_back(d);
  return out;
}

std::vector<CMatrix> ops_from_json(const Json& j, const std::string& pointer, std::size_t d) {
  if (!j.is_array() || j.empty()) throw SchemaError(pointer, "expected a nonempty list of matrices");
  std::vector<CMatrix> ops;
  for (std::size_t k = 0; k < j.size(); ++k) {
    CMatrix m = matrix_from_json(j[k], at(pointer, k));
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw SchemaError(at(pointer, k), "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    ops.push_back(std::move(m));
  }
  return ops;
}

void require_kind(const MatrixDoc& doc, std::initializer_list<DocKind> allowed, const char* what) {
  for (auto k : allowed) {
    if (doc.kind == k) return;
  }
  throw SchemaError("/kind", std::string("document of kind '") + to_string(doc.kind) + "' is not " + what);
}

}  // namespace

const char* to_string(DocKind kind) {
  switch (kind) {
    case DocKind::State: return "state";
    case DocKind::Density: return "density";
    case DocKind::Unitary: return "unitary";
    case DocKind::Povm: return "povm";
    case DocKind::Instrument: return "instrument";
    case DocKind::Kraus: return "kraus";
    case DocKind::Superop: return "superop";
  }
  return "unknown";
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) throw SchemaError(pointer, "expected a nonempty list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw SchemaError(at(pointer, 0), "expected a nonempty row");
  const std::size_t cols = j[0].size();
  require_dim_cap(rows, cols);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row_ptr = at(pointer, i);
    if (!j[i].is_array() || j[i].size() != cols) {
      throw SchemaError(row_ptr, "expected a row of length " + std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k], at(row_ptr, k));
    }
  }
  return m;
}

CVector vector_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) throw SchemaError(pointer, "expected a nonempty list of amplitudes");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], at(pointer, i));
  return v;
}

MatrixDoc parse_doc(const Json& j) {
  const Json& kind_json = field(j, "", "kind");
  if (!kind_json.is_string()) throw SchemaError("/kind", "expected a string");
  const auto kind = kind_json.get<std::string>();
  MatrixDoc doc;

  if (kind == "kraus" || kind == "superop") {
    doc.kind = kind == "kraus" ? DocKind::Kraus : DocKind::Superop;
    const Json& dj = field(j, "", "d");
    if (!dj.is_number_integer() || dj.get<long long>() < 1) throw SchemaError("/d", "expected a positive integer");
    const auto d = dj.get<std::size_t>();
    doc.dims = SystemDims::single(d);
    doc.matrices = ops_from_json(field(j, "", "ops"), "/ops", doc.kind == DocKind::Kraus ? d : d * d);
    if (doc.kind == DocKind::Superop && doc.matrices.size() != 1) {
      throw SchemaError("/ops", "a superop document holds exactly one matrix");
    }
    return doc;
  }

  doc.dims = dims_from_json(field(j, "", "dims"), "/dims");
  const std::size_t d = doc.dims.total();
  if (kind == "state") {
    doc.kind = DocKind::State;
    CVector v = vector_from_json(field(j, "", "data"), "/data");
    if (static_cast<std::size_t>(v.size()) != d) {
      throw SchemaError("/data", "length " + std::to_string(v.size()) + " does not match dims " + doc.dims.to_string());
    }
    doc.matrices.push_back(CMatrix(v));
  } else if (kind == "density" || kind == "unitary") {
    doc.kind = kind == "density" ? DocKind::Density : DocKind::Unitary;
    CMatrix m = matrix_from_json(field(j, "", "data"), "/data");
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw SchemaError("/data", "shape does not match dims " + doc.dims.to_string());
    }
    doc.matrices.push_back(std::move(m));
  } else if (kind == "povm" || kind == "instrument" || kind == "channel") {
    doc.kind = kind == "povm" ? DocKind::Povm : kind == "instrument" ? DocKind::Instrument : DocKind::Kraus;
    doc.matrices = ops_from_json(field(j, "", "ops"), "/ops", d);
    if (auto it = j.find("labels"); it != j.end() && doc.kind != DocKind::Kraus) {
      if (!it->is_array() || it->size() != doc.matrices.size()) {
        throw SchemaError("/labels", "expected one label per operator");
      }
      for (std::size_t k = 0; k < it->size(); ++k) {
        if (!(*it)[k].is_string()) throw SchemaError(at("/labels", k), "expected a string");
        doc.labels.push_back((*it)[k].get<std::string>());
      }
    }
  } else {
    throw SchemaError("/kind", "unknown kind '" + kind + "'");
  }
  return doc;
}

Json emit_doc(const MatrixDoc& doc) {
  Json j;
  j["kind"] = to_string(doc.kind);
  switch (doc.kind) {
    case DocKind::Kraus:
    case DocKind::Superop: {
      j["d"] = doc.dims.total();
      Json ops = Json::array();
      for (const auto& m : doc.matrices) ops.push_back(matrix_to_json(m));
      j["ops"] = std::move(ops);
      break;
    }
    case DocKind::State:
      j["dims"] = dims_to_json(doc.dims);
      j["data"] = vector_to_json(doc.matrices.at(0).col(0));
      break;
    case DocKind::Density:
    case DocKind::Unitary:
      j["dims"] = dims_to_json(doc.dims);
      j["data"] = matrix_to_json(doc.matrices.at(0));
      break;
    case DocKind::Povm:
    case DocKind::Instrument: {
      j["dims"] = dims_to_json(doc.dims);
      if (!doc.labels.empty()) j["labels"] = doc.labels;
      Json ops = Json::array();
      for (const auto& m : doc.matrices) ops.push_back(matrix_to_json(m));
      j["ops"] = std::move(ops);
      break;
    }
  }
  return j;
}

Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw SchemaError("", "cannot open '" + path + "'");
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

MatrixDoc state_doc(const DensityOperator& rho) { return {DocKind::Density, rho.dims(), {}, {rho.matrix()}}; }

MatrixDoc povm_doc(const POVM& povm) {
  return {DocKind::Povm, SystemDims::single(povm.dim()), povm.labels, povm.elements};
}

MatrixDoc instrument_doc(const Instrument& inst) {
  return {DocKind::Instrument, SystemDims::single(inst.dim()), inst.labels, inst.detection_ops};
}

MatrixDoc channel_doc(const KrausChannel& ch) {
  return {DocKind::Kraus, SystemDims::single(ch.dim()), {}, ch.kraus_ops};
}

DensityOperator doc_to_state(const MatrixDoc& doc, const Tolerances& tol) {
  require_kind(doc, {DocKind::State, DocKind::Density}, "a state");
  if (doc.kind == DocKind::State) {
    const CVector v = doc.matrices.at(0).col(0);
    if (std::abs(v.norm() - 1.0) > 1e-9) throw SchemaError("/data", "state vector is not normalized");
    return DensityOperator::pure(v, doc.dims);
  }
  return DensityOperator::from(doc.matrices.at(0), doc.dims, tol);
}

POVM doc_to_povm(const MatrixDoc& doc, const Tolerances& tol) {
  require_kind(doc, {DocKind::Povm, DocKind::Instrument}, "a measurement");
  if (doc.kind == DocKind::Instrument) return detection_to_povm(doc_to_instrument(doc, tol));
  auto v = assert_povm(doc.matrices, doc.labels, tol);
  if (!v) throw SchemaError("/ops", "not a POVM: " + v.diagnostic().to_string());
  return v.value();
}

Instrument doc_to_instrument(const MatrixDoc& doc, const Tolerances& tol) {
  require_kind(doc, {DocKind::Povm, DocKind::Instrument}, "a measurement");
  if (doc.kind == DocKind::Povm) return povm_to_detection(doc_to_povm(doc, tol), {}, tol);
  auto v = assert_instrument(doc.matrices, doc.labels);
  if (!v) throw SchemaError("/ops", "not an instrument: " + v.diagnostic().to_string());
  return v.value();
}

KrausChannel doc_to_channel(const MatrixDoc& doc, const Tolerances& tol) {
  require_kind(doc, {DocKind::Kraus, DocKind::Superop}, "a channel");
  std::vector<CMatrix> ops = doc.matrices;
  if (doc.kind == DocKind::Superop) {
    ops = kraus_from_choi(choi(LinearMap::from_superoperator(doc.matrices.at(0))), tol).kraus_ops;
  }
  auto v = assert_channel(std::move(ops), tol);
  if (!v) throw SchemaError("/ops", "not a channel: " + v.diagnostic().to_string());
  return v.value();
}

}  // namespace qkit
