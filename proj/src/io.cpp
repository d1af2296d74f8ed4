#include "antilinear/io.hpp"

#include <cmath>
#include <sstream>

namespace antilinear::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) fail(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " is not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(std::string(what) + " is not finite");
  return x;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " is not an array");
  return j;
}

void expect_schema(const Json& doc, std::string_view want) {
  const std::string got = schema_of(doc);
  if (got != want) fail("expected a " + std::string(want) + " document, got '" + got + "'");
}

}  // namespace

Json parse_document(std::string_view text) {
  Json doc = Json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) fail("input is not valid JSON");
  return doc;
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

std::string schema_of(const Json& doc) {
  const Json& s = field(doc, "schema");
  if (!s.is_string()) fail("'schema' is not a string");
  return s.get<std::string>();
}

Json complex_to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const Json& j) {
  // plain numbers are accepted as real values
  if (j.is_number()) return number(j, "value");
  return {number(field(j, "re"), "re"), number(field(j, "im"), "im")};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (const cplx& z : v) out.push_back(complex_to_json(z));
  return out;
}

CVector vector_from_json(const Json& j) {
  array(j, "vector");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

Json measure_to_json(const PlanarAtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms) atoms.push_back(Json{{"point", complex_to_json(a.point)}, {"weight", a.weight}});
  return Json{{"schema", "measure"}, {"atoms", atoms}};
}

Json measure_to_json(const BiradialMeasure& rho) { return measure_to_json(rho.as_planar()); }

PlanarAtomicMeasure measure_from_json(const Json& doc) {
  expect_schema(doc, "measure");
  PlanarAtomicMeasure mu;
  for (const Json& a : array(field(doc, "atoms"), "atoms"))
    mu.atoms.push_back({complex_from_json(field(a, "point")), number(field(a, "weight"), "weight")});
  return mu;
}

Json jacobi_to_json(const JacobiParams& p) {
  Json alphas = Json::array();
  for (const cplx& a : p.alphas) alphas.push_back(complex_to_json(a));
  return Json{{"schema", "jacobi"}, {"alphas", alphas}, {"betas", p.betas}};
}

JacobiParams jacobi_from_json(const Json& doc) {
  expect_schema(doc, "jacobi");
  JacobiParams p;
  for (const Json& a : array(field(doc, "alphas"), "alphas")) p.alphas.push_back(complex_from_json(a));
  for (const Json& b : array(field(doc, "betas"), "betas")) p.betas.push_back(number(b, "beta"));
  return p;
}

Json matrix_to_json(const CMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) rows.push_back(vector_to_json(M.row(i).transpose()));
  return Json{{"schema", "matrix"}, {"rows", rows}};
}

CMatrix matrix_from_json(const Json& doc) {
  expect_schema(doc, "matrix");
  const Json& rows = array(field(doc, "rows"), "rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index cols = n == 0 ? 0 : static_cast<Eigen::Index>(array(rows[0], "row").size());
  CMatrix M(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CVector r = vector_from_json(rows[static_cast<std::size_t>(i)]);
    if (r.size() != cols) {
      std::ostringstream os;
      os << "row " << i << " has " << r.size() << " entries, expected " << cols;
      fail(os.str());
    }
    M.row(i) = r.transpose();
  }
  return M;
}

Json moments_to_json(const MomentSequence& m) {
  Json out = Json::array();
  for (const cplx& z : m.m) out.push_back(complex_to_json(z));
  return Json{{"schema", "moments"}, {"moments", out}};
}

MomentSequence moments_from_json(const Json& doc) {
  expect_schema(doc, "moments");
  MomentSequence m;
  for (const Json& z : array(field(doc, "moments"), "moments")) m.m.push_back(complex_from_json(z));
  return m;
}

Json report(std::string_view command) { return Json{{"schema", "report"}, {"command", command}}; }

}  // namespace antilinear::io
