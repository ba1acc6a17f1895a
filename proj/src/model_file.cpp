#include "chiral/model_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chiral/error.hpp"

namespace chiral {

using nlohmann::json;

namespace {

const char* kSchema = "chiral-model/1";

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) throw InputError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

// Rationals are written as "p/q" strings; plain integers are accepted too.
Scalar scalar_of(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (v.is_string()) return Scalar::parse(v.get<std::string>());
  throw InputError(where + ": expected a rational written as \"p/q\"");
}

Polynomial poly_of(const json& v, int nvars, const std::string& where) {
  if (v.is_number_integer()) return Polynomial::constant(nvars, Scalar(v.get<long>()));
  if (!v.is_string()) throw InputError(where + ": expected a polynomial string");
  return Polynomial::parse(v.get<std::string>(), nvars);
}

int index_of(const json& v, int limit, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": indices must be integers");
  int i = v.get<int>();
  if (i < 1 || i > limit) throw InputError(where + ": index " + std::to_string(i) + " out of range 1.." +
                                           std::to_string(limit));
  return i - 1;
}

LieData parse_lie(const json& j) {
  const std::string where = "lie";
  int dim = need_int(j, "dim", where);
  if (dim <= 0) throw InputError("lie: dimension must be positive");
  std::vector<LieData::Entry> entries;
  if (j.contains("brackets")) {
    for (const auto& e : j.at("brackets")) {
      if (!e.is_array() || e.size() != 4)
        throw InputError("lie: each bracket is [i, j, k, \"value\"] meaning [e_i, e_j] has value on e_k");
      entries.push_back({index_of(e[0], dim, where), index_of(e[1], dim, where), index_of(e[2], dim, where),
                         scalar_of(e[3], where)});
    }
  }
  return LieData::from_entries(dim, entries);
}

// anchor[j] lists the m components of a(e_j); structure entries are [j, k, l, "g"].
AlgebroidData parse_algebroid(const json& j, int m, int r, const std::string& where) {
  AlgebroidData a(m, r);
  const json& anchor = need(j, "anchor", where);
  if (!anchor.is_array() || static_cast<int>(anchor.size()) != r)
    throw InputError(where + ": \"anchor\" needs one vector field per frame element");
  for (int jj = 0; jj < r; ++jj) {
    if (!anchor[jj].is_array() || static_cast<int>(anchor[jj].size()) != m)
      throw InputError(where + ": anchor vector fields need " + std::to_string(m) + " components");
    for (int i = 0; i < m; ++i) a.set_anchor(i, jj, poly_of(anchor[jj][i], m, where));
  }
  if (j.contains("structure")) {
    for (const auto& e : j.at("structure")) {
      if (!e.is_array() || e.size() != 4) throw InputError(where + ": structure entries are [j, k, l, \"g\"]");
      int x = index_of(e[0], r, where), y = index_of(e[1], r, where), z = index_of(e[2], r, where);
      Polynomial g = poly_of(e[3], m, where);
      a.set_structure(x, y, z, a.structure(x, y, z) + g);
      a.set_structure(y, x, z, a.structure(y, x, z) - g);
    }
  }
  a.validate();
  return a;
}

std::vector<std::vector<Polynomial>> parse_vector_fields(const json& vf, int m, int count) {
  if (!vf.is_array() || static_cast<int>(vf.size()) != count)
    throw InputError("transformation: need one vector field per basis element");
  std::vector<std::vector<Polynomial>> fields;
  for (const auto& row : vf) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw InputError("transformation: vector fields need " + std::to_string(m) + " components");
    std::vector<Polynomial> f;
    for (const auto& c : row) f.push_back(poly_of(c, m, "transformation"));
    fields.push_back(std::move(f));
  }
  return fields;
}

// vector_fields[a] is the vector field by which e_a acts.
AlgebroidData transformation_of(const LieData& lie, const json& vf, int m) {
  AlgebroidData a = AlgebroidData::transformation(lie, parse_vector_fields(vf, m, lie.dim()), m);
  a.validate();
  return a;
}

ScalarMatrix matrix_of(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  ScalarMatrix out;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InputError(where + ": expected " + std::to_string(cols) + " columns");
    std::vector<Scalar> r;
    for (const auto& v : row) r.push_back(scalar_of(v, where));
    out.push_back(std::move(r));
  }
  return out;
}

PolyMatrix poly_matrix_of(const json& j, int n, int nvars, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  PolyMatrix out;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InputError(where + ": expected " + std::to_string(n) + " columns");
    std::vector<Polynomial> r;
    for (const auto& v : row) r.push_back(poly_of(v, nvars, where));
    out.push_back(std::move(r));
  }
  return out;
}

std::shared_ptr<Atlas> parse_atlas(const json& j) {
  int m = need_int(j, "m", "atlas"), r = need_int(j, "r", "atlas");
  std::vector<std::string> ids;
  for (const auto& c : need(j, "charts", "atlas")) ids.push_back(c.get<std::string>());
  if (ids.empty()) throw InputError("atlas: no charts");
  auto at = std::make_shared<Atlas>(m, r, ids);
  for (const auto& t : need(j, "transitions", "atlas")) {
    const std::string where = "transition";
    Transition tr;
    tr.source = at->index(need(t, "from", where).get<std::string>());
    tr.target = at->index(need(t, "to", where).get<std::string>());
    tr.T = matrix_of(need(t, "T", where), m, m, where + " T");
    const json& v = need(t, "v", where);
    if (!v.is_array() || static_cast<int>(v.size()) != m) throw InputError(where + ": v needs m entries");
    for (const auto& x : v) tr.v.push_back(scalar_of(x, where));
    tr.frame = poly_matrix_of(need(t, "frame", where), r, m, where + " frame");
    tr.frame_inverse = poly_matrix_of(need(t, "frame_inverse", where), r, m, where + " frame_inverse");
    at->add_transition(tr);
  }
  at->complete();
  at->validate();

  const json& ref = need(j, "algebroid", "atlas");
  std::string chart = ref.contains("chart") ? ref.at("chart").get<std::string>() : ids[0];
  if (at->index(chart) != 0) throw InputError("atlas: the reference algebroid must be given on the first chart");
  at->transport_from_first(parse_algebroid(ref, m, r, "atlas algebroid"));
  // Explicit chart data replaces the transported presentation; the gluing checks then
  // test whether it is consistent.
  if (j.contains("overrides"))
    for (const auto& o : j.at("overrides"))
      at->set_algebroid(at->index(need(o, "chart", "override").get<std::string>()),
                        parse_algebroid(o, m, r, "override"));
  return at;
}

}  // namespace

std::string kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Weil: return "weil";
    case ModelKind::Algebroid: return "algebroid";
    case ModelKind::Atlas: return "atlas";
    case ModelKind::Tensor: return "tensor";
  }
  return "?";
}

ModelFile parse_model_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("schema") && j.at("schema") != kSchema)
      throw InputError("unsupported model schema " + j.at("schema").dump());
    ModelFile mf;
    if (j.contains("name")) mf.name = j.at("name").get<std::string>();
    const std::string kind = need(j, "kind", "model").get<std::string>();
    if (j.contains("caps")) {
      const json& c = j.at("caps");
      mf.caps = Caps{need_int(c, "max-weight", "caps"), need_int(c, "max-poly-degree", "caps")};
    }
    if (kind == "weil") {
      mf.kind = ModelKind::Weil;
      mf.lie = parse_lie(need(j, "lie", "weil"));
      mf.has_lie = true;
    } else if (kind == "algebroid") {
      mf.kind = ModelKind::Algebroid;
      int m = need_int(j, "m", "algebroid");
      if (j.contains("transformation")) {
        const json& t = j.at("transformation");
        mf.lie = parse_lie(need(t, "lie", "transformation"));
        mf.algebroid = transformation_of(mf.lie, need(t, "vector_fields", "transformation"), m);
        mf.has_lie = true;
        mf.transformation = true;
      } else {
        mf.algebroid = parse_algebroid(j, m, need_int(j, "r", "algebroid"), "algebroid");
      }
    } else if (kind == "atlas") {
      mf.kind = ModelKind::Atlas;
      mf.atlas = parse_atlas(j);
    } else if (kind == "tensor") {
      mf.kind = ModelKind::Tensor;
      mf.lie = parse_lie(need(j, "lie", "tensor"));
      mf.has_lie = true;
      const json& f = need(j, "module", "tensor");
      const std::string fk = need(f, "kind", "module").get<std::string>();
      if (fk == "weil") {
        mf.factor = TensorFactor::Weil;
      } else if (fk == "trivial") {
        mf.factor = TensorFactor::Trivial;
        mf.trivial_m = need_int(f, "m", "module");
        mf.trivial_r = need_int(f, "r", "module");
        if (mf.trivial_m < 0 || mf.trivial_r < 0) throw InputError("module: negative rank");
      } else if (fk == "algebroid") {
        mf.factor = TensorFactor::Algebroid;
        int m = need_int(f, "m", "module");
        mf.algebroid = transformation_of(mf.lie, need(f, "vector_fields", "module"), m);
        mf.transformation = true;
      } else {
        throw InputError("module: unknown kind \"" + fk + "\"");
      }
    } else {
      throw InputError("unknown model kind \"" + kind + "\"");
    }
    return mf;
  } catch (const json::exception& e) {
    throw InputError(std::string("model file: ") + e.what());
  }
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_file(ss.str());
}

}  // namespace chiral
