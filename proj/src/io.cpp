#include "gmlattice/io.hpp"

#include "gmlattice/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace gmlat {

namespace {

[[noreturn]] void bad(const std::string& message) { throw LatticeError(ErrorKind::InvalidInput, message); }

Integer parse_token(const std::string& token) {
  auto v = parse_integer(token);
  if (!v) bad("not an integer: '" + token + "'");
  return *v;
}

}  // namespace

GramLattice parse_gram_text(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  if (!(in >> token)) bad("empty Gram file");
  const Integer rank = parse_token(token);
  if (rank < 0 || rank > 4096) bad("rank out of range");
  const auto n = rank.convert_to<Eigen::Index>();
  IntMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(in >> token)) bad("Gram file ends early: expected " + std::to_string(n * n) + " entries");
      g(i, j) = parse_token(token);
    }
  }
  if (in >> token) bad("trailing data after the Gram matrix: '" + token + "'");
  return GramLattice(std::move(g));
}

std::string format_gram_text(const GramLattice& lattice) {
  std::ostringstream out;
  out << lattice.rank() << "\n";
  for (Eigen::Index i = 0; i < lattice.rank(); ++i) {
    for (Eigen::Index j = 0; j < lattice.rank(); ++j) {
      if (j > 0) out << " ";
      out << lattice.gram()(i, j);
    }
    out << "\n";
  }
  return out.str();
}

Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return to_string(x);
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_token(j.get<std::string>());
  bad("expected an integer in JSON");
}

Json vector_to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(integer_to_json(v(i)));
  return out;
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  LatticeVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from_json(j[i]);
  return v;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged matrix in JSON");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = integer_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json gram_to_json(const GramLattice& lattice) {
  Json out;
  out["gram"] = matrix_to_json(lattice.gram());
  if (!lattice.name().empty()) out["name"] = lattice.name();
  return out;
}

GramLattice gram_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) bad("expected an object with a \"gram\" field");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad("\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  return GramLattice(matrix_from_json(j["gram"]), std::move(name));
}

GramLattice parse_gram(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      bad(std::string("malformed JSON: ") + e.what());
    }
    return gram_from_json(j);
  }
  return parse_gram_text(text);
}

GramLattice read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_gram(buffer.str());
}

IntMatrix parse_basis(const std::string& text, Eigen::Index rank) {
  std::vector<LatticeVector> vectors;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::stringstream coords(group);
    std::string token;
    std::vector<Integer> values;
    while (std::getline(coords, token, ',')) values.push_back(parse_token(token));
    if (static_cast<Eigen::Index>(values.size()) != rank) {
      bad("basis vector '" + group + "' needs " + std::to_string(rank) + " coordinates");
    }
    LatticeVector v(rank);
    for (Eigen::Index i = 0; i < rank; ++i) v(i) = values[static_cast<std::size_t>(i)];
    vectors.push_back(std::move(v));
  }
  IntMatrix basis(rank, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return basis;
}

Json discriminant_to_json(const DiscriminantData& data) {
  Json out;
  out["invariant_factors"] = Json::array();
  for (const auto& d : data.invariant_factors) out["invariant_factors"].push_back(integer_to_json(d));
  out["generators"] = Json::array();
  for (const auto& g : data.generators) {
    Json lift = Json::array();
    for (Eigen::Index i = 0; i < g.size(); ++i) lift.push_back(to_string(g(i)));
    out["generators"].push_back(std::move(lift));
  }
  out["qvalues"] = Json::array();
  for (const auto& q : data.qvalues) out["qvalues"].push_back(to_string(q) + " mod 2");
  out["bmatrix"] = Json::array();
  for (Eigen::Index i = 0; i < data.bmatrix.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < data.bmatrix.cols(); ++j) row.push_back(to_string(data.bmatrix(i, j)) + " mod 1");
    out["bmatrix"].push_back(std::move(row));
  }
  return out;
}

Json report_to_json(const DivisorReport& r) {
  Json out;
  out["d"] = integer_to_json(r.d);
  out["admissible"] = r.admissible;
  out["divisor"] = to_string(r.divisor);
  out["star2"] = r.star2;
  out["star2_twisted"] = r.star2_twisted;
  if (r.star3) {
    out["star3"] = {{"n", integer_to_json(r.star3->n)}, {"a", integer_to_json(r.star3->a)}};
  } else {
    out["star3"] = nullptr;
  }
  out["dm_isomorphic"] = r.dm_isomorphic ? Json(*r.dm_isomorphic) : Json(nullptr);
  Json witnesses;
  if (r.twisted) {
    witnesses["twisted"] = {{"x", integer_to_json(r.twisted->x)},
                            {"y", integer_to_json(r.twisted->y)},
                            {"i", integer_to_json(r.twisted->i)}};
  } else {
    witnesses["twisted"] = nullptr;
  }
  if (r.hilb2) {
    witnesses["hilb2"] = {{"gram", matrix_to_json(r.hilb2->gram)}, {"w", vector_to_json(r.hilb2->w)}};
  } else {
    witnesses["hilb2"] = nullptr;
  }
  if (r.k3) {
    witnesses["k3"] = {{"u_basis", Json::array({vector_to_json(r.k3->v), vector_to_json(r.k3->w)})},
                       {"complement_gen", vector_to_json(r.k3->complement_gen)}};
  } else {
    witnesses["k3"] = nullptr;
  }
  out["witnesses"] = std::move(witnesses);
  out["k3_status"] = r.k3_status ? Json(to_string(*r.k3_status)) : Json(nullptr);
  out["bound"] = r.bound;
  return out;
}

namespace {

std::optional<SearchStatus> parse_search_status(const Json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string text = j.get<std::string>();
  for (auto s : {SearchStatus::Found, SearchStatus::NotFoundWithinBound, SearchStatus::ProvenAbsent}) {
    if (text == to_string(s)) return s;
  }
  bad("unknown search status '" + text + "'");
}

}  // namespace

DivisorReport report_from_json(const Json& j) {
  try {
    DivisorReport r;
    r.d = integer_from_json(j.at("d"));
    r.admissible = j.at("admissible").get<bool>();
    const auto label = parse_divisor_label(j.at("divisor").get<std::string>());
    if (!label) bad("unknown divisor label");
    r.divisor = *label;
    r.star2 = j.at("star2").get<bool>();
    r.star2_twisted = j.at("star2_twisted").get<bool>();
    const Json& s3 = j.at("star3");
    if (!s3.is_null()) {
      r.star3 = PellSolution{integer_from_json(s3.at("n")), integer_from_json(s3.at("a")), r.d / 2, -1};
    }
    if (!j.at("dm_isomorphic").is_null()) r.dm_isomorphic = j.at("dm_isomorphic").get<bool>();
    const Json& w = j.at("witnesses");
    if (!w.at("twisted").is_null()) {
      const Json& t = w.at("twisted");
      r.twisted = TwistedWitness{integer_from_json(t.at("x")), integer_from_json(t.at("y")),
                                 integer_from_json(t.at("i"))};
    }
    if (!w.at("hilb2").is_null()) {
      const Json& h = w.at("hilb2");
      r.hilb2 = Hilb2Record{matrix_from_json(h.at("gram")), vector_from_json(h.at("w"))};
    }
    if (!w.at("k3").is_null()) {
      const Json& k = w.at("k3");
      r.k3 = K3Record{vector_from_json(k.at("u_basis").at(0)), vector_from_json(k.at("u_basis").at(1)),
                      vector_from_json(k.at("complement_gen"))};
    }
    r.k3_status = parse_search_status(j.at("k3_status"));
    r.bound = j.at("bound").get<std::int64_t>();
    return r;
  } catch (const Json::exception& e) {
    bad(std::string("malformed report: ") + e.what());
  }
}

std::string format_vector(const LatticeVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(Integer(v(i)));
  }
  return out + ")";
}

}  // namespace gmlat
