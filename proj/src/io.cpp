#include "qds/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "qds/error.hpp"

namespace qds {

namespace {

using GR = GaussRational;

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw Error(ErrorKind::Parse, source_ + ": " + field + ": " + what);
  }

  const Json& member(const Json& j, const char* key) const {
    if (!j.contains(key)) fail(key, "missing");
    return j.at(key);
  }

  std::size_t index(const Json& j, std::size_t bound, const std::string& field) const {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(field, "expected a non-negative integer");
    const auto v = j.get<std::size_t>();
    if (v >= bound) fail(field, "index " + std::to_string(v) + " out of range (dim " + std::to_string(bound) + ")");
    return v;
  }

  template <class T>
  T part(const Json& j, const std::string& field) const;

  template <class T>
  T scalar(const Json& re, const Json& im, const std::string& field) const;

  template <class T>
  T pair(const Json& j, const std::string& field) const {
    if (!j.is_array() || j.size() != 2) fail(field, "expected [re, im]");
    return scalar<T>(j[0], j[1], field);
  }

 private:
  std::string source_;
};

template <>
mpq_class Parser::part<mpq_class>(const Json& j, const std::string& field) const {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(field, e.what());
    }
  }
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  fail(field, "expected a rational string \"p/q\"");
}

template <>
double Parser::part<double>(const Json& j, const std::string& field) const {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

template <>
GR Parser::scalar<GR>(const Json& re, const Json& im, const std::string& field) const {
  return GR(part<mpq_class>(re, field), part<mpq_class>(im, field));
}

template <>
Complex Parser::scalar<Complex>(const Json& re, const Json& im, const std::string& field) const {
  return Complex(part<double>(re, field), part<double>(im, field));
}

std::string at(const char* key, std::size_t k) { return std::string(key) + "[" + std::to_string(k) + "]"; }

template <class T>
HopfStarAlgebra<T> parse_body(const Json& j, const Parser& p) {
  const Json& dim_j = p.member(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() <= 0) p.fail("dim", "expected a positive integer");
  const auto n = dim_j.get<std::size_t>();
  const Json& name = p.member(j, "name");
  if (!name.is_string()) p.fail("name", "expected a string");

  const Json& basis = p.member(j, "basis");
  if (!basis.is_array() || basis.size() != n) p.fail("basis", "expected " + std::to_string(n) + " labels");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) {
    if (!basis[k].is_string()) p.fail(at("basis", k), "expected a string");
    labels.push_back(basis[k].get<std::string>());
  }

  auto dense = [&](const char* key) {
    const Json& v = p.member(j, key);
    if (!v.is_array() || v.size() != n) p.fail(key, "expected " + std::to_string(n) + " entries");
    Vec<T> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = p.pair<T>(v[k], at(key, k));
    return out;
  };

  std::vector<std::map<std::uint32_t, T>> mult(n * n);
  const Json& mj = p.member(j, "mult");
  if (!mj.is_array()) p.fail("mult", "expected an array");
  for (std::size_t e = 0; e < mj.size(); ++e) {
    const auto f = at("mult", e);
    if (!mj[e].is_array() || mj[e].size() != 5) p.fail(f, "expected [i, j, k, re, im]");
    const auto i = p.index(mj[e][0], n, f), jj = p.index(mj[e][1], n, f), k = p.index(mj[e][2], n, f);
    mult[i * n + jj][static_cast<std::uint32_t>(k)] += p.scalar<T>(mj[e][3], mj[e][4], f);
  }
  std::vector<SparseVec<T>> table(n * n);
  for (std::size_t c = 0; c < n * n; ++c)
    for (const auto& [k, v] : mult[c])
      if (!is_zero(v)) table[c].emplace_back(k, v);

  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, T>> co(n);
  const Json& cj = p.member(j, "comult");
  if (!cj.is_array()) p.fail("comult", "expected an array");
  for (std::size_t e = 0; e < cj.size(); ++e) {
    const auto f = at("comult", e);
    if (!cj[e].is_array() || cj[e].size() != 5) p.fail(f, "expected [i, j, k, re, im]");
    const auto i = p.index(cj[e][0], n, f);
    const auto a = static_cast<std::uint32_t>(p.index(cj[e][1], n, f));
    const auto b = static_cast<std::uint32_t>(p.index(cj[e][2], n, f));
    co[i][{a, b}] += p.scalar<T>(cj[e][3], cj[e][4], f);
  }
  std::vector<TensorVec<T>> comult(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [ab, v] : co[i])
      if (!is_zero(v)) comult[i].emplace_back(ab.first, ab.second, v);

  Matrix<T> star(n, n);
  const Json& sj = p.member(j, "star");
  if (!sj.is_array()) p.fail("star", "expected an array");
  for (std::size_t e = 0; e < sj.size(); ++e) {
    const auto f = at("star", e);
    if (!sj[e].is_array() || sj[e].size() != 4) p.fail(f, "expected [row, col, re, im]");
    star(p.index(sj[e][0], n, f), p.index(sj[e][1], n, f)) += p.scalar<T>(sj[e][2], sj[e][3], f);
  }

  std::optional<Matrix<T>> antipode;
  if (j.contains("antipode") && !j.at("antipode").is_null()) {
    const Json& aj = j.at("antipode");
    if (!aj.is_array() || aj.size() != n) p.fail("antipode", "expected " + std::to_string(n) + " rows");
    Matrix<T> s(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!aj[r].is_array() || aj[r].size() != n) p.fail(at("antipode", r), "expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) s(r, c) = p.pair<T>(aj[r][c], at("antipode", r) + "[" + std::to_string(c) + "]");
    }
    antipode = std::move(s);
  }

  const Vec<T> unit = dense("unit");
  const Vec<T> counit = dense("counit");
  try {
    StarAlgebra<T> alg(std::move(labels), std::move(table), unit, AntilinearMap<T>{star});
    return HopfStarAlgebra<T>(name.get<std::string>(), std::move(alg), std::move(comult), counit, std::move(antipode));
  } catch (const Error& e) {
    p.fail("structure", e.what());
  }
}

}  // namespace

Json scalar_json(const GaussRational& z) { return Json::array({format_rational(z.re()), format_rational(z.im())}); }
Json scalar_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

template <class T>
Json vector_json(const Vec<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

template <class T>
Json to_json(const HopfStarAlgebra<T>& h) {
  const std::size_t n = h.dim();
  const auto& a = h.alg();
  Json j;
  j["schema"] = kQGroupSchema;
  j["name"] = h.name();
  j["dim"] = n;
  j["scalar"] = ScalarTraits<T>::mode_name;
  j["basis"] = a.labels();
  auto entry = [](std::initializer_list<std::size_t> idx, const T& v) {
    Json e = Json::array();
    for (auto i : idx) e.push_back(i);
    for (auto& part : scalar_json(v)) e.push_back(part);
    return e;
  };
  Json mult = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      auto terms = a.basis_product(i, k);
      std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [r, v] : terms)
        if (!is_zero(v)) mult.push_back(entry({i, k, r}, v));
    }
  j["mult"] = std::move(mult);
  Json comult = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    auto terms = h.coproduct(i);
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
      return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    for (const auto& [b, c, v] : terms)
      if (!is_zero(v)) comult.push_back(entry({i, b, c}, v));
  }
  j["comult"] = std::move(comult);
  j["unit"] = vector_json(a.unit());
  j["counit"] = vector_json(h.counit());
  Json star = Json::array();
  const auto& m = a.star_map().m;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!is_zero(m(r, c))) star.push_back(entry({r, c}, m(r, c)));
  j["star"] = std::move(star);
  if (h.antipode()) {
    Json s = Json::array();
    for (std::size_t r = 0; r < n; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < n; ++c) row.push_back(scalar_json((*h.antipode())(r, c)));
      s.push_back(std::move(row));
    }
    j["antipode"] = std::move(s);
  }
  return j;
}

Json to_json(const AnyQGroup& h) {
  return std::visit([](const auto& x) { return to_json(x); }, h);
}

AnyQGroup qgroup_from_json(const Json& j, const std::string& source) {
  const Parser p(source);
  if (!j.is_object()) p.fail("document", "expected a JSON object");
  const Json& schema = p.member(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kQGroupSchema)
    p.fail("schema", std::string("expected \"") + kQGroupSchema + "\"");
  const Json& mode = p.member(j, "scalar");
  if (mode == ScalarTraits<GR>::mode_name) return parse_body<GR>(j, p);
  if (mode == ScalarTraits<Complex>::mode_name) return parse_body<Complex>(j, p);
  p.fail("scalar", "expected \"gaussian-rational\" or \"complex-float\"");
}

namespace {

bool flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(), [](const Json& x) {
    return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); }));
  });
}

void dump_into(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += pad + Json(it.key()).dump() + ": ";
      dump_into(it.value(), out, depth + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(2 * depth, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !(flat(j) && std::all_of(j.begin(), j.end(), [](const Json& x) {
                                                return x.is_primitive();
                                              }))) {
    // one element per line; short rows of scalars stay on one line
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      if (flat(j[k]))
        out += j[k].dump();
      else
        dump_into(j[k], out, depth + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(2 * depth, ' ') + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  return out + "\n";
}

AnyQGroup load_qgroup(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  return qgroup_from_json(j, path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, path.string() + ": cannot write");
  out << text;
}

void save_qgroup(const std::filesystem::path& path, const AnyQGroup& h) { write_text(path, dump_canonical(to_json(h))); }

HopfStarAlgebra<Complex> as_complex(const AnyQGroup& h) {
  return std::visit([](const auto& x) { return to_complex(x); }, h);
}

const std::string& name_of(const AnyQGroup& h) {
  return std::visit([](const auto& x) -> const std::string& { return x.name(); }, h);
}

template Json to_json(const HopfStarAlgebra<GaussRational>&);
template Json to_json(const HopfStarAlgebra<Complex>&);
template Json vector_json(const Vec<GaussRational>&);
template Json vector_json(const Vec<Complex>&);

}  // namespace qds
