#include "snforge/serialize.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <initializer_list>
#include <set>

#include "snforge/error.hpp"

namespace snforge::io {

namespace {

constexpr std::size_t kMaxDimension = 256;
constexpr std::size_t kMaxOrder = 64;

// A position in a JSON document, for diagnostics.
struct Node {
  const json& j;
  std::string path;

  std::string where() const { return path.empty() ? "/" : path; }
  [[noreturn]] void fail(const std::string& msg) const { throw InputError(where() + ": " + msg); }

  const Node& object() const {
    if (!j.is_object()) fail("expected an object");
    return *this;
  }
  const Node& array() const {
    if (!j.is_array()) fail("expected an array");
    return *this;
  }
  Node at(const std::string& key) const {
    object();
    auto it = j.find(key);
    if (it == j.end()) fail("missing field \"" + key + "\"");
    return {*it, path + "/" + key};
  }
  std::optional<Node> opt(const std::string& key) const {
    object();
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    return Node{*it, path + "/" + key};
  }
  bool has(const std::string& key) const { return object().j.contains(key); }
  Node operator[](std::size_t i) const { return {j[i], path + "/" + std::to_string(i)}; }
  std::size_t size() const { return array().j.size(); }
  std::size_t size_exactly(std::size_t n) const {
    if (size() != n) fail("expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    return n;
  }
  void only(std::initializer_list<const char*> allowed) const {
    object();
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!ok.count(it.key())) Node{*it, path + "/" + it.key()}.fail("unknown field");
  }
  std::string str() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) fail("expected true or false");
    return j.get<bool>();
  }
  std::uint64_t u64() const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return j.get<std::uint64_t>();
  }
  std::size_t count(std::size_t lo, std::size_t hi) const {
    const std::uint64_t v = u64();
    if (v < lo || v > hi) fail("expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<std::size_t>(v);
  }
};

// Runs f and reports DomainError from the math layer at the given node.
template <class F>
auto at_node(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
}

FieldElement field_value(Field f, const Node& n) {
  return at_node(n, [&] {
    const std::string s = n.str();
    try {
      return FieldElement::parse(f, s);
    } catch (const Error&) {
      n.fail("\"" + s + "\" is not an element of " + f.name());
    }
  });
}

// Expression parser for polynomial and curve-ring elements.
class ExprParser {
 public:
  ExprParser(const RingPtr& s, std::string text, const std::string& path) : s_(s), text_(std::move(text)), path_(path) {
    const Field f = s->base_field();
    switch (s->family()) {
      case RingFamily::field:
        break;
      case RingFamily::polynomial: {
        static const char* names[] = {"x", "y", "z"};
        for (std::size_t v = 0; v < s->nvars(); ++v)
          vars_.emplace_back(names[v], RingElement::from_poly(s, Poly::variable(f, s->nvars(), v)));
        break;
      }
      case RingFamily::curve:
        vars_.emplace_back("x", RingElement::from_poly(s, Poly::variable(f, 1, 0)));
        vars_.emplace_back("y", RingElement::curve(s, Poly(f, 1), Poly::constant(f, 1, 1)));
        break;
      default:
        fail("elements of " + s->name() + " are not written as expressions");
    }
  }

  RingElement parse() {
    RingElement r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError((path_.empty() ? "/" : path_) + ": cannot parse \"" + text_ + "\" at offset " +
                     std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d += text_[pos_++];
    return d;
  }

  RingElement expr() {
    bool negative = false;
    if (eat('-'))
      negative = true;
    else
      eat('+');
    RingElement acc = term();
    if (negative) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }
  RingElement term() {
    RingElement acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }
  RingElement factor() {
    RingElement base = primary();
    if (!eat('^')) return base;
    skip();
    const std::string d = digits();
    if (d.empty() || d.size() > 4) fail("expected a small exponent");
    RingElement r = RingElement::one(s_);
    for (int e = std::stoi(d); e > 0; --e) r *= base;
    return r;
  }
  RingElement primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RingElement r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::string den = digits();
        if (den.empty()) fail("expected a denominator");
        num += "/" + den;
      }
      try {
        return RingElement::scalar(s_, FieldElement::parse(s_->base_field(), num));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    for (const auto& [name, value] : vars_)
      if (text_.compare(pos_, name.size(), name) == 0) {
        pos_ += name.size();
        return value;
      }
    fail("unknown symbol");
  }

  RingPtr s_;
  std::string text_;
  std::string path_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, RingElement>> vars_;
};

Poly parse_univariate(Field f, const Node& n) {
  const RingPtr a = Ring::polynomial(f, 1);
  return ExprParser(a, n.str(), n.path).parse().poly();
}

json matrix_to_json(const FMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

FMatrix matrix_from_json(Field f, std::size_t n, const Node& node) {
  FMatrix m(n, n, FieldElement::zero(f));
  node.size_exactly(n);
  for (std::size_t i = 0; i < n; ++i) {
    Node row = node[i];
    row.size_exactly(n);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = field_value(f, row[j]);
  }
  return m;
}

json strings(const std::vector<std::string>& v) { return json(v); }

json poly_rows(const std::vector<std::vector<Poly>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.to_string());
    out.push_back(std::move(r));
  }
  return out;
}

json cert_body(const Certificate& cert, bool emit_coefficients) {
  json j;
  j["status"] = status_name(cert.status);
  j["backend"] = cert.backend;
  j["seed"] = cert.seed;
  j["trials"] = cert.trials;
  j["trials_used"] = cert.trials_used;
  j["message"] = cert.message;
  j["transcript"] = strings(cert.transcript);
  if (cert.conjugator) j["conjugator"] = tensor_to_json(*cert.conjugator);
  if (cert.inverse) j["inverse"] = tensor_to_json(*cert.inverse);
  if (emit_coefficients && cert.coefficients) {
    json c = json::array(), s = json::array();
    for (const auto& ck : cert.coefficients->c) c.push_back(tensor_to_json(ck));
    for (const auto& row : cert.coefficients->s) {
      json r = json::array();
      for (const auto& x : row) r.push_back(element_to_json(x));
      s.push_back(std::move(r));
    }
    j["coefficients"] = {{"c", c}, {"s", s}};
  }
  if (cert.curve) {
    const auto& an = *cert.curve;
    json branches = json::array();
    for (const auto& br : an.branches)
      branches.push_back({{"name", br.name},
                          {"equation", br.equation},
                          {"tested", br.tested.to_string()},
                          {"refuted", br.refuted},
                          {"reason", br.reason}});
    json cj = {{"delta", element_to_json(an.delta)}, {"branches", branches}};
    if (an.f) cj["f"] = element_to_json(*an.f);
    if (an.gamma) cj["gamma"] = an.gamma->to_string();
    if (an.nondivisible_entry) cj["nondivisible_entry"] = *an.nondivisible_entry;
    j["curve"] = std::move(cj);
  }
  if (cert.pid) {
    const auto& p = *cert.pid;
    j["pid"] = {{"a", tensor_to_json(p.a)},
                {"delta", element_to_json(p.delta)},
                {"adj", tensor_to_json(p.adj)},
                {"generators", poly_rows(p.generators)},
                {"c", poly_rows(p.c)},
                {"checks", strings(p.checks)}};
  }
  if (!cert.parts.empty()) {
    json parts = json::array();
    for (const auto& part : cert.parts) parts.push_back(cert_body(part, emit_coefficients));
    j["parts"] = std::move(parts);
  }
  return j;
}

json header(const char* task, const std::string& problem_digest, const std::vector<std::string>& transcript) {
  return {{"schema", kCertificateSchema},
          {"task", task},
          {"problem_digest", problem_digest},
          {"transcript_digest", transcript_digest(problem_digest, transcript)}};
}

json tensor_list(const std::vector<TensorElement>& v) {
  json out = json::array();
  for (const auto& t : v) out.push_back(tensor_to_json(t));
  return out;
}

std::vector<TensorElement> tensor_list_from(const AlgebraPtr& r, const RingPtr& s, const Node& n, std::size_t expected) {
  n.size_exactly(expected);
  std::vector<TensorElement> out;
  for (std::size_t i = 0; i < expected; ++i) out.push_back(tensor_from_json(r, s, n[i].j, n[i].path));
  return out;
}

AutData aut_from(const AlgebraPtr& r, const RingPtr& s, const Node& n) {
  n.only({"units", "generators"});
  AutData d;
  d.unit_images = tensor_list_from(r, s, n.at("units"), r->dimension());
  Node g = n.at("generators");
  const std::size_t gens = at_node(n, [&] { return ring_generators(s).size(); });
  d.generator_images = tensor_list_from(r, s, g, gens);
  return d;
}

json aut_to(const AutData& d) { return {{"units", tensor_list(d.unit_images)}, {"generators", tensor_list(d.generator_images)}}; }

}  // namespace

std::string canonical_dump(const json& j) { return j.dump(); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("sha256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Field field_from_json(const json& j, const std::string& path) {
  Node n{j, path};
  const std::string s = n.str();
  if (s == "Q") return Field::rationals();
  if (s.rfind("F_", 0) == 0 && s.size() > 2 && s.size() < 22) {
    std::uint64_t p = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) n.fail("bad field \"" + s + "\"");
      p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
    }
    return at_node(n, [&] { return Field::prime(p); });
  }
  n.fail("field must be \"Q\" or \"F_p\", got \"" + s + "\"");
}

json field_to_json(Field f) { return f.name(); }

RingElement parse_element(const RingPtr& s, const std::string& text, const std::string& path) {
  return ExprParser(s, text, path).parse();
}

json element_to_json(const RingElement& x) {
  switch (x.ring()->family()) {
    case RingFamily::field:
    case RingFamily::polynomial:
    case RingFamily::curve:
      return x.to_string();
    case RingFamily::findim:
      return vec_to_json(x.coords());
    case RingFamily::series:
    case RingFamily::product:
    case RingFamily::matrix: {
      json out = json::array();
      for (const auto& p : x.parts()) out.push_back(element_to_json(p));
      return out;
    }
    case RingFamily::free_algebra:
      break;
  }
  throw Unsupported("no element format for " + x.ring()->name());
}

RingElement element_from_json(const RingPtr& s, const json& j, const std::string& path) {
  Node n{j, path};
  switch (s->family()) {
    case RingFamily::field:
      return RingElement::scalar(s, field_value(s->base_field(), n));
    case RingFamily::polynomial:
    case RingFamily::curve:
      return parse_element(s, n.str(), path);
    case RingFamily::findim:
      return RingElement::findim(s, vec_from_json(s->base_field(), s->dimension(), j, path));
    case RingFamily::series: {
      if (n.size() == 0 || n.size() > s->order())
        n.fail("expected between 1 and " + std::to_string(s->order()) + " series coefficients");
      std::vector<RingElement> coeffs;
      for (std::size_t i = 0; i < n.size(); ++i) coeffs.push_back(element_from_json(s->base(), n[i].j, n[i].path));
      return RingElement::series(s, std::move(coeffs));
    }
    case RingFamily::product: {
      n.size_exactly(2);
      return RingElement::product(s, element_from_json(s->factor(0), n[0].j, n[0].path),
                                  element_from_json(s->factor(1), n[1].j, n[1].path));
    }
    case RingFamily::matrix: {
      const std::size_t k = s->matrix_size() * s->matrix_size();
      n.size_exactly(k);
      std::vector<RingElement> entries;
      for (std::size_t i = 0; i < k; ++i) entries.push_back(element_from_json(s->base(), n[i].j, n[i].path));
      return RingElement::matrix(s, std::move(entries));
    }
    case RingFamily::free_algebra:
      break;
  }
  n.fail("elements of " + s->name() + " have no representation");
}

json tensor_to_json(const TensorElement& u) {
  json out = json::array();
  for (const auto& x : u.coords()) out.push_back(element_to_json(x));
  return out;
}

TensorElement tensor_from_json(const AlgebraPtr& r, const RingPtr& s, const json& j, const std::string& path) {
  Node n{j, path};
  n.size_exactly(r->dimension());
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < r->dimension(); ++i) coords.push_back(element_from_json(s, n[i].j, n[i].path));
  return TensorElement(r, s, std::move(coords));
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

Vec vec_from_json(Field f, std::size_t size, const json& j, const std::string& path) {
  Node n{j, path};
  n.size_exactly(size);
  Vec v;
  for (std::size_t i = 0; i < size; ++i) v.push_back(field_value(f, n[i]));
  return v;
}

json algebra_to_json(const AlgebraPtr& a) {
  const Field f = a->field();
  const std::size_t d = a->dimension();
  const json fj = field_to_json(f);
  if (d == 1 && a->same_as(*field_algebra(f))) return {{"kind", "field"}, {"field", fj}};
  for (std::size_t n = 2; n * n <= d; ++n)
    if (n * n == d && a->same_as(*matrix_algebra(f, n))) return {{"kind", "matrix"}, {"field", fj}, {"n", n}};
  if (d == 4 && a->labels() == std::vector<std::string>{"1", "i", "j", "k"}) {
    const FieldElement alpha = a->gamma(1, 1, 0), beta = a->gamma(2, 2, 0);
    if (!alpha.is_zero() && !beta.is_zero() && a->same_as(*quaternion_algebra(alpha, beta)))
      return {{"kind", "quaternion"}, {"field", fj}, {"alpha", alpha.to_string()}, {"beta", beta.to_string()}};
  }
  if (d >= 2 && a->same_as(*diagonal_algebra(f, d))) return {{"kind", "diagonal"}, {"field", fj}, {"k", d}};
  if (d >= 2 && a->same_as(*truncated_polynomial_algebra(f, d)))
    return {{"kind", "truncated_polynomial"}, {"field", fj}, {"k", d}};
  for (std::size_t k = 2; k * (k + 1) / 2 <= d; ++k)
    if (k * (k + 1) / 2 == d && a->same_as(*upper_triangular_algebra(f, k)))
      return {{"kind", "upper_triangular"}, {"field", fj}, {"k", k}};
  json products = json::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& p = a->product(i, j);
      if (p.empty()) continue;
      json entries = json::array();
      for (const auto& e : p) entries.push_back(json::array({e.index, e.value.to_string()}));
      products.push_back(json::array({i, j, entries}));
    }
  return {{"kind", "table"},       {"field", fj},          {"dimension", d},
          {"labels", a->labels()}, {"unit", vec_to_json(a->unit())}, {"products", products}};
}

AlgebraPtr algebra_from_json(const json& j, const std::string& path) {
  Node n{j, path};
  const std::string kind = n.at("kind").str();
  auto field = [&] { return field_from_json(n.at("field").j, n.at("field").path); };
  if (kind == "field") {
    n.only({"kind", "field"});
    return field_algebra(field());
  }
  if (kind == "matrix") {
    n.only({"kind", "field", "n"});
    const std::size_t size = n.at("n").count(1, 16);
    return matrix_algebra(field(), size);
  }
  if (kind == "quaternion") {
    n.only({"kind", "field", "alpha", "beta"});
    const Field f = field();
    const FieldElement alpha = field_value(f, n.at("alpha")), beta = field_value(f, n.at("beta"));
    return at_node(n, [&] { return quaternion_algebra(alpha, beta); });
  }
  if (kind == "diagonal" || kind == "truncated_polynomial" || kind == "upper_triangular") {
    n.only({"kind", "field", "k"});
    const Field f = field();
    const std::size_t k = n.at("k").count(1, kind == "upper_triangular" ? 16 : kMaxDimension);
    if (kind == "diagonal") return diagonal_algebra(f, k);
    if (kind == "truncated_polynomial") return truncated_polynomial_algebra(f, k);
    return upper_triangular_algebra(f, k);
  }
  if (kind == "product" || kind == "tensor") {
    n.only({"kind", "factors"});
    Node fs = n.at("factors");
    fs.size_exactly(2);
    AlgebraPtr a = algebra_from_json(fs[0].j, fs[0].path), b = algebra_from_json(fs[1].j, fs[1].path);
    if (!(a->field() == b->field())) fs.fail("factors over different fields");
    if (kind == "tensor" && a->dimension() * b->dimension() > kMaxDimension) fs.fail("tensor product too large");
    return kind == "product" ? direct_product(a, b) : tensor_product(a, b);
  }
  if (kind == "table") {
    n.only({"kind", "field", "dimension", "labels", "unit", "products"});
    const Field f = field();
    const std::size_t d = n.at("dimension").count(1, kMaxDimension);
    std::vector<std::string> labels;
    if (auto l = n.opt("labels")) {
      l->size_exactly(d);
      for (std::size_t i = 0; i < d; ++i) labels.push_back((*l)[i].str());
    }
    Node un = n.at("unit");
    const Vec unit = vec_from_json(f, d, un.j, un.path);
    std::vector<std::vector<StructAlgebra::Entry>> products(d * d);
    Node ps = n.at("products");
    for (std::size_t t = 0; t < ps.size(); ++t) {
      Node item = ps[t];
      item.size_exactly(3);
      const std::size_t i = item[0].count(0, d - 1), jj = item[1].count(0, d - 1);
      Node entries = item[2];
      if (!products[i * d + jj].empty()) item.fail("duplicate product entry");
      for (std::size_t e = 0; e < entries.size(); ++e) {
        Node en = entries[e];
        en.size_exactly(2);
        const std::size_t k = en[0].count(0, d - 1);
        const FieldElement v = field_value(f, en[1]);
        if (!v.is_zero()) products[i * d + jj].push_back({k, v});
      }
    }
    return at_node(n, [&] { return StructAlgebra::from_sparse(f, d, std::move(products), unit, std::move(labels)); });
  }
  n.at("kind").fail("unknown algebra kind \"" + kind + "\"");
}

json ring_to_json(const RingPtr& s) {
  switch (s->family()) {
    case RingFamily::field:
      return {{"family", "field"}, {"field", field_to_json(s->base_field())}};
    case RingFamily::polynomial:
      return {{"family", "polynomial"}, {"field", field_to_json(s->base_field())}, {"nvars", s->nvars()}};
    case RingFamily::curve:
      return {{"family", "curve"}, {"field", field_to_json(s->base_field())}, {"g", s->curve_g().to_string()}};
    case RingFamily::series:
      return {{"family", "series"}, {"base", ring_to_json(s->base())}, {"order", s->order()}};
    case RingFamily::product:
      return {{"family", "product"}, {"factors", json::array({ring_to_json(s->factor(0)), ring_to_json(s->factor(1))})}};
    case RingFamily::findim:
      return {{"family", "findim"}, {"algebra", algebra_to_json(s->algebra())}};
    case RingFamily::matrix:
      return {{"family", "matrix"}, {"base", ring_to_json(s->base())}, {"n", s->matrix_size()}};
    case RingFamily::free_algebra:
      return {{"family", "free_algebra"}, {"field", field_to_json(s->base_field())}, {"nvars", s->nvars()}};
  }
  throw InternalError("unknown ring family");
}

RingPtr ring_from_json(const json& j, const std::string& path) {
  Node n{j, path};
  const std::string family = n.at("family").str();
  auto field = [&] { return field_from_json(n.at("field").j, n.at("field").path); };
  if (family == "field") {
    n.only({"family", "field"});
    return Ring::field(field());
  }
  if (family == "polynomial" || family == "free_algebra") {
    n.only({"family", "field", "nvars"});
    const std::size_t k = n.at("nvars").count(1, Poly::kMaxVars);
    return family == "polynomial" ? Ring::polynomial(field(), k) : Ring::free_algebra(field(), k);
  }
  if (family == "curve") {
    n.only({"family", "field", "g"});
    const Field f = field();
    if (auto g = n.opt("g")) {
      const Poly gp = parse_univariate(f, *g);
      return at_node(*g, [&] { return Ring::curve(f, gp); });
    }
    return at_node(n, [&] { return Ring::curve(f); });
  }
  if (family == "series") {
    n.only({"family", "base", "order"});
    Node b = n.at("base");
    RingPtr base = ring_from_json(b.j, b.path);
    return at_node(n, [&] { return Ring::series(base, n.at("order").count(1, kMaxOrder)); });
  }
  if (family == "product") {
    n.only({"family", "factors"});
    Node fs = n.at("factors");
    fs.size_exactly(2);
    RingPtr a = ring_from_json(fs[0].j, fs[0].path), b = ring_from_json(fs[1].j, fs[1].path);
    return at_node(fs, [&] { return Ring::product(a, b); });
  }
  if (family == "findim") {
    n.only({"family", "algebra"});
    Node a = n.at("algebra");
    return Ring::findim(algebra_from_json(a.j, a.path));
  }
  if (family == "matrix") {
    n.only({"family", "base", "n"});
    Node b = n.at("base");
    RingPtr base = ring_from_json(b.j, b.path);
    return at_node(n, [&] { return Ring::matrix(base, n.at("n").count(1, 8)); });
  }
  n.at("family").fail("unknown ring family \"" + family + "\"");
}

std::string task_name(Task t) {
  switch (t) {
    case Task::validate:
      return "validate";
    case Task::solve:
      return "solve";
    case Task::decompose_aut:
      return "decompose-aut";
    case Task::derivation:
      return "derivation";
    case Task::flip_check:
      return "flip-check";
  }
  return "?";
}

Problem problem_from_json(const json& j) {
  Node root{j, ""};
  root.object();
  const std::string schema = root.at("schema").str();
  if (schema != kProblemSchema)
    root.at("schema").fail("unsupported schema \"" + schema + "\", expected \"" + kProblemSchema + "\"");
  const std::string task = root.at("task").str();
  Problem p;
  if (task == "validate" || task == "solve") {
    p.task = task == "solve" ? Task::solve : Task::validate;
    root.only({"schema", "task", "R", "S", "images", "conjugator", "backend", "seed", "trials"});
  } else if (task == "decompose-aut") {
    p.task = Task::decompose_aut;
    root.only({"schema", "task", "S", "n", "automorphism", "inverse", "seed", "trials"});
  } else if (task == "derivation") {
    p.task = Task::derivation;
    root.only({"schema", "task", "R", "bimodule", "values", "seed", "trials"});
  } else if (task == "flip-check") {
    p.task = Task::flip_check;
    root.only({"schema", "task", "R", "seed", "trials"});
  } else {
    root.at("task").fail("unknown task \"" + task +
                         "\" (expected validate, solve, decompose-aut, derivation or flip-check)");
  }
  if (auto s = root.opt("seed")) p.seed = s->u64();
  if (auto t = root.opt("trials")) p.trials = static_cast<unsigned>(t->count(1, 1u << 20));

  switch (p.task) {
    case Task::validate:
    case Task::solve: {
      Node rn = root.at("R"), sn = root.at("S");
      p.r = algebra_from_json(rn.j, rn.path);
      p.s = ring_from_json(sn.j, sn.path);
      if (!(p.r->field() == p.s->base_field())) sn.fail("S is over a different field than R");
      if (auto b = root.opt("backend")) p.backend = b->str();
      if (p.s->family() == RingFamily::free_algebra) {
        // Descriptor only: there is nothing to parse the images into, and no backend would accept them.
        std::string why;
        select_backend(p.s, &why);
        throw Unsupported(sn.path + ": " + why);
      }
      if (auto a = root.opt("conjugator")) p.conjugator = tensor_from_json(p.r, p.s, a->j, a->path);
      if (auto im = root.opt("images")) p.images = tensor_list_from(p.r, p.s, *im, p.r->dimension());
      if (p.images.empty() && !p.conjugator) root.fail("a solve problem needs \"images\" or \"conjugator\"");
      break;
    }
    case Task::decompose_aut: {
      Node sn = root.at("S");
      p.s = ring_from_json(sn.j, sn.path);
      p.n = root.at("n").count(1, 8);
      p.r = matrix_algebra(p.s->base_field(), p.n);
      p.automorphism = aut_from(p.r, p.s, root.at("automorphism"));
      if (auto inv = root.opt("inverse")) p.inverse = aut_from(p.r, p.s, *inv);
      break;
    }
    case Task::derivation: {
      Node rn = root.at("R");
      p.r = algebra_from_json(rn.j, rn.path);
      const Field f = p.r->field();
      Node bn = root.at("bimodule");
      if (bn.j.is_string()) {
        if (bn.str() != "regular") bn.fail("bimodule must be \"regular\" or an object");
        p.regular_bimodule = true;
        p.bimodule = regular_bimodule(p.r);
      } else {
        bn.only({"dimension", "left", "right"});
        Bimodule m;
        m.algebra = p.r;
        m.dimension = bn.at("dimension").count(1, kMaxDimension);
        Node left = bn.at("left"), right = bn.at("right");
        left.size_exactly(p.r->dimension());
        right.size_exactly(p.r->dimension());
        for (std::size_t k = 0; k < p.r->dimension(); ++k) {
          m.left.push_back(matrix_from_json(f, m.dimension, left[k]));
          m.right.push_back(matrix_from_json(f, m.dimension, right[k]));
        }
        at_node(bn, [&] {
          verify_bimodule(m);
          return 0;
        });
        p.bimodule = std::move(m);
      }
      Node vn = root.at("values");
      vn.size_exactly(p.r->dimension());
      for (std::size_t k = 0; k < p.r->dimension(); ++k)
        p.values.push_back(vec_from_json(f, p.bimodule->dimension, vn[k].j, vn[k].path));
      break;
    }
    case Task::flip_check: {
      Node rn = root.at("R");
      p.r = algebra_from_json(rn.j, rn.path);
      break;
    }
  }
  return p;
}

json problem_to_json(const Problem& p) {
  json j;
  j["schema"] = kProblemSchema;
  j["task"] = task_name(p.task);
  if (p.seed) j["seed"] = *p.seed;
  if (p.trials) j["trials"] = *p.trials;
  switch (p.task) {
    case Task::validate:
    case Task::solve:
      j["R"] = algebra_to_json(p.r);
      j["S"] = ring_to_json(p.s);
      if (!p.images.empty()) j["images"] = tensor_list(p.images);
      if (p.conjugator) j["conjugator"] = tensor_to_json(*p.conjugator);
      if (p.backend) j["backend"] = *p.backend;
      break;
    case Task::decompose_aut:
      j["S"] = ring_to_json(p.s);
      j["n"] = p.n;
      j["automorphism"] = aut_to(*p.automorphism);
      if (p.inverse) j["inverse"] = aut_to(*p.inverse);
      break;
    case Task::derivation: {
      j["R"] = algebra_to_json(p.r);
      if (p.regular_bimodule) {
        j["bimodule"] = "regular";
      } else {
        json left = json::array(), right = json::array();
        for (const auto& m : p.bimodule->left) left.push_back(matrix_to_json(m));
        for (const auto& m : p.bimodule->right) right.push_back(matrix_to_json(m));
        j["bimodule"] = {{"dimension", p.bimodule->dimension}, {"left", left}, {"right", right}};
      }
      json values = json::array();
      for (const auto& v : p.values) values.push_back(vec_to_json(v));
      j["values"] = std::move(values);
      break;
    }
    case Task::flip_check:
      j["R"] = algebra_to_json(p.r);
      break;
  }
  return j;
}

std::string problem_digest(const Problem& p) { return sha256_hex(canonical_dump(problem_to_json(p))); }

Problem solve_problem(const HomSpec& phi, std::optional<TensorElement> conjugator) {
  Problem p;
  p.task = Task::solve;
  p.r = phi.r;
  p.s = phi.s;
  p.images = phi.images;
  p.conjugator = std::move(conjugator);
  return p;
}

std::string transcript_digest(const std::string& problem_digest, const std::vector<std::string>& transcript) {
  std::string data = problem_digest;
  for (const auto& line : transcript) data += "\n" + line;
  return sha256_hex(data);
}

json certificate_to_json(const Certificate& cert, const std::string& problem_digest, bool emit_coefficients) {
  json j = cert_body(cert, emit_coefficients);
  j.update(header("solve", problem_digest, cert.transcript));
  return j;
}

json aut_certificate_to_json(const AutDecomposition& d, const std::string& problem_digest) {
  json j = header("decompose-aut", problem_digest, d.transcript);
  j["status"] = status_name(d.status);
  j["restriction"] = cert_body(d.certificate, false);
  j["transcript"] = strings(d.transcript);
  if (d.c) j["conjugator"] = tensor_to_json(*d.c);
  if (d.c_inverse) j["inverse"] = tensor_to_json(*d.c_inverse);
  auto table = [&](const std::vector<RingElement>& images) {
    json t = json::array();
    for (std::size_t g = 0; g < images.size(); ++g)
      t.push_back({{"generator", element_to_json(d.generators[g])}, {"image", element_to_json(images[g])}});
    return t;
  };
  if (d.status == Status::Inner) {
    j["sigma"] = table(d.sigma);
    j["sigma_inverse"] = table(d.sigma_inverse);
  }
  return j;
}

json derivation_certificate_to_json(const DerivationWitness& w, const std::string& problem_digest) {
  json j = header("derivation", problem_digest, w.transcript);
  j["status"] = status_name(w.status);
  j["seed"] = w.seed;
  j["trials"] = w.trials;
  j["trials_used"] = w.trials_used;
  j["ambient_dimension"] = w.ambient_dimension;
  j["kernel_dimension"] = w.kernel_dimension;
  j["transcript"] = strings(w.transcript);
  if (w.status == Status::Inner) {
    j["w"] = vec_to_json(w.w);
    j["raw"] = vec_to_json(w.raw);
    j["t"] = w.t.to_string();
  }
  return j;
}

json flip_certificate_to_json(const FlipResult& f, const std::string& problem_digest) {
  json j = header("flip-check", problem_digest, f.transcript);
  j["status"] = f.inner ? "Inner" : (f.defect.empty() ? "Exhausted" : "NotInner");
  j["inner"] = f.inner;
  j["seed"] = f.seed;
  j["trials"] = f.trials;
  j["center_dimension"] = f.center_dimension;
  j["kernel_dimension"] = f.kernel_dimension;
  j["search_found"] = f.search_found;
  j["defect"] = f.defect;
  j["transcript"] = strings(f.transcript);
  if (f.c) j["conjugator"] = vec_to_json(*f.c);
  if (f.c_inverse) j["inverse"] = vec_to_json(*f.c_inverse);
  if (f.ideal_witness) {
    json ideal = json::array();
    for (const auto& v : *f.ideal_witness) ideal.push_back(vec_to_json(v));
    j["ideal_witness"] = std::move(ideal);
  }
  return j;
}

json problem_schema() {
  static const json schema = json::parse(R"json(
{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "snforge-problem/1",
  "title": "snforge problem file",
  "type": "object",
  "required": ["schema", "task"],
  "properties": {
    "schema": {"const": "snforge-problem/1"},
    "task": {"enum": ["validate", "solve", "decompose-aut", "derivation", "flip-check"]},
    "seed": {"type": "integer", "minimum": 0},
    "trials": {"type": "integer", "minimum": 1},
    "backend": {"enum": ["findim", "ufd", "pid-matrix", "series", "product", "curve"]},
    "R": {"$ref": "#/$defs/algebra"},
    "S": {"$ref": "#/$defs/ring"},
    "images": {"type": "array", "items": {"$ref": "#/$defs/tensor"}},
    "conjugator": {"$ref": "#/$defs/tensor"},
    "n": {"type": "integer", "minimum": 1},
    "automorphism": {"$ref": "#/$defs/automorphism"},
    "inverse": {"$ref": "#/$defs/automorphism"},
    "bimodule": {"oneOf": [
      {"const": "regular"},
      {"type": "object", "required": ["dimension", "left", "right"], "additionalProperties": false,
       "properties": {"dimension": {"type": "integer", "minimum": 1},
                      "left": {"type": "array", "items": {"$ref": "#/$defs/matrix"}},
                      "right": {"type": "array", "items": {"$ref": "#/$defs/matrix"}}}}]},
    "values": {"type": "array", "items": {"$ref": "#/$defs/vector"}}
  },
  "additionalProperties": false,
  "$defs": {
    "field": {"type": "string", "pattern": "^(Q|F_[0-9]+)$"},
    "scalar": {"type": "string", "description": "integer or reduced fraction, e.g. \"-3/4\""},
    "vector": {"type": "array", "items": {"$ref": "#/$defs/scalar"}},
    "matrix": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
    "element": {"oneOf": [
      {"type": "string", "description": "scalar, or expression in x, y, z for polynomial and curve rings"},
      {"type": "array", "description": "findim coordinates, series coefficients, product components or matrix entries (row-major)"}]},
    "tensor": {"type": "array", "items": {"$ref": "#/$defs/element"},
               "description": "S-coordinates with respect to the basis of R"},
    "automorphism": {"type": "object", "required": ["units", "generators"], "additionalProperties": false,
                     "properties": {"units": {"type": "array", "items": {"$ref": "#/$defs/tensor"}},
                                    "generators": {"type": "array", "items": {"$ref": "#/$defs/tensor"}}}},
    "algebra": {"type": "object", "required": ["kind"], "properties": {
      "kind": {"enum": ["field", "matrix", "quaternion", "diagonal", "truncated_polynomial", "upper_triangular",
                        "product", "tensor", "table"]},
      "field": {"$ref": "#/$defs/field"},
      "n": {"type": "integer", "minimum": 1},
      "k": {"type": "integer", "minimum": 1},
      "alpha": {"$ref": "#/$defs/scalar"},
      "beta": {"$ref": "#/$defs/scalar"},
      "factors": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/algebra"}},
      "dimension": {"type": "integer", "minimum": 1},
      "labels": {"type": "array", "items": {"type": "string"}},
      "unit": {"$ref": "#/$defs/vector"},
      "products": {"type": "array", "items": {"type": "array", "prefixItems": [
        {"type": "integer"}, {"type": "integer"},
        {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"$ref": "#/$defs/scalar"}]}}]}}
    }},
    "ring": {"type": "object", "required": ["family"], "properties": {
      "family": {"enum": ["field", "polynomial", "curve", "series", "product", "findim", "matrix", "free_algebra"]},
      "field": {"$ref": "#/$defs/field"},
      "nvars": {"type": "integer", "minimum": 1, "maximum": 3},
      "g": {"type": "string"},
      "base": {"$ref": "#/$defs/ring"},
      "order": {"type": "integer", "minimum": 1},
      "n": {"type": "integer", "minimum": 1},
      "factors": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/ring"}},
      "algebra": {"$ref": "#/$defs/algebra"}
    }}
  }
}
)json");
  return schema;
}

json certificate_schema() {
  static const json schema = json::parse(R"json(
{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "snforge-certificate/1",
  "title": "snforge certificate file",
  "type": "object",
  "required": ["schema", "task", "status", "problem_digest", "transcript_digest", "transcript"],
  "properties": {
    "schema": {"const": "snforge-certificate/1"},
    "task": {"enum": ["solve", "decompose-aut", "derivation", "flip-check"]},
    "status": {"enum": ["Inner", "NotInner", "Unsupported", "Exhausted"]},
    "problem_digest": {"type": "string", "description": "sha256 of the canonical problem document"},
    "transcript_digest": {"type": "string", "description": "sha256 of problem_digest and the transcript lines"},
    "transcript": {"type": "array", "items": {"type": "string"}},
    "backend": {"type": "string"},
    "seed": {"type": "integer"},
    "trials": {"type": "integer"},
    "trials_used": {"type": "integer"},
    "message": {"type": "string"},
    "conjugator": {"type": "array"},
    "inverse": {"type": "array"},
    "coefficients": {"type": "object", "properties": {"c": {"type": "array"}, "s": {"type": "array"}}},
    "curve": {"type": "object", "required": ["delta", "branches"], "properties": {
      "delta": {"type": "string"},
      "branches": {"type": "array", "items": {"type": "object",
        "required": ["name", "equation", "tested", "refuted", "reason"]}},
      "f": {"type": "string"}, "gamma": {"type": "string"}, "nondivisible_entry": {"type": "integer"}}},
    "pid": {"type": "object", "required": ["a", "delta", "adj", "generators", "c", "checks"]},
    "parts": {"type": "array", "items": {"type": "object"}},
    "restriction": {"type": "object"},
    "sigma": {"type": "array", "items": {"type": "object", "required": ["generator", "image"]}},
    "sigma_inverse": {"type": "array", "items": {"type": "object", "required": ["generator", "image"]}},
    "w": {"type": "array"}, "raw": {"type": "array"}, "t": {"type": "string"},
    "inner": {"type": "boolean"}, "center_dimension": {"type": "integer"},
    "ideal_witness": {"type": "array"}, "defect": {"type": "string"}
  }
}
)json");
  return schema;
}

}  // namespace snforge::io
