#include "dyncomp/io.hpp"

#include <fstream>

namespace dyncomp::io {

BigInt parse_int(const std::string& s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw FormatError("empty integer: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw FormatError("not an integer: '" + s + "'");
  BigInt v;
  v.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return v;
}

BigRational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return BigRational(parse_int(s));
  const BigInt num = parse_int(s.substr(0, slash));
  const BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw FormatError("zero denominator: '" + s + "'");
  return make_rational(num, den);
}

namespace {

BigInt int_field(const Json& v) {
  if (v.is_string()) return parse_int(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(v.get<long>());
  throw FormatError("coefficient must be a decimal string");
}

}  // namespace

Json to_json(const BinomialPoly& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(c.get_str());
  return Json{{"basis", "binomial"}, {"coeffs", coeffs}};
}

Json to_json(const RationalPoly& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(Json::array({c.get_num().get_str(), c.get_den().get_str()}));
  return Json{{"basis", "monomial"}, {"coeffs", coeffs}};
}

Json to_json(const Polynomial& f) {
  return std::visit([](const auto& p) { return to_json(p); }, f);
}

Json to_json(const CompressionWitness& w) {
  Json values = Json::array();
  for (const auto& v : w.values) values.push_back(v.get_si());
  return Json{{"m", w.m}, {"n", w.n}, {"strict", w.strict()}, {"degree", w.poly.degree()}, {"poly", to_json(w.poly)}, {"values", values}};
}

Json to_json(const WindowRefutation& r) {
  Json j{{"reason", to_string(r.reason)}};
  if (r.index) j["index"] = *r.index;
  if (r.value) j["value"] = r.value->get_str();
  return j;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("polynomial must be a JSON object");
  if (!j.contains("basis") || !j["basis"].is_string()) throw FormatError("missing string field 'basis'");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw FormatError("missing array field 'coeffs'");
  const auto basis = j["basis"].get<std::string>();
  const Json& coeffs = j["coeffs"];
  if (basis == "binomial") {
    std::vector<BigInt> c;
    for (const auto& v : coeffs) c.push_back(int_field(v));
    return BinomialPoly(std::move(c));
  }
  if (basis == "monomial") {
    std::vector<BigRational> c;
    for (const auto& v : coeffs) {
      if (v.is_array()) {
        if (v.size() != 2) throw FormatError("monomial coefficient must be [numerator, denominator]");
        const BigInt den = int_field(v[1]);
        if (den <= 0) throw FormatError("denominator must be positive");
        c.push_back(make_rational(int_field(v[0]), den));
      } else {
        c.emplace_back(int_field(v));
      }
    }
    return RationalPoly(std::move(c));
  }
  throw FormatError("unknown basis '" + basis + "'");
}

BinomialPoly binomial_from_json(const Json& j) {
  auto p = polynomial_from_json(j);
  if (auto* b = std::get_if<BinomialPoly>(&p)) return std::move(*b);
  auto b = to_binomial(std::get<RationalPoly>(p));
  if (!b) throw FormatError("polynomial is not integer-valued");
  return std::move(*b);
}

Polynomial read_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("invalid JSON in '" + path + "': " + e.what());
  }
  return polynomial_from_json(j);
}

BinomialPoly read_binomial(const std::string& path) {
  auto p = read_polynomial(path);
  if (auto* b = std::get_if<BinomialPoly>(&p)) return std::move(*b);
  auto b = to_binomial(std::get<RationalPoly>(p));
  if (!b) throw FormatError("polynomial in '" + path + "' is not integer-valued");
  return std::move(*b);
}

}  // namespace dyncomp::io
