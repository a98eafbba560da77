// JSON interchange for polynomials and witnesses.
//
//   {"basis": "binomial", "coeffs": ["11", "-4", "1"]}
//   {"basis": "monomial", "coeffs": [["11", "1"], ["-9", "2"], ["1", "2"]]}
#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dyncomp/arith.hpp"
#include "dyncomp/compression.hpp"

namespace dyncomp::io {

using Json = nlohmann::ordered_json;

/// Malformed polynomial JSON or an unusable polynomial.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const BinomialPoly& f);
Json to_json(const RationalPoly& f);
Json to_json(const Polynomial& f);
Json to_json(const CompressionWitness& w);
Json to_json(const WindowRefutation& r);

/// Parses either basis. Throws FormatError.
Polynomial polynomial_from_json(const Json& j);

/// Parses and converts to the binomial basis; throws FormatError when the
/// polynomial is not integer-valued.
BinomialPoly binomial_from_json(const Json& j);

/// Reads a file holding one polynomial object. Throws FormatError.
Polynomial read_polynomial(const std::string& path);
BinomialPoly read_binomial(const std::string& path);

BigInt parse_int(const std::string& s);
/// "p/q" or an integer. Throws FormatError.
BigRational parse_rational(const std::string& s);

}  // namespace dyncomp::io
