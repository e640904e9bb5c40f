#pragma once

#include <string>

#include <json.hpp>

#include "mt3/armaps.hpp"
#include "mt3/certify.hpp"
#include "mt3/fiber.hpp"
#include "mt3/quadric.hpp"

namespace mt3 {

// Thrown on malformed input files/arguments; mapped to exit code 64 by the CLI.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts any of:
//   JSON object {"w": [[re,im],[re,im],[re,im],[re,im]]}
//   a path to a file holding that object
//   flat CSV  re1,im1,re2,im2,re3,im3,re4,im4
//   tuple     (1, 1, 0.3, 0) with entries like 1, -2.5, 1+2i, 0.5i
QuadricPoint parse_point(const std::string& text,
                         double quadric_tol = kDefaultQuadricTol);

Complex parse_complex(const std::string& text);

nlohmann::json point_to_json(const QuadricPoint& W);
nlohmann::json fiber_to_json(const FiberResult& f);
nlohmann::json report_to_json(const CertificateReport& r);

// Polynomial file format:
//   {"terms": [{"e":[a,b,g,d], "c":[re_num,re_den,im_num,im_den]}]}
SparseHermitianPolynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json polynomial_to_json(const SparsePolynomial& p);

// Parts file for the generalized-map pipeline:
//   {"parts": [{"p":1, "q":1, "poly": {...}}]}
std::vector<HarmonicPart> parts_from_json(const nlohmann::json& j);

} // namespace mt3
