#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "bsrep/classify.hpp"
#include "bsrep/repcore.hpp"

namespace bsrep {

using Json = nlohmann::ordered_json;

/// A constructed representation as exchanged through files: the spec data
/// plus the matrices actually stored, which verify and equiv operate on.
struct RepRecord {
  RepSpec spec;
  MatrixPair pair;
  bool float_render = false;

  friend bool operator==(const RepRecord& x, const RepRecord& y) {
    return x.spec == y.spec && x.pair == y.pair && x.float_render == y.float_render;
  }
};

RepRecord make_record(const RepSpec& spec, bool float_render = false);

/// {order, coeffs: [{num, den}, ...]} with coefficients in the power basis.
Json cyc_to_json(const CycNum& x);
CycNum cyc_from_json(const Json& j);

Json matrix_to_json(const CycMatrix& m);
CycMatrix matrix_from_json(const Json& j);

/// Nested arrays of {re, im}, rounded to 15 significant digits.
Json matrix_float_json(const CycMatrix& m);
double round_significant(double x, int digits = 15);

Json record_to_json(const RepRecord& r);
/// Throws ParseError on malformed input and InvalidParams / ZeroParameter
/// for unusable p, q.
RepRecord record_from_json(const Json& j);

Json report_to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const Json& j);

/// Grammar: factor ('*' factor)*, factor = integer ['/' integer] | 'zeta(' L ')' ['^' k].
/// Throws ParseError.
CycNum parse_cyc_literal(std::string_view text);

std::string report_table(const ClassificationReport& r);
std::string record_table(const RepRecord& r);

}  // namespace bsrep
