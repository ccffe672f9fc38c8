#pragma once

#include "opdil/dilate.hpp"
#include "opdil/domains.hpp"
#include "opdil/fundamentals.hpp"
#include "opdil/report.hpp"

#include <json.hpp>

#include <string>

namespace opdil {

using ojson = nlohmann::ordered_json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
// A bare array of rows of numbers or [re, im] pairs is accepted on input.
ojson matrix_to_json(const Mat& m);
Mat matrix_from_json(const ojson& j);

// {"kind": "gamma7", "names": [...], "ops": [matrix, ...]}; names optional.
// Loaded tuples live on a plain space: band data does not survive files.
ojson tuple_to_json(const OperatorTuple& t);
OperatorTuple tuple_from_json(const ojson& j);

// Coordinates as an array of numbers or [re, im] pairs, or an object
// {"kind": ..., "coords": [...]}.
DomainPoint point_from_json(const ojson& j, TupleKind kind);
ojson point_to_json(const DomainPoint& x);

ojson fundamentals_to_json(const FundamentalSet& f);
// ops are read back; the defect data is recomputed from the tuple
FundamentalSet fundamentals_from_json(const ojson& j, const OperatorTuple& t);

// kind, sizes, depth, member norms, report; matrices only when asked
ojson dilation_to_json(const DilationResult& d, bool with_ops = false);

ojson report_to_json(const CheckReport& r);
CheckReport report_from_json(const ojson& j);

// Reads a file, or parses the text itself when it starts with '[' or '{'.
ojson load_json(const std::string& file_or_text);

}  // namespace opdil
