#pragma once

// JSON forms of the reports.

#include <json.hpp>

#include "sparselab/grid.hpp"
#include "sparselab/interpolation.hpp"
#include "sparselab/oscillatory.hpp"
#include "sparselab/random_singular.hpp"
#include "sparselab/sparse.hpp"
#include "sparselab/weights.hpp"

namespace sparselab::report {

using nlohmann::json;

json to_json(const DyadicCube& q);
// {characteristic, p, r, argmax_cube, value}
json to_json(const CharacteristicReport& c);
// [{shift, level, index, major_set: [[lo, hi], ...]}, ...]
json to_json(const SparseCollection& s);
json to_json(const SparsityReport& s);
json to_json(const DominationResult& d);
json to_json(const WWReport& w);
json to_json(const ScaleBoundReport& s);
json to_json(const ScaleBilinearReport& s);
json to_json(const BadSetReport& b);
json to_json(const NormReport& n);
json to_json(const RieszThorinReport& r);
json to_json(const SplitReport& s);
json to_json(const CriticalIndex& c);
json to_json(const WeightedExponents& w);
json to_json(const FittedGain& g);

// Inverse of to_json(SparseCollection); throws on malformed input.
SparseCollection collection_from_json(const json& j);

}  // namespace sparselab::report
