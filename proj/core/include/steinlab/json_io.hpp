#pragma once

// JSON encodings. Matrices are {field: {p, e}, rows, cols, entries} with
// finite-field entries as coefficient vectors over the prime field and
// rationals as "num/den" strings.

#include <nlohmann/json.hpp>

#include "steinlab/exactla.hpp"
#include "steinlab/finring.hpp"
#include "steinlab/functorcat.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/schurfun.hpp"
#include "steinlab/symgrp.hpp"

namespace steinlab::io {

using Json = nlohmann::json;

/// {p, e}, with p = 0 for Q. Field names such as "F_9" are also accepted on input.
Json to_json(const la::Field& k);
la::Field field_from_json(const Json& j);

Json to_json(const la::Matrix& m);
la::Matrix matrix_from_json(const Json& j);
/// As above, requiring the given field.
la::Matrix matrix_from_json(const Json& j, const la::Field& k);

Json to_json(const sym::Partition& p);
sym::Partition partition_from_json(const Json& j);

/// {field, dim, generators: [{name, matrix, element?}]}
Json to_json(const meataxe::AlgebraModule& m);
meataxe::AlgebraModule module_from_json(const Json& j);

/// {n, field, dim, generators: [{name, matrix}]}
Json to_json(const schur::GLRep& rep);

/// {ring, field, N, dims, actions: {name: matrix}}
Json to_json(const functor::MorphismTable& t);
functor::MorphismTable table_from_json(const Json& j);

Json to_json(const ring::RingIdeal& ideal);

}  // namespace steinlab::io
