// Copyright 2026 The sealsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sealsim/errors.hpp"
#include "sealsim/seal.hpp"

// Lambda files are JSON objects:
//
//   {"dim": 2, "lambda": [[[0.866, 0], [0.5, 0]], [[0.5, 0], [0.866, 0]]]}
//
// Rows are listed in message order; each entry is a [re, im] pair, and a bare
// number is accepted as a real entry. Row norms are validated on load.
namespace sealsim {

inline LambdaMatrix lambda_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("lambda")) {
        throw ValidationError("lambda file must be an object with \"dim\" and \"lambda\"");
    }
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        throw ValidationError("\"dim\" must be a positive integer");
    }
    const auto dim = doc["dim"].get<std::size_t>();
    require_dim_within_cap(dim);
    const auto &rows = doc["lambda"];
    if (!rows.is_array() || rows.size() != dim) {
        throw ValidationError("\"lambda\" must hold dim rows");
    }
    std::vector<Complex> coefficients;
    coefficients.reserve(dim * dim);
    for (const auto &row : rows) {
        if (!row.is_array() || row.size() != dim) {
            throw ValidationError("every lambda row must hold dim entries");
        }
        for (const auto &entry : row) {
            if (entry.is_number()) {
                coefficients.emplace_back(entry.get<double>(), 0.0);
            } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                       entry[1].is_number()) {
                coefficients.emplace_back(entry[0].get<double>(), entry[1].get<double>());
            } else {
                throw ValidationError("lambda entries must be [re, im] pairs");
            }
        }
    }
    return LambdaMatrix(dim, std::move(coefficients));
}

inline LambdaMatrix parse_lambda_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("lambda file is not valid JSON: ") + e.what());
    }
    return lambda_from_json(doc);
}

inline LambdaMatrix load_lambda_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open lambda file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lambda_json(buf.str());
}

inline nlohmann::json lambda_to_json(const LambdaMatrix &lambda) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < lambda.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto &x : lambda.row(r)) {
            row.push_back({x.real(), x.imag()});
        }
        rows.push_back(std::move(row));
    }
    return {{"dim", lambda.dim()}, {"lambda", std::move(rows)}};
}

} // namespace sealsim
