/*
 * Copyright 2025 bosonlines contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"

namespace bosonlines {

// Matrix file formats, row index = input port, column = output port:
//   JSON: {"m": M, "rows": [[[re, im], ... M entries ...], ... M rows ...]}
//   text: M followed by M*M whitespace-separated "re im" pairs in row order.

inline ComplexMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j.contains("rows"))
        throw parse_error("matrix JSON: expected object with \"m\" and \"rows\"");
    int m = 0;
    try {
        m = j.at("m").get<int>();
        if (m < 1) throw parse_error("matrix JSON: m must be >= 1");
        const auto& rows = j.at("rows");
        if (!rows.is_array() || static_cast<int>(rows.size()) != m)
            throw parse_error("matrix JSON: expected " + std::to_string(m) + " rows");
        ComplexMatrix out(m, m);
        for (int r = 0; r < m; ++r) {
            const auto& row = rows.at(r);
            if (!row.is_array() || static_cast<int>(row.size()) != m)
                throw parse_error("matrix JSON: row " + std::to_string(r) + " has wrong length");
            for (int c = 0; c < m; ++c) {
                const auto& e = row.at(c);
                if (!e.is_array() || e.size() != 2)
                    throw parse_error("matrix JSON: entries must be [re, im] pairs");
                out(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
            }
        }
        if (!out.finite()) throw parse_error("matrix JSON: non-finite entry");
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("matrix JSON: ") + e.what());
    }
}

inline ComplexMatrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    int m = 0;
    if (!(in >> m) || m < 1) throw parse_error("matrix text: expected leading dimension M >= 1");
    ComplexMatrix out(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw parse_error("matrix text: expected " + std::to_string(2 * m * m) +
                                  " numbers after the dimension");
            out(r, c) = cplx(re, im);
        }
    if (!out.finite()) throw parse_error("matrix text: non-finite entry");
    return out;
}

inline ComplexMatrix parse_matrix(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '{' ? parse_matrix_json(text) : parse_matrix_text(text);
    }
    throw parse_error("matrix: empty input");
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("matrix_to_json: matrix must be square");
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols; ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"m", m.rows}, {"rows", std::move(rows)}};
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << matrix_to_json(m).dump(2) << "\n";
    if (!out) throw io_error("write failed for " + path);
}

} // namespace bosonlines
