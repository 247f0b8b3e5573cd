// Copyright 2026 The afmsim Authors
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

#include "afm/matrix.hpp"

#include <cmath>

namespace afm {

Matrix Matrix::identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::rotation2(double t) {
    Matrix m(2);
    const double c = std::cos(t);
    const double s = std::sin(t);
    m.at(0, 0) = c;
    m.at(0, 1) = -s;
    m.at(1, 0) = s;
    m.at(1, 1) = c;
    return m;
}

bool is_unitary(const Matrix& m, double tol) {
    const std::size_t d = m.dim;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) {
                acc += std::conj(m.at(k, i)) * m.at(k, j);
            }
            const cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(acc - want) > tol) return false;
        }
    }
    return true;
}

void apply_into(const Matrix& m, const std::vector<cplx>& v, std::vector<cplx>& out) {
    if (v.size() != m.dim) throw std::invalid_argument("matrix/state dimension mismatch");
    out.assign(m.dim, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < m.dim; ++r) {
        cplx acc{0.0, 0.0};
        const cplx* row = &m.a[r * m.dim];
        for (std::size_t c = 0; c < m.dim; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
}

std::vector<cplx> apply(const Matrix& m, const std::vector<cplx>& v) {
    std::vector<cplx> out;
    apply_into(m, v, out);
    return out;
}

bool is_unitary(const SparseUnitary& m, double tol) {
    // Column norms, then overlaps of column pairs that share a row.
    std::vector<std::vector<std::size_t>> row_cols(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) {
        double nrm = 0.0;
        for (const auto& [r, val] : m.cols[j]) {
            if (r >= m.dim) return false;
            nrm += abs_sq(val);
            row_cols[r].push_back(j);
        }
        if (std::abs(nrm - 1.0) > tol) return false;
    }
    for (std::size_t r = 0; r < m.dim; ++r) {
        const auto& cols = row_cols[r];
        for (std::size_t x = 0; x < cols.size(); ++x) {
            for (std::size_t y = x + 1; y < cols.size(); ++y) {
                cplx acc{0.0, 0.0};
                for (const auto& [ri, vi] : m.cols[cols[x]]) {
                    for (const auto& [rj, vj] : m.cols[cols[y]]) {
                        if (ri == rj) acc += std::conj(vi) * vj;
                    }
                }
                if (std::abs(acc) > tol) return false;
            }
        }
    }
    return true;
}

void apply_into(const SparseUnitary& m, const std::vector<cplx>& v, std::vector<cplx>& out) {
    if (v.size() != m.dim) throw std::invalid_argument("matrix/state dimension mismatch");
    out.assign(m.dim, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < m.dim; ++j) {
        const cplx vj = v[j];
        if (vj == cplx{0.0, 0.0}) continue;
        for (const auto& [r, val] : m.cols[j]) out[r] += val * vj;
    }
}

std::vector<cplx> apply(const SparseUnitary& m, const std::vector<cplx>& v) {
    std::vector<cplx> out;
    apply_into(m, v, out);
    return out;
}

}  // namespace afm
