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

#ifndef AFMSIM_MATRIX_HPP
#define AFMSIM_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "afm/types.hpp"

namespace afm {

/// Per-entry tolerance for the U*U = I check on protocol unitaries.
inline constexpr double kUnitaryTol = 1e-10;

/// Dense square complex matrix, row-major.
struct Matrix {
    std::size_t dim = 0;
    std::vector<cplx> a;

    Matrix() = default;
    explicit Matrix(std::size_t d) : dim(d), a(d * d, cplx{0.0, 0.0}) {}

    cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Matrix identity(std::size_t d);
    /// 2x2 rotation by t: (v, h) -> (v cos t - h sin t, v sin t + h cos t).
    static Matrix rotation2(double t);
};

bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

std::vector<cplx> apply(const Matrix& m, const std::vector<cplx>& v);
void apply_into(const Matrix& m, const std::vector<cplx>& v, std::vector<cplx>& out);

/// Sparse square matrix stored column-wise: cols[j] lists (row, value) of the
/// nonzero entries in column j. Used for lattice-shift steps whose dense form
/// would be prohibitively large.
struct SparseUnitary {
    std::size_t dim = 0;
    std::vector<std::vector<std::pair<std::size_t, cplx>>> cols;

    SparseUnitary() = default;
    explicit SparseUnitary(std::size_t d) : dim(d), cols(d) {}

    void add(std::size_t row, std::size_t col, cplx value) { cols[col].emplace_back(row, value); }
};

/// Checks column orthonormality; exact for matrices with few entries per
/// column (cost O(nnz) plus the row-index build).
bool is_unitary(const SparseUnitary& m, double tol = kUnitaryTol);

std::vector<cplx> apply(const SparseUnitary& m, const std::vector<cplx>& v);
void apply_into(const SparseUnitary& m, const std::vector<cplx>& v, std::vector<cplx>& out);

inline cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

inline double norm_sq(const std::vector<cplx>& x) {
    double acc = 0.0;
    for (const auto& z : x) acc += abs_sq(z);
    return acc;
}

}  // namespace afm

#endif
