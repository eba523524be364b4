// Copyright 2026 The Purify Authors
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

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace purify {

/// Bit-string of length m <= 63. Position j of the string is bit j of the word,
/// so "110" has bits 0 and 1 set.
using BitString = std::uint64_t;

inline constexpr int kMaxBitStringLength = 63;

inline BitString parse_bits(std::string_view text) {
    if (text.size() > static_cast<size_t>(kMaxBitStringLength)) {
        throw std::invalid_argument("bit-string too long");
    }
    BitString out = 0;
    for (size_t j = 0; j < text.size(); j++) {
        if (text[j] == '1') {
            out |= BitString{1} << j;
        } else if (text[j] != '0') {
            throw std::invalid_argument("bit-string may only contain 0 and 1");
        }
    }
    return out;
}

inline std::string format_bits(BitString x, int m) {
    std::string out(static_cast<size_t>(m), '0');
    for (int j = 0; j < m; j++) {
        if ((x >> j) & 1) {
            out[static_cast<size_t>(j)] = '1';
        }
    }
    return out;
}

/// GF(2) inner product x . y.
inline int dot(BitString x, BitString y) { return std::popcount(x & y) & 1; }

/// Row space maintained in reduced row-echelon form, one pivot per row.
class Gf2Basis {
   public:
    explicit Gf2Basis(int m) : m_(m) {
        if (m < 1 || m > kMaxBitStringLength) {
            throw std::invalid_argument("Gf2Basis: bit length out of range");
        }
    }

    /// Adds a row; returns false if it was already in the span.
    bool insert(BitString row) {
        for (size_t r = 0; r < rows_.size(); r++) {
            if ((row >> pivots_[r]) & 1) {
                row ^= rows_[r];
            }
        }
        if (row == 0) {
            return false;
        }
        int pivot = std::countr_zero(row);
        for (auto &existing : rows_) {
            if ((existing >> pivot) & 1) {
                existing ^= row;
            }
        }
        rows_.push_back(row);
        pivots_.push_back(pivot);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    int length() const { return m_; }
    void clear() {
        rows_.clear();
        pivots_.clear();
    }

    /// Basis of {x : row . x = 0 for every row}, one vector per free column.
    std::vector<BitString> nullspace() const {
        BitString pivot_mask = 0;
        for (int p : pivots_) {
            pivot_mask |= BitString{1} << p;
        }
        std::vector<BitString> out;
        for (int f = 0; f < m_; f++) {
            if ((pivot_mask >> f) & 1) {
                continue;
            }
            BitString v = BitString{1} << f;
            for (size_t r = 0; r < rows_.size(); r++) {
                if ((rows_[r] >> f) & 1) {
                    v |= BitString{1} << pivots_[r];
                }
            }
            out.push_back(v);
        }
        return out;
    }

   private:
    int m_;
    std::vector<BitString> rows_;
    std::vector<int> pivots_;
};

struct Gf2Result {
    int rank;
    std::vector<BitString> nullspace_basis;
};

inline Gf2Result gf2_rank_and_nullspace(std::span<const BitString> rows, int m) {
    Gf2Basis basis(m);
    for (BitString r : rows) {
        if (m < 64 && (r >> m) != 0) {
            throw std::invalid_argument("gf2_rank_and_nullspace: row longer than m bits");
        }
        basis.insert(r);
    }
    return Gf2Result{basis.rank(), basis.nullspace()};
}

}  // namespace purify
