/*
 * Copyright 2026 The loopy authors
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

#ifndef LOOPY_NIM_ALGEBRA_HPP
#define LOOPY_NIM_ALGEBRA_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace loopy {

using Nimber = std::uint64_t;

/**
 * Value of the generalized Sprague-Grundy function: a finite nimber, or an
 * infinite value inf(K) annotated with the finite set K of follower values.
 *
 * K is kept sorted and duplicate-free, so two values are equal exactly when
 * they are structurally equal.
 */
class GammaValue {
  public:
    GammaValue() = default;

    static GammaValue finite(Nimber n);
    static GammaValue infinite(std::vector<Nimber> escape_set);
    static GammaValue infinite(std::initializer_list<Nimber> escape_set)
    {
        return infinite(std::vector<Nimber>(escape_set));
    }

    bool is_finite() const noexcept { return finite_; }
    bool is_infinite() const noexcept { return !finite_; }

    /// The finite value. Throws PreconditionError on an infinite value.
    Nimber value() const;

    /// K of inf(K); empty for finite values.
    const std::vector<Nimber>& escape_set() const noexcept { return escape_; }

    bool escape_contains(Nimber n) const;

    friend bool operator==(const GammaValue&, const GammaValue&) = default;

  private:
    bool finite_ = true;
    Nimber value_ = 0;
    std::vector<Nimber> escape_;
};

/// Least nonnegative integer not in `values`. Order and duplicates do not matter.
Nimber mex(std::span<const Nimber> values);

inline Nimber nim_xor(Nimber a, Nimber b) { return a ^ b; }

/**
 * Generalized Nim-sum:
 *   a (+) b           = a xor b
 *   a (+) inf(L)      = inf({l xor a : l in L})
 *   inf(L1) (+) inf(L2) = inf()
 */
GammaValue gnim_sum(const GammaValue& a, const GammaValue& b);

/// Left fold of gnim_sum from finite 0.
GammaValue sigma(std::span<const GammaValue> values);

/// "7", "inf(0,4,5)", "inf()".
std::string render(const GammaValue& value);

/// Inverse of render. Throws ParseError (line 0) on malformed input.
GammaValue parse_gamma(const std::string& text);

} // namespace loopy

#endif
