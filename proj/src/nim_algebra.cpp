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

#include "loopy/nim_algebra.hpp"

#include <algorithm>
#include <charconv>

#include "loopy/errors.hpp"

namespace loopy {

GammaValue GammaValue::finite(Nimber n)
{
    GammaValue v;
    v.finite_ = true;
    v.value_ = n;
    return v;
}

GammaValue GammaValue::infinite(std::vector<Nimber> escape_set)
{
    std::sort(escape_set.begin(), escape_set.end());
    escape_set.erase(std::unique(escape_set.begin(), escape_set.end()), escape_set.end());
    GammaValue v;
    v.finite_ = false;
    v.escape_ = std::move(escape_set);
    return v;
}

Nimber GammaValue::value() const
{
    if (!finite_) throw PreconditionError("value() called on infinite gamma value " + render(*this));
    return value_;
}

bool GammaValue::escape_contains(Nimber n) const
{
    return std::binary_search(escape_.begin(), escape_.end(), n);
}

Nimber mex(std::span<const Nimber> values)
{
    // the answer is at most values.size(), so larger entries can be ignored
    std::vector<bool> seen(values.size() + 1, false);
    for (Nimber v : values) {
        if (v < seen.size()) seen[v] = true;
    }
    Nimber m = 0;
    while (seen[m]) ++m;
    return m;
}

GammaValue gnim_sum(const GammaValue& a, const GammaValue& b)
{
    if (a.is_finite() && b.is_finite()) return GammaValue::finite(a.value() ^ b.value());
    if (a.is_infinite() && b.is_infinite()) return GammaValue::infinite({});

    const GammaValue& inf = a.is_infinite() ? a : b;
    const Nimber shift = a.is_infinite() ? b.value() : a.value();
    std::vector<Nimber> shifted;
    shifted.reserve(inf.escape_set().size());
    for (Nimber l : inf.escape_set()) shifted.push_back(l ^ shift);
    return GammaValue::infinite(std::move(shifted));
}

GammaValue sigma(std::span<const GammaValue> values)
{
    GammaValue acc = GammaValue::finite(0);
    for (const auto& v : values) acc = gnim_sum(acc, v);
    return acc;
}

std::string render(const GammaValue& value)
{
    if (value.is_finite()) return std::to_string(value.value());
    std::string out = "inf(";
    bool first = true;
    for (Nimber k : value.escape_set()) {
        if (!first) out += ',';
        out += std::to_string(k);
        first = false;
    }
    out += ')';
    return out;
}

namespace {

Nimber parse_nimber(std::string_view text)
{
    Nimber n = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, n);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(0, "malformed gamma value component '" + std::string(text) + "'");
    }
    return n;
}

} // namespace

GammaValue parse_gamma(const std::string& text)
{
    std::string_view s(text);
    if (!s.starts_with("inf(")) return GammaValue::finite(parse_nimber(s));
    if (!s.ends_with(")")) throw ParseError(0, "unterminated infinite gamma value '" + text + "'");
    s = s.substr(4, s.size() - 5);
    std::vector<Nimber> k;
    while (!s.empty()) {
        auto comma = s.find(',');
        k.push_back(parse_nimber(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s = s.substr(comma + 1);
        if (s.empty()) throw ParseError(0, "trailing comma in '" + text + "'");
    }
    return GammaValue::infinite(std::move(k));
}

} // namespace loopy
