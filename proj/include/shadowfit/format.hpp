// Copyright 2026 The shadowfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Locale-independent shortest round-trip number rendering and parsing.

#ifndef SHADOWFIT_FORMAT_HPP
#define SHADOWFIT_FORMAT_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace shadowfit {

/// Shortest decimal string that parses back to exactly `value`.
inline std::string format_number(double value)
{
	char buf[32];
	auto const res = std::to_chars(buf, buf + sizeof(buf), value);
	return std::string(buf, res.ptr);
}

/// Fixed-point rendering for human-readable reports.
inline std::string format_fixed(double value, int precision)
{
	char buf[64];
	auto const res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
	if (res.ec != std::errc())
	{
		return format_number(value);
	}
	return std::string(buf, res.ptr);
}

/// Parses the whole of `text` as a finite or infinite double; no leading
/// whitespace or '+' sign is accepted.
inline std::optional<double> parse_number(std::string_view text)
{
	double value = 0.0;
	auto const* first = text.data();
	auto const* last = text.data() + text.size();
	auto const res = std::from_chars(first, last, value);
	if (res.ec != std::errc() || res.ptr != last || text.empty())
	{
		return std::nullopt;
	}
	return value;
}

} // namespace shadowfit

#endif // SHADOWFIT_FORMAT_HPP
